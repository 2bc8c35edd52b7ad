//! Command-line front end: formula tables, constructions, searches, GHW
//! tables and verification suites.
//!
//! Exit codes: 0 success, 1 verification failure or theorem mismatch,
//! 2 usage error, 3 visit budget refusal.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::combinatorics::{f_routes, h, h_prime, omega_size, omega_unrank, pi, profile};
use crate::constructions::{build_lower_bound_subspace, default_roots, ConstructionReport};
use crate::error::Error;
use crate::gf::{FieldElement, FieldSpec};
use crate::search::{
    exhaustive_search, ghw_table, randomized_search, GhwRow, Mode, Objective, Relation, SearchOptions, SearchReport,
    DEFAULT_CHAINS, DEFAULT_ITERATIONS, DEFAULT_VISIT_BUDGET,
};
use crate::verify::{run_suite, Limits, Suite, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Inclusive rank range `a..b`, `a..=b` or a single rank; `a > b` is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankRange {
    pub start: u128,
    pub end: u128,
}

impl RankRange {
    pub fn iter(&self) -> impl Iterator<Item = u128> {
        self.start..=self.end
    }
}

impl FromStr for RankRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u128>().map_err(|e| format!("bad rank '{t}': {e}"));
        match s.split_once("..") {
            Some((a, b)) => Ok(RankRange { start: num(a)?, end: num(b.strip_prefix('=').unwrap_or(b))? }),
            None => {
                let r = num(s)?;
                Ok(RankRange { start: r, end: r })
            }
        }
    }
}

impl std::fmt::Display for RankRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "prm", version, about = "Zero counts of polynomial subspaces over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for searches.
    #[arg(long, global = true, env = "PRM_WORKERS", default_value_t = 1)]
    pub workers: usize,
    /// Maximum number of subspaces an exhaustive search may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_VISIT_BUDGET)]
    pub visit_budget: u128,
    /// Seed for randomized search and sampled suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Formula table: ω_r, l, c, j, H_r, H'_{r−(m−1)}, f_r.
    Table { d: u32, m: u32, q: u128, r: RankRange },
    /// Lower-bound construction with verified dimension and zero count.
    Construct {
        d: u32,
        m: u32,
        r: u128,
        p: u32,
        e: u32,
        /// Comma-separated root indices a_1..a_d (default 1..d−1 then 0).
        #[arg(long, value_delimiter = ',')]
        roots: Option<Vec<u32>>,
    },
    /// Maximize the zero count over r-dimensional subspaces.
    Search {
        #[arg(value_enum)]
        objective: Objective,
        d: u32,
        m: u32,
        r: RankRange,
        p: u32,
        e: u32,
        #[arg(value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
        iterations: u64,
        #[arg(long, default_value_t = DEFAULT_CHAINS)]
        chains: usize,
    },
    /// Run a verification sweep.
    Verify {
        suite: SuiteArg,
        #[arg(long)]
        d_max: Option<u32>,
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Generalized Hamming weights of PRM_q(d, m).
    Ghw { d: u32, m: u32, p: u32, e: u32, r: RankRange },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteArg {
    All,
    One(Suite),
}

impl FromStr for SuiteArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(SuiteArg::All);
        }
        Suite::from_str(s, false).map(SuiteArg::One)
    }
}

/// The validated invocation, embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub verb: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective: Option<Objective>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    pub seed: u64,
    pub workers: usize,
    pub visit_budget: u128,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    fn new(verb: &'static str, c: &Common) -> Self {
        RunConfig {
            verb,
            d: None,
            m: None,
            r: None,
            q: None,
            p: None,
            e: None,
            objective: None,
            mode: None,
            suite: None,
            seed: c.seed,
            workers: c.workers,
            visit_budget: c.visit_budget,
            output_format: c.format,
            output_path: c.output.clone(),
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    version: &'static str,
    config: &'a RunConfig,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    findings: Vec<Finding>,
    result: T,
}

/// A search value that disagrees with an unproven formula.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub kind: &'static str,
    pub r: usize,
    pub best_value: u64,
    pub reference: String,
    pub reference_value: u128,
}

/// What a verb produced: the rendered text and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
    pub messages: Vec<String>,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::RouteMismatch { .. }
        | Error::ConstructionFailed(_)
        | Error::Infeasible
        | Error::DimensionMismatch(_)
        | Error::AttemptsExhausted(_) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

fn json<T: Serialize>(cfg: &RunConfig, findings: Vec<Finding>, result: T) -> String {
    let env = Envelope { version: env!("CARGO_PKG_VERSION"), config: cfg, findings, result };
    let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
    s.push('\n');
    s
}

fn field(p: u32, e: u32) -> crate::Result<FieldSpec> {
    FieldSpec::new(p, e, None)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

/// One row of the formula table.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub d: u32,
    pub m: u32,
    pub q: u128,
    pub r: u128,
    pub omega: String,
    pub l: u32,
    pub c: u32,
    pub j: u128,
    #[serde(rename = "H")]
    pub h: u128,
    /// `H'_{r−(m−1)}`, defined for `r >= m`.
    #[serde(rename = "H_prime")]
    pub h_prime: Option<u128>,
    /// Defined for `q >= d + 1`.
    pub f: Option<u128>,
}

pub const TABLE_CSV_HEADER: &str = "d,m,q,r,omega,l,c,j,H,H_prime,f";

pub fn table_rows(d: u32, m: u32, q: u128, range: RankRange) -> crate::Result<Vec<TableRow>> {
    if d == 0 || m == 0 {
        return Err(Error::InvalidParameter("table needs d, m >= 1".into()));
    }
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q = {q} is not a field order")));
    }
    let top = omega_size(d, m);
    let mut rows = Vec::new();
    for r in range.iter() {
        if r == 0 || r > top {
            return Err(Error::RankOutOfRange { r, max: top });
        }
        let p = profile(d, m, r)?;
        let f = if q > d as u128 {
            let routes = f_routes(d, m, q, r)?;
            if routes.bracketing != routes.first_nonzero {
                return Err(Error::RouteMismatch {
                    what: format!("f({d},{m},{q},{r})"),
                    left: routes.bracketing.to_string(),
                    right: routes.first_nonzero.to_string(),
                });
            }
            Some(routes.bracketing)
        } else {
            None
        };
        let hp = if r >= m as u128 { Some(h_prime(d, m, r + 1 - m as u128)?) } else { None };
        rows.push(TableRow {
            d,
            m,
            q,
            r,
            omega: omega_unrank(d, m, r)?.to_string(),
            l: p.l,
            c: p.c,
            j: p.j,
            h: h(d, m, q, r)?,
            h_prime: hp,
            f,
        });
    }
    Ok(rows)
}

fn table_csv(rows: &[TableRow]) -> String {
    let mut s = String::from(TABLE_CSV_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},\"{}\",{},{},{},{},{},{}",
            r.d,
            r.m,
            r.q,
            r.r,
            r.omega,
            r.l,
            r.c,
            r.j,
            r.h,
            opt(&r.h_prime),
            opt(&r.f)
        );
    }
    s
}

pub const SEARCH_CSV_HEADER: &str = "d,m,q,r,mode,best,expected_f_or_Hprime,match";

fn search_csv(reports: &[SearchReport]) -> String {
    let mut s = String::from(SEARCH_CSV_HEADER);
    s.push('\n');
    for r in reports {
        let mode = match r.mode {
            Mode::Exhaustive => "exhaustive",
            Mode::Randomized => "randomized",
        };
        let (expected, ok) = match &r.comparison {
            Some(c) => (c.value.to_string(), c.consistent.to_string()),
            None => (String::new(), String::new()),
        };
        let _ = writeln!(s, "{},{},{},{},{},{},{},{}", r.d, r.m, r.q, r.r, mode, r.best_value, expected, ok);
    }
    s
}

pub const GHW_CSV_HEADER: &str = "r,d_r,d_r_from_e_r,e_r,pi_minus_f,agree";

fn ghw_csv(rows: &[GhwRow]) -> String {
    let mut s = String::from(GHW_CSV_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{},{},{},{},{},{}", r.r, r.d_r, r.d_r_from_e_r, r.e_r, opt(&r.d_r_from_f_r), r.agree);
    }
    s
}

pub const VERIFY_CSV_HEADER: &str = "suite,d_max,m_max,samples,checks,skipped,failures,passed";

fn verify_csv(reports: &[SuiteReport]) -> String {
    let mut s = String::from(VERIFY_CSV_HEADER);
    s.push('\n');
    for r in reports {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.suite.name(),
            r.d_max,
            r.m_max,
            r.samples,
            r.checks,
            r.skipped,
            r.failures,
            r.passed
        );
    }
    s
}

fn construct_csv(r: &ConstructionReport) -> String {
    format!(
        "d,m,r,q,claimed_dim,verified_dim,claimed_lower_bound,verified_count,y_within_vanishing_set\n{},{},{},{},{},{},{},{},{}\n",
        r.d,
        r.m,
        r.r,
        r.field.order(),
        r.claimed_dim,
        r.verified_dim,
        r.claimed_lower_bound,
        r.verified_count,
        r.y_within_vanishing_set
    )
}

/// Runs one parsed invocation without touching stdout.
pub fn execute(cli: &Cli) -> Result<Outcome, (i32, String)> {
    let c = &cli.common;
    let fail = |e: Error| (exit_code(&e), e.to_string());
    let mut messages = Vec::new();
    let (text, code) = match &cli.command {
        Command::Table { d, m, q, r } => {
            let mut cfg = RunConfig::new("table", c);
            (cfg.d, cfg.m, cfg.q, cfg.r) = (Some(*d), Some(*m), Some(*q), Some(r.to_string()));
            let rows = table_rows(*d, *m, *q, *r).map_err(fail)?;
            let text = match c.format {
                Format::Csv => table_csv(&rows),
                Format::Json => json(&cfg, vec![], &rows),
            };
            (text, EXIT_OK)
        }
        Command::Construct { d, m, r, p, e, roots } => {
            let mut cfg = RunConfig::new("construct", c);
            (cfg.d, cfg.m, cfg.r, cfg.p, cfg.e) = (Some(*d), Some(*m), Some(r.to_string()), Some(*p), Some(*e));
            let f = field(*p, *e).map_err(fail)?;
            let roots = match roots {
                Some(v) => v.iter().map(|&i| f.element(i)).collect::<crate::Result<Vec<FieldElement>>>(),
                None => default_roots(*d, &f),
            }
            .map_err(fail)?;
            let rep = build_lower_bound_subspace(*d, *m, *r, &f, &roots).map_err(fail)?;
            let text = match c.format {
                Format::Csv => construct_csv(&rep),
                Format::Json => json(&cfg, vec![], &rep),
            };
            (text, EXIT_OK)
        }
        Command::Search { objective, d, m, r, p, e, mode, iterations, chains } => {
            let mut cfg = RunConfig::new("search", c);
            (cfg.d, cfg.m, cfg.r, cfg.p, cfg.e) = (Some(*d), Some(*m), Some(r.to_string()), Some(*p), Some(*e));
            (cfg.objective, cfg.mode) = (Some(*objective), Some(*mode));
            let f = field(*p, *e).map_err(fail)?;
            let opts = SearchOptions { workers: c.workers.max(1), budget: c.visit_budget };
            let mut reports = Vec::new();
            let mut findings = Vec::new();
            let mut code = EXIT_OK;
            for rank in r.iter() {
                let rank = usize::try_from(rank).map_err(|_| (EXIT_USAGE, format!("rank {rank} too large")))?;
                let rep = match mode {
                    Mode::Exhaustive => exhaustive_search(*objective, *d, *m, &f, rank, opts),
                    Mode::Randomized => {
                        randomized_search(*objective, *d, *m, &f, rank, c.seed, *iterations, *chains, opts.workers)
                    }
                }
                .map_err(fail)?;
                if let Some(cmp) = &rep.comparison {
                    let verdict = match (cmp.consistent, cmp.relation) {
                        (true, Relation::Equal) => "match",
                        (true, Relation::AtMost) => "within bound",
                        (false, _) => "MISMATCH",
                    };
                    messages
                        .push(format!("r={rank}: best {} {verdict} {} = {}", rep.best_value, cmp.reference, cmp.value));
                    if !cmp.consistent {
                        if cmp.proven {
                            messages.push(format!(
                                "!!! THEOREM MISMATCH at d={d} m={m} q={} r={rank}: best {} vs {} = {} !!!",
                                f.order(),
                                rep.best_value,
                                cmp.reference,
                                cmp.value
                            ));
                            code = EXIT_FAILURE;
                        } else {
                            findings.push(Finding {
                                kind: "conjecture-relevant finding",
                                r: rank,
                                best_value: rep.best_value,
                                reference: cmp.reference.clone(),
                                reference_value: cmp.value,
                            });
                        }
                    }
                }
                reports.push(rep);
            }
            let text = match c.format {
                Format::Csv => search_csv(&reports),
                Format::Json => json(&cfg, findings, &reports),
            };
            (text, code)
        }
        Command::Verify { suite, d_max, m_max, samples } => {
            let mut cfg = RunConfig::new("verify", c);
            (cfg.d, cfg.m) = (*d_max, *m_max);
            let suites: Vec<Suite> = match suite {
                SuiteArg::All => Suite::ALL.to_vec(),
                SuiteArg::One(s) => vec![*s],
            };
            cfg.suite = Some(match suite {
                SuiteArg::All => "all".into(),
                SuiteArg::One(s) => s.name().into(),
            });
            let limits = Limits { d_max: *d_max, m_max: *m_max, samples: *samples, seed: c.seed };
            let mut reports = Vec::new();
            for s in suites {
                let rep = run_suite(s, &limits).map_err(fail)?;
                let status = if rep.passed { "PASS" } else { "FAIL" };
                messages.push(format!("{}: {status} ({} checks, {} failures)", s.name(), rep.checks, rep.failures));
                for ce in &rep.counterexamples {
                    messages.push(format!("  counterexample: {ce}"));
                }
                reports.push(rep);
            }
            let code = if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_FAILURE };
            let text = match c.format {
                Format::Csv => verify_csv(&reports),
                Format::Json => json(&cfg, vec![], &reports),
            };
            (text, code)
        }
        Command::Ghw { d, m, p, e, r } => {
            let mut cfg = RunConfig::new("ghw", c);
            (cfg.d, cfg.m, cfg.r, cfg.p, cfg.e) = (Some(*d), Some(*m), Some(r.to_string()), Some(*p), Some(*e));
            let f = field(*p, *e).map_err(fail)?;
            let opts = SearchOptions { workers: c.workers.max(1), budget: c.visit_budget };
            let ranks = r
                .iter()
                .map(|x| usize::try_from(x).map_err(|_| (EXIT_USAGE, format!("rank {x} too large"))))
                .collect::<Result<Vec<_>, _>>()?;
            let rows = ghw_table(*d, *m, &f, &ranks, opts).map_err(fail)?;
            let length = pi(*m as i64, f.order() as u128);
            messages.push(format!("code length {length}"));
            let code = if rows.iter().all(|r| r.agree) { EXIT_OK } else { EXIT_FAILURE };
            let text = match c.format {
                Format::Csv => ghw_csv(&rows),
                Format::Json => json(&cfg, vec![], &rows),
            };
            (text, code)
        }
    };
    Ok(Outcome { text, code, messages })
}

/// Parses `args`, runs the verb, writes output, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            for m in &out.messages {
                eprintln!("{m}");
            }
            let written = match &cli.common.output {
                Some(path) => std::fs::write(path, &out.text).map_err(|e| e.to_string()),
                None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return EXIT_FAILURE;
            }
            out.code
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}
