//! Parameter sweeps that check the identities and bounds behind the formulas.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::{
    appendix, binom, diff_ws, f_routes, h, h_prime, h_prime_piecewise_m2, omega_prime_rank, omega_prime_size,
    omega_prime_unrank, omega_rank, omega_size, omega_unrank, profile, ExponentTuple,
};
use crate::constructions::{build_ci_grid, build_lower_bound_subspace, default_roots};
use crate::error::{Error, Result};
use crate::geometry::{cayley_bacharach_check, enumerate_projective_points, g_x, hilbert_ci_formula, PointSet};
use crate::gf::{is_prime, FieldElement, FieldSpec};
use crate::polygcd::gcd_subspace;
use crate::search::{boguslavsky_sweep, SearchOptions};

/// Counterexamples kept per suite.
const MAX_REPORTED: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Noether,
    CayleyBacharach,
    HprimeLeH,
    Appendix,
    Lemma52,
    Prop54,
    RankRoundtrip,
    FRoutes,
    Piecewise,
    DiffWs,
    FewPoints,
    Constructions,
    Boguslavsky,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::RankRoundtrip,
        Suite::FRoutes,
        Suite::Piecewise,
        Suite::DiffWs,
        Suite::HprimeLeH,
        Suite::Appendix,
        Suite::Noether,
        Suite::CayleyBacharach,
        Suite::FewPoints,
        Suite::Lemma52,
        Suite::Prop54,
        Suite::Constructions,
        Suite::Boguslavsky,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Noether => "noether",
            Suite::CayleyBacharach => "cayley-bacharach",
            Suite::HprimeLeH => "hprime-le-h",
            Suite::Appendix => "appendix",
            Suite::Lemma52 => "lemma52",
            Suite::Prop54 => "prop54",
            Suite::RankRoundtrip => "rank-roundtrip",
            Suite::FRoutes => "f-routes",
            Suite::Piecewise => "piecewise",
            Suite::DiffWs => "diff-ws",
            Suite::FewPoints => "few-points",
            Suite::Constructions => "constructions",
            Suite::Boguslavsky => "boguslavsky",
        }
    }

    /// Default `(d_max, m_max)` sweep bounds; grid suites read `d_max` as the side bound.
    pub fn default_bounds(self) -> (u32, u32) {
        match self {
            Suite::RankRoundtrip | Suite::FRoutes | Suite::HprimeLeH => (8, 5),
            Suite::Piecewise => (12, 2),
            Suite::DiffWs => (6, 4),
            Suite::Appendix => (12, 0),
            Suite::Noether | Suite::CayleyBacharach => (5, 2),
            Suite::FewPoints => (6, 3),
            Suite::Lemma52 | Suite::Prop54 => (6, 2),
            Suite::Constructions => (4, 3),
            Suite::Boguslavsky => (2, 2),
        }
    }

    pub fn default_samples(self) -> usize {
        match self {
            Suite::CayleyBacharach => 200,
            Suite::FewPoints => 100,
            Suite::Lemma52 | Suite::Prop54 => 100,
            _ => 0,
        }
    }
}

/// Optional overrides of a suite's sweep bounds.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Limits {
    pub d_max: Option<u32>,
    pub m_max: Option<u32>,
    pub samples: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub d_max: u32,
    pub m_max: u32,
    pub samples: usize,
    pub checks: u64,
    /// Cases outside a statement's hypotheses, counted but not checked.
    pub skipped: u64,
    pub failures: u64,
    pub counterexamples: Vec<String>,
    pub passed: bool,
}

struct Tally {
    checks: u64,
    skipped: u64,
    failures: u64,
    counterexamples: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, skipped: 0, failures: 0, counterexamples: Vec::new() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_REPORTED {
                self.counterexamples.push(describe());
            }
        }
    }

    fn check_result<T>(&mut self, r: Result<T>, ok: impl FnOnce(&T) -> bool, describe: impl FnOnce(String) -> String) {
        match r {
            Ok(v) => {
                let good = ok(&v);
                self.check(good, || describe("value check failed".into()));
            }
            Err(e) => self.check(false, || describe(e.to_string())),
        }
    }
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u32) -> u32 {
    (n.max(2)..).find(|&p| is_prime(p)).expect("primes are unbounded")
}

fn els(indices: impl IntoIterator<Item = u32>) -> Vec<FieldElement> {
    indices.into_iter().map(|i| FieldElement::from_index(i as u16)).collect()
}

/// `a × b` grid with roots `0..a` and `0..b` over the smallest prime field of order at least `q_min`.
fn grid(a: u32, b: u32, q_min: u32) -> Result<(FieldSpec, PointSet)> {
    let field = FieldSpec::prime(next_prime(q_min))?;
    let (_, _, g) = build_ci_grid(&els(0..a), &els(0..b), &field)?;
    Ok((field, g))
}

fn random_subset(rng: &mut ChaCha8Rng, set: &PointSet, size: usize) -> PointSet {
    let idx = sample(rng, set.len(), size.min(set.len())).into_vec();
    set.select(&idx)
}

pub fn run_suite(suite: Suite, limits: &Limits) -> Result<SuiteReport> {
    let (dd, md) = suite.default_bounds();
    let d_max = limits.d_max.unwrap_or(dd);
    let m_max = limits.m_max.unwrap_or(md);
    let samples = limits.samples.unwrap_or(suite.default_samples());
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    let mut t = Tally::new();
    match suite {
        Suite::RankRoundtrip => rank_roundtrip(&mut t, d_max, m_max)?,
        Suite::FRoutes => f_route_sweep(&mut t, d_max, m_max),
        Suite::Piecewise => {
            for d in 1..=d_max {
                for r in 2..=binom(d as i64 + 2, 2) {
                    t.check_result(h_prime_piecewise_m2(d, r), |_| true, |e| format!("d={d} r={r}: {e}"));
                }
            }
        }
        Suite::DiffWs => diff_ws_sweep(&mut t, d_max, m_max)?,
        Suite::HprimeLeH => {
            for d in 1..=d_max {
                for m in 1..=m_max {
                    for q in d as u128 + 1..=d as u128 + 4 {
                        for r in m as u128..=omega_size(d, m) {
                            let hp = h_prime(d, m, r + 1 - m as u128)?;
                            let hv = h(d, m, q, r)?;
                            t.check(hp <= hv, || format!("d={d} m={m} q={q} r={r}: H'={hp} > H={hv}"));
                        }
                    }
                }
            }
        }
        Suite::Appendix => appendix_sweep(&mut t, d_max),
        Suite::Noether => {
            for a in 1..=d_max {
                for b in 1..=d_max {
                    let (_, g) = grid(a, b, a + b)?;
                    for k in 0..=a + b {
                        let by_rank = g.len() as i128 - g_x(&g, k)? as i128;
                        let formula = hilbert_ci_formula(a, b, k);
                        t.check(by_rank == formula, || format!("a={a} b={b} k={k}: rank {by_rank} vs {formula}"));
                    }
                    if a <= b {
                        let gk = g_x(&g, b)? as u128;
                        let want = binom(a as i64 - 1, 2);
                        t.check(gk == want, || format!("a={a} b={b}: g(b)={gk}, expected {want}"));
                    }
                }
            }
        }
        Suite::CayleyBacharach => {
            let mut done = 0;
            while done < samples {
                let a = rng.gen_range(1..=d_max);
                let b = rng.gen_range(1..=d_max);
                if a + b < 3 {
                    continue;
                }
                let s = a + b - 3;
                let k = rng.gen_range((a.max(b).saturating_sub(2))..=s);
                let (_, g) = grid(a, b, a + b)?;
                let size = rng.gen_range(0..=g.len());
                let sub = random_subset(&mut rng, &g, size);
                t.check_result(
                    cayley_bacharach_check(&g, &sub, a, b, k),
                    |cb| cb.equal,
                    |e| format!("a={a} b={b} k={k} |Γ'|={}: {e}", sub.len()),
                );
                done += 1;
            }
        }
        Suite::FewPoints => {
            for d in 1..=d_max {
                for m in 1..=m_max {
                    let field = FieldSpec::prime(next_prime(d + 1))?;
                    let all = enumerate_projective_points(m, &field)?;
                    for _ in 0..samples {
                        let size = rng.gen_range(0..=(d as usize + 1));
                        let x = random_subset(&mut rng, &all, size);
                        let g = g_x(&x, d)?;
                        t.check(g == 0, || format!("d={d} m={m} |X|={}: g={g}", x.len()));
                    }
                }
            }
        }
        Suite::Lemma52 => {
            for d in 1..=d_max {
                let (_, g) = grid(d, d, 2 * d)?;
                for _ in 0..samples {
                    let size = rng.gen_range(0..=((3 * d - 1) as usize).min(g.len()));
                    let x = random_subset(&mut rng, &g, size);
                    let v = g_x(&x, d)?;
                    t.check(v == 0, || format!("d={d} |X|={}: g={v}", x.len()));
                }
            }
        }
        Suite::Prop54 => {
            for d in 3..=d_max {
                let (_, g) = grid(d, d, 2 * d)?;
                for tt in 3..=d {
                    let cap = ((tt * d + d - tt + 1) as usize).min(g.len());
                    let bound = binom(tt as i64 - 1, 2) as usize;
                    for _ in 0..samples {
                        let size = rng.gen_range(0..=cap);
                        let x = random_subset(&mut rng, &g, size);
                        let v = g_x(&x, d)?;
                        t.check(v <= bound, || format!("d={d} t={tt} |X|={}: g={v} > {bound}", x.len()));
                    }
                }
            }
        }
        Suite::Constructions => {
            for d in 1..=d_max {
                let field = FieldSpec::prime(next_prime(d + 1))?;
                let roots = default_roots(d, &field)?;
                for m in 1..=m_max {
                    for r in m as u128..=omega_size(d, m) {
                        match build_lower_bound_subspace(d, m, r, &field, &roots) {
                            Ok(rep) => {
                                let exact = m != 2 || rep.verified_count as u128 == rep.claimed_lower_bound;
                                t.check(exact, || {
                                    format!(
                                        "d={d} m={m} r={r}: |V(W)|={} vs H'={}",
                                        rep.verified_count, rep.claimed_lower_bound
                                    )
                                });
                                if m == 2 && r > 2 {
                                    let deg = gcd_subspace(&rep.w)?.d();
                                    t.check(deg == 0, || format!("d={d} r={r}: gcd(W) has degree {deg}"));
                                }
                            }
                            Err(e) => t.check(false, || format!("d={d} m={m} r={r}: {e}")),
                        }
                    }
                }
            }
        }
        Suite::Boguslavsky => {
            for d in 1..=d_max {
                let field = FieldSpec::prime(next_prime(d + 1))?;
                let sweep = boguslavsky_sweep(d, &field, SearchOptions::default())?;
                for tally in &sweep.ranks {
                    t.checks += tally.subspaces - 1;
                    t.check(tally.violations == 0, || {
                        format!("d={d} q={} r={}: {} false verdicts", field.order(), tally.r, tally.violations)
                    });
                }
                if let Some(w) = sweep.first_violation {
                    t.counterexamples.truncate(MAX_REPORTED - 1);
                    t.counterexamples.push(format!("first violating W: {:?}", w.coeffs().to_index_rows()));
                }
            }
        }
    }
    Ok(SuiteReport {
        suite,
        d_max,
        m_max,
        samples,
        checks: t.checks,
        skipped: t.skipped,
        failures: t.failures,
        passed: t.failures == 0,
        counterexamples: t.counterexamples,
    })
}

fn rank_roundtrip(t: &mut Tally, d_max: u32, m_max: u32) -> Result<()> {
    for d in 0..=d_max {
        for m in 0..=m_max {
            let size = omega_size(d, m);
            let mut prev: Option<ExponentTuple> = None;
            let mut all = Vec::with_capacity(size as usize);
            for r in 1..=size {
                let w = omega_unrank(d, m, r)?;
                let back = omega_rank(&w)?;
                t.check(back == r, || format!("Ω({d},{m}) r={r}: rank(unrank) = {back}"));
                if let Some(p) = &prev {
                    t.check(p.entries() > w.entries(), || format!("Ω({d},{m}) r={r}: not lex descending"));
                }
                prev = Some(w.clone());
                all.push(w);
            }
            if m == 0 || d == 0 {
                continue;
            }
            // Ω' by filtering, independent of the shift used by omega_prime_unrank
            let filtered: Vec<&ExponentTuple> = all.iter().filter(|w| w.in_omega_prime()).collect();
            t.check(filtered.len() as u128 == omega_prime_size(d, m), || format!("|Ω'({d},{m})| mismatch"));
            let mut prev: Option<ExponentTuple> = None;
            for (i, want) in filtered.iter().enumerate() {
                let rp = i as u128 + 1;
                let got = omega_prime_unrank(d, m, rp)?;
                t.check(&got == *want, || format!("Ω'({d},{m}) r'={rp}: {got} vs {want}"));
                let back = omega_prime_rank(&got)?;
                t.check(back == rp, || format!("Ω'({d},{m}) r'={rp}: rank = {back}"));
                if let Some(p) = &prev {
                    t.check(p.entries() > got.entries(), || format!("Ω'({d},{m}) r'={rp}: not lex descending"));
                }
                prev = Some(got.clone());
                // ω'_{r−(m−1)} = ω_s with s = r − (m − l), except at the top rank
                let r = rp + m as u128 - 1;
                let l = want.first_nonzero().expect("d >= 1") as u128;
                let s = if r == size { r } else { r + l - m as u128 };
                let at_s = omega_unrank(d, m, s)?;
                t.check(&at_s == *want, || format!("shift d={d} m={m} r={r}: ω_{s} = {at_s}, ω' = {want}"));
            }
        }
    }
    Ok(())
}

fn f_route_sweep(t: &mut Tally, d_max: u32, m_max: u32) {
    for d in 1..=d_max {
        for m in 1..=m_max {
            for r in 1..=omega_size(d, m) {
                t.check_result(profile(d, m, r), |_| true, |e| format!("profile d={d} m={m} r={r}: {e}"));
                for q in d as u128 + 1..=d as u128 + 4 {
                    t.check_result(
                        f_routes(d, m, q, r),
                        |x| x.bracketing == x.first_nonzero,
                        |e| format!("f d={d} m={m} q={q} r={r}: {e}"),
                    );
                }
            }
        }
    }
}

fn diff_ws_sweep(t: &mut Tally, d_max: u32, m_max: u32) -> Result<()> {
    for d in 1..=d_max {
        for m in 1..=m_max {
            let size = omega_size(d, m);
            for s in 1..=size {
                let w = omega_unrank(d, m, s)?;
                let Some(k) = (1..=m as usize).rev().find(|&i| w.get(i) != 0) else {
                    continue;
                };
                for j in 1..=(m + 1 - k as u32) {
                    match diff_ws(d, m, s, j) {
                        Ok(sides) => t.check(sides.lhs == sides.rhs, || {
                            format!("d={d} m={m} s={s} j={j}: {} vs {}", sides.lhs, sides.rhs)
                        }),
                        Err(Error::Precondition(_)) => t.skipped += 1,
                        Err(e) => t.check(false, || format!("d={d} m={m} s={s} j={j}: {e}")),
                    }
                }
            }
        }
    }
    Ok(())
}

fn appendix_sweep(t: &mut Tally, n: u32) {
    for d in 1..=n {
        for a in 1..=n {
            for b in 1..=n {
                let (l, r) = appendix::two_powers(d, a, b);
                t.check(l <= r, || format!("two_powers d={d} a={a} b={b}"));
                for c in 1..=a.min(b) {
                    let (l, r) = appendix::three_powers(d, a, b, c);
                    t.check(l <= r, || format!("three_powers d={d} a={a} b={b} c={c}"));
                }
            }
        }
        for k in 1..=n {
            for beta in 1..=n {
                let (l, r) = appendix::weighted_gap(d, k, beta);
                t.check(l <= r, || format!("weighted_gap d={d} k={k} β={beta}"));
            }
        }
    }
    let n4 = n + n / 3;
    for d in 1..=n4 {
        for k in 1..=n4 {
            let (l, r) = appendix::power_gap(d, k);
            t.check(l <= r, || format!("power_gap d={d} k={k}"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(d: u32, m: u32) -> Limits {
        Limits { d_max: Some(d), m_max: Some(m), samples: Some(10), seed: 3 }
    }

    #[test]
    fn primes() {
        assert_eq!(next_prime(4), 5);
        assert_eq!(next_prime(7), 7);
        assert_eq!(next_prime(0), 2);
        assert_eq!(next_prime(12), 13);
    }

    #[test]
    fn every_suite_passes_on_small_bounds() {
        for s in Suite::ALL {
            let rep = run_suite(s, &small(s.default_bounds().0.min(3), 2)).unwrap();
            assert!(rep.passed, "{}: {:?}", s.name(), rep.counterexamples);
            assert!(rep.checks > 0, "{}", s.name());
        }
    }

    #[test]
    fn diff_ws_skips_only_the_inadmissible_cases() {
        let rep = run_suite(Suite::DiffWs, &small(2, 2)).unwrap();
        assert!(rep.passed);
        assert!(rep.skipped > 0);
    }
}
