//! Maximization over `r`-dimensional subspaces of `S_d(m, F_q)`: exhaustive
//! `e_r` and gcd-filtered `u_r`, seeded hill climbing, generalized Hamming
//! weights and the plane Boguslavsky check.

mod boguslavsky;
mod enumerate;
mod ghw;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use boguslavsky::{boguslavsky_check_m2, boguslavsky_sweep, BoguslavskyCheck, BoguslavskySweep, Verdict};
pub use enumerate::{
    enumerate_subspaces, exhaustive_fold, exhaustive_max, for_each_in_chunk, gaussian_binomial, merge_best,
    rref_chunks, Best, ExhaustiveOutcome, RrefChunk, CHUNK_SIZE,
};
pub use ghw::{ghw, ghw_table, GhwReport, GhwRow};

use crate::combinatorics::{binom, f, h_prime, omega_size};
use crate::constructions::{build_lower_bound_subspace, default_roots};
use crate::error::{Error, Result};
use crate::geometry::{Evaluator, PolySubspace};
use crate::gf::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::polygcd::gcd_subspace;

pub const DEFAULT_VISIT_BUDGET: u128 = 100_000_000;
pub const DEFAULT_ITERATIONS: u64 = 10_000;
pub const DEFAULT_CHAINS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Randomized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
pub enum Objective {
    #[serde(rename = "e_r")]
    #[value(name = "e_r")]
    ER,
    #[serde(rename = "u_r_rational")]
    #[value(name = "u_r")]
    UrRational,
}

/// Worker count and visit budget shared by the searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub workers: usize,
    pub budget: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { workers: 1, budget: DEFAULT_VISIT_BUDGET }
    }
}

/// How a result relates to its reference formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// The search is exact and must equal the reference.
    Equal,
    /// The search certifies a lower bound that may not exceed the reference.
    AtMost,
}

/// Comparison of a search result against `f_r` or `H'_{r−(m−1)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub reference: String,
    pub value: u128,
    pub relation: Relation,
    /// Whether the reference value is a theorem for these parameters.
    pub proven: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub mode: Mode,
    pub objective: Objective,
    pub d: u32,
    pub m: u32,
    pub field: FieldSpec,
    pub q: u32,
    pub r: usize,
    pub best_value: u64,
    pub witness: PolySubspace,
    pub visited: u128,
    pub seed: Option<u64>,
    pub iterations: Option<u64>,
    pub chains: Option<usize>,
    pub comparison: Option<Comparison>,
    /// Kept out of JSON so identical runs serialize identically.
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Whether `e_r(d,m;q) = f_r(d,m;q)` is proven for these parameters, `q >= d+1`.
pub fn e_r_formula_proven(d: u32, m: u32, r: u128) -> bool {
    let top = omega_size(d, m);
    r <= m as u128 + 1 || d <= 2 || m <= 2 || r <= binom(m as i64 + 2, 2) || r + d as u128 >= top
}

/// Whether `u_r(d,m) = H'_{r−(m−1)}(d,m)` is proven for these parameters.
pub fn u_r_formula_proven(d: u32, m: u32, r: u128) -> bool {
    let top = omega_size(d, m);
    d == 1 || m <= 2 || r == m as u128 || r + d as u128 >= top
}

fn compare_e_r(d: u32, m: u32, q: u32, r: usize, best: u64, relation: Relation) -> Option<Comparison> {
    let value = f(d, m, q as u128, r as u128).ok()?;
    let consistent = match relation {
        Relation::Equal => best as u128 == value,
        Relation::AtMost => best as u128 <= value,
    };
    Some(Comparison {
        reference: "f_r".into(),
        value,
        relation,
        proven: e_r_formula_proven(d, m, r as u128),
        consistent,
    })
}

fn compare_u_r(d: u32, q: u32, r: usize, best: u64, mode: Mode) -> Option<Comparison> {
    let value = h_prime(d, 2, r as u128 - 1).ok()?;
    // rational optimum reaches the closure optimum once q >= d
    let relation = if mode == Mode::Exhaustive && q >= d { Relation::Equal } else { Relation::AtMost };
    let consistent = match relation {
        Relation::Equal => best as u128 == value,
        Relation::AtMost => best as u128 <= value,
    };
    Some(Comparison { reference: "H'_{r-1}".into(), value, relation, proven: true, consistent })
}

fn check_search_params(objective: Objective, d: u32, m: u32, r: usize) -> Result<usize> {
    if d == 0 || m == 0 {
        return Err(Error::InvalidParameter("d, m >= 1".into()));
    }
    let n = omega_size(d, m);
    if r == 0 || r as u128 > n {
        return Err(Error::RankOutOfRange { r: r as u128, max: n });
    }
    if objective == Objective::UrRational {
        if m != 2 {
            return Err(Error::InvalidParameter(format!("u_r search is for m = 2, got m = {m}")));
        }
        if r < 2 {
            return Err(Error::InvalidParameter("u_r search needs r >= 2".into()));
        }
    }
    Ok(n as usize)
}

/// Scores a candidate: `|V(W)(F_q)|`, filtered by `gcd(W) = 1` for `u_r`.
struct Scorer {
    objective: Objective,
    d: u32,
    m: u32,
    field: FieldSpec,
    eval: Evaluator,
}

impl Scorer {
    fn new(objective: Objective, d: u32, m: u32, field: &FieldSpec) -> Result<Self> {
        Ok(Scorer { objective, d, m, field: field.clone(), eval: Evaluator::full(d, m, field)? })
    }

    fn score(&self, w: &Matrix, floor: Option<i64>) -> Option<i64> {
        let count = self.eval.count_at_least(w, floor.unwrap_or(0).max(0) as usize)?;
        if self.objective == Objective::UrRational {
            let sub = PolySubspace::from_rref_unchecked(self.d, self.m, &self.field, w.clone());
            if gcd_subspace(&sub).ok()?.d() != 0 {
                return None;
            }
        }
        Some(count as i64)
    }
}

/// Exact maximum of the objective over all `r`-dimensional subspaces.
pub fn exhaustive_search(
    objective: Objective,
    d: u32,
    m: u32,
    field: &FieldSpec,
    r: usize,
    opts: SearchOptions,
) -> Result<SearchReport> {
    let start = Instant::now();
    let n = check_search_params(objective, d, m, r)?;
    let scorer = Scorer::new(objective, d, m, field)?;
    let outcome = exhaustive_max(n, r, field, opts.budget, opts.workers, |w, fl| scorer.score(w, fl))?;
    let best = outcome.best.ok_or(Error::Infeasible)?;
    let best_value = best.score as u64;
    let comparison = match objective {
        Objective::ER => compare_e_r(d, m, field.order(), r, best_value, Relation::Equal),
        Objective::UrRational => compare_u_r(d, field.order(), r, best_value, Mode::Exhaustive),
    };
    Ok(SearchReport {
        mode: Mode::Exhaustive,
        objective,
        d,
        m,
        field: field.clone(),
        q: field.order(),
        r,
        best_value,
        witness: PolySubspace::from_rref_unchecked(d, m, field, best.witness),
        visited: outcome.visited,
        seed: None,
        iterations: None,
        chains: None,
        comparison,
        wall_time: start.elapsed(),
    })
}

pub fn exhaustive_e_r(d: u32, m: u32, field: &FieldSpec, r: usize, opts: SearchOptions) -> Result<SearchReport> {
    exhaustive_search(Objective::ER, d, m, field, r, opts)
}

/// Plane `u_r` lower bound: best rational zero count among subspaces with `gcd(W) = 1`.
pub fn exhaustive_u_r_rational(d: u32, field: &FieldSpec, r: usize, opts: SearchOptions) -> Result<SearchReport> {
    exhaustive_search(Objective::UrRational, d, 2, field, r, opts)
}

fn random_row(rng: &mut ChaCha8Rng, n: usize, q: u32) -> Vec<FieldElement> {
    (0..n).map(|_| FieldElement::from_index(rng.gen_range(0..q) as u16)).collect()
}

fn random_rref(rng: &mut ChaCha8Rng, r: usize, n: usize, field: &FieldSpec) -> Matrix {
    loop {
        let mut m = Matrix::zeros(0, n);
        for _ in 0..r {
            m.push_row(&random_row(rng, n, field.order())).expect("row length");
        }
        let mut rr = m.rref(field);
        if rr.rank == r {
            rr.reduced.truncate_rows(r);
            return rr.reduced;
        }
    }
}

fn run_chain(
    scorer: &Scorer,
    start: &Option<Matrix>,
    r: usize,
    n: usize,
    seed: u64,
    chain: usize,
    iterations: u64,
) -> Option<Best> {
    let field = &scorer.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chain as u64);
    let mut current = match start {
        Some(w) => w.clone(),
        None => random_rref(&mut rng, r, n, field),
    };
    // infeasible states score below every feasible one
    let mut current_score = scorer.score(&current, None).unwrap_or(-1);
    let mut best = (current_score >= 0).then(|| Best { score: current_score, witness: current.clone() });
    for _ in 0..iterations {
        let mut cand = current.clone();
        let row = rng.gen_range(0..r);
        cand.row_mut(row).copy_from_slice(&random_row(&mut rng, n, field.order()));
        let mut rr = cand.rref(field);
        if rr.rank < r {
            continue;
        }
        rr.reduced.truncate_rows(r);
        let s = scorer.score(&rr.reduced, None).unwrap_or(-1);
        if s >= current_score {
            current = rr.reduced;
            current_score = s;
            if s >= 0 {
                best = merge_best(best, Some(Best { score: s, witness: current.clone() }));
            }
        }
    }
    best
}

/// Seeded hill climbing from the lower-bound construction when it applies,
/// otherwise from a random subspace. Chains run independently and merge by
/// best score, then smallest witness.
#[allow(clippy::too_many_arguments)]
pub fn randomized_search(
    objective: Objective,
    d: u32,
    m: u32,
    field: &FieldSpec,
    r: usize,
    seed: u64,
    iterations: u64,
    chains: usize,
    workers: usize,
) -> Result<SearchReport> {
    let start_time = Instant::now();
    let n = check_search_params(objective, d, m, r)?;
    let scorer = Scorer::new(objective, d, m, field)?;
    let start = if r >= m as usize && field.order() >= d {
        let roots = default_roots(d, field)?;
        Some(build_lower_bound_subspace(d, m, r as u128, field, &roots)?.w.coeffs().clone())
    } else {
        None
    };
    let chains = chains.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    let best = pool.install(|| {
        (0..chains)
            .into_par_iter()
            .map(|c| run_chain(&scorer, &start, r, n, seed, c, iterations))
            .reduce(|| None, merge_best)
    });
    let best = best.ok_or(Error::Infeasible)?;
    let best_value = best.score as u64;
    let comparison = match objective {
        Objective::ER => compare_e_r(d, m, field.order(), r, best_value, Relation::AtMost),
        Objective::UrRational => compare_u_r(d, field.order(), r, best_value, Mode::Randomized),
    };
    Ok(SearchReport {
        mode: Mode::Randomized,
        objective,
        d,
        m,
        field: field.clone(),
        q: field.order(),
        r,
        best_value,
        witness: PolySubspace::from_rref_unchecked(d, m, field, best.witness),
        visited: chains as u128 * (iterations as u128 + 1),
        seed: Some(seed),
        iterations: Some(iterations),
        chains: Some(chains),
        comparison,
        wall_time: start_time.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::count_vanishing_full;

    fn gf(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn small_e_r_values() {
        let f2 = gf(2);
        let rep = exhaustive_e_r(1, 2, &f2, 1, SearchOptions::default()).unwrap();
        assert_eq!(rep.best_value, 3);
        assert_eq!(rep.visited, 7);
        let f3 = gf(3);
        let rep = exhaustive_e_r(2, 2, &f3, 6, SearchOptions::default()).unwrap();
        assert_eq!((rep.best_value, rep.visited), (0, 1));
        let rep = exhaustive_e_r(2, 2, &f3, 2, SearchOptions::default()).unwrap();
        assert_eq!(rep.best_value, 5);
        assert_eq!(count_vanishing_full(&rep.witness).unwrap().0, 5);
        let c = rep.comparison.unwrap();
        assert!(c.consistent && c.proven && c.value == 5);
    }

    #[test]
    fn u_r_values_and_preconditions() {
        let f3 = gf(3);
        let rep = exhaustive_u_r_rational(2, &f3, 2, SearchOptions::default()).unwrap();
        assert_eq!(rep.best_value, 4);
        assert_eq!(gcd_subspace(&rep.witness).unwrap().d(), 0);
        assert!(matches!(
            exhaustive_search(Objective::UrRational, 2, 3, &f3, 3, SearchOptions::default()),
            Err(Error::InvalidParameter(_))
        ));
        assert!(exhaustive_u_r_rational(2, &f3, 1, SearchOptions::default()).is_err());
    }

    #[test]
    fn budget_refusal() {
        let f5 = gf(5);
        let opts = SearchOptions { workers: 1, budget: 1000 };
        assert!(matches!(exhaustive_e_r(2, 2, &f5, 3, opts), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn randomized_is_deterministic_and_bounded() {
        let f3 = gf(3);
        let a = randomized_search(Objective::ER, 2, 2, &f3, 2, 7, 2000, 4, 1).unwrap();
        let b = randomized_search(Objective::ER, 2, 2, &f3, 2, 7, 2000, 4, 3).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.best_value <= 5);
        for seed in 0..4 {
            let rep =
                randomized_search(Objective::ER, 2, 2, &f3, 2, seed, DEFAULT_ITERATIONS, DEFAULT_CHAINS, 2).unwrap();
            assert_eq!(rep.best_value, 5);
        }
    }

    #[test]
    fn randomized_zero_iterations_keeps_the_start() {
        let f5 = gf(5);
        let rep = randomized_search(Objective::ER, 2, 2, &f5, 4, 1, 0, 1, 1).unwrap();
        assert_eq!(rep.best_value, 2);
        let rep = randomized_search(Objective::UrRational, 3, 2, &f5, 5, 1, 0, 2, 1).unwrap();
        assert_eq!(rep.best_value as u128, h_prime(3, 2, 4).unwrap());
    }

    #[test]
    fn proven_ranges() {
        assert!(e_r_formula_proven(5, 2, 10));
        assert!(e_r_formula_proven(3, 3, 20));
        assert!(!e_r_formula_proven(3, 3, 12));
        assert!(u_r_formula_proven(4, 2, 7));
        assert!(!u_r_formula_proven(3, 3, 8));
    }
}
