//! Plane check of the Boguslavsky bound: `deg_1 V(W) <= β_1`, and when equal,
//! at most `β_2` further points, for `(β) = ω_r(d, 2)`.

use serde::Serialize;

use super::enumerate::exhaustive_fold;
use super::SearchOptions;
use crate::combinatorics::{omega_size, omega_unrank, ExponentTuple};
use crate::error::{Error, Result};
use crate::geometry::{Evaluator, PolySubspace};
use crate::gf::FieldSpec;
use crate::matrix::Matrix;
use crate::polygcd::gcd_subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    /// `deg_1 = β_1` and the rational residual fits; points over extensions are not seen.
    Indeterminate,
    False,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoguslavskyCheck {
    pub r: usize,
    /// Degree of `gcd(W)`.
    pub deg1: u32,
    /// `F_q`-points of `V(W)` off the curve `gcd(W) = 0`.
    pub rational_residual: usize,
    pub bound: ExponentTuple,
    pub within_bound: Verdict,
}

fn check_with(w: &PolySubspace, eval: &Evaluator) -> Result<BoguslavskyCheck> {
    if w.m() != 2 {
        return Err(Error::InvalidParameter(format!("plane subspaces only, got m = {}", w.m())));
    }
    let r = w.dim();
    let bound = omega_unrank(w.d(), 2, r as u128)?;
    let g = gcd_subspace(w)?;
    let deg1 = g.d();
    let mut rational_residual = 0;
    for i in eval.vanishing_indices(w.coeffs()) {
        if !g.eval(eval.points().points()[i].coords())?.is_zero() {
            rational_residual += 1;
        }
    }
    let (b1, b2) = (bound.get(1), bound.get(2));
    let within_bound = if deg1 > b1 || (deg1 == b1 && rational_residual > b2 as usize) {
        Verdict::False
    } else if deg1 < b1 {
        Verdict::True
    } else {
        Verdict::Indeterminate
    };
    Ok(BoguslavskyCheck { r, deg1, rational_residual, bound, within_bound })
}

pub fn boguslavsky_check_m2(w: &PolySubspace) -> Result<BoguslavskyCheck> {
    if w.m() != 2 {
        return Err(Error::InvalidParameter(format!("plane subspaces only, got m = {}", w.m())));
    }
    check_with(w, &Evaluator::full(w.d(), 2, w.field())?)
}

/// Verdict counts for one rank.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RankTally {
    pub r: usize,
    pub subspaces: u64,
    pub within: u64,
    pub indeterminate: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoguslavskySweep {
    pub d: u32,
    pub field: FieldSpec,
    pub ranks: Vec<RankTally>,
    /// Smallest subspace with a `false` verdict, if any.
    pub first_violation: Option<PolySubspace>,
}

impl BoguslavskySweep {
    pub fn violations(&self) -> u64 {
        self.ranks.iter().map(|t| t.violations).sum()
    }
}

type Acc = (u64, u64, u64, Option<Matrix>);

fn combine(a: Acc, b: Acc) -> Acc {
    let first = match (a.3, b.3) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(x.min(y)),
    };
    (a.0 + b.0, a.1 + b.1, a.2 + b.2, first)
}

/// Runs the check on every subspace of every rank of `S_d(2, F_q)`.
pub fn boguslavsky_sweep(d: u32, field: &FieldSpec, opts: SearchOptions) -> Result<BoguslavskySweep> {
    let n = omega_size(d, 2) as usize;
    let eval = Evaluator::full(d, 2, field)?;
    let mut ranks = Vec::new();
    let mut first_violation: Option<Matrix> = None;
    for r in 1..=n {
        let map = |m: &Matrix| -> Acc {
            let w = PolySubspace::from_rref_unchecked(d, 2, field, m.clone());
            match check_with(&w, &eval).expect("plane subspace").within_bound {
                Verdict::True => (1, 0, 0, None),
                Verdict::Indeterminate => (0, 1, 0, None),
                Verdict::False => (0, 0, 1, Some(m.clone())),
            }
        };
        let ((within, indeterminate, violations, first), total) =
            exhaustive_fold(n, r, field, opts.budget, opts.workers, (0, 0, 0, None), map, combine)?;
        if first_violation.is_none() {
            first_violation = first;
        }
        ranks.push(RankTally { r, subspaces: total as u64, within, indeterminate, violations });
    }
    Ok(BoguslavskySweep {
        d,
        field: field.clone(),
        ranks,
        first_violation: first_violation.map(|m| PolySubspace::from_rref_unchecked(d, 2, field, m)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_lower_bound_subspace, default_roots};
    use crate::poly::HomPoly;

    #[test]
    fn common_factor_reaches_beta_1() {
        // W = x_1 · span{x_0, x_2}: dim 2, ω_2(2,2) = (1,1,0), gcd = x_1
        let f = FieldSpec::prime(3).unwrap();
        let x = |i| HomPoly::var(i, 2, &f).unwrap();
        let w = PolySubspace::from_polys(2, 2, &f, &[x(1).mul(&x(0)).unwrap(), x(1).mul(&x(2)).unwrap()]).unwrap();
        let c = boguslavsky_check_m2(&w).unwrap();
        assert_eq!((c.deg1, c.rational_residual), (1, 1));
        assert_eq!(c.bound.entries(), &[1, 1, 0]);
        assert_eq!(c.within_bound, Verdict::Indeterminate);
    }

    #[test]
    fn coprime_construction_is_within_bound() {
        let f = FieldSpec::prime(5).unwrap();
        let roots = default_roots(3, &f).unwrap();
        let rep = build_lower_bound_subspace(3, 2, 4, &f, &roots).unwrap();
        let c = boguslavsky_check_m2(&rep.w).unwrap();
        assert_eq!(c.deg1, 0);
        assert!(c.bound.get(1) >= 1);
        assert_eq!(c.within_bound, Verdict::True);
    }

    #[test]
    fn rejects_other_dimensions() {
        let f = FieldSpec::prime(3).unwrap();
        let w = PolySubspace::full(1, 3, &f).unwrap();
        assert!(boguslavsky_check_m2(&w).is_err());
    }

    #[test]
    fn small_sweep_has_no_violations() {
        let f = FieldSpec::prime(2).unwrap();
        let s = boguslavsky_sweep(1, &f, SearchOptions::default()).unwrap();
        assert_eq!(s.violations(), 0);
        assert_eq!(s.ranks.iter().map(|t| t.subspaces).sum::<u64>(), 7 + 7 + 1);
    }
}
