//! Generalized Hamming weights by subcode support enumeration.

use serde::Serialize;

use super::enumerate::exhaustive_max;
use super::{exhaustive_e_r, SearchOptions};
use crate::combinatorics::{f, pi};
use crate::constructions::prm_generator_matrix;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::matrix::Matrix;

#[derive(Clone, Debug, Serialize)]
pub struct GhwReport {
    pub r: usize,
    pub d_r: usize,
    pub length: usize,
    pub dimension: usize,
    /// Basis of a minimizing subcode, in code coordinates.
    pub witness: Matrix,
    pub visited: u128,
}

/// `d_r`: the smallest support of an `r`-dimensional subcode of the row space of `generator`.
pub fn ghw(generator: &Matrix, field: &FieldSpec, r: usize, opts: SearchOptions) -> Result<GhwReport> {
    let mut g = generator.rref(field);
    let k = g.rank;
    g.reduced.truncate_rows(k);
    let g = g.reduced;
    let n = g.cols();
    if r == 0 || r > k {
        return Err(Error::RankOutOfRange { r: r as u128, max: k as u128 });
    }
    let support = |u: &Matrix, floor: Option<i64>| -> Option<i64> {
        // floor = −(largest admissible support)
        let cap = floor.map(|f| (-f) as usize).unwrap_or(usize::MAX);
        let d = u.mul(&g, field).expect("shapes agree");
        let mut s = 0usize;
        for col in 0..n {
            if (0..d.rows()).any(|i| !d.get(i, col).is_zero()) {
                s += 1;
                if s > cap {
                    return None;
                }
            }
        }
        Some(-(s as i64))
    };
    let out = exhaustive_max(k, r, field, opts.budget, opts.workers, support)?;
    let best = out.best.ok_or(Error::Infeasible)?;
    let witness = best.witness.mul(&g, field)?;
    Ok(GhwReport { r, d_r: (-best.score) as usize, length: n, dimension: k, witness, visited: out.visited })
}

/// One row of the GHW table for `PRM_q(d, m)`.
#[derive(Clone, Debug, Serialize)]
pub struct GhwRow {
    pub r: usize,
    /// From subcode support enumeration.
    pub d_r: usize,
    /// From the zero-count search, `π_m(q) − e_r`.
    pub d_r_from_e_r: usize,
    pub e_r: u64,
    /// `π_m(q) − f_r` when `q >= d + 1`.
    pub d_r_from_f_r: Option<u128>,
    pub agree: bool,
}

/// `d_r(PRM_q(d, m))` for each `r`, computed by support enumeration and
/// cross-checked against `π_m(q) − e_r(d, m; q)`.
pub fn ghw_table(d: u32, m: u32, field: &FieldSpec, ranks: &[usize], opts: SearchOptions) -> Result<Vec<GhwRow>> {
    let code = prm_generator_matrix(d, m, field)?;
    let q = field.order() as u128;
    let length = pi(m as i64, q);
    let mut rows = Vec::new();
    for &r in ranks {
        if r == 0 || r > code.dimension {
            return Err(Error::RankOutOfRange { r: r as u128, max: code.dimension as u128 });
        }
        let g = ghw(&code.generator, field, r, opts)?;
        let e = exhaustive_e_r(d, m, field, r, opts)?;
        let d_r_from_e_r = (length - e.best_value as u128) as usize;
        let d_r_from_f_r = f(d, m, q, r as u128).ok().map(|v| length - v);
        rows.push(GhwRow {
            r,
            d_r: g.d_r,
            d_r_from_e_r,
            e_r: e.best_value,
            d_r_from_f_r,
            agree: g.d_r == d_r_from_e_r,
        });
    }
    Ok(rows)
}
