//! Explicit subspaces with many common zeros, grid point sets, and projective
//! Reed–Muller generator matrices.

use serde::Serialize;

use crate::combinatorics::{h_prime, omega_prime_unrank, omega_size, pi, ExponentTuple};
use crate::error::{Error, Result};
use crate::geometry::{
    count_vanishing_full, enumerate_projective_points, evaluation_matrix, MonomialBasis, PointSet, PolySubspace,
    ProjectivePoint,
};
use crate::gf::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::poly::HomPoly;

/// Claims and measurements for one constructed subspace.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub d: u32,
    pub m: u32,
    pub r: u128,
    pub field: FieldSpec,
    pub roots: Vec<u32>,
    /// `ω'_{r−(m−1)}(d, m)`.
    pub alpha: ExponentTuple,
    pub l: u32,
    #[serde(rename = "W")]
    pub w: PolySubspace,
    pub expected_y: PointSet,
    pub claimed_dim: u128,
    pub claimed_lower_bound: u128,
    pub verified_dim: usize,
    pub verified_count: usize,
    pub y_within_vanishing_set: bool,
}

/// `a_1, …, a_d`: field indices `1, …, d−1` followed by `0`.
pub fn default_roots(d: u32, field: &FieldSpec) -> Result<Vec<FieldElement>> {
    if d == 0 || d > field.order() {
        return Err(Error::Precondition(format!("need d distinct roots, d = {d}, q = {}", field.order())));
    }
    let mut roots: Vec<FieldElement> = (1..d).map(|i| FieldElement::from_index(i as u16)).collect();
    roots.push(FieldElement::ZERO);
    Ok(roots)
}

fn check_roots(d: u32, field: &FieldSpec, roots: &[FieldElement]) -> Result<()> {
    if roots.len() != d as usize {
        return Err(Error::Precondition(format!("{} roots given for d = {d}", roots.len())));
    }
    for r in roots {
        field.element(r.index() as u32)?;
    }
    let mut sorted = roots.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != roots.len() {
        return Err(Error::Precondition("roots are not distinct".into()));
    }
    if roots.last() != Some(&FieldElement::ZERO) {
        return Err(Error::Precondition("the last root must be 0".into()));
    }
    Ok(())
}

fn check_params(d: u32, m: u32, r: u128, field: &FieldSpec) -> Result<()> {
    if d == 0 || m == 0 {
        return Err(Error::InvalidParameter("d, m >= 1".into()));
    }
    if field.order() < d {
        return Err(Error::Precondition(format!("q = {} < d = {d}", field.order())));
    }
    let top = omega_size(d, m);
    if r < m as u128 || r > top {
        return Err(Error::RankOutOfRange { r, max: top });
    }
    Ok(())
}

/// `∏_{j<count} (x_i − a_j x_0)`.
fn root_product(i: u32, count: u32, m: u32, roots: &[FieldElement], field: &FieldSpec) -> Result<HomPoly> {
    let factors =
        roots[..count as usize].iter().map(|&a| HomPoly::root_factor(i, a, m, field)).collect::<Result<Vec<_>>>()?;
    HomPoly::product(&factors, m, field)
}

/// All monomials of degree `deg` in the listed variables.
fn monomials_in(vars: &[u32], deg: u32, m: u32, field: &FieldSpec) -> Result<Vec<HomPoly>> {
    let basis = MonomialBasis::new(deg, vars.len() as u32 - 1)?;
    basis
        .exponents()
        .iter()
        .map(|e| {
            let mut full = vec![0u32; m as usize + 1];
            for (&v, &k) in vars.iter().zip(e) {
                full[v as usize] = k;
            }
            HomPoly::monomial(&full, FieldElement::ONE, field)
        })
        .collect()
}

/// Generators of the subspace, before reduction to RREF.
fn generators(
    d: u32,
    m: u32,
    r: u128,
    field: &FieldSpec,
    roots: &[FieldElement],
) -> Result<(ExponentTuple, u32, Vec<HomPoly>)> {
    let alpha = omega_prime_unrank(d, m, r + 1 - m as u128)?;
    let l = alpha.first_nonzero().expect("d >= 1") as u32;
    if r == omega_size(d, m) {
        let basis = MonomialBasis::new(d, m)?;
        let all = basis
            .exponents()
            .iter()
            .map(|e| HomPoly::monomial(e, FieldElement::ONE, field))
            .collect::<Result<Vec<_>>>()?;
        return Ok((alpha, l, all));
    }
    let big_f = |i: u32| root_product(i, d, m, roots, field);
    if r == m as u128 {
        let gens = (1..=m).map(big_f).collect::<Result<Vec<_>>>()?;
        return Ok((alpha, l, gens));
    }
    let mut gens = Vec::new();
    let mut g_prod = HomPoly::constant(m, FieldElement::ONE, field)?;
    let mut used = 0u32;
    for i in 1..=m {
        let ai = alpha.get(i as usize);
        g_prod = g_prod.mul(&root_product(i, ai, m, roots, field)?)?;
        used += ai;
        if i < m {
            if used + 1 > d {
                continue;
            }
            let head = g_prod.mul(&HomPoly::var(i, m, field)?)?;
            let vars: Vec<u32> = std::iter::once(0).chain(i..=m).collect();
            for mono in monomials_in(&vars, d - 1 - used, m, field)? {
                gens.push(head.mul(&mono)?);
            }
        } else {
            for mono in monomials_in(&[0, m], d - used, m, field)? {
                gens.push(g_prod.mul(&mono)?);
            }
        }
    }
    for i in l + 1..=m {
        gens.push(big_f(i)?);
    }
    Ok((alpha, l, gens))
}

/// The point set `Y = ⋃_{i=l}^{m} Y_i` of the construction.
pub fn build_grid_y(d: u32, m: u32, r: u128, field: &FieldSpec, roots: &[FieldElement]) -> Result<PointSet> {
    check_params(d, m, r, field)?;
    check_roots(d, field, roots)?;
    let alpha = omega_prime_unrank(d, m, r + 1 - m as u128)?;
    let mut points = Vec::new();
    for i in 1..=m as usize {
        let ai = alpha.get(i) as usize;
        if ai == 0 {
            continue;
        }
        // coordinates x_1..x_m: zeros before i, first α_i roots at i, all roots after
        let choices: Vec<&[FieldElement]> = (1..=m as usize)
            .map(|k| match k.cmp(&i) {
                std::cmp::Ordering::Less => &roots[d as usize - 1..],
                std::cmp::Ordering::Equal => &roots[..ai],
                std::cmp::Ordering::Greater => roots,
            })
            .collect();
        let mut idx = vec![0usize; m as usize];
        'grid: loop {
            let rest: Vec<FieldElement> = idx.iter().zip(&choices).map(|(&j, c)| c[j]).collect();
            points.push(ProjectivePoint::affine(&rest));
            for k in (0..m as usize).rev() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    continue 'grid;
                }
                idx[k] = 0;
            }
            break;
        }
    }
    PointSet::new(m, field, points)
}

/// Builds the extremal subspace for `(d, m, r)` and checks its dimension and
/// zero count against the claims.
pub fn build_lower_bound_subspace(
    d: u32,
    m: u32,
    r: u128,
    field: &FieldSpec,
    roots: &[FieldElement],
) -> Result<ConstructionReport> {
    check_params(d, m, r, field)?;
    check_roots(d, field, roots)?;
    let (alpha, l, gens) = generators(d, m, r, field, roots)?;
    let w = PolySubspace::from_polys(d, m, field, &gens)?;
    let verified_dim = w.dim();
    if verified_dim as u128 != r {
        return Err(Error::ConstructionFailed(format!(
            "({d},{m},{r}) spans dimension {verified_dim} from {} generators",
            gens.len()
        )));
    }
    let claimed_lower_bound = h_prime(d, m, r + 1 - m as u128)?;
    // V(W) lies in the rational grid V(F_1, …, F_m), so this count is exact
    let (verified_count, zeros) = count_vanishing_full(&w)?;
    let expected_y = build_grid_y(d, m, r, field, roots)?;
    if expected_y.len() as u128 != claimed_lower_bound {
        return Err(Error::ConstructionFailed(format!("|Y| = {} but H' = {claimed_lower_bound}", expected_y.len())));
    }
    let y_within_vanishing_set = expected_y.is_subset_of(&zeros);
    if !y_within_vanishing_set {
        return Err(Error::ConstructionFailed("Y is not contained in V(W)".into()));
    }
    if (verified_count as u128) < claimed_lower_bound {
        return Err(Error::ConstructionFailed(format!("|V(W)| = {verified_count} below H' = {claimed_lower_bound}")));
    }
    Ok(ConstructionReport {
        d,
        m,
        r,
        field: field.clone(),
        roots: roots.iter().map(|x| x.index() as u32).collect(),
        alpha,
        l,
        w,
        expected_y,
        claimed_dim: r,
        claimed_lower_bound,
        verified_dim,
        verified_count,
        y_within_vanishing_set,
    })
}

/// `F = ∏(x_1 − α x_0)`, `G = ∏(x_2 − β x_0)` and their common zeros.
pub fn build_ci_grid(
    a_roots: &[FieldElement],
    b_roots: &[FieldElement],
    field: &FieldSpec,
) -> Result<(HomPoly, HomPoly, PointSet)> {
    for roots in [a_roots, b_roots] {
        if roots.is_empty() {
            return Err(Error::Precondition("grid sides need at least one root".into()));
        }
        let mut s = roots.to_vec();
        s.sort();
        s.dedup();
        if s.len() != roots.len() {
            return Err(Error::Precondition("roots are not distinct".into()));
        }
        for r in roots {
            field.element(r.index() as u32)?;
        }
    }
    let f = HomPoly::product(
        &a_roots.iter().map(|&a| HomPoly::root_factor(1, a, 2, field)).collect::<Result<Vec<_>>>()?,
        2,
        field,
    )?;
    let g = HomPoly::product(
        &b_roots.iter().map(|&b| HomPoly::root_factor(2, b, 2, field)).collect::<Result<Vec<_>>>()?,
        2,
        field,
    )?;
    let pts = a_roots.iter().flat_map(|&a| b_roots.iter().map(move |&b| ProjectivePoint::affine(&[a, b]))).collect();
    Ok((f, g, PointSet::new(2, field, pts)?))
}

/// The projective Reed–Muller code `PRM_q(d, m)`.
#[derive(Clone, Debug)]
pub struct PrmCode {
    pub d: u32,
    pub m: u32,
    pub field: FieldSpec,
    /// Points × monomials.
    pub evaluation: Matrix,
    /// Monomials × points; its row space is the code.
    pub generator: Matrix,
    pub length: usize,
    pub dimension: usize,
}

pub fn prm_generator_matrix(d: u32, m: u32, field: &FieldSpec) -> Result<PrmCode> {
    let pts = enumerate_projective_points(m, field)?;
    let evaluation = evaluation_matrix(&pts, &MonomialBasis::new(d, m)?)?;
    let generator = evaluation.transpose();
    let dimension = generator.rank(field);
    let n = generator.rows();
    if field.order() > d && dimension != n {
        return Err(Error::ConstructionFailed(format!("PRM code has dimension {dimension}, expected {n}")));
    }
    debug_assert_eq!(pts.len() as u128, pi(m as i64, field.order() as u128));
    Ok(PrmCode { d, m, field: field.clone(), length: pts.len(), dimension, evaluation, generator })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::dim_i_k;

    fn el(i: u16) -> FieldElement {
        FieldElement::from_index(i)
    }

    #[test]
    fn worked_example_d2_m2_r4() {
        let f = FieldSpec::prime(5).unwrap();
        let roots = default_roots(2, &f).unwrap();
        assert_eq!(roots, vec![el(1), el(0)]);
        let rep = build_lower_bound_subspace(2, 2, 4, &f, &roots).unwrap();
        assert_eq!(rep.alpha.entries(), &[1, 0, 1]);
        assert_eq!((rep.verified_dim, rep.verified_count, rep.claimed_lower_bound), (4, 2, 2));
        let y: Vec<_> = rep.expected_y.points().to_vec();
        assert_eq!(y, vec![ProjectivePoint::affine(&[el(1), el(0)]), ProjectivePoint::affine(&[el(1), el(1)])]);
    }

    #[test]
    fn r_equal_m_gives_full_grid() {
        for (d, m, p) in [(2u32, 2u32, 3u32), (3, 2, 5), (2, 3, 3)] {
            let f = FieldSpec::prime(p).unwrap();
            let roots = default_roots(d, &f).unwrap();
            let rep = build_lower_bound_subspace(d, m, m as u128, &f, &roots).unwrap();
            assert_eq!(rep.verified_count as u128, (d as u128).pow(m));
        }
    }

    #[test]
    fn top_rank_is_everything() {
        let f = FieldSpec::prime(5).unwrap();
        let roots = default_roots(3, &f).unwrap();
        let rep = build_lower_bound_subspace(3, 2, 10, &f, &roots).unwrap();
        assert_eq!((rep.verified_dim, rep.verified_count), (10, 0));
        assert!(rep.expected_y.is_empty());
    }

    #[test]
    fn precondition_errors() {
        let f = FieldSpec::prime(2).unwrap();
        assert!(default_roots(3, &f).is_err());
        let f = FieldSpec::prime(5).unwrap();
        assert!(build_lower_bound_subspace(2, 2, 4, &f, &[el(1), el(1)]).is_err());
        assert!(build_lower_bound_subspace(2, 2, 4, &f, &[el(0), el(1)]).is_err());
        assert!(build_lower_bound_subspace(2, 2, 1, &f, &[el(1), el(0)]).is_err());
        assert!(build_lower_bound_subspace(2, 2, 7, &f, &[el(1), el(0)]).is_err());
    }

    #[test]
    fn three_dimensional_block_shapes() {
        // α = ω'_{r−2}(3,3) for several r; |Y_i| = α_i d^{m−i}
        let f = FieldSpec::prime(5).unwrap();
        let roots = default_roots(3, &f).unwrap();
        for r in 3..=20u128 {
            let y = build_grid_y(3, 3, r, &f, &roots).unwrap();
            let alpha = omega_prime_unrank(3, 3, r - 2).unwrap();
            let expected: u128 = (1..=3).map(|i| alpha.get(i) as u128 * 3u128.pow(3 - i as u32)).sum();
            assert_eq!(y.len() as u128, expected);
        }
    }

    #[test]
    fn ci_grids() {
        let f = FieldSpec::prime(7).unwrap();
        let (_, _, g) = build_ci_grid(&[el(1), el(2)], &[el(3), el(4)], &f).unwrap();
        assert_eq!(g.len(), 4);
        let (_, _, g) = build_ci_grid(&[el(1), el(2), el(3)], &[el(1), el(2), el(3)], &f).unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(dim_i_k(&g, 3).unwrap(), 2);
        let (a, b, g) = build_ci_grid(&[el(5)], &[el(6)], &f).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(crate::polygcd::gcd_pair(&a, &b).unwrap().d(), 0);
        assert!(build_ci_grid(&[el(1), el(1)], &[el(2)], &f).is_err());
    }

    #[test]
    fn prm_codes() {
        let f = FieldSpec::prime(3).unwrap();
        let c = prm_generator_matrix(2, 2, &f).unwrap();
        assert_eq!((c.length, c.dimension), (13, 6));
        let c = prm_generator_matrix(1, 2, &f).unwrap();
        assert_eq!((c.length, c.dimension), (13, 3));
        let f2 = FieldSpec::prime(2).unwrap();
        let c = prm_generator_matrix(1, 1, &f2).unwrap();
        assert_eq!((c.length, c.dimension), (3, 2));
    }
}
