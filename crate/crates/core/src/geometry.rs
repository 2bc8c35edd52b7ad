//! Projective points over GF(q), evaluation matrices, vanishing sets and
//! Hilbert-function quantities for reduced point sets.

use std::cmp::Ordering;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::combinatorics::{binom, checked_pi};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::poly::HomPoly;
pub use crate::poly::MonomialBasis;

/// Default cap on the number of points materialized by enumeration.
pub const DEFAULT_POINT_BUDGET: u128 = 1 << 24;

/// A point of `P^m(F_q)` whose first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<FieldElement>,
}

impl ProjectivePoint {
    /// Canonicalizes any nonzero coordinate vector.
    pub fn new(coords: Vec<FieldElement>, field: &FieldSpec) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("point needs at least one coordinate".into()));
        }
        for c in &coords {
            field.element(c.index() as u32)?;
        }
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).copied() else {
            return Err(Error::InvalidParameter("all coordinates are zero".into()));
        };
        let inv = field.inv(lead)?;
        let coords = coords.into_iter().map(|c| field.mul(c, inv)).collect();
        Ok(ProjectivePoint { coords })
    }

    /// Point `(1, c_1, …, c_m)` in the affine chart `x_0 ≠ 0`.
    pub fn affine(rest: &[FieldElement]) -> Self {
        let mut coords = Vec::with_capacity(rest.len() + 1);
        coords.push(FieldElement::ONE);
        coords.extend_from_slice(rest);
        ProjectivePoint { coords }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn m(&self) -> u32 {
        self.coords.len() as u32 - 1
    }

    fn leading_position(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).expect("canonical point is nonzero")
    }
}

impl Ord for ProjectivePoint {
    /// Enumeration order: leading-one position first, then coordinates.
    fn cmp(&self, other: &Self) -> Ordering {
        self.leading_position().cmp(&other.leading_position()).then_with(|| self.coords.cmp(&other.coords))
    }
}

impl PartialOrd for ProjectivePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<u32> = self.coords.iter().map(|c| c.index() as u32).collect();
        v.serialize(s)
    }
}

/// A sorted set of distinct canonical points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    m: u32,
    field: FieldSpec,
    points: Vec<ProjectivePoint>,
}

impl PointSet {
    pub fn empty(m: u32, field: &FieldSpec) -> Self {
        PointSet { m, field: field.clone(), points: Vec::new() }
    }

    /// Sorts into enumeration order and drops repeats.
    pub fn new(m: u32, field: &FieldSpec, mut points: Vec<ProjectivePoint>) -> Result<Self> {
        for p in &points {
            if p.m() != m {
                return Err(Error::DimensionMismatch(format!("point in P^{} inside P^{m}", p.m())));
            }
            for c in p.coords() {
                field.element(c.index() as u32)?;
            }
        }
        points.sort();
        points.dedup();
        Ok(PointSet { m, field: field.clone(), points })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.m == other.m && self.points.iter().all(|p| other.contains(p))
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let points = self.points.iter().filter(|p| !other.contains(p)).cloned().collect();
        PointSet { m: self.m, field: self.field.clone(), points }
    }

    /// Subset picked by positions into this set.
    pub fn select(&self, indices: &[usize]) -> PointSet {
        let mut points: Vec<_> = indices.iter().map(|&i| self.points[i].clone()).collect();
        points.sort();
        points.dedup();
        PointSet { m: self.m, field: self.field.clone(), points }
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PointSet", 3)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("points", &self.points)?;
        st.end()
    }
}

/// All of `P^m(F_q)` in canonical order, refusing beyond `budget` points.
pub fn enumerate_projective_points_with_budget(m: u32, field: &FieldSpec, budget: u128) -> Result<PointSet> {
    let q = field.order() as u128;
    let total = checked_pi(m as i64, q).ok_or(Error::Overflow("pi"))?;
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let mut points = Vec::with_capacity(total as usize);
    let n = m as usize + 1;
    for lead in 0..n {
        let free = n - lead - 1;
        // base-q counter over the trailing coordinates, last one fastest
        for counter in 0..q.pow(free as u32) {
            let mut coords = vec![FieldElement::ZERO; n];
            coords[lead] = FieldElement::ONE;
            let mut rest = counter;
            for k in (lead + 1..n).rev() {
                coords[k] = FieldElement::from_index((rest % q) as u16);
                rest /= q;
            }
            points.push(ProjectivePoint { coords });
        }
    }
    Ok(PointSet { m, field: field.clone(), points })
}

pub fn enumerate_projective_points(m: u32, field: &FieldSpec) -> Result<PointSet> {
    enumerate_projective_points_with_budget(m, field, DEFAULT_POINT_BUDGET)
}

fn check_same(points: &PointSet, basis: &MonomialBasis) -> Result<()> {
    if points.m() != basis.m() {
        return Err(Error::DimensionMismatch(format!(
            "points in P^{} with a basis in {} variables",
            points.m(),
            basis.m() + 1
        )));
    }
    Ok(())
}

/// Value of every basis monomial at every point: `|X| × C(m+d, d)`.
pub fn evaluation_matrix(points: &PointSet, basis: &MonomialBasis) -> Result<Matrix> {
    check_same(points, basis)?;
    let field = points.field();
    let d = basis.d() as usize;
    let n = basis.len();
    let mut out = Matrix::zeros(points.len(), n);
    let mut powers = vec![FieldElement::ONE; (d + 1) * (basis.m() as usize + 1)];
    for (i, p) in points.points().iter().enumerate() {
        for (v, &x) in p.coords().iter().enumerate() {
            let row = &mut powers[v * (d + 1)..(v + 1) * (d + 1)];
            row[0] = FieldElement::ONE;
            for k in 1..=d {
                row[k] = field.mul(row[k - 1], x);
            }
        }
        for (j, e) in basis.exponents().iter().enumerate() {
            let mut val = FieldElement::ONE;
            for (v, &k) in e.iter().enumerate() {
                val = field.mul(val, powers[v * (d + 1) + k as usize]);
            }
            out.set(i, j, val);
        }
    }
    Ok(out)
}

/// An `r`-dimensional subspace of `S_d(m, F_q)` held in RREF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySubspace {
    d: u32,
    m: u32,
    field: FieldSpec,
    coeffs: Matrix,
}

impl PolySubspace {
    /// Row space of `generators`; dependent rows are dropped.
    pub fn from_matrix(d: u32, m: u32, field: &FieldSpec, generators: &Matrix) -> Result<Self> {
        let n = binom(m as i64 + d as i64, d as i64) as usize;
        if generators.cols() != n {
            return Err(Error::DimensionMismatch(format!("{} columns for a basis of size {n}", generators.cols())));
        }
        let mut reduced = generators.rref(field);
        reduced.reduced.truncate_rows(reduced.rank);
        Ok(PolySubspace { d, m, field: field.clone(), coeffs: reduced.reduced })
    }

    /// Wraps a matrix already known to be in RREF with full row rank.
    pub fn from_rref_unchecked(d: u32, m: u32, field: &FieldSpec, coeffs: Matrix) -> Self {
        PolySubspace { d, m, field: field.clone(), coeffs }
    }

    pub fn from_polys(d: u32, m: u32, field: &FieldSpec, polys: &[HomPoly]) -> Result<Self> {
        let n = binom(m as i64 + d as i64, d as i64) as usize;
        let mut g = Matrix::zeros(0, n);
        for p in polys {
            if p.d() != d || p.m() != m || p.field() != field {
                return Err(Error::DimensionMismatch(format!(
                    "generator of degree {} in {} variables",
                    p.d(),
                    p.m() + 1
                )));
            }
            g.push_row(p.coeffs())?;
        }
        PolySubspace::from_matrix(d, m, field, &g)
    }

    pub fn full(d: u32, m: u32, field: &FieldSpec) -> Result<Self> {
        let n = binom(m as i64 + d as i64, d as i64) as usize;
        Ok(PolySubspace { d, m, field: field.clone(), coeffs: Matrix::identity(n) })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn polys(&self) -> Vec<HomPoly> {
        (0..self.coeffs.rows())
            .map(|i| {
                HomPoly::from_coeffs(self.d, self.m, &self.field, self.coeffs.row(i).to_vec())
                    .expect("row has basis length")
            })
            .collect()
    }
}

impl Serialize for PolySubspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PolySubspace", 6)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("p", &self.field.p())?;
        st.serialize_field("e", &self.field.e())?;
        st.serialize_field("modulus", self.field.modulus())?;
        st.serialize_field("rows", &self.coeffs)?;
        st.end()
    }
}

/// Precomputed evaluation rows for repeated vanishing tests on one point set.
#[derive(Clone, Debug)]
pub struct Evaluator {
    field: FieldSpec,
    points: PointSet,
    eval: Matrix,
    /// Residue rows for prime fields, enabling integer dot products.
    prime_rows: Option<Vec<u64>>,
}

impl Evaluator {
    pub fn new(points: &PointSet, basis: &MonomialBasis) -> Result<Self> {
        let eval = evaluation_matrix(points, basis)?;
        let field = points.field().clone();
        let prime_rows = field.is_prime_field().then(|| eval.data().iter().map(|x| x.index() as u64).collect());
        Ok(Evaluator { field, points: points.clone(), eval, prime_rows })
    }

    /// Evaluator over all of `P^m(F_q)` for degree `d`.
    pub fn full(d: u32, m: u32, field: &FieldSpec) -> Result<Self> {
        let pts = enumerate_projective_points(m, field)?;
        Evaluator::new(&pts, &MonomialBasis::new(d, m)?)
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn evaluation(&self) -> &Matrix {
        &self.eval
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// Whether polynomial `coeffs` vanishes at point `i`.
    #[inline]
    pub fn vanishes_at(&self, coeffs: &[FieldElement], i: usize) -> bool {
        let n = self.eval.cols();
        match &self.prime_rows {
            Some(rows) => {
                let p = self.field.p() as u64;
                let row = &rows[i * n..(i + 1) * n];
                let mut acc: u64 = 0;
                for (c, &v) in coeffs.iter().zip(row) {
                    acc += c.index() as u64 * v;
                    if acc >= 1 << 62 {
                        acc %= p;
                    }
                }
                acc.is_multiple_of(p)
            }
            None => {
                let row = self.eval.row(i);
                let mut acc = FieldElement::ZERO;
                for (&c, &v) in coeffs.iter().zip(row) {
                    acc = self.field.add(acc, self.field.mul(c, v));
                }
                acc.is_zero()
            }
        }
    }

    /// Whether every row of `w` vanishes at point `i`.
    #[inline]
    pub fn all_vanish_at(&self, w: &Matrix, i: usize) -> bool {
        (0..w.rows()).all(|k| self.vanishes_at(w.row(k), i))
    }

    /// Number of points where every row of `w` vanishes.
    pub fn count(&self, w: &Matrix) -> usize {
        (0..self.num_points()).filter(|&i| self.all_vanish_at(w, i)).count()
    }

    /// Like [`Evaluator::count`] but stops as soon as the count cannot reach `floor`.
    pub fn count_at_least(&self, w: &Matrix, floor: usize) -> Option<usize> {
        let total = self.num_points();
        let mut hits = 0;
        for i in 0..total {
            if self.all_vanish_at(w, i) {
                hits += 1;
            } else if hits + (total - i - 1) < floor {
                return None;
            }
        }
        (hits >= floor).then_some(hits)
    }

    pub fn vanishing_indices(&self, w: &Matrix) -> Vec<usize> {
        (0..self.num_points()).filter(|&i| self.all_vanish_at(w, i)).collect()
    }

    pub fn vanishing_set(&self, w: &Matrix) -> PointSet {
        self.points.select(&self.vanishing_indices(w))
    }
}

/// `V(W)` restricted to `points`, as a count and a witness set.
pub fn count_vanishing(w: &PolySubspace, points: &PointSet) -> Result<(usize, PointSet)> {
    if w.m() != points.m() || w.field() != points.field() {
        return Err(Error::DimensionMismatch("subspace and point set disagree on m or field".into()));
    }
    let ev = Evaluator::new(points, &MonomialBasis::new(w.d(), w.m())?)?;
    let set = ev.vanishing_set(w.coeffs());
    Ok((set.len(), set))
}

/// `V(W)(F_q)` over the whole projective space.
pub fn count_vanishing_full(w: &PolySubspace) -> Result<(usize, PointSet)> {
    let pts = enumerate_projective_points(w.m(), w.field())?;
    count_vanishing(w, &pts)
}

/// `dim I_k(X) = C(m+k, k) − rank(eval_k(X))`.
pub fn dim_i_k(x: &PointSet, k: u32) -> Result<usize> {
    let basis = MonomialBasis::new(k, x.m())?;
    let rank = evaluation_matrix(x, &basis)?.rank(x.field());
    Ok(basis.len() - rank)
}

/// `g_X(k) = dim I_k(X) − C(m+k, k) + |X|`.
pub fn g_x(x: &PointSet, k: u32) -> Result<usize> {
    let basis = MonomialBasis::new(k, x.m())?;
    let rank = evaluation_matrix(x, &basis)?.rank(x.field());
    Ok(x.len() - rank)
}

/// Hilbert function of a plane complete intersection of degrees `a, b` in degree `k`.
pub fn hilbert_ci_formula(a: u32, b: u32, k: u32) -> i128 {
    let c = |n: i64| binom(n, 2) as i128;
    let (a, b, k) = (a as i64, b as i64, k as i64);
    c(k + 2) - c(k - a + 2) - c(k - b + 2) + c(k - a - b + 2)
}

/// Both sides of the Cayley–Bacharach dimension identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyBacharach {
    pub lhs: i64,
    pub rhs: i64,
    pub equal: bool,
}

/// Compares `dim I_k(Γ') − dim I_k(Γ)` with `g_{Γ∖Γ'}(a + b − 3 − k)` for a
/// reduced complete intersection `Γ` of degrees `a, b`.
pub fn cayley_bacharach_check(
    gamma: &PointSet,
    gamma_prime: &PointSet,
    a: u32,
    b: u32,
    k: u32,
) -> Result<CayleyBacharach> {
    if !gamma_prime.is_subset_of(gamma) {
        return Err(Error::Precondition("Γ' is not a subset of Γ".into()));
    }
    let s = a as i64 + b as i64 - 3;
    if s < k as i64 {
        return Err(Error::Precondition(format!("s − k = {} is negative", s - k as i64)));
    }
    let lhs = dim_i_k(gamma_prime, k)? as i64 - dim_i_k(gamma, k)? as i64;
    let residual = gamma.difference(gamma_prime);
    let rhs = g_x(&residual, (s - k as i64) as u32)? as i64;
    Ok(CayleyBacharach { lhs, rhs, equal: lhs == rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(i: u16) -> FieldElement {
        FieldElement::from_index(i)
    }

    fn pt(v: &[u16]) -> ProjectivePoint {
        ProjectivePoint { coords: v.iter().map(|&i| el(i)).collect() }
    }

    fn grid(field: &FieldSpec, xs: &[u16], ys: &[u16]) -> PointSet {
        let pts = xs.iter().flat_map(|&x| ys.iter().map(move |&y| pt(&[1, x, y]))).collect();
        PointSet::new(2, field, pts).unwrap()
    }

    #[test]
    fn projective_line_over_gf2() {
        let f = FieldSpec::prime(2).unwrap();
        let pts = enumerate_projective_points(1, &f).unwrap();
        assert_eq!(pts.points(), &[pt(&[1, 0]), pt(&[1, 1]), pt(&[0, 1])]);
    }

    #[test]
    fn point_counts() {
        for (m, q) in [(2u32, 3u32), (2, 4), (3, 2), (0, 5), (1, 9)] {
            let f = if q == 4 || q == 9 {
                let p = if q == 4 { 2 } else { 3 };
                FieldSpec::new(p, 2, None).unwrap()
            } else {
                FieldSpec::prime(q).unwrap()
            };
            let pts = enumerate_projective_points(m, &f).unwrap();
            assert_eq!(pts.len() as u128, crate::combinatorics::pi(m as i64, q as u128));
            let mut sorted = pts.points().to_vec();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, pts.points());
        }
        let f = FieldSpec::prime(3).unwrap();
        assert!(matches!(
            enumerate_projective_points_with_budget(3, &f, 10),
            Err(Error::BudgetExceeded { needed: 40, budget: 10 })
        ));
    }

    #[test]
    fn canonicalization() {
        let f = FieldSpec::prime(5).unwrap();
        let p = ProjectivePoint::new(vec![el(0), el(2), el(4)], &f).unwrap();
        assert_eq!(p, pt(&[0, 1, 2]));
        assert!(ProjectivePoint::new(vec![el(0), el(0)], &f).is_err());
    }

    #[test]
    fn evaluation_rows() {
        let f = FieldSpec::prime(3).unwrap();
        let basis = MonomialBasis::new(2, 2).unwrap();
        let x = PointSet::new(2, &f, vec![pt(&[1, 0, 0])]).unwrap();
        let e = evaluation_matrix(&x, &basis).unwrap();
        assert_eq!(e.row(0), &[el(1), el(0), el(0), el(0), el(0), el(0)]);
        let x = PointSet::new(2, &f, vec![pt(&[1, 1, 1])]).unwrap();
        assert!(evaluation_matrix(&x, &basis).unwrap().row(0).iter().all(|&v| v == el(1)));
        let all = enumerate_projective_points(2, &f).unwrap();
        let lin = evaluation_matrix(&all, &MonomialBasis::new(1, 2).unwrap()).unwrap();
        assert_eq!(lin.rows(), 13);
        for (i, p) in all.points().iter().enumerate() {
            assert_eq!(lin.row(i), p.coords());
        }
    }

    #[test]
    fn vanishing_examples() {
        let f = FieldSpec::prime(3).unwrap();
        let x0 = HomPoly::var(0, 1, &f).unwrap();
        let w = PolySubspace::from_polys(1, 1, &f, std::slice::from_ref(&x0)).unwrap();
        let (n, set) = count_vanishing_full(&w).unwrap();
        assert_eq!((n, set.points()), (1, &[pt(&[0, 1])][..]));
        let x1 = HomPoly::var(1, 1, &f).unwrap();
        let w = PolySubspace::from_polys(2, 1, &f, &[x0.mul(&x1).unwrap()]).unwrap();
        assert_eq!(count_vanishing_full(&w).unwrap().0, 2);
        let w = PolySubspace::full(2, 2, &f).unwrap();
        assert_eq!(count_vanishing_full(&w).unwrap().0, 0);
    }

    #[test]
    fn extension_field_vanishing_matches_direct_evaluation() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        let a = HomPoly::root_factor(1, el(2), 2, &f).unwrap();
        let b = HomPoly::root_factor(2, el(3), 2, &f).unwrap();
        let w = PolySubspace::from_polys(1, 2, &f, &[a.clone(), b.clone()]).unwrap();
        let (n, set) = count_vanishing_full(&w).unwrap();
        assert_eq!(n, 1);
        assert_eq!(set.points(), &[pt(&[1, 2, 3])]);
        for p in set.points() {
            assert!(a.eval(p.coords()).unwrap().is_zero());
        }
    }

    #[test]
    fn hilbert_quantities() {
        let f = FieldSpec::prime(7).unwrap();
        let empty = PointSet::empty(2, &f);
        assert_eq!(dim_i_k(&empty, 3).unwrap(), 10);
        assert_eq!(g_x(&empty, 3).unwrap(), 0);
        let one = PointSet::new(2, &f, vec![pt(&[1, 2, 3])]).unwrap();
        assert_eq!(dim_i_k(&one, 1).unwrap(), 2);
        let g = grid(&f, &[1, 2, 3], &[1, 2, 3]);
        assert_eq!(dim_i_k(&g, 3).unwrap(), 2);
        assert_eq!(hilbert_ci_formula(2, 2, 2), 4);
        assert_eq!(hilbert_ci_formula(3, 3, 3), 8);
        for (a, b) in [(2, 3), (4, 4), (1, 5)] {
            assert_eq!(hilbert_ci_formula(a, b, a + b - 1), (a * b) as i128);
            assert_eq!(hilbert_ci_formula(a, b, a + b + 3), (a * b) as i128);
        }
    }

    #[test]
    fn cayley_bacharach_examples() {
        let f = FieldSpec::prime(7).unwrap();
        let g = grid(&f, &[1, 2, 3], &[1, 2, 3]);
        let eight = g.select(&(0..8).collect::<Vec<_>>());
        let cb = cayley_bacharach_check(&g, &eight, 3, 3, 3).unwrap();
        assert_eq!((cb.lhs, cb.rhs, cb.equal), (0, 0, true));
        let cb = cayley_bacharach_check(&g, &g, 3, 3, 2).unwrap();
        assert_eq!((cb.lhs, cb.rhs), (0, 0));
        let g2 = grid(&f, &[1, 2], &[1, 2]);
        let three = g2.select(&[0, 1, 2]);
        let cb = cayley_bacharach_check(&g2, &three, 2, 2, 1).unwrap();
        assert!(cb.equal);
        assert_eq!(cb.rhs, 0);
        assert!(cayley_bacharach_check(&g2, &three, 2, 2, 2).is_err());
        assert!(cayley_bacharach_check(&three, &g2, 2, 2, 1).is_err());
    }
}
