//! Homogeneous polynomials in `m + 1` variables, stored densely over the
//! degree-`d` monomial basis.
//!
//! Basis order is lex-descending on exponent tuples `(γ_1, …, γ_{m+1})`, with
//! `γ_1` the exponent of `x_0`, so coefficient index `i` holds `ω_{i+1}(d, m)`.

use std::collections::HashMap;
use std::fmt;

use crate::combinatorics::{omega_size, omega_unrank};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

/// All degree-`d` monomials in `x_0, …, x_m` in lex-descending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    d: u32,
    m: u32,
    exponents: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(d: u32, m: u32) -> Result<Self> {
        let n = omega_size(d, m);
        if n > 1 << 24 {
            return Err(Error::BudgetExceeded { needed: n, budget: 1 << 24 });
        }
        let mut exponents = Vec::with_capacity(n as usize);
        let mut cur = omega_unrank(d, m, 1)?.entries().to_vec();
        exponents.push(cur.clone());
        while next_lex_desc(&mut cur) {
            exponents.push(cur.clone());
        }
        debug_assert_eq!(exponents.len() as u128, n);
        let index = exponents.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Ok(MonomialBasis { d, m, exponents, index })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn exponent(&self, i: usize) -> &[u32] {
        &self.exponents[i]
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }
}

/// Steps to the next smaller composition with the same sum and length.
fn next_lex_desc(t: &mut [u32]) -> bool {
    let n = t.len();
    if n < 2 {
        return false;
    }
    // rightmost position before the last that can give a unit to the right
    let Some(i) = (0..n - 1).rev().find(|&i| t[i] > 0) else {
        return false;
    };
    t[i] -= 1;
    let tail: u32 = t[i + 1..].iter().sum::<u32>() + 1;
    for x in t[i + 1..].iter_mut() {
        *x = 0;
    }
    t[i + 1] = tail;
    true
}

/// A homogeneous polynomial of degree `d` in `x_0, …, x_m`.
#[derive(Clone, PartialEq, Eq)]
pub struct HomPoly {
    d: u32,
    m: u32,
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly(d={}, m={}, {:?})", self.d, self.m, self.coeffs)
    }
}

impl HomPoly {
    pub fn zero(d: u32, m: u32, field: &FieldSpec) -> Result<Self> {
        let n = omega_size(d, m) as usize;
        Ok(HomPoly { d, m, field: field.clone(), coeffs: vec![FieldElement::ZERO; n] })
    }

    pub fn from_coeffs(d: u32, m: u32, field: &FieldSpec, coeffs: Vec<FieldElement>) -> Result<Self> {
        let n = omega_size(d, m) as usize;
        if coeffs.len() != n {
            return Err(Error::DimensionMismatch(format!("{} coefficients for a basis of size {n}", coeffs.len())));
        }
        for c in &coeffs {
            field.element(c.index() as u32)?;
        }
        Ok(HomPoly { d, m, field: field.clone(), coeffs })
    }

    /// `c · x^exps`.
    pub fn monomial(exps: &[u32], c: FieldElement, field: &FieldSpec) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::InvalidTuple("empty exponent vector".into()));
        }
        let m = exps.len() as u32 - 1;
        let d = exps.iter().sum();
        let basis = MonomialBasis::new(d, m)?;
        let mut p = HomPoly::zero(d, m, field)?;
        p.coeffs[basis.index_of(exps).expect("tuple lies in the basis")] = c;
        Ok(p)
    }

    pub fn constant(m: u32, c: FieldElement, field: &FieldSpec) -> Result<Self> {
        HomPoly::monomial(&vec![0; m as usize + 1], c, field)
    }

    /// The variable `x_i`.
    pub fn var(i: u32, m: u32, field: &FieldSpec) -> Result<Self> {
        if i > m {
            return Err(Error::InvalidParameter(format!("x_{i} with m = {m}")));
        }
        let mut e = vec![0; m as usize + 1];
        e[i as usize] = 1;
        HomPoly::monomial(&e, FieldElement::ONE, field)
    }

    /// `x_i − a x_0`.
    pub fn root_factor(i: u32, a: FieldElement, m: u32, field: &FieldSpec) -> Result<Self> {
        let xi = HomPoly::var(i, m, field)?;
        let x0 = HomPoly::var(0, m, field)?;
        xi.sub(&x0.scale(a))
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

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn basis(&self) -> MonomialBasis {
        MonomialBasis::new(self.d, self.m).expect("basis fits")
    }

    /// Nonzero terms as `(exponents, coefficient)` in basis order.
    pub fn terms(&self) -> Vec<(Vec<u32>, FieldElement)> {
        let basis = self.basis();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (basis.exponent(i).to_vec(), c))
            .collect()
    }

    fn check_compatible(&self, other: &HomPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DimensionMismatch("polynomials over different fields".into()));
        }
        if self.m != other.m {
            return Err(Error::DimensionMismatch(format!("m = {} vs m = {}", self.m, other.m)));
        }
        Ok(())
    }

    pub fn add(&self, other: &HomPoly) -> Result<HomPoly> {
        self.check_compatible(other)?;
        if self.d != other.d {
            return Err(Error::DimensionMismatch(format!("degree {} vs {}", self.d, other.d)));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| self.field.add(a, b)).collect();
        Ok(HomPoly { coeffs, ..self.clone() })
    }

    pub fn sub(&self, other: &HomPoly) -> Result<HomPoly> {
        self.add(&other.scale(self.field.neg(FieldElement::ONE)))
    }

    pub fn scale(&self, c: FieldElement) -> HomPoly {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        HomPoly { coeffs, ..self.clone() }
    }

    pub fn mul(&self, other: &HomPoly) -> Result<HomPoly> {
        self.check_compatible(other)?;
        let mut out = HomPoly::zero(self.d + other.d, self.m, &self.field)?;
        let basis = out.basis();
        let (ta, tb) = (self.terms(), other.terms());
        let mut e = vec![0u32; self.m as usize + 1];
        for (ea, ca) in &ta {
            for (eb, cb) in &tb {
                for k in 0..e.len() {
                    e[k] = ea[k] + eb[k];
                }
                let i = basis.index_of(&e).expect("product exponent in basis");
                out.coeffs[i] = self.field.add(out.coeffs[i], self.field.mul(*ca, *cb));
            }
        }
        Ok(out)
    }

    pub fn product(factors: &[HomPoly], m: u32, field: &FieldSpec) -> Result<HomPoly> {
        let mut acc = HomPoly::constant(m, FieldElement::ONE, field)?;
        for f in factors {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    /// Evaluation at a coordinate vector, with `0^0 = 1`.
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.m as usize + 1 {
            return Err(Error::DimensionMismatch(format!(
                "point with {} coordinates, expected {}",
                point.len(),
                self.m + 1
            )));
        }
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        for (e, c) in self.terms() {
            let mut v = c;
            for (x, &k) in point.iter().zip(&e) {
                v = f.mul(v, f.pow(*x, k as u64));
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    /// Index of the leading term (first nonzero coefficient in basis order).
    pub fn leading_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Scales so the leading coefficient is 1; the zero polynomial is unchanged.
    pub fn monic(&self) -> HomPoly {
        match self.leading_index() {
            None => self.clone(),
            Some(i) => self.scale(self.field.inv(self.coeffs[i]).expect("nonzero")),
        }
    }

    /// Largest `v` with `x_0^v` dividing the polynomial; `None` for zero.
    pub fn x0_valuation(&self) -> Option<u32> {
        self.terms().iter().map(|(e, _)| e[0]).min()
    }

    /// Exact quotient `self / divisor` by lex leading-term division; errors if
    /// the division leaves a remainder.
    pub fn div_exact(&self, divisor: &HomPoly) -> Result<HomPoly> {
        self.check_compatible(divisor)?;
        let Some(li) = divisor.leading_index() else {
            return Err(Error::DivisionByZero(self.field.order()));
        };
        if divisor.d > self.d {
            if self.is_zero() {
                return Err(Error::Precondition("degree of divisor exceeds dividend".into()));
            }
            return Err(Error::Precondition("not divisible".into()));
        }
        let f = &self.field;
        let dbasis = divisor.basis();
        let lead_exp = dbasis.exponent(li).to_vec();
        let lead_inv = f.inv(divisor.coeffs[li])?;
        let dterms = divisor.terms();
        let mut rem = self.clone();
        let mut quot = HomPoly::zero(self.d - divisor.d, self.m, f)?;
        let rbasis = rem.basis();
        let qbasis = quot.basis();
        while let Some(ri) = rem.leading_index() {
            let rexp = rbasis.exponent(ri);
            if rexp.iter().zip(&lead_exp).any(|(a, b)| a < b) {
                return Err(Error::Precondition("not divisible".into()));
            }
            let qexp: Vec<u32> = rexp.iter().zip(&lead_exp).map(|(a, b)| a - b).collect();
            let c = f.mul(rem.coeffs[ri], lead_inv);
            let qi = qbasis.index_of(&qexp).expect("quotient exponent in basis");
            quot.coeffs[qi] = f.add(quot.coeffs[qi], c);
            for (e, dc) in &dterms {
                let te: Vec<u32> = e.iter().zip(&qexp).map(|(a, b)| a + b).collect();
                let ti = rbasis.index_of(&te).expect("term in basis");
                rem.coeffs[ti] = f.sub(rem.coeffs[ti], f.mul(c, *dc));
            }
        }
        Ok(quot)
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if *c == FieldElement::ONE {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{c}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_order_matches_ranks() {
        let b = MonomialBasis::new(2, 2).unwrap();
        let expected: Vec<Vec<u32>> =
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]];
        assert_eq!(b.exponents(), &expected[..]);
        for (d, m) in [(3, 3), (4, 2), (0, 2), (5, 1), (2, 0)] {
            let b = MonomialBasis::new(d, m).unwrap();
            assert_eq!(b.len() as u128, omega_size(d, m));
            for (i, e) in b.exponents().iter().enumerate() {
                assert_eq!(omega_unrank(d, m, i as u128 + 1).unwrap().entries(), &e[..]);
            }
        }
    }

    #[test]
    fn product_and_exact_division() {
        let f = FieldSpec::prime(5).unwrap();
        let a = HomPoly::root_factor(1, FieldElement::ONE, 2, &f).unwrap();
        let b = HomPoly::root_factor(2, f.from_int(3), 2, &f).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.d(), 2);
        assert_eq!(ab.div_exact(&a).unwrap(), b);
        assert_eq!(ab.div_exact(&b).unwrap(), a);
        let x1 = HomPoly::var(1, 2, &f).unwrap();
        assert!(ab.div_exact(&x1).is_err());
    }

    #[test]
    fn evaluation_uses_zero_to_the_zero_is_one() {
        let f = FieldSpec::prime(3).unwrap();
        let x0sq = HomPoly::monomial(&[2, 0, 0], FieldElement::ONE, &f).unwrap();
        assert_eq!(x0sq.eval(&[FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO]).unwrap(), FieldElement::ONE);
        let c = HomPoly::constant(2, f.from_int(2), &f).unwrap();
        assert_eq!(c.eval(&[FieldElement::ZERO; 3]).unwrap(), f.from_int(2));
    }

    #[test]
    fn valuation_and_monic() {
        let f = FieldSpec::prime(7).unwrap();
        let x0 = HomPoly::var(0, 2, &f).unwrap();
        let g = HomPoly::root_factor(2, f.from_int(4), 2, &f).unwrap().scale(f.from_int(3));
        let p = x0.mul(&x0).unwrap().mul(&g).unwrap();
        assert_eq!(p.x0_valuation(), Some(2));
        assert_eq!(p.monic().coeffs()[p.leading_index().unwrap()], FieldElement::ONE);
        assert_eq!(HomPoly::zero(2, 2, &f).unwrap().x0_valuation(), None);
    }

    #[test]
    fn display_is_readable() {
        let f = FieldSpec::prime(5).unwrap();
        let p = HomPoly::root_factor(1, f.from_int(2), 1, &f).unwrap();
        assert_eq!(p.to_string(), "3*x0 + x1");
    }
}
