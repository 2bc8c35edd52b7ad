//! Exact arithmetic in GF(q), q = p^e <= 2^16.
//!
//! Elements are plain indices in `[0, q)`. For `e = 1` the index is the
//! residue mod p; for `e > 1` it is the base-p digit vector of the polynomial
//! representative (digit `i` is the coefficient of `x^i`). All state lives in
//! [`FieldSpec`], which is immutable and cheap to clone.
//!
//! Fields with `q <= 256` use full addition/multiplication tables. Larger
//! fields use exponent/logarithm tables with Zech logarithms for addition.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const MAX_ORDER: u32 = 1 << 16;
const FULL_TABLE_MAX: u32 = 256;
const NO_ZECH: u32 = u32::MAX;

/// An element of some GF(q), stored as its index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw index without checking it against any field.
    pub const fn from_index(index: u16) -> Self {
        FieldElement(index)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

enum Arith {
    Full { add: Vec<u16>, mul: Vec<u16>, neg: Vec<u16>, inv: Vec<u16> },
    Log { exp: Vec<u16>, log: Vec<u32>, zech: Vec<u32>, neg: Vec<u16> },
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    arith: Arith,
}

/// The finite field GF(p^e) with precomputed tables.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.p(), self.e(), self.modulus())
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.p() == other.p() && self.e() == other.e() && self.modulus() == other.modulus())
    }
}

impl Eq for FieldSpec {}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FieldSpec", 3)?;
        s.serialize_field("p", &self.p())?;
        s.serialize_field("e", &self.e())?;
        s.serialize_field("modulus", self.modulus())?;
        s.end()
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` by the monic-or-not polynomial `b` over GF(p); ascending coefficients.
fn poly_rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p);
    while r.len() > db {
        let top = *r.last().unwrap();
        if top != 0 {
            let factor = top * lead_inv % p;
            let shift = r.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                let sub = factor * bc % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

fn digits(mut index: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(index % p);
        index /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// True when the monic degree-e `modulus` has no monic factor of degree <= e/2.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = modulus.len() - 1;
    for deg in 1..=e / 2 {
        let count = (p as u64).pow(deg as u32);
        for low in 0..count {
            let mut divisor = digits(low as u32, p, deg as u32);
            divisor.push(1);
            if poly_rem_mod_p(modulus, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest irreducible monic polynomial of degree `e`,
/// comparing coefficients from `x^(e-1)` down to the constant term.
pub fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for low in 0..count {
        let mut candidate = digits(low as u32, p, e);
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return candidate;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

struct SlowField {
    p: u32,
    e: u32,
    modulus: Vec<u32>,
}

impl SlowField {
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let da = digits(a, self.p, self.e);
        let db = digits(b, self.p, self.e);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        undigits(&s, self.p)
    }

    fn neg(&self, a: u32) -> u32 {
        let da = digits(a, self.p, self.e);
        let n: Vec<u32> = da.iter().map(|&x| (self.p - x) % self.p).collect();
        undigits(&n, self.p)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        if self.e == 1 {
            return ((a as u64 * b as u64) % p as u64) as u32;
        }
        let e = self.e as usize;
        let da = digits(a, p, self.e);
        let db = digits(b, p, self.e);
        let mut prod = vec![0u32; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut r = poly_rem_mod_p(&prod, &self.modulus, p);
        r.resize(e, 0);
        undigits(&r, p)
    }

    fn pow(&self, a: u32, mut exp: u64) -> u32 {
        let mut result = 1;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        result
    }
}

impl FieldSpec {
    /// Builds GF(p^e). Without a modulus and `e > 1`, the default modulus is used.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidParameter("extension degree must be >= 1".into()));
        }
        let q =
            (p as u64).checked_pow(e).filter(|&q| q <= MAX_ORDER as u64).ok_or(Error::OrderTooLarge { p, e })? as u32;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 {
                    return Err(Error::InvalidModulus(format!("expected {} coefficients, got {}", e + 1, m.len())));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficient out of [0, p)".into()));
                }
                if m[e as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if e > 1 && !is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m
            }
            None if e == 1 => vec![0, 1],
            None => default_modulus(p, e),
        };

        let slow = SlowField { p, e, modulus: modulus.clone() };
        let arith = if q <= FULL_TABLE_MAX { Self::full_tables(&slow, q) } else { Self::log_tables(&slow, q) };
        Ok(FieldSpec { inner: Arc::new(Inner { p, e, q, modulus, arith }) })
    }

    /// Prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    fn full_tables(slow: &SlowField, q: u32) -> Arith {
        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let mut neg = vec![0u16; n];
        let mut inv = vec![0u16; n];
        for a in 0..q {
            neg[a as usize] = slow.neg(a) as u16;
            for b in 0..q {
                add[a as usize * n + b as usize] = slow.add(a, b) as u16;
                let m = slow.mul(a, b);
                mul[a as usize * n + b as usize] = m as u16;
                if m == 1 {
                    inv[a as usize] = b as u16;
                }
            }
        }
        Arith::Full { add, mul, neg, inv }
    }

    fn log_tables(slow: &SlowField, q: u32) -> Arith {
        let order = q - 1;
        let factors = prime_factors(order);
        let generator = (2..q)
            .find(|&g| factors.iter().all(|&f| slow.pow(g, (order / f) as u64) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u16; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x as u16;
            log[x as usize] = i;
            x = slow.mul(x, generator);
        }
        let mut zech = vec![NO_ZECH; order as usize];
        for k in 0..order {
            let s = slow.add(1, exp[k as usize] as u32);
            if s != 0 {
                zech[k as usize] = log[s as usize];
            }
        }
        let neg = (0..q).map(|a| slow.neg(a) as u16).collect();
        Arith::Log { exp, log, zech, neg }
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn e(&self) -> u32 {
        self.inner.e
    }

    /// The field order q = p^e.
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Ascending coefficients of the defining polynomial (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.e == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.inner.q {
            Ok(FieldElement(index as u16))
        } else {
            Err(Error::ForeignElement { index, order: self.inner.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.inner.p as i64) as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q).map(|i| FieldElement(i as u16))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        (a.0 as u32) < self.inner.q
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        match &self.inner.arith {
            Arith::Full { add, .. } => FieldElement(add[a.index() * self.inner.q as usize + b.index()]),
            Arith::Log { exp, log, zech, .. } => {
                if a.is_zero() {
                    return b;
                }
                if b.is_zero() {
                    return a;
                }
                let n = self.inner.q - 1;
                let (i, j) = (log[a.index()], log[b.index()]);
                let z = zech[((j + n - i) % n) as usize];
                if z == NO_ZECH {
                    FieldElement::ZERO
                } else {
                    FieldElement(exp[((i + z) % n) as usize])
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match &self.inner.arith {
            Arith::Full { neg, .. } | Arith::Log { neg, .. } => FieldElement(neg[a.index()]),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        match &self.inner.arith {
            Arith::Full { mul, .. } => FieldElement(mul[a.index() * self.inner.q as usize + b.index()]),
            Arith::Log { exp, log, .. } => {
                if a.is_zero() || b.is_zero() {
                    return FieldElement::ZERO;
                }
                let n = self.inner.q - 1;
                FieldElement(exp[((log[a.index()] + log[b.index()]) % n) as usize])
            }
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero(self.inner.q));
        }
        Ok(match &self.inner.arith {
            Arith::Full { inv, .. } => FieldElement(inv[a.index()]),
            Arith::Log { exp, log, .. } => {
                let n = self.inner.q - 1;
                FieldElement(exp[((n - log[a.index()]) % n) as usize])
            }
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut result = FieldElement::ONE;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        result
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ForeignElement { index: a.0 as u32, order: self.inner.q })
        }
    }

    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub(a, b))
    }

    pub fn checked_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn checked_neg(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.neg(a))
    }

    pub fn checked_inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.inv(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(i: u16) -> FieldElement {
        FieldElement::from_index(i)
    }

    #[test]
    fn prime_field_basics() {
        let f3 = FieldSpec::new(3, 1, None).unwrap();
        assert_eq!(f3.order(), 3);
        assert_eq!(f3.elements().count(), 3);
        assert_eq!(f3.add(el(2), el(2)), el(1));

        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.mul(el(2), el(3)), el(1));
        assert_eq!(f5.inv(el(4)).unwrap(), el(4));

        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.inv(el(3)).unwrap(), el(5));
    }

    #[test]
    fn gf4_uses_the_unique_quadratic() {
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // x is index 2, x + 1 is index 3
        assert_eq!(f4.mul(el(2), el(2)), el(3));
    }

    #[test]
    fn default_moduli_are_deterministic() {
        assert_eq!(default_modulus(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(default_modulus(3, 2), vec![1, 0, 1]);
        let a = FieldSpec::new(2, 8, None).unwrap();
        let b = FieldSpec::new(2, 8, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mul(el(57), el(200)), b.mul(el(57), el(200)));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldSpec::new(2, 17, None).unwrap_err(), Error::OrderTooLarge { p: 2, e: 17 });
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert_eq!(FieldSpec::new(2, 2, Some(vec![1, 0, 1])).unwrap_err(), Error::ReducibleModulus(2));
        assert!(matches!(FieldSpec::new(3, 2, Some(vec![1, 0])), Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn inverse_of_zero_and_foreign_elements() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.inv(el(0)).unwrap_err(), Error::DivisionByZero(7));
        assert!(matches!(f7.checked_add(el(3), el(9)), Err(Error::ForeignElement { index: 9, order: 7 })));
        assert!(f7.element(7).is_err());
    }

    fn check_axioms_exhaustively(f: &FieldSpec) {
        let q = f.order() as u64;
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                assert_eq!(f.pow(a, q - 1), f.one());
            }
        }
    }

    #[test]
    fn inverses_and_cyclic_group_exhaustive() {
        for (p, e) in [(2, 1), (3, 1), (2, 4), (3, 3), (5, 2), (2, 8), (2, 9), (3, 6), (2, 12), (4093, 1)] {
            check_axioms_exhaustively(&FieldSpec::new(p, e, None).unwrap());
        }
    }

    #[test]
    fn log_tables_agree_with_full_tables_on_subfield_sized_checks() {
        // GF(257) is above the full-table cap; compare with modular arithmetic.
        let f = FieldSpec::prime(257).unwrap();
        for a in 0..257u32 {
            for b in (0..257u32).step_by(7) {
                let (x, y) = (el(a as u16), el(b as u16));
                assert_eq!(f.add(x, y).index() as u32, (a + b) % 257);
                assert_eq!(f.mul(x, y).index() as u32, a * b % 257);
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Every field of order <= 64, plus a few larger ones.
        fn small_fields() -> Vec<FieldSpec> {
            let mut out = Vec::new();
            for p in (2..=64).filter(|&p| is_prime(p)) {
                let mut e = 1;
                while p.pow(e) <= 64 {
                    out.push(FieldSpec::new(p, e, None).unwrap());
                    e += 1;
                }
            }
            out.push(FieldSpec::new(2, 10, None).unwrap());
            out.push(FieldSpec::new(3, 5, None).unwrap());
            out
        }

        proptest! {
            #[test]
            fn ring_axioms(which in 0usize..29, a in 0u32..1024, b in 0u32..1024, c in 0u32..1024) {
                let fields = small_fields();
                let f = &fields[which];
                let q = f.order();
                let (a, b, c) = (el((a % q) as u16), el((b % q) as u16), el((c % q) as u16));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.add(a, b), f.add(b, a));
                prop_assert_eq!(f.mul(a, b), f.mul(b, a));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
            }
        }
    }
}
