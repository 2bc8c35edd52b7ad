//! GCD of homogeneous polynomials in `x_0, x_1, x_2` over GF(q).
//!
//! The common power of `x_0` is split off first; the rest is dehomogenized at
//! `x_0 = 1` into `F[x_1][x_2]` and handled by the primitive Euclidean
//! algorithm, then homogenized back.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::PolySubspace;
use crate::gf::{FieldElement, FieldSpec};
use crate::poly::{HomPoly, MonomialBasis};

/// Default attempt budget for [`find_coprime_pair`].
pub const DEFAULT_COPRIME_ATTEMPTS: usize = 64;

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<FieldElement>);

impl UniPoly {
    fn new(mut c: Vec<FieldElement>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly(c)
    }

    fn zero() -> Self {
        UniPoly(Vec::new())
    }

    fn one() -> Self {
        UniPoly(vec![FieldElement::ONE])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> FieldElement {
        *self.0.last().unwrap_or(&FieldElement::ZERO)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.0
    }

    fn add(&self, o: &UniPoly, f: &FieldSpec) -> UniPoly {
        let n = self.0.len().max(o.0.len());
        let get = |v: &Vec<FieldElement>, i: usize| v.get(i).copied().unwrap_or(FieldElement::ZERO);
        UniPoly::new((0..n).map(|i| f.add(get(&self.0, i), get(&o.0, i))).collect())
    }

    fn sub(&self, o: &UniPoly, f: &FieldSpec) -> UniPoly {
        self.add(&o.scale(f.neg(FieldElement::ONE), f), f)
    }

    fn scale(&self, c: FieldElement, f: &FieldSpec) -> UniPoly {
        UniPoly::new(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    fn mul(&self, o: &UniPoly, f: &FieldSpec) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(out)
    }

    fn divrem(&self, o: &UniPoly, f: &FieldSpec) -> (UniPoly, UniPoly) {
        let od = o.degree().expect("division by the zero polynomial");
        let inv = f.inv(o.lead()).expect("nonzero leading coefficient");
        let mut rem = self.0.clone();
        if rem.len() <= od {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - od];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + od], inv);
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, b));
            }
        }
        rem.truncate(od);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    fn monic(&self, f: &FieldSpec) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(f.inv(self.lead()).expect("nonzero"), f)
    }

    fn gcd(&self, o: &UniPoly, f: &FieldSpec) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b, f).1;
            a = b;
            b = r;
        }
        a.monic(f)
    }
}

/// Element of `F[x_1][x_2]`: index `k` holds the coefficient of `x_2^k`.
type Bivar = Vec<UniPoly>;

fn bv_trim(mut a: Bivar) -> Bivar {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn content(a: &Bivar, f: &FieldSpec) -> UniPoly {
    a.iter().fold(UniPoly::zero(), |g, c| g.gcd(c, f))
}

fn divide_by(a: &Bivar, c: &UniPoly, f: &FieldSpec) -> Bivar {
    a.iter()
        .map(|x| {
            let (q, r) = x.divrem(c, f);
            debug_assert!(r.is_zero());
            q
        })
        .collect()
}

fn primitive_part(a: &Bivar, f: &FieldSpec) -> Bivar {
    let c = content(a, f);
    if c.is_zero() {
        return Vec::new();
    }
    divide_by(a, &c, f)
}

/// Pseudo-remainder of `a` by `b` with respect to `x_2`.
fn pseudo_rem(a: &Bivar, b: &Bivar, f: &FieldSpec) -> Bivar {
    let k = b.len() - 1;
    let lb = b[k].clone();
    let mut r = a.clone();
    while r.len() > k {
        let n = r.len() - 1;
        let lr = r[n].clone();
        let mut next: Bivar = r.iter().map(|c| c.mul(&lb, f)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[n - k + i] = next[n - k + i].sub(&bc.mul(&lr, f), f);
        }
        r = bv_trim(next);
    }
    r
}

fn bivar_gcd(a: &Bivar, b: &Bivar, f: &FieldSpec) -> Bivar {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let c = content(a, f).gcd(&content(b, f), f);
    let (mut x, mut y) = (primitive_part(a, f), primitive_part(b, f));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y, f);
        x = y;
        y = primitive_part(&r, f);
    }
    let g = if x.len() == 1 { vec![UniPoly::one()] } else { x };
    g.iter().map(|u| u.mul(&c, f)).collect()
}

/// `p(1, x_1, x_2)` for an `x_0`-free homogeneous `p`.
fn dehomogenize(p: &HomPoly) -> Bivar {
    let mut out: Bivar = vec![UniPoly::zero(); p.d() as usize + 1];
    let mut raw: Vec<Vec<FieldElement>> = vec![vec![FieldElement::ZERO; p.d() as usize + 1]; p.d() as usize + 1];
    for (e, c) in p.terms() {
        raw[e[2] as usize][e[1] as usize] = c;
    }
    for (k, v) in raw.into_iter().enumerate() {
        out[k] = UniPoly::new(v);
    }
    bv_trim(out)
}

/// Homogenizes an affine polynomial to its total degree, times `x_0^extra`.
fn homogenize(a: &Bivar, extra: u32, f: &FieldSpec) -> Result<HomPoly> {
    let t = a.iter().enumerate().filter_map(|(k, u)| u.degree().map(|dg| dg + k)).max().unwrap_or(0) as u32;
    let d = t + extra;
    let basis = MonomialBasis::new(d, 2)?;
    let mut coeffs = vec![FieldElement::ZERO; basis.len()];
    for (k, u) in a.iter().enumerate() {
        for (j, &c) in u.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = [d - j as u32 - k as u32, j as u32, k as u32];
            coeffs[basis.index_of(&e).expect("exponent in basis")] = c;
        }
    }
    HomPoly::from_coeffs(d, 2, f, coeffs)
}

/// `p / x_0^v`.
fn strip_x0(p: &HomPoly, v: u32) -> Result<HomPoly> {
    let f = p.field();
    let basis = MonomialBasis::new(p.d() - v, 2)?;
    let mut coeffs = vec![FieldElement::ZERO; basis.len()];
    for (e, c) in p.terms() {
        coeffs[basis.index_of(&[e[0] - v, e[1], e[2]]).expect("exponent in basis")] = c;
    }
    HomPoly::from_coeffs(p.d() - v, 2, f, coeffs)
}

fn check_plane(p: &HomPoly) -> Result<()> {
    if p.m() != 2 {
        return Err(Error::InvalidParameter(format!("plane polynomials only, got m = {}", p.m())));
    }
    Ok(())
}

/// Monic GCD of two plane forms; the leading coefficient in basis order is 1.
pub fn gcd_pair(a: &HomPoly, b: &HomPoly) -> Result<HomPoly> {
    check_plane(a)?;
    check_plane(b)?;
    if a.field() != b.field() {
        return Err(Error::DimensionMismatch("polynomials over different fields".into()));
    }
    let f = a.field();
    match (a.x0_valuation(), b.x0_valuation()) {
        (None, None) => Err(Error::Precondition("gcd of two zero polynomials".into())),
        (None, Some(_)) => Ok(b.monic()),
        (Some(_), None) => Ok(a.monic()),
        (Some(va), Some(vb)) => {
            let pa = dehomogenize(&strip_x0(a, va)?);
            let pb = dehomogenize(&strip_x0(b, vb)?);
            let g = bivar_gcd(&pa, &pb, f);
            Ok(homogenize(&g, va.min(vb), f)?.monic())
        }
    }
}

/// Monic GCD of all polynomials in `W`; degree 0 means `gcd(W) = 1`.
pub fn gcd_subspace(w: &PolySubspace) -> Result<HomPoly> {
    if w.m() != 2 {
        return Err(Error::InvalidParameter(format!("plane subspaces only, got m = {}", w.m())));
    }
    let polys = w.polys();
    let Some(first) = polys.first() else {
        return Err(Error::Precondition("gcd of the zero subspace".into()));
    };
    let mut g = first.monic();
    for p in &polys[1..] {
        if g.d() == 0 {
            break;
        }
        g = gcd_pair(&g, p)?;
    }
    Ok(g)
}

/// Two elements of `W` with trivial GCD: the first basis row against the other
/// basis rows, then against seeded random combinations, up to `attempts` tries.
pub fn find_coprime_pair(w: &PolySubspace, seed: u64, attempts: usize) -> Result<(HomPoly, HomPoly)> {
    let g = gcd_subspace(w)?;
    if g.d() != 0 {
        return Err(Error::Precondition(format!("gcd(W) has degree {}", g.d())));
    }
    let polys = w.polys();
    if polys.len() < 2 {
        return Err(Error::Precondition("a coprime pair needs dim W >= 2".into()));
    }
    let f = w.field();
    let base = &polys[0];
    let mut tries = 0;
    for other in &polys[1..] {
        if tries == attempts {
            return Err(Error::AttemptsExhausted(attempts));
        }
        tries += 1;
        if gcd_pair(base, other)?.d() == 0 {
            return Ok((base.clone(), other.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = f.order();
    while tries < attempts {
        tries += 1;
        let mut cand = HomPoly::zero(w.d(), 2, f)?;
        for p in &polys[1..] {
            let c = FieldElement::from_index(rng.gen_range(0..q) as u16);
            cand = cand.add(&p.scale(c))?;
        }
        if cand.is_zero() {
            continue;
        }
        if gcd_pair(base, &cand)?.d() == 0 {
            return Ok((base.clone(), cand));
        }
    }
    Err(Error::AttemptsExhausted(attempts))
}
