//! Integer formulas over compositions of `d` into `m + 1` parts.
//!
//! `Ω(d, m)` is the set of exponent tuples `(γ_1, …, γ_{m+1})` with sum `d`,
//! ordered lexicographically from largest to smallest; `ω_r(d, m)` is its
//! `r`-th element (1-based). `Ω'(d, m)` drops the `m − 1` tuples that carry
//! all of `d` in an interior position `2..=m`.
//!
//! Binomials follow the vanishing convention `C(n, k) = 0` whenever `k < 0`
//! or `n < k` (negative `n` included). Values are `u128` with overflow checks.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Binomial coefficient with the vanishing convention.
///
/// Panics only if the result does not fit in `u128`; see [`checked_binom`].
pub fn binom(n: i64, k: i64) -> u128 {
    checked_binom(n, k).expect("binomial coefficient overflows u128")
}

pub fn checked_binom(n: i64, k: i64) -> Option<u128> {
    if k < 0 || n < k {
        return Some(0);
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

fn binom_r(n: i64, k: i64) -> Result<u128> {
    checked_binom(n, k).ok_or(Error::Overflow("binomial"))
}

fn pow_r(base: u128, exp: u32) -> Result<u128> {
    base.checked_pow(exp).ok_or(Error::Overflow("power"))
}

/// `|P^m(F_q)| = (q^{m+1} − 1)/(q − 1)`, and `0` for `m < 0`.
pub fn pi(m: i64, q: u128) -> u128 {
    checked_pi(m, q).expect("pi_m(q) overflows u128")
}

pub fn checked_pi(m: i64, q: u128) -> Option<u128> {
    if m < 0 {
        return Some(0);
    }
    let mut acc: u128 = 0;
    let mut term: u128 = 1;
    for i in 0..=m {
        acc = acc.checked_add(term)?;
        if i < m {
            term = term.checked_mul(q)?;
        }
    }
    Some(acc)
}

/// `|Ω(d, m)| = C(m + d, d)`.
pub fn omega_size(d: u32, m: u32) -> u128 {
    binom(m as i64 + d as i64, d as i64)
}

/// `|Ω'(d, m)| = C(m + d, d) − (m − 1)` for `m >= 1`.
pub fn omega_prime_size(d: u32, m: u32) -> u128 {
    omega_size(d, m) + 1 - m as u128
}

/// An element of `Ω(d, m)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ExponentTuple {
    entries: Vec<u32>,
}

impl ExponentTuple {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidTuple("tuple needs at least one entry".into()));
        }
        Ok(ExponentTuple { entries })
    }

    /// Validates that the tuple lies in `Ω(d, m)`.
    pub fn in_omega(entries: Vec<u32>, d: u32, m: u32) -> Result<Self> {
        if entries.len() != m as usize + 1 {
            return Err(Error::InvalidTuple(format!("expected {} entries, got {}", m + 1, entries.len())));
        }
        let sum: u64 = entries.iter().map(|&x| x as u64).sum();
        if sum != d as u64 {
            return Err(Error::InvalidTuple(format!("entries sum to {sum}, not {d}")));
        }
        Ok(ExponentTuple { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn m(&self) -> u32 {
        self.entries.len() as u32 - 1
    }

    /// 1-based entry access, matching the usual `(γ_1, …, γ_{m+1})` indexing.
    pub fn get(&self, i: usize) -> u32 {
        self.entries[i - 1]
    }

    /// Smallest 1-based index with a nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.entries.iter().position(|&x| x != 0).map(|i| i + 1)
    }

    /// Membership in `Ω'`: `d` does not sit at any position `2..=m`.
    pub fn in_omega_prime(&self) -> bool {
        let d = self.degree();
        let m = self.entries.len() - 1;
        if m < 2 {
            return true;
        }
        !self.entries[1..m].contains(&d)
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

fn check_rank(r: u128, max: u128) -> Result<()> {
    if r == 0 || r > max {
        Err(Error::RankOutOfRange { r, max })
    } else {
        Ok(())
    }
}

/// `ω_r(d, m)`: the `r`-th largest tuple of `Ω(d, m)`, decoded digit by digit.
pub fn omega_unrank(d: u32, m: u32, r: u128) -> Result<ExponentTuple> {
    check_rank(r, binom_r(m as i64 + d as i64, d as i64)?)?;
    let mut remaining_rank = r - 1;
    let mut remaining = d;
    let mut entries = Vec::with_capacity(m as usize + 1);
    for pos in 0..m {
        let parts_after = (m - pos - 1) as i64;
        let mut value = remaining;
        loop {
            // tuples whose current entry equals `value`
            let rest = (remaining - value) as i64;
            let block = binom_r(parts_after + rest, rest)?;
            if remaining_rank < block {
                break;
            }
            remaining_rank -= block;
            value -= 1;
        }
        entries.push(value);
        remaining -= value;
    }
    entries.push(remaining);
    Ok(ExponentTuple { entries })
}

/// Rank of a tuple in `Ω(d, m)` via `r = 1 + Σ_k C(m − k + d − Σ_{j≤k} β_j, m − k + 1)`.
pub fn omega_rank(t: &ExponentTuple) -> Result<u128> {
    let d = t.degree() as i64;
    let m = t.m() as i64;
    let mut r: u128 = 1;
    let mut prefix = 0i64;
    for k in 1..=m {
        prefix += t.get(k as usize) as i64;
        r = r.checked_add(binom_r(m - k + d - prefix, m - k + 1)?).ok_or(Error::Overflow("omega_rank"))?;
    }
    Ok(r)
}

/// `ω'_{r'}(d, m)`, obtained from `Ω` ranks through the shift `s = r − (m − l)`.
pub fn omega_prime_unrank(d: u32, m: u32, r_prime: u128) -> Result<ExponentTuple> {
    if m == 0 {
        return Err(Error::InvalidParameter("Ω' needs m >= 1".into()));
    }
    let size = omega_size(d, m);
    check_rank(r_prime, size + 1 - m as u128)?;
    let r = r_prime + (m as u128 - 1);
    if r == size {
        return omega_unrank(d, m, size);
    }
    for l in 1..=m {
        let shift = (m - l) as u128;
        if shift >= r {
            continue;
        }
        let t = omega_unrank(d, m, r - shift)?;
        if t.first_nonzero() == Some(l as usize) && t.in_omega_prime() {
            return Ok(t);
        }
    }
    Err(Error::RouteMismatch {
        what: format!("omega_prime_unrank({d},{m},{r_prime})"),
        left: "no consistent shift".into(),
        right: "exactly one shift".into(),
    })
}

/// Rank of a tuple of `Ω'(d, m)`.
pub fn omega_prime_rank(t: &ExponentTuple) -> Result<u128> {
    let m = t.m();
    if m == 0 {
        return Err(Error::InvalidParameter("Ω' needs m >= 1".into()));
    }
    if !t.in_omega_prime() {
        return Err(Error::InvalidTuple(format!("{t} is not in Ω'")));
    }
    let s = omega_rank(t)?;
    let l = t.first_nonzero().unwrap_or(m as usize + 1) as u32;
    let r = if l == m + 1 { s } else { s + (m - l) as u128 };
    Ok(r + 1 - m as u128)
}

/// `H_r(d, m; q) = Σ_{i=1}^{m} β_i q^{m−i}` for `(β) = ω_r(d, m)`.
pub fn h(d: u32, m: u32, q: u128, r: u128) -> Result<u128> {
    let t = omega_unrank(d, m, r)?;
    weighted(&t, q)
}

fn weighted(t: &ExponentTuple, base: u128) -> Result<u128> {
    let m = t.m();
    let mut acc: u128 = 0;
    for i in 1..=m {
        let term = (t.get(i as usize) as u128).checked_mul(pow_r(base, m - i)?).ok_or(Error::Overflow("H"))?;
        acc = acc.checked_add(term).ok_or(Error::Overflow("H"))?;
    }
    Ok(acc)
}

/// `H'_{r'}(d, m) = Σ_{i=1}^{m} α_i d^{m−i}` for `(α) = ω'_{r'}(d, m)`.
///
/// `H'_1(d, m) = d^m` is the value of `u_m(d, m)`. Some statements of that
/// case write `H'_1(d, 1)`, which evaluates to `d`; this function does not
/// reinterpret its arguments, so ask for `(d, m, 1)` to get `d^m`.
pub fn h_prime(d: u32, m: u32, r_prime: u128) -> Result<u128> {
    let t = omega_prime_unrank(d, m, r_prime)?;
    weighted(&t, d as u128)
}

/// Index data attached to a rank `r` of `Ω(d, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexProfile {
    pub r: u128,
    /// From the bracketing `C(m+d,d) − C(m+d+1−l,d) < r ≤ C(m+d,d) − C(m+d−l,d)`.
    pub l: u32,
    /// `β_l`, the first nonzero entry of `ω_r`.
    pub c: u32,
    pub j: u128,
    /// Rank in `Ω` of `ω'_{r−(m−1)}`; `None` when `r < m`.
    pub s: Option<u128>,
}

/// The unique `l` bracketing `r`.
pub fn bracket_l(d: u32, m: u32, r: u128) -> Result<u32> {
    let (di, mi) = (d as i64, m as i64);
    let total = binom_r(mi + di, di)?;
    check_rank(r, total)?;
    for l in 1..=m + 1 {
        let li = l as i64;
        let lo = total - binom_r(mi + di + 1 - li, di)?;
        let hi = total - binom_r(mi + di - li, di)?;
        if lo < r && r <= hi {
            return Ok(l);
        }
    }
    Err(Error::RouteMismatch {
        what: format!("bracket_l({d},{m},{r})"),
        left: "no bracket".into(),
        right: "one bracket".into(),
    })
}

pub fn profile(d: u32, m: u32, r: u128) -> Result<IndexProfile> {
    if d == 0 || m == 0 {
        return Err(Error::InvalidParameter("profile needs d, m >= 1".into()));
    }
    let l = bracket_l(d, m, r)?;
    let t = omega_unrank(d, m, r)?;
    let first = t.first_nonzero().expect("d >= 1") as u32;
    if first != l {
        return Err(Error::RouteMismatch {
            what: format!("l for ({d},{m},{r})"),
            left: format!("bracket {l}"),
            right: format!("first nonzero {first}"),
        });
    }
    let (di, mi, li) = (d as i64, m as i64, l as i64);
    let j = r + binom_r(mi + di + 1 - li, di)? - omega_size(d, m);
    let s = if r >= m as u128 { Some(omega_rank(&omega_prime_unrank(d, m, r + 1 - m as u128)?)?) } else { None };
    Ok(IndexProfile { r, l, c: t.get(l as usize), j, s })
}

/// Both evaluation routes of `f_r(d, m; q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FRoutes {
    /// `H_j(d − 1, m − l + 1; q) + π_{m−l}(q)` with `l, j` from the bracketing.
    pub bracketing: u128,
    /// `H_r(d, m; q) + π_{m−l−1}(q)` with `l` the first nonzero index of `ω_r`.
    pub first_nonzero: u128,
}

pub fn f_routes(d: u32, m: u32, q: u128, r: u128) -> Result<FRoutes> {
    if d == 0 || m == 0 {
        return Err(Error::InvalidParameter("f needs d, m >= 1".into()));
    }
    if q < d as u128 + 1 {
        return Err(Error::InvalidParameter(format!("f needs q >= d + 1, got q = {q}, d = {d}")));
    }
    let (di, mi) = (d as i64, m as i64);
    let total = omega_size(d, m);

    let l = bracket_l(d, m, r)?;
    let li = l as i64;
    let j = r + binom_r(mi + di + 1 - li, di)? - total;
    let bracketing = h(d - 1, m + 1 - l, q, j)?
        .checked_add(checked_pi(mi - li, q).ok_or(Error::Overflow("pi"))?)
        .ok_or(Error::Overflow("f"))?;

    let t = omega_unrank(d, m, r)?;
    let l2 = t.first_nonzero().expect("d >= 1") as i64;
    let first_nonzero = weighted(&t, q)?
        .checked_add(checked_pi(mi - l2 - 1, q).ok_or(Error::Overflow("pi"))?)
        .ok_or(Error::Overflow("f"))?;
    Ok(FRoutes { bracketing, first_nonzero })
}

/// `f_r(d, m; q)`, evaluated along both routes; a disagreement is an error.
pub fn f(d: u32, m: u32, q: u128, r: u128) -> Result<u128> {
    let routes = f_routes(d, m, q, r)?;
    if routes.bracketing != routes.first_nonzero {
        return Err(Error::RouteMismatch {
            what: format!("f({d},{m},{q},{r})"),
            left: routes.bracketing.to_string(),
            right: routes.first_nonzero.to_string(),
        });
    }
    Ok(routes.bracketing)
}

/// Piecewise closed form of `H'_{r−1}(d, 2)`, checked against [`h_prime`].
pub fn h_prime_piecewise_m2(d: u32, r: u128) -> Result<u128> {
    if d == 0 {
        return Err(Error::InvalidParameter("d >= 1".into()));
    }
    let di = d as i64;
    let top = binom(di + 2, 2);
    if r < 2 || r > top {
        return Err(Error::RankOutOfRange { r, max: top });
    }
    let rm1 = r - 1;
    let mut value: Option<u128> = None;
    for t in 1..=di {
        if binom(di - t + 1, 2) < rm1 && rm1 <= binom(di - t + 2, 2) {
            value = Some(t as u128 * d as u128 + binom(di - t + 2, 2) + 1 - r);
            break;
        }
    }
    if binom(di - 1, 2) < rm1 && rm1 < top {
        let tail = top - r;
        match value {
            Some(v) if v != tail => {
                return Err(Error::RouteMismatch {
                    what: format!("piecewise H'_{{{rm1}}}({d},2) branches"),
                    left: v.to_string(),
                    right: tail.to_string(),
                })
            }
            _ => value = Some(tail),
        }
    }
    let value = value.ok_or(Error::RankOutOfRange { r, max: top })?;
    let direct = h_prime(d, 2, rm1)?;
    if direct != value {
        return Err(Error::RouteMismatch {
            what: format!("H'_{{{rm1}}}({d},2)"),
            left: value.to_string(),
            right: direct.to_string(),
        });
    }
    Ok(value)
}

/// The two sides of the consecutive-rank difference identity at `q = d + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiffSides {
    /// `H_s(d,m;d+1) − H_{s+j}(d,m;d+1)`.
    pub lhs: i128,
    /// `(σ+1)(d+1)^{m−k−1} − ⌊(d+1)^{m−k−j}⌋`, negative exponents floored to 0.
    pub rhs: i128,
    /// Last nonzero index among positions `1..=m` of `ω_s`.
    pub k: u32,
}

/// Evaluates both sides of the difference identity for `H` at `q = d + 1`.
///
/// `k` is the last nonzero index of `ω_s` among positions `1..=m`, `σ` the sum
/// of those positions, and `1 <= j <= m + 1 − k`. For `k = m` the first term is
/// `(σ+1)/(d+1)`, an integer only when `σ = d`; other `k = m` ranks are rejected
/// because the identity fails there (e.g. `d = m = 2, s = 5`: 1 versus 2/3).
pub fn diff_ws(d: u32, m: u32, s: u128, j: u32) -> Result<DiffSides> {
    let t = omega_unrank(d, m, s)?;
    let k = (1..=m as usize)
        .rev()
        .find(|&i| t.get(i) != 0)
        .ok_or_else(|| Error::Precondition(format!("ω_{s}({d},{m}) has no nonzero entry in 1..=m")))?
        as u32;
    let sigma = d - t.get(m as usize + 1);
    if k == m && sigma != d {
        return Err(Error::Precondition(format!(
            "k = m = {m} with σ = {sigma} < d: (σ+1)(d+1)^(-1) is not an integer"
        )));
    }
    if j == 0 || j > m + 1 - k {
        return Err(Error::InvalidParameter(format!("j = {j} outside 1..={}", m + 1 - k)));
    }
    let q = d as u128 + 1;
    let lhs = h(d, m, q, s)? as i128 - h(d, m, q, s + j as u128)? as i128;
    let first = if k == m { 1 } else { (sigma as i128 + 1) * pow_r(q, m - k - 1)? as i128 };
    let floor_term = if k + j > m { 0 } else { pow_r(q, m - k - j)? as i128 };
    Ok(DiffSides { lhs, rhs: first - floor_term, k })
}

/// Integer inequalities used in the proof that `H' <= H`, as `(lhs, rhs)` pairs
/// where the claim is `lhs <= rhs`.
pub mod appendix {
    fn p(base: u32, exp: u32) -> i128 {
        (base as i128).pow(exp)
    }

    /// `(d+1)^{a−1} + (d+1)^{b−1} <= (d+1)^{a+b−1}` for `a, b >= 1`.
    pub fn two_powers(d: u32, a: u32, b: u32) -> (i128, i128) {
        (p(d + 1, a - 1) + p(d + 1, b - 1), p(d + 1, a + b - 1))
    }

    /// `(d+1)^{a−1} + (d+1)^{b−1} − (d+1)^{c−1} <= (d+1)^{a+b−c−1}` for `1 <= c <= a, b`.
    pub fn three_powers(d: u32, a: u32, b: u32, c: u32) -> (i128, i128) {
        (p(d + 1, a - 1) + p(d + 1, b - 1) - p(d + 1, c - 1), p(d + 1, a + b - c - 1))
    }

    /// `d^k <= 1 + (d−1)(d+1)^{k−1}` for `d, k >= 1`.
    pub fn power_gap(d: u32, k: u32) -> (i128, i128) {
        (p(d, k), 1 + (d as i128 - 1) * p(d + 1, k - 1))
    }

    /// `(β+1)(d+1)^{k−1} − 1 <= β((d+1)^k − d^k)` for `β, k, d >= 1`.
    pub fn weighted_gap(d: u32, k: u32, beta: u32) -> (i128, i128) {
        ((beta as i128 + 1) * p(d + 1, k - 1) - 1, beta as i128 * (p(d + 1, k) - p(d, k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_h_prime_is_d_to_the_m() {
        for d in 1..=6u32 {
            for m in 1..=4u32 {
                assert_eq!(h_prime(d, m, 1).unwrap(), (d as u128).pow(m));
            }
            assert_eq!(h_prime(d, 1, 1).unwrap(), d as u128);
        }
    }

    fn tuple(v: &[u32]) -> ExponentTuple {
        ExponentTuple::new(v.to_vec()).unwrap()
    }

    /// Brute-force Ω(d, m) sorted from largest to smallest.
    fn enumerate_omega(d: u32, m: u32) -> Vec<Vec<u32>> {
        fn rec(remaining: u32, parts: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if parts == 1 {
                prefix.push(remaining);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for v in 0..=remaining {
                prefix.push(v);
                rec(remaining - v, parts - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, m + 1, &mut Vec::new(), &mut out);
        out.sort();
        out.reverse();
        out
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(-1, 2), 0);
        assert_eq!(binom(3, 4), 0);
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(4, -1), 0);
    }

    #[test]
    fn projective_point_counts() {
        assert_eq!(pi(2, 3), 13);
        assert_eq!(pi(0, 7), 1);
        assert_eq!(pi(-1, 5), 0);
        assert_eq!(pi(3, 2), 15);
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(omega_unrank(2, 2, 1).unwrap(), tuple(&[2, 0, 0]));
        assert_eq!(omega_unrank(2, 2, 4).unwrap(), tuple(&[0, 2, 0]));
        assert_eq!(omega_unrank(2, 2, 6).unwrap(), tuple(&[0, 0, 2]));
        assert!(matches!(omega_unrank(2, 2, 7), Err(Error::RankOutOfRange { r: 7, max: 6 })));
        assert!(omega_unrank(2, 2, 0).is_err());
    }

    #[test]
    fn unrank_matches_enumeration() {
        let all = enumerate_omega(2, 2);
        assert_eq!(all[3], vec![0, 2, 0]);
        for (d, m) in [(3, 2), (4, 3), (2, 4), (5, 1), (0, 3), (3, 0)] {
            for (i, t) in enumerate_omega(d, m).into_iter().enumerate() {
                assert_eq!(omega_unrank(d, m, i as u128 + 1).unwrap().entries(), &t[..]);
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(omega_rank(&tuple(&[1, 1, 0])).unwrap(), 2);
        assert_eq!(omega_rank(&tuple(&[5, 0, 0, 0])).unwrap(), 1);
        for (d, m) in [(3u32, 3u32), (4, 2), (2, 5)] {
            for l in 1..=m + 1 {
                let mut e = vec![0; m as usize + 1];
                e[l as usize - 1] = d;
                let expected = omega_size(d, m) - binom((m + d + 1 - l) as i64, d as i64) + 1;
                assert_eq!(omega_rank(&tuple(&e)).unwrap(), expected);
            }
        }
    }

    #[test]
    fn omega_prime_examples() {
        assert_eq!(omega_prime_unrank(4, 2, 2).unwrap(), tuple(&[3, 1, 0]));
        assert_eq!(omega_prime_unrank(3, 4, 1).unwrap(), tuple(&[3, 0, 0, 0, 0]));
        assert_eq!(omega_prime_size(2, 2), 5);
        let listed: Vec<_> = (1..=5).map(|r| omega_prime_unrank(2, 2, r).unwrap()).collect();
        assert!(!listed.contains(&tuple(&[0, 2, 0])));
        assert!(omega_prime_unrank(2, 2, 6).is_err());
        assert!(matches!(omega_prime_rank(&tuple(&[0, 2, 0])), Err(Error::InvalidTuple(_))));
    }

    #[test]
    fn omega_prime_matches_filtered_enumeration() {
        for (d, m) in [(4, 2), (3, 3), (2, 4), (1, 3), (5, 1)] {
            let filtered: Vec<_> = enumerate_omega(d, m).into_iter().filter(|t| tuple(t).in_omega_prime()).collect();
            assert_eq!(filtered.len() as u128, omega_prime_size(d, m));
            for (i, t) in filtered.iter().enumerate() {
                assert_eq!(omega_prime_unrank(d, m, i as u128 + 1).unwrap().entries(), &t[..]);
                assert_eq!(omega_prime_rank(&tuple(t)).unwrap(), i as u128 + 1);
            }
        }
    }

    #[test]
    fn h_values() {
        assert_eq!(h(2, 2, 3, 1).unwrap(), 6);
        assert_eq!(h(2, 2, 3, 2).unwrap(), 4);
        assert_eq!(h(3, 3, 5, omega_size(3, 3)).unwrap(), 0);
        assert_eq!(h_prime(2, 2, 1).unwrap(), 4);
        assert_eq!(h_prime(4, 2, 2).unwrap(), 13);
        for (d, m) in [(3u32, 2u32), (2, 4), (5, 3)] {
            assert_eq!(h_prime(d, m, 1).unwrap(), (d as u128).pow(m));
        }
    }

    #[test]
    fn profile_examples() {
        let p = profile(2, 2, 4).unwrap();
        assert_eq!((p.l, p.c, p.j), (2, 2, 1));
        let p = profile(5, 3, 1).unwrap();
        assert_eq!((p.l, p.c, p.j), (1, 5, 1));
        assert_eq!(profile(2, 2, 6).unwrap().l, 3);
        // ω'_3(2,2) = (1,0,1) = ω_3(2,2)
        assert_eq!(profile(2, 2, 4).unwrap().s, Some(3));
        assert_eq!(profile(2, 3, 2).unwrap().s, None);
    }

    #[test]
    fn f_examples() {
        let values: Vec<u128> = (1..=6).map(|r| f(2, 2, 3, r).unwrap()).collect();
        assert_eq!(values, vec![7, 5, 4, 2, 1, 0]);
        for (d, m, q) in [(3u32, 3u32, 4u128), (2, 4, 5), (4, 2, 7)] {
            assert_eq!(f(d, m, q, 1).unwrap(), d as u128 * q.pow(m - 1) + pi(m as i64 - 2, q));
            assert_eq!(f(d, m, q, omega_size(d, m)).unwrap(), 0);
        }
        assert!(matches!(f(3, 2, 3, 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn piecewise_examples() {
        assert_eq!(h_prime_piecewise_m2(4, 3).unwrap(), 13);
        assert_eq!(h_prime_piecewise_m2(5, binom(7, 2)).unwrap(), 0);
        assert_eq!(h_prime_piecewise_m2(2, 4).unwrap(), 2);
        assert_eq!(h_prime(2, 2, 3).unwrap(), 2);
        assert!(h_prime_piecewise_m2(3, 1).is_err());
    }

    #[test]
    fn diff_ws_examples() {
        let sides = diff_ws(2, 3, 1, 1).unwrap();
        let direct = h(2, 3, 3, 1).unwrap() as i128 - h(2, 3, 3, 2).unwrap() as i128;
        assert_eq!(sides.lhs, direct);
        assert_eq!(sides.lhs, sides.rhs);
        let sides = diff_ws(3, 2, 3, 1).unwrap();
        assert_eq!(sides.lhs, sides.rhs);
        // ω_2(3,2) = (2,1,0): k = m with σ = d
        let sides = diff_ws(3, 2, 2, 1).unwrap();
        assert_eq!((sides.lhs, sides.rhs, sides.k), (1, 1, 2));
        // ω_3(2,2) = (1,0,1): j = m + 1 − k = 2 hits the floored negative exponent
        let sides = diff_ws(2, 2, 3, 2).unwrap();
        assert_eq!((sides.lhs, sides.rhs), (2, 2));
    }

    #[test]
    fn diff_ws_rejects_last_position() {
        // ω_5(2,2) = (0,1,1): k = m and (σ+1)/(d+1) = 2/3 while the true difference is 1
        assert!(matches!(diff_ws(2, 2, 5, 1), Err(Error::Precondition(_))));
        assert!(matches!(diff_ws(2, 2, 6, 1), Err(Error::Precondition(_))));
        assert!(matches!(diff_ws(2, 3, 1, 4), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn appendix_spot_checks() {
        let (l, r) = appendix::two_powers(2, 1, 1);
        assert!(l <= r);
        let (l, r) = appendix::three_powers(3, 2, 2, 2);
        assert_eq!(l, r);
        let (l, r) = appendix::power_gap(1, 5);
        assert!(l <= r);
        let (l, r) = appendix::weighted_gap(2, 1, 1);
        assert!(l <= r);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rank_unrank_roundtrip(d in 0u32..12, m in 0u32..7, frac in 0.0f64..1.0) {
                let size = omega_size(d, m);
                let r = 1 + ((size as f64 - 1.0) * frac) as u128;
                let t = omega_unrank(d, m, r).unwrap();
                prop_assert_eq!(t.degree(), d);
                prop_assert_eq!(omega_rank(&t).unwrap(), r);
            }

            #[test]
            fn omega_prime_roundtrip(d in 1u32..12, m in 1u32..7, frac in 0.0f64..1.0) {
                let size = omega_prime_size(d, m);
                let r = 1 + ((size as f64 - 1.0) * frac) as u128;
                let t = omega_prime_unrank(d, m, r).unwrap();
                prop_assert!(t.in_omega_prime());
                prop_assert_eq!(omega_prime_rank(&t).unwrap(), r);
            }
        }
    }
}
