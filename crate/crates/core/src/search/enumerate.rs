//! Enumeration of `r`-dimensional subspaces of `F_q^N` through their RREF
//! matrices, split into fixed chunks for parallel workers.

use std::sync::atomic::{AtomicI64, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::matrix::Matrix;

/// Free-entry assignments per chunk within one pivot set.
pub const CHUNK_SIZE: u128 = 4096;

/// `[N choose r]_q = ∏_{i<r} (q^N − q^i)/(q^r − q^i)`, `None` on overflow.
pub fn gaussian_binomial(n: u32, r: u32, q: u128) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    // product of (q^{N−i} − 1)/(q^{i+1} − 1) keeps every partial result integral
    let mut acc: u128 = 1;
    for i in 0..r {
        let num = q.checked_pow(n - i)? - 1;
        let den = q.checked_pow(i + 1)? - 1;
        let g = gcd(num, den);
        let (num, den) = (num / g, den / g);
        let g2 = gcd(acc, den);
        acc = (acc / g2).checked_mul(num)?;
        debug_assert_eq!(den / g2, 1);
        acc /= den / g2;
    }
    Some(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A contiguous range of free-entry counters for one pivot set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefChunk {
    pub pivots: Vec<usize>,
    pub start: u128,
    pub end: u128,
}

impl RrefChunk {
    pub fn len(&self) -> u128 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

fn free_positions(pivots: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        for j in p + 1..n {
            if !pivots.contains(&j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    for i in (0..r).rev() {
        if c[i] < n - r + i {
            c[i] += 1;
            for k in i + 1..r {
                c[k] = c[k - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Chunk list in enumeration order: pivot sets lexicographically, then free-entry
/// counters ascending. The split depends only on `(N, r, q)`.
pub fn rref_chunks(n: usize, r: usize, q: u128) -> Vec<RrefChunk> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut pivots: Vec<usize> = (0..r).collect();
    loop {
        let total = q.pow(free_positions(&pivots, n).len() as u32);
        let mut start = 0;
        while start < total {
            let end = (start + CHUNK_SIZE).min(total);
            out.push(RrefChunk { pivots: pivots.clone(), start, end });
            start = end;
        }
        if !next_combination(&mut pivots, n) {
            break;
        }
    }
    out
}

/// Calls `visit` on every RREF matrix of the chunk, in order.
pub fn for_each_in_chunk<F: FnMut(&Matrix)>(chunk: &RrefChunk, n: usize, field: &FieldSpec, mut visit: F) {
    let r = chunk.pivots.len();
    let q = field.order() as u128;
    let free = free_positions(&chunk.pivots, n);
    let mut m = Matrix::zeros(r, n);
    for (i, &p) in chunk.pivots.iter().enumerate() {
        m.set(i, p, FieldElement::ONE);
    }
    // digits of the counter, last free position least significant
    let mut digits = vec![0u32; free.len()];
    let mut c = chunk.start;
    for k in (0..free.len()).rev() {
        digits[k] = (c % q) as u32;
        c /= q;
    }
    for (k, &(i, j)) in free.iter().enumerate() {
        m.set(i, j, FieldElement::from_index(digits[k] as u16));
    }
    let mut counter = chunk.start;
    while counter < chunk.end {
        visit(&m);
        counter += 1;
        if counter == chunk.end {
            break;
        }
        for k in (0..free.len()).rev() {
            digits[k] += 1;
            let (i, j) = free[k];
            if (digits[k] as u128) < q {
                m.set(i, j, FieldElement::from_index(digits[k] as u16));
                break;
            }
            digits[k] = 0;
            m.set(i, j, FieldElement::ZERO);
        }
    }
}

fn check_budget(n: usize, r: usize, q: u128, budget: u128) -> Result<u128> {
    let total = gaussian_binomial(n as u32, r as u32, q).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    Ok(total)
}

/// Every `r`-dimensional subspace of `F_q^N` once, as RREF matrices, in the
/// deterministic enumeration order. Refuses to start beyond `budget`.
pub fn enumerate_subspaces(n: usize, r: usize, field: &FieldSpec, budget: u128) -> Result<Vec<Matrix>> {
    check_budget(n, r, field.order() as u128, budget)?;
    let mut out = Vec::new();
    for chunk in rref_chunks(n, r, field.order() as u128) {
        for_each_in_chunk(&chunk, n, field, |m| out.push(m.clone()));
    }
    Ok(out)
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))
}

/// Best score with the smallest matrix among ties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Best {
    pub score: i64,
    pub witness: Matrix,
}

/// Prefers the higher score, then the smaller matrix.
pub fn merge_best(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            if a.score > b.score || (a.score == b.score && a.witness <= b.witness) {
                Some(a)
            } else {
                Some(b)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExhaustiveOutcome {
    pub best: Option<Best>,
    pub visited: u128,
}

/// Maximizes `score` over all `r`-dimensional subspaces of `F_q^N`.
///
/// `score(w, floor)` may return `None` for candidates that are infeasible or
/// score strictly below `floor`; candidates at or above the floor must be
/// scored exactly. The result does not depend on `workers`.
pub fn exhaustive_max<F>(
    n: usize,
    r: usize,
    field: &FieldSpec,
    budget: u128,
    workers: usize,
    score: F,
) -> Result<ExhaustiveOutcome>
where
    F: Fn(&Matrix, Option<i64>) -> Option<i64> + Sync,
{
    let q = field.order() as u128;
    check_budget(n, r, q, budget)?;
    let chunks = rref_chunks(n, r, q);
    let floor = AtomicI64::new(i64::MIN);
    let visited = AtomicU64::new(0);
    let best = pool(workers)?.install(|| {
        chunks
            .par_iter()
            .map(|chunk| {
                let mut local: Option<Best> = None;
                for_each_in_chunk(chunk, n, field, |w| {
                    let f = floor.load(Ordering::Relaxed);
                    let Some(s) = score(w, (f != i64::MIN).then_some(f)) else {
                        return;
                    };
                    let better = match &local {
                        None => true,
                        Some(b) => s > b.score || (s == b.score && *w < b.witness),
                    };
                    if better {
                        local = Some(Best { score: s, witness: w.clone() });
                        floor.fetch_max(s, Ordering::Relaxed);
                    }
                });
                visited.fetch_add(chunk.len() as u64, Ordering::Relaxed);
                local
            })
            .reduce(|| None, merge_best)
    });
    Ok(ExhaustiveOutcome { best, visited: visited.load(Ordering::Relaxed) as u128 })
}

/// Map-reduce over all `r`-dimensional subspaces; `combine` must be associative
/// and commutative for the result to be independent of `workers`.
#[allow(clippy::too_many_arguments)]
pub fn exhaustive_fold<T, M, C>(
    n: usize,
    r: usize,
    field: &FieldSpec,
    budget: u128,
    workers: usize,
    identity: T,
    map: M,
    combine: C,
) -> Result<(T, u128)>
where
    T: Clone + Send + Sync,
    M: Fn(&Matrix) -> T + Sync,
    C: Fn(T, T) -> T + Sync + Send,
{
    let q = field.order() as u128;
    let total = check_budget(n, r, q, budget)?;
    let chunks = rref_chunks(n, r, q);
    let out = pool(workers)?.install(|| {
        chunks
            .par_iter()
            .map(|chunk| {
                let mut acc = identity.clone();
                for_each_in_chunk(chunk, n, field, |w| {
                    acc = combine(acc.clone(), map(w));
                });
                acc
            })
            .reduce(|| identity.clone(), &combine)
    });
    Ok((out, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(6, 1, 3), Some(364));
        assert_eq!(gaussian_binomial(6, 2, 3), Some(11011));
        assert_eq!(gaussian_binomial(5, 5, 7), Some(1));
        assert_eq!(gaussian_binomial(5, 0, 7), Some(1));
        assert_eq!(gaussian_binomial(3, 2, 2), Some(7));
        assert_eq!(gaussian_binomial(2, 3, 2), Some(0));
    }

    #[test]
    fn counts_match_and_are_distinct() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(enumerate_subspaces(2, 1, &f2, 100).unwrap().len(), 3);
        assert_eq!(enumerate_subspaces(3, 2, &f2, 100).unwrap().len(), 7);
        let f3 = FieldSpec::prime(3).unwrap();
        let all = enumerate_subspaces(6, 2, &f3, 1 << 20).unwrap();
        assert_eq!(all.len(), 11011);
        let distinct: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), 11011);
        for w in all.iter().step_by(97) {
            let rr = w.rref(&f3);
            assert_eq!(rr.rank, 2);
            assert_eq!(&rr.reduced, w);
        }
    }

    #[test]
    fn extension_field_enumeration() {
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        let all = enumerate_subspaces(4, 2, &f4, 1 << 20).unwrap();
        assert_eq!(all.len() as u128, gaussian_binomial(4, 2, 4).unwrap());
        let distinct: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn refuses_beyond_budget() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(matches!(
            enumerate_subspaces(6, 2, &f3, 1000),
            Err(Error::BudgetExceeded { needed: 11011, budget: 1000 })
        ));
    }

    #[test]
    fn chunks_cover_the_stream() {
        let total: u128 = rref_chunks(10, 3, 2).iter().map(|c| c.len()).sum();
        assert_eq!(total, gaussian_binomial(10, 3, 2).unwrap());
        assert!(rref_chunks(10, 3, 2).iter().all(|c| c.len() <= CHUNK_SIZE));
    }

    #[test]
    fn parallel_max_is_worker_independent() {
        let f3 = FieldSpec::prime(3).unwrap();
        // score: number of zero entries, a plateau-heavy objective
        let score = |w: &Matrix, _: Option<i64>| Some(w.data().iter().filter(|x| x.is_zero()).count() as i64);
        let one = exhaustive_max(6, 3, &f3, 1 << 20, 1, score).unwrap();
        let four = exhaustive_max(6, 3, &f3, 1 << 20, 4, score).unwrap();
        assert_eq!(one.best, four.best);
        assert_eq!(one.visited, gaussian_binomial(6, 3, 3).unwrap());
        let (count, total) = exhaustive_fold(6, 3, &f3, 1 << 20, 3, 0u64, |_| 1u64, |a, b| a + b).unwrap();
        assert_eq!(count as u128, total);
    }
}
