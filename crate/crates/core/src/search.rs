//! Codeword enumeration kernels: Gray-code traversal of a whole code and
//! fixed-weight message enumeration for information-set bounds.
//!
//! Codewords are handled as fixed-width word arrays `[u64; N]` so that the
//! inner loops are a single XOR and a popcount per visited word. Callers pick
//! `N` at runtime through [`with_width!`].

use rayon::prelude::*;

use crate::gf2::BitVector;

/// Enumeration limits and worker count shared by the distance and
/// enumerator routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest binary dimension `k` enumerated exhaustively (2^k words).
    pub max_binary_log2: usize,
    /// Largest `log2 |C|` of an E-code enumerated word by word.
    pub max_ecode_log2: usize,
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_binary_log2: 28,
            max_ecode_log2: 22,
            workers: None,
        }
    }
}

impl SearchConfig {
    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.workers {
            Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
                Ok(pool) => pool.install(f),
                Err(_) => f(),
            },
            None => f(),
        }
    }
}

pub(crate) fn pack<const N: usize>(parts: &[&BitVector]) -> [u64; N] {
    let mut out = [0u64; N];
    let mut at = 0;
    for p in parts {
        for &w in p.words() {
            out[at] = w;
            at += 1;
        }
    }
    debug_assert!(at <= N);
    out
}

#[inline(always)]
pub(crate) fn xor_into<const N: usize>(acc: &mut [u64; N], v: &[u64; N]) {
    for i in 0..N {
        acc[i] ^= v[i];
    }
}

#[inline(always)]
pub(crate) fn popcount<const N: usize>(v: &[u64; N]) -> u32 {
    v.iter().map(|w| w.count_ones()).sum()
}

/// Dispatches a const-generic call on the number of words needed.
macro_rules! with_width {
    ($words:expr, $n:ident => $body:expr, else $fallback:expr) => {
        match $words {
            0 | 1 => {
                const $n: usize = 1;
                $body
            }
            2 => {
                const $n: usize = 2;
                $body
            }
            3 => {
                const $n: usize = 3;
                $body
            }
            4 => {
                const $n: usize = 4;
                $body
            }
            5 | 6 => {
                const $n: usize = 6;
                $body
            }
            7 | 8 => {
                const $n: usize = 8;
                $body
            }
            _ => $fallback,
        }
    };
}
pub(crate) use with_width;

/// Visits every element of the span of `basis` (including zero) in Gray-code
/// order, partitioned over high-order message bits. `visit` folds into a
/// per-partition accumulator and `merge` combines partitions; the result is
/// independent of the partitioning whenever `merge` is commutative.
pub(crate) fn gray_fold<const N: usize, T, I, V, M>(
    basis: &[[u64; N]],
    init: I,
    visit: V,
    merge: M,
) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(&mut T, &[u64; N]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let k = basis.len();
    let split = k.min(8);
    let low = k - split;
    let (low_rows, high_rows) = basis.split_at(low);
    (0u64..(1u64 << split))
        .into_par_iter()
        .map(|prefix| {
            let mut acc = init();
            let mut word = [0u64; N];
            for (i, row) in high_rows.iter().enumerate() {
                if (prefix >> i) & 1 == 1 {
                    xor_into(&mut word, row);
                }
            }
            visit(&mut acc, &word);
            for step in 1u64..(1u64 << low) {
                xor_into(&mut word, &low_rows[step.trailing_zeros() as usize]);
                visit(&mut acc, &word);
            }
            acc
        })
        .reduce(&init, &merge)
}

/// Calls `visit` on the sum of every `weight`-subset of `rows`.
///
/// Subsets are generated in lexicographic order by depth-first search with
/// a running XOR; the top level is split across workers.
pub(crate) fn for_each_combination<const N: usize, T, I, V, M>(
    rows: &[[u64; N]],
    weight: usize,
    init: I,
    visit: V,
    merge: M,
) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(&mut T, &[u64; N]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    fn descend<const N: usize, T>(
        rows: &[[u64; N]],
        start: usize,
        left: usize,
        acc: [u64; N],
        state: &mut T,
        visit: &(impl Fn(&mut T, &[u64; N]) + ?Sized),
    ) {
        if left == 0 {
            visit(state, &acc);
            return;
        }
        for i in start..=rows.len() - left {
            let mut next = acc;
            xor_into(&mut next, &rows[i]);
            descend(rows, i + 1, left - 1, next, state, visit);
        }
    }

    if weight == 0 {
        let mut state = init();
        visit(&mut state, &[0u64; N]);
        return state;
    }
    if weight > rows.len() {
        return init();
    }
    (0..=rows.len() - weight)
        .into_par_iter()
        .map(|first| {
            let mut state = init();
            descend(rows, first + 1, weight - 1, rows[first], &mut state, &visit);
            state
        })
        .reduce(&init, &merge)
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gray_fold_visits_every_word_once() {
        let basis: Vec<[u64; 1]> = (0..11).map(|i| [1u64 << i]).collect();
        let seen = gray_fold(
            &basis,
            Vec::new,
            |acc: &mut Vec<u64>, w| acc.push(w[0]),
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        assert_eq!(seen.len(), 1 << 11);
        let set: HashSet<u64> = seen.into_iter().collect();
        assert_eq!(set.len(), 1 << 11);
    }

    #[test]
    fn gray_fold_handles_empty_basis() {
        let count = gray_fold::<1, _, _, _, _>(&[], || 0u64, |c, _| *c += 1, |a, b| a + b);
        assert_eq!(count, 1);
    }

    #[test]
    fn combinations_count() {
        let rows: Vec<[u64; 2]> = (0..12).map(|i| [1u64 << i, 0]).collect();
        for w in 0..=13 {
            let count = for_each_combination(&rows, w, || 0u128, |c, v| {
                assert_eq!(popcount(v) as usize, w);
                *c += 1
            }, |a, b| a + b);
            assert_eq!(count, binomial(12, w), "w={w}");
        }
    }
}
