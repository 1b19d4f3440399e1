//! Binary linear codes held by a reduced generator matrix.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::search::{self, for_each_combination, gray_fold, pack, popcount, with_width, SearchConfig};

/// A binary linear `[n, k]` code.
///
/// The generator is kept in reduced row echelon form, so two codes are equal
/// exactly when they have the same row space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    n: usize,
    generator: BitMatrix,
}

/// Minimum distance algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    /// Gray-code walk over all `2^k` codewords.
    Exhaustive,
    /// Brouwer–Zimmermann bound refinement over disjoint information sets.
    InformationSet,
    /// Exhaustive up to the configured dimension cap, information sets above.
    Auto,
}

/// Number of codewords of each Hamming weight `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    /// Smallest nonzero weight with a nonzero count.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w)
    }
}

impl BinaryCode {
    /// Row space of `generators`; redundant rows are dropped.
    pub fn from_generators(generators: &BitMatrix) -> Self {
        BinaryCode {
            n: generators.num_cols(),
            generator: generators.rref(),
        }
    }

    pub fn from_rows(n: usize, rows: Vec<BitVector>) -> Self {
        Self::from_generators(&BitMatrix::from_rows(n, rows))
    }

    pub fn zero(n: usize) -> Self {
        BinaryCode {
            n,
            generator: BitMatrix::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Self {
        BinaryCode {
            n,
            generator: BitMatrix::identity(n),
        }
    }

    /// Repetition code `{0^n, 1^n}`.
    pub fn repetition(n: usize) -> Self {
        Self::from_generators(&BitMatrix::ones(1, n))
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.generator.num_rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    /// `C^⊥ = {y : (x, y) = 0 for all x in C}`.
    pub fn dual(&self) -> BinaryCode {
        BinaryCode {
            n: self.n,
            generator: self.generator.nullspace().rref(),
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.n, "length mismatch");
        let mut rest = v.clone();
        // rref: each row's leading one is unique to it
        for row in self.generator.rows() {
            let lead = row.first_one().expect("rref rows are nonzero");
            if rest.get(lead) {
                rest.xor_assign(row);
            }
        }
        rest.is_zero()
    }

    pub fn is_subcode_of(&self, other: &BinaryCode) -> bool {
        self.n == other.n && self.generator.rows().iter().all(|r| other.contains(r))
    }

    /// `C ⊆ C^⊥`, i.e. `G·Gᵀ = 0`.
    pub fn is_self_orthogonal(&self) -> bool {
        self.generator.gram().is_zero()
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.n && self.is_self_orthogonal()
    }

    /// Every codeword has even weight. Weight parity is linear, so the
    /// basis decides it.
    pub fn is_even(&self) -> bool {
        self.generator.rows().iter().all(|r| r.count_ones() % 2 == 0)
    }

    fn words(&self) -> usize {
        self.n.div_ceil(64)
    }

    fn packed_rows<const N: usize>(rows: &[BitVector]) -> Vec<[u64; N]> {
        rows.iter().map(|r| pack::<N>(&[r])).collect()
    }

    /// Minimum Hamming weight over nonzero codewords.
    pub fn min_distance(&self, method: DistanceMethod, config: &SearchConfig) -> Result<usize> {
        if self.dimension() == 0 {
            return Err(Error::NoNonzeroCodewords);
        }
        let method = match method {
            DistanceMethod::Auto if self.dimension() <= config.max_binary_log2 => {
                DistanceMethod::Exhaustive
            }
            DistanceMethod::Auto => DistanceMethod::InformationSet,
            m => m,
        };
        match method {
            DistanceMethod::Exhaustive => {
                if self.dimension() > config.max_binary_log2 {
                    return Err(Error::CapExceeded {
                        log2_size: self.dimension(),
                        cap: config.max_binary_log2,
                    });
                }
                config.install(|| self.min_distance_exhaustive())
            }
            _ => config.install(|| self.min_distance_information_set()),
        }
    }

    fn min_distance_exhaustive(&self) -> Result<usize> {
        with_width!(self.words(), N => {
            let basis = Self::packed_rows::<N>(self.generator.rows());
            let best = gray_fold(
                &basis,
                || u32::MAX,
                |best: &mut u32, w| {
                    let wt = popcount(w);
                    if wt != 0 && wt < *best {
                        *best = wt;
                    }
                },
                |a, b| a.min(b),
            );
            Ok(best as usize)
        }, else Err(Error::Unsupported(format!("length {} too long for enumeration", self.n))))
    }

    /// Generator matrices systematic on pairwise disjoint column sets, with
    /// the rank reached on each set.
    fn information_sets(&self) -> Vec<(BitMatrix, usize)> {
        let mut used = vec![false; self.n];
        let mut sets = Vec::new();
        loop {
            let order: Vec<usize> = (0..self.n).filter(|&c| !used[c]).collect();
            let ech = self.generator.echelon_with_order(&order);
            let rank = ech.pivots.len();
            if rank == 0 {
                break;
            }
            for &p in &ech.pivots {
                used[p] = true;
            }
            sets.push((ech.matrix, rank));
        }
        sets
    }

    fn min_distance_information_set(&self) -> Result<usize> {
        let k = self.dimension();
        let sets = self.information_sets();
        let even = self.is_even();
        with_width!(self.words(), N => {
            let matrices: Vec<(Vec<[u64; N]>, usize)> = sets
                .iter()
                .map(|(m, r)| (Self::packed_rows::<N>(m.rows()), *r))
                .collect();
            let mut upper = matrices
                .iter()
                .flat_map(|(rows, _)| rows.iter().map(popcount))
                .filter(|&w| w > 0)
                .min()
                .unwrap_or(u32::MAX) as usize;
            // messages of weight <= done[j] have been seen through matrix j
            let mut done = vec![1usize; matrices.len()];
            let lower = |done: &[usize]| -> usize {
                let bound: usize = done
                    .iter()
                    .zip(&matrices)
                    .map(|(&w, (_, r))| (w + 1).saturating_sub(k - r))
                    .sum();
                if even { bound + bound % 2 } else { bound }
            };
            for w in 2..=k {
                if lower(&done) >= upper {
                    break;
                }
                for j in 0..matrices.len() {
                    let found = for_each_combination(
                        &matrices[j].0,
                        w,
                        || u32::MAX,
                        |best: &mut u32, v| {
                            let wt = popcount(v);
                            if wt < *best {
                                *best = wt;
                            }
                        },
                        |a, b| a.min(b),
                    );
                    upper = upper.min(found as usize);
                    done[j] = w;
                    if lower(&done) >= upper {
                        break;
                    }
                }
            }
            Ok(upper)
        }, else Err(Error::Unsupported(format!("length {} too long for enumeration", self.n))))
    }

    /// Exact weight distribution by full enumeration (`k` at most the
    /// configured cap).
    pub fn weight_distribution(&self, config: &SearchConfig) -> Result<WeightDistribution> {
        if self.dimension() > config.max_binary_log2 {
            return Err(Error::CapExceeded {
                log2_size: self.dimension(),
                cap: config.max_binary_log2,
            });
        }
        let n = self.n;
        config.install(|| {
            with_width!(self.words(), N => {
                let basis = Self::packed_rows::<N>(self.generator.rows());
                let counts = gray_fold(
                    &basis,
                    || vec![0u64; n + 1],
                    |h: &mut Vec<u64>, w| h[popcount(w) as usize] += 1,
                    |mut a, b| {
                        for (x, y) in a.iter_mut().zip(b) {
                            *x += y;
                        }
                        a
                    },
                );
                Ok(WeightDistribution { counts })
            }, else Err(Error::Unsupported(format!("length {n} too long for enumeration"))))
        })
    }

    /// All codewords, in Gray-code order. Intended for small codes.
    pub fn codewords(&self) -> Vec<BitVector> {
        let rows = self.generator.rows();
        let mut word = BitVector::zeros(self.n);
        let mut out = Vec::with_capacity(1 << self.dimension());
        out.push(word.clone());
        for step in 1u64..(1u64 << rows.len()) {
            word.xor_assign(&rows[step.trailing_zeros() as usize]);
            out.push(word.clone());
        }
        out
    }
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryCode[{}, {}] {:?}", self.n, self.dimension(), self.generator)
    }
}

/// Re-exported for callers that size searches themselves.
pub fn binomial(n: usize, k: usize) -> u128 {
    search::binomial(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assoc_schemes::paley_tournament;
    use proptest::prelude::*;

    fn paley11_systematic(plus_identity: bool) -> BinaryCode {
        let a = paley_tournament(11).unwrap().adjacency().clone();
        let m = if plus_identity {
            a.add(&BitMatrix::identity(11)).unwrap()
        } else {
            a
        };
        BinaryCode::from_generators(&BitMatrix::identity(11).hstack(&m).unwrap())
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn dual_basics() {
        assert_eq!(BinaryCode::full(5).dual(), BinaryCode::zero(5));
        assert_eq!(BinaryCode::zero(5).dual(), BinaryCode::full(5));
        let rep = BinaryCode::repetition(2);
        assert_eq!(rep.dual(), rep);
    }

    #[test]
    fn paley11_code_is_self_dual() {
        let c = paley11_systematic(false);
        assert_eq!(c.dimension(), 11);
        assert!(c.is_self_orthogonal());
        assert_eq!(c.dual(), c);
    }

    #[test]
    fn self_orthogonality_checks() {
        assert!(BinaryCode::zero(4).is_self_orthogonal());
        assert!(!BinaryCode::full(1).is_self_orthogonal());
        assert!(!BinaryCode::full(6).is_self_orthogonal());
        // (I | A + I): Gram is I + (A+I)(A+I)ᵀ = J for the Paley-11 tournament
        assert!(!paley11_systematic(true).is_self_orthogonal());
    }

    #[test]
    fn repetition_distance() {
        for n in 1..10 {
            let c = BinaryCode::repetition(n);
            assert_eq!(c.min_distance(DistanceMethod::Exhaustive, &cfg()).unwrap(), n);
            assert_eq!(c.min_distance(DistanceMethod::InformationSet, &cfg()).unwrap(), n);
        }
    }

    #[test]
    fn paley_distances() {
        let c = paley11_systematic(false);
        assert_eq!(c.min_distance(DistanceMethod::Exhaustive, &cfg()).unwrap(), 6);
        assert_eq!(c.min_distance(DistanceMethod::InformationSet, &cfg()).unwrap(), 6);
        let a = paley_tournament(19).unwrap().adjacency().clone();
        let m = a.add(&BitMatrix::identity(19)).unwrap();
        let c19 = BinaryCode::from_generators(&BitMatrix::identity(19).hstack(&m).unwrap());
        assert_eq!(c19.min_distance(DistanceMethod::Exhaustive, &cfg()).unwrap(), 7);
        assert_eq!(c19.min_distance(DistanceMethod::InformationSet, &cfg()).unwrap(), 7);
    }

    #[test]
    fn zero_code_has_no_distance() {
        assert!(matches!(
            BinaryCode::zero(3).min_distance(DistanceMethod::Auto, &cfg()),
            Err(Error::NoNonzeroCodewords)
        ));
    }

    #[test]
    fn weight_distributions() {
        assert_eq!(
            BinaryCode::zero(3).weight_distribution(&cfg()).unwrap().counts,
            vec![1, 0, 0, 0]
        );
        assert_eq!(
            BinaryCode::repetition(2).weight_distribution(&cfg()).unwrap().counts,
            vec![1, 0, 1]
        );
        let wd = paley11_systematic(false).weight_distribution(&cfg()).unwrap();
        assert!(wd.counts[6] > 0);
        assert!(wd.counts[1..6].iter().all(|&c| c == 0));
        assert_eq!(wd.total(), 1 << 11);
        let small = SearchConfig { max_binary_log2: 4, ..cfg() };
        assert!(matches!(
            paley11_systematic(false).weight_distribution(&small),
            Err(Error::CapExceeded { .. })
        ));
    }

    fn code_strategy(max_n: usize) -> impl Strategy<Value = BinaryCode> {
        (1..=max_n, 1..=max_n).prop_flat_map(|(k, n)| {
            proptest::collection::vec(proptest::bool::ANY, k * n).prop_map(move |bits| {
                BinaryCode::from_generators(&BitMatrix::from_fn(k, n, |i, j| bits[i * n + j]))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn dual_is_an_involution(c in code_strategy(24)) {
            let d = c.dual();
            prop_assert_eq!(c.dimension() + d.dimension(), c.length());
            prop_assert!(c.generator().matmul(&d.generator().transpose()).unwrap().is_zero());
            prop_assert_eq!(d.dual(), c);
        }

        #[test]
        fn distance_methods_agree(c in code_strategy(20)) {
            prop_assume!(c.dimension() > 0);
            let e = c.min_distance(DistanceMethod::Exhaustive, &cfg()).unwrap();
            let i = c.min_distance(DistanceMethod::InformationSet, &cfg()).unwrap();
            prop_assert_eq!(e, i);
            let wd = c.weight_distribution(&cfg()).unwrap();
            prop_assert_eq!(wd.min_nonzero_weight(), Some(e));
        }

        #[test]
        fn self_orthogonal_codes_are_even(c in code_strategy(16)) {
            // the hull C ∩ C⊥ = (C + C⊥)⊥ is always self-orthogonal
            let sum = c.generator().vstack(c.dual().generator()).unwrap();
            let hull = BinaryCode::from_generators(&sum).dual();
            prop_assert!(hull.is_self_orthogonal());
            let wd = hull.weight_distribution(&cfg()).unwrap();
            prop_assert!(wd.counts.iter().enumerate().all(|(w, &n)| w % 2 == 0 || n == 0));
        }
    }
}
