//! Exhaustive comparison of the closed-form `C(M)` rules against the codes
//! themselves, over every square binary `M` of small order that admits some
//! `(λ, μ, ν)`, and all 16 pairs `(x, y)`.
//!
//! Codes here have length `2n ≤ 16`, so vectors over `E` are packed into a
//! pair of `u32` planes and products are taken coordinate by coordinate in
//! the ring. The additive generating set `{a·g, b·g}` of `{xG}` is built
//! explicitly, self-orthogonality is checked on every ordered pair of it,
//! and Type IV is decided by walking every codeword.

use serde::{Deserialize, Serialize};

use crate::constructions::{fit_lambda_mu_nu, thm5_self_orthogonal, thm7_typeiv, LambdaMuNu};
use crate::gf2::BitMatrix;
use crate::ring_e::RingElement;

/// Largest order the packed representation supports.
pub const MAX_SWEEP_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Packed {
    alpha: u32,
    beta: u32,
}

impl Packed {
    fn get(self, i: usize) -> RingElement {
        RingElement::from_bits(self.alpha >> i & 1 == 1, self.beta >> i & 1 == 1)
    }

    fn set(&mut self, i: usize, e: RingElement) {
        self.alpha = (self.alpha & !(1 << i)) | (u32::from(e.alpha_bit()) << i);
        self.beta = (self.beta & !(1 << i)) | (u32::from(e.beta_bit()) << i);
    }

    fn left_mul(self, e: RingElement, len: usize) -> Packed {
        let mut out = Packed { alpha: 0, beta: 0 };
        for i in 0..len {
            out.set(i, e * self.get(i));
        }
        out
    }

    fn key(self) -> u64 {
        u64::from(self.alpha) | u64::from(self.beta) << 32
    }
}

fn parity(x: u32) -> bool {
    x.count_ones() % 2 == 1
}

/// `(x, y) = Σ x_i y_i`; the product is `x_i` masked by `α(y_i)`.
fn inner_is_zero(x: Packed, y: Packed) -> bool {
    !parity(x.alpha & y.alpha) && !parity(x.beta & y.alpha)
}

/// Facts about one `{xG}` code read off its additive generating set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Facts {
    self_orthogonal: bool,
    qsd: bool,
    typeiv: bool,
}

fn facts(additive: &[Packed], len: usize) -> Facts {
    let self_orthogonal = additive
        .iter()
        .all(|&x| additive.iter().all(|&y| inner_is_zero(x, y)));
    let mut basis: Vec<u64> = Vec::new();
    for g in additive {
        let mut v = g.key();
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    let qsd = self_orthogonal && basis.len() == len;
    let typeiv = qsd && {
        let mut word = 0u64;
        let weight = |w: u64| ((w as u32) | (w >> 32) as u32).count_ones();
        let mut even = true;
        for step in 1u64..(1u64 << basis.len()) {
            word ^= basis[step.trailing_zeros() as usize];
            if weight(word) % 2 == 1 {
                even = false;
                break;
            }
        }
        even
    };
    Facts {
        self_orthogonal,
        qsd,
        typeiv,
    }
}

fn generator(x: RingElement, y: RingElement, rows: &[u32], n: usize) -> Vec<Packed> {
    (0..n)
        .map(|i| {
            let mut g = Packed { alpha: 0, beta: 0 };
            g.set(i, x);
            for j in 0..n {
                if rows[i] >> j & 1 == 1 {
                    g.set(n + j, y);
                }
            }
            g
        })
        .collect()
}

/// Calls `visit` once for every `n × n` binary matrix (rows as bit masks,
/// column `j` at bit `j`) satisfying `M·Mᵀ = λI + μJ + νM` for some triple.
pub fn for_each_admissible_matrix(n: usize, mut visit: impl FnMut(&[u32])) {
    assert!(n <= MAX_SWEEP_ORDER, "order {n} too large");
    let triples: Vec<LambdaMuNu> = LambdaMuNu::all().collect();
    let satisfies = |rows: &[u32], t: LambdaMuNu| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                parity(rows[i] & rows[j]) == ((t.lambda && i == j) ^ t.mu ^ (t.nu && rows[i] >> j & 1 == 1))
            })
        })
    };
    fn descend(
        n: usize,
        t: LambdaMuNu,
        rows: &mut Vec<u32>,
        done: &mut dyn FnMut(&[u32]),
    ) {
        let i = rows.len();
        if i == n {
            done(rows);
            return;
        }
        for r in 0u32..(1 << n) {
            let bit = |row: u32, j: usize| row >> j & 1 == 1;
            let diag = parity(r) == (t.lambda ^ t.mu ^ (t.nu && bit(r, i)));
            // gram is symmetric, so both M[i][j] and M[j][i] constrain it
            let ok = diag
                && rows.iter().enumerate().all(|(j, &prev)| {
                    let g = parity(r & prev);
                    g == (t.mu ^ (t.nu && bit(r, j))) && g == (t.mu ^ (t.nu && bit(prev, i)))
                });
            if ok {
                rows.push(r);
                descend(n, t, rows, done);
                rows.pop();
            }
        }
    }
    for (idx, &t) in triples.iter().enumerate() {
        let earlier = &triples[..idx];
        let mut rows = Vec::with_capacity(n);
        let mut done = |m: &[u32]| {
            // count each matrix under its first satisfying triple only
            if !earlier.iter().any(|&e| satisfies(m, e)) {
                visit(m);
            }
        };
        descend(n, t, &mut rows, &mut done);
    }
}

/// A disagreement between a rule and the code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub x: char,
    pub y: char,
    pub matrix: Vec<String>,
    pub predicted: bool,
    pub actual: bool,
}

/// Agreement counts for one rule.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTally {
    pub cases: u64,
    pub mismatches: u64,
    pub examples: Vec<Counterexample>,
}

impl RuleTally {
    fn record(&mut self, x: RingElement, y: RingElement, rows: &[u32], n: usize, predicted: bool, actual: bool) {
        self.cases += 1;
        if predicted != actual {
            self.mismatches += 1;
            if self.examples.len() < 5 {
                self.examples.push(Counterexample {
                    x: x.as_char(),
                    y: y.as_char(),
                    matrix: rows
                        .iter()
                        .map(|r| (0..n).map(|j| if r >> j & 1 == 1 { '1' } else { '0' }).collect())
                        .collect(),
                    predicted,
                    actual,
                });
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Results of the sweep over all orders `1..=max_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub max_n: usize,
    pub matrices: u64,
    /// Published self-orthogonality rule, over every case.
    pub thm5: RuleTally,
    /// Published QSD rule, over every self-orthogonal case.
    pub thm6: RuleTally,
    /// Published Type IV rule, over every QSD case.
    pub thm7: RuleTally,
    /// `α(x)I + α(y)MMᵀ = 0`, over every case.
    pub exact_self_orthogonality: RuleTally,
}

/// The QSD rule without its self-orthogonality precondition.
pub fn thm6_rule(x: RingElement, y: RingElement, full_rank: bool, t: LambdaMuNu) -> bool {
    x.alpha_bit() || (y.alpha_bit() && t == LambdaMuNu::default() && full_rank)
}

pub fn sweep(max_n: usize) -> SweepReport {
    let mut report = SweepReport {
        max_n,
        ..Default::default()
    };
    for n in 1..=max_n {
        for_each_admissible_matrix(n, |rows| {
            report.matrices += 1;
            let m = BitMatrix::from_fn(n, n, |i, j| rows[i] >> j & 1 == 1);
            let fits = fit_lambda_mu_nu(&m);
            let full_rank = m.rank() == n;
            let gram = m.gram();
            let mut memo: Vec<(Vec<Packed>, Facts)> = Vec::new();
            for x in RingElement::ALL {
                for y in RingElement::ALL {
                    let additive: Vec<Packed> = generator(x, y, rows, n)
                        .into_iter()
                        .flat_map(|g| [g.left_mul(RingElement::A, 2 * n), g.left_mul(RingElement::B, 2 * n)])
                        .collect();
                    let f = match memo.iter().find(|(k, _)| *k == additive) {
                        Some((_, f)) => *f,
                        None => {
                            let f = facts(&additive, 2 * n);
                            memo.push((additive, f));
                            f
                        }
                    };
                    let in_ideal = |e: RingElement| !e.alpha_bit();
                    let thm5 = (in_ideal(x) && in_ideal(y))
                        || fits.iter().any(|&t| thm5_self_orthogonal(x, y, n, t));
                    report.thm5.record(x, y, rows, n, thm5, f.self_orthogonal);
                    let exact = (0..n).all(|i| {
                        (0..n).all(|j| (x.alpha_bit() && i == j) == (y.alpha_bit() && gram.get(i, j)))
                    });
                    report
                        .exact_self_orthogonality
                        .record(x, y, rows, n, exact, f.self_orthogonal);
                    if f.self_orthogonal {
                        let thm6 = fits.iter().any(|&t| thm6_rule(x, y, full_rank, t));
                        report.thm6.record(x, y, rows, n, thm6, f.qsd);
                    }
                    if f.qsd {
                        let thm7 = fits.iter().any(|&t| thm7_typeiv(x, y, t));
                        report.thm7.record(x, y, rows, n, thm7, f.typeiv);
                    }
                }
            }
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cm_code;
    use crate::search::SearchConfig;

    #[test]
    fn admissible_counts() {
        // independently counted by a brute-force script over all 2^(n^2)
        // matrices for n <= 4
        let count = |n| {
            let mut c = 0u64;
            for_each_admissible_matrix(n, |_| c += 1);
            c
        };
        assert_eq!([count(1), count(2), count(3), count(4)], [2, 12, 62, 1016]);
    }

    #[test]
    fn admissible_matches_brute_force() {
        for n in 1..=3usize {
            let mut found = Vec::new();
            for_each_admissible_matrix(n, |rows| found.push(rows.to_vec()));
            let mut brute = Vec::new();
            for bits in 0u32..(1 << (n * n)) {
                let rows: Vec<u32> = (0..n).map(|i| bits >> (i * n) & ((1 << n) - 1)).collect();
                let m = BitMatrix::from_fn(n, n, |i, j| rows[i] >> j & 1 == 1);
                if !fit_lambda_mu_nu(&m).is_empty() {
                    brute.push(rows);
                }
            }
            found.sort();
            brute.sort();
            assert_eq!(found, brute);
        }
    }

    #[test]
    fn packed_facts_match_library_codes() {
        let cfg = SearchConfig::default();
        for n in 1..=3 {
            for_each_admissible_matrix(n, |rows| {
                let m = BitMatrix::from_fn(n, n, |i, j| rows[i] >> j & 1 == 1);
                for x in RingElement::ALL {
                    for y in RingElement::ALL {
                        let additive: Vec<Packed> = generator(x, y, rows, n)
                            .into_iter()
                            .flat_map(|g| [g.left_mul(RingElement::A, 2 * n), g.left_mul(RingElement::B, 2 * n)])
                            .collect();
                        let f = facts(&additive, 2 * n);
                        let code = cm_code(x, y, &m).unwrap();
                        assert_eq!(f.self_orthogonal, code.is_self_orthogonal());
                        assert_eq!(f.qsd, code.is_qsd());
                        assert_eq!(f.typeiv, code.is_typeiv(&cfg).unwrap());
                    }
                }
            });
        }
    }

    #[test]
    fn small_sweep() {
        let r = sweep(3);
        assert_eq!(r.matrices, 2 + 12 + 62);
        assert_eq!(r.thm5.cases, 16 * r.matrices);
        assert!(r.exact_self_orthogonality.passed());
        assert!(r.thm6.passed());
        assert!(r.thm7.passed());
        // the published self-orthogonality table disagrees already at n = 1
        assert!(!r.thm5.passed());
    }
}
