//! Linear codes over `E` (left submodules of `E^n`).
//!
//! A code is stored by an additive GF(2) basis of its `2n`-bit images
//! `(alpha | beta)` in reduced row echelon form. Because the alpha columns
//! come first, the basis splits into rows with an alpha pivot, whose alpha
//! parts span the residue code, and rows living entirely in the beta plane,
//! whose beta parts span the torsion code. Every left submodule has the
//! shape `C = aR + cT` with `R ⊆ T`, which gives the fast paths
//! `d_H(C) = d(T)` and `d_Lee(C) = min(d(R), 2 d(T))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::binary_code::{BinaryCode, DistanceMethod};
use crate::error::{Error, ParseError, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::ring_e::{EVector, F4Element, RingElement};
use crate::search::{gray_fold, with_width, SearchConfig};

/// A left `E`-submodule of `E^n`.
#[derive(Clone)]
pub struct ECode {
    n: usize,
    generators: Vec<EVector>,
    basis: BitMatrix,
    residue_rank: usize,
}

/// Hamming (`0..=n`) and Lee (`0..=2n`) weight distributions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EWeightEnumerator {
    pub hamming_counts: Vec<u64>,
    pub lee_counts: Vec<u64>,
}

impl EWeightEnumerator {
    fn min_nonzero(counts: &[u64]) -> Option<usize> {
        counts.iter().skip(1).position(|&c| c > 0).map(|w| w + 1)
    }

    pub fn min_hamming(&self) -> Option<usize> {
        Self::min_nonzero(&self.hamming_counts)
    }

    pub fn min_lee(&self) -> Option<usize> {
        Self::min_nonzero(&self.lee_counts)
    }

    pub fn total(&self) -> u128 {
        self.hamming_counts.iter().map(|&c| c as u128).sum()
    }

    /// No codeword of odd Hamming weight.
    pub fn all_hamming_even(&self) -> bool {
        self.hamming_counts.iter().skip(1).step_by(2).all(|&c| c == 0)
    }
}

/// Rows over `E` of a common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EMatrix {
    pub cols: usize,
    pub rows: Vec<EVector>,
}

impl EMatrix {
    pub fn new(cols: usize, rows: Vec<EVector>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Ok(EMatrix { cols, rows })
    }

    /// One row per line over `0abc`; blank lines and `#` comments are
    /// skipped. A `# length N` comment fixes the width of an empty matrix.
    pub fn parse_text(text: &str) -> std::result::Result<EMatrix, ParseError> {
        let mut cols = None;
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(n) = comment.trim().strip_prefix("length") {
                    let n: usize = n
                        .trim()
                        .parse()
                        .map_err(|_| ParseError::new(idx + 1, "bad length comment"))?;
                    if cols.is_some_and(|c| c != n) {
                        return Err(ParseError::new(idx + 1, "length comment disagrees with rows"));
                    }
                    cols = Some(n);
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let row = EVector::from_str(line).map_err(|e| ParseError::new(idx + 1, e.message))?;
            match cols {
                Some(c) if c != row.len() => {
                    return Err(ParseError::new(
                        idx + 1,
                        format!("row has length {}, expected {c}", row.len()),
                    ))
                }
                _ => cols = Some(row.len()),
            }
            rows.push(row);
        }
        Ok(EMatrix {
            cols: cols.unwrap_or(0),
            rows,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# length {}\n", self.cols);
        for r in &self.rows {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

/// Rows over `F4` of a common length, written over `0, 1, w, W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F4Matrix {
    pub cols: usize,
    pub rows: Vec<Vec<F4Element>>,
}

impl F4Matrix {
    /// `rows cols` header followed by one row per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows.len(), self.cols);
        for r in &self.rows {
            out.extend(r.iter().map(|e| e.as_char()));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> std::result::Result<F4Matrix, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(0, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| ParseError::new(hline, "bad header")))
            .collect::<std::result::Result<_, _>>()?;
        let [nrows, cols] = dims[..] else {
            return Err(ParseError::new(hline, "header must be `rows cols`"));
        };
        let mut rows = Vec::new();
        for (line, text) in lines {
            let row = text
                .chars()
                .map(|ch| {
                    F4Element::from_char(ch)
                        .ok_or_else(|| ParseError::new(line, format!("invalid F4 symbol {ch:?}")))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            if row.len() != cols {
                return Err(ParseError::new(line, format!("row has length {}, expected {cols}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != nrows {
            return Err(ParseError::new(0, format!("expected {nrows} rows, found {}", rows.len())));
        }
        Ok(F4Matrix { cols, rows })
    }

    /// Hamming weight distribution of the GF(2)-span of the rows.
    pub fn additive_weight_distribution(&self, config: &SearchConfig) -> Result<Vec<u64>> {
        // lo/hi coordinates of x = lo + hi·w
        let planes: Vec<BitVector> = self
            .rows
            .iter()
            .map(|r| {
                let lo = BitVector::from_bools(&r.iter().map(|e| e.lo_bit()).collect::<Vec<_>>());
                let hi = BitVector::from_bools(&r.iter().map(|e| e.hi_bit()).collect::<Vec<_>>());
                lo.concat(&hi)
            })
            .collect();
        let basis = BitMatrix::from_rows(2 * self.cols, planes).rref();
        if basis.num_rows() > config.max_ecode_log2 {
            return Err(Error::CapExceeded {
                log2_size: basis.num_rows(),
                cap: config.max_ecode_log2,
            });
        }
        let code = ECode::raw(self.cols, Vec::new(), basis);
        Ok(code.enumerate(config)?.hamming_counts)
    }
}

fn check_lengths(n: usize, rows: &[EVector]) -> Result<()> {
    match rows.iter().find(|r| r.len() != n) {
        Some(r) => Err(Error::DimensionMismatch(format!(
            "generator of length {} for a code of length {n}",
            r.len()
        ))),
        None => Ok(()),
    }
}

fn packed(v: &EVector) -> BitVector {
    v.alpha_plane().concat(v.beta_plane())
}

fn unpacked(n: usize, row: &BitVector) -> EVector {
    EVector::from_planes(row.slice(0, n), row.slice(n, 2 * n))
}

impl ECode {
    fn raw(n: usize, generators: Vec<EVector>, basis: BitMatrix) -> ECode {
        let residue_rank = basis
            .rows()
            .iter()
            .take_while(|r| r.first_one().is_some_and(|p| p < n))
            .count();
        ECode {
            n,
            generators,
            basis,
            residue_rank,
        }
    }

    fn from_additive(n: usize, generators: Vec<EVector>, additive: &[EVector]) -> ECode {
        let rows = additive.iter().map(packed).collect();
        let basis = BitMatrix::from_rows(2 * n, rows).rref();
        Self::raw(n, generators, basis)
    }

    /// Smallest left submodule containing `generators`: the additive span
    /// of `g`, `a·g` and `b·g` over all generators.
    pub fn span_closure(n: usize, generators: &[EVector]) -> Result<ECode> {
        check_lengths(n, generators)?;
        let additive: Vec<EVector> = generators
            .iter()
            .flat_map(|g| [g.clone(), g.left_mul(RingElement::A), g.left_mul(RingElement::B)])
            .collect();
        Ok(Self::from_additive(n, generators.to_vec(), &additive))
    }

    /// The code `{xG : x ∈ E^k}` with generator matrix `G`: the additive
    /// span of `a·g` and `b·g`.
    pub fn left_span(n: usize, generators: &[EVector]) -> Result<ECode> {
        check_lengths(n, generators)?;
        let additive: Vec<EVector> = generators
            .iter()
            .flat_map(|g| [g.left_mul(RingElement::A), g.left_mul(RingElement::B)])
            .collect();
        Ok(Self::from_additive(n, generators.to_vec(), &additive))
    }

    /// `aB + cB^⊥` for a self-orthogonal binary code `B`.
    pub fn qsd_from_binary(b: &BinaryCode) -> Result<ECode> {
        if !b.is_self_orthogonal() {
            return Err(Error::NotSelfOrthogonal);
        }
        let n = b.length();
        let gens: Vec<EVector> = b
            .generator()
            .rows()
            .iter()
            .map(|x| EVector::scalar_embed(RingElement::A, x))
            .chain(
                b.dual()
                    .generator()
                    .rows()
                    .iter()
                    .map(|y| EVector::scalar_embed(RingElement::C, y)),
            )
            .collect();
        Self::span_closure(n, &gens)
    }

    /// `aR + cT` from binary codes with `R ⊆ T`.
    pub fn from_residue_torsion(r: &BinaryCode, t: &BinaryCode) -> Result<ECode> {
        if r.length() != t.length() || !r.is_subcode_of(t) {
            return Err(Error::DimensionMismatch(
                "residue must be a subcode of the torsion code".into(),
            ));
        }
        let gens: Vec<EVector> = r
            .generator()
            .rows()
            .iter()
            .map(|x| EVector::scalar_embed(RingElement::A, x))
            .chain(t.generator().rows().iter().map(|y| EVector::scalar_embed(RingElement::C, y)))
            .collect();
        Self::span_closure(r.length(), &gens)
    }

    pub fn length(&self) -> usize {
        self.n
    }

    /// `log2 |C|`.
    pub fn log2_size(&self) -> usize {
        self.basis.num_rows()
    }

    pub fn generators(&self) -> &[EVector] {
        &self.generators
    }

    /// Canonical additive basis (reduced echelon form on `(alpha | beta)`).
    pub fn additive_basis(&self) -> Vec<EVector> {
        self.basis.rows().iter().map(|r| unpacked(self.n, r)).collect()
    }

    /// `res(C) = α(C)`.
    pub fn residue(&self) -> BinaryCode {
        let rows = self.basis.rows()[..self.residue_rank]
            .iter()
            .map(|r| r.slice(0, self.n))
            .collect();
        BinaryCode::from_rows(self.n, rows)
    }

    /// `tor(C) = {x : cx ∈ C}`.
    pub fn torsion(&self) -> BinaryCode {
        let rows = self.basis.rows()[self.residue_rank..]
            .iter()
            .map(|r| r.slice(self.n, 2 * self.n))
            .collect();
        BinaryCode::from_rows(self.n, rows)
    }

    pub fn contains(&self, v: &EVector) -> bool {
        assert_eq!(v.len(), self.n, "length mismatch");
        let mut rest = packed(v);
        for row in self.basis.rows() {
            let lead = row.first_one().expect("rref rows are nonzero");
            if rest.get(lead) {
                rest.xor_assign(row);
            }
        }
        rest.is_zero()
    }

    /// Closed under left multiplication by `a` and `b` (hence by all of `E`).
    pub fn is_left_module(&self) -> bool {
        self.additive_basis().iter().all(|v| {
            self.contains(&v.left_mul(RingElement::A)) && self.contains(&v.left_mul(RingElement::B))
        })
    }

    fn planes(&self) -> (BitMatrix, BitMatrix) {
        let rows = self.basis.rows();
        let u = BitMatrix::from_rows(self.n, rows.iter().map(|r| r.slice(0, self.n)).collect());
        let v = BitMatrix::from_rows(
            self.n,
            rows.iter().map(|r| r.slice(self.n, 2 * self.n)).collect(),
        );
        (u, v)
    }

    /// `(x, y) = 0` for all `x, y ∈ C`. The inner product is biadditive, so
    /// it suffices to check ordered pairs of basis vectors: with `U`, `V`
    /// the alpha and beta planes of the basis, `U·Uᵀ = 0` and `V·Uᵀ = 0`.
    pub fn is_self_orthogonal(&self) -> bool {
        let (u, v) = self.planes();
        let ut = u.transpose();
        let zero = |m: &BitMatrix| {
            u.num_rows() == 0 || m.matmul(&ut).map(|p| p.is_zero()).unwrap_or(false)
        };
        zero(&u) && zero(&v)
    }

    /// Pairwise check over every ordered pair of codewords.
    pub fn is_self_orthogonal_by_enumeration(&self, max_log2: usize) -> Result<bool> {
        if self.log2_size() > max_log2 {
            return Err(Error::CapExceeded {
                log2_size: self.log2_size(),
                cap: max_log2,
            });
        }
        let words = self.codewords();
        Ok(words
            .iter()
            .all(|x| words.iter().all(|y| x.inner(y) == RingElement::Zero)))
    }

    /// Self-orthogonal with exactly `2^n` codewords.
    pub fn is_qsd(&self) -> bool {
        self.log2_size() == self.n && self.is_self_orthogonal()
    }

    /// Every codeword has even Hamming weight.
    ///
    /// Weight parity is the quadratic form `|U| + |V| + |U∧V|` on the planes,
    /// whose polar form is `⟨U_x, V_y⟩ + ⟨V_x, U_y⟩`; it vanishes on the code
    /// iff it vanishes on each basis vector and its polar form on each pair.
    pub fn all_weights_even(&self) -> bool {
        let (u, v) = self.planes();
        let k = u.num_rows();
        let parity = |i: usize| {
            (u.row(i).count_ones() + v.row(i).count_ones() + u.row(i).overlap(v.row(i))) % 2
        };
        (0..k).all(|i| parity(i) == 0)
            && (0..k).all(|i| {
                ((i + 1)..k).all(|j| u.row(i).dot(v.row(j)) == v.row(i).dot(u.row(j)))
            })
    }

    /// QSD with all Hamming weights even. Decided by enumeration when the
    /// code is within the enumeration cap, by [`Self::all_weights_even`]
    /// otherwise.
    pub fn is_typeiv(&self, config: &SearchConfig) -> Result<bool> {
        if !self.is_qsd() {
            return Ok(false);
        }
        if self.log2_size() <= config.max_ecode_log2 {
            Ok(self.weight_enumerator(config)?.all_hamming_even())
        } else {
            Ok(self.all_weights_even())
        }
    }

    /// Minimum Hamming weight, `d(tor(C))`.
    pub fn min_distance(&self, config: &SearchConfig) -> Result<usize> {
        if self.log2_size() == 0 {
            return Err(Error::NoNonzeroCodewords);
        }
        self.torsion().min_distance(DistanceMethod::Auto, config)
    }

    /// Minimum Lee weight, `min(d(res), 2 d(tor))`.
    pub fn min_lee_weight(&self, config: &SearchConfig) -> Result<usize> {
        let torsion = 2 * self.min_distance(config)?;
        let residue = self.residue();
        if residue.dimension() == 0 {
            return Ok(torsion);
        }
        Ok(residue.min_distance(DistanceMethod::Auto, config)?.min(torsion))
    }

    /// Exact weight distributions by full enumeration.
    pub fn weight_enumerator(&self, config: &SearchConfig) -> Result<EWeightEnumerator> {
        if self.log2_size() > config.max_ecode_log2 {
            return Err(Error::CapExceeded {
                log2_size: self.log2_size(),
                cap: config.max_ecode_log2,
            });
        }
        config.install(|| self.enumerate(config))
    }

    fn enumerate(&self, _config: &SearchConfig) -> Result<EWeightEnumerator> {
        let n = self.n;
        let w = n.div_ceil(64);
        with_width!(2 * w, N => {
            let basis: Vec<[u64; N]> = self
                .basis
                .rows()
                .iter()
                .map(|r| {
                    let mut out = [0u64; N];
                    for (i, word) in r.slice(0, n).words().iter().enumerate() {
                        out[i] = *word;
                    }
                    for (i, word) in r.slice(n, 2 * n).words().iter().enumerate() {
                        out[w + i] = *word;
                    }
                    out
                })
                .collect();
            let (hamming_counts, lee_counts) = gray_fold(
                &basis,
                || (vec![0u64; n + 1], vec![0u64; 2 * n + 1]),
                |(h, l): &mut (Vec<u64>, Vec<u64>), word| {
                    let (mut ham, mut lee) = (0u32, 0u32);
                    for i in 0..w {
                        let (x, y) = (word[i], word[w + i]);
                        ham += (x | y).count_ones();
                        lee += x.count_ones() + 2 * (y & !x).count_ones();
                    }
                    h[ham as usize] += 1;
                    l[lee as usize] += 1;
                },
                |(mut h1, mut l1), (h2, l2)| {
                    h1.iter_mut().zip(h2).for_each(|(x, y)| *x += y);
                    l1.iter_mut().zip(l2).for_each(|(x, y)| *x += y);
                    (h1, l1)
                },
            );
            Ok(EWeightEnumerator { hamming_counts, lee_counts })
        }, else Err(Error::Unsupported(format!("length {n} too long for enumeration"))))
    }

    /// All codewords in Gray-code order. Intended for small codes.
    pub fn codewords(&self) -> Vec<EVector> {
        let rows = self.basis.rows();
        let mut word = BitVector::zeros(2 * self.n);
        let mut out = Vec::with_capacity(1 << rows.len());
        out.push(unpacked(self.n, &word));
        for step in 1u64..(1u64 << rows.len()) {
            word.xor_assign(&rows[step.trailing_zeros() as usize]);
            out.push(unpacked(self.n, &word));
        }
        out
    }

    /// Tests `W(x, y) = 2^{-n} W(x + 3y, x − y)` with exact integer
    /// coefficients. Requires `|C| = 4^{n/2} = 2^n`.
    pub fn macwilliams_formally_self_dual(&self, config: &SearchConfig) -> Result<bool> {
        if self.log2_size() != self.n {
            return Err(Error::NotQsd {
                log2_size: self.log2_size(),
                length: self.n,
            });
        }
        let counts = self.weight_enumerator(config)?.hamming_counts;
        let transformed = macwilliams_transform_q4(&counts)
            .ok_or_else(|| Error::Unsupported(format!("length {} overflows i128", self.n)))?;
        let scale = 1i128 << self.n;
        Ok(counts
            .iter()
            .zip(&transformed)
            .all(|(&a, &t)| scale * a as i128 == t))
    }

    /// Additive `F4` generator matrix `(φ(aG); φ(bG))`. When the generators
    /// span a strictly larger module than `{xG}`, `φ(G)` is appended so the
    /// rows still span `φ(C)`. Zero generators are dropped.
    pub fn phi_image(&self) -> F4Matrix {
        let phi_rows = |e: Option<RingElement>| {
            self.generators
                .iter()
                .filter(|g| !g.is_zero())
                .map(move |g| match e {
                    Some(e) => g.left_mul(e).phi(),
                    None => g.phi(),
                })
        };
        let mut rows: Vec<Vec<F4Element>> = phi_rows(Some(RingElement::A))
            .chain(phi_rows(Some(RingElement::B)))
            .collect();
        let module = ECode::left_span(self.n, &self.generators).expect("generator lengths checked");
        if module.log2_size() < self.log2_size() {
            rows.extend(phi_rows(None));
        }
        F4Matrix {
            cols: self.n,
            rows,
        }
    }

    pub fn generator_matrix(&self) -> EMatrix {
        EMatrix {
            cols: self.n,
            rows: self.generators.clone(),
        }
    }
}

impl PartialEq for ECode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.basis == other.basis
    }
}

impl Eq for ECode {}

impl fmt::Debug for ECode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ECode(n={}, log2|C|={}, res={}, tor={})",
            self.n,
            self.log2_size(),
            self.residue_rank,
            self.log2_size() - self.residue_rank
        )
    }
}

/// Coefficients of `W(x + 3y, x − y)` for `W(x, y) = Σ A_i x^{n−i} y^i`,
/// indexed by the power of `y`. `None` on overflow.
pub fn macwilliams_transform_q4(counts: &[u64]) -> Option<Vec<i128>> {
    let n = counts.len().checked_sub(1)?;
    let binom = |n: usize, k: usize| -> Option<i128> {
        if k > n {
            return Some(0);
        }
        let mut acc: i128 = 1;
        for i in 0..k {
            acc = acc.checked_mul((n - i) as i128)? / (i + 1) as i128;
        }
        Some(acc)
    };
    let mut out = vec![0i128; n + 1];
    for (i, &a) in counts.iter().enumerate() {
        if a == 0 {
            continue;
        }
        // (x + 3y)^{n-i} (x - y)^i
        for s in 0..=i {
            let sign: i128 = if s % 2 == 0 { 1 } else { -1 };
            let right = binom(i, s)?.checked_mul(sign)?;
            for r in 0..=(n - i) {
                let left = binom(n - i, r)?.checked_mul(3i128.checked_pow(r as u32)?)?;
                let term = left.checked_mul(right)?.checked_mul(a as i128)?;
                out[r + s] = out[r + s].checked_add(term)?;
            }
        }
    }
    Some(out)
}

/// Upper bound `2(⌊n/6⌋ + 1)` on the minimum distance of a Type IV code.
pub fn typeiv_bound(n: usize) -> usize {
    2 * (n / 6 + 1)
}

/// The earlier bound `2⌊(n + 2)/4⌋`.
pub fn old_bound(n: usize) -> usize {
    2 * ((n + 2) / 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assoc_schemes::paley_tournament;
    use proptest::prelude::*;
    use RingElement::{Zero as O, A, B, C};

    fn ev(s: &str) -> EVector {
        s.parse().unwrap()
    }

    fn paley11_pure() -> ECode {
        let q = paley_tournament(11).unwrap();
        let i = BitMatrix::identity(11);
        let gens: Vec<EVector> = (0..11)
            .map(|r| EVector::scalar_embed(A, &i.row(r).concat(q.adjacency().row(r))))
            .collect();
        ECode::span_closure(22, &gens).unwrap()
    }

    #[test]
    fn closure_of_a_single_a() {
        let c = ECode::span_closure(1, &[ev("a")]).unwrap();
        assert_eq!(c.log2_size(), 2);
        let mut words: Vec<String> = c.codewords().iter().map(|w| w.to_string()).collect();
        words.sort();
        assert_eq!(words, ["0", "a", "b", "c"]);
        let e = c.weight_enumerator(&SearchConfig::default()).unwrap();
        assert_eq!(e.hamming_counts, [1, 3]);
        assert_eq!(e.lee_counts, [1, 2, 1]);
    }

    #[test]
    fn zero_code() {
        let z = ECode::span_closure(0, &[]).unwrap();
        assert_eq!(z.log2_size(), 0);
        let e = z.weight_enumerator(&SearchConfig::default()).unwrap();
        assert_eq!((e.hamming_counts, e.lee_counts), (vec![1], vec![1]));
        let z1 = ECode::span_closure(1, &[]).unwrap();
        assert!(z1.is_self_orthogonal());
        assert!(!z1.is_qsd());
        assert_eq!(z1.residue().dimension(), 0);
        assert_eq!(z1.torsion().dimension(), 0);
        assert!(matches!(z1.min_distance(&SearchConfig::default()), Err(Error::NoNonzeroCodewords)));
        assert!(z1.phi_image().rows.is_empty());
        assert_eq!(z1.phi_image().to_text(), "0 1\n");
        let z3 = ECode::left_span(3, &[EVector::zeros(3)]).unwrap();
        assert_eq!(z3.phi_image().to_text(), "0 3\n");
    }

    #[test]
    fn paley11_example() {
        let cfg = SearchConfig::default();
        let c = paley11_pure();
        assert_eq!(c.log2_size(), 22);
        assert!(c.is_self_orthogonal());
        assert!(c.is_qsd());
        assert!(c.all_weights_even());
        assert_eq!(c.min_distance(&cfg).unwrap(), 6);
        assert_eq!(c.min_lee_weight(&cfg).unwrap(), 6);
        let q = paley_tournament(11).unwrap();
        let expected = BinaryCode::from_generators(
            &BitMatrix::identity(11).hstack(q.adjacency()).unwrap(),
        );
        assert_eq!(c.residue(), expected);
        assert_eq!(c.torsion(), expected);
    }

    #[test]
    fn paley11_plus_identity_is_not_self_orthogonal() {
        let q = paley_tournament(11).unwrap();
        let m = q.adjacency().add(&BitMatrix::identity(11)).unwrap();
        let gens: Vec<EVector> = (0..11)
            .map(|r| EVector::scalar_embed(A, &BitMatrix::identity(11).row(r).concat(m.row(r))))
            .collect();
        let c = ECode::span_closure(22, &gens).unwrap();
        assert!(!c.is_self_orthogonal());
        assert!(!c.is_qsd());
    }

    #[test]
    fn qsd_from_small_binary_codes() {
        let cfg = SearchConfig::default();
        let c = ECode::qsd_from_binary(&BinaryCode::zero(2)).unwrap();
        let mut words: Vec<String> = c.codewords().iter().map(|w| w.to_string()).collect();
        words.sort();
        assert_eq!(words, ["00", "0c", "c0", "cc"]);
        assert!(c.is_qsd());
        assert_eq!(c.min_distance(&cfg).unwrap(), 1);

        let rep = ECode::qsd_from_binary(&BinaryCode::repetition(2)).unwrap();
        assert_eq!(rep.log2_size(), 2);
        assert_eq!(rep.min_distance(&cfg).unwrap(), 2);
        assert_eq!(rep.weight_enumerator(&cfg).unwrap().hamming_counts, [1, 0, 3]);
        assert!(rep.macwilliams_formally_self_dual(&cfg).unwrap());

        assert!(matches!(
            ECode::qsd_from_binary(&BinaryCode::full(2)),
            Err(Error::NotSelfOrthogonal)
        ));
    }

    #[test]
    fn macwilliams_by_hand() {
        // W = x^2 + 3y^2 -> (x+3y)^2 + 3(x-y)^2 = 4x^2 + 0xy + 12y^2
        assert_eq!(macwilliams_transform_q4(&[1, 0, 3]).unwrap(), [4, 0, 12]);
        // cF2^n: W = (x + y)^n maps to (2x + 2y)^n = 2^n W
        let cfg = SearchConfig::default();
        let c = ECode::qsd_from_binary(&BinaryCode::zero(3)).unwrap();
        assert!(c.macwilliams_formally_self_dual(&cfg).unwrap());
        let not_qsd = ECode::span_closure(2, &[ev("c0")]).unwrap();
        assert!(matches!(
            not_qsd.macwilliams_formally_self_dual(&cfg),
            Err(Error::NotQsd { .. })
        ));
    }

    #[test]
    fn phi_image_of_a() {
        let c = ECode::span_closure(1, &[ev("a")]).unwrap();
        let m = c.phi_image();
        assert_eq!(m.rows, vec![vec![F4Element::Omega], vec![F4Element::OmegaSq]]);
        assert_eq!(m.to_text(), "2 1\nw\nW\n");
        assert_eq!(F4Matrix::parse_text(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn phi_image_covers_closure() {
        // span_closure of (b) contains b itself; {xG} does too, but (c) is
        // killed by left multiplication so φ(c) must be appended
        let c = ECode::span_closure(2, &[ev("c0"), ev("ab")]).unwrap();
        let cfg = SearchConfig::default();
        let dist = c.phi_image().additive_weight_distribution(&cfg).unwrap();
        assert_eq!(dist, c.weight_enumerator(&cfg).unwrap().hamming_counts);
    }

    #[test]
    fn phi_preserves_paley11_enumerator() {
        let cfg = SearchConfig::default();
        let c = paley11_pure();
        let phi = c.phi_image();
        assert_eq!((phi.rows.len(), phi.cols), (22, 22));
        let e = c.weight_enumerator(&cfg).unwrap();
        assert_eq!(phi.additive_weight_distribution(&cfg).unwrap(), e.hamming_counts);
        assert_eq!(e.min_hamming(), Some(6));
        assert_eq!(e.min_lee(), Some(6));
        assert!(c.macwilliams_formally_self_dual(&cfg).unwrap());
    }

    #[test]
    fn bounds() {
        assert_eq!(typeiv_bound(22), 8);
        assert_eq!(typeiv_bound(24), 10);
        assert_eq!(old_bound(24), 12);
        assert_eq!(typeiv_bound(6), 4);
        // n = 1 is the only exception; Type IV lengths are even
        assert_eq!((typeiv_bound(1), old_bound(1)), (2, 0));
        assert!((2..=1000).all(|n| typeiv_bound(n) <= old_bound(n)));
    }

    #[test]
    fn ematrix_text() {
        let m = EMatrix::parse_text("# comment\nab0c\n\n0000\n").unwrap();
        assert_eq!(m.cols, 4);
        assert_eq!(m.rows.len(), 2);
        assert_eq!(EMatrix::parse_text(&m.to_text()).unwrap(), m);
        let empty = EMatrix::parse_text("# length 5\n").unwrap();
        assert_eq!((empty.cols, empty.rows.len()), (5, 0));
        assert!(EMatrix::parse_text("ab\nabc\n").is_err());
        assert!(EMatrix::parse_text("ax\n").is_err());
        assert!(EMatrix::parse_text("# length 3\nab\n").is_err());
    }

    #[test]
    fn left_span_versus_closure() {
        let g = ev("bc");
        let s1 = ECode::left_span(2, std::slice::from_ref(&g)).unwrap();
        let s2 = ECode::span_closure(2, &[g]).unwrap();
        assert_eq!(s1.log2_size(), 2);
        assert_eq!(s2.log2_size(), 3);
        assert!(s1.is_left_module() && s2.is_left_module());
        assert!(s2.contains(&ev("0c")));
        assert!(!s1.contains(&ev("0c")));
    }

    fn evector_strategy(n: usize) -> impl Strategy<Value = EVector> {
        proptest::collection::vec(0usize..4, n)
            .prop_map(|v| EVector::from_elements(&v.iter().map(|&i| RingElement::ALL[i]).collect::<Vec<_>>()))
    }

    fn code_strategy() -> impl Strategy<Value = ECode> {
        (1usize..7).prop_flat_map(|n| {
            proptest::collection::vec(evector_strategy(n), 0..5)
                .prop_map(move |g| ECode::span_closure(n, &g).unwrap())
        })
    }

    fn so_binary_strategy() -> impl Strategy<Value = BinaryCode> {
        (1usize..10).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), 0..6).prop_map(
                move |rows| {
                    let b = BinaryCode::from_rows(
                        n,
                        rows.iter().map(|r| BitVector::from_bools(r)).collect(),
                    );
                    // hull: always self-orthogonal
                    BinaryCode::from_generators(
                        &b.generator().vstack(b.dual().generator()).unwrap(),
                    )
                    .dual()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn closure_is_module_with_structure(c in code_strategy()) {
            prop_assert!(c.is_left_module());
            prop_assert!(c.residue().is_subcode_of(&c.torsion()));
            prop_assert_eq!(c.log2_size(), c.residue().dimension() + c.torsion().dimension());
            prop_assert!(c.log2_size() <= 2 * c.length());
            let words = c.codewords();
            prop_assert!(words.iter().all(|w| c.residue().contains(w.alpha_plane())));
            for w in c.torsion().codewords() {
                prop_assert!(c.contains(&EVector::scalar_embed(C, &w)));
            }
        }

        #[test]
        fn predicates_agree_with_enumeration(c in code_strategy()) {
            let cfg = SearchConfig::default();
            prop_assert_eq!(c.is_self_orthogonal(), c.is_self_orthogonal_by_enumeration(12).unwrap());
            let e = c.weight_enumerator(&cfg).unwrap();
            prop_assert_eq!(c.all_weights_even(), e.all_hamming_even());
            prop_assert_eq!(e.total(), 1u128 << c.log2_size());
            prop_assert_eq!(e.lee_counts.iter().map(|&x| x as u128).sum::<u128>(), e.total());
            if c.log2_size() > 0 {
                prop_assert_eq!(Some(c.min_distance(&cfg).unwrap()), e.min_hamming());
                prop_assert_eq!(Some(c.min_lee_weight(&cfg).unwrap()), e.min_lee());
            }
            let by_words = c.codewords().iter().all(|w| w.hamming_weight() % 2 == 0);
            prop_assert_eq!(by_words, c.all_weights_even());
        }

        #[test]
        fn phi_preserves_weights(c in code_strategy()) {
            let cfg = SearchConfig::default();
            let phi = c.phi_image();
            prop_assert_eq!(
                phi.additive_weight_distribution(&cfg).unwrap(),
                c.weight_enumerator(&cfg).unwrap().hamming_counts
            );
        }

        #[test]
        fn qsd_from_binary_structure(b in so_binary_strategy()) {
            let cfg = SearchConfig::default();
            let c = ECode::qsd_from_binary(&b).unwrap();
            prop_assert!(c.is_qsd());
            prop_assert_eq!(c.residue(), b.clone());
            prop_assert_eq!(c.torsion(), b.dual());
            prop_assert_eq!(c.log2_size(), b.length());
            // Type IV iff the torsion code is even
            let e = c.weight_enumerator(&cfg).unwrap();
            prop_assert_eq!(e.all_hamming_even(), b.dual().is_even());
            prop_assert_eq!(c.is_typeiv(&cfg).unwrap(), b.dual().is_even());
            if c.is_typeiv(&cfg).unwrap() {
                prop_assert!(c.macwilliams_formally_self_dual(&cfg).unwrap());
                prop_assert!(e.min_hamming().unwrap() <= typeiv_bound(c.length()));
            }
        }

        #[test]
        fn ematrix_round_trip(rows in proptest::collection::vec(evector_strategy(5), 0..4)) {
            let m = EMatrix::new(5, rows).unwrap();
            prop_assert_eq!(EMatrix::parse_text(&m.to_text()).unwrap(), m);
        }
    }

    #[test]
    fn scalar_helpers() {
        assert_eq!(ev("0abc").elements().collect::<Vec<_>>(), [O, A, B, C]);
    }
}
