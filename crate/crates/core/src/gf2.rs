//! Dense bit-packed linear algebra over GF(2).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A GF(2) vector packed into 64-bit words, least significant bit first.
///
/// Bits past `len` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_padding();
        v
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVector::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVector::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    /// Builds a vector from raw words; bits past `len` are discarded.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = BitVector { len, words };
        v.clear_padding();
        v
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    fn zip_with(&self, other: &BitVector, f: impl Fn(u64, u64) -> u64) -> BitVector {
        assert_eq!(self.len, other.len, "vector length mismatch");
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BitVector) -> BitVector {
        self.zip_with(other, |a, b| a | b)
    }

    /// `self AND NOT other`.
    pub fn and_not(&self, other: &BitVector) -> BitVector {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Size of the common support.
    pub fn overlap(&self, other: &BitVector) -> u32 {
        assert_eq!(self.len, other.len, "vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + bit)
                }
            })
        })
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Bits `start..end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        assert!(start <= end && end <= self.len, "bad slice {start}..{end}");
        BitVector::from_ones(
            end - start,
            self.iter_ones()
                .filter(|&i| i >= start && i < end)
                .map(|i| i - start),
        )
    }

    /// Keeps only the listed coordinates, in the given order.
    pub fn select(&self, coords: &[usize]) -> BitVector {
        let mut out = BitVector::zeros(coords.len());
        for (j, &i) in coords.iter().enumerate() {
            if self.get(i) {
                out.set(j, true);
            }
        }
        out
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut v = BitVector::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(ParseError::new(0, format!("invalid bit {ch:?}"))),
            }
        }
        Ok(v)
    }
}

/// A dense GF(2) matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// The all-one matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVector::ones(cols); rows],
        }
    }

    /// Panics if the rows do not share length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
        }
        BitMatrix { cols, rows }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        BitMatrix {
            cols,
            rows: (0..rows)
                .map(|i| BitVector::from_ones(cols, (0..cols).filter(|&j| f(i, j))))
                .collect(),
        }
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value)
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.rows.push(row);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    pub fn matmul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows.len(),
                self.cols,
                other.rows.len(),
                other.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(other.cols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            cols: other.cols,
            rows,
        })
    }

    /// `A·Aᵀ`, computed from row inner products.
    pub fn gram(&self) -> BitMatrix {
        BitMatrix::from_fn(self.rows.len(), self.rows.len(), |i, j| {
            self.rows[i].dot(&self.rows[j])
        })
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols || self.rows.len() != other.rows.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows.len(),
                self.cols,
                other.rows.len(),
                other.cols
            )));
        }
        Ok(BitMatrix {
            cols: self.cols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.xor(b))
                .collect(),
        })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows.len() != other.rows.len() {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows.len(),
                other.rows.len()
            )));
        }
        Ok(BitMatrix {
            cols: self.cols + other.cols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.concat(b))
                .collect(),
        })
    }

    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix {
            cols: self.cols,
            rows,
        })
    }

    /// Reduced row echelon form; zero rows are dropped. Pivots are chosen as
    /// the first row (from the current position down) with the column set.
    pub fn echelon(&self) -> Echelon {
        self.echelon_with_order(&(0..self.cols).collect::<Vec<_>>())
    }

    /// Like [`BitMatrix::echelon`] but scanning columns in `order`. Columns
    /// missing from `order` never become pivots; rows left without a pivot
    /// are kept (after the pivot rows) unless they vanish.
    pub fn echelon_with_order(&self, order: &[usize]) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for &c in order {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        // rows past `r` are zero on every scanned column
        rows.retain(|row| !row.is_zero());
        Echelon {
            matrix: BitMatrix {
                cols: self.cols,
                rows,
            },
            pivots,
        }
    }

    pub fn rref(&self) -> BitMatrix {
        self.echelon().matrix
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : A xᵀ = 0}` as the rows of the result.
    pub fn nullspace(&self) -> BitMatrix {
        let Echelon { matrix, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BitVector::unit(self.cols, f);
                for (r, &p) in pivots.iter().enumerate() {
                    if matrix.rows[r].get(f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect();
        BitMatrix {
            cols: self.cols,
            rows,
        }
    }

    /// True when both matrices span the same row space.
    pub fn same_row_space(&self, other: &BitMatrix) -> bool {
        self.cols == other.cols && self.rref() == other.rref()
    }

    /// Columns `start..end`.
    pub fn columns(&self, start: usize, end: usize) -> BitMatrix {
        BitMatrix {
            cols: end - start,
            rows: self.rows.iter().map(|r| r.slice(start, end)).collect(),
        }
    }

    /// Parses the plain-text format: a `rows cols` header followed by one
    /// 0/1 string per row. Blank lines are ignored.
    pub fn parse_text(text: &str) -> std::result::Result<BitMatrix, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(0, "missing header"))?;
        let mut dims = header.split_whitespace().map(str::parse::<usize>);
        let (rows, cols) = match (dims.next(), dims.next(), dims.next()) {
            (Some(Ok(r)), Some(Ok(c)), None) => (r, c),
            _ => {
                return Err(ParseError::new(
                    hline,
                    format!("expected \"rows cols\", got {header:?}"),
                ))
            }
        };
        let mut out = Vec::with_capacity(rows.min(1 << 16));
        for (lineno, line) in lines {
            if out.len() == rows {
                return Err(ParseError::new(lineno, "more rows than declared"));
            }
            if line.len() != cols {
                return Err(ParseError::new(
                    lineno,
                    format!("row has {} entries, expected {cols}", line.len()),
                ));
            }
            let v: BitVector = line
                .parse()
                .map_err(|e: ParseError| ParseError::new(lineno, e.message))?;
            out.push(v);
        }
        if out.len() != rows {
            return Err(ParseError::new(
                0,
                format!("expected {rows} rows, found {}", out.len()),
            ));
        }
        Ok(BitMatrix { cols, rows: out })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows.len(), self.cols);
        for r in &self.rows {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pentagon() -> BitMatrix {
        BitMatrix::from_fn(5, 5, |i, j| (i + 5 - j) % 5 == 1 || (j + 5 - i) % 5 == 1)
    }

    fn matrix_strategy(max: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::bool::ANY, r * c)
                .prop_map(move |bits| BitMatrix::from_fn(r, c, |i, j| bits[i * c + j]))
        })
    }

    #[test]
    fn identity_is_neutral() {
        let a = pentagon();
        assert_eq!(BitMatrix::identity(5).matmul(&a).unwrap(), a);
        assert_eq!(a.matmul(&BitMatrix::identity(5)).unwrap(), a);
    }

    #[test]
    fn j2_squared_vanishes() {
        let j = BitMatrix::ones(2, 2);
        assert!(j.matmul(&j).unwrap().is_zero());
    }

    #[test]
    fn pentagon_gram_matrix() {
        // Integer A·Aᵀ has 2 on the diagonal and 1 at distance-two pairs, so
        // mod 2 it is the adjacency matrix of the complement 5-cycle.
        let a = pentagon();
        let expected =
            BitMatrix::from_fn(5, 5, |i, j| (i + 5 - j) % 5 == 2 || (j + 5 - i) % 5 == 2);
        assert_eq!(a.matmul(&a.transpose()).unwrap(), expected);
        assert_eq!(a.gram(), expected);
    }

    #[test]
    fn ranks() {
        assert_eq!(BitMatrix::identity(7).rank(), 7);
        assert_eq!(pentagon().rank(), 4);
        assert_eq!(BitMatrix::ones(3, 3).rank(), 1);
        assert_eq!(BitMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn nullspace_of_j3_is_even_weight_code() {
        let ns = BitMatrix::ones(3, 3).nullspace();
        assert_eq!(ns.num_rows(), 2);
        for r in ns.rows() {
            assert_eq!(r.count_ones() % 2, 0);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = BitMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn text_format() {
        let m = BitMatrix::parse_text("2 2\n01\n10").unwrap();
        assert_eq!(m, BitMatrix::from_fn(2, 2, |i, j| i != j));
        assert_eq!(m.to_text(), "2 2\n01\n10\n");
        assert!(BitMatrix::parse_text("2 2\n01").is_err());
        assert!(BitMatrix::parse_text("1 2\n012").is_err());
        assert!(BitMatrix::parse_text("1 2\n0x").is_err());
        assert!(BitMatrix::parse_text("x y").is_err());
        assert_eq!(BitMatrix::parse_text("0 3\n").unwrap().num_cols(), 3);
    }

    #[test]
    fn padding_stays_clear() {
        let v = BitVector::ones(70);
        assert_eq!(v.count_ones(), 70);
        assert_eq!(v.words()[1], (1 << 6) - 1);
        let w = BitVector::from_words(3, vec![u64::MAX]);
        assert_eq!(w.count_ones(), 3);
    }

    proptest! {
        #[test]
        fn rank_nullity(a in matrix_strategy(40)) {
            let ns = a.nullspace();
            prop_assert_eq!(a.rank() + ns.num_rows(), a.num_cols());
            prop_assert!(a.matmul(&ns.transpose()).unwrap().is_zero());
            prop_assert_eq!(ns.rank(), ns.num_rows());
        }

        #[test]
        fn rref_idempotent_and_rank_of_transpose(a in matrix_strategy(40)) {
            let r = a.rref();
            prop_assert_eq!(r.rref(), r.clone());
            prop_assert_eq!(a.rank(), r.num_rows());
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn matmul_associative(seed in any::<u64>(), n in 1usize..=64, m in 1usize..=64, p in 1usize..=64, q in 1usize..=64) {
            let bit = |salt: u64, i: usize, j: usize| {
                let mut x = seed ^ salt ^ ((i as u64) << 32) ^ (j as u64);
                x = x.wrapping_mul(0x9E37_79B9_7F4A_7C15);
                x ^= x >> 29;
                x.wrapping_mul(0xBF58_476D_1CE4_E5B9) >> 63 == 1
            };
            let a = BitMatrix::from_fn(n, m, |i, j| bit(1, i, j));
            let b = BitMatrix::from_fn(m, p, |i, j| bit(2, i, j));
            let c = BitMatrix::from_fn(p, q, |i, j| bit(3, i, j));
            let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
            let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn text_round_trip(a in matrix_strategy(30)) {
            prop_assert_eq!(BitMatrix::parse_text(&a.to_text()).unwrap(), a);
        }
    }
}
