//! Arithmetic in the ring `E = {0, a, b, c}`.
//!
//! Every element is stored as a pair of bits `(alpha, beta)` with
//! `x = alpha·a + beta·c`, so that
//!
//! | element | alpha | beta |
//! |---------|-------|------|
//! | `0`     | 0     | 0    |
//! | `a`     | 1     | 0    |
//! | `b`     | 1     | 1    |
//! | `c`     | 0     | 1    |
//!
//! Addition is XOR of the pairs and `x·y` is `x` masked by `alpha(y)`.
//! Vectors over `E` are kept as two GF(2) planes ([`EVector`]) so that all
//! code-level work reduces to bit-packed GF(2) operations.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::ParseError;
use crate::gf2::BitVector;

/// An element of the ring `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElement {
    Zero,
    A,
    B,
    C,
}

impl RingElement {
    pub const ALL: [RingElement; 4] = [
        RingElement::Zero,
        RingElement::A,
        RingElement::B,
        RingElement::C,
    ];

    #[inline]
    pub const fn from_bits(alpha: bool, beta: bool) -> Self {
        match (alpha, beta) {
            (false, false) => RingElement::Zero,
            (true, false) => RingElement::A,
            (true, true) => RingElement::B,
            (false, true) => RingElement::C,
        }
    }

    /// Residue bit: the image under reduction modulo `J = {0, c}`.
    #[inline]
    pub const fn alpha_bit(self) -> bool {
        matches!(self, RingElement::A | RingElement::B)
    }

    /// Coefficient of `c` in `x = alpha·a + beta·c`.
    #[inline]
    pub const fn beta_bit(self) -> bool {
        matches!(self, RingElement::B | RingElement::C)
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        matches!(self, RingElement::Zero)
    }

    /// `x` added to itself `k` times.
    #[inline]
    pub fn scale(self, k: u64) -> Self {
        if k.is_multiple_of(2) {
            RingElement::Zero
        } else {
            self
        }
    }

    pub fn as_char(self) -> char {
        match self {
            RingElement::Zero => '0',
            RingElement::A => 'a',
            RingElement::B => 'b',
            RingElement::C => 'c',
        }
    }

    pub fn from_char(ch: char) -> Option<Self> {
        match ch {
            '0' => Some(RingElement::Zero),
            'a' => Some(RingElement::A),
            'b' => Some(RingElement::B),
            'c' => Some(RingElement::C),
            _ => None,
        }
    }
}

impl Add for RingElement {
    type Output = RingElement;

    #[inline]
    fn add(self, rhs: RingElement) -> RingElement {
        RingElement::from_bits(
            self.alpha_bit() ^ rhs.alpha_bit(),
            self.beta_bit() ^ rhs.beta_bit(),
        )
    }
}

impl Mul for RingElement {
    type Output = RingElement;

    #[inline]
    fn mul(self, rhs: RingElement) -> RingElement {
        if rhs.alpha_bit() {
            self
        } else {
            RingElement::Zero
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for RingElement {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.trim().chars();
        match (chars.next(), chars.next()) {
            (Some(ch), None) => RingElement::from_char(ch)
                .ok_or_else(|| ParseError::new(1, format!("invalid ring element {ch:?}"))),
            _ => Err(ParseError::new(1, format!("invalid ring element {s:?}"))),
        }
    }
}

pub fn add(x: RingElement, y: RingElement) -> RingElement {
    x + y
}

pub fn mul(x: RingElement, y: RingElement) -> RingElement {
    x * y
}

/// The element of `GF(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct F2Element(pub bool);

impl F2Element {
    pub const ZERO: F2Element = F2Element(false);
    pub const ONE: F2Element = F2Element(true);
}

impl Add for F2Element {
    type Output = F2Element;
    fn add(self, rhs: F2Element) -> F2Element {
        F2Element(self.0 ^ rhs.0)
    }
}

impl Mul for F2Element {
    type Output = F2Element;
    fn mul(self, rhs: F2Element) -> F2Element {
        F2Element(self.0 & rhs.0)
    }
}

/// Reduction map `E -> E/J = GF(2)`.
pub fn alpha(x: RingElement) -> F2Element {
    F2Element(x.alpha_bit())
}

/// An element of `GF(4) = GF(2)[w]` with `w^2 = w + 1`.
///
/// Stored as `lo + hi·w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum F4Element {
    Zero,
    One,
    Omega,
    OmegaSq,
}

impl F4Element {
    pub const ALL: [F4Element; 4] = [
        F4Element::Zero,
        F4Element::One,
        F4Element::Omega,
        F4Element::OmegaSq,
    ];

    fn coords(self) -> (bool, bool) {
        match self {
            F4Element::Zero => (false, false),
            F4Element::One => (true, false),
            F4Element::Omega => (false, true),
            F4Element::OmegaSq => (true, true),
        }
    }

    /// Coefficient of `1` in `lo + hi·w`.
    pub fn lo_bit(self) -> bool {
        self.coords().0
    }

    /// Coefficient of `w` in `lo + hi·w`.
    pub fn hi_bit(self) -> bool {
        self.coords().1
    }

    fn from_coords(lo: bool, hi: bool) -> Self {
        match (lo, hi) {
            (false, false) => F4Element::Zero,
            (true, false) => F4Element::One,
            (false, true) => F4Element::Omega,
            (true, true) => F4Element::OmegaSq,
        }
    }

    /// Text symbol: `0`, `1`, `w` (omega), `W` (omega squared).
    pub fn as_char(self) -> char {
        match self {
            F4Element::Zero => '0',
            F4Element::One => '1',
            F4Element::Omega => 'w',
            F4Element::OmegaSq => 'W',
        }
    }

    pub fn from_char(ch: char) -> Option<Self> {
        match ch {
            '0' => Some(F4Element::Zero),
            '1' => Some(F4Element::One),
            'w' => Some(F4Element::Omega),
            'W' => Some(F4Element::OmegaSq),
            _ => None,
        }
    }
}

impl Add for F4Element {
    type Output = F4Element;
    fn add(self, rhs: F4Element) -> F4Element {
        let (l0, h0) = self.coords();
        let (l1, h1) = rhs.coords();
        F4Element::from_coords(l0 ^ l1, h0 ^ h1)
    }
}

impl Mul for F4Element {
    type Output = F4Element;
    fn mul(self, rhs: F4Element) -> F4Element {
        // (l0 + h0 w)(l1 + h1 w) = l0 l1 + h0 h1 + (l0 h1 + h0 l1 + h0 h1) w
        let (l0, h0) = self.coords();
        let (l1, h1) = rhs.coords();
        let hh = h0 & h1;
        F4Element::from_coords((l0 & l1) ^ hh, (l0 & h1) ^ (h0 & l1) ^ hh)
    }
}

impl fmt::Display for F4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Substitution `0 -> 0, a -> w, b -> w^2, c -> 1`.
pub fn phi(x: RingElement) -> F4Element {
    match x {
        RingElement::Zero => F4Element::Zero,
        RingElement::A => F4Element::Omega,
        RingElement::B => F4Element::OmegaSq,
        RingElement::C => F4Element::One,
    }
}

pub fn hamming_wt(x: RingElement) -> u32 {
    u32::from(!x.is_zero())
}

pub fn lee_wt(x: RingElement) -> u32 {
    match x {
        RingElement::Zero => 0,
        RingElement::A | RingElement::B => 1,
        RingElement::C => 2,
    }
}

/// A vector over `E`, held as its alpha and beta bit planes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EVector {
    alpha: BitVector,
    beta: BitVector,
}

impl EVector {
    pub fn zeros(len: usize) -> Self {
        EVector {
            alpha: BitVector::zeros(len),
            beta: BitVector::zeros(len),
        }
    }

    /// Panics if the planes differ in length.
    pub fn from_planes(alpha: BitVector, beta: BitVector) -> Self {
        assert_eq!(alpha.len(), beta.len(), "plane length mismatch");
        EVector { alpha, beta }
    }

    /// `e·x` for a binary vector `x`: the entry `e` on the support of `x`.
    pub fn scalar_embed(e: RingElement, x: &BitVector) -> Self {
        let zero = BitVector::zeros(x.len());
        EVector {
            alpha: if e.alpha_bit() { x.clone() } else { zero.clone() },
            beta: if e.beta_bit() { x.clone() } else { zero },
        }
    }

    pub fn from_elements(elems: &[RingElement]) -> Self {
        let mut v = EVector::zeros(elems.len());
        for (i, &e) in elems.iter().enumerate() {
            v.set(i, e);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn alpha_plane(&self) -> &BitVector {
        &self.alpha
    }

    pub fn beta_plane(&self) -> &BitVector {
        &self.beta
    }

    pub fn get(&self, i: usize) -> RingElement {
        RingElement::from_bits(self.alpha.get(i), self.beta.get(i))
    }

    pub fn set(&mut self, i: usize, e: RingElement) {
        self.alpha.set(i, e.alpha_bit());
        self.beta.set(i, e.beta_bit());
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    pub fn add(&self, other: &EVector) -> EVector {
        EVector {
            alpha: self.alpha.xor(&other.alpha),
            beta: self.beta.xor(&other.beta),
        }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &EVector) -> EVector {
        EVector {
            alpha: self.alpha.concat(&other.alpha),
            beta: self.beta.concat(&other.beta),
        }
    }

    /// Left scalar multiple `e·v`.
    pub fn left_mul(&self, e: RingElement) -> EVector {
        // (e·v)_i = e where alpha(v_i) = 1, else 0
        EVector::scalar_embed(e, &self.alpha)
    }

    /// Right scalar multiple `v·e`.
    pub fn right_mul(&self, e: RingElement) -> EVector {
        if e.alpha_bit() {
            self.clone()
        } else {
            EVector::zeros(self.len())
        }
    }

    /// Coordinatewise reduction modulo `J`.
    pub fn residue(&self) -> BitVector {
        self.alpha.clone()
    }

    /// Standard inner product `sum x_i y_i` (not symmetric over `E`).
    pub fn inner(&self, other: &EVector) -> RingElement {
        // x_i y_i = x_i when alpha(y_i) = 1
        RingElement::from_bits(
            self.alpha.dot(&other.alpha),
            self.beta.dot(&other.alpha),
        )
    }

    pub fn hamming_weight(&self) -> u32 {
        self.alpha.or(&self.beta).count_ones()
    }

    pub fn lee_weight(&self) -> u32 {
        // a, b -> 1 and c -> 2
        self.alpha.count_ones() + 2 * self.beta.and_not(&self.alpha).count_ones()
    }

    pub fn phi(&self) -> Vec<F4Element> {
        self.elements().map(phi).collect()
    }
}

impl fmt::Display for EVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.elements() {
            write!(f, "{}", e.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for EVector {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let elems = s
            .chars()
            .map(|ch| {
                RingElement::from_char(ch)
                    .ok_or_else(|| ParseError::new(1, format!("invalid ring symbol {ch:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EVector::from_elements(&elems))
    }
}

/// The 4×4 addition and multiplication tables as text, rows and columns in
/// the order `0, a, b, c`.
pub fn render_tables() -> String {
    let mut out = String::new();
    for (name, op) in [
        ("+", add as fn(RingElement, RingElement) -> RingElement),
        ("*", mul),
    ] {
        out.push_str(name);
        for y in RingElement::ALL {
            out.push(' ');
            out.push(y.as_char());
        }
        out.push('\n');
        for x in RingElement::ALL {
            out.push(x.as_char());
            for y in RingElement::ALL {
                out.push(' ');
                out.push(op(x, y).as_char());
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}
