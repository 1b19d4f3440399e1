//! Strongly regular graphs and doubly regular tournaments: generators,
//! exact integer verification, the mod-2 parameter reduction, and graph6 /
//! text / manifest ingestion.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::ring_e::F4Element;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Srg,
    Drt,
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeKind::Srg => "SRG",
            SchemeKind::Drt => "DRT",
        })
    }
}

/// `(n, κ, Λ, M)`: order, degree (out-degree for tournaments), and the
/// adjacent / non-adjacent pair counts of the defining equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchemeParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SchemeParams {
    pub fn new(n: usize, k: usize, lambda: usize, mu: usize) -> Self {
        SchemeParams { n, k, lambda, mu }
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.n, self.k, self.lambda, self.mu)
    }
}

impl fmt::Display for SchemeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

/// A verified SRG or DRT adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeMatrix {
    kind: SchemeKind,
    adjacency: BitMatrix,
    params: SchemeParams,
}

/// Coefficients of `M·Mᵀ = λI + μJ + νM` over GF(2), plus the parity of `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mod2Params {
    pub lambda: bool,
    pub mu: bool,
    pub nu: bool,
    pub n_odd: bool,
}

impl SchemeMatrix {
    /// Verifies `adjacency` as a scheme of the given kind.
    pub fn new(kind: SchemeKind, adjacency: BitMatrix) -> Result<Self> {
        let params = match kind {
            SchemeKind::Srg => verify_srg(&adjacency)?,
            SchemeKind::Drt => verify_drt(&adjacency)?,
        };
        Ok(SchemeMatrix {
            kind,
            adjacency,
            params,
        })
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    pub fn params(&self) -> SchemeParams {
        self.params
    }

    pub fn order(&self) -> usize {
        self.params.n
    }

    /// `Ā = J − I − A`.
    pub fn complement_matrix(&self) -> BitMatrix {
        complement_of(&self.adjacency)
    }
}

fn complement_of(a: &BitMatrix) -> BitMatrix {
    let n = a.num_rows();
    BitMatrix::from_fn(n, n, |i, j| i != j && !a.get(i, j))
}

fn not_scheme(kind: SchemeKind, detail: String) -> Error {
    Error::NotAScheme {
        kind: match kind {
            SchemeKind::Srg => "strongly regular graph",
            SchemeKind::Drt => "doubly regular tournament",
        },
        detail,
    }
}

fn check_square_loopless(a: &BitMatrix, kind: SchemeKind) -> Result<usize> {
    if !a.is_square() {
        return Err(not_scheme(
            kind,
            format!("matrix is {}x{}", a.num_rows(), a.num_cols()),
        ));
    }
    let n = a.num_rows();
    if n == 0 {
        return Err(not_scheme(kind, "empty matrix".into()));
    }
    if let Some(i) = (0..n).find(|&i| a.get(i, i)) {
        return Err(not_scheme(kind, format!("nonzero diagonal at ({i},{i})")));
    }
    Ok(n)
}

fn check_regular(a: &BitMatrix, at: &BitMatrix, kind: SchemeKind) -> Result<usize> {
    let k = a.row(0).count_ones() as usize;
    for i in 0..a.num_rows() {
        let (r, c) = (a.row(i).count_ones() as usize, at.row(i).count_ones() as usize);
        if r != k || c != k {
            return Err(not_scheme(
                kind,
                format!("AJ = JA = {k}J fails at vertex {i} (out {r}, in {c})"),
            ));
        }
    }
    Ok(k)
}

/// Fits `(κ, Λ, M)` to `A² = κI + ΛA + M(J − I − A)` and checks every cell.
///
/// `Λ` (resp. `M`) is 0 when the graph has no adjacent (resp. non-adjacent)
/// pair.
pub fn verify_srg(a: &BitMatrix) -> Result<SchemeParams> {
    let kind = SchemeKind::Srg;
    let n = check_square_loopless(a, kind)?;
    let at = a.transpose();
    if &at != a {
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| a.get(i, j) != a.get(j, i))
            .expect("asymmetric matrix has an asymmetric cell");
        return Err(not_scheme(kind, format!("not symmetric at ({i},{j})")));
    }
    let k = check_regular(a, &at, kind)?;
    let pair = |adjacent: bool| {
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .find(|&(i, j)| a.get(i, j) == adjacent)
    };
    let common = |i: usize, j: usize| a.row(i).overlap(a.row(j)) as usize;
    let lambda = pair(true).map_or(0, |(i, j)| common(i, j));
    let mu = pair(false).map_or(0, |(i, j)| common(i, j));
    for i in 0..n {
        for j in (i + 1)..n {
            let want = if a.get(i, j) { lambda } else { mu };
            let got = common(i, j);
            if got != want {
                return Err(not_scheme(
                    kind,
                    format!("(A^2)[{i}][{j}] = {got}, expected {want}"),
                ));
            }
        }
    }
    Ok(SchemeParams::new(n, k, lambda, mu))
}

/// Fits `(κ, Λ, M)` to `A² = ΛA + M(J − I − A)` and additionally checks
/// `A + Aᵀ = J − I` and `A·Aᵀ = κI + (κ−1−Λ)A + (κ−M)Ā` cell by cell.
pub fn verify_drt(a: &BitMatrix) -> Result<SchemeParams> {
    let kind = SchemeKind::Drt;
    let n = check_square_loopless(a, kind)?;
    let at = a.transpose();
    for i in 0..n {
        for j in (i + 1)..n {
            if a.get(i, j) == a.get(j, i) {
                return Err(not_scheme(kind, format!("A + Aᵀ != J - I at ({i},{j})")));
            }
        }
    }
    let k = check_regular(a, &at, kind)?;
    // (A²)_ij = row i of A against column j of A
    let square = |i: usize, j: usize| a.row(i).overlap(at.row(j)) as i64;
    let find = |arc: bool| {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && a.get(i, j) == arc)
    };
    let lambda = find(true).map_or(0, |(i, j)| square(i, j));
    let mu = find(false).map_or(0, |(i, j)| square(i, j));
    let (ki, li, mi) = (k as i64, lambda, mu);
    for i in 0..n {
        for j in 0..n {
            let arc = a.get(i, j);
            let (want_sq, want_gram) = if i == j {
                (0, ki)
            } else if arc {
                (li, ki - 1 - li)
            } else {
                (mi, ki - mi)
            };
            let got_sq = square(i, j);
            if got_sq != want_sq {
                return Err(not_scheme(
                    kind,
                    format!("(A^2)[{i}][{j}] = {got_sq}, expected {want_sq}"),
                ));
            }
            let got_gram = a.row(i).overlap(a.row(j)) as i64;
            if got_gram != want_gram {
                return Err(not_scheme(
                    kind,
                    format!("(AAᵀ)[{i}][{j}] = {got_gram}, expected {want_gram}"),
                ));
            }
        }
    }
    Ok(SchemeParams::new(n, k, lambda as usize, mu as usize))
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn quadratic_residues(q: usize) -> Vec<bool> {
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    square
}

/// Paley graph on `Z_q`: `i ~ j` iff `i − j` is a nonzero square.
pub fn paley_graph(q: usize) -> Result<SchemeMatrix> {
    if !is_prime(q) || q % 4 != 1 {
        return Err(Error::InvalidOrder(q, "Paley graph needs a prime q ≡ 1 (mod 4)".into()));
    }
    let square = quadratic_residues(q);
    let a = BitMatrix::from_fn(q, q, |i, j| i != j && square[(i + q - j) % q]);
    SchemeMatrix::new(SchemeKind::Srg, a)
}

/// Paley tournament on `Z_q`: `i → j` iff `j − i` is a nonzero square.
pub fn paley_tournament(q: usize) -> Result<SchemeMatrix> {
    if !is_prime(q) || q % 4 != 3 {
        return Err(Error::InvalidOrder(
            q,
            "Paley tournament needs a prime q ≡ 3 (mod 4)".into(),
        ));
    }
    let square = quadratic_residues(q);
    let a = BitMatrix::from_fn(q, q, |i, j| i != j && square[(j + q - i) % q]);
    SchemeMatrix::new(SchemeKind::Drt, a)
}

/// Triangular graph `T(m)`: 2-subsets of `{0..m}` meeting in one point.
pub fn triangular_graph(m: usize) -> Result<SchemeMatrix> {
    if m < 3 {
        return Err(Error::InvalidOrder(m, "triangular graph needs m >= 3".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| ((i + 1)..m).map(move |j| (i, j)))
        .collect();
    let n = pairs.len();
    let a = BitMatrix::from_fn(n, n, |x, y| {
        let (p, q) = (pairs[x], pairs[y]);
        x != y && (p.0 == q.0 || p.0 == q.1 || p.1 == q.0 || p.1 == q.1)
    });
    SchemeMatrix::new(SchemeKind::Srg, a)
}

/// Lattice (rook's) graph `L2(m)` on an `m × m` grid.
pub fn lattice_graph(m: usize) -> Result<SchemeMatrix> {
    if m < 2 {
        return Err(Error::InvalidOrder(m, "lattice graph needs m >= 2".into()));
    }
    let n = m * m;
    let a = BitMatrix::from_fn(n, n, |x, y| {
        x != y && (x / m == y / m || x % m == y % m)
    });
    SchemeMatrix::new(SchemeKind::Srg, a)
}

/// Collinearity graph of the generalized quadrangle GQ(2,4): the 27 points
/// of the elliptic quadric `x0x1 + x2x3 + x4² + x4x5 + x5² = 0` in PG(5,2),
/// adjacent when the joining line lies on the quadric. Parameters
/// `(27, 10, 1, 5)`; it is the complement of the Schläfli graph.
pub fn gq24_collinearity_graph() -> Result<SchemeMatrix> {
    let bit = |x: u32, i: u32| (x >> i) & 1;
    let q = |x: u32| {
        (bit(x, 0) & bit(x, 1))
            ^ (bit(x, 2) & bit(x, 3))
            ^ bit(x, 4)
            ^ (bit(x, 4) & bit(x, 5))
            ^ bit(x, 5)
    };
    let points: Vec<u32> = (1u32..64).filter(|&x| q(x) == 0).collect();
    let n = points.len();
    let a = BitMatrix::from_fn(n, n, |i, j| {
        let (x, y) = (points[i], points[j]);
        i != j && q(x ^ y) == 0
    });
    SchemeMatrix::new(SchemeKind::Srg, a)
}

/// The Chang graphs: `T(8)` Seidel-switched with respect to the edges of a
/// perfect matching (`which = 1`), an 8-cycle (`2`), or a triangle plus a
/// 5-cycle (`3`) in `K8`. Parameters `(28, 12, 6, 4)`, not isomorphic to `T(8)`.
pub fn chang_graph(which: usize) -> Result<SchemeMatrix> {
    let cycle = |c: &[usize]| -> Vec<(usize, usize)> {
        (0..c.len()).map(|i| (c[i], c[(i + 1) % c.len()])).collect()
    };
    let edges: Vec<(usize, usize)> = match which {
        1 => vec![(0, 1), (2, 3), (4, 5), (6, 7)],
        2 => cycle(&[0, 1, 2, 3, 4, 5, 6, 7]),
        3 => [cycle(&[0, 1, 2]), cycle(&[3, 4, 5, 6, 7])].concat(),
        _ => return Err(Error::InvalidOrder(which, "Chang graphs are numbered 1 to 3".into())),
    };
    let pairs: Vec<(usize, usize)> = (0..8)
        .flat_map(|i| ((i + 1)..8).map(move |j| (i, j)))
        .collect();
    let inside: Vec<bool> = pairs
        .iter()
        .map(|&(i, j)| edges.contains(&(i, j)) || edges.contains(&(j, i)))
        .collect();
    let t8 = triangular_graph(8)?;
    let a = BitMatrix::from_fn(28, 28, |x, y| {
        x != y && (t8.adjacency.get(x, y) ^ (inside[x] != inside[y]))
    });
    SchemeMatrix::new(SchemeKind::Srg, a)
}

/// Collinearity graph of the symplectic quadrangle W(3) = GQ(3,3): the 40
/// points of PG(3,3), adjacent when orthogonal under
/// `x0y2 − x2y0 + x1y3 − x3y1`. Parameters `(40, 12, 2, 4)`.
pub fn gq33_collinearity_graph() -> Result<SchemeMatrix> {
    let points: Vec<[u32; 4]> = (1u32..81)
        .map(|v| [v % 3, v / 3 % 3, v / 9 % 3, v / 27])
        .filter(|x| x.iter().find(|&&c| c != 0) == Some(&1))
        .collect();
    let form = |x: &[u32; 4], y: &[u32; 4]| {
        (x[0] * y[2] + 2 * x[2] * y[0] + x[1] * y[3] + 2 * x[3] * y[1]) % 3
    };
    let n = points.len();
    let a = BitMatrix::from_fn(n, n, |i, j| i != j && form(&points[i], &points[j]) == 0);
    SchemeMatrix::new(SchemeKind::Srg, a)
}

/// Collinearity graph of the Hermitian quadrangle H(3,4) = GQ(4,2): the 45
/// points of PG(3,4) on `Σ x_i³ = 0`, adjacent when `Σ x_i y_i² = 0`.
/// Parameters `(45, 12, 3, 3)`.
pub fn gq42_collinearity_graph() -> Result<SchemeMatrix> {
    let f = F4Element::ALL;
    let (zero, one) = (f[0], f[1]);
    let points: Vec<[F4Element; 4]> = (0..256usize)
        .map(|v| [f[v & 3], f[v >> 2 & 3], f[v >> 4 & 3], f[v >> 6]])
        .filter(|x| x.iter().find(|&&c| c != zero) == Some(&one))
        .filter(|x| x.iter().fold(zero, |s, &c| s + c * c * c) == zero)
        .collect();
    let form = |x: &[F4Element; 4], y: &[F4Element; 4]| {
        (0..4).fold(zero, |s, i| s + x[i] * y[i] * y[i])
    };
    let n = points.len();
    let a = BitMatrix::from_fn(n, n, |i, j| i != j && form(&points[i], &points[j]) == zero);
    SchemeMatrix::new(SchemeKind::Srg, a)
}

/// The 35 lines of PG(3,2), adjacent when skew. Parameters `(35, 16, 6, 8)`.
pub fn pg32_skew_lines_graph() -> Result<SchemeMatrix> {
    let mut lines: Vec<u16> = Vec::new();
    for x in 1u32..16 {
        for y in (x + 1)..16 {
            let line = (1u16 << x) | (1 << y) | (1 << (x ^ y));
            if !lines.contains(&line) {
                lines.push(line);
            }
        }
    }
    let n = lines.len();
    let a = BitMatrix::from_fn(n, n, |i, j| i != j && lines[i] & lines[j] == 0);
    SchemeMatrix::new(SchemeKind::Srg, a)
}

/// Latin square graph of the cyclic group of order `m`: cells of an `m × m`
/// grid, adjacent when they share a row, a column or the symbol `i + j`.
/// Parameters `(m², 3(m − 1), m, 6)`.
pub fn cyclic_latin_square_graph(m: usize) -> Result<SchemeMatrix> {
    if m < 3 {
        return Err(Error::InvalidOrder(m, "latin square graph needs m >= 3".into()));
    }
    let n = m * m;
    let a = BitMatrix::from_fn(n, n, |x, y| {
        let (r1, c1, r2, c2) = (x / m, x % m, y / m, y % m);
        x != y && (r1 == r2 || c1 == c2 || (r1 + c1) % m == (r2 + c2) % m)
    });
    SchemeMatrix::new(SchemeKind::Srg, a)
}

/// Cayley graph on `Z2 × Z2 × Z3 × Z3` whose connection set is a partial
/// difference set found by computer search. Parameters `(36, 14, 4, 6)`.
pub fn cayley_36_14_4_6() -> Result<SchemeMatrix> {
    const S: [[u8; 4]; 14] = [
        [0, 0, 0, 1], [0, 0, 0, 2], [1, 0, 1, 2], [1, 0, 2, 1], [1, 1, 1, 0],
        [1, 1, 2, 0], [1, 0, 0, 1], [1, 0, 0, 2], [0, 1, 0, 0], [1, 0, 1, 0],
        [1, 0, 2, 0], [0, 1, 1, 2], [0, 1, 2, 1], [1, 1, 0, 0],
    ];
    let coords = |v: usize| [(v & 1) as u8, (v >> 1 & 1) as u8, (v / 4 % 3) as u8, (v / 12) as u8];
    let a = BitMatrix::from_fn(36, 36, |i, j| {
        let (x, y) = (coords(i), coords(j));
        let d = [(x[0] + 2 - y[0]) % 2, (x[1] + 2 - y[1]) % 2, (x[2] + 3 - y[2]) % 3, (x[3] + 3 - y[3]) % 3];
        S.contains(&d)
    });
    SchemeMatrix::new(SchemeKind::Srg, a)
}

/// SRG complement `J − I − A`, or the converse `Aᵀ` of a tournament.
pub fn complement(s: &SchemeMatrix) -> Result<SchemeMatrix> {
    match s.kind {
        SchemeKind::Srg => SchemeMatrix::new(SchemeKind::Srg, s.complement_matrix()),
        SchemeKind::Drt => SchemeMatrix::new(SchemeKind::Drt, s.adjacency.transpose()),
    }
}

/// Parameters of the complement of an SRG with the given parameters.
pub fn complement_params(p: SchemeParams) -> SchemeParams {
    let SchemeParams { n, k, lambda, mu } = p;
    SchemeParams::new(n, n - k - 1, n + mu - 2 * k - 2, n + lambda - 2 * k)
}

/// `(λ, μ, ν)` for the adjacency matrix reduced mod 2, re-verified against
/// the GF(2) product `M·Mᵀ`.
pub fn mod2_params(s: &SchemeMatrix) -> Result<Mod2Params> {
    let SchemeParams { n, k, lambda, mu } = s.params;
    let (k, l, m) = (k as i64, lambda as i64, mu as i64);
    let odd = |x: i64| x.rem_euclid(2) == 1;
    let p = match s.kind {
        SchemeKind::Srg => Mod2Params {
            lambda: odd(k - m),
            mu: odd(m),
            nu: odd(l - m),
            n_odd: n % 2 == 1,
        },
        SchemeKind::Drt => Mod2Params {
            lambda: odd(m),
            mu: odd(k - m),
            nu: odd(m - l - 1),
            n_odd: n % 2 == 1,
        },
    };
    let a = &s.adjacency;
    let gram = a.gram();
    let predicted = BitMatrix::from_fn(n, n, |i, j| {
        (p.lambda && i == j) ^ p.mu ^ (p.nu && a.get(i, j))
    });
    if gram != predicted {
        return Err(not_scheme(
            s.kind,
            format!("M·Mᵀ over GF(2) does not match (λ,μ,ν) = {p:?}"),
        ));
    }
    Ok(p)
}

/// Largest graph6 order accepted by the decoder.
pub const MAX_GRAPH6_ORDER: usize = 1 << 12;

const GRAPH6_HEADER: &[u8] = b">>graph6<<";

fn triangle_bits(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Decodes one graph6 record (an optional `>>graph6<<` header and a single
/// trailing newline are accepted). Padding bits must be zero.
pub fn parse_graph6(bytes: &[u8]) -> Result<BitMatrix> {
    let mut data = bytes.strip_prefix(GRAPH6_HEADER).unwrap_or(bytes);
    if let Some(rest) = data.strip_suffix(b"\n") {
        data = rest.strip_suffix(b"\r").unwrap_or(rest);
    }
    let six = |b: u8| -> Result<u64> {
        if (63..=126).contains(&b) {
            Ok(u64::from(b - 63))
        } else {
            Err(Error::Graph6(format!("invalid byte 0x{b:02x}")))
        }
    };
    let (n, body) = match data {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated 8-byte order header".into()));
            }
            let mut n = 0u64;
            for &b in &rest[..6] {
                n = (n << 6) | six(b)?;
            }
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated 4-byte order header".into()));
            }
            let mut n = 0u64;
            for &b in &rest[..3] {
                n = (n << 6) | six(b)?;
            }
            if n < 63 {
                return Err(Error::Graph6(format!("order {n} must use the short header")));
            }
            (n, &rest[3..])
        }
        [b, rest @ ..] => (six(*b)?, rest),
    };
    if n > MAX_GRAPH6_ORDER as u64 {
        return Err(Error::Graph6(format!(
            "order {n} out of range (max {MAX_GRAPH6_ORDER})"
        )));
    }
    let n = n as usize;
    let nbits = triangle_bits(n);
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(Error::Graph6(format!(
            "expected {need} data bytes for order {n}, found {}",
            body.len()
        )));
    }
    let mut a = BitMatrix::zeros(n, n);
    let mut bit = 0usize;
    for (idx, &b) in body.iter().enumerate() {
        let v = six(b)?;
        for shift in (0..6).rev() {
            let set = (v >> shift) & 1 == 1;
            if bit < nbits {
                if set {
                    let (i, j) = triangle_position(bit);
                    a.set(i, j, true);
                    a.set(j, i, true);
                }
            } else if set {
                return Err(Error::Graph6(format!("nonzero padding bit in byte {idx}")));
            }
            bit += 1;
        }
    }
    Ok(a)
}

/// Bit index `t` of the column-major upper triangle: `(i, j)` with `i < j`.
fn triangle_position(t: usize) -> (usize, usize) {
    // column j holds j entries and starts at j(j-1)/2
    let mut j = (((8 * t + 1) as f64).sqrt() as usize).div_ceil(2);
    while j * (j - 1) / 2 > t {
        j -= 1;
    }
    while (j + 1) * j / 2 <= t {
        j += 1;
    }
    (t - j * (j - 1) / 2, j)
}

/// Encodes a simple undirected graph (symmetric, zero diagonal) as graph6
/// without header or newline.
pub fn encode_graph6(a: &BitMatrix) -> Result<Vec<u8>> {
    if !a.is_square() {
        return Err(Error::Graph6("adjacency matrix is not square".into()));
    }
    let n = a.num_rows();
    if n > MAX_GRAPH6_ORDER {
        return Err(Error::Graph6(format!("order {n} out of range")));
    }
    for i in 0..n {
        if a.get(i, i) {
            return Err(Error::Graph6(format!("loop at vertex {i}")));
        }
        for j in (i + 1)..n {
            if a.get(i, j) != a.get(j, i) {
                return Err(Error::Graph6(format!("asymmetric at ({i},{j})")));
            }
        }
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(a.get(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(out)
}

/// Decodes every non-empty line of a graph6 file.
pub fn parse_graph6_file(bytes: &[u8]) -> Result<Vec<BitMatrix>> {
    bytes
        .split(|&b| b == b'\n')
        .map(|l| l.strip_suffix(b"\r").unwrap_or(l))
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

/// Plain 0/1 matrix text (`rows cols` header, then rows).
pub fn parse_matrix_text(text: &str) -> std::result::Result<BitMatrix, ParseError> {
    BitMatrix::parse_text(text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeFormat {
    Graph6,
    Matrix,
}

/// One named scheme in a manifest, with its expected parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub kind: SchemeKind,
    pub format: SchemeFormat,
    pub file: PathBuf,
    /// Expected `[n, κ, Λ, M]`.
    pub params: [usize; 4],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schemes: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Manifest> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn find(&self, name: &str) -> Option<&ManifestEntry> {
        self.schemes.iter().find(|e| e.name == name)
    }

    /// Finds the entry whose expected parameters match.
    pub fn find_params(&self, kind: SchemeKind, params: SchemeParams) -> Option<&ManifestEntry> {
        let want = [params.n, params.k, params.lambda, params.mu];
        self.schemes
            .iter()
            .find(|e| e.kind == kind && e.params == want)
    }
}

impl ManifestEntry {
    /// Reads the file (relative paths resolve against `base`), verifies the
    /// scheme, and checks the fitted parameters against the manifest.
    pub fn load(&self, base: &Path) -> Result<SchemeMatrix> {
        let path = if self.file.is_absolute() {
            self.file.clone()
        } else {
            base.join(&self.file)
        };
        let scheme = load_scheme_file(&path, self.kind, self.format)?;
        let got = scheme.params();
        if [got.n, got.k, got.lambda, got.mu] != self.params {
            return Err(not_scheme(
                self.kind,
                format!(
                    "{}: fitted parameters {got} differ from manifest {:?}",
                    self.name, self.params
                ),
            ));
        }
        Ok(scheme)
    }
}

/// Reads one scheme from a graph6 file (first record) or matrix text file.
pub fn load_scheme_file(path: &Path, kind: SchemeKind, format: SchemeFormat) -> Result<SchemeMatrix> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let a = match format {
        SchemeFormat::Graph6 => parse_graph6_file(&bytes)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Graph6(format!("{}: no graph", path.display())))?,
        SchemeFormat::Matrix => {
            let text = String::from_utf8(bytes)
                .map_err(|_| ParseError::new(0, "matrix file is not UTF-8"))?;
            parse_matrix_text(&text)?
        }
    };
    SchemeMatrix::new(kind, a)
}

/// Adjacency matrix as a vector of rows (for reports).
pub fn adjacency_rows(a: &BitMatrix) -> Vec<BitVector> {
    a.rows().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pentagon() -> BitMatrix {
        BitMatrix::from_fn(5, 5, |i, j| (i + 5 - j) % 5 == 1 || (j + 5 - i) % 5 == 1)
    }

    /// Integer oracle: (κ, Λ, M) read off the explicit A² with i64 arithmetic.
    fn fit_by_integer_square(a: &BitMatrix, symmetric: bool) -> (i64, i64, i64) {
        let n = a.num_rows();
        let sq = |i: usize, j: usize| -> i64 {
            (0..n)
                .map(|k| i64::from(a.get(i, k)) * i64::from(a.get(k, j)))
                .sum()
        };
        let k = (0..n).map(|j| i64::from(a.get(0, j))).sum::<i64>();
        let mut lam = None;
        let mut mu = None;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let slot = if a.get(i, j) { &mut lam } else { &mut mu };
                let v = sq(i, j);
                match slot {
                    None => *slot = Some(v),
                    Some(prev) => assert_eq!(*prev, v, "inconsistent at ({i},{j})"),
                }
            }
            if symmetric {
                assert_eq!(sq(i, i), k);
            }
        }
        (k, lam.unwrap_or(0), mu.unwrap_or(0))
    }

    #[test]
    fn paley5_is_the_pentagon() {
        let s = paley_graph(5).unwrap();
        assert_eq!(s.adjacency(), &pentagon());
        assert_eq!(s.params().as_tuple(), (5, 2, 0, 1));
        assert_eq!(fit_by_integer_square(&pentagon(), true), (2, 0, 1));
    }

    #[test]
    fn paley_graph_parameters() {
        let s = paley_graph(13).unwrap();
        assert_eq!(s.params().as_tuple(), (13, 6, 2, 3));
        assert_eq!(fit_by_integer_square(s.adjacency(), true), (6, 2, 3));
        for q in [5usize, 13, 17, 29] {
            let p = paley_graph(q).unwrap().params();
            assert_eq!(p.as_tuple(), (q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4));
        }
        assert!(paley_graph(7).is_err());
        assert!(paley_graph(9).is_err());
        assert!(paley_graph(1).is_err());
    }

    #[test]
    fn paley_tournament_parameters() {
        let t3 = paley_tournament(3).unwrap();
        assert_eq!(t3.params().as_tuple(), (3, 1, 0, 1));
        let t11 = paley_tournament(11).unwrap();
        assert_eq!(t11.params().as_tuple(), (11, 5, 2, 3));
        assert_eq!(fit_by_integer_square(t11.adjacency(), false), (5, 2, 3));
        let t19 = paley_tournament(19).unwrap();
        assert_eq!(t19.params().as_tuple(), (19, 9, 4, 5));
        assert_eq!(fit_by_integer_square(t19.adjacency(), false), (9, 4, 5));
        assert!(paley_tournament(5).is_err());
        assert!(paley_tournament(15).is_err());
    }

    #[test]
    fn drt_transpose_is_complement() {
        for q in [3, 7, 11, 19, 23] {
            let t = paley_tournament(q).unwrap();
            assert_eq!(t.adjacency().transpose(), t.complement_matrix());
        }
    }

    #[test]
    fn table_parameter_sets() {
        assert_eq!(lattice_graph(4).unwrap().params().as_tuple(), (16, 6, 2, 2));
        assert_eq!(triangular_graph(8).unwrap().params().as_tuple(), (28, 12, 6, 4));
        let t6 = triangular_graph(6).unwrap();
        assert_eq!(complement(&t6).unwrap().params().as_tuple(), (15, 6, 1, 3));
        assert_eq!(complement_params(t6.params()).as_tuple(), (15, 6, 1, 3));
        assert_eq!(gq24_collinearity_graph().unwrap().params().as_tuple(), (27, 10, 1, 5));
        assert_eq!(gq33_collinearity_graph().unwrap().params().as_tuple(), (40, 12, 2, 4));
        assert_eq!(gq42_collinearity_graph().unwrap().params().as_tuple(), (45, 12, 3, 3));
        assert_eq!(pg32_skew_lines_graph().unwrap().params().as_tuple(), (35, 16, 6, 8));
        for w in 1..=3 {
            let g = chang_graph(w).unwrap();
            assert_eq!(g.params().as_tuple(), (28, 12, 6, 4));
            assert_ne!(g.adjacency(), triangular_graph(8).unwrap().adjacency());
        }
        assert!(chang_graph(4).is_err());
        assert_eq!(cayley_36_14_4_6().unwrap().params().as_tuple(), (36, 14, 4, 6));
        assert_eq!(cyclic_latin_square_graph(6).unwrap().params().as_tuple(), (36, 15, 6, 6));
        assert!(triangular_graph(2).is_err());
        assert!(lattice_graph(1).is_err());
    }

    #[test]
    fn complement_is_an_involution() {
        for s in [paley_graph(13).unwrap(), triangular_graph(7).unwrap(), lattice_graph(5).unwrap()] {
            let c = complement(&s).unwrap();
            assert_eq!(c.params(), complement_params(s.params()));
            assert_eq!(complement(&c).unwrap(), s);
        }
    }

    #[test]
    fn complete_graph_parameters() {
        let k3 = BitMatrix::from_fn(3, 3, |i, j| i != j);
        assert_eq!(verify_srg(&k3).unwrap().as_tuple(), (3, 2, 1, 0));
    }

    #[test]
    fn verifier_rejects_non_schemes() {
        let path = BitMatrix::from_fn(4, 4, |i, j| i.abs_diff(j) == 1);
        assert!(verify_srg(&path).is_err());
        assert!(verify_srg(&BitMatrix::identity(3)).is_err());
        assert!(verify_drt(&pentagon()).is_err());
        // C6 is regular but not strongly regular
        let c6 = BitMatrix::from_fn(6, 6, |i, j| (i + 6 - j) % 6 == 1 || (j + 6 - i) % 6 == 1);
        let err = verify_srg(&c6).unwrap_err().to_string();
        assert!(err.contains("A^2"), "{err}");
    }

    #[test]
    fn mod2_reductions() {
        let t11 = paley_tournament(11).unwrap();
        let p = mod2_params(&t11).unwrap();
        assert_eq!((p.lambda, p.mu, p.nu), (true, false, false));
        let l4 = mod2_params(&lattice_graph(4).unwrap()).unwrap();
        assert_eq!((l4.lambda, l4.mu, l4.nu), (false, false, false));
        let pent = mod2_params(&paley_graph(5).unwrap()).unwrap();
        assert_eq!((pent.lambda, pent.mu, pent.nu), (true, true, true));
    }

    #[test]
    fn mod2_reduction_holds_for_every_generated_scheme() {
        let mut all = vec![
            gq24_collinearity_graph().unwrap(),
            lattice_graph(4).unwrap(),
            lattice_graph(5).unwrap(),
            triangular_graph(6).unwrap(),
            triangular_graph(8).unwrap(),
        ];
        all.extend([5, 13, 17, 29].map(|q| paley_graph(q).unwrap()));
        all.extend([3, 7, 11, 19, 23].map(|q| paley_tournament(q).unwrap()));
        let with_complements: Vec<_> = all.iter().map(|s| complement(s).unwrap()).collect();
        for s in all.iter().chain(&with_complements) {
            mod2_params(s).unwrap();
        }
    }

    #[test]
    fn pentagon_graph6() {
        // reference bytes from an independent encoder (networkx)
        assert_eq!(encode_graph6(&pentagon()).unwrap(), b"Dhc");
        assert_eq!(parse_graph6(b"Dhc").unwrap(), pentagon());
        assert_eq!(parse_graph6(b">>graph6<<Dhc\n").unwrap(), pentagon());
        // "DUW" is the same cycle labelled 0-2-4-1-3
        let pentagram = parse_graph6(b"DUW").unwrap();
        assert_eq!(verify_srg(&pentagram).unwrap().as_tuple(), (5, 2, 0, 1));
        let relabel = [0, 2, 4, 1, 3];
        assert_eq!(
            pentagram,
            BitMatrix::from_fn(5, 5, |i, j| pentagon().get(relabel.iter().position(|&v| v == i).unwrap(), relabel.iter().position(|&v| v == j).unwrap()))
        );
        let t = parse_graph6(b"D~{").unwrap();
        assert_eq!(parse_graph6(&encode_graph6(&t).unwrap()).unwrap(), t);
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6(b"").is_err());
        assert!(parse_graph6(b"Dh").is_err());
        assert!(parse_graph6(b"Dhcc").is_err());
        assert!(parse_graph6(b"Dhd").is_err());
        assert!(parse_graph6(b"D\x01c").is_err());
        assert!(parse_graph6(b"~??").is_err());
        assert!(parse_graph6(b"~~~~~~~~").is_err());
        assert!(parse_graph6(b"~?@?").is_err());
    }

    #[test]
    fn graph6_large_order_header() {
        let n = 70;
        let a = BitMatrix::from_fn(n, n, |i, j| i != j && (i * j) % 3 == 1);
        let bytes = encode_graph6(&a).unwrap();
        assert_eq!(bytes.len(), 407);
        assert_eq!(&bytes[..10], b"~?@E?O_AOc");
        assert_eq!(parse_graph6(&bytes).unwrap(), a);
    }

    #[test]
    fn matrix_text_scheme() {
        let a = parse_matrix_text("2 2\n01\n10").unwrap();
        assert_eq!(a, BitMatrix::from_fn(2, 2, |i, j| i != j));
    }

    #[test]
    fn manifest_round_trip() {
        let m = Manifest {
            schemes: vec![ManifestEntry {
                name: "srg-27".into(),
                kind: SchemeKind::Srg,
                format: SchemeFormat::Graph6,
                file: "srg-27-10-1-5.g6".into(),
                params: [27, 10, 1, 5],
            }],
        };
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(Manifest::parse(&text).unwrap(), m);
        assert!(m.find("srg-27").is_some());
        assert!(m
            .find_params(SchemeKind::Srg, SchemeParams::new(27, 10, 1, 5))
            .is_some());
        assert!(Manifest::parse("{\"schemes\": 3}").is_err());
    }

    proptest! {
        #[test]
        fn triangle_position_matches_column_major_order(n in 2usize..60) {
            let mut t = 0;
            for j in 1..n {
                for i in 0..j {
                    prop_assert_eq!(triangle_position(t), (i, j));
                    t += 1;
                }
            }
        }
    }
}
