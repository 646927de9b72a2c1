//! Linear codes and the constructions used throughout the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{Field, Symbol};
use crate::linalg::Matrix;

/// A word of `F_q^n`, coordinates as raw field values.
pub type Word = Vec<Symbol>;

pub const DEFAULT_MAX_CODEWORDS: u64 = 65_536;

/// A permutation of coordinate positions, stored 0-based as an image list:
/// position `j` of the permuted word holds coordinate `image[j]` of the
/// original word. Serialized 1-based, like permutation files.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Permutation> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in &image {
            if i >= n || seen[i] {
                return Err(Error::InvalidParameter(format!("{image:?} is not a permutation of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Permutation(image))
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n).collect())
    }

    pub fn reversal(n: usize) -> Permutation {
        Permutation((0..n).rev().collect())
    }

    /// From 1-based images, as written in permutation files.
    pub fn from_one_based(image: &[usize]) -> Result<Permutation> {
        if image.contains(&0) {
            return Err(Error::InvalidParameter("permutation images are 1-based".into()));
        }
        Permutation::new(image.iter().map(|&i| i - 1).collect())
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (j, &i) in self.0.iter().enumerate() {
            inv[i] = j;
        }
        Permutation(inv)
    }

    /// `self` applied after `first`: permuting by `first` then by `self`
    /// equals permuting once by the result.
    pub fn after(&self, first: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| first.0[i]).collect())
    }

    pub fn apply<T: Clone>(&self, word: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| word[i].clone()).collect()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::from_one_based(&v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.to_one_based()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: Matrix,
    parity: Matrix,
    label: String,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]_{} {:?}", self.n(), self.k(), self.field().q(), self.label)
    }
}

impl LinearCode {
    /// Wraps a full-row-rank generator matrix.
    pub fn new(generator: Matrix, label: impl Into<String>) -> Result<LinearCode> {
        if generator.cols() == 0 {
            return Err(Error::InvalidParameter("code length must be >= 1".into()));
        }
        if generator.rows() == 0 {
            return Err(Error::InvalidParameter("code dimension must be >= 1".into()));
        }
        let parity = generator.parity_check()?;
        Ok(LinearCode { generator, parity, label: label.into() })
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> LinearCode {
        self.label = label.into();
        self
    }

    /// Number of codewords `q^k`, saturating.
    pub fn size(&self) -> u128 {
        (self.field().q() as u128).saturating_pow(self.k() as u32)
    }

    /// Same row space, regardless of generator basis.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.field() == other.field()
            && self.n() == other.n()
            && self.k() == other.k()
            && self.generator.rref().0 == other.generator.rref().0
    }

    pub fn encode(&self, msg: &[Symbol]) -> Result<Word> {
        self.generator.left_mul(msg)
    }

    pub fn contains(&self, word: &[Symbol]) -> bool {
        word.len() == self.n()
            && word.iter().all(|&v| self.field().contains(v as u32))
            && self.parity.apply(word).map(|s| s.iter().all(|&v| v == 0)).unwrap_or(false)
    }

    /// Message with lexicographic index `idx`; the first coordinate is the
    /// most significant digit.
    pub fn message(&self, mut idx: u64) -> Vec<Symbol> {
        let q = self.field().q() as u64;
        let mut msg = vec![0; self.k()];
        for d in msg.iter_mut().rev() {
            *d = (idx % q) as Symbol;
            idx /= q;
        }
        msg
    }

    pub fn message_index(&self, msg: &[Symbol]) -> u64 {
        let q = self.field().q() as u64;
        msg.iter().fold(0, |acc, &d| acc * q + d as u64)
    }

    fn check_guard(&self, guard: u64) -> Result<u64> {
        let size = self.size();
        if size > guard as u128 {
            return Err(Error::GuardExceeded { what: "codeword enumeration", needed: size, limit: guard });
        }
        Ok(size as u64)
    }

    /// All `q^k` codewords in lexicographic message order.
    pub fn enumerate_codewords(&self, guard: u64) -> Result<Codewords<'_>> {
        let total = self.check_guard(guard)?;
        Ok(Codewords { code: self, msg: vec![0; self.k()], next: 0, total })
    }

    pub fn codewords(&self, guard: u64) -> Result<Vec<Word>> {
        Ok(self.enumerate_codewords(guard)?.collect())
    }

    /// Codewords for messages `0..limit` in lexicographic order, without a
    /// guard error: used by bounds that stay sound on partial scans.
    pub(crate) fn codewords_prefix(&self, limit: u64) -> Vec<Word> {
        let total = self.size().min(limit as u128) as u64;
        Codewords { code: self, msg: vec![0; self.k()], next: 0, total }.collect()
    }

    /// Column-permuted code: coordinate `j` of a new codeword is coordinate
    /// `perm[j]` of the old one.
    pub fn permute(&self, perm: &Permutation) -> Result<LinearCode> {
        if perm.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "permutation of length {} for a code of length {}",
                perm.len(),
                self.n()
            )));
        }
        let g = self.generator.select_columns(perm.as_slice());
        let parity = self.parity.select_columns(perm.as_slice());
        Ok(LinearCode { generator: g, parity, label: self.label.clone() })
    }

    pub fn reversed(&self) -> LinearCode {
        self.permute(&Permutation::reversal(self.n())).expect("length matches")
    }

    /// Subcode vanishing at `positions` (0-based), with those positions
    /// deleted.
    pub fn shorten(&self, positions: &[usize]) -> Result<LinearCode> {
        let mut pos = positions.to_vec();
        pos.sort_unstable();
        pos.dedup();
        if let Some(&p) = pos.iter().find(|&&p| p >= self.n()) {
            return Err(Error::IndexOutOfRange { index: p, len: self.n() });
        }
        let keep: Vec<usize> = (0..self.n()).filter(|i| pos.binary_search(i).is_err()).collect();
        if keep.is_empty() {
            return Err(Error::InvalidParameter("shortening removes every coordinate".into()));
        }
        // messages m with m * G_pos = 0
        let at = self.generator.select_columns(&pos);
        let msgs = at.transpose().null_space();
        if msgs.rows() == 0 {
            return Err(Error::InvalidParameter("shortened code has dimension 0".into()));
        }
        let g = msgs.mul(&self.generator)?.select_columns(&keep);
        LinearCode::new(g, format!("{} shortened at {:?}", self.label, one_based(&pos)))
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

pub struct Codewords<'a> {
    code: &'a LinearCode,
    msg: Vec<Symbol>,
    next: u64,
    total: u64,
}

impl Iterator for Codewords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.next >= self.total {
            return None;
        }
        let word = self.code.generator.left_mul(&self.msg).expect("message length is k");
        self.next += 1;
        let q = self.code.field().q() as Symbol;
        for d in self.msg.iter_mut().rev() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
        Some(word)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

/// Evaluations of polynomials of degree `< k` at distinct points.
pub fn reed_solomon(field: &Field, points: &[Symbol], k: usize) -> Result<LinearCode> {
    let n = points.len();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k} n={n}")));
    }
    if let Some(&bad) = points.iter().find(|&&p| !field.contains(p as u32)) {
        return Err(Error::ElementOutOfRange { value: bad as u32, q: field.q() });
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("evaluation points must be distinct".into()));
    }
    let mut g = Matrix::zeros(field, k, n);
    for (j, &pt) in points.iter().enumerate() {
        for i in 0..k {
            g.set(i, j, field.pow(pt, i as u64));
        }
    }
    LinearCode::new(g, format!("RS(n={n},k={k}) over F_{}", field.q()))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Value of coordinate `x_var` (1-based, `x_1` most significant) at the
/// point encoded as an `m`-bit integer.
pub fn rm_coordinate(point: usize, var: usize, m: usize) -> bool {
    (point >> (m - var)) & 1 == 1
}

/// Binary Reed-Muller code `RM(u, m)`: evaluations of all monomials of
/// degree `<= u` at the `2^m` points of `F_2^m`.
///
/// `point_order[j]` is the point placed at coordinate `j`; the default is
/// the binary counter order `0..2^m`.
pub fn reed_muller(u: usize, m: usize, point_order: Option<&Permutation>) -> Result<LinearCode> {
    if u > m {
        return Err(Error::InvalidParameter(format!("RM order u={u} exceeds m={m}")));
    }
    if m > 10 {
        return Err(Error::InvalidParameter(format!("m={m} too large")));
    }
    let n = 1usize << m;
    let points: Vec<usize> = match point_order {
        Some(p) if p.len() != n => {
            return Err(Error::DimensionMismatch(format!("point order of length {} for 2^{m} points", p.len())))
        }
        Some(p) => p.as_slice().to_vec(),
        None => (0..n).collect(),
    };
    let field = Field::prime(2)?;
    let mut monomials: Vec<Vec<usize>> = Vec::new();
    for deg in 0..=u {
        push_subsets(1, m, deg, &mut Vec::new(), &mut monomials);
    }
    let mut g = Matrix::zeros(&field, monomials.len(), n);
    for (r, mono) in monomials.iter().enumerate() {
        for (j, &pt) in points.iter().enumerate() {
            if mono.iter().all(|&v| rm_coordinate(pt, v, m)) {
                g.set(r, j, 1);
            }
        }
    }
    LinearCode::new(g, format!("RM({u},{m})"))
}

fn push_subsets(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    for v in start..=m {
        cur.push(v);
        push_subsets(v + 1, m, size, cur, out);
        cur.pop();
    }
}

/// Remainder of `num` by monic `den` over `field`, ascending coefficients.
fn poly_rem(field: &Field, num: &[Symbol], den: &[Symbol]) -> Vec<Symbol> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if c != 0 {
            let nc = field.neg(c);
            for (i, &x) in den.iter().enumerate() {
                r[shift + i] = field.add(r[shift + i], field.mul(nc, x));
            }
        }
        r.pop();
    }
    r
}

/// Cyclic code of length `n` generated by the monic divisor `g` of
/// `x^n - 1`, coefficients ascending (`g[0]` is the constant term).
pub fn cyclic_code(field: &Field, n: usize, g: &[Symbol]) -> Result<LinearCode> {
    let mut g = g.to_vec();
    while g.len() > 1 && g.last() == Some(&0) {
        g.pop();
    }
    if g.is_empty() || g.iter().any(|&c| !field.contains(c as u32)) {
        return Err(Error::InvalidParameter(format!("bad generator polynomial {g:?}")));
    }
    let deg = g.len() - 1;
    if g[deg] != 1 {
        return Err(Error::InvalidParameter("generator polynomial must be monic".into()));
    }
    if deg >= n {
        return Err(Error::InvalidParameter(format!("deg g = {deg} leaves no message symbols for n = {n}")));
    }
    let mut xn1 = vec![0; n + 1];
    xn1[0] = field.neg(1);
    xn1[n] = 1;
    if poly_rem(field, &xn1, &g).iter().any(|&c| c != 0) {
        return Err(Error::InvalidParameter(format!("{g:?} does not divide x^{n} - 1")));
    }
    let k = n - deg;
    let mut gm = Matrix::zeros(field, k, n);
    for i in 0..k {
        for (j, &c) in g.iter().enumerate() {
            gm.set(i, i + j, c);
        }
    }
    LinearCode::new(gm, format!("cyclic n={n} g={g:?} over F_{}", field.q()))
}

/// Left cyclic shift `(c_2, ..., c_n, c_1)`.
pub fn left_shift(word: &[Symbol]) -> Word {
    let mut w = word.to_vec();
    if !w.is_empty() {
        w.rotate_left(1);
    }
    w
}

/// The `[8, 3, 5]` algebraic-geometry code over `F_4` from the Hermitian
/// curve, with its two published coordinate orderings. Ordering 2 places
/// the curve points as `P1 P2 P3 P6 P4 P7 P5 P8`. Omega is 2, omega^2 is 3.
pub fn hermitian_example(ordering: u8) -> Result<LinearCode> {
    let rows: [[Symbol; 8]; 3] = match ordering {
        1 => [[1, 1, 1, 1, 1, 1, 1, 1], [0, 1, 2, 2, 2, 3, 3, 3], [0, 0, 1, 2, 3, 1, 2, 3]],
        2 => [[1, 1, 1, 1, 1, 1, 1, 1], [0, 1, 2, 3, 2, 3, 2, 3], [0, 0, 1, 1, 2, 2, 3, 3]],
        o => return Err(Error::InvalidParameter(format!("hermitian ordering must be 1 or 2, got {o}"))),
    };
    let field = Field::new(2, 2, Some(&[1, 1, 1]))?;
    let rows: Vec<Vec<Symbol>> = rows.iter().map(|r| r.to_vec()).collect();
    LinearCode::new(Matrix::from_rows(&field, &rows, 8)?, format!("hermitian-ordering-{ordering}"))
}

/// Inserts `f . c` at 1-based position `pos` of every codeword `c`.
pub fn agfc_insert(code: &LinearCode, f: &[Symbol], pos: usize) -> Result<LinearCode> {
    let n = code.n();
    if f.len() != n {
        return Err(Error::DimensionMismatch(format!("functional of length {} for length {n}", f.len())));
    }
    if f.iter().all(|&c| c == 0) {
        return Err(Error::InvalidParameter("the inserted functional must be nonzero".into()));
    }
    if let Some(&bad) = f.iter().find(|&&c| !code.field().contains(c as u32)) {
        return Err(Error::ElementOutOfRange { value: bad as u32, q: code.field().q() });
    }
    if pos == 0 || pos > n + 1 {
        return Err(Error::InvalidParameter(format!("insertion position {pos} outside 1..={}", n + 1)));
    }
    let g = code.generator();
    // msg.G.f^T, so the new column is G f^T
    let col = g.apply(f)?;
    let mut out = Matrix::zeros(code.field(), code.k(), n + 1);
    for r in 0..code.k() {
        let mut src = 0;
        for c in 0..=n {
            if c == pos - 1 {
                out.set(r, c, col[r]);
            } else {
                out.set(r, c, g.get(r, src));
                src += 1;
            }
        }
    }
    LinearCode::new(out, format!("{} with f inserted at {pos}", code.label()))
}
