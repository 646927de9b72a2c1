//! Exact distance machinery: Hamming quantities, longest common
//! subsequences, insdel distances, partial ranks and generalized Hamming
//! weights. Everything here is computed by exhaustive enumeration and is the
//! ground truth the bounds are checked against.
//!
//! # No minimum-weight shortcut
//!
//! For Hamming distance a linear code's minimum distance is its minimum
//! nonzero weight, because `d_H(a, b) = wt(a - b)`. That argument does NOT
//! carry over to insdel distance: the LCS of `a` and `b` is not a function
//! of `a - b`. [`insdel_code_exact`] therefore examines every unordered pair
//! of distinct codewords.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{LinearCode, Word};
use crate::error::{Error, Result};
use crate::galois::Symbol;
use crate::linalg::Matrix;

pub const DEFAULT_MAX_SUBSPACES: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordPair {
    pub first: Word,
    pub second: Word,
}

impl WordPair {
    pub fn new(first: Word, second: Word) -> WordPair {
        WordPair { first, second }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsdelResult {
    pub n: usize,
    pub distance: usize,
    pub lcs_length: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_pair: Option<WordPair>,
    /// Lexicographic message indices of the witness pair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_messages: Option<[u64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub common_subsequence: Option<Word>,
    #[serde(default)]
    pub pairs_examined: u64,
}

pub fn hamming_weight(x: &[Symbol]) -> usize {
    x.iter().filter(|&&v| v != 0).count()
}

pub fn hamming_distance(a: &[Symbol], b: &[Symbol]) -> Result<usize> {
    check_len(a, b)?;
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// 0-based indices of nonzero coordinates.
pub fn support(x: &[Symbol]) -> Vec<usize> {
    x.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i).collect()
}

fn check_len(a: &[Symbol], b: &[Symbol]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!("words of length {} and {}", a.len(), b.len())));
    }
    Ok(())
}

/// Classic two-row dynamic program.
pub fn lcs_length<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { cur[j].max(prev[j + 1]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// One longest common subsequence, reconstructed from the full table.
pub fn lcs_subsequence<T: PartialEq + Clone>(a: &[T], b: &[T]) -> Vec<T> {
    let (n, m) = (a.len(), b.len());
    let mut t = vec![vec![0usize; m + 1]; n + 1];
    for i in 0..n {
        for j in 0..m {
            t[i + 1][j + 1] = if a[i] == b[j] { t[i][j] + 1 } else { t[i][j + 1].max(t[i + 1][j]) };
        }
    }
    let mut out = Vec::with_capacity(t[n][m]);
    let (mut i, mut j) = (n, m);
    while i > 0 && j > 0 {
        if a[i - 1] == b[j - 1] {
            out.push(a[i - 1].clone());
            i -= 1;
            j -= 1;
        } else if t[i - 1][j] >= t[i][j - 1] {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    out.reverse();
    out
}

/// Bit-parallel LCS against a fixed word of length <= 64.
///
/// Holds one match mask per symbol value of the fixed word; each query then
/// costs one pass over the other word.
pub(crate) struct LcsMasks {
    masks: Vec<u64>,
    len: usize,
}

impl LcsMasks {
    pub(crate) fn new(word: &[Symbol], q: usize) -> LcsMasks {
        debug_assert!(word.len() <= 64);
        let mut masks = vec![0u64; q];
        for (i, &s) in word.iter().enumerate() {
            masks[s as usize] |= 1 << i;
        }
        LcsMasks { masks, len: word.len() }
    }

    pub(crate) fn lcs(&self, other: &[Symbol]) -> usize {
        let mut v = !0u64;
        for &s in other {
            let u = v & self.masks[s as usize];
            v = v.wrapping_add(u) | v.wrapping_sub(u);
        }
        let live = if self.len == 64 { v } else { v | (!0u64 << self.len) };
        live.count_zeros() as usize
    }
}

pub fn insdel_pair(a: &[Symbol], b: &[Symbol]) -> Result<InsdelResult> {
    check_len(a, b)?;
    let common = lcs_subsequence(a, b);
    let l = common.len();
    Ok(InsdelResult {
        n: a.len(),
        distance: 2 * (a.len() - l),
        lcs_length: l,
        witness_pair: Some(WordPair::new(a.to_vec(), b.to_vec())),
        witness_messages: None,
        common_subsequence: Some(common),
        pairs_examined: 1,
    })
}

/// Pairwise insdel distance as a bare number.
pub fn insdel_distance(a: &[Symbol], b: &[Symbol]) -> Result<usize> {
    check_len(a, b)?;
    Ok(2 * (a.len() - lcs_length(a, b)))
}

const ROW_BATCH: usize = 64;

/// Exact insdel distance of a code: the minimum over all unordered pairs of
/// distinct codewords. The witness is the pair with the lexicographically
/// smallest `(message_1, message_2)` among the minimizers; the result is
/// identical for any number of worker threads.
///
/// The scan stops once a pair at the minimum possible distance 2 is found,
/// so `pairs_examined` may be below `C(q^k, 2)`; see
/// [`insdel_code_exhaustive`] for a scan of every pair.
pub fn insdel_code_exact(code: &LinearCode, guard: u64) -> Result<InsdelResult> {
    insdel_scan(code, guard, true)
}

/// Like [`insdel_code_exact`] but examines all `C(q^k, 2)` pairs.
pub fn insdel_code_exhaustive(code: &LinearCode, guard: u64) -> Result<InsdelResult> {
    insdel_scan(code, guard, false)
}

fn insdel_scan(code: &LinearCode, guard: u64, stop_at_floor: bool) -> Result<InsdelResult> {
    let words = code.codewords(guard)?;
    let n = code.n();
    if words.len() < 2 {
        return Err(Error::InvalidParameter("code has fewer than two codewords".into()));
    }
    let q = code.field().q() as usize;
    let total = words.len();
    // distinct words are at insdel distance >= 2
    let floor = if stop_at_floor { 2usize } else { 0 };

    // Best (distance, j) for row i over j > i; stops at the floor, so the
    // returned j is the smallest attaining the row minimum.
    let row_best = |i: usize| -> (usize, usize, u64) {
        let mut best = (usize::MAX, 0usize);
        let mut examined = 0u64;
        if n <= 64 {
            let masks = LcsMasks::new(&words[i], q);
            for j in i + 1..total {
                examined += 1;
                let d = 2 * (n - masks.lcs(&words[j]));
                if d < best.0 {
                    best = (d, j);
                    if d == floor {
                        break;
                    }
                }
            }
        } else {
            for j in i + 1..total {
                examined += 1;
                let d = 2 * (n - lcs_length(&words[i], &words[j]));
                if d < best.0 {
                    best = (d, j);
                    if d == floor {
                        break;
                    }
                }
            }
        }
        (best.0, best.1, examined)
    };

    let mut best: Option<(usize, usize, usize)> = None;
    let mut examined = 0u64;
    let mut start = 0;
    while start < total - 1 {
        let end = (start + ROW_BATCH).min(total - 1);
        let rows: Vec<(usize, usize, u64)> = (start..end).into_par_iter().map(row_best).collect();
        for (off, (d, j, ex)) in rows.into_iter().enumerate() {
            examined += ex;
            let cand = (d, start + off, j);
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        }
        if best.is_some_and(|b| b.0 == floor) {
            break;
        }
        start = end;
    }
    let (distance, i, j) = best.expect("at least one pair");
    let common = lcs_subsequence(&words[i], &words[j]);
    debug_assert_eq!(distance, 2 * (n - common.len()));
    Ok(InsdelResult {
        n,
        distance,
        lcs_length: common.len(),
        witness_pair: Some(WordPair::new(words[i].clone(), words[j].clone())),
        witness_messages: Some([i as u64, j as u64]),
        common_subsequence: Some(common),
        pairs_examined: examined,
    })
}

/// Minimum Hamming distance by enumeration.
pub fn min_distance(code: &LinearCode, guard: u64) -> Result<usize> {
    Ok(code
        .enumerate_codewords(guard)?
        .map(|w| hamming_weight(&w))
        .filter(|&w| w > 0)
        .min()
        .unwrap_or(0))
}

/// `rank(x, C)`: dimension of the projection of `C` onto `supp(x)`.
pub fn partial_rank(x: &[Symbol], code: &LinearCode) -> Result<usize> {
    if !code.contains(x) {
        return Err(Error::NotACodeword);
    }
    Ok(code.generator().select_columns(&support(x)).rank())
}

/// Whether projecting the code onto the 0-based positions `s` is onto
/// `F_q^{|s|}`.
pub fn is_information_free(code: &LinearCode, s: &[usize]) -> bool {
    if s.len() > code.k() || s.iter().any(|&i| i >= code.n()) {
        return false;
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != s.len() {
        return false;
    }
    code.generator().select_columns(&sorted).rank() == s.len()
}

/// Gaussian binomial coefficient: the number of `r`-dimensional subspaces
/// of `F_q^k`. Saturates at `u128::MAX`.
pub fn gaussian_binomial(k: usize, r: usize, q: u64) -> u128 {
    if r > k {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        let a = q.checked_pow((k - i) as u32).map(|v| v - 1);
        let b = q.pow((i + 1) as u32) - 1;
        match a.and_then(|a| num.checked_mul(a)) {
            Some(v) => num = v,
            None => return u128::MAX,
        }
        den *= b;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Plotkin-type upper bound on `d_r`: `floor(n (q^r - 1) q^(k-r) / (q^k - 1))`.
/// `None` if the intermediate values overflow.
pub fn plotkin_ghw(n: usize, k: usize, q: u64, r: usize) -> Option<u64> {
    if r == 0 || r > k {
        return None;
    }
    let q = q as u128;
    let qk = q.checked_pow(k as u32)?;
    let num = (n as u128).checked_mul(q.checked_pow(r as u32)? - 1)?.checked_mul(q.checked_pow((k - r) as u32)?)?;
    Some((num / (qk - 1)) as u64)
}

/// Exact `d_r`: minimum support size over all `r`-dimensional subcodes,
/// enumerated via canonical RREF message bases.
pub fn ghw_exact(code: &LinearCode, r: usize, guard: u64) -> Result<usize> {
    let k = code.k();
    if r == 0 || r > k {
        return Err(Error::InvalidParameter(format!("need 1 <= r <= k = {k}, got {r}")));
    }
    let count = gaussian_binomial(k, r, code.field().q() as u64);
    if count > guard as u128 {
        return Err(Error::GuardExceeded { what: "subspace enumeration", needed: count, limit: guard });
    }
    Ok(min_subcode_support(code, r))
}

/// `d_1..d_k`; the guard bounds the total number of subspaces visited.
pub fn ghw_profile(code: &LinearCode, guard: u64) -> Result<GhwProfile> {
    let k = code.k();
    let q = code.field().q() as u64;
    let total = (1..=k).fold(0u128, |acc, r| acc.saturating_add(gaussian_binomial(k, r, q)));
    if total > guard as u128 {
        return Err(Error::GuardExceeded { what: "subspace enumeration", needed: total, limit: guard });
    }
    Ok(GhwProfile { values: (1..=k).map(|r| min_subcode_support(code, r)).collect() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhwProfile {
    pub values: Vec<usize>,
}

impl GhwProfile {
    /// `d_r`, 1-based.
    pub fn d(&self, r: usize) -> usize {
        self.values[r - 1]
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }
}

fn combinations(k: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..k {
            cur.push(v);
            rec(v + 1, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, r, &mut Vec::new(), &mut out);
    out
}

fn min_subcode_support(code: &LinearCode, r: usize) -> usize {
    let k = code.k();
    let n = code.n();
    let field = code.field();
    let q = field.q() as Symbol;
    let g: &Matrix = code.generator();
    let blocks = n.div_ceil(64);

    combinations(k, r)
        .into_par_iter()
        .map(|pivots| {
            // free cells: (row, col) right of the row's pivot, not a pivot column
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &p)| (p + 1..k).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
                .collect();
            let mut vals = vec![0 as Symbol; free.len()];
            let mut best = usize::MAX;
            let mut basis = vec![vec![0 as Symbol; k]; r];
            let mut mask = vec![0u64; blocks];
            loop {
                for (i, row) in basis.iter_mut().enumerate() {
                    row.iter_mut().for_each(|v| *v = 0);
                    row[pivots[i]] = 1;
                }
                for (&(i, c), &v) in free.iter().zip(&vals) {
                    basis[i][c] = v;
                }
                mask.iter_mut().for_each(|m| *m = 0);
                for row in &basis {
                    let w = g.left_mul(row).expect("length k");
                    for (j, &s) in w.iter().enumerate() {
                        if s != 0 {
                            mask[j / 64] |= 1 << (j % 64);
                        }
                    }
                }
                let size = mask.iter().map(|m| m.count_ones() as usize).sum::<usize>();
                best = best.min(size);
                // odometer
                let mut idx = 0;
                loop {
                    if idx == vals.len() {
                        return best;
                    }
                    vals[idx] += 1;
                    if vals[idx] < q {
                        break;
                    }
                    vals[idx] = 0;
                    idx += 1;
                }
            }
        })
        .min()
        .expect("at least one pivot set")
}
