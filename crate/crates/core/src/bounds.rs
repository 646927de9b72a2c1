//! Upper bounds on the insdel distance of a linear code.
//!
//! Every calculator returns a [`BoundResult`], including when the bound does
//! not apply, so reports always list the full set. Bounds derived from the
//! information-free-subset argument also carry a witness pair of codewords
//! whose insdel distance is at most the bound.
//!
//! The core construction ([`t21_witness`]): let `S = {i_1 < ... < i_h}` be an
//! information-free coordinate set and `x` a nonzero codeword. Pick `a` in
//! the code with `a_{i_1} = 0` and `a_{i_j} = -(x_{i_2} + ... + x_{i_j})`.
//! Then `(a + x)_{i_{j+1}} = a_{i_j}`, giving `h - 1` shifted matches inside
//! `S`, and every zero of `x` before `i_1` or after `i_h` matches in place.
//! With `n - h - t` such zeros, `lcs(a, a + x) >= n - t - 1`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::codes::{left_shift, reed_muller, binomial, LinearCode, Word};
use crate::error::{Error, Result};
use crate::galois::Symbol;
use crate::linalg::Matrix;
use crate::metrics::{self, hamming_weight, lcs_length, plotkin_ghw, support, GhwProfile, WordPair};
use crate::ordering::rm_t31_ordering;
use crate::Guards;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundName {
    #[serde(rename = "t21_search")]
    T21Search,
    #[serde(rename = "c21")]
    C21,
    #[serde(rename = "c22")]
    C22,
    #[serde(rename = "c23")]
    C23,
    #[serde(rename = "half_singleton")]
    HalfSingleton,
    #[serde(rename = "c24_exact")]
    C24Exact,
    #[serde(rename = "c24_plotkin")]
    C24Plotkin,
    #[serde(rename = "direct_2dH")]
    Direct2dH,
    #[serde(rename = "singleton_2nk1")]
    Singleton2nk1,
    #[serde(rename = "cz21_2nk")]
    Cz212nk,
    #[serde(rename = "t31_rm")]
    T31Rm,
    #[serde(rename = "p41")]
    P41,
}

impl BoundName {
    pub const ALL: [BoundName; 12] = [
        BoundName::T21Search,
        BoundName::C21,
        BoundName::C22,
        BoundName::C23,
        BoundName::HalfSingleton,
        BoundName::C24Exact,
        BoundName::C24Plotkin,
        BoundName::Direct2dH,
        BoundName::Singleton2nk1,
        BoundName::Cz212nk,
        BoundName::T31Rm,
        BoundName::P41,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundName::T21Search => "t21_search",
            BoundName::C21 => "c21",
            BoundName::C22 => "c22",
            BoundName::C23 => "c23",
            BoundName::HalfSingleton => "half_singleton",
            BoundName::C24Exact => "c24_exact",
            BoundName::C24Plotkin => "c24_plotkin",
            BoundName::Direct2dH => "direct_2dH",
            BoundName::Singleton2nk1 => "singleton_2nk1",
            BoundName::Cz212nk => "cz21_2nk",
            BoundName::T31Rm => "t31_rm",
            BoundName::P41 => "p41",
        }
    }

    /// Whether the value depends only on quantities preserved by every
    /// coordinate permutation.
    pub fn ordering_free(self) -> bool {
        !matches!(self, BoundName::T21Search | BoundName::C21 | BoundName::C22 | BoundName::T31Rm)
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub name: BoundName,
    /// Even upper bound on the insdel distance; `None` when inapplicable
    /// and no value could be formed.
    pub value: Option<u64>,
    pub applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WordPair>,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
}

impl BoundResult {
    fn holds(name: BoundName, value: u64) -> BoundResult {
        BoundResult { name, value: Some(value), applicable: true, reason: None, witness: None, params: BTreeMap::new() }
    }

    fn not_applicable(name: BoundName, reason: impl Into<String>) -> BoundResult {
        BoundResult {
            name,
            value: None,
            applicable: false,
            reason: Some(reason.into()),
            witness: None,
            params: BTreeMap::new(),
        }
    }

    fn param(mut self, key: &str, v: impl Serialize) -> BoundResult {
        self.params.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
        self
    }

    fn with_witness(mut self, w: Option<WordPair>) -> BoundResult {
        self.witness = w;
        self
    }

    /// The value if the bound applies.
    pub fn applicable_value(&self) -> Option<u64> {
        if self.applicable {
            self.value
        } else {
            None
        }
    }
}

/// `max(2x, 2)`: all bound values are even and at least 2.
fn even_bound(x: i64) -> u64 {
    (2 * x).max(2) as u64
}

/// Lazily shared exact data for one code: the codeword list, `d_H` and the
/// GHW profile, each subject to its guard.
pub struct CodeFacts<'a> {
    code: &'a LinearCode,
    guards: Guards,
    words: Option<Vec<Word>>,
    complete: bool,
    ghw: Option<std::result::Result<GhwProfile, Error>>,
}

impl<'a> CodeFacts<'a> {
    pub fn new(code: &'a LinearCode, guards: Guards) -> CodeFacts<'a> {
        CodeFacts { code, guards, words: None, complete: false, ghw: None }
    }

    /// Codewords in message order: all of them when within the guard,
    /// otherwise the first `max_codewords`.
    fn words(&mut self) -> (&[Word], bool) {
        if self.words.is_none() {
            let complete = self.code.size() <= self.guards.max_codewords as u128;
            self.words = Some(self.code.codewords_prefix(self.guards.max_codewords));
            self.complete = complete;
        }
        (self.words.as_deref().unwrap(), self.complete)
    }

    pub fn min_distance(&mut self) -> Option<usize> {
        let (words, complete) = self.words();
        if !complete {
            return None;
        }
        words.iter().map(|w| hamming_weight(w)).filter(|&w| w > 0).min()
    }

    pub fn ghw(&mut self) -> std::result::Result<&GhwProfile, &Error> {
        if self.ghw.is_none() {
            self.ghw = Some(metrics::ghw_profile(self.code, self.guards.max_subspaces));
        }
        self.ghw.as_ref().unwrap().as_ref()
    }
}

fn guard_reason(code: &LinearCode, guards: &Guards) -> String {
    format!("q^k = {} exceeds the codeword guard {}", code.size(), guards.max_codewords)
}

/// Constructs `(a, a + x)` for an information-free set `s` (0-based,
/// increasing) and a nonzero codeword `x` with at least `n - |s| - t` zeros
/// outside `[s_first, s_last]`. Guarantees `lcs(a, a + x) >= n - t - 1`.
pub fn t21_witness(code: &LinearCode, x: &[Symbol], s: &[usize], t: usize) -> Result<WordPair> {
    let n = code.n();
    let f = code.field();
    if s.is_empty() {
        return Err(Error::InvalidParameter("information-free set must be nonempty".into()));
    }
    if s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("information-free set must be strictly increasing".into()));
    }
    if !metrics::is_information_free(code, s) {
        return Err(Error::InvalidParameter(format!("{:?} is not information free", one_based(s))));
    }
    if !code.contains(x) {
        return Err(Error::NotACodeword);
    }
    if x.iter().all(|&v| v == 0) {
        return Err(Error::InvalidParameter("x must be a nonzero codeword".into()));
    }
    let (first, last) = (s[0], *s.last().unwrap());
    let outside_zeros = x[..first].iter().chain(&x[last + 1..]).filter(|&&v| v == 0).count();
    let needed = n as i64 - s.len() as i64 - t as i64;
    if (outside_zeros as i64) < needed {
        return Err(Error::InvalidParameter(format!(
            "x has {outside_zeros} zeros outside the set's span, {needed} required"
        )));
    }
    // a_{i_1} = 0, a_{i_j} = a_{i_{j-1}} - x_{i_j}
    let mut target = Vec::with_capacity(s.len());
    let mut acc: Symbol = 0;
    target.push(acc);
    for &i in &s[1..] {
        acc = f.sub(acc, x[i]);
        target.push(acc);
    }
    let gs = code.generator().select_columns(s);
    let msg = gs
        .transpose()
        .solve(&target)?
        .ok_or_else(|| Error::Internal("no codeword with the prescribed values on an information-free set".into()))?;
    let a = code.encode(&msg)?;
    let b: Word = a.iter().zip(x).map(|(&u, &v)| f.add(u, v)).collect();
    let l = lcs_length(&a, &b);
    if l + t + 1 < n {
        return Err(Error::Internal(format!("witness lcs {l} below n - t - 1 = {}", n as i64 - t as i64 - 1)));
    }
    Ok(WordPair::new(a, b))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

/// Greedy information-free subset (left-to-right pivots) of the given
/// columns, returned as 0-based code positions.
fn pivot_columns(g: &Matrix, cols: &[usize]) -> Vec<usize> {
    g.select_columns(cols).rref().1.into_iter().map(|j| cols[j]).collect()
}

/// Minimizes `2(n - h - z + 1)` over nonzero codewords `x` and windows
/// `[a, b]`, where `h` is the column rank of the window and `z` the number
/// of zeros of `x` outside it.
pub fn t21_bound_search(code: &LinearCode, guards: &Guards) -> BoundResult {
    t21_with(code, &mut CodeFacts::new(code, *guards))
}

fn t21_with(code: &LinearCode, facts: &mut CodeFacts<'_>) -> BoundResult {
    let n = code.n();
    let g = code.generator();
    // window ranks, rank[a][b] for a <= b
    let mut rank = vec![vec![0usize; n]; n];
    for (a, row) in rank.iter_mut().enumerate() {
        let mut prev = 0;
        for (b, slot) in row.iter_mut().enumerate().skip(a) {
            // ranks only grow by at most one per column and are capped at k
            if prev < code.k() {
                prev = g.select_columns(&(a..=b).collect::<Vec<_>>()).rank();
            }
            *slot = prev;
        }
    }
    let (words, complete) = facts.words();
    // (n - h - z, message, a, b)
    let best = words
        .par_iter()
        .enumerate()
        .skip(1)
        .filter_map(|(idx, x)| {
            if x.iter().all(|&v| v == 0) {
                return None;
            }
            let mut zp = vec![0usize; n + 1];
            for i in 0..n {
                zp[i + 1] = zp[i] + usize::from(x[i] == 0);
            }
            let mut local: Option<(usize, usize, usize, usize)> = None;
            for a in 0..n {
                for b in a..n {
                    let z = zp[a] + (zp[n] - zp[b + 1]);
                    let t = n - rank[a][b] - z;
                    let cand = (t, idx, a, b);
                    if local.is_none_or(|l| cand < l) {
                        local = Some(cand);
                    }
                }
            }
            local
        })
        .min();
    let Some((t, idx, a, b)) = best else {
        return BoundResult::not_applicable(BoundName::T21Search, "code has no nonzero codeword in scan");
    };
    let x = &words[idx];
    let h = rank[a][b];
    let z = n - h - t;
    let s = pivot_columns(g, &(a..=b).collect::<Vec<_>>());
    let witness = if s.is_empty() { None } else { t21_witness(code, x, &s, t).ok() };
    let mut r = BoundResult::holds(BoundName::T21Search, even_bound(t as i64 + 1))
        .with_witness(witness)
        .param("x", x)
        .param("window", [a + 1, b + 1])
        .param("h", h)
        .param("z", z)
        .param("t", t)
        .param("information_free_set", one_based(&s));
    if !complete {
        r = r.param("scan", "partial").param("codewords_scanned", words.len());
    }
    r
}

/// Minimum over nonzero codewords of `2(L(x) - S(x) - rank(x, C) + 2)`.
pub fn c21_bound(code: &LinearCode, guards: &Guards) -> BoundResult {
    c21_with(code, &mut CodeFacts::new(code, *guards))
}

fn c21_with(code: &LinearCode, facts: &mut CodeFacts<'_>) -> BoundResult {
    let g = code.generator();
    let (words, complete) = facts.words();
    // (L - S - rank, message)
    let best = words
        .par_iter()
        .enumerate()
        .skip(1)
        .filter_map(|(idx, x)| {
            let supp = support(x);
            let (&s, &l) = (supp.first()?, supp.last()?);
            let rank = g.select_columns(&supp).rank();
            Some((l + 1 - s - rank, idx))
        })
        .min();
    let Some((span_minus_rank, idx)) = best else {
        return BoundResult::not_applicable(BoundName::C21, "code has no nonzero codeword in scan");
    };
    let x = &words[idx];
    let supp = support(x);
    let (s, l) = (supp[0], *supp.last().unwrap());
    let rank = l + 1 - s - span_minus_rank;
    let info = pivot_columns(g, &supp);
    let witness = t21_witness(code, x, &info, span_minus_rank).ok();
    let mut r = BoundResult::holds(BoundName::C21, even_bound(span_minus_rank as i64 + 1))
        .with_witness(witness)
        .param("x", x)
        .param("S", s + 1)
        .param("L", l + 1)
        .param("wt", supp.len())
        .param("rank", rank)
        .param("consecutive", l - s + 1 == supp.len());
    if !complete {
        r = r.param("scan", "partial").param("codewords_scanned", words.len());
    }
    r
}

/// Scales `x` so its last nonzero coordinate is 1.
fn normalize(code: &LinearCode, x: &[Symbol]) -> Word {
    let f = code.field();
    let Some(&last) = x.iter().rev().find(|&&v| v != 0) else {
        return x.to_vec();
    };
    let inv = f.inv(last).expect("nonzero");
    x.iter().map(|&v| f.mul(v, inv)).collect()
}

/// `2(d_H - k + 1)` when `d_H > n/2` and some minimum-weight codeword has
/// consecutive support.
pub fn c22_bound(code: &LinearCode, guards: &Guards) -> BoundResult {
    c22_with(code, &mut CodeFacts::new(code, *guards))
}

fn c22_with(code: &LinearCode, facts: &mut CodeFacts<'_>) -> BoundResult {
    let (n, k) = (code.n(), code.k());
    let Some(d) = facts.min_distance() else {
        return BoundResult::not_applicable(BoundName::C22, guard_reason(code, &facts.guards));
    };
    let formula = 2 * (d as i64 - k as i64 + 1);
    let (words, _) = facts.words();
    let consecutive = words
        .iter()
        .filter(|w| hamming_weight(w) == d)
        .filter_map(|w| {
            let supp = support(w);
            (supp.last().unwrap() - supp[0] + 1 == d).then(|| (supp[0], normalize(code, w)))
        })
        .min();
    let base = |r: BoundResult| r.param("d_H", d).param("k", k).param("n", n);
    if 2 * d <= n {
        return base(BoundResult::not_applicable(BoundName::C22, format!("d_H = {d} is not greater than n/2")));
    }
    let Some((_, x)) = consecutive else {
        return base(BoundResult::not_applicable(
            BoundName::C22,
            format!("no weight-{d} codeword has consecutive index support"),
        ));
    };
    let supp = support(&x);
    let info = pivot_columns(code.generator(), &supp);
    let witness = t21_witness(code, &x, &info, d - info.len()).ok();
    base(BoundResult::holds(BoundName::C22, formula.max(2) as u64))
        .with_witness(witness)
        .param("x", &x)
        .param("rank", info.len())
}

/// `2(n - 2k + 2)` if `d_H >= k`, else `2(n - k - d_H + 2)`.
pub fn c23_bound(code: &LinearCode, guards: &Guards) -> BoundResult {
    c23_with(code, &mut CodeFacts::new(code, *guards))
}

fn c23_with(code: &LinearCode, facts: &mut CodeFacts<'_>) -> BoundResult {
    let (n, k) = (code.n() as i64, code.k() as i64);
    let data_free = even_bound((n - 2 * k + 2).max(k - 1));
    let Some(d) = facts.min_distance() else {
        return BoundResult::not_applicable(BoundName::C23, guard_reason(code, &facts.guards))
            .param("data_free_value", data_free);
    };
    let d = d as i64;
    // zeros forced on the first `prefix` positions, information set after them
    let (branch, value, prefix) = if d >= k {
        ("d_H >= k", n - 2 * k + 2, k - 1)
    } else {
        ("d_H <= k - 1", n - k - d + 2, d - 1)
    };
    let g = code.generator();
    let prefix = prefix as usize;
    let witness = (|| {
        let head: Vec<usize> = (0..prefix).collect();
        let msgs = g.select_columns(&head).transpose().null_space();
        let msg = msgs.row_vecs().into_iter().next()?;
        let x = code.encode(&msg).ok()?;
        let tail: Vec<usize> = (prefix..code.n()).collect();
        let s = pivot_columns(g, &tail);
        t21_witness(code, &x, &s, (value - 1) as usize).ok()
    })();
    BoundResult::holds(BoundName::C23, even_bound(value))
        .with_witness(witness)
        .param("branch", branch)
        .param("d_H", d)
        .param("data_free_value", data_free)
}

/// `max(2(n - 2k + 2), 2)`.
pub fn half_singleton_bound(code: &LinearCode) -> BoundResult {
    let (n, k) = (code.n() as i64, code.k() as i64);
    let mut r = BoundResult::holds(BoundName::HalfSingleton, even_bound(n - 2 * k + 2));
    if 2 * k > n {
        if let Ok(search) = half_singleton_witness(code) {
            r = r.with_witness(search.pair).param("shift_solutions_dim", search.null_dim);
        }
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftPairSearch {
    /// `(x, left_shift(x))`, both codewords, `x` non-constant.
    pub pair: Option<WordPair>,
    /// Dimension of the space of codewords whose cyclic shift is a codeword.
    pub null_dim: usize,
    pub diagnostic: Option<String>,
}

/// For `2k > n`: a codeword `x` whose left cyclic shift is also a codeword,
/// found in the null space of the parity-check matrix `H` stacked over its
/// column-rotated copy `(h_2, ..., h_n, h_1)`.
pub fn half_singleton_witness(code: &LinearCode) -> Result<ShiftPairSearch> {
    let (n, k) = (code.n(), code.k());
    if 2 * k <= n {
        return Err(Error::InvalidParameter(format!("shift-pair construction needs 2k > n, got n={n} k={k}")));
    }
    let h = code.parity_check();
    let rotated: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let stacked = h.vstack(&h.select_columns(&rotated))?;
    let basis = stacked.null_space();
    // A null vector v lies in C and so does its right shift, hence the pair
    // (right_shift(v), v) has the second entry equal to the left shift of
    // the first.
    let found = basis.row_vecs().into_iter().find(|v| v.iter().any(|&s| s != v[0]));
    let (pair, diagnostic) = match found {
        Some(v) => {
            let mut x = v.clone();
            x.rotate_right(1);
            debug_assert_eq!(left_shift(&x), v);
            (Some(WordPair::new(x, v)), None)
        }
        None => (
            None,
            Some(format!(
                "all {} shift-closed solutions are constant vectors, which are fixed by the shift",
                basis.rows()
            )),
        ),
    };
    Ok(ShiftPairSearch { pair, null_dim: basis.rows(), diagnostic })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GhwSource {
    Exact,
    Plotkin,
}

/// `min_r max(2(d_r - 2r + 2), 2)` with `d_r` exact or from the Plotkin
/// bound `floor(n (q^r - 1) q^(k-r) / (q^k - 1))`.
pub fn c24_bound(code: &LinearCode, mode: GhwSource, guards: &Guards) -> BoundResult {
    c24_with(code, mode, &mut CodeFacts::new(code, *guards))
}

fn c24_with(code: &LinearCode, mode: GhwSource, facts: &mut CodeFacts<'_>) -> BoundResult {
    let (n, k, q) = (code.n(), code.k(), code.field().q() as u64);
    let name = match mode {
        GhwSource::Exact => BoundName::C24Exact,
        GhwSource::Plotkin => BoundName::C24Plotkin,
    };
    let ds: Vec<u64> = match mode {
        GhwSource::Exact => match facts.ghw() {
            Ok(p) => p.values.iter().map(|&d| d as u64).collect(),
            Err(e) => return BoundResult::not_applicable(name, e.to_string()),
        },
        GhwSource::Plotkin => match (1..=k).map(|r| plotkin_ghw(n, k, q, r)).collect::<Option<Vec<_>>>() {
            Some(v) => v,
            None => return BoundResult::not_applicable(name, "Plotkin quantity overflows"),
        },
    };
    gwh_min(name, &ds)
}

fn gwh_min(name: BoundName, ds: &[u64]) -> BoundResult {
    let terms: Vec<u64> = ds.iter().enumerate().map(|(i, &d)| even_bound(d as i64 - 2 * (i as i64 + 1) + 2)).collect();
    let (best_r, best) = terms.iter().enumerate().min_by_key(|&(i, &v)| (v, i)).map(|(i, &v)| (i + 1, v)).unwrap();
    BoundResult::holds(name, best).param("d_r", ds).param("terms", &terms).param("r", best_r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RmFormula {
    pub value: u64,
    pub rank: u64,
    pub weight: u64,
}

/// `2(1 + sum_{j=u+1}^{m-u} C(m-u, j))` for `RM(u, m)` with `u < m/2`,
/// cross-checked against `2(2^(m-u) - rank + 1)`.
pub fn t31_rm_bound(u: usize, m: usize) -> Result<BoundResult> {
    if 2 * u >= m {
        return Err(Error::InvalidParameter(format!("need u < m/2, got u={u} m={m}")));
    }
    let r = rm_formula(u, m)?;
    let mut res = BoundResult::holds(BoundName::T31Rm, r.value)
        .param("u", u)
        .param("m", m)
        .param("rank", r.rank)
        .param("weight", r.weight);
    if m % 2 == 1 && u + 1 == (m - 1) / 2 {
        let m1 = ((m - 1) / 2) as u64;
        res = res
            .param("closed_form", m1 * m1 + 5 * m1 + 10)
            .param("printed_closed_form_times_two", m1 * m1 + 5 * m1 + 8);
    }
    Ok(res)
}

fn rm_formula(u: usize, m: usize) -> Result<RmFormula> {
    let mu = (m - u) as u64;
    let tail: u64 = ((u as u64 + 1)..=mu).map(|j| binomial(mu, j)).sum();
    let value = 2 * (1 + tail);
    let rank: u64 = (0..=u as u64).map(|j| binomial(mu, j)).sum();
    let weight = 1u64 << mu;
    if value != 2 * (weight - rank + 1) {
        return Err(Error::Internal(format!("RM identity failed for u={u} m={m}")));
    }
    Ok(RmFormula { value, rank, weight })
}

/// Per-`r` values for a rearranged cyclic code whose GHWs meet the Plotkin
/// bound, and for its coordinate-inserted extension (`+1` on each `d_r`).
pub fn p41_bounds(n: usize, k: usize, q: u64) -> (Vec<BoundResult>, Vec<BoundResult>) {
    let mut cyclic = Vec::new();
    let mut agfc = Vec::new();
    for r in 1..=k {
        let Some(d) = plotkin_ghw(n, k, q, r) else { continue };
        let base = d as i64 - 2 * r as i64;
        cyclic.push(BoundResult::holds(BoundName::P41, even_bound(base + 2)).param("r", r).param("d_r", d).param("variant", "cyclic"));
        agfc.push(BoundResult::holds(BoundName::P41, even_bound(base + 3)).param("r", r).param("d_r", d).param("variant", "agfc"));
    }
    (cyclic, agfc)
}

fn p41_with(code: &LinearCode, facts: &mut CodeFacts<'_>) -> BoundResult {
    let (n, k, q) = (code.n(), code.k(), code.field().q() as u64);
    let profile = match facts.ghw() {
        Ok(p) => p.clone(),
        Err(e) => return BoundResult::not_applicable(BoundName::P41, e.to_string()),
    };
    let qk = (q as u128).pow(k as u32);
    let meets = (1..=k).all(|r| {
        let num = n as u128 * (qk - (q as u128).pow((k - r) as u32));
        num % (qk - 1) == 0 && (num / (qk - 1)) as usize == profile.d(r)
    });
    if !meets {
        return BoundResult::not_applicable(BoundName::P41, "generalized Hamming weights do not meet the Plotkin bound")
            .param("d_r", &profile.values);
    }
    let (cyclic, agfc) = p41_bounds(n, k, q);
    let values: Vec<u64> = cyclic.iter().filter_map(|b| b.value).collect();
    let agfc_values: Vec<u64> = agfc.iter().filter_map(|b| b.value).collect();
    let best = *values.iter().min().expect("k >= 1");
    BoundResult::holds(BoundName::P41, best)
        .param("cyclic_terms", values)
        .param("agfc_terms", agfc_values)
        .param("d_r", &profile.values)
}

/// `2 d_H`, `2(n - k + 1)` and `2(n - k)` (the last for `n > k >= 2`).
pub fn direct_bounds(code: &LinearCode, min_distance: Option<usize>) -> [BoundResult; 3] {
    let (n, k) = (code.n() as i64, code.k() as i64);
    let dh = match min_distance {
        Some(d) => BoundResult::holds(BoundName::Direct2dH, even_bound(d as i64)).param("d_H", d),
        None => BoundResult::not_applicable(BoundName::Direct2dH, "minimum distance not computed"),
    };
    let singleton = BoundResult::holds(BoundName::Singleton2nk1, even_bound(n - k + 1));
    let cz = if n > k && k >= 2 {
        BoundResult::holds(BoundName::Cz212nk, even_bound(n - k))
    } else {
        BoundResult::not_applicable(BoundName::Cz212nk, format!("needs n > k >= 2, got n={n} k={k}"))
    };
    [dh, singleton, cz]
}

/// Applies only when the code is exactly `RM(u, m)` under the ordering that
/// puts the `x_1 ... x_u = 1` block last.
fn t31_with(code: &LinearCode) -> BoundResult {
    let n = code.n();
    if code.field().q() != 2 || !n.is_power_of_two() || n < 2 {
        return BoundResult::not_applicable(BoundName::T31Rm, "not a binary code of length 2^m");
    }
    let m = n.trailing_zeros() as usize;
    for u in 1..m.div_ceil(2) {
        let k: u64 = (0..=u as u64).map(|j| binomial(m as u64, j)).sum();
        if k as usize != code.k() {
            continue;
        }
        let Ok(order) = rm_t31_ordering(u, m) else { continue };
        let Ok(rm) = reed_muller(u, m, Some(&order)) else { continue };
        if rm.same_code(code) {
            return t31_rm_bound(u, m).unwrap_or_else(|e| BoundResult::not_applicable(BoundName::T31Rm, e.to_string()));
        }
    }
    BoundResult::not_applicable(BoundName::T31Rm, "not RM(u, m) with u < m/2 under the block-last ordering")
}

/// All twelve bounds, in a fixed order.
pub fn all_bounds(code: &LinearCode, guards: &Guards) -> Vec<BoundResult> {
    let mut facts = CodeFacts::new(code, *guards);
    all_bounds_with(code, &mut facts)
}

pub fn all_bounds_with(code: &LinearCode, facts: &mut CodeFacts<'_>) -> Vec<BoundResult> {
    let d = facts.min_distance();
    let [dh, singleton, cz] = direct_bounds(code, d);
    vec![
        t21_with(code, facts),
        c21_with(code, facts),
        c22_with(code, facts),
        c23_with(code, facts),
        half_singleton_bound(code),
        c24_with(code, GhwSource::Exact, facts),
        c24_with(code, GhwSource::Plotkin, facts),
        dh,
        singleton,
        cz,
        t31_with(code),
        p41_with(code, facts),
    ]
}

/// Smallest applicable bound value.
pub fn best_bound(bounds: &[BoundResult]) -> Option<(BoundName, u64)> {
    bounds.iter().filter_map(|b| b.applicable_value().map(|v| (v, b.name))).min().map(|(v, n)| (n, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{cyclic_code, hermitian_example, reed_solomon};
    use crate::galois::Field;
    use crate::metrics::{insdel_code_exact, insdel_distance};
    use serde_json::json;

    fn g() -> Guards {
        Guards::default()
    }

    fn value(b: &BoundResult) -> u64 {
        assert!(b.applicable, "{b:?}");
        b.value.unwrap()
    }

    #[test]
    fn hermitian_ordering_one() {
        let h = hermitian_example(1).unwrap();
        let c22 = c22_bound(&h, &g());
        assert_eq!(value(&c22), 6);
        assert_eq!(c22.params["x"], json!([3, 2, 1, 1, 1, 0, 0, 0]));
        assert!(insdel_distance(&c22.witness.as_ref().unwrap().first, &c22.witness.as_ref().unwrap().second).unwrap() <= 6);
        let c21 = c21_bound(&h, &g());
        assert_eq!(value(&c21), 6);
        assert_eq!(value(&half_singleton_bound(&h)), 8);
        let c24 = c24_bound(&h, GhwSource::Exact, &g());
        assert_eq!(value(&c24), 8);
        assert_eq!(c24.params["terms"], json!([10, 10, 8]));
        assert_eq!(value(&c23_bound(&h, &g())), 8);
        let t21 = t21_bound_search(&h, &g());
        assert!(value(&t21) <= 6);
        let [dh, single, cz] = direct_bounds(&h, Some(5));
        assert_eq!((value(&dh), value(&single), value(&cz)), (10, 12, 10));
    }

    #[test]
    fn hermitian_ordering_two_c22_inapplicable() {
        let h = hermitian_example(2).unwrap();
        let c22 = c22_bound(&h, &g());
        assert!(!c22.applicable);
        assert!(c22.reason.unwrap().contains("consecutive"));
    }

    #[test]
    fn repetition_c22() {
        let f2 = Field::prime(2).unwrap();
        let rep = LinearCode::new(Matrix::from_rows(&f2, &[vec![1, 1]], 2).unwrap(), "rep").unwrap();
        assert_eq!(value(&c22_bound(&rep, &g())), 4);
    }

    #[test]
    fn c23_hamming_branch() {
        // [7,4,3] Hamming code, cyclic with g = 1 + x + x^3
        let f2 = Field::prime(2).unwrap();
        let ham = cyclic_code(&f2, 7, &[1, 1, 0, 1]).unwrap();
        let c23 = c23_bound(&ham, &g());
        assert_eq!(value(&c23), 4);
        assert_eq!(c23.params["branch"], json!("d_H <= k - 1"));
        assert!(insdel_code_exact(&ham, 100).unwrap().distance <= 4);
        assert!(c23.witness.is_some());
    }

    #[test]
    fn half_singleton_cases() {
        let f2 = Field::prime(2).unwrap();
        let even = cyclic_code(&f2, 3, &[1, 1]).unwrap();
        let s = half_singleton_witness(&even).unwrap();
        let pair = s.pair.unwrap();
        assert!(even.contains(&pair.first) && even.contains(&pair.second));
        assert_eq!(pair.second, left_shift(&pair.first));
        assert_eq!(insdel_distance(&pair.first, &pair.second).unwrap(), 2);
        let full = LinearCode::new(Matrix::identity(&f2, 4), "full").unwrap();
        assert!(half_singleton_witness(&full).unwrap().pair.is_some());
        // the shift-closed solutions of this [3,2] code are only (1,1,1)
        let g = Matrix::from_rows(&f2, &[vec![1, 1, 1], vec![0, 1, 0]], 3).unwrap();
        let c = LinearCode::new(g, "degenerate").unwrap();
        let s = half_singleton_witness(&c).unwrap();
        assert!(s.pair.is_none());
        assert!(s.diagnostic.is_some());
        let rep = cyclic_code(&f2, 3, &[1, 1, 1]).unwrap();
        assert!(half_singleton_witness(&rep).is_err());
        assert_eq!(value(&half_singleton_bound(&rep)), 6);
        // 2k = n + 1
        assert_eq!(value(&half_singleton_bound(&even)), 2);
    }

    #[test]
    fn t21_witness_examples() {
        let h = hermitian_example(1).unwrap();
        let x = vec![3, 2, 1, 1, 1, 0, 0, 0];
        let pair = t21_witness(&h, &x, &[0, 1, 2], 2).unwrap();
        assert!(lcs_length(&pair.first, &pair.second) >= 5);
        assert!(h.contains(&pair.first) && h.contains(&pair.second));
        assert!(t21_witness(&h, &x, &[0, 1, 2, 3], 2).is_err());
        assert!(t21_witness(&h, &x, &[5, 6, 7], 0).is_err());
        // single point: t = n - 1 - z
        let zeros = x[1..].iter().filter(|&&v| v == 0).count();
        let pair = t21_witness(&h, &x, &[0], 8 - 1 - zeros).unwrap();
        assert!(lcs_length(&pair.first, &pair.second) >= zeros);

        let f5 = Field::prime(5).unwrap();
        let rs = reed_solomon(&f5, &[0, 1, 2, 3], 2).unwrap();
        // x vanishing at the first k - 1 = 1 positions; S = {2, 3} (1-based)
        let x = rs.codewords(100).unwrap().into_iter().find(|w| w[0] == 0 && w.iter().any(|&v| v != 0)).unwrap();
        let pair = t21_witness(&rs, &x, &[1, 2], 1).unwrap();
        assert!(insdel_distance(&pair.first, &pair.second).unwrap() <= 4);
    }

    #[test]
    fn t21_reproduces_mds_half_singleton() {
        let f7 = Field::prime(7).unwrap();
        let rs = reed_solomon(&f7, &[1, 2, 3, 4, 5, 6], 3).unwrap();
        assert!(value(&t21_bound_search(&rs, &g())) <= 2 * (6 - 6 + 2));
    }

    #[test]
    fn c24_examples() {
        let h = hermitian_example(1).unwrap();
        let p = c24_bound(&h, GhwSource::Plotkin, &g());
        // Plotkin d_r for (8,3,4): 6, 7, 8
        assert_eq!(p.params["d_r"], json!([6, 7, 8]));
        assert_eq!(value(&p), 8);
        // d_2 = d_1 + 1 with d_1 < n - 2k + 3
        assert_eq!(gwh_min(BoundName::C24Exact, &[3, 4, 9, 10]).value, Some(4));
    }

    #[test]
    fn t31_values() {
        assert_eq!(value(&t31_rm_bound(1, 4).unwrap()), 10);
        assert_eq!(value(&t31_rm_bound(2, 5).unwrap()), 4);
        assert_eq!(value(&t31_rm_bound(1, 3).unwrap()), 4);
        assert!(t31_rm_bound(2, 4).is_err());
        for m1 in 2..6usize {
            let b = t31_rm_bound(m1 - 1, 2 * m1 + 1).unwrap();
            let m1 = m1 as u64;
            assert_eq!(value(&b), m1 * m1 + 5 * m1 + 10);
        }
    }

    #[test]
    fn p41_values() {
        let (cyc, agfc) = p41_bounds(7, 3, 2);
        let c: Vec<u64> = cyc.iter().map(|b| b.value.unwrap()).collect();
        let a: Vec<u64> = agfc.iter().map(|b| b.value.unwrap()).collect();
        // Plotkin d_r: 4, 6, 7
        assert_eq!(c, vec![8, 8, 6]);
        assert_eq!(a, vec![10, 10, 8]);
        // r = k: 2(n - 2k + 2)
        let (cyc, _) = p41_bounds(15, 4, 2);
        assert_eq!(cyc.last().unwrap().value, Some(2 * (15 - 8 + 2)));
    }

    #[test]
    fn all_bounds_lists_twelve() {
        let h = hermitian_example(1).unwrap();
        let b = all_bounds(&h, &g());
        assert_eq!(b.iter().map(|r| r.name).collect::<Vec<_>>(), BoundName::ALL.to_vec());
        let simplex = {
            let f2 = Field::prime(2).unwrap();
            // [7,3] simplex code: cyclic, g = 1 + x + x^2 + x^4 (parity of Hamming)
            cyclic_code(&f2, 7, &[1, 1, 1, 0, 1]).unwrap()
        };
        let b = all_bounds(&simplex, &g());
        let p41 = b.iter().find(|r| r.name == BoundName::P41).unwrap();
        assert!(p41.applicable, "{p41:?}");
    }
}
