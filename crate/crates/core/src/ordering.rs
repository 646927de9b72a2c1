//! Coordinate orderings: the special Reed-Muller point orders and a search
//! over column permutations for an insdel objective.

use std::cmp::Reverse;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{c21_bound, t21_bound_search};
use crate::codes::{rm_coordinate, LinearCode, Permutation};
use crate::error::{Error, Result};
use crate::metrics::insdel_code_exact;
use crate::report::{analyze, AnalysisOptions, AnalysisReport};
use crate::Guards;

/// `x_1 = 0` points first, then `x_1 = 1`, each in binary counter order.
pub fn rm_hyperplane_ordering(m: usize) -> Result<Permutation> {
    rm_split_ordering(m, 1)
}

/// Points with `x_var = 0` first, then `x_var = 1` (`var` is 1-based).
pub fn rm_split_ordering(m: usize, var: usize) -> Result<Permutation> {
    if m == 0 || var == 0 || var > m {
        return Err(Error::InvalidParameter(format!("need 1 <= var <= m, got var={var} m={m}")));
    }
    let n = 1usize << m;
    let (zero, one): (Vec<usize>, Vec<usize>) = (0..n).partition(|&p| !rm_coordinate(p, var, m));
    Permutation::new([zero, one].concat())
}

/// Places the `2^(m-u)` points with `x_1 = ... = x_u = 1` as one block at
/// the end; all other points precede it in binary counter order.
pub fn rm_t31_ordering(u: usize, m: usize) -> Result<Permutation> {
    if u == 0 || 2 * u >= m {
        return Err(Error::InvalidParameter(format!("need 1 <= u < m/2, got u={u} m={m}")));
    }
    let n = 1usize << m;
    let (block, rest): (Vec<usize>, Vec<usize>) = (0..n).partition(|&p| (1..=u).all(|v| rm_coordinate(p, v, m)));
    Permutation::new([rest, block].concat())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    ExactInsdel,
    T21,
    C21,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goal {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    LocalSearch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub objective: Objective,
    pub goal: Goal,
    pub mode: SearchMode,
    /// Maximum number of objective evaluations.
    pub budget: u64,
    pub seed: u64,
    pub guards: Guards,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            objective: Objective::ExactInsdel,
            goal: Goal::Minimize,
            mode: SearchMode::LocalSearch,
            budget: 10_000,
            seed: 0,
            guards: Guards::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub permutation_hash: String,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingSearchResult {
    pub best_permutation: Permutation,
    pub objective: Objective,
    pub goal: Goal,
    pub best_value: u64,
    /// Objective value of the identity ordering.
    pub start_value: u64,
    pub evaluations: u64,
    pub mode: SearchMode,
    pub seed: u64,
    #[serde(default)]
    pub trace: Vec<TraceStep>,
}

/// FNV-1a over the 0-based image list.
pub fn permutation_hash(p: &Permutation) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &i in p.as_slice() {
        for b in (i as u32).to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("{h:016x}")
}

/// Objective value of the code with its coordinates permuted by `perm`.
pub fn evaluate(code: &LinearCode, perm: &Permutation, objective: Objective, guards: &Guards) -> Result<u64> {
    let c = code.permute(perm)?;
    match objective {
        Objective::ExactInsdel => Ok(insdel_code_exact(&c, guards.max_codewords)?.distance as u64),
        Objective::T21 | Objective::C21 => {
            if c.size() > guards.max_codewords as u128 {
                return Err(Error::GuardExceeded {
                    what: "codeword enumeration",
                    needed: c.size(),
                    limit: guards.max_codewords,
                });
            }
            let b = if objective == Objective::T21 { t21_bound_search(&c, guards) } else { c21_bound(&c, guards) };
            b.applicable_value().ok_or_else(|| Error::Internal(format!("{:?} bound unavailable", objective)))
        }
    }
}

// Ordering key: smaller is better.
fn key(goal: Goal, value: u64) -> (u64, Reverse<u64>) {
    match goal {
        Goal::Minimize => (value, Reverse(0)),
        Goal::Maximize => (0, Reverse(value)),
    }
}

/// Lexicographic successor; false once the last permutation is reached.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

const EXHAUSTIVE_MAX_N: usize = 8;
const CHUNK: usize = 512;

pub fn search_ordering(code: &LinearCode, cfg: &SearchConfig) -> Result<OrderingSearchResult> {
    let n = code.n();
    let start_value = evaluate(code, &Permutation::identity(n), cfg.objective, &cfg.guards)?;
    let mut result = match cfg.mode {
        SearchMode::Exhaustive => exhaustive(code, cfg)?,
        SearchMode::LocalSearch => local_search(code, cfg, start_value)?,
    };
    result.start_value = start_value;
    let check = evaluate(code, &result.best_permutation, cfg.objective, &cfg.guards)?;
    if check != result.best_value {
        return Err(Error::Internal(format!(
            "re-verification of best ordering gave {check}, search reported {}",
            result.best_value
        )));
    }
    Ok(result)
}

/// All orderings up to reversal; every objective here is invariant under
/// reversing the coordinates.
fn exhaustive(code: &LinearCode, cfg: &SearchConfig) -> Result<OrderingSearchResult> {
    let n = code.n();
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::InvalidParameter(format!("exhaustive search needs n <= {EXHAUSTIVE_MAX_N}, got {n}")));
    }
    let total: u128 = (1..=n as u128).product::<u128>().div_ceil(2).max(1);
    if total > cfg.budget as u128 {
        return Err(Error::BudgetExceeded { needed: total, budget: cfg.budget });
    }
    let floor = 2u64;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut more = true;
    let mut best: Option<((u64, Reverse<u64>), Permutation, u64)> = None;
    let mut evaluations = 0u64;
    let mut trace = Vec::new();
    while more {
        let mut chunk = Vec::with_capacity(CHUNK);
        while more && chunk.len() < CHUNK {
            if n < 2 || perm[0] < perm[n - 1] {
                chunk.push(Permutation::new(perm.clone())?);
            }
            more = next_permutation(&mut perm);
        }
        let values: Vec<Result<u64>> =
            chunk.par_iter().map(|p| evaluate(code, p, cfg.objective, &cfg.guards)).collect();
        for (p, v) in chunk.into_iter().zip(values) {
            let v = v?;
            evaluations += 1;
            let k = key(cfg.goal, v);
            if best.as_ref().is_none_or(|(bk, bp, _)| (k, &p) < (*bk, bp)) {
                trace.push(TraceStep { permutation_hash: permutation_hash(&p), value: v });
                best = Some((k, p, v));
            }
        }
        if cfg.goal == Goal::Minimize && best.as_ref().is_some_and(|b| b.2 == floor) {
            break;
        }
    }
    let (_, best_permutation, best_value) = best.expect("at least one ordering");
    Ok(OrderingSearchResult {
        best_permutation,
        objective: cfg.objective,
        goal: cfg.goal,
        best_value,
        start_value: 0,
        evaluations,
        mode: SearchMode::Exhaustive,
        seed: cfg.seed,
        trace,
    })
}

struct Restart {
    perm: Permutation,
    value: u64,
    evaluations: u64,
    trace: Vec<TraceStep>,
}

/// Steepest descent (or ascent) over adjacent transpositions with random
/// restarts; restart 0 starts from the identity. `budget / 1000` restarts
/// (at least one) share the evaluation budget evenly.
fn local_search(code: &LinearCode, cfg: &SearchConfig, start_value: u64) -> Result<OrderingSearchResult> {
    let n = code.n();
    let restarts = (cfg.budget / 1000).max(1);
    let per_restart = (cfg.budget / restarts).max(1);
    let outcomes: Vec<Result<Restart>> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(r.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
            let mut cur: Vec<usize> = (0..n).collect();
            let mut evaluations = 0u64;
            let mut value = if r == 0 {
                start_value
            } else {
                cur.shuffle(&mut rng);
                evaluations += 1;
                evaluate(code, &Permutation::new(cur.clone())?, cfg.objective, &cfg.guards)?
            };
            let mut trace =
                vec![TraceStep { permutation_hash: permutation_hash(&Permutation::new(cur.clone())?), value }];
            loop {
                let mut best_move: Option<((u64, Reverse<u64>), usize, u64)> = None;
                for i in 0..n.saturating_sub(1) {
                    if evaluations >= per_restart {
                        break;
                    }
                    cur.swap(i, i + 1);
                    let v = evaluate(code, &Permutation::new(cur.clone())?, cfg.objective, &cfg.guards)?;
                    cur.swap(i, i + 1);
                    evaluations += 1;
                    let k = key(cfg.goal, v);
                    if k < key(cfg.goal, value) && best_move.is_none_or(|(bk, _, _)| k < bk) {
                        best_move = Some((k, i, v));
                    }
                }
                match best_move {
                    Some((_, i, v)) => {
                        cur.swap(i, i + 1);
                        value = v;
                        trace.push(TraceStep { permutation_hash: permutation_hash(&Permutation::new(cur.clone())?), value });
                    }
                    None => break,
                }
                if evaluations >= per_restart {
                    break;
                }
            }
            Ok(Restart { perm: Permutation::new(cur)?, value, evaluations, trace })
        })
        .collect();
    let mut evaluations = 0;
    let mut best: Option<Restart> = None;
    for o in outcomes {
        let o = o?;
        evaluations += o.evaluations;
        let better = match &best {
            None => true,
            Some(b) => (key(cfg.goal, o.value), &o.perm) < (key(cfg.goal, b.value), &b.perm),
        };
        if better {
            best = Some(o);
        }
    }
    let best = best.expect("at least one restart");
    Ok(OrderingSearchResult {
        best_permutation: best.perm,
        objective: cfg.objective,
        goal: cfg.goal,
        best_value: best.value,
        start_value: 0,
        evaluations,
        mode: SearchMode::LocalSearch,
        seed: cfg.seed,
        trace: best.trace,
    })
}

/// Analysis of the permuted code, annotated with which bounds are
/// ordering-free.
pub fn apply_and_report(code: &LinearCode, perm: &Permutation, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let permuted = code.permute(perm)?;
    let mut report = analyze(&permuted, opts)?;
    report.permutation = Some(perm.clone());
    report.notes.push(
        "coordinate-ordering-free bounds (c23, half_singleton, c24_exact, c24_plotkin, p41, direct_2dH, \
         singleton_2nk1, cz21_2nk) are unchanged by the permutation; t21_search, c21, c22, t31_rm and the \
         exact distance may change"
            .to_string(),
    );
    Ok(report)
}
