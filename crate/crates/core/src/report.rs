//! Aggregated analysis of one code, serializable as versioned JSON.

use serde::{Deserialize, Serialize};

use crate::bounds::{all_bounds_with, BoundResult, CodeFacts};
use crate::codes::{LinearCode, Permutation};
use crate::error::{Error, Result};
use crate::galois::Symbol;
use crate::metrics::{self, InsdelResult};
use crate::Guards;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub exact: bool,
    pub ghw: bool,
    pub bounds: bool,
    pub guards: Guards,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { exact: true, ghw: true, bounds: true, guards: Guards::default(), seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub label: String,
    pub p: u32,
    pub m: u32,
    pub q: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_h: Option<usize>,
    pub generator: Vec<Vec<Symbol>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub tool_version: String,
    pub max_codewords: u64,
    pub max_subspaces: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub code: CodeSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Permutation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ghw: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<InsdelResult>,
    #[serde(default)]
    pub bounds: Vec<BoundResult>,
    #[serde(default)]
    pub notes: Vec<String>,
    pub environment: Environment,
}

pub fn summarize(code: &LinearCode, d_h: Option<usize>) -> CodeSummary {
    let f = code.field();
    CodeSummary {
        label: code.label().to_string(),
        p: f.p(),
        m: f.m(),
        q: f.q(),
        modulus: f.modulus().map(|m| m.to_vec()),
        n: code.n(),
        k: code.k(),
        d_h,
        generator: code.generator().row_vecs(),
    }
}

/// Runs the requested computations. The exact distance and GHW profile are
/// hard requirements (guard errors propagate); bounds degrade to
/// inapplicable entries instead.
pub fn analyze(code: &LinearCode, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let guards = opts.guards;
    let mut facts = CodeFacts::new(code, guards);
    let mut d_h = None;
    let mut ghw = None;
    let mut exact = None;
    let mut bounds = Vec::new();
    if opts.exact || opts.ghw || opts.bounds {
        d_h = facts.min_distance();
    }
    if opts.exact {
        exact = Some(metrics::insdel_code_exact(code, guards.max_codewords)?);
    }
    if opts.ghw {
        ghw = Some(facts.ghw().map_err(|e| e.clone())?.values.clone());
    }
    if opts.bounds {
        bounds = all_bounds_with(code, &mut facts);
    }
    let report = AnalysisReport {
        schema: SCHEMA_VERSION,
        code: summarize(code, d_h),
        permutation: None,
        ghw,
        exact,
        bounds,
        notes: Vec::new(),
        environment: Environment {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            max_codewords: guards.max_codewords,
            max_subspaces: guards.max_subspaces,
            seed: opts.seed,
        },
    };
    report.check_soundness()?;
    Ok(report)
}

impl AnalysisReport {
    /// Every applicable bound must be at least the exact distance, and every
    /// witness pair must be a pair of codewords within its bound.
    pub fn check_soundness(&self) -> Result<()> {
        let mut violations = Vec::new();
        if let Some(exact) = &self.exact {
            for b in &self.bounds {
                if let Some(v) = b.applicable_value() {
                    if v < exact.distance as u64 {
                        violations.push(format!("{} = {v} is below the exact distance {}", b.name, exact.distance));
                    }
                }
            }
        }
        for b in &self.bounds {
            if let (Some(w), Some(v)) = (&b.witness, b.value) {
                match metrics::insdel_distance(&w.first, &w.second) {
                    Ok(d) if d as u64 <= v && w.first != w.second => {}
                    _ => violations.push(format!("{} witness does not certify {v}", b.name)),
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::SoundnessViolation(violations.join("; ")))
        }
    }

    pub fn to_json(&self) -> Result<String> {
        self.check_soundness()?;
        serde_json::to_string_pretty(self).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<AnalysisReport> {
        serde_json::from_str(s).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::BoundName;
    use crate::codes::hermitian_example;

    #[test]
    fn hermitian_report() {
        let r = analyze(&hermitian_example(1).unwrap(), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.exact.as_ref().unwrap().distance, 2);
        assert_eq!(r.ghw, Some(vec![5, 7, 8]));
        assert_eq!(r.code.d_h, Some(5));
        let get = |n: BoundName| r.bounds.iter().find(|b| b.name == n).unwrap().value;
        assert_eq!(get(BoundName::C22), Some(6));
        assert_eq!(get(BoundName::HalfSingleton), Some(8));
        assert_eq!(get(BoundName::C24Exact), Some(8));
        assert_eq!(get(BoundName::Direct2dH), Some(10));
        let json = r.to_json().unwrap();
        assert_eq!(AnalysisReport::from_json(&json).unwrap(), r);
    }

    #[test]
    fn summary_only() {
        let opts = AnalysisOptions { exact: false, ghw: false, bounds: false, ..AnalysisOptions::default() };
        let r = analyze(&hermitian_example(1).unwrap(), &opts).unwrap();
        assert!(r.exact.is_none() && r.ghw.is_none() && r.bounds.is_empty() && r.code.d_h.is_none());
    }

    #[test]
    fn tripwire_fires() {
        let mut r = analyze(&hermitian_example(1).unwrap(), &AnalysisOptions::default()).unwrap();
        r.bounds[4].value = Some(0);
        assert!(matches!(r.check_soundness(), Err(Error::SoundnessViolation(_))));
        assert!(r.to_json().is_err());
    }

    #[test]
    fn exact_guard_propagates() {
        let opts = AnalysisOptions { guards: Guards { max_codewords: 10, max_subspaces: 100 }, ..Default::default() };
        assert!(matches!(analyze(&hermitian_example(1).unwrap(), &opts), Err(Error::GuardExceeded { .. })));
    }
}
