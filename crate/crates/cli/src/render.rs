//! Human-readable output. Field elements print as integers; for `F_4` a
//! legend maps 2 and 3 to w and w^2.

use std::fmt::Write as _;

use insdel_core::bounds::{best_bound, BoundResult};
use insdel_core::codes::LinearCode;
use insdel_core::galois::Symbol;
use insdel_core::metrics::InsdelResult;
use insdel_core::report::{AnalysisReport, CodeSummary};
use insdel_core::reproduce::{Check, Status};

fn word(w: &[Symbol]) -> String {
    w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn legend(q: u32) -> Option<&'static str> {
    (q == 4).then_some("elements: 0, 1, 2 = w, 3 = w^2")
}

fn header(s: &mut String, label: &str, q: u32, n: usize, k: usize) {
    let _ = writeln!(s, "code {label}: [{n}, {k}] over F_{q}");
    if let Some(l) = legend(q) {
        let _ = writeln!(s, "  {l}");
    }
}

fn summary(s: &mut String, c: &CodeSummary) {
    header(s, &c.label, c.q, c.n, c.k);
    if let Some(d) = c.d_h {
        let _ = writeln!(s, "  d_H = {d}");
    }
}

fn exact_lines(s: &mut String, r: &InsdelResult) {
    let _ = writeln!(s, "exact insdel distance: {} (lcs {}, {} pairs examined)", r.distance, r.lcs_length, r.pairs_examined);
    if let Some(w) = &r.witness_pair {
        let _ = writeln!(s, "  witness  {}", word(&w.first));
        let _ = writeln!(s, "           {}", word(&w.second));
    }
    if let Some(cs) = &r.common_subsequence {
        let _ = writeln!(s, "  common   {}", word(cs));
    }
}

fn bound_table(s: &mut String, list: &[BoundResult]) {
    let _ = writeln!(s, "bounds:");
    for b in list {
        let value = match (b.applicable, b.value) {
            (true, Some(v)) => v.to_string(),
            _ => "-".into(),
        };
        let extra = match (&b.reason, &b.witness) {
            (Some(r), _) if !b.applicable => format!("  ({r})"),
            (_, Some(_)) => "  [witness]".into(),
            _ => String::new(),
        };
        let _ = writeln!(s, "  {:<16} {:>6}{}", b.name.as_str(), value, extra);
    }
    if let Some((name, v)) = best_bound(list) {
        let _ = writeln!(s, "  best: {name} = {v}");
    }
}

pub fn report(r: &AnalysisReport) -> String {
    let mut s = String::new();
    summary(&mut s, &r.code);
    if let Some(p) = &r.permutation {
        let _ = writeln!(s, "  permutation: {}", word_usize(&p.to_one_based()));
    }
    if let Some(g) = &r.ghw {
        let _ = writeln!(s, "generalized Hamming weights: {g:?}");
    }
    if let Some(e) = &r.exact {
        exact_lines(&mut s, e);
    }
    if !r.bounds.is_empty() {
        bound_table(&mut s, &r.bounds);
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn word_usize(w: &[usize]) -> String {
    w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn bounds(c: &LinearCode, list: &[BoundResult]) -> String {
    let mut s = String::new();
    header(&mut s, c.label(), c.field().q(), c.n(), c.k());
    bound_table(&mut s, list);
    s
}

pub fn exact(c: &LinearCode, r: &InsdelResult) -> String {
    let mut s = String::new();
    header(&mut s, c.label(), c.field().q(), c.n(), c.k());
    exact_lines(&mut s, r);
    s
}

pub fn ghw(c: &LinearCode, values: &[usize], plotkin: &[Option<u64>]) -> String {
    let mut s = String::new();
    header(&mut s, c.label(), c.field().q(), c.n(), c.k());
    let _ = writeln!(s, "  r   d_r  Plotkin");
    for (i, d) in values.iter().enumerate() {
        let p = plotkin.get(i).copied().flatten().map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(s, "  {:<3} {:<4} {}", i + 1, d, p);
    }
    s
}

pub fn witnesses(c: &LinearCode, list: &[crate::WitnessReport]) -> String {
    let mut s = String::new();
    header(&mut s, c.label(), c.field().q(), c.n(), c.k());
    for w in list {
        let value = w.value.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        match (&w.first, &w.second, w.insdel) {
            (Some(a), Some(b), Some(d)) => {
                let _ = writeln!(s, "{}: bound {value}, pair at insdel distance {d} (verified)", w.bound);
                let _ = writeln!(s, "  {}", word(a));
                let _ = writeln!(s, "  {}", word(b));
            }
            _ => {
                let why = w.reason.clone().unwrap_or_else(|| "no witness for this bound".into());
                let _ = writeln!(s, "{}: bound {value}, no pair ({why})", w.bound);
            }
        }
    }
    s
}

pub fn checks(list: &[Check]) -> String {
    let mut s = String::new();
    for c in list {
        let _ = writeln!(s, "{} [{}] {}", c.status, c.case, c.description);
        let _ = writeln!(s, "       expected {} | computed {} | source: {}", c.expected, c.computed, c.source);
    }
    let fails = list.iter().filter(|c| c.status == Status::Fail).count();
    let warns = list.iter().filter(|c| c.status == Status::Warn).count();
    let _ = writeln!(s, "{} checks, {} failed, {} warnings", list.len(), fails, warns);
    s
}
