//! Text formats for codes and permutations.
//!
//! Code files are line oriented with `#` comments:
//!
//! ```text
//! # label: hermitian-1
//! field p=2 m=2 poly=1,1,1
//! n 8
//! k 3
//! row 1 1 1 1 1 1 1 1
//! row 0 1 2 2 2 3 3 3
//! row 0 0 1 2 3 1 2 3
//! ```
//!
//! `poly` lists the modulus coefficients from the leading one down to the
//! constant term and is omitted for prime fields. Permutation files hold a
//! single line `perm i_1 i_2 ... i_n` with 1-based images.

use std::fmt::Write as _;

use crate::codes::{LinearCode, Permutation};
use crate::error::{Error, Result};
use crate::galois::{Field, Symbol};
use crate::linalg::Matrix;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

fn parse_field(rest: &str, line: usize) -> Result<Field> {
    let (mut p, mut m, mut poly) = (None, None, None);
    for tok in rest.split_whitespace() {
        let (key, val) = tok.split_once('=').ok_or_else(|| parse_err(line, format!("expected key=value, got `{tok}`")))?;
        match key {
            "p" => p = Some(parse_num::<u32>(val, line, "p")?),
            "m" => m = Some(parse_num::<u32>(val, line, "m")?),
            "poly" => {
                let mut coeffs =
                    val.split(',').map(|c| parse_num::<u32>(c.trim(), line, "coefficient")).collect::<Result<Vec<_>>>()?;
                coeffs.reverse();
                poly = Some(coeffs);
            }
            _ => return Err(parse_err(line, format!("unknown field key `{key}`"))),
        }
    }
    let p = p.ok_or_else(|| parse_err(line, "field line needs p="))?;
    let m = m.unwrap_or(1);
    Field::new(p, m, poly.as_deref()).map_err(|e| parse_err(line, e.to_string()))
}

pub fn parse_code(text: &str) -> Result<LinearCode> {
    let mut label = String::new();
    let mut field = None;
    let (mut n, mut k) = (None, None);
    let mut rows: Vec<Vec<Symbol>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(l) = comment.trim().strip_prefix("label:") {
                label = l.trim().to_string();
            }
            continue;
        }
        let content = trimmed.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (kw, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        match kw {
            "field" => field = Some(parse_field(rest, line)?),
            "n" => n = Some(parse_num::<usize>(rest.trim(), line, "n")?),
            "k" => k = Some(parse_num::<usize>(rest.trim(), line, "k")?),
            "row" => {
                let f = field.as_ref().ok_or_else(|| parse_err(line, "row before field line"))?;
                let row = rest
                    .split_whitespace()
                    .map(|t| {
                        let v = parse_num::<u32>(t, line, "element")?;
                        if !f.contains(v) {
                            return Err(parse_err(line, format!("element {v} outside 0..{}", f.q())));
                        }
                        Ok(v as Symbol)
                    })
                    .collect::<Result<Vec<_>>>()?;
                rows.push(row);
            }
            _ => return Err(parse_err(line, format!("unknown keyword `{kw}`"))),
        }
    }
    let field = field.ok_or_else(|| parse_err(0, "missing field line"))?;
    let n = n.ok_or_else(|| parse_err(0, "missing n line"))?;
    let k = k.ok_or_else(|| parse_err(0, "missing k line"))?;
    if rows.len() != k {
        return Err(parse_err(0, format!("k = {k} but {} rows given", rows.len())));
    }
    if let Some(bad) = rows.iter().position(|r| r.len() != n) {
        return Err(parse_err(0, format!("row {} has {} entries, expected n = {n}", bad + 1, rows[bad].len())));
    }
    let g = Matrix::from_rows(&field, &rows, n)?;
    LinearCode::new(g, label)
}

pub fn write_code(code: &LinearCode) -> String {
    let f = code.field();
    let mut s = String::new();
    if !code.label().is_empty() {
        let _ = writeln!(s, "# label: {}", code.label());
    }
    let _ = write!(s, "field p={} m={}", f.p(), f.m());
    if let (true, Some(modulus)) = (f.m() > 1, f.modulus()) {
        let hi_lo: Vec<String> = modulus.iter().rev().map(|c| c.to_string()).collect();
        let _ = write!(s, " poly={}", hi_lo.join(","));
    }
    let _ = writeln!(s, "\nn {}\nk {}", code.n(), code.k());
    for r in 0..code.k() {
        let row: Vec<String> = code.generator().row(r).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "row {}", row.join(" "));
    }
    s
}

pub fn parse_permutation(text: &str) -> Result<Permutation> {
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let line = idx + 1;
        let rest = content.strip_prefix("perm").ok_or_else(|| parse_err(line, "expected `perm i_1 ... i_n`"))?;
        let image = rest.split_whitespace().map(|t| parse_num::<usize>(t, line, "index")).collect::<Result<Vec<_>>>()?;
        return Permutation::from_one_based(&image).map_err(|e| parse_err(line, e.to_string()));
    }
    Err(parse_err(0, "no perm line"))
}

pub fn write_permutation(p: &Permutation) -> String {
    let image: Vec<String> = p.to_one_based().iter().map(|i| i.to_string()).collect();
    format!("perm {}\n", image.join(" "))
}
