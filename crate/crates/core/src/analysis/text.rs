//! `compactum v1` text format and selector lists.

use std::fmt::Write;

use super::{AnalysisError, ClopenSelector, Component, SymbolicCompactum};
use crate::numerics::{parse_rational, Rational};
use crate::{expect_header, FormatError};

pub const HEADER: &str = "compactum v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompactumTextError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Invalid(#[from] AnalysisError),
}

pub fn print_compactum(s: &SymbolicCompactum) -> String {
    let mut out = format!("{HEADER}\n");
    for c in s.components() {
        writeln!(out, "{c}").unwrap();
    }
    out
}

fn nums(line: usize, toks: &[&str], n: usize) -> Result<Vec<Rational>, FormatError> {
    if toks.len() != n {
        return Err(FormatError::new(line, format!("expected {n} numbers")));
    }
    toks.iter()
        .map(|t| parse_rational(t).map_err(|e| FormatError::new(line, e.to_string())))
        .collect()
}

pub fn parse_compactum(text: &str) -> Result<SymbolicCompactum, CompactumTextError> {
    let (_, lines) = expect_header(text, &[HEADER])?;
    let mut comps = Vec::new();
    for (n, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (kind, rest) = toks.split_first().expect("non-empty line");
        let comp = match *kind {
            "point" => Component::Point(nums(n, rest, 1)?.remove(0)),
            "interval" | "cantor" => {
                let mut v = nums(n, rest, 2)?;
                let (hi, lo) = (v.pop().unwrap(), v.pop().unwrap());
                if *kind == "interval" {
                    Component::Interval(lo, hi)
                } else {
                    Component::Cantor(lo, hi)
                }
            }
            "seq" => {
                let mut v = nums(n, rest, 3)?;
                let (hi, lo, limit) = (v.pop().unwrap(), v.pop().unwrap(), v.pop().unwrap());
                Component::PointSeq { limit, lo, hi }
            }
            _ => return Err(FormatError::new(n, format!("unknown component `{kind}`")).into()),
        };
        comps.push(comp);
    }
    Ok(SymbolicCompactum::new(comps)?)
}

/// Parses `0,2,5` or `[0,2,5]`; the empty list is `[]`.
pub fn parse_selector(text: &str) -> Result<ClopenSelector, FormatError> {
    let t = text.trim();
    let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(t);
    if t.trim().is_empty() {
        return Ok(ClopenSelector::default());
    }
    t.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| FormatError::new(1, format!("bad component index `{p}`")))
        })
        .collect::<Result<_, _>>()
        .map(ClopenSelector)
}
