//! `tree v1` and script text formats.
//!
//! ```text
//! tree v1
//! node <> split m=1 r=1 et=1
//! node 3 terminal
//! node 4 eta
//! event fresh <>
//! event replace <>
//! label 4 eta
//! stop 12
//! ```
//!
//! A script is a tree file followed by `event`, `label` and `stop` lines.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{limit_tree, Event, Label, LabelledTree, StageScript, TreeError};
use crate::numerics::Address;
use crate::{expect_header, FormatError};

pub const HEADER: &str = "tree v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeTextError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

fn label_text(label: &Label) -> String {
    match *label {
        Label::Split {
            m,
            r,
            ever_terminal,
        } => format!("split m={m} r={r} et={}", u8::from(ever_terminal)),
        Label::Terminal => "terminal".into(),
        Label::Eta => "eta".into(),
        Label::Spine => "spine".into(),
    }
}

pub fn print_tree(tree: &LabelledTree) -> String {
    let mut out = format!("{HEADER}\n");
    for (addr, label) in tree.nodes() {
        writeln!(out, "node {addr} {}", label_text(label)).unwrap();
    }
    out
}

pub fn print_script(script: &StageScript) -> String {
    let mut out = print_tree(&script.initial);
    for e in &script.events {
        writeln!(out, "event {e}").unwrap();
    }
    for (addr, label) in &script.final_labels {
        writeln!(out, "label {addr} {}", label_text(label)).unwrap();
    }
    if let Some(stop) = script.stop {
        writeln!(out, "stop {stop}").unwrap();
    }
    out
}

fn parse_addr(line: usize, s: &str) -> Result<Address, FormatError> {
    s.parse()
        .map_err(|e: crate::numerics::ParseNumberError| FormatError::new(line, e.to_string()))
}

fn parse_kv<T: std::str::FromStr>(line: usize, tok: Option<&str>, key: &str) -> Result<T, FormatError> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| FormatError::new(line, format!("expected {key}=<value>")))
}

fn parse_label(line: usize, toks: &[&str]) -> Result<Label, FormatError> {
    let label = match toks {
        ["terminal"] => Label::Terminal,
        ["eta"] => Label::Eta,
        ["spine"] => Label::Spine,
        ["split", rest @ ..] if rest.len() == 3 => {
            let m = parse_kv(line, rest.first().copied(), "m")?;
            let r = parse_kv(line, rest.get(1).copied(), "r")?;
            let et: u8 = parse_kv(line, rest.get(2).copied(), "et")?;
            if et > 1 {
                return Err(FormatError::new(line, "et must be 0 or 1"));
            }
            Label::Split {
                m,
                r,
                ever_terminal: et == 1,
            }
        }
        _ => return Err(FormatError::new(line, format!("bad label `{}`", toks.join(" ")))),
    };
    Ok(label)
}

struct Parsed {
    nodes: BTreeMap<Address, Label>,
    events: Vec<Event>,
    labels: BTreeMap<Address, Label>,
    stop: Option<u32>,
}

fn parse_lines(text: &str, allow_script: bool) -> Result<Parsed, FormatError> {
    let (_, lines) = expect_header(text, &[HEADER])?;
    let mut p = Parsed {
        nodes: BTreeMap::new(),
        events: Vec::new(),
        labels: BTreeMap::new(),
        stop: None,
    };
    for (n, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["node", addr, rest @ ..] => {
                let addr = parse_addr(n, addr)?;
                let label = parse_label(n, rest)?;
                if p.nodes.insert(addr.clone(), label).is_some() {
                    return Err(FormatError::new(n, format!("duplicate node {addr}")));
                }
            }
            ["event", kind, addr] if allow_script => {
                let addr = parse_addr(n, addr)?;
                p.events.push(match *kind {
                    "fresh" => Event::FreshPair(addr),
                    "replace" => Event::ReplacePair(addr),
                    _ => return Err(FormatError::new(n, format!("unknown event `{kind}`"))),
                });
            }
            ["label", addr, rest @ ..] if allow_script => {
                let addr = parse_addr(n, addr)?;
                let label = parse_label(n, rest)?;
                if !label.is_leaf() {
                    return Err(FormatError::new(n, "final labels are terminal or eta"));
                }
                p.labels.insert(addr, label);
            }
            ["stop", s] if allow_script => {
                p.stop = Some(s.parse().map_err(|_| FormatError::new(n, "bad stop stage"))?);
            }
            _ => return Err(FormatError::new(n, format!("unrecognised line `{line}`"))),
        }
    }
    Ok(p)
}

pub fn parse_tree(text: &str) -> Result<LabelledTree, TreeTextError> {
    let p = parse_lines(text, false)?;
    Ok(LabelledTree::new(p.nodes)?)
}

/// Parses a script and checks that its events replay and its labels are consistent.
pub fn parse_script(text: &str) -> Result<StageScript, TreeTextError> {
    let p = parse_lines(text, true)?;
    let script = StageScript {
        initial: LabelledTree::new(p.nodes)?,
        events: p.events,
        final_labels: p.labels,
        stop: p.stop,
    };
    limit_tree(&script)?;
    Ok(script)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_roundtrip() {
        let t = LabelledTree::split_with(
            1,
            LabelledTree::leaf(Label::Terminal),
            LabelledTree::leaf(Label::Eta),
        );
        let text = print_tree(&t);
        assert_eq!(text, "tree v1\nnode <> split m=1 r=1 et=1\nnode 3 terminal\nnode 4 eta\n");
        assert_eq!(parse_tree(&text).unwrap(), t);
    }

    #[test]
    fn script_roundtrip() {
        let text = "tree v1\nnode <> terminal\nevent fresh <>\nevent replace <>\nlabel 4 eta\nstop 9\n";
        let s = parse_script(text).unwrap();
        assert_eq!(s.events.len(), 2);
        assert_eq!(s.stop, Some(9));
        assert_eq!(print_script(&s), text);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_tree("").is_err());
        assert!(parse_tree("tree v2\nnode <> eta\n").is_err());
        assert!(parse_tree("tree v1\nnode <> split m=0 r=0\n").is_err());
        assert!(parse_tree("tree v1\nnode 1 eta\n").is_err());
        assert!(parse_tree("tree v1\nnode <> eta\nevent fresh <>\n").is_err());
        let err = parse_script("tree v1\nnode <> eta\nevent fresh <>\n").unwrap_err();
        assert!(matches!(err, TreeTextError::Tree(TreeError::EventNotApplicable { .. })));
    }
}
