//! `ba v1` and `iso v1` text formats.

use std::fmt::Write;

use super::{AtomIso, AtomRef, CantorPiece, Cluster, LabelledBA, Species, SymCard};
use crate::numerics::Dyadic;
use crate::{expect_header, FormatError};

pub const BA_HEADER: &str = "ba v1";
pub const ISO_HEADER: &str = "iso v1";

pub fn print_ba(b: &LabelledBA) -> String {
    let mut out = format!("{BA_HEADER}\n");
    for c in &b.clusters {
        writeln!(out, "{c}").unwrap();
    }
    out
}

fn field<'a>(line: usize, tok: &'a str, key: &str) -> Result<&'a str, FormatError> {
    tok.strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| FormatError::new(line, format!("expected `{key}=`, found `{tok}`")))
}

pub fn parse_ba(text: &str) -> Result<LabelledBA, FormatError> {
    let (_, lines) = expect_header(text, &[BA_HEADER])?;
    let mut clusters = Vec::new();
    for (n, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [kw, i, j, a] = toks[..] else {
            return Err(FormatError::new(n, "expected `cluster in=.. junk=.. atomless=..`"));
        };
        if kw != "cluster" {
            return Err(FormatError::new(n, format!("unknown line `{kw}`")));
        }
        let card = |s: &str| s.parse::<SymCard>().map_err(|e| FormatError::new(n, e));
        let n_in = card(field(n, i, "in")?)?;
        let n_junk = card(field(n, j, "junk")?)?;
        let atomless = match field(n, a, "atomless")? {
            "0" => false,
            "1" => true,
            other => return Err(FormatError::new(n, format!("atomless must be 0 or 1, found `{other}`"))),
        };
        clusters.push(Cluster::new(n_in, n_junk, atomless));
    }
    Ok(LabelledBA::new(clusters))
}

pub fn print_iso(iso: &AtomIso) -> String {
    let mut out = format!("{ISO_HEADER}\n");
    for (s, t) in &iso.atoms {
        writeln!(out, "atom {s} {t}").unwrap();
    }
    for (c, d) in &iso.tails {
        writeln!(out, "tail {c} {d}").unwrap();
    }
    for (p, q) in &iso.cantor {
        writeln!(out, "cantor {} {} {} {} {} {}", p.cluster, p.lo, p.hi, q.cluster, q.lo, q.hi).unwrap();
    }
    out
}

fn index(line: usize, tok: &str) -> Result<u64, FormatError> {
    tok.parse().map_err(|_| FormatError::new(line, format!("bad index `{tok}`")))
}

fn species(line: usize, tok: &str) -> Result<Species, FormatError> {
    match tok {
        "in" => Ok(Species::In),
        "junk" => Ok(Species::Junk),
        _ => Err(FormatError::new(line, format!("unknown species `{tok}`"))),
    }
}

fn dyadic(line: usize, tok: &str) -> Result<Dyadic, FormatError> {
    tok.parse().map_err(|e: crate::numerics::ParseNumberError| FormatError::new(line, e.to_string()))
}

pub fn parse_iso(text: &str) -> Result<AtomIso, FormatError> {
    let (_, lines) = expect_header(text, &[ISO_HEADER])?;
    let mut iso = AtomIso::default();
    for (n, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[..] {
            ["atom", c, s, i, d, t, j] => {
                let a = AtomRef::new(index(n, c)? as usize, species(n, s)?, index(n, i)?);
                let b = AtomRef::new(index(n, d)? as usize, species(n, t)?, index(n, j)?);
                iso.atoms.push((a, b));
            }
            ["tail", c, d] => iso.tails.push((index(n, c)? as usize, index(n, d)? as usize)),
            ["cantor", c, lo, hi, d, lo2, hi2] => {
                let p = CantorPiece {
                    cluster: index(n, c)? as usize,
                    lo: dyadic(n, lo)?,
                    hi: dyadic(n, hi)?,
                };
                let q = CantorPiece {
                    cluster: index(n, d)? as usize,
                    lo: dyadic(n, lo2)?,
                    hi: dyadic(n, hi2)?,
                };
                iso.cantor.push((p, q));
            }
            _ => return Err(FormatError::new(n, format!("cannot read `{line}`"))),
        }
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::{build_isomorphism, quotient_iso_canonical, quotient_r};

    #[test]
    fn ba_roundtrip() {
        let text = "ba v1\ncluster in=3 junk=1 atomless=0\ncluster in=w junk=w atomless=1\n";
        let b = parse_ba(text).unwrap();
        assert_eq!(b.clusters[1], Cluster::new(SymCard::Omega, SymCard::Omega, true));
        assert_eq!(print_ba(&b), text);
        assert!(parse_ba("ba v1\ncluster in=3 junk=1\n").is_err());
        assert!(parse_ba("ba v1\ncluster in=x junk=1 atomless=0\n").is_err());
        assert!(parse_ba("ba v2\n").is_err());
    }

    #[test]
    fn iso_roundtrip() {
        let b = parse_ba("ba v1\ncluster in=2 junk=2 atomless=1\ncluster in=w junk=w atomless=1\n").unwrap();
        let q = quotient_r(&b);
        let g = build_isomorphism(&b, &b, &quotient_iso_canonical(&q, &q).unwrap()).unwrap();
        let text = print_iso(&g);
        assert_eq!(parse_iso(&text).unwrap(), g);
        assert!(parse_iso("iso v1\natom 0 in 0 0 out 0\n").is_err());
    }
}
