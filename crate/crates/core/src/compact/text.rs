//! `cover n=<n>` certificates.

use std::fmt::Write;

use super::{BasicBall, CoverCertificate};
use crate::numerics::{parse_rational, rational_text, Dyadic};
use crate::{content_lines, FormatError};

pub fn print_cover(c: &CoverCertificate) -> String {
    let mut out = format!("cover n={}\n", c.n);
    for b in &c.balls {
        writeln!(out, "ball {} {}", rational_text(&b.center), b.radius).unwrap();
    }
    for (i, j) in &c.excluded {
        writeln!(out, "excluded {i} {j}").unwrap();
    }
    out
}

pub fn parse_cover(text: &str) -> Result<CoverCertificate, FormatError> {
    let mut lines = content_lines(text);
    let (n0, head) = lines.next().ok_or_else(|| FormatError::new(1, "empty input"))?;
    let n = head
        .strip_prefix("cover n=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| FormatError::new(n0, format!("expected `cover n=<n>`, found `{head}`")))?;
    let mut cert = CoverCertificate {
        n,
        ..Default::default()
    };
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[..] {
            ["ball", c, r] => {
                let center = parse_rational(c).map_err(|e| FormatError::new(ln, e.to_string()))?;
                let radius: Dyadic = r.parse().map_err(|e: crate::numerics::ParseNumberError| {
                    FormatError::new(ln, e.to_string())
                })?;
                cert.balls.push(BasicBall::new(center, radius));
            }
            ["excluded", i, j] => {
                let idx = |t: &str| t.parse::<usize>().map_err(|_| FormatError::new(ln, format!("bad index `{t}`")));
                cert.excluded.push((idx(i)?, idx(j)?));
            }
            _ => return Err(FormatError::new(ln, format!("cannot read `{line}`"))),
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{Component, SymbolicCompactum};
    use crate::compact::cover;
    use crate::numerics::rat;

    #[test]
    fn roundtrip() {
        let s = SymbolicCompactum::new(vec![
            Component::Point(rat(0, 1)),
            Component::Cantor(rat(1, 4), rat(1, 2)),
        ])
        .unwrap();
        let c = cover(&s, 4);
        let text = print_cover(&c);
        assert!(text.starts_with("cover n=4\nball 0/2^0 1/2^4\n"));
        assert_eq!(parse_cover(&text).unwrap(), c);
        assert!(parse_cover("cover n=x\n").is_err());
        assert!(parse_cover("cover n=1\nball 1/2\n").is_err());
    }
}
