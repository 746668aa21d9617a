//! `plf (x,y) (x,y) …` function lines.

use super::PLFunction;
use crate::numerics::parse_rational;
use crate::{content_lines, FormatError};

pub fn print_plf(f: &PLFunction) -> String {
    format!("{f}\n")
}

pub fn parse_plf(text: &str) -> Result<PLFunction, FormatError> {
    let (n, line) = content_lines(text).next().ok_or_else(|| FormatError::new(1, "empty input"))?;
    let rest = line
        .strip_prefix("plf")
        .ok_or_else(|| FormatError::new(n, "expected `plf`"))?;
    let mut points = Vec::new();
    for tok in rest.split_whitespace() {
        let pair = tok
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .and_then(|t| t.split_once(','))
            .ok_or_else(|| FormatError::new(n, format!("expected `(x,y)`, found `{tok}`")))?;
        let num = |s: &str| parse_rational(s).map_err(|e| FormatError::new(n, e.to_string()));
        points.push((num(pair.0)?, num(pair.1)?));
    }
    PLFunction::new(points).map_err(|e| FormatError::new(n, e.to_string()))
}
