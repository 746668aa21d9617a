//! Exact symbolic workbench for closed subsets of `[0,1]` built from
//! labelled trees that code Boolean algebras.
//!
//! Every set is described symbolically (points, intervals, Cantor copies,
//! convergent sequences) with dyadic or rational coordinates, so equality,
//! membership and distance questions are decided exactly.

pub mod analysis;
pub mod banach;
pub mod boolalg;
pub mod compact;
pub mod construct;
pub mod numerics;
pub mod suite;
pub mod svg;
pub mod trees;

/// Error from any of the line-oriented text formats.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        FormatError {
            line,
            message: message.into(),
        }
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Checks the header line and returns the remaining lines.
pub(crate) fn expect_header<'a>(
    text: &'a str,
    headers: &[&str],
) -> Result<(String, Vec<(usize, &'a str)>), FormatError> {
    let mut lines = content_lines(text);
    let (n, first) = lines.next().ok_or_else(|| FormatError::new(1, "empty input"))?;
    if !headers.contains(&first) {
        return Err(FormatError::new(
            n,
            format!("expected header `{}`, found `{first}`", headers[0]),
        ));
    }
    Ok((first.to_owned(), lines.collect()))
}
