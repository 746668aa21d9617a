use std::fmt;

use super::{Kind, SymbolicCompactum};

/// Homeomorphism invariant of a symbolic compactum.
///
/// Cantor copies absorb each other, and isolated points are absorbed by any
/// convergent sequence. Everything else is counted exactly.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompactumForm {
    pub intervals: usize,
    /// Intervals with one glued sequence.
    pub glued_once: usize,
    /// Intervals with a glued sequence at each end.
    pub glued_twice: usize,
    pub cantor: bool,
    pub sequences: usize,
    pub isolated: usize,
}

pub fn compactum_form(s: &SymbolicCompactum) -> CompactumForm {
    let mut form = CompactumForm::default();
    for unit in s.units() {
        if unit.len() == 1 {
            match s.components[unit[0]].kind() {
                Kind::Point => form.isolated += 1,
                Kind::Interval => form.intervals += 1,
                Kind::Cantor => form.cantor = true,
                Kind::PointSeq => form.sequences += 1,
            }
        } else if unit.len() == 2 {
            form.glued_once += 1;
        } else {
            form.glued_twice += 1;
        }
    }
    if form.sequences + form.glued_once + form.glued_twice > 0 {
        form.isolated = 0;
    }
    form
}

impl fmt::Display for CompactumForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plural = |n: usize, one: &str, many: &str| {
            (n > 0).then(|| format!("{n} {}", if n == 1 { one } else { many }))
        };
        let parts: Vec<String> = [
            plural(self.isolated, "isolated point", "isolated points"),
            plural(self.intervals, "interval", "intervals"),
            plural(self.glued_once, "interval with one glued sequence", "intervals with one glued sequence"),
            plural(self.glued_twice, "interval with two glued sequences", "intervals with two glued sequences"),
            plural(self.sequences, "convergent sequence", "convergent sequences"),
            self.cantor.then(|| "cantor set".to_owned()),
        ]
        .into_iter()
        .flatten()
        .collect();
        if parts.is_empty() {
            f.write_str("empty")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Component;
    use crate::numerics::rat;

    #[test]
    fn forms() {
        let c1 = SymbolicCompactum::new(vec![Component::Cantor(rat(0, 1), rat(1, 1))]).unwrap();
        let c2 = SymbolicCompactum::new(vec![Component::Cantor(rat(1, 4), rat(1, 2))]).unwrap();
        assert_eq!(compactum_form(&c1), compactum_form(&c2));
        let p1 = SymbolicCompactum::new(vec![Component::Point(rat(0, 1))]).unwrap();
        let p2 = SymbolicCompactum::new(vec![Component::Point(rat(0, 1)), Component::Point(rat(1, 1))]).unwrap();
        assert_ne!(compactum_form(&p1), compactum_form(&p2));
        assert_eq!(compactum_form(&p2).to_string(), "2 isolated points");

        let seq_and_point = SymbolicCompactum::new(vec![
            Component::PointSeq {
                limit: rat(1, 2),
                lo: rat(1, 4),
                hi: rat(1, 2),
            },
            Component::Point(rat(3, 4)),
        ])
        .unwrap();
        let form = compactum_form(&seq_and_point);
        assert_eq!((form.sequences, form.isolated), (1, 0));
        assert_eq!(compactum_form(&SymbolicCompactum::empty()).to_string(), "empty");
    }
}
