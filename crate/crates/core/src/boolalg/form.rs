use std::fmt;

use super::{LabelledBA, SymCard};

/// Isomorphism invariant of a labelled cluster algebra.
///
/// Each cluster with a limit point contributes the pair of flags saying
/// which species are infinite there. Finitely many atoms of a species can
/// be moved into any cluster whose limit already absorbs that species, so
/// free atoms are counted only while no such cluster exists. Atomless
/// parts merge into one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaForm {
    /// `(in infinite, junk infinite)` per limit cluster, sorted.
    pub limits: Vec<(bool, bool)>,
    pub free_in: u64,
    pub free_junk: u64,
    pub atomless: bool,
}

pub fn ba_form(b: &LabelledBA) -> BaForm {
    let mut form = BaForm::default();
    for c in &b.clusters {
        if c.has_limit() {
            form.limits.push((c.n_in.is_omega(), c.n_junk.is_omega()));
        }
        if let SymCard::Fin(n) = c.n_in {
            form.free_in += n;
        }
        if let SymCard::Fin(n) = c.n_junk {
            form.free_junk += n;
        }
        form.atomless |= c.atomless;
    }
    form.limits.sort();
    if form.limits.iter().any(|l| l.0) {
        form.free_in = 0;
    }
    if form.limits.iter().any(|l| l.1) {
        form.free_junk = 0;
    }
    form
}

impl fmt::Display for BaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_in > 0 {
            parts.push(format!("{} in atoms", self.free_in));
        }
        if self.free_junk > 0 {
            parts.push(format!("{} junk atoms", self.free_junk));
        }
        for (i, j) in &self.limits {
            let kind = match (i, j) {
                (true, true) => "in+junk",
                (true, false) => "in",
                _ => "junk",
            };
            parts.push(format!("limit of {kind} atoms"));
        }
        if self.atomless {
            parts.push("atomless part".to_owned());
        }
        if parts.is_empty() {
            f.write_str("trivial")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}
