use std::fmt;

use crate::analysis::{Kind, SymbolicCompactum};

/// A component, or for a Cantor component the `index`-th of its `2^level`
/// basic pieces from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Piece {
    pub component: usize,
    pub level: u32,
    pub index: u64,
}

impl Piece {
    fn whole(component: usize) -> Self {
        Piece {
            component,
            level: 0,
            index: 0,
        }
    }

    fn overlaps(&self, other: &Piece) -> bool {
        if self.component != other.component {
            return false;
        }
        let (a, b) = if self.level <= other.level { (self, other) } else { (other, self) };
        b.index >> (b.level - a.level) == a.index
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            write!(f, "c{}", self.component)
        } else {
            write!(f, "c{}/{}.{}", self.component, self.level, self.index)
        }
    }
}

/// A clopen set as a union of pieces, kept with sibling pieces merged.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClopenPart(pub Vec<Piece>);

impl ClopenPart {
    fn normalized(mut pieces: Vec<Piece>) -> Self {
        loop {
            pieces.sort();
            let merge = pieces.windows(2).position(|w| {
                let (a, b) = (w[0], w[1]);
                a.component == b.component
                    && a.level == b.level
                    && a.level > 0
                    && a.index % 2 == 0
                    && b.index == a.index + 1
            });
            match merge {
                Some(i) => {
                    let a = pieces.remove(i);
                    pieces[i] = Piece {
                        component: a.component,
                        level: a.level - 1,
                        index: a.index / 2,
                    };
                }
                None => return ClopenPart(pieces),
            }
        }
    }
}

impl fmt::Display for ClopenPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Piece::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Whether two clopen sets share a point; pieces are non-empty, so this is
/// overlap of some pair of pieces.
pub fn parts_intersect(a: &ClopenPart, b: &ClopenPart) -> bool {
    a.0.iter().any(|p| b.0.iter().any(|q| p.overlaps(q)))
}

/// Lazy enumeration of clopen partitions, see [`clopen_partitions`].
#[derive(Clone, Debug)]
pub struct Partitions {
    units: Vec<(Vec<usize>, bool)>,
    depth: u32,
    level: u32,
    atoms: Vec<Vec<Piece>>,
    /// Pairs of atom positions split off one piece at the current level.
    siblings: Vec<(usize, usize)>,
    rgs: Option<Vec<usize>>,
}

impl Partitions {
    fn enter_level(&mut self, level: u32) {
        self.level = level;
        self.atoms.clear();
        self.siblings.clear();
        for (unit, cantor) in &self.units {
            if *cantor {
                let c = unit[0];
                for index in 0..1u64 << level {
                    if level > 0 && index % 2 == 1 {
                        self.siblings.push((self.atoms.len() - 1, self.atoms.len()));
                    }
                    self.atoms.push(vec![Piece {
                        component: c,
                        level,
                        index,
                    }]);
                }
            } else {
                self.atoms.push(unit.iter().map(|&c| Piece::whole(c)).collect());
            }
        }
        self.rgs = Some(vec![0; self.atoms.len()]);
    }

    /// Next restricted growth string of the same length.
    fn step(rgs: &mut [usize]) -> bool {
        let mut maxes = Vec::with_capacity(rgs.len());
        let mut m = 0;
        for &v in rgs.iter() {
            m = m.max(v);
            maxes.push(m);
        }
        for i in (1..rgs.len()).rev() {
            if rgs[i] <= maxes[i - 1] {
                rgs[i] += 1;
                for v in &mut rgs[i + 1..] {
                    *v = 0;
                }
                return true;
            }
        }
        false
    }

    fn build(&self, rgs: &[usize]) -> Vec<ClopenPart> {
        let blocks = rgs.iter().max().map_or(0, |m| m + 1);
        let mut parts = vec![Vec::new(); blocks];
        for (atom, &b) in self.atoms.iter().zip(rgs) {
            parts[b].extend(atom.iter().copied());
        }
        parts.into_iter().map(ClopenPart::normalized).collect()
    }
}

impl Iterator for Partitions {
    type Item = Vec<ClopenPart>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let Some(rgs) = self.rgs.as_mut() else {
                if self.level >= self.depth || !self.units.iter().any(|u| u.1) {
                    return None;
                }
                self.enter_level(self.level + 1);
                continue;
            };
            let current = rgs.clone();
            if !Self::step(rgs) {
                self.rgs = None;
            }
            // Partitions keeping all siblings together were listed at a coarser level.
            let new = self.level == 0 || self.siblings.iter().any(|&(a, b)| current[a] != current[b]);
            if new {
                return Some(self.build(&current));
            }
        }
    }
}

/// All partitions of `s` into clopen parts made of whole glued runs and,
/// inside Cantor components, basic pieces down to `depth` halvings.
///
/// The coarse partitions come first, so the list for `depth` is a prefix
/// of the list for `depth + 1`.
pub fn clopen_partitions(s: &SymbolicCompactum, depth: u32) -> Partitions {
    let units = s
        .units()
        .into_iter()
        .map(|u| {
            let cantor = u.len() == 1 && s.components()[u[0]].kind() == Kind::Cantor;
            (u, cantor)
        })
        .collect();
    let mut p = Partitions {
        units,
        depth,
        level: 0,
        atoms: Vec::new(),
        siblings: Vec::new(),
        rgs: None,
    };
    p.enter_level(0);
    p
}
