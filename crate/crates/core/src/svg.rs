//! Deterministic SVG diagrams of the interval layout of a tree and of a
//! compactum.

use std::fmt::Write;

use crate::analysis::{cantor, Component, SymbolicCompactum};
use crate::construct::construct_limit;
use crate::numerics::{interval_of, rational_to_f64, Rational};
use crate::trees::{Label, LabelledTree};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 20.0;
const ROW: f64 = 28.0;
/// Cantor sets are drawn at this level.
const CANTOR_LEVEL: u32 = 5;

fn x(t: &Rational) -> f64 {
    MARGIN + (WIDTH - 2.0 * MARGIN) * rational_to_f64(t)
}

fn header(out: &mut String, height: f64) {
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height}\" viewBox=\"0 0 {WIDTH} {height}\">"
    )
    .unwrap();
    writeln!(out, "<rect width=\"{WIDTH}\" height=\"{height}\" fill=\"white\"/>").unwrap();
}

fn bar(out: &mut String, lo: &Rational, hi: &Rational, y: f64, h: f64, fill: &str) {
    let (a, b) = (x(lo), x(hi));
    writeln!(
        out,
        "<rect x=\"{a:.3}\" y=\"{y:.3}\" width=\"{:.3}\" height=\"{h:.3}\" fill=\"{fill}\"/>",
        (b - a).max(0.5)
    )
    .unwrap();
}

fn dot(out: &mut String, p: &Rational, y: f64, fill: &str) {
    writeln!(out, "<circle cx=\"{:.3}\" cy=\"{y:.3}\" r=\"2.5\" fill=\"{fill}\"/>", x(p)).unwrap();
}

fn component(out: &mut String, c: &Component, y: f64) {
    let mid = y + ROW / 4.0;
    match c {
        Component::Point(p) => dot(out, p, mid, "#c0392b"),
        Component::Interval(lo, hi) => bar(out, lo, hi, y, ROW / 2.0, "#2c7fb8"),
        Component::Cantor(lo, hi) => {
            let len = hi - lo;
            let w = cantor::level_width(CANTOR_LEVEL) * &len;
            for t in cantor::level_left_endpoints(CANTOR_LEVEL) {
                let a = lo + t * &len;
                let b = &a + &w;
                bar(out, &a, &b, y, ROW / 2.0, "#7b3294");
            }
        }
        Component::PointSeq { limit, lo, hi } => {
            dot(out, limit, mid, "#e66101");
            for (d, sign) in [(limit - lo, -1i64), (hi - limit, 1)] {
                let mut step = d;
                for _ in 0..8 {
                    if step == Rational::default() {
                        break;
                    }
                    dot(out, &(limit + &step * Rational::from_integer(sign.into())), mid, "#e66101");
                    step /= Rational::from_integer(2.into());
                }
            }
        }
    }
}

fn axis(out: &mut String, y: f64) {
    writeln!(
        out,
        "<line x1=\"{MARGIN}\" y1=\"{y:.3}\" x2=\"{:.3}\" y2=\"{y:.3}\" stroke=\"black\"/>",
        WIDTH - MARGIN
    )
    .unwrap();
}

/// One row of node intervals per tree depth, coloured by label, above the
/// limit set of the tree.
pub fn render_tree_layout(t: &LabelledTree) -> String {
    let depth = t.depth() + 1;
    let height = ROW * (depth as f64 + 2.0);
    let mut out = String::new();
    header(&mut out, height);
    for (addr, label) in t.nodes() {
        let iv = interval_of(addr);
        let y = MARGIN + ROW * addr.len() as f64;
        let fill = match label {
            Label::Terminal => "#2c7fb8",
            Label::Eta => "#7b3294",
            Label::Spine => "#bdbdbd",
            Label::Split { .. } => "#fdae61",
        };
        bar(&mut out, &iv.lo().to_rational(), &iv.hi().to_rational(), y, ROW / 2.0, fill);
    }
    let y = MARGIN + ROW * depth as f64;
    axis(&mut out, y + ROW / 4.0);
    for c in construct_limit(t).components() {
        component(&mut out, c, y);
    }
    out.push_str("</svg>\n");
    out
}

/// The components of `s` on a single axis.
pub fn render_compactum(s: &SymbolicCompactum) -> String {
    let height = ROW + 2.0 * MARGIN;
    let mut out = String::new();
    header(&mut out, height);
    axis(&mut out, MARGIN + ROW / 4.0);
    for c in s.components() {
        component(&mut out, c, MARGIN);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::fishbone;

    #[test]
    fn deterministic_and_well_formed() {
        let eta = LabelledTree::leaf(Label::Eta);
        let term = LabelledTree::leaf(Label::Terminal);
        let t = fishbone(&[eta.clone(), term, eta]).unwrap();
        let a = render_tree_layout(&t);
        assert_eq!(a, render_tree_layout(&t));
        assert!(a.starts_with("<svg ") && a.ends_with("</svg>\n"));
        // Two Cantor sets at level 5, one interval bar, and the node rows.
        assert_eq!(a.matches("#7b3294").count(), 2 * 32 + 2);
        let s = construct_limit(&t);
        assert!(render_compactum(&s).contains("#2c7fb8"));
    }
}
