//! Browser bindings. Each export takes text and returns text; failures come
//! back as a single `error: ...` line so the page can show them verbatim.

use std::fmt::Write as _;

use intom::analysis::text::print_compactum;
use intom::banach::equicentric_difference;
use intom::construct::{construct_limit, enumerate_stage, hausdorff_gap};
use intom::numerics::{parse_rational, rational_text, Dyadic};
use intom::svg::render_tree_layout;
use intom::trees::limit_tree;
use intom::trees::text::{parse_script, parse_tree};
use wasm_bindgen::prelude::*;

fn flatten(r: Result<String, String>) -> String {
    r.unwrap_or_else(|e| format!("error: {e}"))
}

pub fn construct_inner(tree_text: &str) -> Result<(String, String), String> {
    let t = parse_tree(tree_text).map_err(|e| e.to_string())?;
    Ok((render_tree_layout(&t), print_compactum(&construct_limit(&t))))
}

pub fn simulate_inner(script_text: &str, stage: u32) -> Result<String, String> {
    let s = parse_script(script_text).map_err(|e| e.to_string())?;
    let state = enumerate_stage(&s, stage).map_err(|e| e.to_string())?;
    let limit = construct_limit(&limit_tree(&s).map_err(|e| e.to_string())?);
    let gap = hausdorff_gap(&state, &limit).map_err(|e| e.to_string())?;
    let mut out = format!("stage {}\n", state.stage);
    for p in &state.points {
        writeln!(out, "point {}", rational_text(p)).unwrap();
    }
    writeln!(out, "gap {}", rational_text(&gap)).unwrap();
    Ok(out)
}

fn dyadic(s: &str) -> Result<Dyadic, String> {
    let q = parse_rational(s.trim()).map_err(|e| e.to_string())?;
    Dyadic::from_rational(&q).ok_or_else(|| format!("{s} is not dyadic"))
}

pub fn tooth_inner(c: &str, r: &str) -> Result<String, String> {
    let h = equicentric_difference(&dyadic(c)?, &dyadic(r)?).map_err(|e| e.to_string())?;
    Ok(format!(
        "host sup {}\ninterval sup {}\n",
        rational_text(&h.sup_norm()),
        rational_text(&h.interval_sup())
    ))
}

/// SVG of the tree layout followed by the limit compactum as text.
#[wasm_bindgen]
pub fn construct_svg(tree_text: &str) -> String {
    flatten(construct_inner(tree_text).map(|(svg, c)| format!("{svg}\n<!--\n{c}-->\n")))
}

#[wasm_bindgen]
pub fn simulate(script_text: &str, stage: u32) -> String {
    flatten(simulate_inner(script_text, stage))
}

/// Host and interval sups of the difference of two concentric teeth.
#[wasm_bindgen]
pub fn tooth_demo(c: &str, r: &str) -> String {
    flatten(tooth_inner(c, r))
}
