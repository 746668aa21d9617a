use std::fmt::{Display, Write as _};
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use intom::analysis::text::{parse_compactum, print_compactum};
use intom::analysis::{cb_derivative, compactum_form, reduce, reduction_r, SymbolicCompactum};
use intom::banach::text::parse_plf;
use intom::banach::HostedFunction;
use intom::boolalg::text::{parse_ba, parse_iso, print_ba, print_iso};
use intom::boolalg::{build_isomorphism, clopen_algebra, quotient_iso_canonical, quotient_r, stone_space, LabelledBA};
use intom::compact::text::print_cover;
use intom::compact::{clopen_partitions, cover, verify_cover};
use intom::construct::{construct_limit, enumerate_stage, hausdorff_gap};
use intom::numerics::rational_text;
use intom::suite::{algebra_roundtrip, duality_roundtrip, random_tree, suite_rng, TreeParams};
use intom::svg::{render_compactum, render_tree_layout};
use intom::trees::text::{parse_script, parse_tree};
use intom::trees::{limit_tree, LabelledTree};

use crate::Command;

/// Largest precision accepted; finer grids are beyond any oracle we run.
const MAX_PRECISION: u32 = 64;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Parse(String),
    Check(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Parse(_) => "parse",
            CliError::Check(_) => "check",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Parse(m) | CliError::Check(m) => m,
        }
    }

    /// One machine-readable line: `error kind=<kind> message=<quoted>`.
    pub fn line(&self) -> String {
        format!("error kind={} message={:?}", self.kind(), self.message())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Check(_) => ExitCode::from(1),
            _ => ExitCode::from(2),
        }
    }
}

/// Command output, and whether the command's check passed.
pub struct Output {
    pub text: String,
    pub pass: Result<(), String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, pass: Ok(()) }
    }
}

fn parse_err(path: &Path, e: impl Display) -> CliError {
    CliError::Parse(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn tree(path: &Path) -> Result<LabelledTree, CliError> {
    parse_tree(&read(path)?).map_err(|e| parse_err(path, e))
}

fn compactum(path: &Path) -> Result<SymbolicCompactum, CliError> {
    parse_compactum(&read(path)?).map_err(|e| parse_err(path, e))
}

fn algebra(path: &Path) -> Result<LabelledBA, CliError> {
    parse_ba(&read(path)?).map_err(|e| parse_err(path, e))
}

pub fn run(command: &Command) -> Result<Output, CliError> {
    let out = match command {
        Command::Construct { tree: p } => Output::ok(print_compactum(&construct_limit(&tree(p)?))),
        Command::Simulate { script, stage } => {
            let s = parse_script(&read(script)?).map_err(|e| parse_err(script, e))?;
            let state = enumerate_stage(&s, *stage).map_err(|e| CliError::Check(e.to_string()))?;
            let limit = construct_limit(&limit_tree(&s).map_err(|e| parse_err(script, e))?);
            let gap = hausdorff_gap(&state, &limit).map_err(|e| CliError::Check(e.to_string()))?;
            let mut text = format!("stage {}\n", state.stage);
            for p in &state.points {
                writeln!(text, "point {}", rational_text(p)).unwrap();
            }
            writeln!(text, "gap {}", rational_text(&gap)).unwrap();
            Output::ok(text)
        }
        Command::Derive { compactum: p } => Output::ok(print_compactum(&cb_derivative(&compactum(p)?))),
        Command::Reduce { compactum: p } => Output::ok(print_compactum(&reduce(&compactum(p)?))),
        Command::Stone { tree: p } => Output::ok(print_compactum(&stone_space(&tree(p)?))),
        Command::Dualcheck { tree: p } => {
            let t = tree(p)?;
            let lhs = compactum_form(&reduction_r(&construct_limit(&t)));
            let rhs = compactum_form(&stone_space(&t));
            if lhs == rhs {
                Output::ok(format!("forms equal: {lhs}\n"))
            } else {
                let msg = format!("forms differ: {lhs} vs {rhs}");
                Output {
                    text: format!("{msg}\n"),
                    pass: Err(msg),
                }
            }
        }
        Command::Algebra { compactum: p } => Output::ok(print_ba(&clopen_algebra(&compactum(p)?))),
        Command::Quotient { ba } => Output::ok(print_ba(&quotient_r(&algebra(ba)?))),
        Command::Iso { from, to, quotient_map } => {
            let (b0, b1) = (algebra(from)?, algebra(to)?);
            let f = match quotient_map {
                Some(p) => parse_iso(&read(p)?).map_err(|e| parse_err(p, e))?,
                None => quotient_iso_canonical(&quotient_r(&b0), &quotient_r(&b1))
                    .map_err(|e| CliError::Check(format!("no isomorphism of quotients: {e}")))?,
            };
            let g = build_isomorphism(&b0, &b1, &f).map_err(|e| CliError::Check(format!("isomorphism failed: {e}")))?;
            Output::ok(print_iso(&g))
        }
        Command::Cover { compactum: p, precision } => {
            if *precision > MAX_PRECISION {
                return Err(CliError::Usage(format!("precision must be at most {MAX_PRECISION}")));
            }
            let s = compactum(p)?;
            let c = cover(&s, *precision);
            Output {
                text: print_cover(&c),
                pass: verify_cover(&s, &c).map_err(|e| format!("cover does not verify: {e}")),
            }
        }
        Command::Partitions { compactum: p, depth, count } => {
            let s = compactum(p)?;
            let mut text = format!("partitions depth={depth}\n");
            for parts in clopen_partitions(&s, *depth).take(count.unwrap_or(usize::MAX)) {
                let shown: Vec<String> = parts.iter().map(ToString::to_string).collect();
                writeln!(text, "partition {}", shown.join(" | ")).unwrap();
            }
            Output::ok(text)
        }
        Command::Supnorm { function, host } => {
            let f = parse_plf(&read(function)?).map_err(|e| parse_err(function, e))?;
            let h = HostedFunction::new(f, compactum(host)?).map_err(|e| parse_err(host, e))?;
            Output::ok(format!(
                "sup {}\ninterval-sup {}\nbreakpoints-in-host {}\n",
                rational_text(&h.sup_norm()),
                rational_text(&h.interval_sup()),
                h.breaks_in_host()
            ))
        }
        Command::Suite { seed, depth, count } => suite(*seed, *depth, *count)?,
        Command::RenderSvg { input } => {
            let text = read(input)?;
            let first = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .unwrap_or_default();
            if first == intom::trees::text::HEADER {
                Output::ok(render_tree_layout(&parse_tree(&text).map_err(|e| parse_err(input, e))?))
            } else {
                Output::ok(render_compactum(&parse_compactum(&text).map_err(|e| parse_err(input, e))?))
            }
        }
    };
    Ok(out)
}

fn suite(seed: u64, depth: usize, count: usize) -> Result<Output, CliError> {
    if depth == 0 {
        return Err(CliError::Usage("depth must be at least 1".into()));
    }
    let params = TreeParams {
        max_depth: depth,
        ..TreeParams::default()
    };
    let mut rng = suite_rng(seed);
    let trees: Vec<LabelledTree> = (0..count).map(|_| random_tree(&mut rng, params)).collect();
    let mut failures = Vec::new();
    let (mut dual, mut alg) = (0, 0);
    for (i, t) in trees.iter().enumerate() {
        match duality_roundtrip(t) {
            Ok(()) => dual += 1,
            Err(e) => failures.push(format!("case {i} duality: {e}")),
        }
        match algebra_roundtrip(t) {
            Ok(()) => alg += 1,
            Err(e) => failures.push(format!("case {i} algebra: {e}")),
        }
    }
    let mut text = format!("duality roundtrips: {dual}/{count} pass\nalgebra roundtrips: {alg}/{count} pass\n");
    for f in &failures {
        writeln!(text, "{f}").unwrap();
    }
    let pass = if failures.is_empty() {
        Ok(())
    } else {
        Err(format!("{} suite cases failed", failures.len()))
    };
    Ok(Output { text, pass })
}

/// Writes the output and maps the check result to an exit code.
pub fn emit(out: &Output, path: Option<&Path>) -> Result<ExitCode, CliError> {
    match path {
        Some(p) => fs::write(p, &out.text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => print!("{}", out.text),
    }
    match &out.pass {
        Ok(()) => Ok(ExitCode::SUCCESS),
        Err(msg) => Err(CliError::Check(msg.clone())),
    }
}
