mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "intom", version, about = "Exact workbench for tree-coded closed subsets of [0,1]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tree file to the compactum of its limit set.
    Construct { tree: PathBuf },
    /// Replay a script to a stage and report the listed points and the gap to the limit.
    Simulate {
        script: PathBuf,
        #[arg(long, default_value_t = 0)]
        stage: u32,
    },
    /// Cantor-Bendixson derivative of a compactum.
    Derive { compactum: PathBuf },
    /// Collapse every clopen interval of a compactum to its midpoint.
    Reduce { compactum: PathBuf },
    /// Stone space of the algebra coded by a tree.
    Stone { tree: PathBuf },
    /// Check that the reduced limit set and the Stone space of a tree agree.
    Dualcheck { tree: PathBuf },
    /// Labelled clopen algebra of a compactum.
    Algebra { compactum: PathBuf },
    /// Quotient of a labelled algebra by the finite junk sets.
    Quotient { ba: PathBuf },
    /// Lift an isomorphism of quotients to a label-preserving isomorphism.
    Iso {
        from: PathBuf,
        to: PathBuf,
        /// Isomorphism of the quotients; a canonical one is used if omitted.
        quotient_map: Option<PathBuf>,
    },
    /// Certified open cover by balls of radius 2^-precision.
    Cover {
        compactum: PathBuf,
        #[arg(long, default_value_t = 4)]
        precision: u32,
    },
    /// Clopen partitions refined down to a Cantor depth.
    Partitions {
        compactum: PathBuf,
        #[arg(long, default_value_t = 1)]
        depth: u32,
        /// Stop after this many partitions.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Exact sup norm of a piecewise linear function over a host compactum.
    Supnorm { function: PathBuf, host: PathBuf },
    /// Random duality suites over seeded trees.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// SVG diagram of a tree's interval layout, or of a compactum.
    RenderSvg { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or_default().to_owned();
            return report(CliError::Usage(first.trim_start_matches("error: ").to_owned()));
        }
    };
    match commands::run(&cli.command).and_then(|out| commands::emit(&out, cli.out.as_deref())) {
        Ok(status) => status,
        Err(e) => report(e),
    }
}

fn report(e: CliError) -> ExitCode {
    eprintln!("{}", e.line());
    e.exit_code()
}
