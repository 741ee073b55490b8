//! `twotuple`: build unbalanced linguistic partitions from FCL scripts, query
//! and aggregate them, flatten binary trees and resolve stretch factors.
//!
//! Exit status: 0 on success, 1 for input or parse failures, 2 when the input
//! is well formed but violates a domain rule.

mod commands;
mod render;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "twotuple",
    version,
    about = "Unbalanced 2-tuple linguistic term sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the partition declared for a LING variable.
    Partition {
        #[command(flatten)]
        source: FclSource,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Aggregate linguistic values and translate the result back to the term set.
    Aggregate {
        #[command(flatten)]
        source: FclSource,
        #[arg(long, value_enum)]
        op: Op,
        /// Operands: `Term`, `Term+0.01` or `Term-0.01` (residual in variable units).
        #[arg(required = true)]
        operands: Vec<String>,
        /// Comma-separated weights for `--op wavg`, one per operand.
        #[arg(long, value_delimiter = ',')]
        op_weights: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Membership degrees of every term at a point of the universe.
    Membership {
        #[command(flatten)]
        source: FclSource,
        #[arg(allow_negative_numbers = true)]
        u: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Flatten a strict binary tree (JSON) into hierarchy 2-tuples.
    Flatten {
        tree: PathBuf,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Resolve `term stretch` lines into positions on [0, 1].
    Stretch {
        entries: PathBuf,
        /// JSON map from stretch term to a positive weight.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Also build the partition of the resolved positions.
        #[arg(long)]
        build: bool,
        #[command(flatten)]
        render: RenderArgs,
    },
}

#[derive(Debug, Args)]
struct FclSource {
    #[arg(long)]
    fcl: PathBuf,
    #[arg(long = "var")]
    variable: String,
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significant digits of numeric output.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
}

#[derive(Debug, Clone, Args)]
struct RenderArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Membership sampling resolution for CSV and SVG output.
    #[arg(long, default_value_t = 1001, value_parser = clap::value_parser!(u32).range(2..))]
    samples: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    Mean,
    Add,
    Wavg,
}

/// Failure of a command, classified by exit status.
#[derive(Debug)]
enum Failure {
    Input(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Domain(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Domain(m) => f.write_str(m),
        }
    }
}

impl From<twotuple::Error> for Failure {
    fn from(e: twotuple::Error) -> Self {
        Failure::Domain(format!("error: {e}"))
    }
}

type CmdResult<T = ()> = Result<T, Failure>;

fn emit(output: &OutputArgs, text: &str) -> CmdResult {
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(format!("{}: error: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Input(format!("error: writing output: {e}")))
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Partition { source, render } => commands::partition(&source, &render),
        Command::Aggregate {
            source,
            op,
            operands,
            op_weights,
            output,
        } => commands::aggregate(&source, op, &operands, &op_weights, &output),
        Command::Membership { source, u, output } => commands::membership(&source, u, &output),
        Command::Flatten { tree, render } => commands::flatten(&tree, &render),
        Command::Stretch {
            entries,
            weights,
            build,
            render,
        } => commands::stretch(&entries, weights.as_deref(), build, &render),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(failure.code())
        }
    }
}
