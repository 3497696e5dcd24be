//! `puttenham`: enumerate, convert, verify and draw special partitions and
//! their sequences.
//!
//! Exit codes: 0 success, 1 validation or claim failure, 2 usage or parse
//! error, 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "puttenham",
    version,
    about = "Special non-crossing partitions and their Catalan sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print every special partition or every sequence of a given order.
    Enumerate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Print only how many objects there are.
        #[arg(long)]
        count_only: bool,
    },
    /// Map a special partition to its sequence (stdin lines if omitted).
    Map {
        partition: Option<String>,
        #[command(flatten)]
        strategy: Strategy,
    },
    /// Map a sequence back to its special partition (stdin lines if omitted).
    Invert {
        /// Entries, either as one quoted argument or as separate arguments.
        sequence: Vec<String>,
        /// Also print every stretch step.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        strategy: Strategy,
    },
    /// Run every registered claim and print a JSON report.
    Verify {
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        #[command(flatten)]
        run: RunOptions,
    },
    /// Run a single claim by name.
    Check {
        /// Claim name; omit together with --list to see them all.
        claim: Option<String>,
        /// Claim-specific limit (largest n, m or b); defaults to the claim's
        /// share of n_max = 9.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        run: RunOptions,
    },
    /// Draw a partition, or the partition of a sequence, as ASCII or SVG.
    Render {
        input: String,
        #[arg(long, value_enum)]
        kind: Option<InputKind>,
        #[arg(long, default_value = "ascii")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// For sequence input, draw every distinct step of the construction.
        #[arg(long)]
        trace: bool,
        /// Distance between points in px (SVG only).
        #[arg(long, default_value_t = 30.0)]
        spacing: f64,
    },
}

#[derive(Args, Debug)]
struct Strategy {
    #[arg(long, hide = true, default_value = "arc-stretching")]
    bijection: String,
}

#[derive(Args, Debug)]
struct RunOptions {
    #[arg(long, default_value_t = 1)]
    parallel: usize,
    /// Largest n_max accepted without complaint.
    #[arg(long, default_value_t = commands::DEFAULT_CEILING)]
    ceiling: usize,
    #[command(flatten)]
    strategy: Strategy,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Special,
    Sequences,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InputKind {
    Partition,
    Sequence,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("puttenham: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
