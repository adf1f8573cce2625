//! `cactus`: catalecticant ranks, apolar profiles, cactus-membership
//! certificates and nef-cone splittings from the command line.
//!
//! Exit codes: 0 success, 1 mathematical negative, 2 usage or input error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use cactus_core::{Bidegree, Field, ModelKind};
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "cactus", version, about = "Exact catalecticant and cactus-membership computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// Model descriptor, e.g. `twisted-binary:c=1` or `ambient-product:n1=1,n2=1`.
    #[arg(long)]
    model: ModelKind,
    /// `q` or `fp:P`.
    #[arg(long, default_value = "q")]
    field: Field,
}

#[derive(Debug, Args)]
struct FunctionalArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// JSON term list.
    #[arg(long)]
    functional: PathBuf,
    /// Bidegree to read the functional at; inferred from the exponents when absent.
    #[arg(long)]
    bidegree: Option<Bidegree>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Catalecticant rank at a window, or the largest rank over all windows.
    Rank {
        #[command(flatten)]
        input: FunctionalArgs,
        /// First factor `a` of the splitting `a|b`.
        #[arg(long)]
        window: Option<Bidegree>,
        /// Exit 1 if the rank exceeds this bound.
        #[arg(long = "r")]
        r: Option<usize>,
    },
    /// Apolar Hilbert function over the functional's window.
    Hilbert {
        #[command(flatten)]
        input: FunctionalArgs,
    },
    /// Recover a witness divisor on the twisted binary model.
    Decompose {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        functional: PathBuf,
        #[arg(long = "r")]
        r: usize,
        #[arg(long = "c")]
        c: Option<usize>,
        #[arg(long = "d")]
        d: usize,
        /// Splitting degree; defaults to ⌊d/2⌋ clamped into [r, d−r].
        #[arg(long = "k")]
        k: Option<usize>,
    },
    /// Re-check a certificate record against a functional.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        functional: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Synthesize a splitting D = d·D1 + D2 from a cone file.
    ConeSplit {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long = "r")]
        r: usize,
        /// Defaults to 2r.
        #[arg(long = "d")]
        d: Option<usize>,
        /// Whitespace- or comma-separated integer class; defaults to λ·D0 for the least admissible λ.
        #[arg(long)]
        class: Option<String>,
    },
    /// Exhaustive equivalence sweep over a finite field.
    Sweep {
        #[arg(long, default_value = "fp:3")]
        field: Field,
        #[arg(long = "r")]
        r: usize,
        #[arg(long = "c", default_value_t = 1)]
        c: usize,
        #[arg(long = "d")]
        d: usize,
        #[arg(long = "k")]
        k: Option<usize>,
        /// Largest number of projective functionals to enumerate.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Hilbert-function properties of reduced point sets.
    CheckProps {
        #[command(flatten)]
        model: ModelArgs,
        /// One point per line, blocks separated by `|`.
        #[arg(long, conflicts_with = "samples")]
        points: Option<PathBuf>,
        /// Number of random point configurations to check instead of a file.
        #[arg(long)]
        samples: Option<usize>,
        /// Points per random configuration (1 to this value).
        #[arg(long = "r", default_value_t = 4)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "4,4")]
        window: Bidegree,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            if !out.stderr.is_empty() {
                eprint!("{}", out.stderr);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
