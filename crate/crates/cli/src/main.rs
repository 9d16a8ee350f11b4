//! `eck` — exact computations on orbit catalogs and fibered-knot monodromy
//! data: Euler characteristics of the knot chain groups, GF(2) homology,
//! Alexander polynomials, and the cross-checks relating them.

mod commands;
mod corpus;
mod files;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use eck_core::eckcomplex::Flavor;
use report::CliError;

pub use report::Report;

#[derive(Parser)]
#[command(name = "eck", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Full,
    Hat,
    Ech,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Full => Flavor::Full,
            FlavorArg::Hat => Flavor::Hat,
            FlavorArg::Ech => Flavor::EchRestricted,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Graded Euler characteristic of the chain group of a catalog.
    Euler {
        /// Catalog file (.cat).
        catalog: PathBuf,
        /// Compute the hat version instead of the full one.
        #[arg(long)]
        hat: bool,
        /// Total-degree cutoff of the series.
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
        /// Recompute by orbit-set enumeration and report MATCH/MISMATCH.
        #[arg(long)]
        oracle: bool,
        /// Print the canonical representative up to sign and monomial units.
        #[arg(long)]
        normalize: bool,
    },
    /// Alexander quotient / polynomial from a monodromy matrix or catalog.
    Alex {
        /// Monodromy matrix file (.mat).
        #[arg(long, conflicts_with = "catalog")]
        monodromy: Option<PathBuf>,
        /// Catalog file (.cat).
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
        /// Convert the quotient to the Alexander polynomial.
        #[arg(long)]
        delta: bool,
    },
    /// Homology dimensions of a chain complex built from a catalog.
    Homology {
        catalog: PathBuf,
        #[arg(long, value_enum, default_value_t = FlavorArg::Full)]
        flavor: FlavorArg,
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
        /// Quotient by the identification of e_i with the empty orbit for
        /// this component (1-based).
        #[arg(long)]
        quotient: Option<usize>,
    },
    /// Run the whole invariant suite on one input file.
    Check {
        /// A .cat, .mat or .poly file.
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        cutoff: usize,
    },
    /// Check the Torres formula on explicit inputs.
    Torres {
        /// The polynomial of the larger link, in n+1 variables (.poly).
        #[arg(long)]
        full: PathBuf,
        /// The sublink value: a .poly, .mat or .cat file in n variables.
        #[arg(long)]
        sub: PathBuf,
        /// Linking numbers of the dropped component, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lk: Vec<i64>,
        /// Cutoff used when the sublink value is a series.
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
    },
    /// List the built-in examples, or print one of them.
    Corpus { name: Option<String> },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Euler { catalog, hat, cutoff, oracle, normalize } => {
            commands::cmd_euler(&catalog, hat, cutoff, oracle, normalize)
        }
        Command::Alex { monodromy, catalog, cutoff, delta } => {
            commands::cmd_alex(monodromy.as_deref(), catalog.as_deref(), cutoff, delta)
        }
        Command::Homology { catalog, flavor, cutoff, quotient } => {
            commands::cmd_homology(&catalog, flavor.into(), cutoff, quotient)
        }
        Command::Check { input, cutoff } => commands::cmd_check(&input, cutoff),
        Command::Torres { full, sub, lk, cutoff } => {
            commands::cmd_torres(&full, &sub, &lk, cutoff)
        }
        Command::Corpus { name } => commands::cmd_corpus(name.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match run(cli) {
        Ok(report) => {
            report.print();
            report.exit_code
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    };
    eprintln!("# time_ms: {}", start.elapsed().as_millis());
    ExitCode::from(code as u8)
}
