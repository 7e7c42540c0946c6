//! `permcode`: permutation codes under the Kendall tau metric.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{CliConfig, OutputFormat};
use permcode::Error;

#[derive(Parser, Debug)]
#[command(
    name = "permcode",
    version,
    about = "Bounds and perfect-code obstructions for Kendall tau permutation codes"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// JSON file with default settings.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "PERMCODE_THREADS")]
    pub threads: Option<usize>,
    /// Wall-clock budget in seconds for the ILP solver.
    #[arg(long, global = true)]
    pub time_limit: Option<f64>,
    /// Seed for randomised steps.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest n whose symmetric group may be enumerated.
    #[arg(long, global = true)]
    pub enumeration_limit: Option<usize>,
    /// Largest matrix dimension.
    #[arg(long, global = true)]
    pub dimension_limit: Option<usize>,
    /// Comma-separated primes for invertibility certificates.
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
}

impl GlobalArgs {
    fn as_config(&self) -> CliConfig {
        CliConfig {
            threads: self.threads,
            time_limit: self.time_limit,
            seed: self.seed,
            enumeration_limit: self.enumeration_limit,
            dimension_limit: self.dimension_limit,
            prime_list: self.primes.clone(),
            output_format: self.format,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kendall distance between two permutations in one-line notation.
    Distance { first: String, second: String },
    /// The radius-r ball around a permutation.
    Ball {
        center: String,
        radius: usize,
        /// Print only the size.
        #[arg(long)]
        count: bool,
    },
    /// Minimum distance of a code file (one permutation per line).
    Verify {
        file: PathBuf,
        /// Required minimum distance.
        #[arg(long, default_value_t = 3)]
        d: usize,
    },
    /// Exact P(n,d) by exhaustive clique search.
    Oracle { n: usize, d: usize },
    /// Coset-action matrix of a shape.
    Matrix {
        n: usize,
        shape: String,
        #[arg(long, value_enum, default_value_t = MatrixFormatArg::MatrixMarket)]
        matrix_format: MatrixFormatArg,
        /// Write to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The coset integer program.
    Ilp {
        #[command(subcommand)]
        mode: IlpMode,
    },
    /// Every available upper bound on P(n,3).
    Bound {
        n: usize,
        /// Shapes whose coset ILP to solve; repeatable.
        #[arg(long = "shape")]
        shapes: Vec<String>,
        #[arg(long, default_value_t = 0)]
        cut_rounds: usize,
    },
    /// Obstructions to 1-perfect codes.
    Perfect {
        #[command(subcommand)]
        route: PerfectRoute,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MatrixFormatArg {
    MatrixMarket,
    DenseJson,
}

#[derive(Subcommand, Debug)]
pub enum IlpMode {
    /// Solve the model exactly by branch-and-bound.
    Solve {
        n: usize,
        shape: String,
        /// Rounds of Gomory cuts at the root.
        #[arg(long, default_value_t = 0)]
        cut_rounds: usize,
    },
    /// Write the model in LP format.
    Export {
        n: usize,
        shape: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ListArg {
    Computed,
    Literature,
}

#[derive(Subcommand, Debug)]
pub enum PerfectRoute {
    /// Checks the coset-action matrix of a Young subgroup.
    Coset {
        n: usize,
        shape: String,
        /// Reduce modulo every prime, not just until the first certificate.
        #[arg(long)]
        all_primes: bool,
        /// Also write the matrix in Matrix Market format.
        #[arg(long)]
        save_matrix: Option<PathBuf>,
    },
    /// Checks the irreducible constituents of a tabloid module.
    Irreps {
        n: usize,
        mu: String,
        /// Which constituents to check: every dominating partition, or the
        /// published list (only for 4,4,4,3).
        #[arg(long, value_enum, default_value_t = ListArg::Computed)]
        list: ListArg,
        /// Reduce modulo every prime, not just until the first certificate.
        #[arg(long)]
        all_primes: bool,
    },
    /// Checks shape (p-1,p-1,2) in S_2p.
    Conjecture {
        p: usize,
        /// Reduce modulo every prime, not just until the first certificate.
        #[arg(long)]
        all_primes: bool,
    },
}

/// Exit status for a failed command.
fn error_code(e: &Error) -> u8 {
    match e {
        Error::LimitExceeded { .. } => 4,
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
