//! `th-asym`: coefficient tables, Toeplitz+Hankel determinants and norms, asymptotic comparisons,
//! Ising magnetization studies and the invariant check suite.
//!
//! Exit status: 0 success, 2 configuration error, 3 numerical degeneracy, 4 invariant failure.

mod commands;
mod config;
mod error;
mod output;

use clap::{Parser, Subcommand};

use config::{ConfigArgs, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "th-asym", version, about = "High-precision Toeplitz+Hankel determinants and their asymptotics")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fourier coefficients phi_k and w_k for |k| <= M.
    Coeffs,
    /// Determinants D_n, norms h_n and orthogonality residuals.
    Det,
    /// Exact norms against the asymptotic predictors for offsets (1,1) or (0,1).
    AsympCompare {
        /// Exit with status 3 when any row is flagged.
        #[arg(long)]
        strict: bool,
    },
    /// Ising boundary magnetization M_n.
    Ising,
    /// Runs the invariant suites; exit 0 iff all pass.
    Check,
}

fn main() {
    let cli = Cli::parse();
    let result = RunConfig::from_args(cli.config).and_then(|cfg| {
        let table = match cli.command {
            Command::Coeffs => commands::coeffs(&cfg),
            Command::Det => commands::det(&cfg),
            Command::AsympCompare { strict } => commands::asymp_compare(&cfg, strict),
            Command::Ising => commands::ising(&cfg),
            Command::Check => commands::check(&cfg),
        }?;
        table.emit(&cfg)?;
        commands::verdict(table)
    });
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
