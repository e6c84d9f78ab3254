//! File formats, the data generator and the subcommands behind the
//! `curve-coreset` binary.

pub mod commands;
pub mod format;
pub mod gen;

use clap::{Parser, Subcommand};

pub use commands::{exit_code, Outcome};

#[derive(Debug, Parser)]
#[command(name = "curve-coreset", version, about = "Fréchet clustering and coresets for polygonal curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic clustered curve set.
    Gen(commands::GenArgs),
    /// Fréchet distance between two curves of a file.
    Dist(commands::DistArgs),
    /// Run a clustering approximation.
    Cluster(commands::ClusterArgs),
    /// Build a weighted coreset.
    Coreset(commands::CoresetArgs),
    /// Check a coreset against its input on candidate center sets.
    Verify(commands::VerifyArgs),
    /// Time coreset constructions over a parameter sweep and write CSV.
    Bench(commands::BenchArgs),
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Dist(a) => commands::dist(a),
        Command::Cluster(a) => commands::cluster(a),
        Command::Coreset(a) => commands::coreset(a),
        Command::Verify(a) => commands::verify(a),
        Command::Bench(a) => commands::bench(a),
    }
}
