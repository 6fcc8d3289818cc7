use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

/// Network centralization measures: evaluation, axiom checks, sweeps and scores.
#[derive(Debug, Parser)]
#[command(name = "centra", version)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Seed for every randomized step
    #[arg(long, global = true, env = "CENTRA_SEED", default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Omit the timestamp from JSON output so repeated runs are byte-identical
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// Output file (stdout when absent)
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate measures on an edge-list file
    Measure {
        #[arg(long, short)]
        input: PathBuf,
        /// Node count, for graphs whose highest-numbered nodes are isolated
        #[arg(long)]
        nodes: Option<usize>,
        /// Comma-separated measure codes, or "all"
        #[arg(long, short, default_value = "all")]
        measures: String,
        /// Evaluate on the largest connected component
        #[arg(long)]
        lcc: bool,
    },
    /// Evaluate measures across n on canonical topologies
    Sweep {
        #[arg(long, short, default_value = "all")]
        measures: String,
        /// Comma-separated topologies, or "all"
        #[arg(long, short, default_value = "all")]
        topology: String,
        /// start:stop:step, inclusive
        #[arg(long, default_value = "5:100:5")]
        n_range: String,
        /// Also classify each series and write the pass matrix here
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Check measures against the postulates
    Axioms {
        #[arg(long, short, default_value = "all")]
        measures: String,
        /// Largest node count enumerated (3..=7)
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Random relabelings per graph for the isomorphism check
        #[arg(long, default_value_t = 20)]
        perms: usize,
        /// Write the measures x postulates table here
        #[arg(long)]
        table: Option<PathBuf>,
        /// Write the literature counterexample report here
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Combine the axiomatic and numerical scores
    Score {
        #[arg(long, default_value_t = 0.5)]
        wa: f64,
        #[arg(long, default_value_t = 0.5)]
        wn: f64,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 20)]
        perms: usize,
    },
    /// Write a canonical graph as an edge list
    Generate {
        #[arg(long, short)]
        topology: String,
        #[arg(long, short)]
        n: usize,
    },
    /// Extract the largest connected component of an edge list
    Lcc {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long)]
        nodes: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
