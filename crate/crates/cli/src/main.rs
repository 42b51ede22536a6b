//! `corners`: command-line front end for corners-core.

mod cache;
mod commands;
mod error;
mod formats;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::EXIT_CODES;

#[derive(Parser, Debug)]
#[command(name = "corners", version, about = "Corners in k-dimensional grids", after_help = EXIT_CODES)]
pub struct Cli {
    /// Result cache directory; no cache is read or written when unset.
    #[arg(long, global = true, env = cache::ENV_DIR)]
    pub cache_dir: Option<PathBuf>,
    /// Seed for randomized operations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count or list the corners of a grid or of a set.
    Corners(CornersArgs),
    /// Compute c_k(n), the largest corner-free subset, or the fewest corners at a given size.
    Extremal(ExtremalArgs),
    /// Count corner-free subsets exactly.
    Census(CensusArgs),
    /// Build corner-free or progression-free sets.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Supersaturation checks.
    #[command(subcommand)]
    Supersat(SupersatCmd),
    /// Build and verify a container family for the corner hypergraph.
    Containers(ContainersArgs),
    /// Run the container count end to end and compare with the census.
    Pipeline(PipelineArgs),
    /// CSV table of known values for one dimension.
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct GridArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct CornersArgs {
    #[arg(long, required_unless_present = "set")]
    pub k: Option<usize>,
    #[arg(long, required_unless_present = "set")]
    pub n: Option<usize>,
    /// Grid set file (text or JSON); counts the corners inside it.
    #[arg(long, conflicts_with_all = ["k", "n"])]
    pub set: Option<PathBuf>,
    /// Also list every corner.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct ExtremalArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Search node budget.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Minimum number of corners over sets of this size instead of c_k(n).
    #[arg(long)]
    pub min_corners: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Enumerate all subsets (at most 25 cells).
    #[arg(long)]
    pub oracle: bool,
    /// Search node budget per work unit.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Cells decided before work is split across threads.
    #[arg(long, default_value_t = 8)]
    pub split_depth: usize,
    /// CSV instead of JSON.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SetFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// Large 3-AP-free subset of [n] from digit vectors on a sphere.
    Behrend {
        #[arg(long)]
        n: usize,
    },
    /// Corner-free subset of [n]^2 from a 3-AP-free set of differences.
    Diagonal {
        #[arg(long)]
        n: usize,
        /// Comma-separated 3-AP-free values; defaults to the Behrend set for n.
        #[arg(long, value_delimiter = ',')]
        ap: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = SetFormat::Json)]
        format: SetFormat,
    },
    /// Randomized local search for a large corner-free set.
    Heuristic {
        #[command(flatten)]
        grid: GridArgs,
        /// Improvement attempts.
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = SetFormat::Json)]
        format: SetFormat,
    },
}

#[derive(Subcommand, Debug)]
pub enum SupersatCmd {
    /// Audit the prime-spaced subgrid argument on a set.
    Audit {
        #[arg(long)]
        set: PathBuf,
        /// Subgrid side M.
        #[arg(long = "M", alias = "side")]
        side: usize,
        /// Prime cutoff x.
        #[arg(long)]
        x: f64,
        /// Density constant K.
        #[arg(long = "K", alias = "density", default_value_t = 2.0)]
        density: f64,
    },
    /// Greedy corner extraction with its |A| − c_k(n) certificate.
    Greedy {
        #[arg(long)]
        set: PathBuf,
        /// c_k(n); looked up or computed when omitted.
        #[arg(long)]
        ck: Option<usize>,
    },
    /// Double-counting bound and identity.
    DoubleCount {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        ck: Option<usize>,
        /// Subset size for the identity; defaults to min(2·c_k, |A|).
        #[arg(long)]
        s: Option<usize>,
    },
    /// Compare Γ_k(A) with the target Υ(n)·n^k.
    Target {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        c_prime: Option<f64>,
    },
    /// Primes up to x and the prime-counting bounds.
    Primes {
        #[arg(long)]
        x: f64,
        /// Include the list of primes.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args, Debug)]
pub struct ContainersArgs {
    #[arg(long, required_unless_present = "hypergraph")]
    pub k: Option<usize>,
    #[arg(long, required_unless_present = "hypergraph")]
    pub n: Option<usize>,
    /// Hypergraph file in "r |V| |E|" text form instead of a corner hypergraph.
    #[arg(long, conflicts_with_all = ["k", "n"])]
    pub hypergraph: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Also check the container theorem's hypotheses at this τ.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Print the hypergraph in text form and stop.
    #[arg(long)]
    pub emit_hypergraph: bool,
    #[arg(long, default_value_t = 1_000_000)]
    pub max_containers: usize,
    /// Random maximal independent sets checked when exhaustive verification is infeasible.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct PipelineArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub budget: Option<u64>,
    /// Logarithm base for the rate functions ("e" or a number > 1).
    #[arg(long, default_value = "e")]
    pub log_base: String,
    #[arg(long)]
    pub c_prime: Option<f64>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n_max: usize,
    /// Compute missing entries with this node budget; without it only cached values are shown.
    #[arg(long)]
    pub budget: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("corners: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
