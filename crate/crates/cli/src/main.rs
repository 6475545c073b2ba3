//! Batch front end: exact census tables, degree-constrained summaries and
//! Monte Carlo validation runs, emitted as CSV/JSON for downstream tools.
//!
//! Exit codes: 0 success, 2 verification mismatch, 3 infeasible
//! parameters, 4 oracle bounds exceeded, 1 anything else.

mod commands;
mod pattern;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "subgraph-census", version, about)]
struct Cli {
    /// Cap the worker pool (0 = library default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact and asymptotic counts of a pattern over all (n,m)-graphs,
    /// plus the exact distribution of the number of copies.
    Census(CensusArgs),
    /// Degree-constrained summary: chi, multigraph count, cycle means and
    /// the simple-graph estimate.
    Degseq(DegseqArgs),
    /// Monte Carlo sampling with Poisson-law diagnostics.
    #[command(subcommand)]
    Sample(SampleCommand),
}

#[derive(Args)]
struct CensusArgs {
    /// Named pattern: k2|path3|c3|c4|k4|cycle:<j>.
    #[arg(long, conflicts_with = "pattern_file")]
    pattern: Option<String>,
    /// Pattern from a graph text file (`n m` header, then `u v` lines).
    #[arg(long)]
    pattern_file: Option<PathBuf>,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    m: u64,
    /// Re-derive everything from the enumeration oracle and require exact
    /// agreement (exit 2 on mismatch).
    #[arg(long)]
    verify: bool,
    /// Skip the per-t distribution (it needs n within the table bounds).
    #[arg(long)]
    no_distribution: bool,
    #[arg(long, value_parser = ["json", "csv"], default_value = "json")]
    format: String,
    /// Output file (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DegseqArgs {
    /// Comma-separated degree set, e.g. 1,3.
    #[arg(long)]
    degrees: String,
    /// Target ratio 2m/n.
    #[arg(long, conflicts_with = "m")]
    edge_ratio: Option<f64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    n: u64,
    /// Largest cycle length reported.
    #[arg(long, default_value_t = 5)]
    k_max: u32,
    /// Compute the exact multigraph count when 2m is at most this bound
    /// (big-integer arithmetic; the log-space estimate is always emitted).
    #[arg(long, default_value_t = 512)]
    exact_mg_limit: u64,
    #[arg(long, value_parser = ["json", "csv"], default_value = "json")]
    format: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SampleCommand {
    /// Uniform (n,m)-graphs.
    Gnm(SampleGnmArgs),
    /// Uniform degree-constrained multigraphs.
    Dc(SampleDcArgs),
}

#[derive(Args)]
struct SampleGnmArgs {
    /// Pattern to count per sample.
    #[arg(long, default_value = "c3")]
    pattern: String,
    #[arg(long)]
    n: u32,
    /// Edge count; alternatively give --c for m = c n^(2-1/d).
    #[arg(long, conflicts_with = "c")]
    m: Option<u64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    block_size: u64,
    /// Force the sequential execution path.
    #[arg(long)]
    sequential: bool,
    /// Output directory for the histogram CSV and JSON sidecar.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// File name prefix (a deterministic one is derived when omitted).
    #[arg(long)]
    prefix: Option<String>,
}

#[derive(Args)]
struct SampleDcArgs {
    #[arg(long)]
    degrees: String,
    #[arg(long, conflicts_with = "m")]
    edge_ratio: Option<f64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    n: u32,
    /// Comma-separated cycle lengths to count jointly, e.g. 3,4,5.
    #[arg(long, default_value = "3,4,5")]
    cycles: String,
    #[arg(long)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    block_size: u64,
    /// Discard samples with loops or parallel edges (the simple-graph laws).
    #[arg(long)]
    condition_simple: bool,
    #[arg(long)]
    sequential: bool,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    prefix: Option<String>,
}

pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<subgraph_census::Error> for CliError {
    fn from(e: subgraph_census::Error) -> Self {
        use subgraph_census::Error::*;
        let code = match &e {
            BoundsExceeded { .. } => 4,
            Infeasible(_) | NotStrictlyBalanced(_) | SamplerStall(_) => 3,
            _ => 1,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(1, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = subgraph_census::par::configure_threads(cli.threads) {
            eprintln!("warning: could not configure thread pool: {e}");
        }
    }
    let result = match cli.command {
        Command::Census(args) => commands::census(args),
        Command::Degseq(args) => commands::degseq(args),
        Command::Sample(SampleCommand::Gnm(args)) => commands::sample_gnm(args),
        Command::Sample(SampleCommand::Dc(args)) => commands::sample_dc(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
