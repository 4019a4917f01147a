use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "tdpp",
    version,
    about = "Trace-distance based path purification routing simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Route explicit pairs once on a topology and print the decision log.
    Route(RouteArgs),
    /// Run a capacity sweep and write metrics as CSV.
    Experiment(ExperimentArgs),
    /// Check a decision log against a topology's resource constraints.
    Validate(ValidateArgs),
    /// Re-run the five-node walkthrough and compare with its reference numbers.
    #[command(name = "demo-fig3")]
    DemoFig3(DemoFig3Args),
    /// Print an entanglement pumping trajectory.
    #[command(name = "demo-pump")]
    DemoPump(DemoPumpArgs),
}

/// Flags that override keys of the experiment configuration.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigFlags {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<String>,
    /// Comma list or `LO..HI step N`.
    #[arg(long)]
    pub capacity: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub threshold: Option<String>,
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long)]
    pub threads: Option<String>,
    /// Override any configuration key (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RouteArgs {
    /// Topology document; `fig3` and `us_backbone` name the shipped ones.
    #[arg(long)]
    pub topology: String,
    /// Source and destination as `src:dst` (repeatable or comma separated).
    #[arg(long = "pair", required = true)]
    pub pairs: Vec<String>,
    /// tdpp, hop_baseline or greedy_baseline.
    #[arg(long, default_value = "tdpp")]
    pub algorithm: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub flags: ConfigFlags,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Comma separated algorithm list.
    #[arg(long)]
    pub algorithm: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub flags: ConfigFlags,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub topology: String,
    /// Decision log written by `route`.
    #[arg(long)]
    pub log: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoFig3Args {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoPumpArgs {
    /// Fidelity of the pair being pumped.
    #[arg(long, default_value_t = 0.528)]
    pub a: f64,
    /// Fidelity of each base pair.
    #[arg(long, default_value_t = 0.548)]
    pub b: f64,
    #[arg(long, default_value_t = 0.80)]
    pub threshold: f64,
    #[arg(long = "max-rounds", default_value_t = 10)]
    pub max_rounds: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
