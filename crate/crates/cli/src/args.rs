use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Parser, Serialize, Deserialize)]
#[command(name = "netrobust", version, about = "Graph robustness measures, attacks, defenses and simulations")]
pub struct Cli {
    /// Worker thread cap for parallel work (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate one robustness measure, or all of them.
    Measure(MeasureArgs),
    /// Remove nodes or edges one at a time and record a measure.
    Attack(AttackArgs),
    /// Add or rewire edges and record a measure after each action.
    Defend(DefendArgs),
    /// Select nodes to monitor with the greedy shield-value rule.
    Netshield(NetshieldArgs),
    /// Susceptible-infected-susceptible spreading.
    Sis(EpidemicArgs),
    /// Susceptible-infected-recovered spreading.
    Sir(EpidemicArgs),
    /// Load-redistribution cascading failure.
    Cascade(CascadeArgs),
    /// Ensemble of simulations over a parameter grid.
    Sweep(SweepArgs),
    /// Mean absolute error of an approximate measure as k varies.
    ApproxError(ApproxErrorArgs),
    /// Wall-clock time of measures on growing generated graphs.
    Scale(ScaleArgs),
    /// Re-run the configuration recorded in a manifest.
    Replay(ReplayArgs),
    #[command(hide = true)]
    TimeMeasure(TimeMeasureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct IoArgs {
    /// Edge list path, or a generator such as `gen:csf:n=300,m=2,p=0.3,seed=1`.
    #[arg(long = "in", value_name = "SOURCE")]
    pub input: String,
    /// Output file; relative paths resolve against NETROBUST_OUT_DIR when set.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format (defaults to json for `.json` outputs, csv otherwise).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Measure id, or `all`.
    #[arg(long)]
    pub id: String,
    /// Approximation parameter for approx_* measures.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Node,
    Edge,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct AttackArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// rnd, id, rd, ib or rb.
    #[arg(long)]
    pub strategy: String,
    #[arg(long, value_enum, default_value = "node")]
    pub kind: Kind,
    #[arg(long)]
    pub count: usize,
    #[arg(long, default_value = "lcc")]
    pub measure: String,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct DefendArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[arg(long)]
    pub strategy: String,
    #[arg(long)]
    pub budget: usize,
    /// Node attack applied before defending, as `strategy:count` (e.g. `rb:30`).
    #[arg(long)]
    pub attack: Option<String>,
    #[arg(long, default_value = "lcc")]
    pub measure: String,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct NetshieldArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[arg(long)]
    pub k: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct EpidemicArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// Infection probability per contact and step.
    #[arg(long, conflicts_with = "strength", required_unless_present = "strength")]
    pub beta: Option<f64>,
    /// Effective strength λ₁·β/δ; sets beta from the graph.
    #[arg(long)]
    pub strength: Option<f64>,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 5000)]
    pub steps: usize,
    /// Initially infected fraction of the population.
    #[arg(long, conflicts_with = "init_nodes")]
    pub init_frac: Option<f64>,
    /// Initially infected node labels, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub init_nodes: Option<Vec<i64>>,
    /// Monitored nodes: a netshield JSON file or a file of node labels.
    #[arg(long)]
    pub monitor: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CascadeArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[arg(long)]
    pub lmax: f64,
    /// Redundancy.
    #[arg(long)]
    pub r: f64,
    /// Overloaded nodes chosen by a node attack, as `strategy:count` (e.g. `id:4`).
    #[arg(long, conflicts_with = "attack_nodes", required_unless_present = "attack_nodes")]
    pub attack: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub attack_nodes: Option<Vec<i64>>,
    /// Nodes with boosted capacity: a netshield JSON file or a file of node labels.
    #[arg(long)]
    pub defend: Option<PathBuf>,
    #[arg(long, default_value_t = netrobust::simulators::cascade::DEFAULT_DEFENSE_BOOST)]
    pub boost: f64,
    #[arg(long, default_value_t = netrobust::simulators::cascade::DEFAULT_MAX_STEPS)]
    pub max_steps: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepModelArg {
    Sis,
    Sir,
    Cascade,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CascadeParam {
    R,
    Lmax,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub io: IoArgs,
    #[arg(long, value_enum)]
    pub model: SweepModelArg,
    /// Grid values: effective strengths for sis/sir, the swept parameter for cascade.
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<f64>,
    /// Number of seeds per value; run i uses seed + i.
    #[arg(long, default_value_t = 10)]
    pub runs: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 5000)]
    pub steps: usize,
    #[arg(long, default_value_t = 0.1)]
    pub init_frac: f64,
    #[arg(long)]
    pub monitor: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "r")]
    pub param: CascadeParam,
    #[arg(long, default_value_t = 0.8)]
    pub lmax: f64,
    #[arg(long, default_value_t = 0.0)]
    pub r: f64,
    #[arg(long, default_value = "id:4")]
    pub attack: String,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ApproxErrorArgs {
    #[command(flatten)]
    pub io: IoArgs,
    /// An approximate measure id or its exact counterpart.
    #[arg(long)]
    pub measure: String,
    /// Comma-separated k values, or `start:stop:step` (inclusive).
    #[arg(long, default_value = "5:300:10")]
    pub k_grid: String,
    #[arg(long, default_value_t = 30)]
    pub runs: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ScaleArgs {
    #[arg(long = "out")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub measures: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    pub sizes: Vec<usize>,
    /// Per-measurement budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    pub budget: f64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct TimeMeasureArgs {
    #[arg(long = "in")]
    pub input: String,
    #[arg(long)]
    pub id: String,
    #[arg(long)]
    pub seed: Option<u64>,
}
