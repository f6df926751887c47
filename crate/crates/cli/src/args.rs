use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::grid::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Fusion,
    Pauli,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisArg {
    X,
    Y,
    Z,
}

impl From<BasisArg> for ring_codes::Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::X => ring_codes::Basis::X,
            BasisArg::Y => ring_codes::Basis::Y,
            BasisArg::Z => ring_codes::Basis::Z,
        }
    }
}

/// Concatenated ring codes: fusion and measurement statistics, simulation
/// and repeater optimization.
#[derive(Debug, Parser)]
#[command(name = "ringrep", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Default, Args)]
pub struct GlobalArgs {
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; defaults to $RINGREP_OUT_DIR/<command>.<ext>, else stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker thread cap.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Logical fusion success against photon transmission.
    FusionSuccess(FusionSuccessArgs),
    /// Logical Pauli measurement statistics on an (eta, lambda) grid.
    PauliStats(PauliStatsArgs),
    /// Fault-tolerant fusion statistics on an (eta, lambda) grid.
    FtFusion(FtFusionArgs),
    /// Monte Carlo run compared against a reference estimator.
    Simulate(TrialArgs),
    /// One estimate from a named estimator.
    Estimate(TrialArgs),
    /// Cheapest repeater configuration per (distance, noise) cell.
    #[command(alias = "rates")]
    Optimize(OptimizeArgs),
    /// Emitter operation counts and generation sequence summary.
    Resources(ResourcesArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::FusionSuccess(_) => "fusion-success",
            Command::PauliStats(_) => "pauli-stats",
            Command::FtFusion(_) => "ft-fusion",
            Command::Simulate(_) => "simulate",
            Command::Estimate(_) => "estimate",
            Command::Optimize(_) => "optimize",
            Command::Resources(_) => "resources",
        }
    }
}

/// Fills unset fields from a configuration section.
pub trait Overlay {
    fn overlay(&mut self, file: &Self);
}

macro_rules! overlay {
    ($t:ty; $($f:ident),*) => {
        impl Overlay for $t {
            fn overlay(&mut self, file: &Self) {
                $(if self.$f.is_none() {
                    self.$f = file.$f.clone();
                })*
            }
        }
    };
}

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FusionSuccessArgs {
    /// Unit ring size (analytic statistics exist for 4).
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest depth; rows cover depths 1..=depth.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub eta_min: Option<f64>,
    #[arg(long)]
    pub eta_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
}
overlay!(FusionSuccessArgs; n, depth, eta_min, eta_max, steps);

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PauliStatsArgs {
    #[arg(long)]
    pub depth: Option<usize>,
    /// `a,b,...` or `start:stop:count`.
    #[arg(long)]
    pub eta_grid: Option<Grid>,
    #[arg(long)]
    pub lambda_grid: Option<Grid>,
}
overlay!(PauliStatsArgs; depth, eta_grid, lambda_grid);

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FtFusionArgs {
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub switch_layer: Option<usize>,
    #[arg(long)]
    pub eta_grid: Option<Grid>,
    #[arg(long)]
    pub lambda_grid: Option<Grid>,
}
overlay!(FtFusionArgs; depth, switch_layer, eta_grid, lambda_grid);

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrialArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// Defaults to the depth (loss protection on every layer).
    #[arg(long)]
    pub switch_layer: Option<usize>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Logical basis in pauli mode.
    #[arg(long, value_enum)]
    pub basis: Option<BasisArg>,
    /// Estimator name: analytic, monte-carlo or exact. For `simulate` this
    /// is the reference.
    #[arg(long)]
    pub estimator: Option<String>,
}
overlay!(TrialArgs; n, depth, switch_layer, eta, lambda, trials, mode, basis, estimator);

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizeArgs {
    /// Distances in km.
    #[arg(long, visible_alias = "L-grid")]
    pub l_grid: Option<Grid>,
    #[arg(long)]
    pub lambda_list: Option<Grid>,
    /// Photon emission time (ns).
    #[arg(long)]
    pub tau_gen: Option<f64>,
    /// Spin-spin CZ time (ns).
    #[arg(long)]
    pub tau_cz: Option<f64>,
    /// Spin measurement time (ns).
    #[arg(long)]
    pub tau_m: Option<f64>,
    #[arg(long)]
    pub eta_d: Option<f64>,
    /// Attenuation length (km).
    #[arg(long)]
    pub l_att: Option<f64>,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Smallest station spacing (km).
    #[arg(long)]
    pub l0_min: Option<f64>,
    #[arg(long)]
    pub m_max: Option<u64>,
}
overlay!(OptimizeArgs; l_grid, lambda_list, tau_gen, tau_cz, tau_m, eta_d, l_att, n_max, l0_min, m_max);

#[derive(Clone, Debug, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ResourcesArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// Include the full operation list.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub sequence: Option<bool>,
}
overlay!(ResourcesArgs; n, depth, sequence);
