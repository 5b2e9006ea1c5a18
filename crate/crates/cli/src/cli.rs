//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::angle::{parse_angle, parse_angle_range};

#[derive(Debug, Parser)]
#[command(
    name = "parity-proj",
    version,
    about = "Repeated CPhase parity projection: fidelity, error probability and oracle runs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Average channel fidelity against the perfect parity projection.
    FidelitySweep(FidelityArgs),
    /// Maximum and Haar-average error probability per cycle count.
    ErrpSweep(ErrpArgs),
    /// Single-round average error probability across measurement angles.
    BasisSweep(BasisArgs),
    /// Closed forms against the round-by-round simulator.
    OracleAudit(AuditArgs),
    /// Re-run a recorded command and compare its output byte for byte.
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::FidelitySweep(_) => "fidelity-sweep",
            Command::ErrpSweep(_) => "errp-sweep",
            Command::BasisSweep(_) => "basis-sweep",
            Command::OracleAudit(_) => "oracle-audit",
            Command::Replay(_) => "replay",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct FidelityArgs {
    /// Mean gate angle(s), comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_angle, default_value = "0.9pi")]
    pub phi: Vec<f64>,
    /// Stable gate mismatch |φ₁ − φ₂|, measured at the midpoint.
    #[arg(long = "delta-phi", value_parser = parse_angle, conflicts_with = "w")]
    pub delta_phi: Option<f64>,
    /// Width of Gaussian gate-angle noise, redrawn per gate and round.
    #[arg(long, value_parser = parse_angle)]
    pub w: Option<f64>,
    /// Largest cycle count (default 6, or 5 with --grid).
    #[arg(long = "n-max")]
    pub n_max: Option<u32>,
    /// Haar-random inputs per estimate.
    #[arg(long, default_value_t = 5000)]
    pub samples: usize,
    /// Gaussian noise draws per estimate.
    #[arg(long = "noise-samples", default_value_t = 1000)]
    pub noise_samples: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Also emit the nested single-round projection for comparison.
    #[arg(long, conflicts_with_all = ["delta_phi", "w", "grid"])]
    pub naive: bool,
    /// Skip the Z rotation after even outcomes.
    #[arg(long = "no-correction")]
    pub no_correction: bool,
    /// Sweep (φ₁, φ₂) and report the best fidelity over n ≤ n-max.
    #[arg(long, conflicts_with_all = ["delta_phi", "w"])]
    pub grid: bool,
    #[arg(long = "phi1-range", value_parser = parse_angle_range, default_value = "0.8pi:pi")]
    pub phi1_range: (f64, f64),
    #[arg(long = "phi2-range", value_parser = parse_angle_range, default_value = "0.8pi:pi")]
    pub phi2_range: (f64, f64),
    #[arg(long = "grid-steps", default_value_t = 21)]
    pub grid_steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseKind {
    None,
    Imbalanced,
    Gaussian,
    Pz,
    Px,
    Py,
    Depol,
}

#[derive(Debug, Args, Serialize)]
pub struct ErrpArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_angle, default_value = "0.9pi")]
    pub phi: Vec<f64>,
    #[arg(long, value_enum, default_value_t = NoiseKind::None)]
    pub noise: NoiseKind,
    /// Noise strength(s): Δφ for imbalanced, w for gaussian (angles), or a
    /// probability for the Pauli models.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub param: Vec<String>,
    #[arg(long = "n-max", default_value_t = 20)]
    pub n_max: u32,
    /// Haar-random inputs for the sampled average.
    #[arg(long = "avg-samples", default_value_t = 4000)]
    pub avg_samples: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct BasisArgs {
    #[arg(long = "phi-mean", value_delimiter = ',', value_parser = parse_angle, default_value = "0.7pi,0.8pi")]
    pub phi_mean: Vec<f64>,
    #[arg(long = "delta-phi", value_delimiter = ',', value_parser = parse_angle, default_value = "0.02pi,0.04pi,0.08pi")]
    pub delta_phi: Vec<f64>,
    /// Measurement angles to scan (default: mean ± 0.1π).
    #[arg(long = "phi-meas-range", value_parser = parse_angle_range)]
    pub phi_meas_range: Option<(f64, f64)>,
    #[arg(long, default_value_t = 401)]
    pub steps: usize,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct AuditArgs {
    /// Random tuples per noise model.
    #[arg(long = "grid-size", default_value_t = 500)]
    pub grid_size: usize,
    #[arg(long)]
    pub seed: u64,
    /// JSON report path.
    #[arg(long)]
    pub out: PathBuf,
    /// Corrupt one closed form to confirm the audit fails.
    #[arg(long = "inject-fault", hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    pub manifest: PathBuf,
    /// Where to write the replayed output (default: original path + ".replay").
    #[arg(long)]
    pub out: Option<PathBuf>,
}
