use std::f64::consts::PI;

use parity_core::simulator::{avg_channel_fidelity, gaussian_avg_fidelity, naive_avg_fidelity, FidelityEstimate};
use parity_core::{NoiseModel, ProtocolConfig};

use super::{linspace, require};
use crate::cli::FidelityArgs;
use crate::output::{num, Table};
use crate::{CliError, Outcome};

const SWEEP_HEADER: [&str; 12] = [
    "series",
    "phi",
    "noise",
    "delta_phi_or_w",
    "n",
    "mean_fidelity",
    "mean_infidelity",
    "std_dev",
    "std_error",
    "samples",
    "noise_samples",
    "seed",
];

const GRID_HEADER: [&str; 9] =
    ["phi1", "phi2", "n_max", "fidelity_at_n_max", "best_n", "best_fidelity", "best_std_error", "samples", "seed"];

pub fn run(a: &FidelityArgs) -> Result<Outcome, CliError> {
    require(a.samples >= 2, "--samples must be at least 2")?;
    require(a.noise_samples >= 2, "--noise-samples must be at least 2")?;
    if let Some(w) = a.w {
        require(w > 0.0, "--w must be positive")?;
    }
    if a.grid {
        grid(a)
    } else {
        sweep(a)
    }
}

fn noise_of(a: &FidelityArgs) -> (NoiseModel, f64) {
    match (a.delta_phi, a.w) {
        (Some(d), _) => (NoiseModel::Imbalanced { delta1: d / 2.0, delta2: -d / 2.0 }, d),
        (None, Some(w)) => (NoiseModel::Gaussian { w }, w),
        (None, None) => (NoiseModel::None, 0.0),
    }
}

fn estimate(config: &ProtocolConfig, a: &FidelityArgs) -> Result<FidelityEstimate, CliError> {
    Ok(match config.noise {
        NoiseModel::Gaussian { .. } => gaussian_avg_fidelity(config, a.samples, a.noise_samples, a.seed)?,
        _ => avg_channel_fidelity(config, a.samples, a.seed)?,
    })
}

fn sweep(a: &FidelityArgs) -> Result<Outcome, CliError> {
    let n_max = a.n_max.unwrap_or(6);
    require(n_max >= 1, "--n-max must be at least 1")?;
    require(!a.phi.is_empty(), "--phi needs at least one angle")?;
    let (noise, param) = noise_of(a);
    let mut table = Table::new(&SWEEP_HEADER);
    let mut summary = Vec::new();
    for &phi in &a.phi {
        require(phi > 0.0 && phi <= PI, format!("--phi {phi} outside (0, π]"))?;
        let mut best = (0, f64::NEG_INFINITY);
        for n in 1..=n_max {
            let config = ProtocolConfig::new(phi, n).with_noise(noise).with_correction(!a.no_correction);
            let est = estimate(&config, a)?;
            if est.mean > best.1 {
                best = (n, est.mean);
            }
            table.push(row("protocol", phi, noise.kind(), param, n, &est));
        }
        summary.push(format!("phi={:.4}π: best n={} fidelity={:.6}", phi / PI, best.0, best.1));
        if a.naive {
            for k in 1..=n_max {
                let est = naive_avg_fidelity(phi, k, a.samples, a.seed)?;
                table.push(row("naive", phi, "none", 0.0, k, &est));
            }
        }
    }
    table.write(&a.out)?;
    Ok(Outcome { output: a.out.clone(), seed: Some(a.seed), config: serde_json::to_value(a)?, summary, failure: None })
}

fn row(series: &str, phi: f64, noise: &str, param: f64, n: u32, est: &FidelityEstimate) -> Vec<String> {
    vec![
        series.into(),
        num(phi),
        noise.into(),
        num(param),
        n.to_string(),
        num(est.mean),
        num(est.infidelity()),
        num(est.std_dev),
        num(est.std_error),
        est.n_states.to_string(),
        est.n_noise_samples.to_string(),
        est.seed.to_string(),
    ]
}

fn grid(a: &FidelityArgs) -> Result<Outcome, CliError> {
    let n_max = a.n_max.unwrap_or(5);
    require(n_max >= 1, "--n-max must be at least 1")?;
    require(a.grid_steps >= 2, "--grid-steps must be at least 2")?;
    for (lo, hi) in [a.phi1_range, a.phi2_range] {
        require(lo > 0.0 && hi <= PI && lo <= hi, format!("grid range {lo}:{hi} outside (0, π]"))?;
    }
    let mut table = Table::new(&GRID_HEADER);
    let mut overall = (f64::NEG_INFINITY, 0.0, 0.0, 0);
    for phi1 in linspace(a.phi1_range.0, a.phi1_range.1, a.grid_steps) {
        for phi2 in linspace(a.phi2_range.0, a.phi2_range.1, a.grid_steps) {
            let mean = 0.5 * (phi1 + phi2);
            let half = 0.5 * (phi1 - phi2);
            let noise = NoiseModel::Imbalanced { delta1: half, delta2: -half };
            let mut best: Option<(u32, FidelityEstimate)> = None;
            let mut last = None;
            for n in 1..=n_max {
                let config = ProtocolConfig::new(mean, n).with_noise(noise).with_correction(!a.no_correction);
                let est = avg_channel_fidelity(&config, a.samples, a.seed)?;
                if best.as_ref().is_none_or(|(_, b)| est.mean > b.mean) {
                    best = Some((n, est));
                }
                last = Some(est);
            }
            let (best_n, best_est) = best.expect("n_max >= 1");
            let last = last.expect("n_max >= 1");
            if best_est.mean > overall.0 {
                overall = (best_est.mean, phi1, phi2, best_n);
            }
            table.push(vec![
                num(phi1),
                num(phi2),
                n_max.to_string(),
                num(last.mean),
                best_n.to_string(),
                num(best_est.mean),
                num(best_est.std_error),
                a.samples.to_string(),
                a.seed.to_string(),
            ]);
        }
    }
    table.write(&a.out)?;
    let summary = vec![format!(
        "{} grid points; best fidelity {:.6} at phi1={:.4}π phi2={:.4}π n={}",
        table.len(),
        overall.0,
        overall.1 / PI,
        overall.2 / PI,
        overall.3
    )];
    Ok(Outcome { output: a.out.clone(), seed: Some(a.seed), config: serde_json::to_value(a)?, summary, failure: None })
}
