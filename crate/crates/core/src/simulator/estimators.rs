use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use super::{exact_output, input_state, PureProtocol};
use crate::config::ProtocolConfig;
use crate::kraus::{naive_channel, NoiseModel};
use crate::quantum::{parity_split, rank2_fidelity, DensityMatrix, PureState};
use crate::rng::{label, SeedStream};
use crate::{Error, Result};

/// A Monte Carlo estimate of the average channel fidelity.
///
/// For fixed channels `std_dev` is the spread over input states; for
/// Gaussian noise it is the spread of the per-draw averages over noise draws.
/// `std_error` is `std_dev / √(sample count)` for the same population.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityEstimate {
    pub mean: f64,
    pub std_dev: f64,
    pub std_error: f64,
    pub n_states: usize,
    pub n_noise_samples: usize,
    pub seed: u64,
}

impl FidelityEstimate {
    pub fn infidelity(&self) -> f64 {
        1.0 - self.mean
    }
}

/// Sample mean and (n − 1)-normalized standard deviation, summed in order.
fn mean_and_sd(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, var.sqrt())
}

fn check_count(name: &'static str, value: usize) -> Result<()> {
    if value < 2 {
        return Err(Error::InvalidSampleCount { name, value });
    }
    Ok(())
}

fn input_states(n_states: usize, seed: u64) -> Result<Vec<PureState>> {
    (0..n_states as u64).into_par_iter().map(|i| input_state(seed, i)).collect()
}

/// Fidelity of one run of a fixed (non-Gaussian) channel on `psi` with the
/// perfect parity projection of `psi`.
pub fn fidelity_for_state(config: &ProtocolConfig, psi: &PureState) -> Result<f64> {
    if config.noise.is_pauli() {
        let (rho, _) = exact_output(config, &psi.outer())?;
        rank2_fidelity(&parity_split(psi)?, &rho)
    } else {
        PureProtocol::from_config(config)?.fidelity(psi)
    }
}

/// Average channel fidelity over `n_states` Haar-random inputs.
pub fn avg_channel_fidelity(config: &ProtocolConfig, n_states: usize, seed: u64) -> Result<FidelityEstimate> {
    config.validate()?;
    check_count("n_states", n_states)?;
    if matches!(config.noise, NoiseModel::Gaussian { .. }) {
        return Err(Error::UnsupportedNoise("gaussian"));
    }
    let pure = (!config.noise.is_pauli()).then(|| PureProtocol::from_config(config)).transpose()?;
    let values: Vec<f64> = (0..n_states as u64)
        .into_par_iter()
        .map(|i| {
            let psi = input_state(seed, i)?;
            match &pure {
                Some(run) => run.fidelity(&psi),
                None => fidelity_for_state(config, &psi),
            }
        })
        .collect::<Result<_>>()?;
    let (mean, std_dev) = mean_and_sd(&values);
    Ok(FidelityEstimate {
        mean,
        std_dev,
        std_error: std_dev / (n_states as f64).sqrt(),
        n_states,
        n_noise_samples: 1,
        seed,
    })
}

/// Average channel fidelity under Gaussian gate-angle noise.
///
/// Each noise draw fixes fresh offsets `δ₁, δ₂ ~ N(0, w²)` for every gate of
/// every round, after which the channel is averaged over the shared set of
/// `n_states` inputs. The estimate is the mean over `n_noise_samples` draws.
/// Draws for rounds `1..n` do not depend on `n`, so runs with different cycle
/// counts see common offsets.
pub fn gaussian_avg_fidelity(
    config: &ProtocolConfig,
    n_states: usize,
    n_noise_samples: usize,
    seed: u64,
) -> Result<FidelityEstimate> {
    config.validate()?;
    check_count("n_states", n_states)?;
    check_count("n_noise_samples", n_noise_samples)?;
    let w = match config.noise {
        NoiseModel::Gaussian { w } => w,
        other => return Err(Error::UnsupportedNoise(other.kind())),
    };
    let normal = Normal::new(0.0, w).map_err(|_| Error::InvalidAngle { name: "w", value: w })?;
    let states = input_states(n_states, seed)?;
    let phi_m = config.measurement_angle();
    let noise_root = SeedStream::new(seed).split(label::NOISE);

    let per_draw: Vec<f64> = (0..n_noise_samples as u64)
        .into_par_iter()
        .map(|j| {
            let mut rng = noise_root.split(j).rng();
            let angles: Vec<(f64, f64)> = (0..config.n)
                .map(|_| {
                    let d1 = normal.sample(&mut rng);
                    let d2 = normal.sample(&mut rng);
                    (config.phi + d1, config.phi + d2)
                })
                .collect();
            let run = PureProtocol::new(&angles, phi_m, config.correction)?;
            let mut sum = 0.0;
            for psi in &states {
                sum += run.fidelity(psi)?;
            }
            Ok(sum / n_states as f64)
        })
        .collect::<Result<_>>()?;
    let (mean, std_dev) = mean_and_sd(&per_draw);
    Ok(FidelityEstimate {
        mean,
        std_dev,
        std_error: std_dev / (n_noise_samples as f64).sqrt(),
        n_states,
        n_noise_samples,
        seed,
    })
}

/// Average fidelity of the unrepeated imperfect projections applied
/// `n_nestings` times in a row, without phase correction.
pub fn naive_avg_fidelity(phi: f64, n_nestings: u32, n_states: usize, seed: u64) -> Result<FidelityEstimate> {
    crate::error::check_cycles(n_nestings)?;
    check_count("n_states", n_states)?;
    let channel = naive_channel(phi)?;
    let values: Vec<f64> = (0..n_states as u64)
        .into_par_iter()
        .map(|i| {
            let psi = input_state(seed, i)?;
            let mut rho: DensityMatrix = psi.outer();
            for _ in 0..n_nestings {
                rho = channel.apply(&rho);
            }
            rank2_fidelity(&parity_split(&psi)?, &rho)
        })
        .collect::<Result<_>>()?;
    let (mean, std_dev) = mean_and_sd(&values);
    Ok(FidelityEstimate {
        mean,
        std_dev,
        std_error: std_dev / (n_states as f64).sqrt(),
        n_states,
        n_noise_samples: 1,
        seed,
    })
}
