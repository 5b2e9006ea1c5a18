//! Closed-form error probabilities.
//!
//! Every noise model yields an error probability of the form
//! `Σ_ij w_ij |c_ij|²` for an input `Σ c_ij |ij⟩`, so a model is described by
//! its four weights (ordered `00, 01, 10, 11`). The worst input is the basis
//! state with the largest weight and the Haar average is the mean weight.

use crate::error::{check_angle, check_cycles, check_probability};
use crate::kraus::NoiseModel;
use crate::quantum::{haar_random_state, PureState};
use crate::rng::SeedStream;
use crate::{Error, Result};

/// Error-probability weights for one `(model, n)` and their summaries.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorProbabilityReport {
    pub n: u32,
    pub coefficients: [f64; 4],
    pub value_for_state: f64,
    pub max_over_states: f64,
    pub haar_average: f64,
}

impl ErrorProbabilityReport {
    pub fn new(n: u32, coefficients: [f64; 4], psi: &PureState) -> Result<Self> {
        if psi.dim() != 4 {
            return Err(Error::DimensionMismatch { left: 4, right: psi.dim() });
        }
        Ok(Self {
            n,
            coefficients,
            value_for_state: weighted(&coefficients, psi),
            max_over_states: max_weight(&coefficients),
            haar_average: mean_weight(&coefficients),
        })
    }
}

fn weighted(c: &[f64; 4], psi: &PureState) -> f64 {
    psi.probabilities().iter().zip(c).map(|(p, w)| p * w).sum()
}

pub fn max_weight(c: &[f64; 4]) -> f64 {
    c.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

pub fn mean_weight(c: &[f64; 4]) -> f64 {
    c.iter().sum::<f64>() / 4.0
}

fn half_cos_pow(x: f64, n: u32) -> f64 {
    (x / 2.0).cos().powi(2 * n as i32)
}

/// Weights of an ideal run: `cos^{2n}(φ/2)` on both even basis states.
pub fn perfect_coefficients(n: u32, phi: f64) -> Result<[f64; 4]> {
    check_cycles(n)?;
    check_angle("phi", phi)?;
    let c = half_cos_pow(phi, n);
    Ok([c, 0.0, 0.0, c])
}

/// Weights for stable gate angles `φ + δ₁`, `φ + δ₂` measured in the `φ` basis.
pub fn imbalanced_coefficients(n: u32, phi: f64, delta1: f64, delta2: f64) -> Result<[f64; 4]> {
    check_cycles(n)?;
    check_angle("phi", phi)?;
    check_angle("delta1", delta1)?;
    check_angle("delta2", delta2)?;
    Ok([
        half_cos_pow(phi, n),
        1.0 - half_cos_pow(delta2, n),
        1.0 - half_cos_pow(delta1, n),
        half_cos_pow(phi + delta1 + delta2, n),
    ])
}

/// Weights averaged over independent Gaussian offsets of width `w` on both
/// gates in every round.
pub fn gaussian_coefficients(n: u32, phi: f64, w: f64) -> Result<[f64; 4]> {
    check_cycles(n)?;
    check_angle("phi", phi)?;
    NoiseModel::Gaussian { w }.validate()?;
    let k = n as i32;
    let even_11 = (0.5 * (1.0 + phi.cos() * (-w * w).exp())).powi(k);
    let odd = 1.0 - (0.5 * (1.0 + (-w * w / 2.0).exp())).powi(k);
    Ok([half_cos_pow(phi, n), odd, odd, even_11])
}

fn dephased_even(n: u32, phi: f64, p: f64) -> f64 {
    (0.5 + (0.5 - p) * phi.cos()).powi(n as i32)
}

fn pauli_checks(n: u32, phi: f64, name: &'static str, p: f64) -> Result<()> {
    check_cycles(n)?;
    check_angle("phi", phi)?;
    check_probability(name, p)
}

/// Weights for matter-qubit dephasing before the gates.
pub fn pauli_z_coefficients(n: u32, phi: f64, p: f64) -> Result<[f64; 4]> {
    pauli_checks(n, phi, "p_z", p)?;
    let even = dephased_even(n, phi, p);
    let odd = 1.0 - (1.0 - p).powi(n as i32);
    Ok([even, odd, odd, even])
}

/// Weights for a matter-qubit bit flip between the gates. Only `|10⟩` is
/// affected: with the flip, `|01⟩` still never heralds `−1`.
pub fn pauli_x_coefficients(n: u32, phi: f64, p: f64) -> Result<[f64; 4]> {
    pauli_checks(n, phi, "p_x", p)?;
    let even = half_cos_pow(phi, n);
    let s2 = phi.sin().powi(2);
    Ok([even, 0.0, 1.0 - (1.0 - p * s2).powi(n as i32), even])
}

/// Weights for a matter-qubit Pauli-Y between the gates.
pub fn pauli_y_coefficients(n: u32, phi: f64, p: f64) -> Result<[f64; 4]> {
    pauli_checks(n, phi, "p_y", p)?;
    let even = dephased_even(n, phi, p);
    let c2 = phi.cos().powi(2);
    Ok([even, 1.0 - (1.0 - p).powi(n as i32), 1.0 - (1.0 - p * c2).powi(n as i32), even])
}

/// Weights for any model with balanced nominal gates at `phi`, measured in
/// the `phi` basis. Depolarizing noise maps to dephasing with `2p/3`.
pub fn error_coefficients(noise: &NoiseModel, n: u32, phi: f64) -> Result<[f64; 4]> {
    match *noise {
        NoiseModel::None => perfect_coefficients(n, phi),
        NoiseModel::Imbalanced { delta1, delta2 } => imbalanced_coefficients(n, phi, delta1, delta2),
        NoiseModel::Gaussian { w } => gaussian_coefficients(n, phi, w),
        NoiseModel::PauliZBefore { p } => pauli_z_coefficients(n, phi, p),
        NoiseModel::PauliXBetween { p } => pauli_x_coefficients(n, phi, p),
        NoiseModel::PauliYBetween { p } => pauli_y_coefficients(n, phi, p),
        NoiseModel::DepolarizingBefore { p } => {
            check_probability("p", p)?;
            pauli_z_coefficients(n, phi, 2.0 * p / 3.0)
        }
    }
}

pub fn error_report(noise: &NoiseModel, n: u32, phi: f64, psi: &PureState) -> Result<ErrorProbabilityReport> {
    ErrorProbabilityReport::new(n, error_coefficients(noise, n, phi)?, psi)
}

pub fn errp_perfect(n: u32, phi: f64, psi: &PureState) -> Result<ErrorProbabilityReport> {
    ErrorProbabilityReport::new(n, perfect_coefficients(n, phi)?, psi)
}

pub fn errp_imbalanced(n: u32, phi: f64, delta1: f64, delta2: f64, psi: &PureState) -> Result<ErrorProbabilityReport> {
    ErrorProbabilityReport::new(n, imbalanced_coefficients(n, phi, delta1, delta2)?, psi)
}

pub fn errp_gaussian(n: u32, phi: f64, w: f64, psi: &PureState) -> Result<ErrorProbabilityReport> {
    ErrorProbabilityReport::new(n, gaussian_coefficients(n, phi, w)?, psi)
}

pub fn errp_pauli_z(n: u32, phi: f64, p: f64, psi: &PureState) -> Result<ErrorProbabilityReport> {
    ErrorProbabilityReport::new(n, pauli_z_coefficients(n, phi, p)?, psi)
}

pub fn errp_pauli_x(n: u32, phi: f64, p: f64, psi: &PureState) -> Result<ErrorProbabilityReport> {
    ErrorProbabilityReport::new(n, pauli_x_coefficients(n, phi, p)?, psi)
}

pub fn errp_pauli_y(n: u32, phi: f64, p: f64, psi: &PureState) -> Result<ErrorProbabilityReport> {
    ErrorProbabilityReport::new(n, pauli_y_coefficients(n, phi, p)?, psi)
}

/// Monte Carlo Haar average of an error probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampledAverage {
    pub mean: f64,
    pub std_error: f64,
    pub n_states: usize,
}

/// Averages `Σ w_ij |c_ij|²` over `n_states` Haar-random inputs.
pub fn sampled_haar_average(coefficients: &[f64; 4], n_states: usize, seed: u64) -> Result<SampledAverage> {
    if n_states < 2 {
        return Err(Error::InvalidSampleCount { name: "n_states", value: n_states });
    }
    let mut rng = SeedStream::new(seed).split(crate::rng::label::STATES).rng();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..n_states {
        let v = weighted(coefficients, &haar_random_state(4, &mut rng)?);
        sum += v;
        sum_sq += v * v;
    }
    let k = n_states as f64;
    let mean = sum / k;
    let var = ((sum_sq - k * mean * mean) / (k - 1.0)).max(0.0);
    Ok(SampledAverage { mean, std_error: (var / k).sqrt(), n_states })
}

/// The smallest `n` in `1..=n_max` minimizing `f`, ties resolved to the lower `n`.
pub fn argmin_cycles<F: Fn(u32) -> Result<f64>>(n_max: u32, f: F) -> Result<(u32, f64)> {
    check_cycles(n_max)?;
    let mut best = (1, f(1)?);
    for n in 2..=n_max {
        let v = f(n)?;
        if v < best.1 {
            best = (n, v);
        }
    }
    Ok(best)
}
