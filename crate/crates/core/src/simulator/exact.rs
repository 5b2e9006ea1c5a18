use nalgebra::DVector;

use crate::config::ProtocolConfig;
use crate::kraus::{phase_correction, round_operators, MatterFault, NoiseModel, OutcomeProbabilities, ProtocolOutput};
use crate::quantum::{cis, gates, rank2_fidelity_ensemble, Complex64, DensityMatrix, Operator, PureState, ZERO};
use crate::{Error, Result, NUMERIC_TOL};

/// Outcome operators of one fault-free round, stored as diagonals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoundDiagonal {
    pub plus: [Complex64; 4],
    pub minus: [Complex64; 4],
}

impl RoundDiagonal {
    /// Contracts the diagonal three-qubit circuit `CP₂(φ₂)·CP₁(φ₁)` between
    /// the matter preparation `|+⟩` and the measurement kets `|±_{φ_meas}⟩`.
    pub fn new(phi1: f64, phi2: f64, phi_meas: f64) -> Self {
        let (bra_plus, bra_minus) = gates::measurement_kets(phi_meas);
        let start = std::f64::consts::FRAC_1_SQRT_2;
        let mut plus = [ZERO; 4];
        let mut minus = [ZERO; 4];
        for idx in 0..4 {
            let (q1, q2) = ((idx >> 1) & 1, idx & 1);
            // matter |1⟩ picks up the phase of every gate whose photon is |1⟩
            let phase = cis(phi1 * q1 as f64 + phi2 * q2 as f64);
            let contract = |bra: &PureState| (bra.amplitude(0).conj() + bra.amplitude(1).conj() * phase) * start;
            plus[idx] = contract(&bra_plus);
            minus[idx] = contract(&bra_minus);
        }
        Self { plus, minus }
    }

    #[cfg(test)]
    fn from_operators(plus: &Operator, minus: &Operator) -> Self {
        let d = |op: &Operator| [op.entry(0, 0), op.entry(1, 1), op.entry(2, 2), op.entry(3, 3)];
        Self { plus: d(plus), minus: d(minus) }
    }
}

fn diag_apply(d: &[Complex64; 4], v: &DVector<Complex64>) -> DVector<Complex64> {
    DVector::from_fn(4, |i, _| d[i] * v[i])
}

fn correction_diagonal(k: u32, phi_meas: f64) -> [Complex64; 4] {
    let r = phase_correction(k, phi_meas);
    [r.entry(0, 0), r.entry(1, 1), r.entry(2, 2), r.entry(3, 3)]
}

/// A fault-free run with possibly different gate angles in every round,
/// evaluated on pure inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct PureProtocol {
    rounds: Vec<RoundDiagonal>,
    corrections: Option<Vec<[Complex64; 4]>>,
}

impl PureProtocol {
    /// `angles[k]` holds `(φ₁, φ₂)` of round `k + 1`.
    pub fn new(angles: &[(f64, f64)], phi_meas: f64, correction: bool) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::InvalidCycles);
        }
        for &(a, b) in angles {
            crate::error::check_angle("phi1", a)?;
            crate::error::check_angle("phi2", b)?;
        }
        crate::error::check_angle("phi_meas", phi_meas)?;
        let rounds = angles.iter().map(|&(a, b)| RoundDiagonal::new(a, b, phi_meas)).collect();
        let corrections =
            correction.then(|| (1..=angles.len() as u32).map(|k| correction_diagonal(k, phi_meas)).collect());
        Ok(Self { rounds, corrections })
    }

    /// Same angles in every round, taken from a coherent-noise config.
    pub fn from_config(config: &ProtocolConfig) -> Result<Self> {
        config.validate()?;
        if config.noise.is_pauli() || matches!(config.noise, NoiseModel::Gaussian { .. }) {
            return Err(Error::UnsupportedNoise(config.noise.kind()));
        }
        let angles = vec![config.gate_angles(); config.n as usize];
        Self::new(&angles, config.measurement_angle(), config.correction)
    }

    pub fn cycles(&self) -> usize {
        self.rounds.len()
    }

    /// Unnormalized output vectors `[even@1, …, even@n, odd@n]`.
    pub fn class_vectors(&self, psi: &PureState) -> Vec<DVector<Complex64>> {
        let mut out = Vec::with_capacity(self.rounds.len() + 1);
        let mut alive = psi.amplitudes().clone();
        for (k, r) in self.rounds.iter().enumerate() {
            let mut heralded = diag_apply(&r.minus, &alive);
            if let Some(c) = &self.corrections {
                heralded = diag_apply(&c[k], &heralded);
            }
            out.push(heralded);
            alive = diag_apply(&r.plus, &alive);
        }
        out.push(alive);
        out
    }

    /// Fidelity of this run's output with the perfect parity projection of `psi`.
    pub fn fidelity(&self, psi: &PureState) -> Result<f64> {
        rank2_fidelity_ensemble(psi, &self.class_vectors(psi))
    }
}

/// Runs the configured protocol round by round on `rho0`.
///
/// Each round mixes the fault-free and faulty operator pairs with weights
/// `1 − p` and `p`; heralded states are rotated by the phase correction when
/// enabled. Gaussian noise has no single channel and is rejected.
pub fn exact_classes(config: &ProtocolConfig, rho0: &DensityMatrix) -> Result<ProtocolOutput> {
    config.validate()?;
    if matches!(config.noise, NoiseModel::Gaussian { .. }) {
        return Err(Error::UnsupportedNoise("gaussian"));
    }
    if rho0.dim() != 4 {
        return Err(Error::DimensionMismatch { left: 4, right: rho0.dim() });
    }
    let phi_m = config.measurement_angle();
    let mixture = round_mixture(config)?;
    let mix = |rho: &DensityMatrix, pick: fn(&(f64, Operator, Operator)) -> &Operator| {
        let mut out = DensityMatrix::zeros(4);
        for term in &mixture {
            if term.0 > 0.0 {
                out.add_scaled(&rho.conjugate_by(pick(term)), term.0);
            }
        }
        out
    };
    let mut alive = rho0.clone();
    let mut even = Vec::with_capacity(config.n as usize);
    for k in 1..=config.n {
        let mut heralded = mix(&alive, |t| &t.2);
        if config.correction {
            heralded = heralded.conjugate_by(&phase_correction(k, phi_m));
        }
        even.push(heralded);
        alive = mix(&alive, |t| &t.1);
    }
    Ok(ProtocolOutput { even, odd: alive })
}

/// Weighted `(plus, minus)` operator pairs of one round. Depolarizing noise
/// is expanded into its X, Y and Z components rather than mapped to dephasing.
pub(crate) fn round_mixture(config: &ProtocolConfig) -> Result<Vec<(f64, Operator, Operator)>> {
    let (phi1, phi2) = config.gate_angles();
    let phi_m = config.measurement_angle();
    let faults: Vec<(f64, MatterFault)> = match config.noise {
        NoiseModel::PauliZBefore { p } => vec![(1.0 - p, MatterFault::None), (p, MatterFault::ZBefore)],
        NoiseModel::PauliXBetween { p } => vec![(1.0 - p, MatterFault::None), (p, MatterFault::XBetween)],
        NoiseModel::PauliYBetween { p } => vec![(1.0 - p, MatterFault::None), (p, MatterFault::YBetween)],
        NoiseModel::DepolarizingBefore { p } => vec![
            (1.0 - p, MatterFault::None),
            (p / 3.0, MatterFault::XBefore),
            (p / 3.0, MatterFault::YBefore),
            (p / 3.0, MatterFault::ZBefore),
        ],
        NoiseModel::None | NoiseModel::Imbalanced { .. } => vec![(1.0, MatterFault::None)],
        NoiseModel::Gaussian { .. } => return Err(Error::UnsupportedNoise("gaussian")),
    };
    faults
        .into_iter()
        .map(|(w, f)| {
            let (plus, minus) = round_operators(phi1, phi2, phi_m, f)?;
            Ok((w, plus, minus))
        })
        .collect()
}

/// The unconditional output state and its class probabilities.
pub fn exact_output(config: &ProtocolConfig, rho0: &DensityMatrix) -> Result<(DensityMatrix, OutcomeProbabilities)> {
    let classes = exact_classes(config, rho0)?;
    let total = classes.total_probability();
    if (total - rho0.trace()).abs() > NUMERIC_TOL {
        return Err(Error::BranchProbabilities(total));
    }
    Ok((classes.combined(), classes.probabilities()))
}

#[cfg(test)]
fn round_diagonal_from_circuit(phi1: f64, phi2: f64, phi_meas: f64) -> Result<RoundDiagonal> {
    let (p, m) = round_operators(phi1, phi2, phi_meas, MatterFault::None)?;
    Ok(RoundDiagonal::from_operators(&p, &m))
}
