use nalgebra::DVector;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use super::exact::{round_mixture, RoundDiagonal};
use crate::config::ProtocolConfig;
use crate::kraus::{phase_correction, NoiseModel};
use crate::quantum::{Complex64, DensityMatrix, Operator, PureState};
use crate::rng::{label, SeedStream, StreamRng};
use crate::{Error, Result};

/// Shots per random substream. Fixed so tallies do not depend on threading.
const SHOTS_PER_CHUNK: u64 = 8192;

/// Shot-level outcome counts and conditional states.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryTally {
    pub shots: u64,
    /// `even_counts[k − 1]`: shots whose first `−1` came in round `k`.
    pub even_counts: Vec<u64>,
    /// Shots with `+1` in every round.
    pub odd_count: u64,
    /// Shots whose final state, measured in the parity basis, shows the
    /// opposite of the heralded parity.
    pub parity_errors: u64,
    /// Sum over shots of each class's normalized conditional state.
    pub even_state_sums: Vec<DensityMatrix>,
    pub odd_state_sum: DensityMatrix,
}

impl TrajectoryTally {
    fn empty(n: usize) -> Self {
        Self {
            shots: 0,
            even_counts: vec![0; n],
            odd_count: 0,
            parity_errors: 0,
            even_state_sums: vec![DensityMatrix::zeros(4); n],
            odd_state_sum: DensityMatrix::zeros(4),
        }
    }

    fn merge(&mut self, other: &TrajectoryTally) {
        self.shots += other.shots;
        self.odd_count += other.odd_count;
        self.parity_errors += other.parity_errors;
        for (a, b) in self.even_counts.iter_mut().zip(&other.even_counts) {
            *a += b;
        }
        for (a, b) in self.even_state_sums.iter_mut().zip(&other.even_state_sums) {
            a.add_assign(b);
        }
        self.odd_state_sum.add_assign(&other.odd_state_sum);
    }

    /// Empirical class frequencies `(even by round, odd)`.
    pub fn frequencies(&self) -> (Vec<f64>, f64) {
        let s = self.shots as f64;
        (self.even_counts.iter().map(|&c| c as f64 / s).collect(), self.odd_count as f64 / s)
    }

    pub fn error_rate(&self) -> f64 {
        self.parity_errors as f64 / self.shots as f64
    }

    /// Binomial standard error of [`Self::error_rate`] around a reference rate.
    pub fn error_rate_sigma(&self, reference: f64) -> f64 {
        (reference * (1.0 - reference) / self.shots as f64).sqrt()
    }

    /// Mean conditional state of round-`k` even outcomes, if any occurred.
    pub fn even_conditional_state(&self, k: usize) -> Option<DensityMatrix> {
        let count = *self.even_counts.get(k.checked_sub(1)?)?;
        (count > 0).then(|| self.even_state_sums[k - 1].scale(1.0 / count as f64))
    }

    pub fn odd_conditional_state(&self) -> Option<DensityMatrix> {
        (self.odd_count > 0).then(|| self.odd_state_sum.scale(1.0 / self.odd_count as f64))
    }
}

/// How each round's operators are obtained during a shot.
enum RoundSource {
    /// Cumulative weights and the operator pair chosen below each.
    Mixture(Vec<(f64, RoundDiagonal)>),
    Gaussian {
        phi: f64,
        phi_meas: f64,
        normal: Normal<f64>,
    },
}

impl RoundSource {
    fn draw(&self, rng: &mut StreamRng) -> RoundDiagonal {
        match self {
            RoundSource::Mixture(terms) if terms.len() == 1 => terms[0].1,
            RoundSource::Mixture(terms) => {
                let u = rng.random::<f64>();
                terms.iter().find(|(c, _)| u < *c).unwrap_or(&terms[terms.len() - 1]).1
            }
            RoundSource::Gaussian { phi, phi_meas, normal } => {
                let d1 = normal.sample(rng);
                let d2 = normal.sample(rng);
                RoundDiagonal::new(phi + d1, phi + d2, *phi_meas)
            }
        }
    }
}

fn diagonal_pair(plus: &Operator, minus: &Operator) -> RoundDiagonal {
    let d = |op: &Operator| [op.entry(0, 0), op.entry(1, 1), op.entry(2, 2), op.entry(3, 3)];
    RoundDiagonal { plus: d(plus), minus: d(minus) }
}

fn apply(d: &[Complex64; 4], v: &DVector<Complex64>) -> DVector<Complex64> {
    DVector::from_fn(4, |i, _| d[i] * v[i])
}

/// Samples `shots` runs of the protocol on `psi0`.
///
/// Each shot walks the rounds, drawing the `±1` outcome with its Born
/// probability and renormalizing the photonic state. Pauli faults are drawn
/// per round; Gaussian noise draws fresh gate offsets per round. After the
/// run the photons are measured in the parity basis to detect a parity error.
pub fn trajectory_sample(config: &ProtocolConfig, psi0: &PureState, shots: u64, seed: u64) -> Result<TrajectoryTally> {
    config.validate()?;
    if shots == 0 {
        return Err(Error::InvalidSampleCount { name: "shots", value: 0 });
    }
    if psi0.dim() != 4 {
        return Err(Error::DimensionMismatch { left: 4, right: psi0.dim() });
    }
    let phi_m = config.measurement_angle();
    let source = match config.noise {
        NoiseModel::Gaussian { w } => RoundSource::Gaussian {
            phi: config.phi,
            phi_meas: phi_m,
            normal: Normal::new(0.0, w).map_err(|_| Error::InvalidAngle { name: "w", value: w })?,
        },
        _ => {
            let mut acc = 0.0;
            let terms = round_mixture(config)?
                .into_iter()
                .map(|(w, plus, minus)| {
                    acc += w;
                    (acc, diagonal_pair(&plus, &minus))
                })
                .collect();
            RoundSource::Mixture(terms)
        }
    };
    let n = config.n as usize;
    let corrections: Vec<[Complex64; 4]> = (1..=config.n)
        .map(|k| {
            if config.correction {
                let r = phase_correction(k, phi_m);
                [r.entry(0, 0), r.entry(1, 1), r.entry(2, 2), r.entry(3, 3)]
            } else {
                [Complex64::new(1.0, 0.0); 4]
            }
        })
        .collect();

    let root = SeedStream::new(seed).split(label::SHOTS);
    let chunks = shots.div_ceil(SHOTS_PER_CHUNK);
    let partial: Vec<TrajectoryTally> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = root.split(c).rng();
            let count = SHOTS_PER_CHUNK.min(shots - c * SHOTS_PER_CHUNK);
            let mut tally = TrajectoryTally::empty(n);
            for _ in 0..count {
                run_shot(psi0, n, &source, &corrections, &mut rng, &mut tally);
            }
            tally
        })
        .collect();
    let mut total = TrajectoryTally::empty(n);
    for t in &partial {
        total.merge(t);
    }
    Ok(total)
}

fn run_shot(
    psi0: &PureState,
    n: usize,
    source: &RoundSource,
    corrections: &[[Complex64; 4]],
    rng: &mut StreamRng,
    tally: &mut TrajectoryTally,
) {
    tally.shots += 1;
    let mut psi = psi0.amplitudes().clone();
    let mut heralded_round = None;
    for (k, correction) in corrections.iter().enumerate().take(n) {
        let round = source.draw(rng);
        let minus = apply(&round.minus, &psi);
        let p_minus = minus.norm_squared();
        if rng.random::<f64>() < p_minus {
            psi = apply(correction, &minus.unscale(p_minus.sqrt()));
            heralded_round = Some(k);
            break;
        }
        let plus = apply(&round.plus, &psi);
        psi = plus.unscale(plus.norm());
    }
    let even_weight = psi[0].norm_sqr() + psi[3].norm_sqr();
    let rho = DensityMatrix::from_vector(&psi);
    let wrong_parity = match heralded_round {
        Some(k) => {
            tally.even_counts[k] += 1;
            tally.even_state_sums[k].add_assign(&rho);
            1.0 - even_weight
        }
        None => {
            tally.odd_count += 1;
            tally.odd_state_sum.add_assign(&rho);
            even_weight
        }
    };
    if rng.random::<f64>() < wrong_parity {
        tally.parity_errors += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::exact_output;
    use std::f64::consts::PI;

    #[test]
    fn perfect_gate_never_heralds_odd_input() {
        let t = trajectory_sample(&ProtocolConfig::new(PI, 3), &PureState::basis(4, 1), 5000, 1).unwrap();
        assert_eq!(t.odd_count, 5000);
        assert_eq!(t.parity_errors, 0);
    }

    #[test]
    fn born_frequencies_match_exact_channel() {
        let psi = crate::simulator::input_state(3, 0).unwrap();
        for noise in [
            NoiseModel::None,
            NoiseModel::PauliXBetween { p: 0.3 },
            NoiseModel::DepolarizingBefore { p: 0.4 },
            NoiseModel::Imbalanced { delta1: 0.2, delta2: -0.1 },
        ] {
            let cfg = ProtocolConfig::new(0.7 * PI, 3).with_noise(noise);
            let shots = 40_000;
            let t = trajectory_sample(&cfg, &psi, shots, 5).unwrap();
            let (_, probs) = exact_output(&cfg, &psi.outer()).unwrap();
            let (even, odd) = t.frequencies();
            let check = |f: f64, p: f64| {
                let sigma = (p * (1.0 - p) / shots as f64).sqrt().max(1e-9);
                assert!((f - p).abs() < 4.0 * sigma, "{noise:?}: {f} vs {p}");
            };
            for (f, p) in even.iter().zip(&probs.even) {
                check(*f, *p);
            }
            check(odd, probs.odd);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = ProtocolConfig::new(0.9 * PI, 2).with_noise(NoiseModel::Gaussian { w: 0.1 });
        let psi = PureState::basis(4, 3);
        let a = trajectory_sample(&cfg, &psi, 20_000, 2).unwrap();
        assert_eq!(a, trajectory_sample(&cfg, &psi, 20_000, 2).unwrap());
        assert_eq!(a.shots, 20_000);
    }

    #[test]
    fn conditional_even_state_is_corrected() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = PureState::two_qubit(
            Complex64::new(s, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(s, 0.0),
        )
        .unwrap();
        let t = trajectory_sample(&ProtocolConfig::new(0.9 * PI, 3), &bell, 2000, 8).unwrap();
        for k in 1..=3 {
            if let Some(rho) = t.even_conditional_state(k) {
                assert!((rho.expectation(&bell) - 1.0).abs() < 1e-12, "round {k}");
            }
        }
        assert!(t.even_conditional_state(0).is_none());
        assert!(t.even_conditional_state(4).is_none());
    }

    #[test]
    fn rejects_zero_shots() {
        assert!(trajectory_sample(&ProtocolConfig::new(1.0, 1), &PureState::basis(4, 0), 0, 0).is_err());
    }
}
