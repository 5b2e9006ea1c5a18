use super::{kraus_imbalanced_family, pauli_round, phase_correction, PauliRound};
use crate::config::ProtocolConfig;
use crate::quantum::{gates, DensityMatrix};
use crate::{Error, Result, NUMERIC_TOL};

/// Un-normalized photonic states per outcome class: `even[k−1]` is the state
/// heralded by the first `−1` in round `k`, `odd` follows `n` outcomes `+1`.
/// Traces are the class probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolOutput {
    pub even: Vec<DensityMatrix>,
    pub odd: DensityMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeProbabilities {
    pub even: Vec<f64>,
    pub odd: f64,
}

impl OutcomeProbabilities {
    pub fn total_even(&self) -> f64 {
        self.even.iter().sum()
    }
}

impl ProtocolOutput {
    pub fn probabilities(&self) -> OutcomeProbabilities {
        OutcomeProbabilities { even: self.even.iter().map(DensityMatrix::trace).collect(), odd: self.odd.trace() }
    }

    pub fn total_probability(&self) -> f64 {
        self.even.iter().map(DensityMatrix::trace).sum::<f64>() + self.odd.trace()
    }

    /// The unconditional output state `Σ_k ρ̃_k + ρ̃_odd`.
    pub fn combined(&self) -> DensityMatrix {
        let mut out = self.odd.clone();
        for rho in &self.even {
            out.add_assign(rho);
        }
        out
    }

    /// Probability that the heralded parity disagrees with the state's parity.
    pub fn error_probability(&self) -> f64 {
        let p_odd = gates::p_odd();
        let leaked: f64 = self.even.iter().map(|rho| rho.projected_trace(&p_odd)).sum();
        leaked + self.odd.projected_trace(&gates::p_even())
    }
}

/// Runs `config.n` rounds on `rho0` and groups the result by outcome class.
///
/// Coherent models use the closed-form n-round families; Pauli models use the
/// binomial expansion over the number of faulty rounds, which is exact because
/// every round operator is diagonal. Gaussian noise has no fixed channel and
/// is rejected.
pub fn compose_protocol_channel(rho0: &DensityMatrix, config: &ProtocolConfig) -> Result<ProtocolOutput> {
    config.validate()?;
    if rho0.dim() != 4 {
        return Err(Error::DimensionMismatch { left: 4, right: rho0.dim() });
    }
    let phi_m = config.measurement_angle();
    let mut out = if config.noise.is_pauli() {
        let round = pauli_round(&config.noise, config.phi, phi_m)?;
        binomial_classes(rho0, &round, config.n)
    } else if matches!(config.noise, crate::NoiseModel::Gaussian { .. }) {
        return Err(Error::UnsupportedNoise("gaussian"));
    } else {
        let (phi1, phi2) = config.gate_angles();
        let family = kraus_imbalanced_family(config.n, phi_m, phi1 - phi_m, phi2 - phi_m)?;
        let n = config.n as usize;
        ProtocolOutput {
            even: family.ops()[..n].iter().map(|e| rho0.conjugate_by(e)).collect(),
            odd: rho0.conjugate_by(&family.ops()[n]),
        }
    };
    if config.correction {
        for (k, rho) in out.even.iter_mut().enumerate() {
            *rho = rho.conjugate_by(&phase_correction(k as u32 + 1, phi_m));
        }
    }
    let total = out.total_probability();
    if (total - 1.0).abs() > NUMERIC_TOL * rho0.trace().max(1.0) && (rho0.trace() - 1.0).abs() < NUMERIC_TOL {
        return Err(Error::BranchProbabilities(total));
    }
    Ok(out)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `ρ̃_odd  = Σ_j C(n,j)(1−p)^{n−j}p^j A₊^{n−j}B₊^j ρ (…)†`
/// `ρ̃_k    = Σ_j C(k−1,j)(1−p)^{k−1−j}p^j [(1−p)A₋ K ρ K†A₋† + p B₋ K ρ K†B₋†]`,
/// `K = A₊^{k−1−j}B₊^j`, with `A` the clean and `B` the faulty operators.
fn binomial_classes(rho0: &DensityMatrix, r: &PauliRound, n: u32) -> ProtocolOutput {
    let p = r.p;
    let weight = |m: u32, j: u32| binomial(m, j) * (1.0 - p).powi((m - j) as i32) * p.powi(j as i32);
    let survivor = |m: u32, j: u32| &r.clean_plus.pow(m - j) * &r.faulty_plus.pow(j);

    let mut even = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let mut rho = DensityMatrix::zeros(4);
        for j in 0..k {
            let w = weight(k - 1, j);
            if w == 0.0 {
                continue;
            }
            let kept = rho0.conjugate_by(&survivor(k - 1, j));
            rho.add_scaled(&kept.conjugate_by(&r.clean_minus), w * (1.0 - p));
            rho.add_scaled(&kept.conjugate_by(&r.faulty_minus), w * p);
        }
        even.push(rho);
    }
    let mut odd = DensityMatrix::zeros(4);
    for j in 0..=n {
        let w = weight(n, j);
        if w != 0.0 {
            odd.add_scaled(&rho0.conjugate_by(&survivor(n, j)), w);
        }
    }
    ProtocolOutput { even, odd }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kraus::{pauli_round_kraus, NoiseModel};
    use crate::quantum::{haar_random_state_seeded, Complex64, PureState};
    use std::f64::consts::PI;

    fn basis(i: usize) -> DensityMatrix {
        PureState::basis(4, i).outer()
    }

    #[test]
    fn perfect_gate_keeps_odd_input_odd() {
        for n in 1..=4 {
            let out = compose_protocol_channel(&basis(1), &ProtocolConfig::new(PI, n)).unwrap();
            assert!((out.odd.trace() - 1.0).abs() < 1e-14);
            assert!(out.even.iter().all(|r| r.trace() < 1e-28));
        }
    }

    #[test]
    fn first_round_even_probability() {
        let psi = haar_random_state_seeded(4, 99).unwrap();
        let pr = psi.probabilities();
        let out = compose_protocol_channel(&psi.outer(), &ProtocolConfig::new(0.9 * PI, 3)).unwrap();
        let expect = 0.975528258147576786 * (pr[0] + pr[3]);
        assert!((out.even[0].trace() - expect).abs() < 1e-14);
        assert!((out.total_probability() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn binomial_matches_round_by_round() {
        let psi = PureState::two_qubit(
            Complex64::new(0.5, 0.1),
            Complex64::new(-0.3, 0.4),
            Complex64::new(0.2, -0.5),
            Complex64::new(0.35, 0.2),
        )
        .unwrap_or_else(|_| haar_random_state_seeded(4, 1).unwrap());
        let rho0 = psi.outer();
        for noise in [
            NoiseModel::PauliZBefore { p: 0.02 },
            NoiseModel::PauliXBetween { p: 0.08 },
            NoiseModel::PauliYBetween { p: 0.05 },
        ] {
            let n = 4;
            let cfg = ProtocolConfig::new(0.9 * PI, n).with_noise(noise).with_correction(false);
            let out = compose_protocol_channel(&rho0, &cfg).unwrap();

            let ch = pauli_round_kraus(&noise, 0.9 * PI).unwrap();
            let (plus, minus): (Vec<_>, Vec<_>) = ch.iter().partition(|(l, _)| l.starts_with('+'));
            let mut alive = rho0.clone();
            for k in 0..n as usize {
                let mut heralded = DensityMatrix::zeros(4);
                for (_, op) in &minus {
                    heralded.add_assign(&alive.conjugate_by(op));
                }
                assert!(heralded.max_abs_diff(&out.even[k]) < 1e-12, "{noise:?} round {k}");
                let mut next = DensityMatrix::zeros(4);
                for (_, op) in &plus {
                    next.add_assign(&alive.conjugate_by(op));
                }
                alive = next;
            }
            assert!(alive.max_abs_diff(&out.odd) < 1e-12);
        }
    }

    #[test]
    fn correction_preserves_probabilities() {
        let rho0 = haar_random_state_seeded(4, 8).unwrap().outer();
        for noise in [
            NoiseModel::None,
            NoiseModel::PauliXBetween { p: 0.3 },
            NoiseModel::Imbalanced { delta1: 0.1, delta2: -0.05 },
        ] {
            let base = ProtocolConfig::new(0.85 * PI, 5).with_noise(noise);
            let a = compose_protocol_channel(&rho0, &base.clone().with_correction(true)).unwrap();
            let b = compose_protocol_channel(&rho0, &base.with_correction(false)).unwrap();
            let (pa, pb) = (a.probabilities(), b.probabilities());
            for (x, y) in pa.even.iter().zip(&pb.even) {
                assert!((x - y).abs() < 1e-14);
            }
            assert!((a.error_probability() - b.error_probability()).abs() < 1e-14);
            assert!((a.total_probability() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn depolarizing_matches_dephasing() {
        let rho0 = haar_random_state_seeded(4, 3).unwrap().outer();
        let a = compose_protocol_channel(
            &rho0,
            &ProtocolConfig::new(0.9 * PI, 3).with_noise(NoiseModel::DepolarizingBefore { p: 0.03 }),
        )
        .unwrap();
        let b = compose_protocol_channel(
            &rho0,
            &ProtocolConfig::new(0.9 * PI, 3).with_noise(NoiseModel::PauliZBefore { p: 0.02 }),
        )
        .unwrap();
        assert!(a.combined().max_abs_diff(&b.combined()) < 1e-14);
    }

    #[test]
    fn gaussian_and_bad_input_rejected() {
        let rho0 = basis(0);
        let cfg = ProtocolConfig::new(1.0, 2).with_noise(NoiseModel::Gaussian { w: 0.1 });
        assert_eq!(compose_protocol_channel(&rho0, &cfg), Err(Error::UnsupportedNoise("gaussian")));
        let small = PureState::basis(2, 0).outer();
        assert!(compose_protocol_channel(&small, &ProtocolConfig::new(1.0, 2)).is_err());
        assert_eq!(compose_protocol_channel(&rho0, &ProtocolConfig::new(1.0, 0)), Err(Error::InvalidCycles));
    }

    #[test]
    fn binomial_coefficients() {
        assert_eq!(binomial(5, 0), 1.0);
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(20, 10), 184756.0);
    }
}
