//! Randomized equivalence and invariance checks across the whole crate.

use std::f64::consts::PI;

use parity_core::analytics::{error_coefficients, ErrorProbabilityReport};
use parity_core::kraus::{
    compose_protocol_channel, kraus_ideal_family, kraus_imbalanced_family, naive_channel, pauli_round_kraus,
    single_round_kraus,
};
use parity_core::quantum::{haar_random_state, parity_split, rank2_fidelity, state_fidelity};
use parity_core::rng::SeedStream;
use parity_core::simulator::{
    avg_channel_fidelity, exact_classes, exact_output, gaussian_avg_fidelity, input_state, trajectory_sample,
    PureProtocol,
};
use parity_core::{NoiseModel, ProtocolConfig, PureState};
use proptest::prelude::*;
use rand::Rng;

fn random_noise(kind: usize, rng: &mut impl Rng) -> NoiseModel {
    let p = rng.random_range(0.0..=1.0);
    match kind {
        0 => NoiseModel::None,
        1 => NoiseModel::Imbalanced { delta1: rng.random_range(-0.6..0.6), delta2: rng.random_range(-0.6..0.6) },
        2 => NoiseModel::PauliZBefore { p },
        3 => NoiseModel::PauliXBetween { p },
        4 => NoiseModel::PauliYBetween { p },
        _ => NoiseModel::DepolarizingBefore { p },
    }
}

#[test]
fn every_family_is_complete() {
    let mut rng = SeedStream::new(100).rng();
    let mut checked = 0;
    for i in 0..1200 {
        let n = rng.random_range(1..=6u32);
        let phi = rng.random_range(0.0..2.0 * PI);
        let err = match i % 6 {
            0 => kraus_ideal_family(n, phi, i % 12 == 0).unwrap().completeness_error(),
            1 => kraus_imbalanced_family(n, phi, rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                .unwrap()
                .completeness_error(),
            2 => naive_channel(phi).unwrap().completeness_error(),
            3 => single_round_kraus(phi, rng.random_range(0.0..7.0), rng.random_range(0.0..7.0))
                .unwrap()
                .completeness_error(),
            _ => {
                let noise = random_noise(2 + i % 4, &mut rng);
                pauli_round_kraus(&noise, phi).unwrap().completeness_error()
            }
        };
        assert!(err < 1e-12, "case {i}: {err}");
        checked += 1;
    }
    assert!(checked >= 1000);
}

#[test]
fn class_probabilities_sum_to_one() {
    let mut rng = SeedStream::new(101).rng();
    for i in 0..600 {
        let noise = random_noise(i % 6, &mut rng);
        let cfg = ProtocolConfig::new(rng.random_range(0.0..2.0 * PI), rng.random_range(1..=6))
            .with_noise(noise)
            .with_correction(i % 2 == 0);
        let rho0 = haar_random_state(4, &mut rng).unwrap().outer();
        let a = compose_protocol_channel(&rho0, &cfg).unwrap();
        let b = exact_classes(&cfg, &rho0).unwrap();
        assert!((a.total_probability() - 1.0).abs() < 1e-10);
        assert!((b.total_probability() - 1.0).abs() < 1e-10);
    }
}

/// The closed-form error weights, applied to the input's basis populations,
/// must equal the error probability of the round-by-round simulation.
#[test]
fn closed_forms_match_simulation() {
    let mut rng = SeedStream::new(102).rng();
    for kind in 0..6 {
        let mut worst: f64 = 0.0;
        for _ in 0..500 {
            let noise = random_noise(kind, &mut rng);
            let n = rng.random_range(1..=5u32);
            let phi = rng.random_range(0.0..2.0 * PI);
            let psi = haar_random_state(4, &mut rng).unwrap();
            // the closed forms measure in the nominal basis
            let cfg = ProtocolConfig::new(phi, n).with_noise(noise).with_measurement_angle(phi);
            let report = ErrorProbabilityReport::new(n, error_coefficients(&noise, n, phi).unwrap(), &psi).unwrap();
            let simulated = exact_classes(&cfg, &psi.outer()).unwrap().error_probability();
            worst = worst.max((report.value_for_state - simulated).abs());
        }
        assert!(worst < 1e-10, "model {kind}: worst deviation {worst}");
    }
}

#[test]
fn binomial_expansion_matches_sequential_rounds() {
    let mut rng = SeedStream::new(103).rng();
    for i in 0..300 {
        let noise = random_noise(2 + i % 4, &mut rng);
        let cfg = ProtocolConfig::new(rng.random_range(0.0..2.0 * PI), rng.random_range(1..=6)).with_noise(noise);
        let rho0 = haar_random_state(4, &mut rng).unwrap().outer();
        let a = compose_protocol_channel(&rho0, &cfg).unwrap();
        let b = exact_classes(&cfg, &rho0).unwrap();
        assert!(a.combined().max_abs_diff(&b.combined()) < 1e-12, "{noise:?}");
    }
}

#[test]
fn rank2_fidelity_matches_uhlmann_on_protocol_outputs() {
    let mut rng = SeedStream::new(104).rng();
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let noise = random_noise(i % 6, &mut rng);
        let cfg = ProtocolConfig::new(rng.random_range(0.5 * PI..PI), rng.random_range(1..=6))
            .with_noise(noise)
            .with_correction(i % 3 != 0);
        let psi = haar_random_state(4, &mut rng).unwrap();
        let split = parity_split(&psi).unwrap();
        let (rho, _) = exact_output(&cfg, &psi.outer()).unwrap();
        let f2 = rank2_fidelity(&split, &rho).unwrap();
        let fu = state_fidelity(&split.ideal_output(), &rho).unwrap();
        worst = worst.max((f2 - fu).abs());
        assert!((-1e-12..=1.0 + 1e-12).contains(&fu));
    }
    assert!(worst < 1e-10, "worst deviation {worst}");
}

#[test]
fn zero_noise_reductions_are_exact() {
    let mut rng = SeedStream::new(105).rng();
    for _ in 0..100 {
        let n = rng.random_range(1..=6u32);
        let phi = rng.random_range(0.0..2.0 * PI);
        let rho0 = haar_random_state(4, &mut rng).unwrap().outer();
        let base = compose_protocol_channel(&rho0, &ProtocolConfig::new(phi, n)).unwrap();
        for noise in [
            NoiseModel::Imbalanced { delta1: 0.0, delta2: 0.0 },
            NoiseModel::PauliZBefore { p: 0.0 },
            NoiseModel::PauliXBetween { p: 0.0 },
            NoiseModel::PauliYBetween { p: 0.0 },
            NoiseModel::DepolarizingBefore { p: 0.0 },
        ] {
            let out = compose_protocol_channel(&rho0, &ProtocolConfig::new(phi, n).with_noise(noise)).unwrap();
            assert!(out.combined().max_abs_diff(&base.combined()) < 1e-12, "{noise:?}");
        }
        let imb = kraus_imbalanced_family(n, phi, 0.0, 0.0).unwrap();
        let ideal = kraus_ideal_family(n, phi, false).unwrap();
        for (a, b) in imb.ops().iter().zip(ideal.ops()) {
            assert!(a.max_abs_diff(b) < 1e-12);
        }
    }
    let cfg = ProtocolConfig::new(0.9 * PI, 4);
    let clean = avg_channel_fidelity(&cfg, 64, 3).unwrap();
    let g = gaussian_avg_fidelity(&cfg.with_noise(NoiseModel::Gaussian { w: 0.0 }), 64, 4, 3).unwrap();
    assert!((g.mean - clean.mean).abs() < 1e-12);
}

#[test]
fn round_operators_commute() {
    let mut rng = SeedStream::new(106).rng();
    for i in 0..200 {
        let noise = random_noise(2 + i % 4, &mut rng);
        let ch = pauli_round_kraus(&noise, rng.random_range(0.0..2.0 * PI)).unwrap();
        for a in ch.ops() {
            for b in ch.ops() {
                assert!(a.commutator(b).matrix().camax() < 1e-12);
            }
        }
    }
}

#[test]
fn seeded_runs_are_bit_identical() {
    let cfg = ProtocolConfig::new(0.85 * PI, 3).with_noise(NoiseModel::PauliYBetween { p: 0.1 });
    assert_eq!(avg_channel_fidelity(&cfg, 100, 77).unwrap(), avg_channel_fidelity(&cfg, 100, 77).unwrap());
    let g = ProtocolConfig::new(0.9 * PI, 3).with_noise(NoiseModel::Gaussian { w: 0.1 });
    let a = gaussian_avg_fidelity(&g, 20, 16, 5).unwrap();
    assert_eq!(a.mean.to_bits(), gaussian_avg_fidelity(&g, 20, 16, 5).unwrap().mean.to_bits());
    let psi = input_state(1, 2).unwrap();
    assert_eq!(trajectory_sample(&g, &psi, 30_000, 4).unwrap(), trajectory_sample(&g, &psi, 30_000, 4).unwrap());
    assert_eq!(input_state(9, 3).unwrap(), input_state(9, 3).unwrap());
}

#[test]
fn single_thread_pool_gives_same_estimates() {
    let cfg = ProtocolConfig::new(0.8 * PI, 2).with_noise(NoiseModel::Gaussian { w: 0.05 });
    let many = gaussian_avg_fidelity(&cfg, 30, 12, 8).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let one = pool.install(|| gaussian_avg_fidelity(&cfg, 30, 12, 8).unwrap());
    assert_eq!(many, one);
    let pool3 = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    assert_eq!(many, pool3.install(|| gaussian_avg_fidelity(&cfg, 30, 12, 8).unwrap()));
}

#[test]
fn haar_moments() {
    let root = SeedStream::new(107);
    let mut rng = root.rng();
    let draws = 100_000;
    let mut pops = [0.0; 4];
    for _ in 0..draws {
        let psi = haar_random_state(4, &mut rng).unwrap();
        for (acc, p) in pops.iter_mut().zip(psi.probabilities()) {
            *acc += p;
        }
    }
    for p in pops {
        assert!((p / draws as f64 - 0.25).abs() < 0.005);
    }
    assert!(((pops[0] + pops[3]) / draws as f64 - 0.5).abs() < 0.01);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fidelity_estimates_are_bounded(phi in 0.3f64..PI, n in 1u32..6, seed in any::<u64>()) {
        let e = avg_channel_fidelity(&ProtocolConfig::new(phi, n), 16, seed).unwrap();
        prop_assert!(e.mean >= 0.0 && e.mean <= 1.0 + 1e-12);
        prop_assert!(e.std_dev >= 0.0);
    }

    #[test]
    fn pure_and_density_routes_agree(phi in 0.3f64..PI, d1 in -0.3f64..0.3, d2 in -0.3f64..0.3, n in 1u32..6, seed in any::<u64>()) {
        let cfg = ProtocolConfig::new(phi, n).with_noise(NoiseModel::Imbalanced { delta1: d1, delta2: d2 });
        let psi: PureState = input_state(seed, 0).unwrap();
        let pure = PureProtocol::from_config(&cfg).unwrap().fidelity(&psi).unwrap();
        let (rho, _) = exact_output(&cfg, &psi.outer()).unwrap();
        let dens = state_fidelity(&parity_split(&psi).unwrap().ideal_output(), &rho).unwrap();
        prop_assert!((pure - dens).abs() < 1e-10);
    }
}
