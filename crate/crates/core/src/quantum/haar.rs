use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::PureState;
use crate::rng::SeedStream;
use crate::{Error, Result};

/// Haar-random pure state: i.i.d. standard complex Gaussian amplitudes,
/// normalized. A zero draw (probability zero) is redrawn.
pub fn haar_random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<PureState> {
    if dim < 2 {
        return Err(Error::InvalidDimension(dim));
    }
    loop {
        let v = DVector::from_fn(dim, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
        match PureState::normalize(v) {
            Ok(s) => return Ok(s),
            Err(Error::ZeroVector) => continue,
            Err(e) => return Err(e),
        }
    }
}

pub fn haar_random_state_seeded(dim: usize, seed: u64) -> Result<PureState> {
    haar_random_state(dim, &mut SeedStream::new(seed).rng())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::gates;

    #[test]
    fn deterministic_under_seed() {
        assert_eq!(haar_random_state_seeded(4, 11).unwrap(), haar_random_state_seeded(4, 11).unwrap());
        assert_ne!(haar_random_state_seeded(4, 11).unwrap(), haar_random_state_seeded(4, 12).unwrap());
    }

    #[test]
    fn rejects_dim_one() {
        assert_eq!(haar_random_state_seeded(1, 0), Err(Error::InvalidDimension(1)));
    }

    fn mean_populations(draws: usize, seed: u64, rotate: bool) -> Vec<f64> {
        let mut rng = SeedStream::new(seed).rng();
        let rot = {
            // fixed non-diagonal two-qubit unitary
            let h = crate::Operator::from_rows(
                2,
                &[
                    Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                    Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                    Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                    Complex64::new(-std::f64::consts::FRAC_1_SQRT_2, 0.0),
                ],
            )
            .unwrap();
            &h.tensor(&gates::rz(0.4)).unwrap() * &gates::cphase(2.1)
        };
        let mut acc = [0.0; 4];
        for _ in 0..draws {
            let mut s = haar_random_state(4, &mut rng).unwrap();
            if rotate {
                s = rot.apply(&s).unwrap();
            }
            for (a, p) in acc.iter_mut().zip(s.probabilities()) {
                *a += p;
            }
        }
        acc.iter().map(|a| a / draws as f64).collect()
    }

    #[test]
    fn population_moments() {
        let means = mean_populations(100_000, 3, false);
        for m in &means {
            assert!((m - 0.25).abs() < 0.005, "{means:?}");
        }
        assert!((means[0] + means[3] - 0.5).abs() < 0.01);
    }

    #[test]
    fn invariant_under_fixed_unitary() {
        let plain = mean_populations(100_000, 5, false);
        let rotated = mean_populations(100_000, 5, true);
        for (a, b) in plain.iter().zip(&rotated) {
            assert!((a - b).abs() < 0.005, "{plain:?} vs {rotated:?}");
        }
    }
}
