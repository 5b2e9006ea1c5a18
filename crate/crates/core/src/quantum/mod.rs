//! Dense linear algebra on 2-, 4- and 8-dimensional Hilbert spaces.
//!
//! Two-qubit operators use the ordering `|q1 q2⟩` with index `2·q1 + q2`, so
//! `|01⟩` means the first qubit is `0` and the second is `1`. The matter
//! qubit of the three-qubit circuit is always the last tensor factor.

mod fidelity;
pub mod gates;
mod haar;
mod operator;
mod state;

pub use fidelity::{parity_split, rank2_fidelity, rank2_fidelity_ensemble, state_fidelity, Branch, ParitySplit};
pub use haar::{haar_random_state, haar_random_state_seeded};
pub use operator::Operator;
pub use state::{DensityMatrix, PureState};

pub use num_complex::Complex64;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `e^{iθ}`
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}
