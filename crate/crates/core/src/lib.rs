//! Simulation and analysis of repeated CPhase parity projection on two
//! photonic qubits.
//!
//! A matter qubit prepared in `|+⟩` interacts with both photons through
//! CPhase gates of angle `φ < π` and is measured in the rotated basis
//! `|±_φ⟩`. An outcome of `-1` heralds an even-parity projection; outcomes
//! of `+1` are followed by another round. After `n` rounds the residual
//! even-parity leakage of the odd branch is suppressed as `cos^n(φ/2)`.
//!
//! The crate is layered:
//!
//! * [`quantum`]: dense complex operators and states on 2/4/8-dimensional
//!   spaces, standard gates, Haar sampling and fidelities.
//! * [`kraus`]: every Kraus family of the protocol (ideal, imbalanced,
//!   naive and Pauli-faulty) and the composition of `n` rounds.
//! * [`analytics`]: closed-form error probabilities for each noise model.
//! * [`simulator`]: exact round-by-round channel evaluation built from the
//!   explicit three-qubit circuit, shot-level trajectory sampling, and
//!   Monte Carlo estimators of the average channel fidelity.
//!
//! The simulator never uses a closed form, so it doubles as the independent
//! check for everything in [`analytics`] and [`kraus`].

pub mod analytics;
pub mod config;
mod error;
pub mod kraus;
pub mod quantum;
pub mod rng;
pub mod simulator;

pub use config::ProtocolConfig;
pub use error::{Error, Result};
pub use kraus::{KrausChannel, NoiseModel};
pub use quantum::{DensityMatrix, Operator, PureState};

/// Version of this crate, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Tolerance for quantities fixed at construction (unitarity, normalization,
/// Kraus completeness).
pub const CONSTRUCTION_TOL: f64 = 1e-12;

/// Tolerance for computed equalities (fidelity symmetry, probability sums,
/// closed form against exact channel).
pub const NUMERIC_TOL: f64 = 1e-10;
