//! Independent evaluation of the protocol from the explicit circuit.
//!
//! Nothing here uses a closed-form Kraus family or error formula: rounds are
//! contracted from the three-qubit gates and composed one at a time. This
//! makes the module the reference against which [`crate::analytics`] and
//! [`crate::kraus`] are tested.

mod estimators;
mod exact;
mod trajectory;

pub use estimators::{
    avg_channel_fidelity, fidelity_for_state, gaussian_avg_fidelity, naive_avg_fidelity, FidelityEstimate,
};
pub use exact::{exact_classes, exact_output, PureProtocol, RoundDiagonal};
pub use trajectory::{trajectory_sample, TrajectoryTally};

use crate::quantum::{haar_random_state, PureState};
use crate::rng::{label, SeedStream};
use crate::Result;

/// The `index`-th Haar-random input of the state stream under `seed`. Every
/// estimator draws its inputs from here, so runs with equal seeds share them.
pub fn input_state(seed: u64, index: u64) -> Result<PureState> {
    haar_random_state(4, &mut SeedStream::new(seed).split(label::STATES).split(index).rng())
}
