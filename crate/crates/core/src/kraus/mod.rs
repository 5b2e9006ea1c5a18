//! Kraus families of the repeated parity-projection protocol.
//!
//! Single rounds are obtained by contracting the explicit three-qubit circuit
//! (`Q1 ⊗ Q2 ⊗ m`) against the matter qubit's preparation and measurement
//! kets. The n-round families are written in closed form; tests hold the two
//! against each other.

mod channel;
mod compose;
mod families;
mod noise;
mod rounds;

pub use channel::KrausChannel;
pub use compose::{compose_protocol_channel, OutcomeProbabilities, ProtocolOutput};
pub use families::{kraus_ideal_family, kraus_imbalanced_family, naive_channel, naive_projectors, phase_correction};
pub use noise::{depolarizing_to_dephasing, NoiseModel};
pub use rounds::{
    contract_matter, pauli_round, pauli_round_kraus, round_operators, single_round_kraus, MatterFault, PauliRound,
};
