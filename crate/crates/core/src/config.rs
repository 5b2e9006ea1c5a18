//! Protocol configuration shared by the channel builders and the simulator.

use crate::error::{check_angle, check_cycles};
use crate::kraus::NoiseModel;
use crate::Result;

/// Every knob of one protocol run.
///
/// Gate angles derive from `phi` and the noise model: imbalanced noise sets
/// them to `phi + δ₁` and `phi + δ₂`, everything else leaves both at `phi`.
/// The measurement angle defaults to their midpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolConfig {
    pub phi: f64,
    pub n: u32,
    pub noise: NoiseModel,
    pub phi_meas: Option<f64>,
    /// Apply `R_Z(π − mφ_meas)` on Q1 after an even outcome in round `m`.
    pub correction: bool,
    pub seed: Option<u64>,
}

impl ProtocolConfig {
    /// Noise-free, phase-corrected protocol with `n` rounds at angle `phi`.
    pub fn new(phi: f64, n: u32) -> Self {
        Self { phi, n, noise: NoiseModel::None, phi_meas: None, correction: true, seed: None }
    }

    pub fn with_noise(mut self, noise: NoiseModel) -> Self {
        self.noise = noise;
        self
    }

    pub fn with_measurement_angle(mut self, phi_meas: f64) -> Self {
        self.phi_meas = Some(phi_meas);
        self
    }

    pub fn with_correction(mut self, correction: bool) -> Self {
        self.correction = correction;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_cycles(mut self, n: u32) -> Self {
        self.n = n;
        self
    }

    /// `(φ₁, φ₂)` as realized by the two gates in every round.
    pub fn gate_angles(&self) -> (f64, f64) {
        match self.noise {
            NoiseModel::Imbalanced { delta1, delta2 } => (self.phi + delta1, self.phi + delta2),
            _ => (self.phi, self.phi),
        }
    }

    pub fn measurement_angle(&self) -> f64 {
        self.phi_meas.unwrap_or_else(|| {
            let (a, b) = self.gate_angles();
            0.5 * (a + b)
        })
    }

    pub fn validate(&self) -> Result<()> {
        check_angle("phi", self.phi)?;
        check_cycles(self.n)?;
        if let Some(m) = self.phi_meas {
            check_angle("phi_meas", m)?;
        }
        self.noise.validate()
    }
}
