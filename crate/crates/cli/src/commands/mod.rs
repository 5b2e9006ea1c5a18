pub mod audit;
pub mod basis;
pub mod errp;
pub mod fidelity;
pub mod replay;

use crate::CliError;

pub(crate) fn require(ok: bool, message: impl Into<String>) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Invalid(message.into()))
    }
}

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
pub(crate) fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    let h = (hi - lo) / (steps - 1) as f64;
    (0..steps).map(|i| if i + 1 == steps { hi } else { lo + h * i as f64 }).collect()
}
