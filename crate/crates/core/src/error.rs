use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported dimension {0}: expected 2, 4 or 8")]
    InvalidDimension(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),
    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),
    #[error("cannot normalize a zero vector")]
    ZeroVector,
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix has negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),
    #[error("density matrix trace {0} is not 1")]
    NotUnitTrace(f64),
    #[error("Kraus operators are not complete (max deviation {0:e})")]
    IncompleteChannel(f64),
    #[error("{ops} operators but {labels} labels")]
    LabelMismatch { ops: usize, labels: usize },
    #[error("probability {name} = {value} outside [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("angle {name} = {value} is not finite")]
    InvalidAngle { name: &'static str, value: f64 },
    #[error("cycle count must be at least 1")]
    InvalidCycles,
    #[error("invalid sample count {name} = {value}")]
    InvalidSampleCount { name: &'static str, value: usize },
    #[error("noise model {0} is not supported here")]
    UnsupportedNoise(&'static str),
    #[error("negative fidelity discriminant {0:e}")]
    NegativeDiscriminant(f64),
    #[error("branch probabilities sum to {0}, expected 1")]
    BranchProbabilities(f64),
    #[error("need {expected} cycle angle pairs, got {got}")]
    CycleAngles { expected: usize, got: usize },
}

pub(crate) fn check_angle(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidAngle { name, value })
    }
}

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidProbability { name, value })
    }
}

pub(crate) fn check_cycles(n: u32) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::InvalidCycles)
    }
}
