use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::quantum::{DensityMatrix, Operator};
use crate::{Error, Result, CONSTRUCTION_TOL};

/// An ordered list of Kraus operators, each tagged with the outcome record it
/// belongs to (`"odd@3"`, `"even@2"`, `"-1,err"`, ...).
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    ops: Vec<Operator>,
    labels: Vec<String>,
}

impl KrausChannel {
    /// Builds a channel, checking `‖Σ E†E − I‖_max < 1e-12`.
    pub fn new(ops: Vec<Operator>, labels: Vec<String>) -> Result<Self> {
        if ops.len() != labels.len() {
            return Err(Error::LabelMismatch { ops: ops.len(), labels: labels.len() });
        }
        let dim = ops.first().map(Operator::dim).ok_or(Error::IncompleteChannel(1.0))?;
        if let Some(bad) = ops.iter().find(|op| op.dim() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: bad.dim() });
        }
        let channel = Self { ops, labels };
        let err = channel.completeness_error();
        if err >= CONSTRUCTION_TOL {
            return Err(Error::IncompleteChannel(err));
        }
        Ok(channel)
    }

    pub fn dim(&self) -> usize {
        self.ops[0].dim()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[Operator] {
        &self.ops
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, label: &str) -> Option<&Operator> {
        self.labels.iter().position(|l| l == label).map(|i| &self.ops[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Operator)> {
        self.labels.iter().map(String::as_str).zip(self.ops.iter())
    }

    /// `‖Σ E†E − I‖_max`
    pub fn completeness_error(&self) -> f64 {
        let d = self.dim();
        let mut sum = DMatrix::<Complex64>::identity(d, d).scale(-1.0);
        for op in &self.ops {
            sum += op.matrix().adjoint() * op.matrix();
        }
        sum.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `Σ E ρ E†`
    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        let mut out = DensityMatrix::zeros(rho.dim());
        for op in &self.ops {
            out.add_assign(&rho.conjugate_by(op));
        }
        out
    }
}
