use std::ops::Add;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{Operator, ZERO};
use crate::{Error, Result, CONSTRUCTION_TOL};

/// Eigenvalues below this are a validation failure, not rounding noise.
const NEGATIVE_EIGENVALUE_TOL: f64 = 1e-10;

/// A normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amps: DVector<Complex64>,
}

impl PureState {
    pub fn new(amps: DVector<Complex64>) -> Result<Self> {
        if amps.len() < 2 {
            return Err(Error::InvalidDimension(amps.len()));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state"));
        }
        let norm2 = amps.norm_squared();
        if (norm2 - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(Self { amps })
    }

    pub fn from_slice(amps: &[Complex64]) -> Result<Self> {
        Self::new(DVector::from_row_slice(amps))
    }

    /// Rescales `v` to unit norm.
    pub fn normalize(v: DVector<Complex64>) -> Result<Self> {
        let norm = v.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Self::new(v.unscale(norm))
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim && dim >= 2, "basis index out of range");
        let mut amps = DVector::from_element(dim, ZERO);
        amps[index] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    /// Two-qubit state from its coefficients `c₀₀, c₀₁, c₁₀, c₁₁`.
    pub fn two_qubit(c00: Complex64, c01: Complex64, c10: Complex64, c11: Complex64) -> Result<Self> {
        Self::from_slice(&[c00, c01, c10, c11])
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn amplitude(&self, i: usize) -> Complex64 {
        self.amps[i]
    }

    /// `|c_i|²` for every basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amps.dotc(&other.amps)
    }

    /// `|ψ⟩⟨ψ|`
    pub fn outer(&self) -> DensityMatrix {
        DensityMatrix::from_vector(&self.amps)
    }
}

/// A Hermitian positive semidefinite matrix.
///
/// Normalized states have unit trace. Un-normalized ones carry the
/// probability of the measurement record that produced them as their trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    m: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validated unit-trace density matrix.
    pub fn new(m: DMatrix<Complex64>) -> Result<Self> {
        let rho = Self::new_unnormalized(m)?;
        let tr = rho.trace();
        if (tr - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::NotUnitTrace(tr));
        }
        Ok(rho)
    }

    /// Validated Hermitian PSD matrix of arbitrary trace.
    pub fn new_unnormalized(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("density matrix"));
        }
        let rho = Self { m };
        rho.validate(CONSTRUCTION_TOL)?;
        Ok(rho)
    }

    /// Skips validation, so tests can build malformed inputs.
    #[cfg(test)]
    pub(crate) fn from_matrix_unchecked(m: DMatrix<Complex64>) -> Self {
        Self { m }
    }

    /// `v v†` for an arbitrary (possibly sub-normalized) vector.
    pub fn from_vector(v: &DVector<Complex64>) -> Self {
        Self { m: v * v.adjoint() }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { m: DMatrix::from_element(dim, dim, ZERO) }
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self { m: DMatrix::identity(dim, dim).unscale(dim as f64) }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[(row, col)]
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.m[(i, j)] - self.m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Hermitian part's eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.m + self.m.adjoint()).unscale(2.0);
        let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Checks Hermiticity to `herm_tol` and eigenvalues against `-1e-10`.
    pub fn validate(&self, herm_tol: f64) -> Result<()> {
        let h = self.hermiticity_error();
        if h > herm_tol {
            return Err(Error::NotHermitian(h));
        }
        let min = self.eigenvalues().first().copied().unwrap_or(0.0);
        if min < -NEGATIVE_EIGENVALUE_TOL {
            return Err(Error::NegativeEigenvalue(min));
        }
        Ok(())
    }

    /// `⟨a|ρ|b⟩`
    pub fn matrix_element(&self, a: &PureState, b: &PureState) -> Complex64 {
        a.amplitudes().dotc(&(&self.m * b.amplitudes()))
    }

    /// `⟨ψ|ρ|ψ⟩`
    pub fn expectation(&self, psi: &PureState) -> f64 {
        self.matrix_element(psi, psi).re
    }

    /// `K ρ K†`
    pub fn conjugate_by(&self, k: &Operator) -> DensityMatrix {
        assert_eq!(k.dim(), self.dim(), "operator and state dimensions differ");
        let km = k.matrix();
        Self { m: km * &self.m * km.adjoint() }
    }

    /// `tr(P ρ P)` for a projector `P`, i.e. `tr(P ρ)`.
    pub fn projected_trace(&self, projector: &Operator) -> f64 {
        (projector.matrix() * &self.m).trace().re
    }

    pub fn scale(&self, c: f64) -> DensityMatrix {
        Self { m: self.m.scale(c) }
    }

    /// Divides by the trace.
    pub fn normalized(&self) -> Result<DensityMatrix> {
        let tr = self.trace();
        if tr <= 0.0 || !tr.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(1.0 / tr))
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim(), "state dimensions differ");
        self.m.iter().zip(other.m.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn add_assign(&mut self, other: &DensityMatrix) {
        self.m += &other.m;
    }

    pub fn add_scaled(&mut self, other: &DensityMatrix, c: f64) {
        self.m += other.m.scale(c);
    }
}

impl Add for &DensityMatrix {
    type Output = DensityMatrix;

    fn add(self, rhs: &DensityMatrix) -> DensityMatrix {
        DensityMatrix { m: &self.m + &rhs.m }
    }
}
