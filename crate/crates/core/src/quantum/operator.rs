use std::ops::{Add, Mul};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{PureState, ONE, ZERO};
use crate::{Error, Result};

/// A square complex matrix acting on a 2-, 4- or 8-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    m: DMatrix<Complex64>,
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 | 8 => Ok(()),
        d => Err(Error::InvalidDimension(d)),
    }
}

impl Operator {
    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
        }
        check_dim(m.nrows())?;
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("operator"));
        }
        Ok(Self { m })
    }

    /// Row-major entries.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { left: entries.len(), right: dim * dim });
        }
        Self::from_matrix(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Result<Self> {
        Self::from_matrix(DMatrix::from_diagonal(&DVector::from_row_slice(diag)))
    }

    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { m: DMatrix::identity(dim, dim) })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { m: DMatrix::from_element(dim, dim, ZERO) })
    }

    pub(crate) fn from_matrix_unchecked(m: DMatrix<Complex64>) -> Self {
        debug_assert!(m.is_square());
        Self { m }
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

    pub fn dagger(&self) -> Self {
        Self { m: self.m.adjoint() }
    }

    /// Kronecker product `self ⊗ other`; the result must still be at most 8-dimensional.
    pub fn tensor(&self, other: &Operator) -> Result<Self> {
        let m = self.m.kronecker(&other.m);
        check_dim(m.nrows())?;
        Ok(Self { m })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { m: &self.m * c }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// `A|ψ⟩`, which must again be normalized (e.g. `A` unitary).
    pub fn apply(&self, state: &PureState) -> Result<PureState> {
        PureState::new(self.apply_vec(state.amplitudes())?)
    }

    /// `A v` without any normalization requirement.
    pub fn apply_vec(&self, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: v.len() });
        }
        Ok(&self.m * v)
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "operator dimensions differ");
        self.m.iter().zip(other.m.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `‖A†A − I‖_max`
    pub fn unitarity_error(&self) -> f64 {
        let prod = self.m.adjoint() * &self.m;
        let id = DMatrix::<Complex64>::identity(self.dim(), self.dim());
        prod.iter().zip(id.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() < tol
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| i == j || self.m[(i, j)].norm() <= tol))
    }

    /// `AB − BA`
    pub fn commutator(&self, other: &Operator) -> Self {
        Self { m: &self.m * &other.m - &other.m * &self.m }
    }

    /// Integer power, `A^0 = I`.
    pub fn pow(&self, k: u32) -> Self {
        let mut out = DMatrix::identity(self.dim(), self.dim());
        for _ in 0..k {
            out = &self.m * out;
        }
        Self { m: out }
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let target = if i == j { ONE } else { ZERO };
                (self.m[(i, j)] - target).norm() <= tol
            })
        })
    }
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimensions differ");
        Operator { m: &self.m * &rhs.m }
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimensions differ");
        Operator { m: &self.m + &rhs.m }
    }
}
