//! Standard gates, projectors and the rotated measurement basis.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{cis, Operator, PureState, ONE, ZERO};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `CP(φ) = diag(1, 1, 1, e^{iφ})`
pub fn cphase(phi: f64) -> Operator {
    diag(&[ONE, ONE, ONE, cis(phi)])
}

/// `S(φ) = diag(1, e^{iφ}) = e^{iφ/2} R_z(φ)`
pub fn phase_gate(phi: f64) -> Operator {
    diag(&[ONE, cis(phi)])
}

/// `R_z(φ) = diag(e^{-iφ/2}, e^{iφ/2})`
pub fn rz(phi: f64) -> Operator {
    diag(&[cis(-phi / 2.0), cis(phi / 2.0)])
}

pub fn pauli_x() -> Operator {
    Operator::from_rows(2, &[ZERO, ONE, ONE, ZERO]).expect("2x2")
}

pub fn pauli_y() -> Operator {
    Operator::from_rows(2, &[ZERO, -I, I, ZERO]).expect("2x2")
}

pub fn pauli_z() -> Operator {
    diag(&[ONE, -ONE])
}

pub fn identity2() -> Operator {
    Operator::identity(2).expect("2x2")
}

/// `|i⟩⟨i|` on one qubit.
pub fn qubit_projector(i: usize) -> Operator {
    let mut d = [ZERO; 2];
    d[i] = ONE;
    diag(&d)
}

/// `P_ij = |ij⟩⟨ij|` on two qubits.
pub fn projector(i: usize, j: usize) -> Operator {
    assert!(i < 2 && j < 2, "qubit values are 0 or 1");
    let mut d = [ZERO; 4];
    d[2 * i + j] = ONE;
    diag(&d)
}

/// `P_even = P₀₀ + P₁₁`
pub fn p_even() -> Operator {
    diag(&[ONE, ZERO, ZERO, ONE])
}

/// `P_odd = P₀₁ + P₁₀`
pub fn p_odd() -> Operator {
    diag(&[ZERO, ONE, ONE, ZERO])
}

pub fn plus_ket() -> PureState {
    PureState::from_slice(&[Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(FRAC_1_SQRT_2, 0.0)])
        .expect("normalized")
}

pub fn minus_ket() -> PureState {
    PureState::from_slice(&[Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(-FRAC_1_SQRT_2, 0.0)])
        .expect("normalized")
}

/// Eigenkets `|±_φ⟩ = (e^{-iφ/2}|0⟩ ± e^{iφ/2}|1⟩)/√2` of `R_z(φ) X R_z†(φ)`.
pub fn measurement_kets(phi: f64) -> (PureState, PureState) {
    let a = cis(-phi / 2.0) * FRAC_1_SQRT_2;
    let b = cis(phi / 2.0) * FRAC_1_SQRT_2;
    (PureState::from_slice(&[a, b]).expect("normalized"), PureState::from_slice(&[a, -b]).expect("normalized"))
}

/// Controlled phase between photon `photon` (0 for Q1, 1 for Q2) and the
/// matter qubit, as an 8×8 operator on `Q1 ⊗ Q2 ⊗ m`:
/// `P₀ ⊗ I + P₁ ⊗ S(φ)` on the (photon, matter) pair.
pub fn photon_matter_cphase(photon: usize, phi: f64) -> Operator {
    assert!(photon < 2, "photon index is 0 or 1");
    let mut d = [ONE; 8];
    for (idx, entry) in d.iter_mut().enumerate() {
        let q1 = (idx >> 2) & 1;
        let q2 = (idx >> 1) & 1;
        let m = idx & 1;
        let control = if photon == 0 { q1 } else { q2 };
        if control == 1 && m == 1 {
            *entry = cis(phi);
        }
    }
    diag(&d)
}

/// A single-qubit gate on the matter qubit of the three-qubit register.
pub fn on_matter(gate: &Operator) -> Operator {
    Operator::identity(4).expect("4x4").tensor(gate).expect("8x8")
}

/// A single-qubit gate on photon Q1 of the two-photon register.
pub fn on_first_photon(gate: &Operator) -> Operator {
    gate.tensor(&identity2()).expect("4x4")
}

fn diag(d: &[Complex64]) -> Operator {
    Operator::from_diagonal(d).expect("finite diagonal")
}
