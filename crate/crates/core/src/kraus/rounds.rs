use nalgebra::DMatrix;

use super::{KrausChannel, NoiseModel};
use crate::error::check_angle;
use crate::quantum::{gates, Complex64, Operator, PureState, ZERO};
use crate::{Error, Result};

/// Where a Pauli fault hits the matter qubit within one round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatterFault {
    None,
    /// X on the matter qubit before the first gate.
    XBefore,
    /// Y on the matter qubit before the first gate.
    YBefore,
    /// Z on the matter qubit before the first gate.
    ZBefore,
    /// X on the matter qubit between the two gates.
    XBetween,
    /// Y on the matter qubit between the two gates.
    YBetween,
}

/// Contracts an 8×8 operator on `Q1 ⊗ Q2 ⊗ m` to the 4×4 photonic operator
/// `⟨bra|_m U |ket⟩_m`.
pub fn contract_matter(u: &Operator, bra: &PureState, ket: &PureState) -> Result<Operator> {
    if u.dim() != 8 {
        return Err(Error::DimensionMismatch { left: 8, right: u.dim() });
    }
    if bra.dim() != 2 || ket.dim() != 2 {
        return Err(Error::DimensionMismatch { left: 2, right: bra.dim().max(ket.dim()) });
    }
    let mut out = DMatrix::from_element(4, 4, ZERO);
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = ZERO;
            for a in 0..2 {
                for b in 0..2 {
                    acc += bra.amplitude(a).conj() * u.entry(2 * i + a, 2 * j + b) * ket.amplitude(b);
                }
            }
            out[(i, j)] = acc;
        }
    }
    Ok(Operator::from_matrix_unchecked(out))
}

/// The two photonic operators `(E₊, E₋)` of one round: the matter qubit starts
/// in `|+⟩`, interacts through `CP(φ₁)` with Q1 and `CP(φ₂)` with Q2, and is
/// projected onto `|±_{φ_meas}⟩`. `fault` inserts a Pauli on the matter qubit.
pub fn round_operators(phi1: f64, phi2: f64, phi_meas: f64, fault: MatterFault) -> Result<(Operator, Operator)> {
    check_angle("phi1", phi1)?;
    check_angle("phi2", phi2)?;
    check_angle("phi_meas", phi_meas)?;
    let cp1 = gates::photon_matter_cphase(0, phi1);
    let cp2 = gates::photon_matter_cphase(1, phi2);
    let u = match fault {
        MatterFault::None => &cp2 * &cp1,
        MatterFault::XBefore => &(&cp2 * &cp1) * &gates::on_matter(&gates::pauli_x()),
        MatterFault::YBefore => &(&cp2 * &cp1) * &gates::on_matter(&gates::pauli_y()),
        MatterFault::ZBefore => &(&cp2 * &cp1) * &gates::on_matter(&gates::pauli_z()),
        MatterFault::XBetween => &(&cp2 * &gates::on_matter(&gates::pauli_x())) * &cp1,
        MatterFault::YBetween => &(&cp2 * &gates::on_matter(&gates::pauli_y())) * &cp1,
    };
    let (plus_m, minus_m) = gates::measurement_kets(phi_meas);
    let start = gates::plus_ket();
    Ok((contract_matter(&u, &plus_m, &start)?, contract_matter(&u, &minus_m, &start)?))
}

/// One fault-free round as a two-operator channel labelled `"+1"` and `"-1"`.
pub fn single_round_kraus(phi1: f64, phi2: f64, phi_meas: f64) -> Result<KrausChannel> {
    let (plus, minus) = round_operators(phi1, phi2, phi_meas, MatterFault::None)?;
    KrausChannel::new(vec![plus, minus], vec!["+1".into(), "-1".into()])
}

/// Clean and faulty round operators of a Pauli noise model, before weighting
/// by `√(1−p)` and `√p`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliRound {
    pub p: f64,
    pub clean_plus: Operator,
    pub clean_minus: Operator,
    pub faulty_plus: Operator,
    pub faulty_minus: Operator,
}

impl PauliRound {
    pub fn to_channel(&self) -> Result<KrausChannel> {
        let (a, b) = ((1.0 - self.p).sqrt(), self.p.sqrt());
        KrausChannel::new(
            vec![
                self.clean_plus.scale_real(a),
                self.clean_minus.scale_real(a),
                self.faulty_plus.scale_real(b),
                self.faulty_minus.scale_real(b),
            ],
            vec!["+1".into(), "-1".into(), "+1,err".into(), "-1,err".into()],
        )
    }
}

/// Clean and faulty operators for a Pauli noise model with balanced gates of
/// angle `phi` measured in the `phi_meas` basis.
pub fn pauli_round(noise: &NoiseModel, phi: f64, phi_meas: f64) -> Result<PauliRound> {
    noise.validate()?;
    let (fault, p) = noise.pauli_fault().ok_or(Error::UnsupportedNoise(noise.kind()))?;
    let (clean_plus, clean_minus) = round_operators(phi, phi, phi_meas, MatterFault::None)?;
    let (faulty_plus, faulty_minus) = round_operators(phi, phi, phi_meas, fault)?;
    Ok(PauliRound { p, clean_plus, clean_minus, faulty_plus, faulty_minus })
}

/// `{√(1−p)E₊, √(1−p)E₋, √p E₊^err, √p E₋^err}` for a Pauli noise model.
pub fn pauli_round_kraus(noise: &NoiseModel, phi: f64) -> Result<KrausChannel> {
    pauli_round(noise, phi, phi)?.to_channel()
}

pub(crate) fn diag4(d: [Complex64; 4]) -> Operator {
    Operator::from_diagonal(&d).expect("finite diagonal")
}
