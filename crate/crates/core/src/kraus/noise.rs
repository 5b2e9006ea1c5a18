use super::MatterFault;
use crate::error::{check_angle, check_probability};
use crate::Result;

/// Imperfections of the matter-photon gates or of the matter qubit.
///
/// Angle offsets are relative to the nominal gate angle of the
/// [`ProtocolConfig`](crate::ProtocolConfig); probabilities are per round.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseModel {
    None,
    /// Stable gate angles `φ + δ₁` and `φ + δ₂`.
    Imbalanced {
        delta1: f64,
        delta2: f64,
    },
    /// Independent Gaussian offsets of width `w` for each gate in each cycle.
    Gaussian {
        w: f64,
    },
    /// Dephasing of the matter qubit before the two gates.
    PauliZBefore {
        p: f64,
    },
    /// Bit flip of the matter qubit between the two gates.
    PauliXBetween {
        p: f64,
    },
    /// Pauli-Y on the matter qubit between the two gates.
    PauliYBetween {
        p: f64,
    },
    /// Depolarizing channel on the matter qubit before the two gates.
    DepolarizingBefore {
        p: f64,
    },
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::None => Ok(()),
            NoiseModel::Imbalanced { delta1, delta2 } => {
                check_angle("delta1", delta1)?;
                check_angle("delta2", delta2)
            }
            NoiseModel::Gaussian { w } => {
                check_angle("w", w)?;
                if w < 0.0 {
                    return Err(crate::Error::InvalidAngle { name: "w", value: w });
                }
                Ok(())
            }
            NoiseModel::PauliZBefore { p } => check_probability("p_z", p),
            NoiseModel::PauliXBetween { p } => check_probability("p_x", p),
            NoiseModel::PauliYBetween { p } => check_probability("p_y", p),
            NoiseModel::DepolarizingBefore { p } => check_probability("p", p),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            NoiseModel::None => "none",
            NoiseModel::Imbalanced { .. } => "imbalanced",
            NoiseModel::Gaussian { .. } => "gaussian",
            NoiseModel::PauliZBefore { .. } => "pauli_z_before",
            NoiseModel::PauliXBetween { .. } => "pauli_x_between",
            NoiseModel::PauliYBetween { .. } => "pauli_y_between",
            NoiseModel::DepolarizingBefore { .. } => "depolarizing_before",
        }
    }

    pub fn is_pauli(&self) -> bool {
        self.pauli_fault().is_some()
    }

    /// The matter-qubit fault and its per-round probability. Depolarizing
    /// noise is reported as the dephasing it is equivalent to.
    pub fn pauli_fault(&self) -> Option<(MatterFault, f64)> {
        match *self {
            NoiseModel::PauliZBefore { p } => Some((MatterFault::ZBefore, p)),
            NoiseModel::PauliXBetween { p } => Some((MatterFault::XBetween, p)),
            NoiseModel::PauliYBetween { p } => Some((MatterFault::YBetween, p)),
            NoiseModel::DepolarizingBefore { p } => Some((MatterFault::ZBefore, 2.0 * p / 3.0)),
            _ => None,
        }
    }
}

/// On a matter qubit prepared in `|+⟩`, depolarizing noise of strength `p`
/// acts as dephasing with `p_z = 2p/3` (X leaves `|+⟩` alone, Y acts like Z).
pub fn depolarizing_to_dephasing(p: f64) -> Result<NoiseModel> {
    check_probability("p", p)?;
    Ok(NoiseModel::PauliZBefore { p: 2.0 * p / 3.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{gates, DensityMatrix, Operator};

    fn single_qubit_channel(rho: &DensityMatrix, terms: &[(f64, Operator)]) -> DensityMatrix {
        let mut out = DensityMatrix::zeros(2);
        for (w, op) in terms {
            out.add_scaled(&rho.conjugate_by(op), *w);
        }
        out
    }

    #[test]
    fn depolarizing_equivalence() {
        assert_eq!(depolarizing_to_dephasing(0.0).unwrap(), NoiseModel::PauliZBefore { p: 0.0 });
        match depolarizing_to_dephasing(0.3).unwrap() {
            NoiseModel::PauliZBefore { p } => assert!((p - 0.2).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert!(depolarizing_to_dephasing(1.5).is_err());

        let plus = gates::plus_ket().outer();
        for &p in &[0.0, 0.05, 0.3, 0.75, 1.0] {
            let depol = single_qubit_channel(
                &plus,
                &[
                    (1.0 - p, gates::identity2()),
                    (p / 3.0, gates::pauli_x()),
                    (p / 3.0, gates::pauli_y()),
                    (p / 3.0, gates::pauli_z()),
                ],
            );
            let pz = 2.0 * p / 3.0;
            let deph = single_qubit_channel(&plus, &[(1.0 - pz, gates::identity2()), (pz, gates::pauli_z())]);
            assert!(depol.max_abs_diff(&deph) < 1e-12);
        }
    }

    #[test]
    fn validation() {
        assert!(NoiseModel::PauliXBetween { p: -0.1 }.validate().is_err());
        assert!(NoiseModel::Gaussian { w: -1.0 }.validate().is_err());
        assert!(NoiseModel::Imbalanced { delta1: f64::NAN, delta2: 0.0 }.validate().is_err());
        assert!(NoiseModel::DepolarizingBefore { p: 1.0 }.validate().is_ok());
    }
}
