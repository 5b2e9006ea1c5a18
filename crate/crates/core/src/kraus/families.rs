use super::rounds::diag4;
use super::KrausChannel;
use crate::error::{check_angle, check_cycles};
use crate::quantum::{cis, gates, Complex64, Operator, ZERO};
use crate::Result;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The imperfect parity projections of a single unrepeated CPhase round:
/// `(P_even^err, P_odd^err)`.
pub fn naive_projectors(phi: f64) -> Result<(Operator, Operator)> {
    check_angle("phi", phi)?;
    let h = cis(phi / 2.0) * (phi / 2.0).cos();
    let even = diag4([re(1.0), h, h, cis(phi) * phi.cos()]);
    let g = -I * cis(phi / 2.0) * (phi / 2.0).sin();
    let odd = diag4([ZERO, g, g, -I * cis(phi) * phi.sin()]);
    Ok((even, odd))
}

/// [`naive_projectors`] as a channel labelled `"even"` and `"odd"`.
pub fn naive_channel(phi: f64) -> Result<KrausChannel> {
    let (even, odd) = naive_projectors(phi)?;
    KrausChannel::new(vec![even, odd], vec!["even".into(), "odd".into()])
}

/// `R_Z(π − mφ)` on Q1, which removes the relative `P₀₀`/`P₁₁` phase of an
/// even outcome heralded in round `m`.
pub fn phase_correction(m: u32, phi: f64) -> Operator {
    gates::on_first_photon(&gates::rz(std::f64::consts::PI - f64::from(m) * phi))
}

/// The `n + 1` operators of the ideal protocol: `even@1..even@n` then
/// `odd@n`. With `corrected`, each even operator is the real multiple
/// `sin(φ/2) cos^{m−1}(φ/2)(P₀₀ + P₁₁)`.
pub fn kraus_ideal_family(n: u32, phi: f64, corrected: bool) -> Result<KrausChannel> {
    check_cycles(n)?;
    check_angle("phi", phi)?;
    let (s, c) = ((phi / 2.0).sin(), (phi / 2.0).cos());
    let mut ops = Vec::with_capacity(n as usize + 1);
    let mut labels = Vec::with_capacity(n as usize + 1);
    for m in 1..=n {
        let w = s * c.powi(m as i32 - 1);
        let op = if corrected {
            diag4([re(w), ZERO, ZERO, re(w)])
        } else {
            let mphi = f64::from(m) * phi;
            diag4([I * w, ZERO, ZERO, -I * cis(mphi) * w])
        };
        ops.push(op);
        labels.push(format!("even@{m}"));
    }
    let nphi = f64::from(n) * phi;
    let cn = c.powi(n as i32);
    ops.push(diag4([re(cn), cis(nphi / 2.0), cis(nphi / 2.0), cis(nphi) * cn]));
    labels.push(format!("odd@{n}"));
    KrausChannel::new(ops, labels)
}

/// The `n + 1` operators for stable gate angles `φ + δ₁`, `φ + δ₂` measured in
/// the `φ` basis, without phase correction.
pub fn kraus_imbalanced_family(n: u32, phi: f64, delta1: f64, delta2: f64) -> Result<KrausChannel> {
    check_cycles(n)?;
    check_angle("phi", phi)?;
    check_angle("delta1", delta1)?;
    check_angle("delta2", delta2)?;
    let half_sin = |x: f64| (x / 2.0).sin();
    let half_cos = |x: f64| (x / 2.0).cos();
    let sum = phi + delta1 + delta2;
    let mut ops = Vec::with_capacity(n as usize + 1);
    let mut labels = Vec::with_capacity(n as usize + 1);
    for m in 1..=n {
        let k = f64::from(m);
        let j = m as i32 - 1;
        ops.push(diag4([
            I * half_sin(phi) * half_cos(phi).powi(j),
            -I * cis(k * (phi + delta2) / 2.0) * half_sin(delta2) * half_cos(delta2).powi(j),
            -I * cis(k * (phi + delta1) / 2.0) * half_sin(delta1) * half_cos(delta1).powi(j),
            -I * cis(k * phi + k * (delta1 + delta2) / 2.0) * half_sin(sum) * half_cos(sum).powi(j),
        ]));
        labels.push(format!("even@{m}"));
    }
    let (k, j) = (f64::from(n), n as i32);
    ops.push(diag4([
        re(half_cos(phi).powi(j)),
        cis(k * (phi + delta2) / 2.0) * half_cos(delta2).powi(j),
        cis(k * (phi + delta1) / 2.0) * half_cos(delta1).powi(j),
        cis(k * phi + k * (delta1 + delta2) / 2.0) * half_cos(sum).powi(j),
    ]));
    labels.push(format!("odd@{n}"));
    KrausChannel::new(ops, labels)
}
