use std::f64::consts::PI;

use parity_core::analytics::{error_coefficients, max_weight, mean_weight, ErrorProbabilityReport};
use parity_core::quantum::haar_random_state;
use parity_core::rng::SeedStream;
use parity_core::simulator::exact_classes;
use parity_core::{DensityMatrix, NoiseModel, ProtocolConfig, PureState};
use rand::Rng;
use serde::Serialize;

use super::require;
use crate::cli::AuditArgs;
use crate::{CliError, Outcome};

pub const TOLERANCE: f64 = 1e-10;

#[derive(Debug, Serialize)]
pub struct AuditReport {
    pub seed: u64,
    pub grid_size: usize,
    pub tolerance: f64,
    pub fault_injected: bool,
    pub models: Vec<ModelAudit>,
    pub worst_deviation: f64,
    pub pass: bool,
    pub imbalanced_two_cycles: ImbalancedFinding,
    pub pauli_x_average: Vec<PauliXFinding>,
}

#[derive(Debug, Serialize)]
pub struct ModelAudit {
    pub model: &'static str,
    pub tuples: usize,
    pub worst_deviation: f64,
    pub pass: bool,
}

/// Maximum error probability at φ = 0.9π, Δφ = 0.08π, n = 2.
#[derive(Debug, Serialize)]
pub struct ImbalancedFinding {
    pub phi: f64,
    pub delta_phi: f64,
    pub n: u32,
    pub quoted: f64,
    pub closed_form_max: f64,
    pub simulated_max: f64,
}

/// Haar-average error probability at φ = 0.9π, p_x = 0.08.
#[derive(Debug, Serialize)]
pub struct PauliXFinding {
    pub n: u32,
    pub quoted: f64,
    /// Weight on `|10⟩` only.
    pub printed_formula: f64,
    /// Same weight on both `|01⟩` and `|10⟩`.
    pub both_odd_states: f64,
    /// Maximally mixed input through the round-by-round simulator.
    pub simulated: f64,
    pub reproduced: &'static str,
}

pub fn run(a: &AuditArgs) -> Result<Outcome, CliError> {
    require(a.grid_size >= 1, "--grid-size must be at least 1")?;
    let root = SeedStream::new(a.seed);
    let mut models = Vec::new();
    for kind in 0..6u64 {
        models.push(audit_model(kind, a.grid_size, root.split(kind), a.inject_fault)?);
    }
    let worst_deviation = models.iter().map(|m| m.worst_deviation).fold(0.0, f64::max);
    let pass = models.iter().all(|m| m.pass);
    let report = AuditReport {
        seed: a.seed,
        grid_size: a.grid_size,
        tolerance: TOLERANCE,
        fault_injected: a.inject_fault,
        models,
        worst_deviation,
        pass,
        imbalanced_two_cycles: imbalanced_finding()?,
        pauli_x_average: vec![pauli_x_finding(1, 0.016)?, pauli_x_finding(2, 0.008)?],
    };
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    std::fs::write(&a.out, text)?;

    let mut summary: Vec<String> = report
        .models
        .iter()
        .map(|m| {
            format!("{:<20} {:>6} tuples  worst {:.3e}  {}", m.model, m.tuples, m.worst_deviation, verdict(m.pass))
        })
        .collect();
    let f = &report.imbalanced_two_cycles;
    summary.push(format!(
        "imbalanced n=2 max error: quoted {:.4}, closed form {:.6}, simulated {:.6}",
        f.quoted, f.closed_form_max, f.simulated_max
    ));
    for f in &report.pauli_x_average {
        summary.push(format!(
            "pauli-x n={} average: quoted {:.4}, printed {:.6}, both-odd {:.6}, simulated {:.6} ({})",
            f.n, f.quoted, f.printed_formula, f.both_odd_states, f.simulated, f.reproduced
        ));
    }
    summary.push(format!("overall worst deviation {worst_deviation:.3e}: {}", verdict(pass)));
    Ok(Outcome {
        output: a.out.clone(),
        seed: Some(a.seed),
        config: serde_json::to_value(a)?,
        summary,
        failure: (!pass).then_some(CliError::AuditFailed(worst_deviation)),
    })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn random_noise(kind: u64, rng: &mut impl Rng) -> NoiseModel {
    let p = rng.random_range(0.0..=1.0);
    match kind {
        0 => NoiseModel::None,
        1 => NoiseModel::Imbalanced { delta1: rng.random_range(-0.6..0.6), delta2: rng.random_range(-0.6..0.6) },
        2 => NoiseModel::PauliZBefore { p },
        3 => NoiseModel::PauliXBetween { p },
        4 => NoiseModel::PauliYBetween { p },
        _ => NoiseModel::DepolarizingBefore { p },
    }
}

/// Closed-form weights applied to a Haar-random input against the exact
/// error probability of the simulated rounds, measured at the nominal angle.
fn audit_model(kind: u64, tuples: usize, stream: SeedStream, inject_fault: bool) -> Result<ModelAudit, CliError> {
    let mut rng = stream.rng();
    let mut worst: f64 = 0.0;
    let mut name = "";
    for _ in 0..tuples {
        let noise = random_noise(kind, &mut rng);
        name = noise.kind();
        let n = rng.random_range(1..=5u32);
        let phi = rng.random_range(0.0..2.0 * PI);
        let psi = haar_random_state(4, &mut rng)?;
        let mut c = error_coefficients(&noise, n, phi)?;
        if inject_fault && matches!(noise, NoiseModel::PauliXBetween { .. }) {
            c[1] = c[2];
        }
        let closed = ErrorProbabilityReport::new(n, c, &psi)?.value_for_state;
        let config = ProtocolConfig::new(phi, n).with_noise(noise).with_measurement_angle(phi);
        let simulated = exact_classes(&config, &psi.outer())?.error_probability();
        worst = worst.max((closed - simulated).abs());
    }
    Ok(ModelAudit { model: name, tuples, worst_deviation: worst, pass: worst <= TOLERANCE })
}

fn imbalanced_finding() -> Result<ImbalancedFinding, CliError> {
    let (phi, delta, n) = (0.9 * PI, 0.08 * PI, 2);
    let noise = NoiseModel::Imbalanced { delta1: delta / 2.0, delta2: -delta / 2.0 };
    let closed = max_weight(&error_coefficients(&noise, n, phi)?);
    let config = ProtocolConfig::new(phi, n).with_noise(noise);
    // the error weights are diagonal, so the maximum is attained on a basis state
    let mut simulated: f64 = 0.0;
    for i in 0..4 {
        let out = exact_classes(&config, &PureState::basis(4, i).outer())?;
        simulated = simulated.max(out.error_probability());
    }
    Ok(ImbalancedFinding { phi, delta_phi: delta, n, quoted: 0.012, closed_form_max: closed, simulated_max: simulated })
}

fn pauli_x_finding(n: u32, quoted: f64) -> Result<PauliXFinding, CliError> {
    let (phi, p) = (0.9 * PI, 0.08);
    let noise = NoiseModel::PauliXBetween { p };
    let c = error_coefficients(&noise, n, phi)?;
    let printed = mean_weight(&c);
    let both = mean_weight(&[c[0], c[2], c[2], c[3]]);
    // the Haar average of |ψ⟩⟨ψ| is I/4 and the error probability is linear
    let config = ProtocolConfig::new(phi, n).with_noise(noise);
    let simulated = exact_classes(&config, &DensityMatrix::maximally_mixed(4))?.error_probability();
    let reproduced = if (simulated - printed).abs() <= TOLERANCE { "printed_formula" } else { "neither" };
    Ok(PauliXFinding { n, quoted, printed_formula: printed, both_odd_states: both, simulated, reproduced })
}
