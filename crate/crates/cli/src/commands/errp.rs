use std::f64::consts::PI;

use parity_core::analytics::{error_coefficients, max_weight, mean_weight, sampled_haar_average};
use parity_core::NoiseModel;

use super::require;
use crate::angle::{parse_angle, parse_probability};
use crate::cli::{ErrpArgs, NoiseKind};
use crate::output::{num, Table};
use crate::{CliError, Outcome};

const HEADER: [&str; 13] = [
    "model",
    "phi",
    "param",
    "n",
    "c00",
    "c01",
    "c10",
    "c11",
    "max_errp",
    "avg_errp_analytic",
    "avg_errp_sampled",
    "avg_sampled_std_error",
    "seed",
];

pub fn run(a: &ErrpArgs) -> Result<Outcome, CliError> {
    require(a.n_max >= 1, "--n-max must be at least 1")?;
    require(a.avg_samples >= 2, "--avg-samples must be at least 2")?;
    require(!a.phi.is_empty() && !a.param.is_empty(), "--phi and --param need at least one value")?;
    let params = a.param.iter().map(|p| parse_param(a.noise, p)).collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&HEADER);
    let mut summary = Vec::new();
    for &phi in &a.phi {
        require(phi > 0.0 && phi <= PI, format!("--phi {phi} outside (0, π]"))?;
        for &param in &params {
            let noise = model(a.noise, param);
            noise.validate()?;
            let mut best = (0, f64::INFINITY);
            for n in 1..=a.n_max {
                let c = error_coefficients(&noise, n, phi)?;
                let sampled = sampled_haar_average(&c, a.avg_samples, a.seed)?;
                let avg = mean_weight(&c);
                if avg < best.1 {
                    best = (n, avg);
                }
                table.push(vec![
                    noise.kind().into(),
                    num(phi),
                    num(param),
                    n.to_string(),
                    num(c[0]),
                    num(c[1]),
                    num(c[2]),
                    num(c[3]),
                    num(max_weight(&c)),
                    num(avg),
                    num(sampled.mean),
                    num(sampled.std_error),
                    a.seed.to_string(),
                ]);
            }
            summary.push(format!(
                "{} phi={:.4}π param={param}: lowest average error {:.6e} at n={}",
                noise.kind(),
                phi / PI,
                best.1,
                best.0
            ));
        }
    }
    table.write(&a.out)?;
    Ok(Outcome { output: a.out.clone(), seed: Some(a.seed), config: serde_json::to_value(a)?, summary, failure: None })
}

fn parse_param(kind: NoiseKind, text: &str) -> Result<f64, CliError> {
    let parsed = match kind {
        NoiseKind::None | NoiseKind::Imbalanced | NoiseKind::Gaussian => parse_angle(text),
        _ => parse_probability(text),
    };
    parsed.map_err(|e| CliError::Invalid(format!("--param {text}: {e}")))
}

/// Imbalanced mismatch is split symmetrically about the mean angle.
fn model(kind: NoiseKind, param: f64) -> NoiseModel {
    match kind {
        NoiseKind::None => NoiseModel::None,
        NoiseKind::Imbalanced => NoiseModel::Imbalanced { delta1: param / 2.0, delta2: -param / 2.0 },
        NoiseKind::Gaussian => NoiseModel::Gaussian { w: param },
        NoiseKind::Pz => NoiseModel::PauliZBefore { p: param },
        NoiseKind::Px => NoiseModel::PauliXBetween { p: param },
        NoiseKind::Py => NoiseModel::PauliYBetween { p: param },
        NoiseKind::Depol => NoiseModel::DepolarizingBefore { p: param },
    }
}
