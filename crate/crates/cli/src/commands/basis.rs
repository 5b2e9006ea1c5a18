use std::f64::consts::PI;

use parity_core::analytics::{imbalanced_coefficients, max_weight, mean_weight};

use super::{linspace, require};
use crate::cli::BasisArgs;
use crate::output::{num, Table};
use crate::{CliError, Outcome};

const HEADER: [&str; 6] = ["phi_mean", "delta_phi", "n", "phi_meas", "avg_errp", "max_errp"];

/// Gates at `φ̄ ± Δφ/2`, measurement angle scanned.
pub fn run(a: &BasisArgs) -> Result<Outcome, CliError> {
    require(a.n >= 1, "--n must be at least 1")?;
    require(a.steps >= 2, "--steps must be at least 2")?;
    require(!a.phi_mean.is_empty() && !a.delta_phi.is_empty(), "--phi-mean and --delta-phi need values")?;
    let mut table = Table::new(&HEADER);
    let mut summary = Vec::new();
    for &mean in &a.phi_mean {
        require(mean > 0.0 && mean <= PI, format!("--phi-mean {mean} outside (0, π]"))?;
        let (lo, hi) = a.phi_meas_range.unwrap_or((mean - 0.1 * PI, mean + 0.1 * PI));
        require(lo < hi, "--phi-meas-range must be increasing")?;
        for &delta in &a.delta_phi {
            let (phi1, phi2) = (mean + delta / 2.0, mean - delta / 2.0);
            let mut best = (f64::NAN, f64::INFINITY);
            for phi_meas in linspace(lo, hi, a.steps) {
                let c = imbalanced_coefficients(a.n, phi_meas, phi1 - phi_meas, phi2 - phi_meas)?;
                let avg = mean_weight(&c);
                if avg < best.1 {
                    best = (phi_meas, avg);
                }
                table.push(vec![num(mean), num(delta), a.n.to_string(), num(phi_meas), num(avg), num(max_weight(&c))]);
            }
            summary.push(format!(
                "mean={:.4}π delta={:.4}π: minimum {:.6e} at phi_meas={:.5}π (offset {:+.2e}π)",
                mean / PI,
                delta / PI,
                best.1,
                best.0 / PI,
                (best.0 - mean) / PI
            ));
        }
    }
    table.write(&a.out)?;
    Ok(Outcome { output: a.out.clone(), seed: None, config: serde_json::to_value(a)?, summary, failure: None })
}
