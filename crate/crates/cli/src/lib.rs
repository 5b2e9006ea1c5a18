//! Experiment driver for the parity projection simulator.
//!
//! Every command writes one output file plus a `<output>.manifest.json`
//! holding the arguments, seed, versions and timing needed to reproduce it.
//! Exit codes: 0 success, 1 validation or numerical failure, 2 bad arguments.

pub mod angle;
pub mod cli;
mod commands;
pub mod manifest;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;

use cli::{Cli, Command};
use manifest::RunManifest;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] parity_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error("oracle audit failed: worst deviation {0:e} exceeds tolerance")]
    AuditFailed(f64),
    #[error("replay differs from recorded output {0}")]
    ReplayMismatch(PathBuf),
}

/// What a finished command produced.
pub struct Outcome {
    pub output: PathBuf,
    pub seed: Option<u64>,
    pub config: serde_json::Value,
    pub summary: Vec<String>,
    /// Raised after the output and manifest are written.
    pub failure: Option<CliError>,
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    dispatch(argv, true)
}

/// [`run`] without the summary on stdout; errors still go to stderr.
pub fn run_quiet<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    dispatch(argv, false)
}

fn dispatch<I, T>(argv: I, echo: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let args: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(cli.command, &args) {
        Ok(lines) => {
            if echo {
                for line in lines {
                    println!("{line}");
                }
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(command: Command, args: &[String]) -> Result<Vec<String>, CliError> {
    let name = command.name();
    let started = Instant::now();
    let outcome = match command {
        Command::FidelitySweep(a) => commands::fidelity::run(&a)?,
        Command::ErrpSweep(a) => commands::errp::run(&a)?,
        Command::BasisSweep(a) => commands::basis::run(&a)?,
        Command::OracleAudit(a) => commands::audit::run(&a)?,
        Command::Replay(a) => return commands::replay::run(&a),
    };
    let manifest = RunManifest {
        command: name.into(),
        args: args.to_vec(),
        seed: outcome.seed,
        versions: manifest::versions(),
        outputs: vec![outcome.output.clone()],
        elapsed_seconds: started.elapsed().as_secs_f64(),
        config: outcome.config,
    };
    let path = manifest.write(&outcome.output)?;
    let mut lines = outcome.summary;
    lines.push(format!("wrote {} and {}", outcome.output.display(), path.display()));
    match outcome.failure {
        Some(e) => {
            for line in &lines {
                eprintln!("{line}");
            }
            Err(e)
        }
        None => Ok(lines),
    }
}

/// Runs a command from already-split arguments (program name excluded),
/// used by `replay`.
pub(crate) fn execute_args(args: &[String]) -> Result<Vec<String>, CliError> {
    let argv = std::iter::once("parity-proj".to_string()).chain(args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Invalid(e.to_string()))?;
    if matches!(cli.command, Command::Replay(_)) {
        return Err(CliError::Invalid("a manifest cannot record a replay".into()));
    }
    execute(cli.command, args)
}
