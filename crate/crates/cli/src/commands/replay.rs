use std::path::{Path, PathBuf};

use crate::cli::ReplayArgs;
use crate::manifest::RunManifest;
use crate::{execute_args, CliError};

/// Re-runs the recorded arguments with `--out` redirected, then compares the
/// new output with the recorded one byte for byte.
pub fn run(a: &ReplayArgs) -> Result<Vec<String>, CliError> {
    let manifest = RunManifest::read(&a.manifest)?;
    let original =
        manifest.outputs.first().cloned().ok_or_else(|| CliError::Invalid("manifest lists no outputs".into()))?;
    let target = a.out.clone().unwrap_or_else(|| default_target(&original));
    if target == original {
        return Err(CliError::Invalid("replay output must differ from the recorded output".into()));
    }
    let args = redirect(&manifest.args, &target)?;
    let mut lines = execute_args(&args)?;
    let before = std::fs::read(&original)?;
    let after = std::fs::read(&target)?;
    if before != after {
        return Err(CliError::ReplayMismatch(original));
    }
    lines.push(format!("replay of {} matches ({} bytes)", original.display(), before.len()));
    Ok(lines)
}

fn default_target(original: &Path) -> PathBuf {
    let mut s = original.as_os_str().to_owned();
    s.push(".replay");
    PathBuf::from(s)
}

fn redirect(args: &[String], target: &Path) -> Result<Vec<String>, CliError> {
    let target = target.to_string_lossy().into_owned();
    let mut out = Vec::with_capacity(args.len());
    let mut replaced = false;
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        if arg == "--out" {
            iter.next();
            out.push("--out".into());
            out.push(target.clone());
            replaced = true;
        } else if arg.starts_with("--out=") {
            out.push(format!("--out={target}"));
            replaced = true;
        } else {
            out.push(arg.clone());
        }
    }
    if replaced {
        Ok(out)
    } else {
        Err(CliError::Invalid("recorded arguments have no --out".into()))
    }
}
