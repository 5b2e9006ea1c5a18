//! The JSON run record written next to every output file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Arguments after the program name, exactly as given.
    pub args: Vec<String>,
    pub seed: Option<u64>,
    pub versions: BTreeMap<String, String>,
    pub outputs: Vec<PathBuf>,
    pub elapsed_seconds: f64,
    /// Resolved settings, defaults included.
    pub config: serde_json::Value,
}

impl RunManifest {
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    pub fn write(&self, output: &Path) -> Result<PathBuf, CliError> {
        let path = Self::path_for(output);
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(&path, text + "\n")?;
        Ok(path)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

pub fn versions() -> BTreeMap<String, String> {
    let mut v = BTreeMap::new();
    v.insert("parity-proj".into(), env!("CARGO_PKG_VERSION").into());
    v.insert("parity-core".into(), parity_core::VERSION.into());
    v
}
