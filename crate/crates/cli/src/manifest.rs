//! Run manifests: the resolved configuration, tool version, master seed and the
//! SHA-256 of every output file. A manifest can be passed back as `--config` to
//! repeat the run.

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const MANIFEST_FILE: &str = "manifest.toml";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest<C> {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub units: String,
    pub config: C,
    /// File name → SHA-256 hex digest.
    #[serde(default)]
    pub outputs: BTreeMap<String, String>,
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

pub fn write_manifest<C: Serialize>(
    dir: &Path,
    command: &str,
    seed: u64,
    units: &str,
    config: &C,
    files: &[PathBuf],
) -> Result<PathBuf> {
    let mut outputs = BTreeMap::new();
    for f in files {
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        outputs.insert(name, sha256_file(f)?);
    }
    let manifest = Manifest {
        tool: "pidnet".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        seed,
        units: units.into(),
        config,
        outputs,
    };
    let path = dir.join(MANIFEST_FILE);
    std::fs::write(&path, toml::to_string(&manifest)?).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// Reads a configuration file: either a bare config table or a manifest, whose
/// `config` table is used. A manifest written by a different command is rejected.
pub fn load_config<C: DeserializeOwned>(path: &Path, command: &str) -> Result<C> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let table: toml::Table = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let body = match table.get("config") {
        Some(toml::Value::Table(cfg)) => {
            if let Some(cmd) = table.get("command").and_then(|c| c.as_str()) {
                if cmd != command {
                    bail!("{} is a manifest of `{cmd}`, not `{command}`", path.display());
                }
            }
            cfg.clone()
        }
        _ => table,
    };
    body.try_into().with_context(|| format!("invalid configuration in {}", path.display()))
}
