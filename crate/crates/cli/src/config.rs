//! Optional TOML configuration file with flat keys mirroring the CLI flags.
//! Precedence is flag > file > built-in default; unknown keys are rejected so
//! a typo cannot silently fall back to a default.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub algorithm: Option<String>,
    pub function: Option<String>,
    pub pop_size: Option<usize>,
    pub t_max: Option<usize>,
    pub m_max: Option<f64>,
    pub m_min: Option<f64>,
    pub alpha_min: Option<f64>,
    pub alpha_max: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub n_runs: Option<usize>,
    pub base_seed: Option<u64>,
    pub output_path: Option<PathBuf>,
    pub trace: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read config file {}: {e}", path.display()))
        })?;
        toml::from_str(&text).map_err(|e| {
            CliError::Usage(format!("invalid config file {}: {e}", path.display()))
        })
    }
}

/// Flag value if given, else config-file value, else the built-in default.
pub fn effective<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// As [`effective`] but for settings with no default, where absence is a
/// usage error (currently only the benchmark function).
pub fn required<T>(flag: Option<T>, file: Option<T>, what: &str) -> Result<T, CliError> {
    flag.or(file).ok_or_else(|| CliError::Usage(format!("missing {what}")))
}
