//! Optional JSON config file supplying defaults for omitted flags.
//!
//! Precedence: explicit flag > config value > built-in default. Unknown keys
//! are rejected so a typo cannot silently fall back to a default.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;

use crate::AppError;

/// Output encoding for tabular commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub mu: Option<f64>,
    pub nu: Option<f64>,
    pub dark: Option<f64>,
    pub delta: Option<f64>,
    pub gamma: Option<f64>,
    pub trials: Option<usize>,
    pub c_min: Option<f64>,
    pub s_max: Option<f64>,
    pub advantage_margin: Option<usize>,
    pub grid_start: Option<f64>,
    pub grid_stop: Option<f64>,
    pub grid_step: Option<f64>,
    /// Directory that relative `--out` paths are resolved against.
    pub out_dir: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, AppError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| AppError::Usage(format!("cannot read config {}: {e}", p.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| AppError::Usage(format!("bad config {}: {e}", p.display())))
            }
        }
    }
}

/// Flag beats config; caller supplies the final default.
pub fn pick<T>(flag: Option<T>, cfg: Option<T>, default: T) -> T {
    flag.or(cfg).unwrap_or(default)
}

/// Flag beats config, no default.
pub fn opt<T>(flag: Option<T>, cfg: Option<T>) -> Option<T> {
    flag.or(cfg)
}
