use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Model;

/// Output format selector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::usage(format!("unknown format {other:?} (expected csv or json)"))),
        }
    }
}

/// A parameter sweep: one model, grids in n, α and L, and an output target.
///
/// JSON form: `{"model": {...}, "n": [...], "alpha": [...], "L": [...],
/// "out": "path", "format": "csv"}`; `out` and `format` are optional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub model: Model,
    pub n: Vec<f64>,
    pub alpha: Vec<f64>,
    #[serde(rename = "L")]
    pub lengths: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n.is_empty() || self.alpha.is_empty() || self.lengths.is_empty() {
            return Err(Error::usage("n, alpha and L grids must be non-empty"));
        }
        if let Some(n) = self.n.iter().find(|&&n| !(n > 0.0 && n.is_finite())) {
            return Err(Error::domain(format!("Rényi index must be positive, got {n}")));
        }
        if let Some(a) = self.alpha.iter().find(|&&a| !(a.abs() < std::f64::consts::PI)) {
            return Err(Error::domain(format!("α grid must avoid ±π, got {a}")));
        }
        if self.lengths[0] == 0 {
            return Err(Error::domain("subsystem lengths must be at least 1"));
        }
        if self.lengths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::usage("L grid must be strictly ascending"));
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: SweepConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::from_json_str(&text)
    }
}
