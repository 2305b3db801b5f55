use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::SweepConfig;
use super::fit::{fit_exponent_with, FitOptions, FitReport};
use crate::asymptotics::charged_moment_asymptotic;
use crate::error::Result;
use crate::lattice::{charged_moment_exact, correlation_spectrum};
use crate::{Complex, Model, Quadrature, Spectrum};

/// Tolerances in force when a table was produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub quadrature: Quadrature,
    /// Largest eigenvalue excursion outside [−1, 1] tolerated before clamping.
    pub clamp_abort: f64,
    /// Floor used when deciding whether a charge sector is empty.
    pub sector_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { quadrature: Quadrature::default(), clamp_abort: 1e-8, sector_floor: 1e-300 }
    }
}

/// Header carried by JSON output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableMetadata {
    pub model: Model,
    pub tool_version: String,
    pub tolerances: Tolerances,
    /// Seconds since the Unix epoch at creation.
    pub created_unix: u64,
}

impl TableMetadata {
    pub fn new(model: Model) -> Self {
        let created_unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        TableMetadata {
            model,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            tolerances: Tolerances::default(),
            created_unix,
        }
    }
}

/// One (n, α, L) point of a comparison sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub model_id: String,
    pub n: f64,
    pub alpha: f64,
    #[serde(rename = "L")]
    pub len: usize,
    pub exact: Complex,
    pub leading: Complex,
    /// |Z / leading − 1|.
    pub dev: f64,
    /// |Z / (leading (1 + d_n + d̃_n)) − 1|.
    pub dev_improved: f64,
    pub mu: f64,
    pub cft_2mu: f64,
    pub d_n: Complex,
    pub d_tilde: Complex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareTable {
    pub metadata: TableMetadata,
    pub rows: Vec<CompareRow>,
}

/// Exact charged moments only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactRow {
    pub model_id: String,
    pub n: f64,
    pub alpha: f64,
    #[serde(rename = "L")]
    pub len: usize,
    pub exact_re: f64,
    pub exact_im: f64,
}

/// Asymptotic predictions only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptRow {
    pub model_id: String,
    pub n: f64,
    pub alpha: f64,
    #[serde(rename = "L")]
    pub len: usize,
    pub leading_re: f64,
    pub leading_im: f64,
    pub d_n_re: f64,
    pub d_n_im: f64,
    pub d_tilde_re: f64,
    pub d_tilde_im: f64,
    pub mu: f64,
    pub cft_2mu: f64,
}

/// Exponent fit of one (n, α) deviation series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitEntry {
    pub n: f64,
    pub alpha: f64,
    pub report: FitReport,
}

fn points(cfg: &SweepConfig) -> Vec<(f64, f64, usize)> {
    let mut pts = Vec::with_capacity(cfg.n.len() * cfg.alpha.len() * cfg.lengths.len());
    for &n in &cfg.n {
        for &a in &cfg.alpha {
            for &l in &cfg.lengths {
                pts.push((n, a, l));
            }
        }
    }
    pts.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)).then(x.2.cmp(&y.2)));
    pts.dedup();
    pts
}

fn spectra(cfg: &SweepConfig) -> Result<BTreeMap<usize, Spectrum>> {
    cfg.lengths
        .par_iter()
        .map(|&l| correlation_spectrum(&cfg.model, l).map(|s| (l, s)))
        .collect()
}

/// Exact Z_n(α, L) over the sweep, ordered by (n, α, L).
pub fn run_exact(cfg: &SweepConfig) -> Result<Vec<ExactRow>> {
    cfg.validate()?;
    let spec = spectra(cfg)?;
    let id = cfg.model.model_id();
    Ok(points(cfg)
        .into_iter()
        .map(|(n, alpha, len)| {
            let z = charged_moment_exact(&spec[&len], n, alpha);
            ExactRow { model_id: id.clone(), n, alpha, len, exact_re: z.re, exact_im: z.im }
        })
        .collect())
}

/// Asymptotic predictions over the sweep, ordered by (n, α, L).
pub fn run_asympt(cfg: &SweepConfig) -> Result<Vec<AsymptRow>> {
    cfg.validate()?;
    let id = cfg.model.model_id();
    points(cfg)
        .into_par_iter()
        .map(|(n, alpha, len)| {
            let p = charged_moment_asymptotic(&cfg.model, n, alpha, len)?;
            Ok(AsymptRow {
                model_id: id.clone(),
                n,
                alpha,
                len,
                leading_re: p.leading.re,
                leading_im: p.leading.im,
                d_n_re: p.d_n.re,
                d_n_im: p.d_n.im,
                d_tilde_re: p.d_tilde.re,
                d_tilde_im: p.d_tilde.im,
                mu: p.mu,
                cft_2mu: p.cft_exponent,
            })
        })
        .collect()
}

/// Exact against asymptotic values at every sweep point, ordered by (n, α, L).
pub fn run_compare(cfg: &SweepConfig) -> Result<CompareTable> {
    cfg.validate()?;
    let spec = spectra(cfg)?;
    let id = cfg.model.model_id();
    let rows = points(cfg)
        .into_par_iter()
        .map(|(n, alpha, len)| {
            let exact = charged_moment_exact(&spec[&len], n, alpha);
            let p = charged_moment_asymptotic(&cfg.model, n, alpha, len)?;
            Ok(CompareRow {
                model_id: id.clone(),
                n,
                alpha,
                len,
                exact,
                leading: p.leading,
                dev: (exact / p.leading - 1.0).norm(),
                dev_improved: (exact / p.improved() - 1.0).norm(),
                mu: p.mu,
                cft_2mu: p.cft_exponent,
                d_n: p.d_n,
                d_tilde: p.d_tilde,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompareTable { metadata: TableMetadata::new(cfg.model.clone()), rows })
}

/// Fits the deviation decay of every (n, α) series in a table.
pub fn fit_table(table: &CompareTable, opts: &FitOptions) -> Result<Vec<FitEntry>> {
    // (n, α, μ, series)
    type Group = (f64, f64, f64, Vec<(f64, f64)>);
    let mut groups: Vec<Group> = Vec::new();
    for r in &table.rows {
        match groups.last_mut() {
            Some(g) if g.0 == r.n && g.1 == r.alpha => g.3.push((r.len as f64, r.dev)),
            _ => groups.push((r.n, r.alpha, r.mu, vec![(r.len as f64, r.dev)])),
        }
    }
    groups
        .into_iter()
        .map(|(n, alpha, mu, series)| Ok(FitEntry { n, alpha, report: fit_exponent_with(&series, mu, opts)? }))
        .collect()
}
