use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Model;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    MeetsBound,
    Inconclusive,
}

/// Settings for [`fit_exponent_with`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Fraction of the smallest `L` values discarded before fitting.
    pub drop_fraction: f64,
    /// Block length in `L` for the envelope maximum; `None` keeps every point.
    pub period_hint: Option<f64>,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { drop_fraction: 0.25, period_hint: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    /// Minus the fitted log-log slope.
    pub exponent: f64,
    /// Smallest and largest `L` entering the fit.
    pub window: (f64, f64),
    pub points_used: usize,
    /// Euclidean norm of the log-space residuals.
    pub residual_norm: f64,
    pub mu: f64,
    pub cft_target: f64,
    pub verdict: Verdict,
}

/// Periods in `L` of the phases e^{2ik_r L} and e^{i(k_s − k_r)L}.
///
/// Frequencies are folded into (0, π] first since `L` is an integer; zero
/// frequencies are skipped.
pub fn oscillation_periods(spec: &Model) -> Vec<f64> {
    let ks = spec.momenta();
    let mut freqs: Vec<f64> = ks.iter().map(|&k| 2.0 * k).collect();
    for (i, &a) in ks.iter().enumerate() {
        for &b in &ks[i + 1..] {
            freqs.push(b - a);
        }
    }
    freqs
        .into_iter()
        .filter_map(|f| {
            let f = f.rem_euclid(TAU);
            let f = f.min(TAU - f);
            (f > 1e-9).then(|| TAU / f)
        })
        .collect()
}

/// Longest oscillation period, the natural envelope window.
pub fn dominant_period(spec: &Model) -> Option<f64> {
    oscillation_periods(spec).into_iter().reduce(f64::max)
}

/// [`fit_exponent_with`] using the default 25% drop.
pub fn fit_exponent(series: &[(f64, f64)], period_hint: Option<f64>, mu: f64) -> Result<FitReport> {
    fit_exponent_with(series, mu, &FitOptions { period_hint, ..FitOptions::default() })
}

/// Decay exponent of `|deviation|` against `L`.
///
/// After dropping the smallest `L` values, points are grouped into
/// consecutive blocks of width `period_hint` and each block contributes its
/// maximum. The exponent is minus the least-squares slope of log max against
/// log L at the maximizing `L`.
pub fn fit_exponent_with(series: &[(f64, f64)], mu: f64, opts: &FitOptions) -> Result<FitReport> {
    if !(0.0..1.0).contains(&opts.drop_fraction) {
        return Err(Error::usage(format!("drop fraction must lie in [0, 1), got {}", opts.drop_fraction)));
    }
    if let Some(p) = opts.period_hint {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::usage(format!("period hint must be positive, got {p}")));
        }
    }
    let mut pts: Vec<(f64, f64)> = series.iter().map(|&(l, d)| (l, d.abs())).collect();
    if pts.iter().any(|&(l, d)| !(l > 0.0 && l.is_finite()) || !d.is_finite()) {
        return Err(Error::usage("series needs positive finite L and finite deviations"));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let drop = (pts.len() as f64 * opts.drop_fraction).floor() as usize;
    let pts = &pts[drop..];

    let mut blocks: Vec<(f64, f64)> = Vec::new();
    let mut start = f64::NEG_INFINITY;
    for &(l, d) in pts {
        let width = opts.period_hint.unwrap_or(0.0);
        match blocks.last_mut() {
            Some(b) if l - start < width => {
                if d > b.1 {
                    *b = (l, d);
                }
            }
            _ => {
                start = l;
                blocks.push((l, d));
            }
        }
    }
    if blocks.len() < 2 {
        return Err(Error::usage(format!("need at least 2 envelope points, got {}", blocks.len())));
    }
    let window = (pts[0].0, pts[pts.len() - 1].0);
    let report = |exponent: f64, residual_norm: f64, points_used| FitReport {
        exponent,
        window,
        points_used,
        residual_norm,
        mu,
        cft_target: 2.0 * mu,
        verdict: if exponent >= mu - 0.1 { Verdict::MeetsBound } else { Verdict::Inconclusive },
    };
    if blocks.iter().all(|b| b.1 == 0.0) {
        return Ok(report(f64::INFINITY, 0.0, blocks.len()));
    }
    let logs: Vec<(f64, f64)> = blocks.iter().filter(|b| b.1 > 0.0).map(|b| (b.0.ln(), b.1.ln())).collect();
    if logs.len() < 2 {
        return Err(Error::usage("need at least 2 nonzero envelope points"));
    }
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::usage("all envelope points share one L"));
    }
    let slope = sxy / sxx;
    let resid = logs.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum::<f64>().sqrt();
    Ok(report(-slope, resid, logs.len()))
}
