use std::path::PathBuf;

/// Errors raised anywhere in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of a formula (pole, |α| ≥ π, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The call itself is malformed (wrong N, too few points, bad config).
    #[error("usage error: {0}")]
    Usage(String),

    /// Quadrature did not reach the requested tolerance.
    #[error(
        "quadrature did not converge: best estimate {estimate_re:e}{estimate_im:+e}i, \
         error bound {error_bound:e}"
    )]
    Accuracy {
        estimate_re: f64,
        estimate_im: f64,
        error_bound: f64,
    },

    /// The charge sector carries (numerically) zero weight.
    #[error("charge sector q={q} is empty (weight {weight:e})")]
    SectorEmpty { q: i64, weight: f64 },

    /// A numerical routine failed or produced an inconsistent result.
    #[error("computation error: {0}")]
    Computation(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by the caller's input rather than a failed check.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Usage(_) | Error::Json(_) | Error::Io { .. }
        )
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
