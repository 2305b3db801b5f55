//! Exact lattice and asymptotic symmetry-resolved entanglement for critical
//! free-fermion chains.
//!
//! The crate has five layers:
//!
//! * [`specfun`]: log Γ, polygamma, log Barnes G and a double-exponential
//!   quadrature on the real line.
//! * [`model`]: ground-state data (Fermi momenta and the sign of the symbol at
//!   `k = π`), the length scale σ, mean charge and the standalone identities.
//! * [`lattice`]: correlation-matrix spectra and exact charged moments,
//!   resolved moments and entropies at finite `L`.
//! * [`asymptotics`]: the large-`L` predictions, the constant Υ(n, α) and its
//!   expansion, and the subleading corrections.
//! * [`harness`]: sweeps comparing the two, exponent fits, identity checks and
//!   CSV/JSON output.
//!
//! Numerical kernels are generic over [`Scalar`] (`f32` or `f64`). The harness
//! works in `f64`; the aliases below name the concrete types it uses.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod harness;
pub mod lattice;
pub mod model;
mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Working precision of the harness and CLI.
pub type Real = f64;
/// Complex number at working precision.
pub type Complex = num_complex::Complex<Real>;
/// Ground-state specification at working precision.
pub type Model = model::ModelSpec<Real>;
/// Correlation spectrum at working precision.
pub type Spectrum = lattice::CorrelationSpectrum<Real>;
/// Asymptotic prediction at working precision.
pub type Prediction = asymptotics::AsymptoticPrediction<Real>;
/// Quadrature settings at working precision.
pub type Quadrature = specfun::QuadratureSpec<Real>;
