//! Special functions and real-line quadrature.

mod barnes;
mod gamma;
mod quadrature;

pub use barnes::{log_barnes_g, log_barnes_g_conj_pair};
pub use gamma::{gamma_ratio_sq, ln_abs_gamma, ln_gamma, log_gamma, polygamma};
pub use quadrature::{integrate_line, QuadratureSpec};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// ζ'(−1), the constant term of the Barnes G asymptotic series.
pub const ZETA_PRIME_MINUS_ONE: f64 = -0.165_421_143_700_450_93;

/// Even Bernoulli numbers B_2, B_4, ..., B_20.
pub(crate) const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];
