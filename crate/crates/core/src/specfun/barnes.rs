use num_complex::Complex;

use super::gamma::{ln_gamma, log_gamma};
use super::{BERNOULLI_EVEN, ZETA_PRIME_MINUS_ONE};
use crate::error::{Error, Result};
use crate::scalar::{c, Scalar};

/// The asymptotic series for log G(u + 1) is used once |u| exceeds this.
const ASYMPTOTIC_FROM: f64 = 8.0;

/// log G(u + 1) = u²/2 (log u − 3/2) + u/2 log 2π − log(u)/12 + ζ'(−1)
///               + Σ_k B_{2k+2} / (4k(k+1) u^{2k}).
fn asymptotic<T: Scalar>(u: Complex<T>) -> Complex<T> {
    let lu = u.ln();
    let mut s = u * u * c::<T>(0.5) * (lu - c::<T>(1.5))
        + u * c::<T>(0.5 * (2.0 * std::f64::consts::PI).ln())
        - lu * c::<T>(1.0 / 12.0)
        + c::<T>(ZETA_PRIME_MINUS_ONE);
    let u2 = (u * u).inv();
    let mut p = u2;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate().skip(1) {
        let kk = k as f64;
        s = s + p * c::<T>(b / (4.0 * kk * (kk + 1.0)));
        p = p * u2;
    }
    s
}

/// log G(z) for real `z > 0`, where G is the Barnes G-function.
///
/// Uses `log G(z) = log G(z+m) − Σ_{k<m} log Γ(z+k)` to reach the asymptotic
/// regime.
pub fn log_barnes_g<T: Scalar>(z: T) -> Result<T> {
    if !(z > T::zero()) || !z.is_finite() {
        return Err(Error::domain(format!("log_barnes_g: requires z > 0, got {z}")));
    }
    if z == T::one() || z == c(2.0) {
        return Ok(T::zero());
    }
    let mut w = z;
    let mut acc = T::zero();
    while w - T::one() < c(ASYMPTOTIC_FROM) {
        acc = acc + ln_gamma(w)?;
        w = w + T::one();
    }
    Ok(asymptotic(Complex::new(w - T::one(), T::zero())).re - acc)
}

/// log G(z) for complex `z` with `Re z > 0`.
fn log_barnes_g_complex<T: Scalar>(z: Complex<T>) -> Result<Complex<T>> {
    if !(z.re > T::zero()) || !z.im.is_finite() {
        return Err(Error::domain(format!("log_barnes_g: requires Re z > 0, got {z}")));
    }
    let mut w = z;
    let mut acc = Complex::new(T::zero(), T::zero());
    while (w - T::one()).norm() < c(ASYMPTOTIC_FROM) {
        acc = acc + log_gamma(w)?;
        w = w + T::one();
    }
    Ok(asymptotic(w - T::one()) - acc)
}

/// log[G(1 + iy) G(1 − iy)] = 2 Re log G(1 + iy) for real `y`.
pub fn log_barnes_g_conj_pair<T: Scalar>(y: T) -> Result<T> {
    if !y.is_finite() {
        return Err(Error::domain(format!("log_barnes_g_conj_pair: non-finite {y}")));
    }
    Ok(c::<T>(2.0) * log_barnes_g_complex(Complex::new(T::one(), y.abs()))?.re)
}
