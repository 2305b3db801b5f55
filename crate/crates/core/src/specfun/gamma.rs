use num_complex::Complex;

use super::BERNOULLI_EVEN;
use crate::error::{Error, Result};
use crate::scalar::{c, cu, Scalar};

/// Below this real part the shift recurrence is replaced by reflection.
const REFLECT_BELOW: f64 = -30.0;
/// Stirling's series is used once the argument is at least this large.
const STIRLING_FROM: f64 = 12.0;

fn is_nonpositive_integer<T: Scalar>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

/// Principal branch of log Γ(z).
///
/// Shifts the argument to the right with `log Γ(z) = log Γ(z+m) − Σ log(z+k)`
/// and evaluates Stirling's series there. Far in the left half plane the
/// reflection formula is used, which agrees with the principal branch up to a
/// multiple of 2πi.
pub fn log_gamma<T: Scalar>(z: Complex<T>) -> Result<Complex<T>> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("log_gamma: non-finite argument {z}")));
    }
    if z.im == T::zero() && is_nonpositive_integer(z.re) {
        return Err(Error::domain(format!("log_gamma: pole at {}", z.re)));
    }
    if z.re < c(REFLECT_BELOW) {
        let pi = T::PI();
        let s = (z * pi).sin();
        let one = Complex::new(T::one(), T::zero());
        return Ok(Complex::new(pi.ln(), T::zero()) - s.ln() - log_gamma(one - z)?);
    }
    let mut w = z;
    let mut acc = Complex::new(T::zero(), T::zero());
    while w.re < c(STIRLING_FROM) {
        acc = acc + w.ln();
        w = w + T::one();
    }
    Ok(stirling(w) - acc)
}

fn stirling<T: Scalar>(w: Complex<T>) -> Complex<T> {
    let half = c::<T>(0.5);
    let mut s = (w - half) * w.ln() - w + c::<T>(0.5 * (2.0 * std::f64::consts::PI).ln());
    let winv = w.inv();
    let w2 = winv * winv;
    let mut p = winv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k2 = (2 * (k + 1)) as f64;
        s = s + p * c::<T>(b / (k2 * (k2 - 1.0)));
        p = p * w2;
    }
    s
}

/// log Γ(x) for real `x > 0`.
pub fn ln_gamma<T: Scalar>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain(format!("ln_gamma: requires x > 0, got {x}")));
    }
    let mut w = x;
    let mut acc = T::zero();
    while w < c(STIRLING_FROM) {
        acc = acc + w.ln();
        w = w + T::one();
    }
    let mut s = (w - c(0.5)) * w.ln() - w + c::<T>(0.5 * (2.0 * std::f64::consts::PI).ln());
    let winv = w.recip();
    let w2 = winv * winv;
    let mut p = winv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k2 = (2 * (k + 1)) as f64;
        s = s + p * c::<T>(b / (k2 * (k2 - 1.0)));
        p = p * w2;
    }
    Ok(s - acc)
}

/// log |Γ(x)| for real `x` away from the poles.
pub fn ln_abs_gamma<T: Scalar>(x: T) -> Result<T> {
    if is_nonpositive_integer(x) {
        return Err(Error::domain(format!("ln_abs_gamma: pole at {x}")));
    }
    if x > T::zero() {
        return ln_gamma(x);
    }
    let pi = T::PI();
    Ok(pi.ln() - (pi * x).sin().abs().ln() - ln_gamma(T::one() - x)?)
}

/// (Γ(1/2 + x) / Γ(1/2 − x))² for `x > −1/2`; zero when 1/2 − x is a pole.
pub fn gamma_ratio_sq<T: Scalar>(x: T) -> Result<T> {
    let half = c::<T>(0.5);
    let den = half - x;
    if is_nonpositive_integer(den) {
        return Ok(T::zero());
    }
    Ok((c::<T>(2.0) * (ln_gamma(half + x)? - ln_abs_gamma(den)?)).exp())
}

/// Polygamma function ψ^(m)(x) for real `x > 0`.
pub fn polygamma<T: Scalar>(m: u32, x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain(format!("polygamma: requires x > 0, got {x}")));
    }
    let mf: T = cu(m as usize);
    // m! and (m-1)! as T.
    let mut fact_m = T::one();
    for k in 2..=m {
        fact_m = fact_m * cu(k as usize);
    }
    let sign_m = if m % 2 == 0 { T::one() } else { -T::one() };

    let threshold = c::<T>(STIRLING_FROM + 3.0) + mf;
    let mut w = x;
    let mut shift = T::zero();
    while w < threshold {
        // ψ^(m)(w) = ψ^(m)(w+1) − (−1)^m m!/w^{m+1}
        shift = shift + sign_m * fact_m / w.powi(m as i32 + 1);
        w = w + T::one();
    }

    let winv = w.recip();
    let w2 = winv * winv;
    let asym = if m == 0 {
        let mut s = w.ln() - c::<T>(0.5) * winv;
        let mut p = w2;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let k2 = (2 * (k + 1)) as f64;
            s = s - p * c::<T>(b / k2);
            p = p * w2;
        }
        s
    } else {
        // (−1)^{m+1} [ (m−1)!/w^m + m!/(2 w^{m+1}) + Σ B_2k (2k+m−1)!/((2k)! w^{2k+m}) ]
        let fact_m1 = fact_m / mf;
        let wm = winv.powi(m as i32);
        let mut s = fact_m1 * wm + fact_m * c::<T>(0.5) * wm * winv;
        let mut p = wm * w2;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let two_k = 2 * (k + 1);
            // (2k+m−1)!/(2k)! = Π_{j=2k+1}^{2k+m−1} j
            let mut ratio = T::one();
            for j in (two_k + 1)..(two_k + m as usize) {
                ratio = ratio * cu(j);
            }
            s = s + c::<T>(*b) * ratio * p;
            p = p * w2;
        }
        -sign_m * s
    };
    Ok(asym - shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn lg(re: f64, im: f64) -> Complex<f64> {
        log_gamma(Complex::new(re, im)).unwrap()
    }

    #[test]
    fn log_gamma_known_values() {
        assert!(lg(1.0, 0.0).norm() < 1e-15);
        assert_relative_eq!(lg(0.5, 0.0).re, 0.5 * std::f64::consts::PI.ln(), epsilon = 1e-14);
        assert_relative_eq!(lg(5.0, 0.0).re, 24f64.ln(), epsilon = 1e-14);
        // Γ(i) = −0.1549498283 − 0.4980156681 i
        let g = lg(0.0, 1.0).exp();
        assert_relative_eq!(g.re, -0.154_949_828_301_810_7, epsilon = 1e-13);
        assert_relative_eq!(g.im, -0.498_015_668_118_356, epsilon = 1e-13);
    }

    #[test]
    fn log_gamma_rejects_poles() {
        assert!(log_gamma(Complex::new(0.0, 0.0)).is_err());
        assert!(log_gamma(Complex::new(-3.0, 0.0)).is_err());
        assert!(log_gamma(Complex::new(-3.0, 1e-3)).is_ok());
        assert!(ln_gamma(0.0).is_err());
    }

    #[test]
    fn log_gamma_imaginary_part_is_continuous_branch() {
        // Im log Γ(1/2 + iw) grows like w log w; compare against Stirling at w = 40.
        let w = 40.0;
        let z = Complex::new(0.5, w);
        let direct = stirling(z);
        assert_relative_eq!(lg(0.5, w).im, direct.im, epsilon = 1e-12);
        assert_relative_eq!(lg(0.5, 3.0).im, -lg(0.5, -3.0).im, epsilon = 1e-14);
    }

    #[test]
    fn reflection_branch_matches_gamma() {
        let z = Complex::new(-40.5, 0.3);
        let a = lg(z.re, z.im);
        let b = lg(z.re + 1.0, z.im);
        let r = (b - a).exp();
        assert_relative_eq!(r.re, z.re, epsilon = 1e-9);
        assert_relative_eq!(r.im, z.im, epsilon = 1e-9);
    }

    #[test]
    fn ln_abs_gamma_negative_arguments() {
        // Γ(−1/2) = −2√π
        let v = ln_abs_gamma(-0.5f64).unwrap();
        assert_relative_eq!(v, (2.0 * std::f64::consts::PI.sqrt()).ln(), epsilon = 1e-13);
        assert_eq!(gamma_ratio_sq(1.5f64).unwrap(), 0.0);
        assert_relative_eq!(gamma_ratio_sq(0.0f64).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn polygamma_known_values() {
        let pi2 = std::f64::consts::PI.powi(2);
        assert_relative_eq!(polygamma(0, 1.0).unwrap(), -super::super::EULER_GAMMA, epsilon = 1e-14);
        assert_relative_eq!(polygamma(1, 1.0).unwrap(), pi2 / 6.0, epsilon = 1e-14);
        let zeta3: f64 = (1..200_000).rev().map(|k| 1.0 / (k as f64).powi(3)).sum();
        assert_relative_eq!(polygamma(2, 1.0).unwrap(), -2.0 * zeta3, epsilon = 1e-10);
        // ψ'''(1) = 6 ζ(4) = π⁴/15
        assert_relative_eq!(polygamma(3, 1.0).unwrap(), pi2 * pi2 / 15.0, epsilon = 1e-12);
        assert_relative_eq!(polygamma(0, 0.5).unwrap(), -super::super::EULER_GAMMA - 2.0 * 2f64.ln(), epsilon = 1e-14);
        assert!(polygamma(0, 0.0f64).is_err());
    }

    #[test]
    fn f32_paths_run() {
        let v = ln_gamma(5.0f32).unwrap();
        assert!((v - 24f32.ln()).abs() < 1e-5);
        let p = polygamma(1, 1.0f32).unwrap();
        assert!((p - 1.644_934).abs() < 1e-5);
    }

    proptest! {
        #[test]
        fn gamma_recurrence(x in 0.1f64..10.0, y in -5.0f64..5.0) {
            let z = Complex::new(x, y);
            let lhs = log_gamma(z + 1.0).unwrap().exp();
            let rhs = z * log_gamma(z).unwrap().exp();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        }

        #[test]
        fn polygamma_recurrence(m in 0u32..5, x in 0.05f64..30.0) {
            let mut fact = 1.0;
            for k in 2..=m { fact *= k as f64; }
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let lhs = polygamma(m, x + 1.0).unwrap();
            let base = polygamma(m, x).unwrap();
            let step = sign * fact / x.powi(m as i32 + 1);
            let rhs = base + step;
            // the two right-hand terms cancel for small x
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + base.abs() + step.abs()));
        }

        #[test]
        fn real_and_complex_agree(x in 0.01f64..50.0) {
            let a = ln_gamma(x).unwrap();
            let b = log_gamma(Complex::new(x, 0.0)).unwrap();
            prop_assert!((a - b.re).abs() <= 1e-12 * (1.0 + a.abs()));
            prop_assert!(b.im.abs() < 1e-14);
        }
    }
}
