use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::subleading::{descendant_correction, subleading_dn};
use super::upsilon::{gamma_coefficients, gamma_derivatives_at_1, is_integer, upsilon, GammaDerivatives, Method};
use crate::error::{Error, Result};
use crate::model::{error_exponent_mu, ModelSpec};
use crate::scalar::{c, cu, ci, Scalar};

fn auto_method<T: Scalar>(n: T) -> Method {
    if is_integer(n) {
        Method::Closed
    } else {
        Method::Quadrature
    }
}

fn check_len<T: Scalar>(len: usize) -> Result<T> {
    if len == 0 {
        return Err(Error::domain("subsystem length must be at least 1"));
    }
    Ok(cu(len))
}

/// Large-`L` prediction for Z_n(α, L).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticPrediction<T> {
    /// L_σ^{−(N/6)(n−1/n) − (2N/n)(α/2π)²} e^{iα⟨Q_A⟩} e^{NΥ(n,α)}.
    pub leading: Complex<T>,
    /// Rigorous error exponent μ(n, α).
    pub mu: T,
    /// 2μ, the exponent expected from field theory (reporting only).
    pub cft_exponent: T,
    /// Oscillating correction.
    pub d_n: Complex<T>,
    /// Non-oscillating 1/L correction.
    pub d_tilde: Complex<T>,
    /// σL.
    pub l_sigma: T,
}

impl<T: Scalar> AsymptoticPrediction<T> {
    /// leading · (1 + d_n + d̃_n).
    pub fn improved(&self) -> Complex<T> {
        self.leading * (self.d_n + self.d_tilde + T::one())
    }
}

/// Leading charged-moment asymptotics together with the first subleading corrections.
pub fn charged_moment_asymptotic<T: Scalar>(
    spec: &ModelSpec<T>,
    n: T,
    alpha: T,
    len: usize,
) -> Result<AsymptoticPrediction<T>> {
    let mu = error_exponent_mu(n, alpha)?;
    let l = check_len::<T>(len)?;
    let nf = cu::<T>(spec.n_fermi());
    let log_ls = l.ln() + spec.log_sigma();
    let a = alpha / T::TAU();
    let exponent = nf / c(6.0) * (n - n.recip()) + c::<T>(2.0) * nf / n * a * a;
    let ups = upsilon(n, alpha, auto_method(n))?;
    let modulus = (-exponent * log_ls + nf * ups).exp();
    let phase = alpha * spec.mean_charge(len);
    let leading = Complex::new(phase.cos(), phase.sin()) * modulus;
    Ok(AsymptoticPrediction {
        leading,
        mu,
        cft_exponent: c::<T>(2.0) * mu,
        d_n: subleading_dn(spec, n, alpha, len)?,
        d_tilde: descendant_correction(spec, n, alpha, len)?,
        l_sigma: log_ls.exp(),
    })
}

fn gammas<T: Scalar>(n: T) -> Result<(T, T)> {
    gamma_coefficients(n, auto_method(n))
}

/// a(n, L) = (N / 2nπ²)(log L_σ − 2nπ²γ₂(n)).
pub fn a_coeff<T: Scalar>(spec: &ModelSpec<T>, n: T, len: usize) -> Result<T> {
    let l = check_len::<T>(len)?;
    if !(n > T::zero()) {
        return Err(Error::domain(format!("Rényi index must be positive, got {n}")));
    }
    let (g2, _) = gammas(n)?;
    let pi2 = T::PI() * T::PI();
    let nf = cu::<T>(spec.n_fermi());
    Ok(nf / (c::<T>(2.0) * n * pi2) * (l.ln() + spec.log_sigma() - c::<T>(2.0) * n * pi2 * g2))
}

/// Gaussian resolved moment: Z_n(0,L) (4πa)^{−1/2} exp(−q_Δ²/4a) (1 + (3/4) N γ₄(n)/a²), with
/// Z_n(0,L) taken from the leading charged-moment term.
pub fn resolved_moment_asymptotic<T: Scalar>(spec: &ModelSpec<T>, n: T, q: i64, len: usize) -> Result<T> {
    let a = a_coeff(spec, n, len)?;
    if !(a > T::zero()) {
        return Err(Error::domain(format!("a(n, L) = {a} is not positive; L = {len} is too small")));
    }
    let (_, g4) = gammas(n)?;
    let z0 = charged_moment_asymptotic(spec, n, T::zero(), len)?.leading.re;
    let qd = ci::<T>(q) - spec.mean_charge(len);
    let nf = cu::<T>(spec.n_fermi());
    let four = c::<T>(4.0);
    Ok(z0 / (four * T::PI() * a).sqrt() * (-qd * qd / (four * a)).exp() * (T::one() + c::<T>(0.75) * nf * g4 / (a * a)))
}

fn log_len<T: Scalar>(len: usize) -> Result<T> {
    let ll = check_len::<T>(len)?.ln();
    if !(ll > T::zero()) {
        return Err(Error::domain("log L must be positive"));
    }
    Ok(ll)
}

/// Resolved Rényi entropy expansion: S_n(q) through order log(L)^{−2}.
pub fn sr_entropy_asymptotic<T: Scalar>(spec: &ModelSpec<T>, n: T, q: i64, len: usize) -> Result<T> {
    if n == T::one() {
        return Err(Error::usage("sr_entropy_asymptotic needs n ≠ 1; use sr_vn_entropy_asymptotic"));
    }
    let a = a_coeff(spec, n, len)?;
    if !(a > T::zero()) {
        return Err(Error::domain(format!("a(n, L) = {a} is not positive; L = {len} is too small")));
    }
    let ll = log_len::<T>(len)?;
    let ls = spec.log_sigma();
    let log_lsig = ll + ls;
    let nf = cu::<T>(spec.n_fermi());
    let pi = T::PI();
    let pi2 = pi * pi;
    let half = c::<T>(0.5);
    let one_m = T::one() - n;
    let ups = upsilon(n, T::zero(), auto_method(n))?;
    let (g2n, g4n) = gammas(n)?;
    let (g21, g41) = gamma_coefficients(T::one(), Method::Closed)?;
    let qd = ci::<T>(q) - spec.mean_charge(len);

    let order0 = nf / c(6.0) * (T::one() + n.recip()) * log_lsig + nf / one_m * ups
        - half * (c::<T>(2.0) * nf / pi * ll).ln()
        + n.ln() / (c::<T>(2.0) * one_m);
    let order1 = n * pi2 * (g2n - g21) / one_m - half * ls;
    let order2 = n * pi2 / one_m
        * (pi2 * (n * g2n * g2n - g21 * g21) + ls * (g21 - g2n) + c::<T>(3.0) * pi2 / nf * (n * g4n - g41))
        + c::<T>(0.25) * ls * ls
        + qd * qd * n * pi2 * pi2 / (nf * one_m) * (g21 - n * g2n);
    Ok(order0 + order1 / ll + order2 / (ll * ll))
}

/// S = (N/3) log L_σ − N Υ′(1).
pub fn vn_entropy_asymptotic<T: Scalar>(spec: &ModelSpec<T>, len: usize) -> Result<T> {
    let d = gamma_derivatives_at_1::<T>()?;
    vn_with(spec, len, &d)
}

fn vn_with<T: Scalar>(spec: &ModelSpec<T>, len: usize, d: &GammaDerivatives<T>) -> Result<T> {
    let l = check_len::<T>(len)?;
    let nf = cu::<T>(spec.n_fermi());
    Ok(nf / c(3.0) * (l.ln() + spec.log_sigma()) - nf * d.upsilon)
}

/// The n → 1 limit of [`sr_entropy_asymptotic`].
pub fn sr_vn_entropy_asymptotic<T: Scalar>(spec: &ModelSpec<T>, q: i64, len: usize) -> Result<T> {
    let ll = log_len::<T>(len)?;
    let d = gamma_derivatives_at_1::<T>()?;
    let s = vn_with(spec, len, &d)?;
    let ls = spec.log_sigma();
    let nf = cu::<T>(spec.n_fermi());
    let pi = T::PI();
    let pi2 = pi * pi;
    let pi4 = pi2 * pi2;
    let half = c::<T>(0.5);
    let (g21, g41) = gamma_coefficients(T::one(), Method::Closed)?;
    let qd = ci::<T>(q) - spec.mean_charge(len);
    let order0 = s - half * (c::<T>(2.0) * nf / pi * ll).ln() - half;
    let order1 = -(pi2 * d.gamma2 + half * ls);
    let order2 = -c::<T>(2.0) * pi4 * g21 * d.gamma2 + pi2 * d.gamma2 * ls
        - c::<T>(3.0) * pi4 / nf * (g41 + d.gamma4)
        + c::<T>(0.25) * ls * ls
        + qd * qd * pi4 / nf * (g21 + d.gamma2);
    Ok(order0 + order1 / ll + order2 / (ll * ll))
}

/// Limit of the twisted overlap modulus |A_n(α)|².
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapModulus<T> {
    pub value: T,
    /// True unless the model is the half-filled XX chain, where the formula
    /// is established; elsewhere it is the expected σ-generalisation.
    pub conjectural: bool,
}

/// σ^{−(1/6)(n−1/n) − (2/n)(α/2π)²} e^{Υ(n,α)} for integer n ≥ 1.
pub fn twisted_overlap_modulus<T: Scalar>(spec: &ModelSpec<T>, n: u32, alpha: T) -> Result<OverlapModulus<T>> {
    if n == 0 {
        return Err(Error::domain("twisted overlap needs an integer n ≥ 1"));
    }
    let nf = cu::<T>(n as usize);
    let a = alpha / T::TAU();
    let exponent = (nf - nf.recip()) / c(6.0) + c::<T>(2.0) / nf * a * a;
    let ups = upsilon(nf, alpha, Method::Closed)?;
    let value = (-exponent * spec.log_sigma() + ups).exp();
    let xx = spec.n_fermi() == 1 && spec.momenta()[0] == T::FRAC_PI_2();
    Ok(OverlapModulus { value, conjectural: !xx })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::EULER_GAMMA;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn xx() -> ModelSpec<f64> {
        ModelSpec::xx_half_filled()
    }

    #[test]
    fn leading_examples() {
        let p = charged_moment_asymptotic(&xx(), 1.0, 0.0, 100).unwrap();
        assert!((p.leading - Complex::new(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(p.mu, 0.5);
        assert_eq!(p.cft_exponent, 1.0);
        let l = 300usize;
        let p = charged_moment_asymptotic(&xx(), 2.0, 0.0, l).unwrap();
        let want = (2.0 * l as f64).powf(-0.25) * upsilon(2.0f64, 0.0, Method::Closed).unwrap().exp();
        assert_relative_eq!(p.leading.re, want, epsilon = 1e-14);
        assert_relative_eq!(p.l_sigma, 600.0, epsilon = 1e-10);
        let spec = ModelSpec::new(vec![2.0 * PI / 5.0, 3.0 * PI / 5.0], -1).unwrap();
        let p = charged_moment_asymptotic(&spec, 1.0, 0.5, 100).unwrap();
        let want = (0.5f64 * 20.0).rem_euclid(2.0 * PI);
        assert!((p.leading.arg().rem_euclid(2.0 * PI) - want).abs() < 1e-10);
        assert!(charged_moment_asymptotic(&xx(), 1.0, PI, 10).is_err());
    }

    #[test]
    fn log_derivative_at_zero_is_mean_charge() {
        let spec = ModelSpec::new(vec![0.4, 1.9], 1).unwrap();
        let h = 1e-5f64;
        let zp = charged_moment_asymptotic(&spec, 1.0, h, 64).unwrap().leading;
        let zm = charged_moment_asymptotic(&spec, 1.0, -h, 64).unwrap().leading;
        let d = (zp.ln() - zm.ln()) / (2.0 * h);
        assert!(d.re.abs() < 1e-6);
        assert_relative_eq!(d.im, spec.mean_charge(64), epsilon = 1e-6);
    }

    #[test]
    fn a_coeff_examples() {
        for len in [10usize, 100, 1000] {
            let a = a_coeff(&xx(), 1.0, len).unwrap();
            let want = ((2.0 * len as f64).ln() + 1.0 + EULER_GAMMA) / (2.0 * PI * PI);
            assert_relative_eq!(a, want, epsilon = 1e-14);
        }
        let spec = ModelSpec::new(vec![0.5, 1.0, 2.0], 1).unwrap();
        let mut prev = f64::MIN;
        for len in 8..200 {
            let a = a_coeff(&spec, 2.0, len).unwrap();
            assert!(a > 0.0 && a > prev);
            prev = a;
        }
    }

    #[test]
    fn resolved_peak_at_mean_charge() {
        let v: Vec<f64> = (500..=524).map(|q| resolved_moment_asymptotic(&xx(), 1.0, q, 1024).unwrap()).collect();
        let imax = v.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
        assert_eq!(imax + 500, 512);
    }

    #[test]
    fn entropy_leading_structure() {
        // q enters only at order log(L)^{-2}
        let spec = xx();
        let scaled = |l: usize| {
            let s0 = sr_entropy_asymptotic(&spec, 2.0, (l / 2) as i64, l).unwrap();
            let s1 = sr_entropy_asymptotic(&spec, 2.0, (l / 2 + 1) as i64, l).unwrap();
            (s0 - s1) * (l as f64).ln().powi(2)
        };
        let (a, b) = (scaled(1 << 10), scaled(1 << 20));
        assert!(a != 0.0);
        assert_relative_eq!(a, b, max_relative = 1e-10);
        assert!(sr_entropy_asymptotic(&spec, 1.0, 0, 1 << 20).is_err());
    }

    #[test]
    fn vn_entropy_constant() {
        // (1/3) log(2L) − Υ'(1) reproduces the known XX constant 0.7261…
        let s = vn_entropy_asymptotic(&xx(), 1).unwrap();
        assert_relative_eq!(s, 0.726_066_968_321_881, epsilon = 1e-7);
        let sq = sr_vn_entropy_asymptotic(&xx(), 512, 1024).unwrap();
        assert!(sq < vn_entropy_asymptotic(&xx(), 1024).unwrap());
    }

    #[test]
    fn overlap_examples() {
        let spec = xx();
        let a = 0.9;
        let o = twisted_overlap_modulus(&spec, 1, a).unwrap();
        let want = 2f64.powf(-2.0 * (a / (2.0 * PI)).powi(2)) * upsilon(1.0, a, Method::Closed).unwrap().exp();
        assert_relative_eq!(o.value, want, epsilon = 1e-14);
        assert!(!o.conjectural);
        assert_relative_eq!(twisted_overlap_modulus(&spec, 1, 0.0).unwrap().value, 1.0, epsilon = 1e-14);
        let k = 1.1;
        let spec = ModelSpec::new(vec![k], -1).unwrap();
        let o = twisted_overlap_modulus(&spec, 1, a).unwrap();
        let want = (2.0 * k.sin()).powf(-2.0 * (a / (2.0 * PI)).powi(2)) * upsilon(1.0, a, Method::Closed).unwrap().exp();
        assert_relative_eq!(o.value, want, epsilon = 1e-14);
        assert!(o.conjectural);
    }
}
