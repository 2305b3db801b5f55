use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::tanh_diff;
use crate::error::{Error, Result};
use crate::scalar::{c, cu, Scalar};
use crate::specfun::{integrate_line, log_barnes_g, log_barnes_g_conj_pair, log_gamma, polygamma, QuadratureSpec};

/// Which representation to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Numerical integration of the real-line integral.
    Quadrature,
    /// Barnes G / polygamma closed forms (branch integral for non-integer n).
    Closed,
}

/// Finite-difference step in `n` for derivatives at n = 1.
const FD_STEP: f64 = 1e-4;
/// Allowed disagreement between the two Richardson levels.
const FD_AGREEMENT: f64 = 1e-5;

fn check_n<T: Scalar>(n: T) -> Result<()> {
    if !(n > T::zero()) || !n.is_finite() {
        return Err(Error::domain(format!("Rényi index must be positive, got {n}")));
    }
    Ok(())
}

fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if !(alpha.abs() < T::PI()) {
        return Err(Error::domain(format!("|α| must be below π, got {alpha}")));
    }
    Ok(())
}

pub(crate) fn is_integer<T: Scalar>(n: T) -> bool {
    n == n.round()
}

/// θ(w) = Im log Γ(1/2 + iw); log Γ(1/2+iw)/Γ(1/2−iw) = 2iθ(w).
fn theta<T: Scalar>(w: T) -> T {
    log_gamma(Complex::new(c(0.5), w)).map(|z| z.im).unwrap_or_else(|_| T::nan())
}

/// Υ(n, α) with default quadrature tolerances.
pub fn upsilon<T: Scalar>(n: T, alpha: T, method: Method) -> Result<T> {
    upsilon_with(n, alpha, method, &QuadratureSpec::default())
}

/// Υ(n, α) = i n ∫ (tanh πw − tanh(nπw + iα/2)) log[Γ(1/2+iw)/Γ(1/2−iw)] dw.
pub fn upsilon_with<T: Scalar>(n: T, alpha: T, method: Method, quad: &QuadratureSpec<T>) -> Result<T> {
    check_n(n)?;
    check_alpha(alpha)?;
    match method {
        Method::Quadrature => {
            let pi = T::PI();
            let half_alpha = alpha * c(0.5);
            let f = |w: T| {
                let d = tanh_diff(pi * w, Complex::new(n * pi * w, half_alpha));
                Complex::new(d.re * theta(w), T::zero())
            };
            Ok(-c::<T>(2.0) * n * integrate_line(f, quad)?.re)
        }
        Method::Closed if is_integer(n) => upsilon_residues(n, alpha),
        Method::Closed => upsilon_branch(n, alpha, quad),
    }
}

/// 2 Σ_{m<n} log[G(1 − α/2πn + x_m) G(1 + α/2πn + x_m)], x_m = (2m+1−n)/2n.
fn upsilon_residues<T: Scalar>(n: T, alpha: T) -> Result<T> {
    let shift = alpha / (T::TAU() * n);
    let count = n.to_usize().unwrap_or(0);
    let mut s = T::zero();
    for m in 0..count {
        let x = (cu::<T>(2 * m + 1) - n) / (c::<T>(2.0) * n);
        s = s + log_barnes_g(T::one() - shift + x)? + log_barnes_g(T::one() + shift + x)?;
    }
    Ok(c::<T>(2.0) * s)
}

fn g_pair<T: Scalar>(u: T) -> Result<T> {
    Ok(log_barnes_g(T::one() + u)? + log_barnes_g(T::one() - u)?)
}

/// Non-integer n: residue sums bounded by m₁, m₂ plus (8n sin nπ/π) I(n, α).
fn upsilon_branch<T: Scalar>(n: T, alpha: T, quad: &QuadratureSpec<T>) -> Result<T> {
    let pi = T::PI();
    let a = alpha / pi;
    let half = c::<T>(0.5);
    let two_n = c::<T>(2.0) * n;
    let m1 = (n * half - half + alpha / T::TAU()).floor();
    let m2 = (n * half + half - alpha / T::TAU()).floor();
    let mut s = T::zero();
    let mut m = T::zero();
    while m <= m1 {
        s = s + g_pair((c::<T>(2.0) * m + T::one() - n - a) / two_n)?;
        m = m + T::one();
    }
    let mut m = T::one();
    while m <= m2 {
        s = s + g_pair((T::one() + n - c::<T>(2.0) * m - a) / two_n)?;
        m = m + T::one();
    }
    let branch = c::<T>(8.0) * n * (n * pi).sin() / pi * branch_integral(n, alpha, quad)?;
    Ok(c::<T>(2.0) * s + branch)
}

/// I(n, α) over x ∈ (0, ∞), integrated in s = log x with r = x/(x+2).
fn branch_integral<T: Scalar>(n: T, alpha: T, quad: &QuadratureSpec<T>) -> Result<T> {
    let pi = T::PI();
    let two = c::<T>(2.0);
    let (ca, cn, sn) = (alpha.cos(), (n * pi).cos(), (n * pi).sin());
    let f = |s: T| {
        // log r = −log(1 + 2e^{−s})
        let (ln_r, pref) = if s >= T::zero() {
            let e = (-s).exp();
            (-(two * e).ln_1p(), e / (T::one() + two * e))
        } else {
            let e = s.exp();
            (s - (two + e).ln(), T::one() / (e + two))
        };
        let rn = (n * ln_r).exp();
        let num = ca * (rn * rn + T::one()) + two * rn * cn;
        // |1 + 2 r^n e^{inπ} cos α + e^{2inπ} r^{2n}|²
        let phase1 = Complex::new(cn, sn);
        let phase2 = phase1 * phase1;
        let den = (Complex::new(T::one(), T::zero()) + phase1 * (two * rn * ca) + phase2 * (rn * rn)).norm_sqr();
        let y = -ln_r / T::TAU();
        let g = log_barnes_g_conj_pair(y).unwrap_or_else(|_| T::nan());
        let v = if rn == T::zero() { T::zero() } else { pref * rn * num / den * g };
        Complex::new(v, T::zero())
    };
    Ok(integrate_line(f, quad)?.re)
}

/// (γ₂(n), γ₄(n)): the α² and α⁴ coefficients of Υ(n, α).
pub fn gamma_coefficients<T: Scalar>(n: T, method: Method) -> Result<(T, T)> {
    gamma_coefficients_with(n, method, &QuadratureSpec::default())
}

fn gamma_coefficients_with<T: Scalar>(n: T, method: Method, quad: &QuadratureSpec<T>) -> Result<(T, T)> {
    check_n(n)?;
    let pi = T::PI();
    match method {
        Method::Closed => {
            if !is_integer(n) {
                return Err(Error::usage(format!("closed γ coefficients need integer n, got {n}")));
            }
            let count = n.to_usize().unwrap_or(0);
            let (mut g2, mut g4) = (T::zero(), T::zero());
            for m in 0..count {
                let x = (cu::<T>(2 * m + 1) - n) / (c::<T>(2.0) * n);
                let arg = T::one() + x;
                g2 = g2 - T::one() + polygamma(0, arg)? + x * polygamma(1, arg)?;
                g4 = g4 + c::<T>(3.0) * polygamma(2, arg)? + x * polygamma(3, arg)?;
            }
            let n2 = n * n;
            let pi2 = pi * pi;
            Ok((
                c::<T>(2.0) * g2 / (c::<T>(4.0) * n2 * pi2),
                c::<T>(2.0) * g4 / (c::<T>(192.0) * n2 * n2 * pi2 * pi2),
            ))
        }
        Method::Quadrature => {
            // tanh³x − tanh x = −tanh x sech²x
            let f2 = |w: T| {
                let x = pi * n * w;
                let e = (-c::<T>(2.0) * x.abs()).exp();
                let sech2 = c::<T>(4.0) * e / ((T::one() + e) * (T::one() + e));
                Complex::new(x.tanh() * sech2 * theta(w), T::zero())
            };
            // (sinh 3x − 11 sinh x)/cosh⁵x = 16[u(1−u³) − 11u²(1−u)]/(1+u)⁵, u = e^{−2|x|}, odd in x
            let f4 = |w: T| {
                let x = pi * n * w;
                let u = (-c::<T>(2.0) * x.abs()).exp();
                let r = c::<T>(16.0) * (u * (T::one() - u * u * u) - c::<T>(11.0) * u * u * (T::one() - u))
                    / (T::one() + u).powi(5);
                Complex::new(x.signum() * r * theta(w), T::zero())
            };
            let g2 = n * c(0.5) * integrate_line(f2, quad)?.re;
            let g4 = -n / c(96.0) * integrate_line(f4, quad)?.re;
            Ok((g2, g4))
        }
    }
}

/// Υ(n) together with γ₂(n), γ₄(n) and the remainder ε(n, α).
#[derive(Clone, Debug, PartialEq)]
pub struct UpsilonExpansion<T> {
    pub n: T,
    pub upsilon0: T,
    pub gamma2: T,
    pub gamma4: T,
    method: Method,
    quad: QuadratureSpec<T>,
}

impl<T: Scalar> UpsilonExpansion<T> {
    pub fn new(n: T, method: Method) -> Result<Self> {
        let quad = QuadratureSpec::default();
        let upsilon0 = upsilon_with(n, T::zero(), method, &quad)?;
        let (gamma2, gamma4) = gamma_coefficients_with(n, method, &quad)?;
        Ok(Self { n, upsilon0, gamma2, gamma4, method, quad })
    }

    /// ε(n, α) = Υ(n, α) − Υ(n) − α²γ₂ − α⁴γ₄.
    pub fn remainder(&self, alpha: T) -> Result<T> {
        let a2 = alpha * alpha;
        let full = upsilon_with(self.n, alpha, self.method, &self.quad)?;
        Ok(full - self.upsilon0 - a2 * self.gamma2 - a2 * a2 * self.gamma4)
    }
}

/// Derivatives in n at n = 1 of γ₂, γ₄ and Υ(n, 0).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaDerivatives<T> {
    pub gamma2: T,
    pub gamma4: T,
    pub upsilon: T,
}

/// Central differences (step 1e-4 and 5e-5) of the quadrature forms at
/// n = 1, combined by one Richardson step.
pub fn gamma_derivatives_at_1<T: Scalar>() -> Result<GammaDerivatives<T>> {
    let quad = QuadratureSpec { abs_tol: c::<T>(1e-15).max(T::epsilon()), rel_tol: c::<T>(1e-14).max(T::epsilon()), max_depth: 12 };
    let eval = |n: T| -> Result<[T; 3]> {
        let (g2, g4) = gamma_coefficients_with(n, Method::Quadrature, &quad)?;
        let u = upsilon_with(n, T::zero(), Method::Quadrature, &quad)?;
        Ok([g2, g4, u])
    };
    let h = c::<T>(FD_STEP);
    let central = |h: T| -> Result<[T; 3]> {
        let (p, m) = (eval(T::one() + h)?, eval(T::one() - h)?);
        Ok([0, 1, 2].map(|i| (p[i] - m[i]) / (c::<T>(2.0) * h)))
    };
    let coarse = central(h)?;
    let fine = central(h * c(0.5))?;
    let rich = [0, 1, 2].map(|i| (c::<T>(4.0) * fine[i] - coarse[i]) / c(3.0));
    for i in 0..3 {
        let gap = (rich[i] - fine[i]).abs();
        if gap > c(FD_AGREEMENT) {
            return Err(Error::Accuracy {
                estimate_re: rich[i].to_f64().unwrap_or(f64::NAN),
                estimate_im: 0.0,
                error_bound: gap.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(GammaDerivatives { gamma2: rich[0], gamma4: rich[1], upsilon: rich[2] })
}
