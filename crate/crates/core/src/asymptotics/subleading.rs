use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::tanh_diff;
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::scalar::{c, cu, Scalar};
use crate::specfun::{gamma_ratio_sq, integrate_line, QuadratureSpec};

use super::upsilon::Method;

/// Jump positions on the unit circle and the pair length scales σ⋆(r, s).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubleadingScales<T> {
    /// Angles θ_t of z_t = e^{iθ_t}, t = 1..2N: k_1..k_N then −k_N..−k_1
    /// (z_t = e^{i(2π − k)} for the second half).
    pub angles: Vec<T>,
    /// σ⋆(r, s) keyed by (r, s).
    pub sigma_star: BTreeMap<(i64, i64), T>,
}

impl<T: Scalar> SubleadingScales<T> {
    pub fn positions(&self) -> Vec<Complex<T>> {
        self.angles.iter().map(|&t| Complex::new(t.cos(), t.sin())).collect()
    }

    /// θ of z_t for 1-based `t`.
    fn angle(&self, t: i64) -> T {
        self.angles[(t - 1) as usize]
    }
}

/// Ranges r ∈ [−⌈N/2⌉+1, ⌊N/2⌋] and s ∈ [−⌊N/2⌋, ⌈N/2⌉−1].
fn index_ranges(nf: i64) -> (std::ops::RangeInclusive<i64>, std::ops::RangeInclusive<i64>) {
    let floor = nf / 2;
    let ceil = (nf + 1) / 2;
    (-ceil + 1..=floor, -floor..=ceil - 1)
}

/// log |z_a − z_b| = log |2 sin((θ_a − θ_b)/2)|.
fn log_chord<T: Scalar>(ta: T, tb: T) -> T {
    (c::<T>(2.0) * ((ta - tb) * c(0.5)).sin()).abs().ln()
}

pub fn subleading_scales<T: Scalar>(spec: &ModelSpec<T>) -> SubleadingScales<T> {
    let k = spec.momenta();
    let nf = k.len() as i64;
    // ±k rather than 2π − k keeps L·θ exact modulo 2π for integer L
    let angles: Vec<T> = k.iter().copied().chain(k.iter().rev().map(|&kr| -kr)).collect();
    let mut sigma_star = BTreeMap::new();
    // log Π_{t≠j} |z_t − z_j|^{(−1)^{N−t}}
    let log_prod = |j: i64| -> T {
        (1..=2 * nf)
            .filter(|&t| t != j)
            .map(|t| {
                let v = log_chord(angles[(t - 1) as usize], angles[(j - 1) as usize]);
                if (nf - t).rem_euclid(2) == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    };
    let (rr, ss) = index_ranges(nf);
    for r in rr {
        for s in ss.clone() {
            let v = (c::<T>(0.5) * (log_prod(nf + 1 + 2 * s) - log_prod(nf + 2 * r))).exp();
            sigma_star.insert((r, s), v);
        }
    }
    SubleadingScales { angles, sigma_star }
}

fn check_alpha<T: Scalar>(n: T, alpha: T) -> Result<()> {
    if !(n > T::zero()) {
        return Err(Error::domain(format!("Rényi index must be positive, got {n}")));
    }
    if !(alpha.abs() < T::PI()) {
        return Err(Error::domain(format!("|α| must be below π, got {alpha}")));
    }
    Ok(())
}

/// For sign +1 the moment is e^{iαL} times the sign −1 moment at −α, so the
/// relative corrections are those of the sign −1 formula evaluated at −α.
fn effective_alpha<T: Scalar>(spec: &ModelSpec<T>, alpha: T) -> T {
    if spec.sign_at_pi() > 0 {
        -alpha
    } else {
        alpha
    }
}

fn unit<T: Scalar>(phi: T) -> Complex<T> {
    let phi = phi % T::TAU();
    Complex::new(phi.cos(), phi.sin())
}

/// d_n(α, L): the oscillating corrections from the subdominant
/// Fisher–Hartwig representations.
pub fn subleading_dn<T: Scalar>(spec: &ModelSpec<T>, n: T, alpha: T, len: usize) -> Result<Complex<T>> {
    check_alpha(n, alpha)?;
    let alpha = effective_alpha(spec, alpha);
    let sc = subleading_scales(spec);
    let nf = spec.n_fermi() as i64;
    let l = cu::<T>(len);
    let two = c::<T>(2.0);
    let mut total = Complex::new(T::zero(), T::zero());
    for sign in [T::one(), -T::one()] {
        let p = two / n * (T::one() + sign * alpha / T::PI());
        let pref = l.powf(-p) * gamma_ratio_sq(p * c(0.25))?;
        if pref == T::zero() {
            continue;
        }
        let mut sum = Complex::new(T::zero(), T::zero());
        for (&(r, s), &sig) in &sc.sigma_star {
            let ta = sc.angle(nf + 2 * r);
            let tb = sc.angle(nf + 1 + 2 * s);
            let chord2 = (two * log_chord(ta, tb)).exp();
            sum = sum + unit(sign * l * (ta - tb)) * (sig.powf(two - p) / chord2);
        }
        total = total + sum * pref;
    }
    Ok(total)
}

/// (c₁, c₂, c₃) of the N = 2 regrouping, evaluated at exponent
/// p = (2/n)(1 − α/π).
///
/// With D = sin((k₂−k₁)/2), S = sin((k₂+k₁)/2):
/// c₁ = 2 (2D)^{−p} (√(sin k₁ sin k₂)/S)^{2−p}, c₂ = (2 sin k₂)^{−p} (D/S)^{2−p},
/// c₃ = (2 sin k₁)^{−p} (D/S)^{2−p}.
pub fn n2_coefficients<T: Scalar>(spec: &ModelSpec<T>, n: T, alpha: T) -> Result<[T; 3]> {
    if spec.n_fermi() != 2 {
        return Err(Error::usage(format!("N = 2 coefficients need two Fermi momenta, got {}", spec.n_fermi())));
    }
    check_alpha(n, alpha)?;
    Ok(n2_coeffs_at(spec, c::<T>(2.0) / n * (T::one() - alpha / T::PI())))
}

fn n2_coeffs_at<T: Scalar>(spec: &ModelSpec<T>, p: T) -> [T; 3] {
    let (k1, k2) = (spec.momenta()[0], spec.momenta()[1]);
    let half = c::<T>(0.5);
    let two = c::<T>(2.0);
    let d = ((k2 - k1) * half).sin();
    let s = ((k2 + k1) * half).sin();
    let ratio = (d / s).powf(two - p);
    [
        two * (two * d).powf(-p) * ((k1.sin() * k2.sin()).sqrt() / s).powf(two - p),
        (two * k2.sin()).powf(-p) * ratio,
        (two * k1.sin()).powf(-p) * ratio,
    ]
}

/// d_n for N = 2 assembled from (c₁, c₂, c₃) and the three oscillation
/// frequencies k₂ − k₁, 2k₂, 2k₁.
pub fn n2_dn_regrouped<T: Scalar>(spec: &ModelSpec<T>, n: T, alpha: T, len: usize) -> Result<Complex<T>> {
    if spec.n_fermi() != 2 {
        return Err(Error::usage("regrouped d_n needs N = 2"));
    }
    check_alpha(n, alpha)?;
    let alpha = effective_alpha(spec, alpha);
    let (k1, k2) = (spec.momenta()[0], spec.momenta()[1]);
    let l = cu::<T>(len);
    let two = c::<T>(2.0);
    let mut total = Complex::new(T::zero(), T::zero());
    // the L^{−p₊} group carries c_j(−α) and conjugate phases
    for sign in [T::one(), -T::one()] {
        let p = two / n * (T::one() + sign * alpha / T::PI());
        let pref = l.powf(-p) * gamma_ratio_sq(p * c(0.25))?;
        let [c1, c2, c3] = n2_coeffs_at(spec, p);
        let group = unit(sign * (k2 - k1) * l) * c1 + unit(sign * two * k2 * l) * c2 + unit(-sign * two * k1 * l) * c3;
        total = total + group * pref;
    }
    Ok(total)
}

/// J(n, α) = n ∫ (tanh πw − tanh(nπw + iα/2)) (3w² − 1/4) dw
///         = (i/4n²)((n² − 1)(α/π) + (α/π)³).
pub fn descendant_j<T: Scalar>(n: T, alpha: T, method: Method) -> Result<Complex<T>> {
    if !(n > T::zero()) {
        return Err(Error::domain(format!("Rényi index must be positive, got {n}")));
    }
    if !(alpha.abs() <= T::PI()) {
        return Err(Error::domain(format!("|α| must not exceed π, got {alpha}")));
    }
    match method {
        Method::Closed => {
            let a = alpha / T::PI();
            Ok(Complex::new(T::zero(), ((n * n - T::one()) * a + a * a * a) / (c::<T>(4.0) * n * n)))
        }
        Method::Quadrature => {
            let pi = T::PI();
            let quarter = c::<T>(0.25);
            let three = c::<T>(3.0);
            let f = |w: T| tanh_diff(pi * w, Complex::new(n * pi * w, alpha * c(0.5))) * (three * w * w - quarter);
            let quad = QuadratureSpec { abs_tol: c::<T>(1e-13).max(T::epsilon()), rel_tol: c::<T>(1e-12).max(T::epsilon()), max_depth: 20 };
            Ok(integrate_line(f, &quad)? * n)
        }
    }
}

/// d̃_n(α, L) = −(1/8n²L)((n²−1)(α/π) + (α/π)³) Σ_r Σ_{s≠r} (−1)^{N−s}(z_r+z_s)/(z_r−z_s).
///
/// Each summand is purely imaginary on the unit circle, so the double sum is
/// checked to have a vanishing real part.
pub fn descendant_correction<T: Scalar>(spec: &ModelSpec<T>, n: T, alpha: T, len: usize) -> Result<Complex<T>> {
    check_alpha(n, alpha)?;
    if len == 0 {
        return Err(Error::domain("subsystem length must be at least 1"));
    }
    let alpha = effective_alpha(spec, alpha);
    let sc = subleading_scales(spec);
    let z = sc.positions();
    let nf = spec.n_fermi() as i64;
    let mut sum = Complex::new(T::zero(), T::zero());
    for (r, &zr) in z.iter().enumerate() {
        for (s, &zs) in z.iter().enumerate() {
            if r == s {
                continue;
            }
            let term = (zr + zs) / (zr - zs);
            // s is 0-based here; (−1)^{N−(s+1)}
            sum = if (nf - s as i64 - 1).rem_euclid(2) == 0 { sum + term } else { sum - term };
        }
    }
    if sum.re.abs() > c::<T>(1e-12).max(T::epsilon() * c(64.0)) * (T::one() + sum.norm()) {
        return Err(Error::Computation(format!("descendant z-sum has real part {}", sum.re)));
    }
    let a = alpha / T::PI();
    let nn = n * n;
    let coeff = -((nn - T::one()) * a + a * a * a) / (c::<T>(8.0) * nn * cu::<T>(len));
    Ok(Complex::new(T::zero(), sum.im) * coeff)
}
