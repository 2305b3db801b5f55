//! Large-`L` predictions: charged moments, resolved moments and entropies,
//! the constant Υ(n, α) and the subleading corrections.

mod leading;
mod subleading;
mod upsilon;

pub use leading::{
    a_coeff, charged_moment_asymptotic, resolved_moment_asymptotic, sr_entropy_asymptotic,
    sr_vn_entropy_asymptotic, twisted_overlap_modulus, vn_entropy_asymptotic, AsymptoticPrediction,
    OverlapModulus,
};
pub use subleading::{
    descendant_correction, descendant_j, n2_coefficients, n2_dn_regrouped, subleading_dn, subleading_scales,
    SubleadingScales,
};
pub use upsilon::{
    gamma_coefficients, gamma_derivatives_at_1, upsilon, upsilon_with, GammaDerivatives, Method,
    UpsilonExpansion,
};

use num_complex::Complex;

use crate::scalar::{c, Scalar};

/// e^{−2z}/(1 + e^{−2z}) for Re z ≥ 0, so that tanh z = 1 − 2g(z).
fn g_tail<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let e = (-z * c::<T>(2.0)).exp();
    e / (e + T::one())
}

/// tanh z without overflow.
fn tanh_stable<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    if z.re >= T::zero() {
        one - g_tail(z) * c::<T>(2.0)
    } else {
        -(one - g_tail(-z) * c::<T>(2.0))
    }
}

/// tanh(a) − tanh(b), avoiding the cancellation 1 − 1 when `a` and `Re b`
/// are large with the same sign.
pub(crate) fn tanh_diff<T: Scalar>(a: T, b: Complex<T>) -> Complex<T> {
    let za = Complex::new(a, T::zero());
    let two = c::<T>(2.0);
    if a >= T::zero() && b.re >= T::zero() {
        (g_tail(b) - g_tail(za)) * two
    } else if a <= T::zero() && b.re <= T::zero() {
        -(g_tail(-b) - g_tail(-za)) * two
    } else {
        tanh_stable(za) - tanh_stable(b)
    }
}
