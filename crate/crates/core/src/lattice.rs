//! Exact finite-`L` ground-state quantities from the correlation matrix.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::scalar::{c, cu, Scalar};

/// Pre-clamp violations of |ν| ≤ 1 above this abort the computation.
const CLAMP_ABORT: f64 = 1e-8;
/// Finite-difference step in `n` for the von Neumann limit.
const VN_STEP: f64 = 1e-4;

/// Dense real symmetric matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymmetricMatrix<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.dim + j]
    }

    pub fn trace(&self) -> T {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.dim.max(1))
    }
}

/// First row `t_d = C_{m, m+d}` of the (Toeplitz) correlation matrix.
pub fn correlation_symbol<T: Scalar>(spec: &ModelSpec<T>, len: usize) -> Vec<T> {
    let intervals = spec.filled_intervals();
    let mut t = Vec::with_capacity(len);
    for d in 0..len {
        let v = if d == 0 {
            intervals.iter().map(|&(a, b)| b - a).sum::<T>() / T::PI()
        } else {
            let df = cu::<T>(d);
            intervals.iter().map(|&(a, b)| (b * df).sin() - (a * df).sin()).sum::<T>() / (T::PI() * df)
        };
        t.push(v);
    }
    t
}

/// `C_{mn} = Σ_{(a,b) filled} [sin(b d) − sin(a d)] / (π d)`, `d = m − n`,
/// with `(b − a)/π` on the diagonal.
pub fn correlation_matrix<T: Scalar>(spec: &ModelSpec<T>, len: usize) -> SymmetricMatrix<T> {
    let t = correlation_symbol(spec, len);
    let mut data = Vec::with_capacity(len * len);
    for i in 0..len {
        for j in 0..len {
            data.push(t[i.abs_diff(j)]);
        }
    }
    SymmetricMatrix { dim: len, data }
}

/// Eigenvalues of the symmetric Toeplitz matrix with first row `t`.
///
/// A symmetric Toeplitz matrix commutes with the exchange matrix, so it splits
/// into blocks acting on mirror-symmetric and mirror-antisymmetric vectors of
/// half the size.
pub fn toeplitz_eigenvalues<T: Scalar>(t: &[T]) -> Result<Vec<T>> {
    let len = t.len();
    if len <= 2 {
        return T::symmetric_eigenvalues(len, &|i, j| t[i.abs_diff(j)]);
    }
    let m = len / 2;
    let mut ev = if len % 2 == 0 {
        // pairs (m−1−p, m+p)
        let mut e = T::symmetric_eigenvalues(m, &|p, q| t[p.abs_diff(q)] + t[p + q + 1])?;
        e.extend(T::symmetric_eigenvalues(m, &|p, q| t[p.abs_diff(q)] - t[p + q + 1])?);
        e
    } else {
        // centre m, pairs (m−p, m+p); the centre component is rescaled by √2
        let sqrt2 = c::<T>(2.0).sqrt();
        let mut e = T::symmetric_eigenvalues(m + 1, &|p, q| match (p, q) {
            (0, 0) => t[0],
            (0, q) => sqrt2 * t[q],
            (p, 0) => sqrt2 * t[p],
            (p, q) => t[p.abs_diff(q)] + t[p + q],
        })?;
        e.extend(T::symmetric_eigenvalues(m, &|p, q| t[p.abs_diff(q)] - t[p + q + 2])?);
        e
    };
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    Ok(ev)
}

/// The values ν_j = 2λ_j − 1 for the eigenvalues λ_j of the correlation matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSpectrum<T> {
    len: usize,
    nu: Vec<T>,
    max_clamp_violation: T,
}

impl<T: Scalar> CorrelationSpectrum<T> {
    /// Builds a spectrum from raw ν values: sorts, clamps into [−1, 1] and
    /// records the largest violation. Violations above 1e-8 (or 64 ulp, if
    /// larger) are an error.
    pub fn from_nu(mut nu: Vec<T>) -> Result<Self> {
        let mut worst = T::zero();
        for v in nu.iter_mut() {
            if !v.is_finite() {
                return Err(Error::Computation(format!("non-finite spectral value {v}")));
            }
            let excess = v.abs() - T::one();
            if excess > worst {
                worst = excess;
            }
            *v = v.max(-T::one()).min(T::one());
        }
        if worst > c::<T>(CLAMP_ABORT).max(T::epsilon() * c(64.0)) {
            return Err(Error::Computation(format!("spectral value outside [−1, 1] by {worst}")));
        }
        nu.sort_by(|a, b| a.partial_cmp(b).expect("finite after check"));
        Ok(Self { len: nu.len(), nu, max_clamp_violation: worst })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn nu(&self) -> &[T] {
        &self.nu
    }

    pub fn max_clamp_violation(&self) -> T {
        self.max_clamp_violation
    }

    /// Σ_j (1 + ν_j)/2, the trace of the correlation matrix.
    pub fn mean_charge(&self) -> T {
        self.nu.iter().map(|&v| (T::one() + v) * c(0.5)).sum()
    }

    /// Occupation probabilities `((1+ν)/2, (1−ν)/2)` per mode.
    fn occupations(&self) -> impl Iterator<Item = (T, T)> + '_ {
        let half = c::<T>(0.5);
        self.nu.iter().map(move |&v| ((T::one() + v) * half, (T::one() - v) * half))
    }
}

/// Spectrum of the correlation matrix of `len` consecutive sites.
pub fn correlation_spectrum<T: Scalar>(spec: &ModelSpec<T>, len: usize) -> Result<CorrelationSpectrum<T>> {
    if len == 0 {
        return Err(Error::domain("subsystem length must be at least 1"));
    }
    let t = correlation_symbol(spec, len);
    let lambda = toeplitz_eigenvalues(&t)?;
    let two = c::<T>(2.0);
    CorrelationSpectrum::from_nu(lambda.into_iter().map(|l| two * l - T::one()).collect())
}

/// Z_n(α) = Π_j [((1+ν_j)/2)^n e^{iα} + ((1−ν_j)/2)^n].
pub fn charged_moment_exact<T: Scalar>(s: &CorrelationSpectrum<T>, n: T, alpha: T) -> Complex<T> {
    if n == T::one() && alpha == T::zero() {
        return Complex::new(T::one(), T::zero());
    }
    let phase = Complex::new(alpha.cos(), alpha.sin());
    let mut z = Complex::new(T::one(), T::zero());
    for (p, q) in s.occupations() {
        z = z * (phase * p.powf(n) + q.powf(n));
    }
    z
}

/// Z_n(α, L) on a grid of α values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChargedMomentGrid<T> {
    pub n: T,
    pub len: usize,
    pub alphas: Vec<T>,
    pub values: Vec<Complex<T>>,
}

pub fn charged_moment_grid<T: Scalar>(s: &CorrelationSpectrum<T>, n: T, alphas: &[T]) -> ChargedMomentGrid<T> {
    ChargedMomentGrid {
        n,
        len: s.len(),
        alphas: alphas.to_vec(),
        values: alphas.iter().map(|&a| charged_moment_exact(s, n, a)).collect(),
    }
}

/// |∂_α Z_1(α)|_{α=0} − i Σ_j (1+ν_j)/2|, with the derivative taken by the
/// product rule.
pub fn charged_moment_derivative_check<T: Scalar>(s: &CorrelationSpectrum<T>) -> T {
    let occ: Vec<(T, T)> = s.occupations().collect();
    let m = occ.len();
    // prefix/suffix products of the factors p + q at α = 0
    let mut suffix = vec![T::one(); m + 1];
    for j in (0..m).rev() {
        suffix[j] = suffix[j + 1] * (occ[j].0 + occ[j].1);
    }
    let mut prefix = T::one();
    let mut deriv = T::zero();
    for (j, &(p, q)) in occ.iter().enumerate() {
        deriv = deriv + p * prefix * suffix[j + 1];
        prefix = prefix * (p + q);
    }
    (deriv - s.mean_charge()).abs()
}

/// Coefficients of Π_j (b_j + a_j x) with a_j = ((1+ν_j)/2)^n, b_j = ((1−ν_j)/2)^n.
fn moment_polynomial<T: Scalar>(s: &CorrelationSpectrum<T>, n: T) -> Vec<T> {
    let mut coeffs = Vec::with_capacity(s.len() + 1);
    coeffs.push(T::one());
    for (p, q) in s.occupations() {
        let (a, b) = if n == T::one() { (p, q) } else { (p.powf(n), q.powf(n)) };
        coeffs.push(T::zero());
        for k in (1..coeffs.len()).rev() {
            coeffs[k] = b * coeffs[k] + a * coeffs[k - 1];
        }
        coeffs[0] = b * coeffs[0];
    }
    coeffs
}

fn sector_threshold<T: Scalar>(len: usize) -> T {
    c::<T>(1e-300).max(T::min_positive_value()) * cu(len.max(1))
}

/// Per-charge-sector moments and entropies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolvedResult<T> {
    pub n: T,
    pub len: usize,
    /// 𝒵_n(q) for q = 0..=L.
    pub moments: Vec<T>,
    /// S_n(q) (von Neumann when n = 1); `None` for empty sectors.
    pub entropies: Vec<Option<T>>,
    /// ⟨Q_A⟩ = Σ_j (1+ν_j)/2.
    pub mean_charge: T,
}

impl<T: Scalar> ResolvedResult<T> {
    /// q − ⟨Q_A⟩ for q = 0..=L.
    pub fn offsets(&self) -> Vec<T> {
        (0..=self.len).map(|q| cu::<T>(q) - self.mean_charge).collect()
    }
}

/// Exact 𝒵_n(q) by sequential polynomial multiplication, plus S_n(q).
pub fn resolve_moments_exact<T: Scalar>(s: &CorrelationSpectrum<T>, n: T) -> Result<ResolvedResult<T>> {
    check_index(n)?;
    let weights = moment_polynomial(s, T::one());
    let thr = sector_threshold::<T>(s.len());
    let (moments, entropies) = if n == T::one() {
        let polys = vn_polynomials(s);
        let e = (0..=s.len())
            .map(|q| (weights[q] >= thr).then(|| vn_from_polys(&weights, &polys, q)))
            .collect();
        (weights, e)
    } else {
        let moments = moment_polynomial(s, n);
        let e = (0..=s.len())
            .map(|q| (weights[q] >= thr).then(|| renyi(moments[q], weights[q], n)))
            .collect();
        (moments, e)
    };
    Ok(ResolvedResult { n, len: s.len(), moments, entropies, mean_charge: s.mean_charge() })
}

fn renyi<T: Scalar>(zn: T, z1: T, n: T) -> T {
    (zn.ln() - n * z1.ln()) / (T::one() - n)
}

fn check_index<T: Scalar>(n: T) -> Result<()> {
    if !(n > T::zero()) || !n.is_finite() {
        return Err(Error::domain(format!("Rényi index must be positive, got {n}")));
    }
    Ok(())
}

fn sector<T: Scalar>(weights: &[T], q: i64, len: usize) -> Result<usize> {
    let thr = sector_threshold::<T>(len);
    if q < 0 || q as usize > len {
        return Err(Error::SectorEmpty { q, weight: 0.0 });
    }
    let w = weights[q as usize];
    if w < thr {
        return Err(Error::SectorEmpty { q, weight: w.to_f64().unwrap_or(0.0) });
    }
    Ok(q as usize)
}

/// S_n(q) = (log 𝒵_n(q) − n log 𝒵_1(q)) / (1 − n).
pub fn sr_entropy_exact<T: Scalar>(s: &CorrelationSpectrum<T>, n: T, q: i64) -> Result<T> {
    check_index(n)?;
    if n == T::one() {
        return Err(Error::usage("sr_entropy_exact needs n ≠ 1; use sr_vn_entropy_exact"));
    }
    let weights = moment_polynomial(s, T::one());
    let qi = sector(&weights, q, s.len())?;
    let moments = moment_polynomial(s, n);
    Ok(renyi(moments[qi], weights[qi], n))
}

/// S = Σ_j H((1+ν_j)/2) with the binary entropy H.
pub fn vn_entropy_exact<T: Scalar>(s: &CorrelationSpectrum<T>) -> T {
    let h = |p: T| if p > T::zero() { -p * p.ln() } else { T::zero() };
    s.occupations().map(|(p, q)| h(p) + h(q)).sum()
}

/// Moment polynomials at n = 1 ± h and 1 ± h/2.
fn vn_polynomials<T: Scalar>(s: &CorrelationSpectrum<T>) -> [Vec<T>; 4] {
    let h = c::<T>(VN_STEP);
    let half = h * c(0.5);
    [
        moment_polynomial(s, T::one() + h),
        moment_polynomial(s, T::one() - h),
        moment_polynomial(s, T::one() + half),
        moment_polynomial(s, T::one() - half),
    ]
}

/// S(q) = log 𝒵_1(q) − ∂_n log 𝒵_n(q) at n = 1, with the derivative from a
/// central difference and one Richardson step.
fn vn_from_polys<T: Scalar>(weights: &[T], polys: &[Vec<T>; 4], q: usize) -> T {
    let h = c::<T>(VN_STEP);
    let d_h = (polys[0][q].ln() - polys[1][q].ln()) / (c::<T>(2.0) * h);
    let d_half = (polys[2][q].ln() - polys[3][q].ln()) / h;
    let deriv = (c::<T>(4.0) * d_half - d_h) / c(3.0);
    weights[q].ln() - deriv
}

/// Symmetry-resolved von Neumann entropy S(q).
pub fn sr_vn_entropy_exact<T: Scalar>(s: &CorrelationSpectrum<T>, q: i64) -> Result<T> {
    let weights = moment_polynomial(s, T::one());
    let qi = sector(&weights, q, s.len())?;
    Ok(vn_from_polys(&weights, &vn_polynomials(s), qi))
}
