//! Ground-state specification from Fermi data, derived scales and the
//! standalone identities of the model class.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{c, cu, Scalar};

/// Number of grid points used to check positivity of the dispersion envelope.
const ENVELOPE_GRID: usize = 10_000;

/// A critical free-fermion ground state.
///
/// The ground state fills the modes where the symbol `f(e^{ik})` is positive.
/// It is fixed by the Fermi momenta `0 < k_1 < … < k_N < π` (where `f`
/// changes sign) and the sign of `f` at `k = π`. The optional envelope
/// `h(k) = Σ_m b_m cos(mk)` rescales the dispersion without changing the
/// ground state; only the velocity helpers read it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModelSpec<T>")]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct ModelSpec<T> {
    momenta: Vec<T>,
    sign_at_pi: i8,
    #[serde(skip_serializing_if = "Option::is_none")]
    envelope: Option<Vec<T>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModelSpec<T> {
    momenta: Vec<T>,
    sign_at_pi: i8,
    #[serde(default)]
    envelope: Option<Vec<T>>,
}

impl<T: Scalar> TryFrom<RawModelSpec<T>> for ModelSpec<T> {
    type Error = Error;

    fn try_from(raw: RawModelSpec<T>) -> Result<Self> {
        let spec = ModelSpec::new(raw.momenta, raw.sign_at_pi)?;
        match raw.envelope {
            Some(env) => spec.with_envelope(env),
            None => Ok(spec),
        }
    }
}

impl<T: Scalar> ModelSpec<T> {
    /// Validates and builds a spec. Momenta must be strictly ascending inside
    /// (0, π); `sign_at_pi` must be ±1.
    pub fn new(momenta: Vec<T>, sign_at_pi: i8) -> Result<Self> {
        if sign_at_pi != 1 && sign_at_pi != -1 {
            return Err(Error::domain(format!("sign_at_pi must be ±1, got {sign_at_pi}")));
        }
        for (i, &k) in momenta.iter().enumerate() {
            if !(k > T::zero() && k < T::PI()) {
                return Err(Error::domain(format!("momentum k_{} = {k} not in (0, π)", i + 1)));
            }
            if i > 0 && !(momenta[i - 1] < k) {
                return Err(Error::domain(format!(
                    "momenta must be strictly ascending (k_{} = {}, k_{} = {k})",
                    i,
                    momenta[i - 1],
                    i + 1
                )));
            }
        }
        Ok(Self { momenta, sign_at_pi, envelope: None })
    }

    /// Attaches a cosine envelope after checking `h(k) > 0` on a dense grid.
    pub fn with_envelope(mut self, coefficients: Vec<T>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::domain("envelope must have at least one coefficient"));
        }
        for i in 0..=ENVELOPE_GRID {
            let k = T::PI() * cu::<T>(i) / cu::<T>(ENVELOPE_GRID);
            let h = eval_envelope(&coefficients, k);
            if !(h > T::zero()) {
                return Err(Error::domain(format!("envelope h(k) = {h} is not positive at k = {k}")));
            }
        }
        self.envelope = Some(coefficients);
        Ok(self)
    }

    /// XX chain at half filling: `k_F = π/2`, sign −1.
    pub fn xx_half_filled() -> Self {
        Self::new(vec![T::FRAC_PI_2()], -1).expect("valid spec")
    }

    pub fn momenta(&self) -> &[T] {
        &self.momenta
    }

    pub fn sign_at_pi(&self) -> i8 {
        self.sign_at_pi
    }

    pub fn envelope(&self) -> Option<&[T]> {
        self.envelope.as_deref()
    }

    /// Number of Fermi momenta in (0, π), i.e. of low-energy complex fermions.
    pub fn n_fermi(&self) -> usize {
        self.momenta.len()
    }

    /// Envelope value `h(k)`; 1 when no envelope is set.
    pub fn envelope_at(&self, k: T) -> T {
        match &self.envelope {
            Some(b) => eval_envelope(b, k),
            None => T::one(),
        }
    }

    /// The same momenta with the opposite sign at π (particle-hole partner).
    pub fn flipped(&self) -> Self {
        Self { momenta: self.momenta.clone(), sign_at_pi: -self.sign_at_pi, envelope: self.envelope.clone() }
    }

    /// log σ, see [`ModelSpec::sigma_scale`].
    pub fn log_sigma(&self) -> T {
        let k = &self.momenta;
        let n = k.len();
        if n == 0 {
            return T::zero();
        }
        let two: T = c(2.0);
        let mut s = T::zero();
        for &kr in k {
            s = s + (two * kr.sin()).ln();
        }
        for r in 0..n {
            for q in (r + 1)..n {
                let sum = ((k[r] + k[q]) * c(0.5)).sin().abs().ln();
                let diff = ((k[r] - k[q]) * c(0.5)).sin().abs().ln();
                let term = two * (sum - diff);
                // (−1)^{r+s} with 1-based indices has the same parity as 0-based.
                s = if (r + q) % 2 == 0 { s + term } else { s - term };
            }
        }
        s / cu(n)
    }

    /// The length scale σ: the N-th root of
    /// `Π_r 2 sin k_r · Π_{r<s} (sin²((k_r+k_s)/2) / sin²((k_r−k_s)/2))^{(−1)^{r+s}}`.
    pub fn sigma_scale(&self) -> T {
        self.log_sigma().exp()
    }

    /// `Σ_r (−1)^{N−r} k_r`.
    fn alternating_sum(&self) -> T {
        let n = self.momenta.len();
        self.momenta
            .iter()
            .enumerate()
            .map(|(i, &k)| if (n - (i + 1)) % 2 == 0 { k } else { -k })
            .sum()
    }

    /// Mean particle number per site.
    pub fn density(&self) -> T {
        let a = self.alternating_sum() / T::PI();
        if self.sign_at_pi < 0 {
            a
        } else {
            T::one() - a
        }
    }

    /// Mean charge ⟨Q_A⟩ of a block of `len` sites.
    pub fn mean_charge(&self, len: usize) -> T {
        let l = cu::<T>(len);
        let a = self.alternating_sum();
        if self.sign_at_pi < 0 {
            l * a / T::PI()
        } else {
            l * (T::PI() - a) / T::PI()
        }
    }

    /// Maximal sub-intervals of (0, π) on which the modes are filled.
    pub fn filled_intervals(&self) -> Vec<(T, T)> {
        let n = self.momenta.len();
        let mut out = Vec::new();
        for j in 0..=n {
            let a = if j == 0 { T::zero() } else { self.momenta[j - 1] };
            let b = if j == n { T::PI() } else { self.momenta[j] };
            // sign on (k_j, k_{j+1}) is sign_at_pi · (−1)^{N−j}
            let positive = ((n - j) % 2 == 0) == (self.sign_at_pi > 0);
            if positive {
                out.push((a, b));
            }
        }
        out
    }

    /// Short deterministic label used in output tables.
    pub fn model_id(&self) -> String {
        let ks: Vec<String> = self
            .momenta
            .iter()
            .map(|k| format!("{:.6}", k.to_f64().unwrap_or(f64::NAN)))
            .collect();
        let s = if self.sign_at_pi < 0 { "-" } else { "+" };
        format!("N{}{}[{}]", self.momenta.len(), s, ks.join(" "))
    }
}

fn eval_envelope<T: Scalar>(b: &[T], k: T) -> T {
    b.iter().enumerate().map(|(m, &bm)| bm * (cu::<T>(m) * k).cos()).sum()
}

/// Rigorous error exponent μ(n, α) = min{1/2, (1/n)(1 − |α|/π)}.
pub fn error_exponent_mu<T: Scalar>(n: T, alpha: T) -> Result<T> {
    if !(n > T::zero()) {
        return Err(Error::domain(format!("Rényi index must be positive, got {n}")));
    }
    if !(alpha.abs() < T::PI()) {
        return Err(Error::domain(format!("|α| must be below π, got {alpha}")));
    }
    Ok(c::<T>(0.5).min((T::one() - alpha.abs() / T::PI()) / n))
}

/// Ground state of `N` decoupled chains with symbol `cos(Nk) − h`.
pub fn decoupled_spec<T: Scalar>(n_chains: usize, h: T) -> Result<ModelSpec<T>> {
    if n_chains == 0 {
        return Err(Error::domain("number of chains must be at least 1"));
    }
    if !(h.abs() < T::one()) {
        return Err(Error::domain(format!("decoupled chains are critical only for |h| < 1, got {h}")));
    }
    let theta = h.acos();
    let nf = cu::<T>(n_chains);
    let two_pi = T::TAU();
    let mut roots = Vec::with_capacity(n_chains);
    // Nk = ±θ + 2πm with 0 < k < π
    let mut m = 0usize;
    loop {
        let k = (theta + two_pi * cu(m)) / nf;
        if k >= T::PI() {
            break;
        }
        roots.push(k);
        m += 1;
    }
    let mut m = 1usize;
    loop {
        let k = (two_pi * cu(m) - theta) / nf;
        if k >= T::PI() {
            break;
        }
        roots.push(k);
        m += 1;
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    if roots.len() != n_chains {
        return Err(Error::Computation(format!(
            "expected {n_chains} roots of cos(Nk) = h, found {}",
            roots.len()
        )));
    }
    let at_pi = if n_chains % 2 == 0 { T::one() } else { -T::one() } - h;
    ModelSpec::new(roots, if at_pi > T::zero() { 1 } else { -1 })
}

/// |σ(decoupled_spec(N, h)) − 2 sin(arccos h)/N|.
pub fn decoupled_identity_residual<T: Scalar>(n_chains: usize, h: T) -> Result<T> {
    let spec = decoupled_spec(n_chains, h)?;
    let want = c::<T>(2.0) * h.acos().sin() / cu(n_chains);
    Ok((spec.sigma_scale() - want).abs())
}

/// |sin(z/N) Π_{s=1}^{N−1} sin(z/N + πs/N)/sin(πs/N) − sin(z)/N|.
pub fn sine_product_residual<T: Scalar>(n: usize, z: T) -> Result<T> {
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    let nf = cu::<T>(n);
    let x = z / nf;
    let mut p = x.sin();
    for s in 1..n {
        let shift = T::PI() * cu(s) / nf;
        let den = shift.sin();
        if den.abs() < T::epsilon() {
            return Err(Error::domain(format!("degenerate denominator sin(π·{s}/{n})")));
        }
        p = p * (x + shift).sin() / den;
    }
    Ok((p - z.sin() / nf).abs())
}

/// Fermi velocities of an N = 2 model with envelope `1 + b cos k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VelocityReport<T> {
    pub velocities: Vec<T>,
    pub b: T,
}

/// `v_j = (1 + b cos k_j) · (1/4) sin k_j (cos k_1 − cos k_2)`.
pub fn fermi_velocities_n2<T: Scalar>(k1: T, k2: T, b: T) -> Result<VelocityReport<T>> {
    check_pair(k1, k2)?;
    let base = c::<T>(0.25) * (k1.cos() - k2.cos());
    let mut velocities = Vec::with_capacity(2);
    for k in [k1, k2] {
        let env = T::one() + b * k.cos();
        if !(env > T::zero()) {
            return Err(Error::domain(format!("envelope 1 + b cos k = {env} is not positive at k = {k}")));
        }
        velocities.push(env * base * k.sin());
    }
    Ok(VelocityReport { velocities, b })
}

/// Envelope coefficient `b` that equalises the two Fermi velocities:
/// `b = (sin k_2 − sin k_1) / (cos k_1 sin k_1 − cos k_2 sin k_2)`.
pub fn velocity_tuning_b<T: Scalar>(k1: T, k2: T) -> Result<T> {
    check_pair(k1, k2)?;
    let den = k1.cos() * k1.sin() - k2.cos() * k2.sin();
    if den.abs() < c(1e-14) {
        return Err(Error::domain(format!("vanishing denominator at k1 = {k1}, k2 = {k2}")));
    }
    Ok((k2.sin() - k1.sin()) / den)
}

fn check_pair<T: Scalar>(k1: T, k2: T) -> Result<()> {
    if !(T::zero() < k1 && k1 < k2 && k2 < T::PI()) {
        return Err(Error::domain(format!("require 0 < k1 < k2 < π, got ({k1}, {k2})")));
    }
    Ok(())
}
