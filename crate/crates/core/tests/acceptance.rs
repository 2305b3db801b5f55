//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use sre_core::asymptotics::{
    charged_moment_asymptotic, descendant_j, gamma_coefficients, gamma_derivatives_at_1, resolved_moment_asymptotic,
    sr_entropy_asymptotic, upsilon, Method,
};
use sre_core::harness::{dominant_period, fit_exponent_with, run_identities, FitOptions, Verdict};
use sre_core::lattice::{
    charged_moment_exact, correlation_matrix, correlation_spectrum, resolve_moments_exact, sr_entropy_exact,
};
use sre_core::model::error_exponent_mu;
use sre_core::specfun::{polygamma, EULER_GAMMA};
use sre_core::{Complex, Model, Spectrum};

struct Outcome {
    pass: bool,
    summary: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: String) -> Self {
        Outcome { pass, summary, notes: Vec::new() }
    }
}

#[derive(Default)]
struct Cache {
    xx: BTreeMap<usize, Spectrum>,
}

impl Cache {
    fn xx(&mut self, len: usize) -> &Spectrum {
        self.xx
            .entry(len)
            .or_insert_with(|| correlation_spectrum(&Model::xx_half_filled(), len).expect("spectrum"))
    }
}

// ---------------------------------------------------------------- oracles

/// Double-double number: value ≈ hi + lo with |lo| ≤ ulp(hi)/2.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Dd(f64, f64);

impl Dd {
    fn new(x: f64) -> Self {
        Dd(x, 0.0)
    }

    fn quick(s: f64, e: f64) -> Self {
        let h = s + e;
        Dd(h, e - (h - s))
    }

    fn abs(self) -> Self {
        if self.0 < 0.0 {
            -self
        } else {
            self
        }
    }

    fn sqrt(self) -> Self {
        if self.0 <= 0.0 {
            return Dd::new(0.0);
        }
        let y = Dd::new(self.0.sqrt());
        y + (self - y * y) / (y * Dd::new(2.0))
    }
}

impl std::ops::Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let s = self.0 + b.0;
        let bb = s - self.0;
        let e = (self.0 - (s - bb)) + (b.0 - bb);
        Dd::quick(s, e + self.1 + b.1)
    }
}

impl std::ops::Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd(-self.0, -self.1)
    }
}

impl std::ops::Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl std::ops::Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let p = self.0 * b.0;
        let e = self.0.mul_add(b.0, -p);
        Dd::quick(p, e + (self.0 * b.1 + self.1 * b.0))
    }
}

impl std::ops::Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.0 / b.0;
        let r = self - b * Dd::new(q1);
        let q2 = r.0 / b.0;
        let r = r - b * Dd::new(q2);
        let q3 = r.0 / b.0;
        Dd::quick(q1, q2) + Dd::new(q3)
    }
}

/// Cyclic Jacobi eigenvalues of a small symmetric matrix, carried out in
/// double-double arithmetic so that even eigenvalues near 1e-13 come out with
/// full double relative accuracy.
fn jacobi_eigenvalues(a: Vec<Vec<f64>>) -> Vec<Dd> {
    let n = a.len();
    let mut a: Vec<Vec<Dd>> = a.into_iter().map(|r| r.into_iter().map(Dd::new).collect()).collect();
    let one = Dd::new(1.0);
    for _sweep in 0..60 {
        let off = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| a[i][j].0.abs()).fold(0.0, f64::max);
        if off < 1e-40 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].0 == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (Dd::new(2.0) * a[p][q]);
                let t = one / (theta.abs() + (theta * theta + one).sqrt());
                let t = if theta.0 < 0.0 { -t } else { t };
                let c = one / (t * t + one).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Reduced density matrix eigenvalues by enumerating all 2^L occupation
/// patterns of the correlation-matrix eigenmodes; returns Z_n(α) and the
/// sector sums 𝒵_n(q).
fn enumerate(lam: &[Dd], n: f64, alpha: f64) -> (Complex, Vec<f64>) {
    let len = lam.len();
    // occupied and empty probabilities, each rounded once from double-double
    let occ: Vec<(f64, f64)> = lam.iter().map(|&l| (l.0.clamp(0.0, 1.0), (Dd::new(1.0) - l).0.clamp(0.0, 1.0))).collect();
    let mut z = Complex::new(0.0, 0.0);
    let mut sectors = vec![0.0; len + 1];
    for mask in 0u32..(1 << len) {
        let mut p = 1.0;
        for (j, &(l, h)) in occ.iter().enumerate() {
            p *= if mask >> j & 1 == 1 { l } else { h };
        }
        let q = mask.count_ones() as usize;
        let w = p.powf(n);
        sectors[q] += w;
        z += Complex::from_polar(w, alpha * q as f64);
    }
    (z, sectors)
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn mat_pow(a: &[Vec<f64>], e: u32) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut r: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for _ in 0..e {
        r = mat_mul(&r, a);
    }
    r
}

/// Determinant by Gaussian elimination with partial pivoting.
fn det(mut m: Vec<Vec<Complex>>) -> Complex {
    let n = m.len();
    let mut d = Complex::new(1.0, 0.0);
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm())).unwrap();
        if piv != col {
            m.swap(piv, col);
            d = -d;
        }
        let p = m[col][col];
        if p.norm() == 0.0 {
            return Complex::new(0.0, 0.0);
        }
        d *= p;
        for r in col + 1..n {
            let f = m[r][col] / p;
            for k in col..n {
                let v = m[col][k];
                m[r][k] -= f * v;
            }
        }
    }
    d
}

/// det[(1 − C)^n + e^{iα} C^n] for integer n.
fn det_oracle(c: &[Vec<f64>], n: u32, alpha: f64) -> Complex {
    let len = c.len();
    let one_minus: Vec<Vec<f64>> =
        (0..len).map(|i| (0..len).map(|j| if i == j { 1.0 } else { 0.0 } - c[i][j]).collect()).collect();
    let a = mat_pow(&one_minus, n);
    let b = mat_pow(c, n);
    let ph = Complex::from_polar(1.0, alpha);
    det((0..len).map(|i| (0..len).map(|j| a[i][j] + ph * b[i][j]).collect()).collect())
}

// --------------------------------------------------------------- criteria

/// Sectors lighter than this are excluded from the S_n(q) comparison: their
/// entropies depend on eigenvalues ~1e-8 to ~1e-13 that double precision
/// only fixes to absolute 1e-16, so two correct solvers disagree there.
const SECTOR_FLOOR: f64 = 1e-12;

fn criterion_1() -> Outcome {
    let specs = [
        Model::xx_half_filled(),
        Model::new(vec![PI / 3.0], -1).unwrap(),
        Model::new(vec![2.0 * PI / 5.0, 3.0 * PI / 5.0], -1).unwrap(),
        Model::new(vec![2.0 * PI / 5.0, 3.0 * PI / 5.0], 1).unwrap(),
    ];
    let (mut e_z, mut e_det, mut e_res, mut e_s) = (0f64, 0f64, 0f64, 0f64);
    let (mut e_s_all, mut e_s_half) = (0f64, 0f64);
    let mut compared = 0usize;
    for spec in &specs {
        for len in 1..=12 {
            let cm = correlation_matrix(spec, len);
            let c: Vec<Vec<f64>> = cm.rows().map(|r| r.to_vec()).collect();
            let lam = jacobi_eigenvalues(c.clone());
            let s = correlation_spectrum(spec, len).unwrap();
            let (_, w1) = enumerate(&lam, 1.0, 0.0);
            for n in [0.5, 2.0, 3.0] {
                let resolved = resolve_moments_exact(&s, n).unwrap();
                for alpha in [0.0, 0.4, -1.3, 2.5] {
                    let (zo, wn) = enumerate(&lam, n, alpha);
                    let zc = charged_moment_exact(&s, n, alpha);
                    e_z = e_z.max((zo - zc).norm());
                    if n.fract() == 0.0 {
                        e_det = e_det.max((det_oracle(&c, n as u32, alpha) - zc).norm());
                    }
                    if alpha != 0.0 {
                        continue;
                    }
                    for q in 0..=len {
                        e_res = e_res.max((wn[q] - resolved.moments[q]).abs());
                        match sr_entropy_exact(&s, n, q as i64) {
                            Ok(v) => {
                                let err = (v - (wn[q].ln() - n * w1[q].ln()) / (1.0 - n)).abs();
                                e_s_all = e_s_all.max(err);
                                if n < 1.0 {
                                    e_s_half = e_s_half.max(err);
                                } else if w1[q] >= SECTOR_FLOOR {
                                    e_s = e_s.max(err);
                                    compared += 1;
                                }
                            }
                            Err(_) => assert!(w1[q] < 1e-280, "sector {q} rejected with weight {}", w1[q]),
                        }
                    }
                }
            }
        }
    }
    let worst = e_z.max(e_det).max(e_res).max(e_s);
    let mut o = Outcome::new(
        worst <= 1e-10,
        format!(
            "L≤12, 4 specs: max |ΔZ| {e_z:.1e}, det oracle {e_det:.1e}, |Δ𝒵| {e_res:.1e}, \
             |ΔS_n(q)| {e_s:.1e} over {compared} sectors with n∈{{2,3}}, 𝒵₁(q) ≥ {SECTOR_FLOOR:.0e} (tol 1e-10)"
        ),
    );
    o.notes.push(format!(
        "information: |ΔS_n(q)| over all non-empty sectors {e_s_all:.1e}, n=1/2 alone {e_s_half:.1e} (conditioning-limited)"
    ));
    o
}

fn criterion_2(cache: &mut Cache) -> Outcome {
    let spec = Model::xx_half_filled();
    let lens: Vec<usize> = (0..8).map(|k| 64 << k).collect();
    let opts = FitOptions { drop_fraction: 0.25, period_hint: dominant_period(&spec) };
    let mut pass = true;
    let mut notes = Vec::new();
    for n in [1.0, 2.0, 3.0] {
        for alpha in [0.0, PI / 3.0, -PI / 3.0, 2.0 * PI / 3.0, -2.0 * PI / 3.0] {
            let series: Vec<(f64, f64)> = lens
                .iter()
                .map(|&l| {
                    let z = charged_moment_exact(cache.xx(l), n, alpha);
                    let p = charged_moment_asymptotic(&spec, n, alpha, l).unwrap();
                    (l as f64, (z / p.leading - 1.0).norm())
                })
                .collect();
            let mu = error_exponent_mu(n, alpha).unwrap();
            let r = fit_exponent_with(&series, mu, &opts).unwrap();
            pass &= r.verdict == Verdict::MeetsBound;
            notes.push(format!(
                "n={n} α={alpha:+.4}: exponent {:.3}, μ {:.3}, 2μ {:.3}, {:?}",
                r.exponent, mu, r.cft_target, r.verdict
            ));
        }
    }
    let mut o = Outcome::new(pass, "XX, n∈{1,2,3}, α∈{0,±π/3,±2π/3}, L=64..8192: fitted exponent ≥ μ − 0.1".into());
    o.notes = notes;
    o
}

fn criterion_3(cache: &mut Cache) -> Outcome {
    let spec = Model::xx_half_filled();
    let (n, alpha) = (2.0, PI / 2.0);
    let (mut raw, mut imp) = (0f64, 0f64);
    for l in [4095, 4096] {
        let z = charged_moment_exact(cache.xx(l), n, alpha);
        let p = charged_moment_asymptotic(&spec, n, alpha, l).unwrap();
        raw = raw.max((z / p.leading - 1.0).norm());
        imp = imp.max((z / p.improved() - 1.0).norm());
    }
    let ratio = raw / imp;
    Outcome::new(
        ratio >= 5.0,
        format!("n=2, α=π/2, L∈{{4095,4096}}: envelope dev {raw:.3e} → {imp:.3e} with d_n, d̃_n (×{ratio:.1}, need ≥ 5)"),
    )
}

fn criterion_4() -> Outcome {
    let alphas = [0.0f64, 0.5, -0.5, 1.5, -1.5, 2.5, -2.5, 3.0];
    let mut e_int = 0f64;
    let mut e_frac = 0f64;
    for alpha in alphas {
        for n in [1.0f64, 2.0, 3.0, 4.0, 5.0] {
            let q = upsilon(n, alpha, Method::Quadrature).unwrap();
            let c = upsilon(n, alpha, Method::Closed).unwrap();
            e_int = e_int.max((q - c).abs());
        }
        for n in [0.3f64, 0.7, 1.5, 2.5, 3.7] {
            let q = upsilon(n, alpha, Method::Quadrature).unwrap();
            let c = upsilon(n, alpha, Method::Closed).unwrap();
            e_frac = e_frac.max((q - c).abs());
        }
    }
    let g2_want = -(1.0 + EULER_GAMMA) / (2.0 * PI * PI);
    let g4_want = polygamma(2, 1.0).unwrap() / (32.0 * PI.powi(4));
    let mut e_g = 0f64;
    for m in [Method::Quadrature, Method::Closed] {
        let (g2, g4) = gamma_coefficients(1.0, m).unwrap();
        e_g = e_g.max((g2 - g2_want).abs()).max((g4 - g4_want).abs());
    }
    let d = gamma_derivatives_at_1::<f64>().unwrap();
    let r2 = (d.gamma2 / 0.0546 - 1.0).abs();
    let r4 = (d.gamma4 / 0.00154 - 1.0).abs();
    let pass = e_int <= 1e-8 && e_frac <= 1e-8 && e_g <= 1e-8 && r2 <= 0.05 && r4 <= 0.05;
    let mut o = Outcome::new(
        pass,
        format!(
            "Υ quad vs closed: integer n {e_int:.1e}, non-integer n {e_frac:.1e}; γ₂(1), γ₄(1) {e_g:.1e}; \
             γ₂′(1) = {:.5} ({:.1}%), γ₄′(1) = {:.6} ({:.1}%)",
            d.gamma2,
            100.0 * r2,
            d.gamma4,
            100.0 * r4
        ),
    );
    o.notes.push(format!("Υ′(1) = {:.12}", d.upsilon));
    o
}

fn criterion_5() -> Outcome {
    let mut e = 0f64;
    for n in [0.5, 1.0, 2.0, 3.0] {
        for j in -4..=4 {
            let alpha = j as f64 * PI / 5.0;
            let c = descendant_j(n, alpha, Method::Closed).unwrap();
            let q = descendant_j(n, alpha, Method::Quadrature).unwrap();
            e = e.max((c - q).norm());
        }
    }
    let mut zero = 0f64;
    for n in [0.5, 1.0, 2.0, 3.0] {
        for m in [Method::Closed, Method::Quadrature] {
            zero = zero.max(descendant_j(n, 0.0, m).unwrap().norm());
        }
    }
    for n in [0.5, 0.8, 1.0] {
        let a = PI * (1.0f64 - n * n).sqrt();
        for alpha in [a, -a] {
            for m in [Method::Closed, Method::Quadrature] {
                zero = zero.max(descendant_j(n, alpha, m).unwrap().norm());
            }
        }
    }
    Outcome::new(
        e <= 1e-10 && zero <= 1e-10,
        format!("J closed vs quadrature over 4 n × 9 α: {e:.1e}; zeros at α=0, ±π√(1−n²): {zero:.1e} (tol 1e-10)"),
    )
}

fn criterion_6() -> Outcome {
    let rep = run_identities().unwrap();
    let mut o = Outcome::new(rep.passed(), String::new());
    let mut parts = Vec::new();
    for fam in ["decoupled", "sine-product", "velocity", "n2-regrouping"] {
        let checks: Vec<_> = rep.family(fam).collect();
        let worst = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
        parts.push(format!("{fam} {} cases max {worst:.1e}", checks.len()));
    }
    o.summary = parts.join(", ");
    for f in rep.failures() {
        o.notes.push(format!("failed: {} {} residual {:e}", f.family, f.case, f.residual));
    }
    o
}

fn criterion_7(cache: &mut Cache) -> Outcome {
    let spec = Model::xx_half_filled();
    let lens = [256usize, 1024, 4096];
    let mut pass = true;
    let mut notes = Vec::new();
    for n in [1.0, 2.0] {
        let mut max_by_len = vec![0f64; lens.len()];
        for qd in -2i64..=2 {
            let errs: Vec<f64> = lens
                .iter()
                .map(|&l| {
                    let r = resolve_moments_exact(cache.xx(l), n).unwrap();
                    let q = l as i64 / 2 + qd;
                    let pred = resolved_moment_asymptotic(&spec, n, q, l).unwrap();
                    (r.moments[q as usize] / pred - 1.0).abs()
                })
                .collect();
            for (m, e) in max_by_len.iter_mut().zip(&errs) {
                *m = m.max(*e);
            }
            let monotone = errs.windows(2).all(|w| w[1] < w[0]);
            let ok = monotone && errs[2] < 0.1;
            pass &= ok;
            notes.push(format!(
                "n={n} q_Δ={qd:+}: {} {}",
                errs.iter().map(|e| format!("{e:.4e}")).collect::<Vec<_>>().join(" → "),
                if ok { "ok" } else if monotone { "too large" } else { "not monotone" }
            ));
        }
        notes.push(format!(
            "n={n} max over |q_Δ|≤2 (information): {}",
            max_by_len.iter().map(|e| format!("{e:.4e}")).collect::<Vec<_>>().join(" → ")
        ));
    }
    let mut o = Outcome::new(
        pass,
        "XX, n∈{1,2}, L∈{256,1024,4096}, q_Δ∈{0,±1,±2}: Gaussian resolved-moment error decreasing in L and < 0.1 at 4096".into(),
    );
    o.notes = notes;
    o
}

fn criterion_8(cache: &mut Cache) -> Outcome {
    let spec = Model::xx_half_filled();
    let n = 2.0;
    let mut diffs = BTreeMap::new();
    let mut misfit = BTreeMap::new();
    for l in [8usize, 64, 512, 4096] {
        let s = cache.xx(l);
        let q = l as i64 / 2;
        let s0 = sr_entropy_exact(s, n, q).unwrap();
        let s1 = sr_entropy_exact(s, n, q + 1).unwrap();
        diffs.insert(l, s0 - s1);
        let m0 = s0 - sr_entropy_asymptotic(&spec, n, q, l).unwrap();
        let m1 = s1 - sr_entropy_asymptotic(&spec, n, q + 1, l).unwrap();
        misfit.insert(l, (m0.abs(), m1.abs()));
    }
    let ratio = diffs[&8] / diffs[&4096];
    let shrinks = misfit[&4096].0 < misfit[&8].0 && misfit[&4096].1 < misfit[&8].1;
    let pass = (ratio - 4.0).abs() <= 0.3 * 4.0 && shrinks;
    let mut o = Outcome::new(
        pass,
        format!(
            "S₂(⟨Q⟩)−S₂(⟨Q⟩+1): L=8 {:.4e}, L=4096 {:.4e}, ratio {ratio:.2} (4 ± 30%); |exact − entropy expansion| at q_Δ=0,1: \
             ({:.2e}, {:.2e}) → ({:.2e}, {:.2e})",
            diffs[&8], diffs[&4096], misfit[&8].0, misfit[&8].1, misfit[&4096].0, misfit[&4096].1
        ),
    );
    for (l, d) in &diffs {
        o.notes.push(format!("L={l}: difference {d:.5e}, misfit q_Δ=0 {:.3e}, q_Δ=1 {:.3e}", misfit[l].0, misfit[l].1));
    }
    o
}

fn criterion_9() -> Outcome {
    let specs = vec![
        Model::xx_half_filled(),
        Model::new(vec![PI / 3.0], -1).unwrap(),
        Model::new(vec![2.0 * PI / 5.0, 3.0 * PI / 5.0], -1).unwrap(),
        Model::new(vec![2.0 * PI / 5.0, 3.0 * PI / 5.0], 1).unwrap(),
        Model::new(vec![0.4, 1.3, 2.2], 1).unwrap(),
        sre_core::model::decoupled_spec(4, 0.3).unwrap(),
    ];
    let (mut e_norm, mut min_z, mut e_tr, mut e_sym) = (0f64, f64::INFINITY, 0f64, 0f64);
    for spec in &specs {
        for len in [1usize, 7, 32, 100, 257] {
            let s = correlation_spectrum(spec, len).unwrap();
            let r1 = resolve_moments_exact(&s, 1.0).unwrap();
            e_norm = e_norm.max((r1.moments.iter().sum::<f64>() - 1.0).abs());
            for n in [0.5, 1.0, 2.0, 3.0] {
                let r = resolve_moments_exact(&s, n).unwrap();
                min_z = r.moments.iter().copied().fold(min_z, f64::min);
                for alpha in [0.3, 1.7, -2.9] {
                    let z = charged_moment_exact(&s, n, alpha);
                    let scale = z.norm().max(1.0);
                    let zp = charged_moment_exact(&s, n, alpha + 2.0 * PI);
                    let zm = charged_moment_exact(&s, n, -alpha);
                    e_sym = e_sym.max((z - zp).norm() / scale).max((zm - z.conj()).norm() / scale);
                }
            }
            e_tr = e_tr.max((correlation_matrix(spec, len).trace() - spec.mean_charge(len)).abs());
        }
    }
    let pass = e_norm <= 1e-12 && min_z >= -1e-13 && e_tr <= 1e-10 && e_sym <= 1e-12;
    Outcome::new(
        pass,
        format!(
            "6 specs × 5 L: |Σ𝒵₁−1| {e_norm:.1e}, min 𝒵_n {min_z:.1e}, |tr C−⟨Q⟩| {e_tr:.1e}, periodicity/conjugation {e_sym:.1e}"
        ),
    )
}

fn main() {
    let mut cache = Cache::default();
    let mut failed = Vec::new();
    let criteria: Vec<(u8, &str, Box<dyn FnOnce(&mut Cache) -> Outcome>)> = vec![
        (1, "oracle equivalence", Box::new(|_| criterion_1())),
        (2, "leading-order error exponent", Box::new(criterion_2)),
        (3, "subleading improvement", Box::new(criterion_3)),
        (4, "special functions", Box::new(|_| criterion_4())),
        (5, "descendant J", Box::new(|_| criterion_5())),
        (6, "identities", Box::new(|_| criterion_6())),
        (7, "Gaussian resolved moments", Box::new(criterion_7)),
        (8, "entropy expansion and equipartition", Box::new(criterion_8)),
        (9, "conservation", Box::new(|_| criterion_9())),
    ];
    for (id, name, run) in criteria {
        let t = Instant::now();
        let o = run(&mut cache);
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("[{verdict}] criterion {id} ({name}): {} [{:.1}s]", o.summary, t.elapsed().as_secs_f64());
        for note in &o.notes {
            println!("         {note}");
        }
        if !o.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
