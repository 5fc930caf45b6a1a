//! Gegenbauer and hyperspherical identities, each evaluated as a pair of
//! independently computed sides.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, index, Error, Result};
use crate::quadrature::{gauss_laguerre, gauss_legendre};
use crate::specfun::{
    gegenbauer, gegenbauer_ext, ln_factorial, ln_gamma, reduced_bessel_j, spherical_bessel, spherical_harmonic,
    spherical_harmonic_vec, wigner_3j, wigner_D, wigner_d_matrix, HalfInt,
};
use crate::I;

/// One evaluated identity: both sides at a parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCase {
    pub id: String,
    pub params: BTreeMap<String, f64>,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// `|lhs − rhs| / max(1, |lhs|)`.
    pub residual: f64,
}

impl IdentityCase {
    pub fn new(id: impl Into<String>, params: &[(&str, f64)], lhs: Complex64, rhs: Complex64) -> Self {
        Self {
            id: id.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            lhs,
            rhs,
            residual: (lhs - rhs).norm() / lhs.norm().max(1.0),
        }
    }

    pub fn real(id: impl Into<String>, params: &[(&str, f64)], lhs: f64, rhs: f64) -> Self {
        Self::new(id, params, Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0))
    }
}

const MAX_TERMS: usize = 100_000;

/// `(1 − 2xt + t²)^{−a}` against `Σ tᵐ C_m^{(a)}(x)`, summed until the tail is
/// below `1e−12` relative.
pub fn genfunc_gegenbauer(a: f64, t: f64, x: f64) -> Result<IdentityCase> {
    if !(t.abs() < 1.0) {
        return Err(domain(format!("|t| = {} must be < 1", t.abs())));
    }
    if !(a > -0.5) || !x.is_finite() {
        return Err(domain(format!("need a > -1/2 and finite x, got a = {a}, x = {x}")));
    }
    let closed = (1.0 - 2.0 * x * t + t * t).powf(-a);
    // C_m by the three-term recurrence, accumulated on the fly
    let (mut c0, mut c1) = (1.0, 2.0 * a * x);
    let mut sum = 1.0 + t * c1;
    let mut tp = t;
    let mut quiet = 0;
    for m in 1..MAX_TERMS {
        let mf = m as f64;
        let c2 = (2.0 * x * (mf + a) * c1 - (mf + 2.0 * a - 1.0) * c0) / (mf + 1.0);
        tp *= t;
        let term = tp * c2;
        sum += term;
        (c0, c1) = (c1, c2);
        quiet = if term.abs() <= 1e-17 * sum.abs().max(1e-300) { quiet + 1 } else { 0 };
        if quiet >= 8 || tp == 0.0 {
            return Ok(IdentityCase::real("gegenbauer_genfunc", &[("a", a), ("t", t), ("x", x), ("terms", mf + 2.0)], closed, sum));
        }
    }
    Err(Error::Convergence { what: "Gegenbauer generating series".into(), residual: (closed - sum).abs() })
}

/// `e^{z cosχ} (z sinχ/2)^{1/2−a} J_{a−1/2}(z sinχ)` against
/// `Σ Γ(2a)/(Γ(a+½)Γ(2a+n)) C_n^{(a)}(cosχ) zⁿ`.
pub fn bessel_genfunc(a: f64, z: f64, chi: f64) -> Result<IdentityCase> {
    if !(a > 0.0) || !(z >= 0.0) || !(0.0..=PI).contains(&chi) {
        return Err(domain(format!("need a > 0, z >= 0, chi in [0, pi]; got a = {a}, z = {z}, chi = {chi}")));
    }
    let (s, c) = chi.sin_cos();
    let lhs = (z * c).exp() * reduced_bessel_j(a - 0.5, z * s);
    // coefficient Γ(2a)/(Γ(a+½)Γ(2a+n)) updated by the factor 1/(2a+n)
    let mut coef = (-ln_gamma(a + 0.5)).exp();
    let (mut c0, mut c1) = (1.0, 2.0 * a * c);
    let mut zp = 1.0;
    let mut rhs = coef;
    let mut quiet = 0;
    for n in 1..MAX_TERMS {
        let nf = n as f64;
        coef /= 2.0 * a + nf - 1.0;
        zp *= z;
        let cn = if n == 1 {
            c1
        } else {
            let c2 = (2.0 * c * (nf - 1.0 + a) * c1 - (nf + 2.0 * a - 2.0) * c0) / nf;
            (c0, c1) = (c1, c2);
            c2
        };
        let term = coef * cn * zp;
        rhs += term;
        quiet = if term.abs() <= 1e-17 * rhs.abs().max(1e-300) { quiet + 1 } else { 0 };
        if quiet >= 8 || z == 0.0 {
            return Ok(IdentityCase::real("bessel_genfunc", &[("a", a), ("z", z), ("chi", chi)], lhs, rhs));
        }
    }
    Err(Error::Convergence { what: "Bessel-Gegenbauer series".into(), residual: (lhs - rhs).abs() })
}

/// `(n+a) C_{n+1}^{(a−1)}(x)` against `(a−1)[C_{n+1}^{(a)}(x) − C_{n−1}^{(a)}(x)]`.
pub fn gegenbauer_recurrence(a: f64, n: u32, x: f64) -> Result<IdentityCase> {
    if !(a > 0.5) {
        return Err(domain(format!("a = {a} must exceed 1/2")));
    }
    let k = n as i64;
    let lhs = (n as f64 + a) * gegenbauer_ext(k + 1, a - 1.0, x)?;
    let rhs = (a - 1.0) * (gegenbauer_ext(k + 1, a, x)? - gegenbauer_ext(k - 1, a, x)?);
    Ok(IdentityCase::real("gegenbauer_recurrence", &[("a", a), ("n", n as f64), ("x", x)], lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralRep {
    /// `(1 − 2α cosχ + α²)^{−(l+1)}`
    pub lhs: f64,
    /// `∫₀^∞ e^{−t} t^{l+1} e^{αt cosχ} j_l(αt sinχ) dt`
    pub rhs_integral: f64,
    /// `rhs_integral / lhs`, which should be `2^l l! (α sinχ)^l`.
    pub calibration: f64,
    /// `calibration / (α sinχ)^l`, the χ-independent constant `2^l l!`.
    pub normalized: f64,
}

/// Laplace-type integral representation of `(1 − 2α cosχ + α²)^{−(l+1)}`,
/// integrated by Gauss–Laguerre after `τ = (1 − α cosχ) t`.
pub fn integral_rep(l: u32, alpha: f64, chi: f64, quad_nodes: usize) -> Result<IntegralRep> {
    if !(alpha > 0.0 && alpha < 1.0) || !(chi > 0.0 && chi < PI) {
        return Err(domain(format!("need 0 < alpha < 1 and 0 < chi < pi; got {alpha}, {chi}")));
    }
    let s = 1.0 - alpha * chi.cos();
    if s <= 0.0 {
        return Err(Error::Convergence { what: "integral representation: 1 - alpha cos(chi) <= 0".into(), residual: f64::INFINITY });
    }
    let b = alpha * chi.sin();
    let rule = gauss_laguerre(quad_nodes, (l + 1) as f64)?;
    let rhs_integral = s.powi(-(l as i32) - 2) * rule.integrate(|tau| spherical_bessel(l, b * tau / s));
    let lhs = (1.0 - 2.0 * alpha * chi.cos() + alpha * alpha).powi(-(l as i32) - 1);
    let calibration = rhs_integral / lhs;
    Ok(IntegralRep { lhs, rhs_integral, calibration, normalized: calibration / b.powi(l as i32) })
}

/// The constant `2^l l!` expected for [`IntegralRep::normalized`].
pub fn integral_rep_constant(l: u32) -> f64 {
    (l as f64 * 2f64.ln() + ln_factorial(l)).exp()
}

/// The printed prefactor `(−1)^l / (π 2^{l+1} l!)` that multiplies the integral.
pub fn integral_rep_printed_prefactor(l: u32) -> f64 {
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    sign / (PI * integral_rep_constant(l) * 2.0)
}

/// `e^{i r⃗·r⃗′}` against `4π Σ_{l≤L} Σ_m i^l j_l(rr′) Y*_lm(r̂′) Y_lm(r̂)`.
pub fn plane_wave_partial(r: [f64; 3], rp: [f64; 3], big_l: u32) -> Result<IdentityCase> {
    let dot = r[0] * rp[0] + r[1] * rp[1] + r[2] * rp[2];
    let exact = Complex64::from_polar(1.0, dot);
    let rr = norm(r) * norm(rp);
    let mut partial = Complex64::new(0.0, 0.0);
    for l in 0..=big_l {
        let jl = spherical_bessel(l, rr);
        if jl == 0.0 {
            continue;
        }
        let mut ang = Complex64::new(0.0, 0.0);
        for m in -(l as i32)..=(l as i32) {
            ang += spherical_harmonic_vec(l, m, rp)?.conj() * spherical_harmonic_vec(l, m, r)?;
        }
        partial += I.powu(l) * jl * ang;
    }
    partial *= 4.0 * PI;
    Ok(IdentityCase::new("plane_wave", &[("rr", rr), ("L", big_l as f64)], exact, partial))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DuplicationCheck {
    pub n: u32,
    /// `|Γ(½)Γ(2n+2) / (2^{2n} Γ(n+3/2)Γ(n+1)) − 1|`
    pub printed: f64,
    /// Same with `2^{2n+1}`.
    pub corrected: f64,
}

/// Legendre duplication at `z = n + 1`, in the printed form and the standard one.
pub fn duplication_check(n: u32) -> DuplicationCheck {
    let nf = n as f64;
    let lhs = ln_gamma(0.5) + ln_gamma(2.0 * nf + 2.0);
    let core = ln_gamma(nf + 1.5) + ln_gamma(nf + 1.0);
    let printed = (lhs - core - 2.0 * nf * 2f64.ln()).exp_m1().abs();
    let corrected = (lhs - core - (2.0 * nf + 1.0) * 2f64.ln()).exp_m1().abs();
    DuplicationCheck { n, printed, corrected }
}

fn check_nlm(n: u32, l: u32, m: i32) -> Result<()> {
    if n == 0 || l >= n {
        return Err(index(format!("need n >= l + 1 >= 1, got n = {n}, l = {l}")));
    }
    if m.unsigned_abs() > l {
        return Err(index(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
    }
    Ok(())
}

/// Hyperspherical harmonic on the unit S³,
/// `2^{l+1} l! √(n(n−l−1)!/(2π(n+l)!)) sin^lχ C_{n−l−1}^{(l+1)}(cosχ) Y_lm(θ, φ)`.
#[allow(non_snake_case)]
pub fn hyperspherical_Y_angles(n: u32, l: u32, m: i32, chi: f64, theta: f64, phi: f64) -> Result<Complex64> {
    check_nlm(n, l, m)?;
    let ln_norm = (l + 1) as f64 * 2f64.ln()
        + ln_factorial(l)
        + 0.5 * ((n as f64).ln() + ln_factorial(n - l - 1) - (2.0 * PI).ln() - ln_factorial(n + l));
    let (s, c) = chi.sin_cos();
    let radial = ln_norm.exp() * s.powi(l as i32) * gegenbauer(n - l - 1, (l + 1) as f64, c)?;
    Ok(spherical_harmonic(l, m, theta, phi)? * radial)
}

/// `(v, χ, θ, φ)` of `v⃗ = (x, y, z, q)`.
pub fn to_hyperspherical(v: [f64; 4]) -> (f64, f64, f64, f64) {
    let rho = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let vn = rho.hypot(v[3]);
    let chi = rho.atan2(v[3]);
    let theta = v[0].hypot(v[1]).atan2(v[2]);
    let phi = v[1].atan2(v[0]);
    (vn, chi, theta, phi)
}

/// Hyperspherical harmonic at `v⃗ = (x, y, z, q)`, extended off the sphere as
/// a homogeneous polynomial of degree `n − 1`.
#[allow(non_snake_case)]
pub fn hyperspherical_Y(n: u32, l: u32, m: i32, v: [f64; 4]) -> Result<Complex64> {
    let (vn, chi, theta, phi) = to_hyperspherical(v);
    if vn == 0.0 {
        return Err(domain("v = 0 has no direction"));
    }
    Ok(hyperspherical_Y_angles(n, l, m, chi, theta, phi)? * vn.powi(n as i32 - 1))
}

/// Second-order finite-difference 4D Laplacian of [`hyperspherical_Y`].
pub fn hyperspherical_laplacian_fd(n: u32, l: u32, m: i32, v: [f64; 4], h: f64) -> Result<Complex64> {
    let f0 = hyperspherical_Y(n, l, m, v)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..4 {
        let mut up = v;
        let mut dn = v;
        up[k] += h;
        dn[k] -= h;
        acc += hyperspherical_Y(n, l, m, up)? + hyperspherical_Y(n, l, m, dn)? - 2.0 * f0;
    }
    Ok(acc / (h * h))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TripleD {
    pub numeric: Complex64,
    pub threej_product: f64,
    pub residual: f64,
}

/// `(1/8π²) ∫ D^j_{j,m₁} D^j_{−j,m₂} D^l_{0,m} dU` with `j = (n−1)/2`, against
/// the product of two 3j symbols. `m1`, `m2` are given as twice their value.
#[allow(non_snake_case)]
pub fn triple_D_integral(n: u32, m1_twice: i32, m2_twice: i32, l: u32, m: i32) -> Result<TripleD> {
    if n == 0 {
        return Err(index("n must be >= 1"));
    }
    let j = HalfInt::from_twice(n as i32 - 1);
    let (m1, m2) = (HalfInt::from_twice(m1_twice), HalfInt::from_twice(m2_twice));
    let (li, mi) = (HalfInt::int(l as i32), HalfInt::int(m));
    let zero = HalfInt::ZERO;
    // surface index errors before integrating
    wigner_D(j, j, m1, 0.0, 0.0, 0.0)?;
    wigner_D(j, -j, m2, 0.0, 0.0, 0.0)?;
    wigner_D(li, zero, mi, 0.0, 0.0, 0.0)?;

    let gl = gauss_legendre(n as usize + l as usize + 24)?;
    let nang = 2 * (n as usize + l as usize) + 8;
    let step = 2.0 * PI / nang as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
        let theta = 0.5 * PI * (x + 1.0);
        let wt = 0.5 * PI * w * theta.sin();
        for a in 0..nang {
            let psi = a as f64 * step;
            for b in 0..nang {
                let phi = b as f64 * step;
                let d = wigner_D(j, j, m1, psi, theta, phi)?
                    * wigner_D(j, -j, m2, psi, theta, phi)?
                    * wigner_D(li, zero, mi, psi, theta, phi)?;
                acc += d * wt;
            }
        }
    }
    let numeric = acc * step * step / (8.0 * PI * PI);
    let threej_product = wigner_3j(j, j, li, j, -j, zero) * wigner_3j(j, j, li, m1, m2, mi);
    Ok(TripleD { numeric, threej_product, residual: (numeric - threej_product).norm() })
}

/// The SU(2) matrix `[[q + iz, x + iy], [−x + iy, q − iz]]` of a point of S³.
pub fn su2_of_point(v: [f64; 4]) -> [[Complex64; 2]; 2] {
    let [x, y, z, q] = v;
    let c = Complex64::new;
    [[c(q, z), c(x, y)], [c(-x, y), c(q, -z)]]
}

/// The embedding under which the passage sum reproduces `Y_nlm` with the
/// `(−i)^l` phase: [`su2_of_point`] with `x` and `y` exchanged, i.e. the
/// off-diagonal entry is `y + ix`. With `x + iy` the sum yields
/// `(−i)^{l+m}` times the `−m` harmonic instead.
pub fn passage_embedding(v: [f64; 4]) -> [[Complex64; 2]; 2] {
    su2_of_point([v[1], v[0], v[2], v[3]])
}

/// Right-hand side of the passage formula without its global prefactor:
/// `√(n/2)/π Σ_{m₁m₂} (−1)^{j−m₂} √(2l+1) 3j(j j l; m₁ −m₂ m) D^j_{m₁m₂}(U)`.
pub fn passage_sum(n: u32, l: u32, m: i32, v: [f64; 4]) -> Result<Complex64> {
    check_nlm(n, l, m)?;
    let j = HalfInt::from_twice(n as i32 - 1);
    let u = passage_embedding(v);
    let (li, mi) = (HalfInt::int(l as i32), HalfInt::int(m));
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..=j.twice() {
        let m1 = HalfInt::from_twice(-j.twice() + 2 * a);
        for b in 0..=j.twice() {
            let m2 = HalfInt::from_twice(-j.twice() + 2 * b);
            let tj = wigner_3j(j, j, li, m1, -m2, mi);
            if tj == 0.0 {
                continue;
            }
            let sign = if (j - m2).twice() / 2 % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * tj * wigner_d_matrix(j, m1, m2, &u)?;
        }
    }
    Ok(acc * ((2 * l + 1) as f64).sqrt() * (n as f64 / 2.0).sqrt() / PI)
}

/// The global factor multiplying [`passage_sum`], `(−i)^l`.
pub fn passage_printed_phase(l: u32) -> Complex64 {
    (-I).powu(l)
}

/// Points on S³ used to fit the passage phase.
const FIT_POINTS: [(f64, f64, f64); 5] = [(0.4, 0.7, 0.3), (1.1, 2.1, -1.9), (2.3, 0.5, 2.6), (1.7, 1.4, 0.9), (0.9, 2.8, -0.4)];

fn point_on_s3(chi: f64, theta: f64, phi: f64) -> [f64; 4] {
    let s = chi.sin();
    [s * theta.sin() * phi.cos(), s * theta.sin() * phi.sin(), s * theta.cos(), chi.cos()]
}

/// Unit phase `c` minimising `Σ |Y − c·S|²` over a fixed point set, where `S`
/// is [`passage_sum`] summed over all `m`.
pub fn passage_phase(n: u32, l: u32) -> Result<Complex64> {
    let mut num = Complex64::new(0.0, 0.0);
    for m in -(l as i32)..=(l as i32) {
        for &(chi, theta, phi) in &FIT_POINTS {
            let y = hyperspherical_Y_angles(n, l, m, chi, theta, phi)?;
            let s = passage_sum(n, l, m, point_on_s3(chi, theta, phi))?;
            num += y * s.conj();
        }
    }
    if num.norm() == 0.0 {
        return Err(Error::Singular(format!("passage sum vanishes on the fit points for (n, l) = ({n}, {l})")));
    }
    Ok(num / num.norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PassageCheck {
    pub residual: f64,
    /// Fitted global phase for this `(n, l)`.
    pub phase: Complex64,
    /// Fitted phase divided by the printed `(−i)^l`.
    pub offset: Complex64,
}

pub fn passage_residual(n: u32, l: u32, m: i32, chi: f64, theta: f64, phi: f64) -> Result<PassageCheck> {
    let phase = passage_phase(n, l)?;
    let y = hyperspherical_Y_angles(n, l, m, chi, theta, phi)?;
    let s = passage_sum(n, l, m, point_on_s3(chi, theta, phi))?;
    Ok(PassageCheck { residual: (y - phase * s).norm(), phase, offset: phase / passage_printed_phase(l) })
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}
