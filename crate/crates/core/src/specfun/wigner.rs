use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::error::{index, Result};
use crate::specfun::ln_factorial;

/// Integer or half-integer angular-momentum label, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn int(v: i32) -> Self {
        HalfInt(2 * v)
    }

    /// Nearest representable value of `v`, if `2v` is integral.
    pub fn from_f64(v: f64) -> Option<Self> {
        let t = 2.0 * v;
        (t.fract() == 0.0 && t.abs() < i32::MAX as f64).then(|| HalfInt(t as i32))
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Integer value of `self`; only meaningful when [`Self::is_integer`].
    fn whole(self) -> i32 {
        debug_assert!(self.is_integer());
        self.0 / 2
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

fn lf(k: i32) -> f64 {
    ln_factorial(k as u32)
}

fn sign(k: i32) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn valid_projection(j: HalfInt, m: HalfInt) -> bool {
    j.0 >= 0 && m.0.abs() <= j.0 && (j + m).is_integer()
}

/// Wigner 3j symbol by the Racah sum. Returns exactly zero when a selection
/// rule fails.
pub fn wigner_3j(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> f64 {
    if (m1 + m2 + m3).0 != 0 {
        return 0.0;
    }
    if !(valid_projection(j1, m1) && valid_projection(j2, m2) && valid_projection(j3, m3)) {
        return 0.0;
    }
    if !(j1 + j2 + j3).is_integer() || j3 > j1 + j2 || j3.0 < (j1.0 - j2.0).abs() {
        return 0.0;
    }
    let a = (j1 + j2 - j3).whole();
    let b = (j1 - j2 + j3).whole();
    let c = (-j1 + j2 + j3).whole();
    let total = (j1 + j2 + j3).whole();
    let ln_delta = lf(a) + lf(b) + lf(c) - lf(total + 1);
    let ln_proj = lf((j1 + m1).whole())
        + lf((j1 - m1).whole())
        + lf((j2 + m2).whole())
        + lf((j2 - m2).whole())
        + lf((j3 + m3).whole())
        + lf((j3 - m3).whole());
    let ln_pre = 0.5 * (ln_delta + ln_proj);

    let t1 = (j3 - j2 + m1).whole();
    let t2 = (j3 - j1 - m2).whole();
    let t3 = a;
    let t4 = (j1 - m1).whole();
    let t5 = (j2 + m2).whole();
    let kmin = 0.max(-t1).max(-t2);
    let kmax = t3.min(t4).min(t5);
    let mut sum = 0.0;
    for k in kmin..=kmax {
        let ln_den = lf(k) + lf(t1 + k) + lf(t2 + k) + lf(t3 - k) + lf(t4 - k) + lf(t5 - k);
        sum += sign(k) * (ln_pre - ln_den).exp();
    }
    sign((j1 - j2 - m3).whole()) * sum
}

/// Small Wigner matrix `d^j_{m′m}(β)`.
///
/// The convention is fixed by `d^l_{0m}(β) = √((l−m)!/(l+m)!) P_l^m(cos β)`
/// (Condon–Shortley), which makes `√(4π/(2l+1)) Y*_lm(θ, φ) = D^l_{0m}(ψ, θ, φ)`.
pub fn wigner_d_small(j: HalfInt, mp: HalfInt, m: HalfInt, beta: f64) -> Result<f64> {
    check_pair(j, mp, m)?;
    let jpm = (j + mp).whole();
    let jmm = (j - mp).whole();
    let jp = (j + m).whole();
    let jm = (j - m).whole();
    let dm = (m - mp).whole();
    let ln_norm = 0.5 * (lf(jpm) + lf(jmm) + lf(jp) + lf(jm));
    let (s, c) = (0.5 * beta).sin_cos();
    let smin = 0.max(-dm);
    let smax = jpm.min(jm);
    let mut sum = 0.0;
    for k in smin..=smax {
        let ln_den = lf(jpm - k) + lf(k) + lf(dm + k) + lf(jm - k);
        let cpow = j.twice() + (mp - m).whole() - 2 * k;
        let spow = dm + 2 * k;
        sum += sign(dm + k) * (ln_norm - ln_den).exp() * c.powi(cpow) * s.powi(spow);
    }
    Ok(sum)
}

/// `D^j_{m′m}(ψ, θ, φ) = e^{−im′ψ} d^j_{m′m}(θ) e^{−imφ}`.
#[allow(non_snake_case)]
pub fn wigner_D(j: HalfInt, mp: HalfInt, m: HalfInt, psi: f64, theta: f64, phi: f64) -> Result<Complex64> {
    let d = wigner_d_small(j, mp, m, theta)?;
    Ok(Complex64::from_polar(d, -(mp.value() * psi + m.value() * phi)))
}

/// The SU(2) element whose spin-½ representation matrix is `D^{1/2}(ψ, θ, φ)`.
/// Its first row is the Cayley–Klein pair `(z₁, z₂)/√r`.
pub fn su2_from_euler(psi: f64, theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = (0.5 * theta).sin_cos();
    let p = 0.5 * (psi + phi);
    let q = 0.5 * (psi - phi);
    [
        [Complex64::from_polar(c, -p), Complex64::from_polar(s, -q)],
        [-Complex64::from_polar(s, q), Complex64::from_polar(c, p)],
    ]
}

/// `D^j_{m′m}(U)` for an arbitrary complex 2×2 matrix, defined through
/// `(z′ᵀ U z)^{2j} / (2j)! = Σ φ_{jm′}(z′) φ_{jm}(z) D^j_{m′m}(U)`.
///
/// This is a homogeneous polynomial of degree `2j` in the entries of `U` and
/// agrees with [`wigner_D`] on [`su2_from_euler`].
pub fn wigner_d_matrix(j: HalfInt, mp: HalfInt, m: HalfInt, u: &[[Complex64; 2]; 2]) -> Result<Complex64> {
    check_pair(j, mp, m)?;
    let [[a, b], [c, d]] = *u;
    let jpm = (j + mp).whole();
    let jmm = (j - mp).whole();
    let jp = (j + m).whole();
    let jm = (j - m).whole();
    let ln_norm = 0.5 * (lf(jpm) + lf(jmm) + lf(jp) + lf(jm));
    let s = (m + mp).whole();
    let kmin = 0.max(s);
    let kmax = jpm.min(jp);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in kmin..=kmax {
        let ln_den = lf(k) + lf(jpm - k) + lf(jp - k) + lf(k - s);
        let mono = a.powi(k) * b.powi(jpm - k) * c.powi(jp - k) * d.powi(k - s);
        sum += mono * (ln_norm - ln_den).exp();
    }
    Ok(sum)
}

fn check_pair(j: HalfInt, mp: HalfInt, m: HalfInt) -> Result<()> {
    if !valid_projection(j, mp) || !valid_projection(j, m) {
        return Err(index(format!("invalid projections ({mp}, {m}) for j = {j}")));
    }
    Ok(())
}
