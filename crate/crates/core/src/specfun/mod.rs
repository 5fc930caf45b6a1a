//! Scalar special-function kernels shared by the rest of the crate.

mod bessel;
mod gamma;
mod harmonics;
mod polynomials;
mod wigner;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, index, Result};
use crate::I;

pub use bessel::{bessel_j, reduced_bessel_j, spherical_bessel};
pub use gamma::{binomial, factorial, ln_factorial, ln_gamma, gamma};
pub use harmonics::{normalized_legendre, solid_harmonic, spherical_harmonic, spherical_harmonic_vec};
pub use polynomials::{gegenbauer, gegenbauer_ext, laguerre};
pub use wigner::{
    su2_from_euler, wigner_3j, wigner_d_matrix, wigner_d_small, wigner_D, HalfInt,
};

/// Bound-state labels `(n, l, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl QuantumNumbers {
    /// Checks `1 ≤ n`, `l ≤ n − 1` and `|m| ≤ l`.
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if n == 0 {
            return Err(domain("principal quantum number n must be >= 1"));
        }
        if l >= n {
            return Err(index(format!("l = {l} must satisfy l <= n - 1 = {}", n - 1)));
        }
        if m.unsigned_abs() > l {
            return Err(index(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
        }
        Ok(Self { n, l, m })
    }

    /// Every valid triple with principal number at most `n_max`, in `(n, l, m)` order.
    pub fn all_up_to(n_max: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            for l in 0..n {
                for m in -(l as i32)..=(l as i32) {
                    out.push(Self { n, l, m });
                }
            }
        }
        out
    }
}

impl std::fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.n, self.l, self.m)
    }
}

/// Two free spinor components `(ξ, η)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonomialPair {
    pub xi: Complex64,
    pub eta: Complex64,
}

impl MonomialPair {
    pub fn new(xi: Complex64, eta: Complex64) -> Self {
        Self { xi, eta }
    }

    pub fn zero() -> Self {
        Self::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// The isotropic vector generated by this pair.
    pub fn null_vector(&self) -> NullVector {
        NullVector::from_pair(self)
    }
}

/// Complex vector `a⃗` with `a⃗·a⃗ = 0`, built from a [`MonomialPair`]:
/// `a₁ = −ξ² + η²`, `a₂ = −i(ξ² + η²)`, `a₃ = 2ξη`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullVector {
    pub a: [Complex64; 3],
}

impl NullVector {
    pub fn from_pair(pair: &MonomialPair) -> Self {
        let xi2 = pair.xi * pair.xi;
        let eta2 = pair.eta * pair.eta;
        Self {
            a: [-xi2 + eta2, -I * (xi2 + eta2), 2.0 * pair.xi * pair.eta],
        }
    }

    /// Bilinear (not Hermitian) product `a⃗·v⃗` with a real vector.
    pub fn dot(&self, v: [f64; 3]) -> Complex64 {
        self.a[0] * v[0] + self.a[1] * v[1] + self.a[2] * v[2]
    }

    /// `a⃗·a⃗`, zero up to rounding.
    pub fn self_dot(&self) -> Complex64 {
        self.a.iter().map(|c| c * c).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// `φ_lm(ξ, η) = ξ^{l+m} η^{l−m} / √((l+m)!(l−m)!)`.
pub fn monomial_pair(l: u32, m: i32, xi: Complex64, eta: Complex64) -> Result<Complex64> {
    if m.unsigned_abs() > l {
        return Err(index(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
    }
    let p = (l as i32 + m) as u32;
    let q = (l as i32 - m) as u32;
    let norm = (0.5 * (ln_factorial(p) + ln_factorial(q))).exp();
    Ok(xi.powu(p) * eta.powu(q) / norm)
}
