//! Hydrogen bound states in position and momentum space, the Fock projection,
//! and the generating functions whose Taylor coefficients reproduce them.

mod extract;
mod genfunc;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::specfun::{
    gegenbauer, gegenbauer_ext, laguerre, ln_factorial, solid_harmonic, spherical_harmonic_vec,
    QuantumNumbers,
};
use crate::I;

pub use extract::{extract_coefficient, CauchyConfig, Extraction, GenFuncSide};
pub use genfunc::{beta_derivative, genfunc_momentum, genfunc_momentum_regulated, genfunc_position, GenFuncParams};

/// A bound state with its inverse length scale `δ = 1/n` and `ω = 2δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub qn: QuantumNumbers,
    pub delta: f64,
    pub omega: f64,
}

impl BoundState {
    pub fn new(qn: QuantumNumbers) -> Self {
        let delta = 1.0 / qn.n as f64;
        Self { qn, delta, omega: 2.0 * delta }
    }

    /// `N_nl = (2/n²) √((n−l−1)!/(n+l)!)`.
    pub fn norm(&self) -> f64 {
        radial_norm(self.qn.n, self.qn.l)
    }

    pub fn energy(&self) -> f64 {
        energy(self.qn.n)
    }
}

/// Overall phase attached to the momentum-space wavefunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseConvention {
    /// `i^l`, as carried by the closed form.
    Printed,
    /// `(−i)^l`, what the transform with kernel `e^{−ip⃗·r⃗}` produces.
    Fourier,
}

impl PhaseConvention {
    pub fn factor(self, l: u32) -> Complex64 {
        match self {
            PhaseConvention::Printed => I.powu(l),
            PhaseConvention::Fourier => (-I).powu(l),
        }
    }
}

/// Point on the unit 3-sphere reached by the Fock projection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockPoint {
    pub y: [f64; 4],
    /// `y₄ = (p² − δ²)/(p² + δ²)`, the Gegenbauer argument.
    pub x: f64,
}

impl FockPoint {
    pub fn norm(&self) -> f64 {
        self.y.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// `N_nl = (2/n²) √((n−l−1)!/(n+l)!)`.
pub fn radial_norm(n: u32, l: u32) -> f64 {
    2.0 / (n as f64 * n as f64) * (0.5 * (ln_factorial(n - l - 1) - ln_factorial(n + l))).exp()
}

/// `R_nl(r) = N_nl x^l e^{−x/2} L^{(2l+1)}_{n−l−1}(x)` with `x = 2r/n`.
pub fn radial_position(n: u32, l: u32, r: f64) -> Result<f64> {
    QuantumNumbers::new(n, l, 0)?;
    if !(r >= 0.0) {
        return Err(domain(format!("radius r = {r} must be >= 0")));
    }
    let x = 2.0 * r / n as f64;
    let lag = laguerre(n - l - 1, (2 * l + 1) as f64, x)?;
    Ok(radial_norm(n, l) * x.powi(l as i32) * (-0.5 * x).exp() * lag)
}

pub fn psi_position(qn: QuantumNumbers, r: [f64; 3]) -> Result<Complex64> {
    let qn = QuantumNumbers::new(qn.n, qn.l, qn.m)?;
    let rad = radial_position(qn.n, qn.l, norm3(r))?;
    Ok(spherical_harmonic_vec(qn.l, qn.m, r)? * rad)
}

/// Radial factor of the closed-form momentum wavefunction,
/// `N_nl l! n (4δ)^{l+1} p^l C^{(l+1)}_{n−l−1}(x) / (√(2π) (p² + δ²)^{l+2})`,
/// so that `ψ̃_nlm(p⃗) = phase · F_nl(p) · Y_lm(p̂)`.
pub fn radial_momentum(n: u32, l: u32, p: f64) -> Result<f64> {
    QuantumNumbers::new(n, l, 0)?;
    if !(p >= 0.0) {
        return Err(domain(format!("momentum magnitude p = {p} must be >= 0")));
    }
    let delta = 1.0 / n as f64;
    let (p2, d2) = (p * p, delta * delta);
    let x = (p2 - d2) / (p2 + d2);
    let c = gegenbauer(n - l - 1, (l + 1) as f64, x)?;
    let lf = ln_factorial(l).exp();
    Ok(radial_norm(n, l) * lf * n as f64 * (4.0 * delta).powi(l as i32 + 1) * p.powi(l as i32) * c
        / ((2.0 * PI).sqrt() * (p2 + d2).powi(l as i32 + 2)))
}

/// The same radial factor before the Gegenbauer order-lowering recurrence:
/// `N_nl (l+1)! (4δ)^{l+1} p^l [C^{(l+2)}_{n−l−1}(x) − C^{(l+2)}_{n−l−3}(x)] / (√(2π)(p²+δ²)^{l+2})`.
pub fn radial_momentum_unreduced(n: u32, l: u32, p: f64) -> Result<f64> {
    QuantumNumbers::new(n, l, 0)?;
    if !(p >= 0.0) {
        return Err(domain(format!("momentum magnitude p = {p} must be >= 0")));
    }
    let delta = 1.0 / n as f64;
    let (p2, d2) = (p * p, delta * delta);
    let x = (p2 - d2) / (p2 + d2);
    let a = (l + 2) as f64;
    let k = (n - l - 1) as i64;
    let diff = gegenbauer_ext(k, a, x)? - gegenbauer_ext(k - 2, a, x)?;
    let lf = ln_factorial(l + 1).exp();
    Ok(radial_norm(n, l) * lf * (4.0 * delta).powi(l as i32 + 1) * p.powi(l as i32) * diff
        / ((2.0 * PI).sqrt() * (p2 + d2).powi(l as i32 + 2)))
}

/// Closed-form momentum wavefunction with the `i^l` phase.
///
/// The angular factor is the solid harmonic `p^l Y_lm(p̂)`; the `p^l` is folded
/// into [`radial_momentum`].
pub fn psi_momentum(qn: QuantumNumbers, p: [f64; 3]) -> Result<Complex64> {
    psi_momentum_with_phase(qn, p, PhaseConvention::Printed)
}

pub fn psi_momentum_with_phase(qn: QuantumNumbers, p: [f64; 3], phase: PhaseConvention) -> Result<Complex64> {
    let qn = QuantumNumbers::new(qn.n, qn.l, qn.m)?;
    let rad = radial_momentum(qn.n, qn.l, norm3(p))?;
    Ok(phase.factor(qn.l) * spherical_harmonic_vec(qn.l, qn.m, p)? * rad)
}

/// Momentum wavefunction assembled from [`radial_momentum_unreduced`].
pub fn psi_momentum_unreduced(qn: QuantumNumbers, p: [f64; 3], phase: PhaseConvention) -> Result<Complex64> {
    let qn = QuantumNumbers::new(qn.n, qn.l, qn.m)?;
    let rad = radial_momentum_unreduced(qn.n, qn.l, norm3(p))?;
    Ok(phase.factor(qn.l) * spherical_harmonic_vec(qn.l, qn.m, p)? * rad)
}

/// `E_n = −1/(2n²)` hartree.
pub fn energy(n: u32) -> f64 {
    -0.5 / (n as f64 * n as f64)
}

/// Energy in terms of the four-dimensional oscillator quantum number,
/// `E = −2 (1/(n_osc + 2))²`. Only even `n_osc` give bound states.
pub fn energy_from_oscillator(n_osc: u32) -> f64 {
    let d = n_osc as f64 + 2.0;
    -2.0 / (d * d)
}

/// Fock projection `y⃗ = (2δp⃗, p² − δ²)/(p² + δ²)` onto the unit S³.
pub fn fock_map(p: [f64; 3], delta: f64) -> Result<FockPoint> {
    if !(delta > 0.0) {
        return Err(domain(format!("delta = {delta} must be positive")));
    }
    let p2 = p.iter().map(|v| v * v).sum::<f64>();
    let den = p2 + delta * delta;
    let y4 = (p2 - delta * delta) / den;
    Ok(FockPoint {
        y: [2.0 * delta * p[0] / den, 2.0 * delta * p[1] / den, 2.0 * delta * p[2] / den, y4],
        x: y4,
    })
}

/// `√(4π/(2l+1)) φ_lm(ξ) Y_lm(r⃗)` summed over `m` equals `(a⃗·r⃗)^l/(2^l l!)`;
/// exposed for tests of the angular generating function.
pub fn angular_generating_sum(l: u32, pair: &crate::specfun::MonomialPair, r: [f64; 3]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for m in -(l as i32)..=(l as i32) {
        acc += crate::specfun::monomial_pair(l, m, pair.xi, pair.eta)? * solid_harmonic(l, m, r)?;
    }
    Ok(acc * (4.0 * PI / (2 * l + 1) as f64).sqrt())
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{gauss_laguerre, half_line};
    use crate::specfun::{gegenbauer, laguerre, MonomialPair};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn qn(n: u32, l: u32, m: i32) -> QuantumNumbers {
        QuantumNumbers::new(n, l, m).unwrap()
    }

    #[test]
    fn radial_examples() {
        for &r in &[0.0, 0.3, 1.0, 4.0] {
            assert_relative_eq!(radial_position(1, 0, r).unwrap(), 2.0 * (-r).exp(), max_relative = 1e-15);
        }
        assert_eq!(radial_position(2, 1, 0.0).unwrap(), 0.0);
        assert!(radial_position(1, 0, -1.0).is_err());
        assert!(radial_position(2, 2, 1.0).is_err());
        // textbook R_20 = (1/√2)(1 - r/2) e^{-r/2}
        let r: f64 = 1.7;
        let want = (1.0 - r / 2.0) * (-r / 2.0).exp() / 2f64.sqrt();
        assert_relative_eq!(radial_position(2, 0, r).unwrap(), want, max_relative = 1e-14);
    }

    #[test]
    fn radial_normalization() {
        for n in 1..=7u32 {
            for l in 0..n {
                // with r = n s / 2, R² r² dr = N² (n/2)³ L(s)² s^{2l+2} e^{-s} ds
                let rule = gauss_laguerre(200, (2 * l + 2) as f64).unwrap();
                let k = radial_norm(n, l).powi(2) * (n as f64 / 2.0).powi(3);
                let v = rule.integrate(|s| k * laguerre(n - l - 1, (2 * l + 1) as f64, s).unwrap().powi(2));
                assert!((v - 1.0).abs() < 1e-10, "n={n} l={l} v={v}");
            }
        }
    }

    #[test]
    fn position_examples() {
        let v = psi_position(qn(1, 0, 0), [0.0; 3]).unwrap();
        assert_relative_eq!(v.re, 1.0 / PI.sqrt(), max_relative = 1e-15);
        assert!((v.re - 0.564190).abs() < 1e-6);
        let v = psi_position(qn(2, 1, 1), [0.0, 0.0, 1.3]).unwrap();
        assert!(v.norm() < 1e-16);
        assert_eq!(psi_position(qn(3, 2, 0), [0.0; 3]).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn node_count() {
        for n in 1..=6u32 {
            for l in 0..n {
                let rmax = 60.0 * n as f64;
                let npts = 20_000;
                let mut changes = 0;
                let mut last = radial_position(n, l, rmax / npts as f64).unwrap().signum();
                for k in 2..npts {
                    let v = radial_position(n, l, rmax * k as f64 / npts as f64).unwrap();
                    if v != 0.0 && v.signum() != last {
                        changes += 1;
                        last = v.signum();
                    }
                }
                assert_eq!(changes, n - l - 1, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn momentum_examples() {
        let v = psi_momentum(qn(1, 0, 0), [0.0; 3]).unwrap();
        assert_relative_eq!(v.norm(), 2.0 * 2f64.sqrt() / PI, max_relative = 1e-14);
        assert!((v.norm() - 0.900316).abs() < 1e-6);
        assert_eq!(psi_momentum(qn(2, 1, 0), [0.0; 3]).unwrap(), Complex64::new(0.0, 0.0));
        // |p| = δ sits on the Fock equator
        let f = fock_map([0.0, 0.0, 0.5], 0.5).unwrap();
        assert_eq!(f.x, 0.0);
    }

    #[test]
    fn momentum_normalization() {
        for n in 1..=5u32 {
            let rule = half_line(400, 1.0 / n as f64).unwrap();
            for l in 0..n {
                let v = rule.integrate(|p| radial_momentum(n, l, p).unwrap().powi(2) * p * p);
                assert!((v - 1.0).abs() < 1e-10, "n={n} l={l} v={v}");
            }
        }
    }

    #[test]
    fn reduced_and_unreduced_forms_agree() {
        for n in 1..=7u32 {
            for l in 0..n {
                for k in 0..25 {
                    let p = 0.07 * k as f64;
                    let a = radial_momentum(n, l, p).unwrap();
                    let b = radial_momentum_unreduced(n, l, p).unwrap();
                    assert!((a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300), "n={n} l={l} p={p}");
                }
            }
        }
    }

    #[test]
    fn energies() {
        assert_eq!(energy(1), -0.5);
        assert_eq!(energy(2), -0.125);
        for n in 1..10 {
            assert_relative_eq!(energy(n) / energy(1), 1.0 / (n * n) as f64, max_relative = 1e-15);
            assert_relative_eq!(energy_from_oscillator(2 * n - 2), energy(n), max_relative = 1e-15);
        }
    }

    #[test]
    fn fock_examples() {
        let f = fock_map([0.0, 0.0, 0.7], 0.7).unwrap();
        assert!((f.y[2] - 1.0).abs() < 1e-15 && f.y[3].abs() < 1e-15);
        let f = fock_map([0.0; 3], 0.3).unwrap();
        assert_eq!(f.y, [0.0, 0.0, 0.0, -1.0]);
        assert!(fock_map([1.0, 0.0, 0.0], 0.0).is_err());
    }

    #[test]
    fn angular_generating_function() {
        let pair = MonomialPair::new(Complex64::new(0.4, -0.9), Complex64::new(-0.3, 0.5));
        let r = [0.8, -1.3, 0.45];
        let nv = pair.null_vector();
        let mut fact = 1.0;
        for l in 0..6u32 {
            if l > 0 {
                fact *= l as f64;
            }
            let want = nv.dot(r).powu(l) / (2f64.powi(l as i32) * fact);
            let got = angular_generating_sum(l, &pair, r).unwrap();
            assert!((got - want).norm() < 1e-13 * want.norm().max(1.0), "l={l}");
        }
    }

    proptest! {
        #[test]
        fn fock_point_is_on_sphere(px in -20.0..20.0f64, py in -20.0..20.0f64, pz in -20.0..20.0f64, d in 0.05..5.0f64) {
            let f = fock_map([px, py, pz], d).unwrap();
            prop_assert!((f.norm() - 1.0).abs() < 1e-13);
            prop_assert!((-1.0..=1.0).contains(&f.x));
        }

        #[test]
        fn gegenbauer_argument_identity(zr in -0.9..0.9f64, zi in -0.9..0.9f64, p in 0.0..10.0f64, d in 0.1..2.0f64) {
            let z = Complex64::new(zr, zi);
            let lhs = (d * (1.0 + z)).powu(2) + (1.0 - z).powu(2) * p * p;
            let x = (p * p - d * d) / (p * p + d * d);
            let rhs = (p * p + d * d) * (1.0 - 2.0 * z * x + z * z);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(rhs.norm()));
        }
    }

    #[test]
    fn momentum_matches_gegenbauer_directly() {
        // spot check against the explicit polynomial for (3,1): C_1^{(2)}(x) = 4x
        let p: f64 = 0.4;
        let d: f64 = 1.0 / 3.0;
        let x = (p * p - d * d) / (p * p + d * d);
        assert_relative_eq!(gegenbauer(1, 2.0, x).unwrap(), 4.0 * x, max_relative = 1e-15);
    }
}
