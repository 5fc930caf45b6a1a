//! Quadratic maps R²→R², R⁴→R³ and R⁸→R⁵, the Cayley–Klein angles on R⁴,
//! and the change of measure that turns a 3D integral into a 4D one.

use std::f64::consts::PI;

use nalgebra::Matrix4;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::{gauss_hermite, mc_gaussian};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    /// Coordinates `u` of the parameter space.
    Domain,
    /// Coordinates `x` of the image space.
    Image,
}

/// A point of one of the spaces the maps act on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoordinateTuple {
    pub components: Vec<f64>,
    pub role: Role,
}

impl CoordinateTuple {
    pub fn new(components: Vec<f64>, role: Role) -> Result<Self> {
        if ![2, 3, 4, 5, 8].contains(&components.len()) {
            return Err(Error::Dimension { expected: 4, got: components.len() });
        }
        Ok(Self { components, role })
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|v| v * v).sum()
    }

    /// Fixed-size view, failing if the length differs.
    pub fn as_array<const N: usize>(&self) -> Result<[f64; N]> {
        self.components
            .as_slice()
            .try_into()
            .map_err(|_| Error::Dimension { expected: N, got: self.components.len() })
    }

    /// Apply the map matching this tuple's length (2, 4 or 8). The returned
    /// image carries `r` as its last component.
    pub fn map(&self) -> Result<CoordinateTuple> {
        if self.role != Role::Domain {
            return Err(domain("only domain tuples can be mapped"));
        }
        let out = match self.len() {
            2 => {
                let (x, y, r) = levi_civita(self.as_array()?);
                vec![x, y, r]
            }
            4 => {
                let ([x, y, z], r) = ks_map(self.as_array()?);
                vec![x, y, z, r]
            }
            8 => {
                let (x, r) = hurwitz_map(self.as_array()?);
                let mut v = x.to_vec();
                v.push(r);
                v
            }
            got => return Err(Error::Dimension { expected: 4, got }),
        };
        Ok(CoordinateTuple { components: out, role: Role::Image })
    }
}

/// `(2u₁u₂, u₁² − u₂², u₁² + u₂²)`.
pub fn levi_civita(u: [f64; 2]) -> (f64, f64, f64) {
    (2.0 * u[0] * u[1], u[0] * u[0] - u[1] * u[1], u[0] * u[0] + u[1] * u[1])
}

/// Kustaanheimo–Stiefel map. Returns `(x, y, z)` and `r = |u|²`.
pub fn ks_map(u: [f64; 4]) -> ([f64; 3], f64) {
    let [u1, u2, u3, u4] = u;
    (
        [2.0 * (u1 * u3 + u2 * u4), 2.0 * (u1 * u4 - u2 * u3), u1 * u1 + u2 * u2 - u3 * u3 - u4 * u4],
        u1 * u1 + u2 * u2 + u3 * u3 + u4 * u4,
    )
}

/// `u` from spherical coordinates of the image and a fiber angle `ψ ∈ [0, 4π)`:
/// `z₁ = √r cos(θ/2) e^{−i(φ+ψ)/2}`, `z₂ = √r sin(θ/2) e^{i(φ−ψ)/2}`.
///
/// With these signs `x + iy = 2 z̄₁z₂ = r sinθ e^{iφ}` for every ψ.
pub fn cayley_klein(r: f64, theta: f64, phi: f64, psi: f64) -> Result<[f64; 4]> {
    if !(r >= 0.0) {
        return Err(domain(format!("r = {r} must be >= 0")));
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(domain(format!("theta = {theta} outside [0, pi]")));
    }
    let s = r.sqrt();
    let z1 = Complex64::from_polar(s * (0.5 * theta).cos(), -0.5 * (phi + psi));
    let z2 = Complex64::from_polar(s * (0.5 * theta).sin(), 0.5 * (phi - psi));
    Ok([z1.re, z1.im, z2.re, z2.im])
}

/// Common phase `ϑ = −(arg z₁ + arg z₂)/2`, the coordinate along the fiber
/// of [`ks_map`]. Equals `ψ/2` on [`cayley_klein`] points.
pub fn fiber_angle(u: [f64; 4]) -> f64 {
    -0.5 * (u[1].atan2(u[0]) + u[3].atan2(u[2]))
}

/// Rotation along the fiber, `zₖ → zₖ e^{−iψ/2}`.
pub fn fiber_rotate(u: [f64; 4], psi: f64) -> [f64; 4] {
    let w = Complex64::from_polar(1.0, -0.5 * psi);
    let z1 = Complex64::new(u[0], u[1]) * w;
    let z2 = Complex64::new(u[2], u[3]) * w;
    [z1.re, z1.im, z2.re, z2.im]
}

/// Hurwitz map R⁸ → R⁵ built from `zₖ = u_{2k−1} + i u_{2k}`:
/// `x₁ + ix₂ = 2(z̄₁z₃ + z₂z̄₄)`, `x₃ + ix₄ = 2(z̄₁z₄ − z₂z̄₃)`, `x₅ = r₁ − r₂`.
/// Returns `(x, r₁ + r₂)`.
pub fn hurwitz_map(u: [f64; 8]) -> ([f64; 5], f64) {
    let z = |k: usize| Complex64::new(u[2 * k], u[2 * k + 1]);
    let (z1, z2, z3, z4) = (z(0), z(1), z(2), z(3));
    let a = 2.0 * (z1.conj() * z3 + z2 * z4.conj());
    let b = 2.0 * (z1.conj() * z4 - z2 * z3.conj());
    let r1 = z1.norm_sqr() + z2.norm_sqr();
    let r2 = z3.norm_sqr() + z4.norm_sqr();
    ([a.re, a.im, b.re, b.im, r1 - r2], r1 + r2)
}

/// `|det ∂(x, y, z, ϑ)/∂u|` by central differences with step `h`.
/// Analytically `8|u|²`.
pub fn ks_jacobian_fd(u: [f64; 4], h: f64) -> f64 {
    let f = |v: [f64; 4]| {
        let (x, _) = ks_map(v);
        [x[0], x[1], x[2], fiber_angle(v)]
    };
    let mut jac = Matrix4::zeros();
    for j in 0..4 {
        let mut up = u;
        let mut dn = u;
        up[j] += h;
        dn[j] -= h;
        let (a, b) = (f(up), f(dn));
        for i in 0..4 {
            let mut d = a[i] - b[i];
            if i == 3 {
                // ϑ is an angle; undo branch jumps
                d = (d + PI).rem_euclid(2.0 * PI) - PI;
            }
            jac[(i, j)] = d / (2.0 * h);
        }
    }
    jac.determinant().abs()
}

/// How [`ks_integral`] evaluates the 4D integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KsRule {
    /// Gaussian-weighted Monte Carlo; `u` is sampled with density `∝ e^{−|u|²/s²}`.
    MonteCarlo { samples: usize, seed: u64, scale: f64 },
    /// Product Gauss–Hermite with `npts` nodes per axis, nodes scaled by `s`.
    GaussHermite { npts: usize, scale: f64 },
}

impl Default for KsRule {
    fn default() -> Self {
        KsRule::MonteCarlo { samples: 1_000_000, seed: 42, scale: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsIntegral {
    pub value: f64,
    /// Standard error (Monte Carlo) or the change from a coarser rule (Gauss–Hermite).
    pub error_estimate: f64,
}

/// `(4/π) ∫ f(ks_map(u)) |u|² d⁴u`, which equals `∫ f d³r`.
pub fn ks_integral<F>(f: F, rule: KsRule) -> Result<KsIntegral>
where
    F: Fn([f64; 3]) -> f64 + Sync,
{
    // ∫ g(u) d⁴u with g = f∘ks · |u|², written as s⁴ ∫ g(s v) e^{|v|²} e^{−|v|²} d⁴v
    let lifted = |v: &[f64], s: f64| {
        let u = [s * v[0], s * v[1], s * v[2], s * v[3]];
        let (x, r) = ks_map(u);
        let e = v.iter().map(|t| t * t).sum::<f64>();
        f(x) * r * e.exp()
    };
    let check_scale = |s: f64| {
        if s > 0.0 && s.is_finite() {
            Ok(())
        } else {
            Err(domain(format!("scale = {s} must be positive")))
        }
    };
    match rule {
        KsRule::MonteCarlo { samples, seed, scale } => {
            check_scale(scale)?;
            if samples < 2 {
                return Err(Error::Size("need at least 2 samples".into()));
            }
            let est = mc_gaussian(4, |v| lifted(v, scale), samples, seed);
            // measure π^{−2} e^{−|v|²}
            let k = 4.0 / PI * PI * PI * scale.powi(4);
            let out = KsIntegral { value: k * est.estimate, error_estimate: k * est.stderr };
            if !out.value.is_finite() {
                return Err(Error::Integrability("non-finite Monte Carlo mean".into()));
            }
            Ok(out)
        }
        KsRule::GaussHermite { npts, scale } => {
            check_scale(scale)?;
            let fine = hermite_sum(&lifted, npts, scale)?;
            let coarse = hermite_sum(&lifted, npts.saturating_sub(4).max(2), scale)?;
            let k = 4.0 / PI * scale.powi(4);
            let out = KsIntegral { value: k * fine, error_estimate: k * (fine - coarse).abs() };
            if !out.value.is_finite() {
                return Err(Error::Integrability("non-finite quadrature sum".into()));
            }
            Ok(out)
        }
    }
}

fn hermite_sum<G>(g: &G, npts: usize, scale: f64) -> Result<f64>
where
    G: Fn(&[f64], f64) -> f64 + Sync,
{
    if npts.pow(4) > 50_000_000 {
        return Err(Error::Size(format!("{npts}^4 product nodes")));
    }
    let gh = gauss_hermite(npts)?;
    let (x, w) = (&gh.nodes, &gh.weights);
    let partial: Vec<f64> = (0..npts)
        .into_par_iter()
        .map(|a| {
            let mut acc = 0.0;
            for b in 0..npts {
                for c in 0..npts {
                    let wabc = w[a] * w[b] * w[c];
                    for d in 0..npts {
                        acc += wabc * w[d] * g(&[x[a], x[b], x[c], x[d]], scale);
                    }
                }
            }
            acc
        })
        .collect();
    Ok(partial.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn map_examples() {
        assert_eq!(levi_civita([1.0, 0.0]), (0.0, 1.0, 1.0));
        assert_eq!(levi_civita([1.0, 1.0]), (2.0, 0.0, 2.0));
        assert_eq!(ks_map([1.0, 0.0, 0.0, 0.0]), ([0.0, 0.0, 1.0], 1.0));
        assert_eq!(ks_map([0.0, 0.0, 1.0, 0.0]), ([0.0, 0.0, -1.0], 1.0));
        let mut u = [0.0; 8];
        u[0] = 1.0;
        assert_eq!(hurwitz_map(u), ([0.0, 0.0, 0.0, 0.0, 1.0], 1.0));
        let mut u = [0.0; 8];
        u[4] = 1.0;
        assert_eq!(hurwitz_map(u), ([0.0, 0.0, 0.0, 0.0, -1.0], 1.0));
    }

    #[test]
    fn cayley_klein_examples() {
        assert_eq!(cayley_klein(1.0, 0.0, 0.0, 0.0).unwrap(), [1.0, 0.0, 0.0, 0.0]);
        assert!(cayley_klein(-1.0, 0.0, 0.0, 0.0).is_err());
        assert!(cayley_klein(1.0, 4.0, 0.0, 0.0).is_err());
        let (r, th, ph): (f64, f64, f64) = (1.7, 1.1, -2.3);
        let want = [r * th.sin() * ph.cos(), r * th.sin() * ph.sin(), r * th.cos()];
        let mut worst: f64 = 0.0;
        for k in 0..32 {
            let psi = 4.0 * PI * k as f64 / 32.0;
            let (x, rr) = ks_map(cayley_klein(r, th, ph, psi).unwrap());
            for i in 0..3 {
                worst = worst.max((x[i] - want[i]).abs());
            }
            assert!((rr - r).abs() < 1e-14);
        }
        assert!(worst <= 1e-13, "{worst}");
    }

    #[test]
    fn fiber_angle_tracks_psi() {
        let u = cayley_klein(0.8, 0.9, 0.4, 1.2).unwrap();
        assert!((fiber_angle(u) - 0.6).abs() < 1e-14);
    }

    #[test]
    fn coordinate_tuple() {
        assert!(CoordinateTuple::new(vec![1.0; 6], Role::Domain).is_err());
        let t = CoordinateTuple::new(vec![1.0, 0.0, 0.0, 0.0], Role::Domain).unwrap();
        assert_eq!(t.map().unwrap().components, vec![0.0, 0.0, 1.0, 1.0]);
        let img = t.map().unwrap();
        assert!(img.map().is_err());
        assert!(t.as_array::<3>().is_err());
    }

    #[test]
    fn ks_integral_quadrature() {
        let rule = KsRule::GaussHermite { npts: 24, scale: 1.0 };
        let v = ks_integral(|x| (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()).exp(), rule).unwrap();
        assert!((v.value - 8.0 * PI).abs() < 1e-9 * 8.0 * PI, "{v:?}");
        let v = ks_integral(|x| (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])).exp(), rule).unwrap();
        assert!((v.value - PI.powf(1.5)).abs() < 1e-3 * PI.powf(1.5), "{v:?}");
    }

    #[test]
    fn ks_integral_monte_carlo() {
        let rule = KsRule::MonteCarlo { samples: 200_000, seed: 7, scale: 1.0 };
        let ball = |x: [f64; 3]| if x.iter().map(|t| t * t).sum::<f64>() < 1.0 { 1.0 } else { 0.0 };
        let v = ks_integral(ball, rule).unwrap();
        let want = 4.0 * PI / 3.0;
        assert!((v.value - want).abs() < 0.02 * want, "{v:?}");
        assert!((v.value - want).abs() < 5.0 * v.error_estimate);
        assert!(ks_integral(ball, KsRule::MonteCarlo { samples: 10, seed: 1, scale: -1.0 }).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let u = [0.3, -0.8, 0.5, 1.1];
        let r: f64 = u.iter().map(|v| v * v).sum();
        assert!((ks_jacobian_fd(u, 1e-5) - 8.0 * r).abs() < 1e-8 * 8.0 * r);
    }

    proptest! {
        #[test]
        fn norm_covariance(u in proptest::array::uniform8(-3.0..3.0f64)) {
            let r2: f64 = u.iter().map(|v| v * v).sum();
            let (x, r) = hurwitz_map(u);
            let xn = x.iter().map(|v| v * v).sum::<f64>();
            prop_assert!((xn - r * r).abs() <= 1e-12 * r * r + 1e-300);
            prop_assert!((r - r2).abs() <= 1e-12 * r2);
            let v = [u[0], u[1], u[2], u[3]];
            let (x, r) = ks_map(v);
            let xn = x.iter().map(|v| v * v).sum::<f64>();
            prop_assert!((xn - r * r).abs() <= 1e-13 * r * r.max(1.0));
            let (a, b, c) = levi_civita([u[0], u[1]]);
            prop_assert!((a * a + b * b - c * c).abs() <= 1e-13 * c * c.max(1.0));
        }

        #[test]
        fn fiber_invariance(u in proptest::array::uniform4(-2.0..2.0f64), k in 0usize..32) {
            let psi = 4.0 * PI * k as f64 / 32.0;
            let (a, _) = ks_map(u);
            let (b, _) = ks_map(fiber_rotate(u, psi));
            for i in 0..3 {
                prop_assert!((a[i] - b[i]).abs() <= 1e-13 * (1.0 + a[i].abs()));
            }
        }

        #[test]
        fn jacobian_is_eight_r(u in proptest::array::uniform4(0.2..1.5f64)) {
            let r: f64 = u.iter().map(|v| v * v).sum();
            let j = ks_jacobian_fd(u, 1e-5);
            prop_assert!((j - 8.0 * r).abs() <= 1e-8 * 8.0 * r, "{} vs {}", j, 8.0 * r);
        }
    }
}
