use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::hydrogen::radial_norm;
use crate::quadrature::{gauss_laguerre, gauss_legendre, QuadratureRule};
use crate::specfun::{gegenbauer, laguerre, spherical_bessel, QuantumNumbers};
use crate::I;

pub const DEFAULT_HANKEL_NODES: usize = 320;

/// Value of the radial Fourier transform of a bound state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelResult {
    /// `(−i)^l F_nl(p)`
    pub value: Complex64,
    /// `F_nl(p) = √(2/π) ∫₀^∞ R_nl(r) j_l(pr) r² dr`
    pub radial: f64,
    /// Difference against a rule with two thirds of the nodes.
    pub error_estimate: f64,
}

/// Above this value of `p·n` the direct rule loses accuracy to the
/// oscillation of `j_l`, and the rotated-contour route takes over.
pub const DIRECT_LIMIT: f64 = 4.0;

/// Radial (Hankel) transform of the hydrogen bound states,
/// `ψ̃_nlm(p⃗) = (−i)^l F_nl(p) Y_lm(p̂)` under `e^{−ip⃗·r⃗}/(2π)^{3/2}`.
///
/// With `s = r/n` the exponential of `R_nl` is exactly the Laguerre weight, so
/// for `pn ≤ DIRECT_LIMIT` the integral is evaluated with the generalized rule
/// for `s² e^{−s}`. Beyond that `j_l(x) = (2iˡ)⁻¹ ∫₋₁¹ e^{ixt} P_l(t) dt` turns
/// the radial integral into `∫ s² q(s) e^{−(1−ipnt)s} ds`, which a Laguerre
/// rule on the rotated ray integrates exactly; the remaining `t` integral is
/// smooth and done on Gauss–Legendre panels graded towards `t = 0`.
#[derive(Debug, Clone)]
pub struct RadialHankel {
    fine: QuadratureRule,
    coarse: QuadratureRule,
    rotated: QuadratureRule,
    panel_fine: QuadratureRule,
    panel_coarse: QuadratureRule,
}

impl RadialHankel {
    pub fn new(npts: usize) -> Result<Self> {
        Ok(Self {
            fine: gauss_laguerre(npts, 2.0)?,
            coarse: gauss_laguerre((2 * npts / 3).max(2), 2.0)?,
            rotated: gauss_laguerre(24, 2.0)?,
            panel_fine: gauss_legendre(24)?,
            panel_coarse: gauss_legendre(16)?,
        })
    }

    pub fn nodes(&self) -> usize {
        self.fine.len()
    }

    pub fn transform(&self, n: u32, l: u32, p: f64) -> Result<HankelResult> {
        QuantumNumbers::new(n, l, 0)?;
        if !(p >= 0.0) {
            return Err(domain(format!("momentum magnitude p = {p} must be >= 0")));
        }
        let nf = n as f64;
        let scale = (2.0 / PI).sqrt() * nf.powi(3);
        let (fine, coarse) = if p * nf <= DIRECT_LIMIT {
            let norm = radial_norm(n, l);
            let k = n - l - 1;
            let a = (2 * l + 1) as f64;
            let integrand = |s: f64| {
                let x = 2.0 * s;
                norm * x.powi(l as i32) * laguerre(k, a, x).unwrap_or(f64::NAN) * spherical_bessel(l, p * nf * s)
            };
            (self.fine.integrate(integrand), self.coarse.integrate(integrand))
        } else {
            (self.rotated_integral(n, l, p * nf, &self.panel_fine), self.rotated_integral(n, l, p * nf, &self.panel_coarse))
        };
        let (fine, coarse) = (scale * fine, scale * coarse);
        Ok(HankelResult {
            value: (-I).powu(l) * fine,
            radial: fine,
            error_estimate: (fine - coarse).abs(),
        })
    }

    /// `∫₀^∞ s² e^{−s} q(s) j_l(as) ds` with `q(s) = N (2s)^l L_k^{(2l+1)}(2s)`.
    fn rotated_integral(&self, n: u32, l: u32, a: f64, panel: &QuadratureRule) -> f64 {
        let norm = radial_norm(n, l);
        let k = n - l - 1;
        let sup = (2 * l + 1) as f64;
        let q = |s: Complex64| norm * (2.0 * s).powu(l) * laguerre_complex(k, sup, 2.0 * s);
        // inner(t) = ∫ s² q(s) e^{−cs} ds = c^{−3} ∫ u² e^{−u} q(u/c) du, c = 1 − iat
        let inner = |t: f64| {
            let c = Complex64::new(1.0, -a * t);
            let mut acc = Complex64::new(0.0, 0.0);
            for (&u, &w) in self.rotated.nodes.iter().zip(&self.rotated.weights) {
                acc += w * q(u / c);
            }
            acc / (c * c * c)
        };
        // panel edges 0, 1/a, 2/a, 4/a, … , 1 on each side
        let mut edges = vec![0.0];
        let mut b = 1.0 / a;
        while b < 1.0 {
            edges.push(b);
            b *= 2.0;
        }
        edges.push(1.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for win in edges.windows(2) {
            let (lo, hi) = (win[0], win[1]);
            let half = 0.5 * (hi - lo);
            for (&x, &w) in panel.nodes.iter().zip(&panel.weights) {
                let t = lo + half * (x + 1.0);
                let pl = gegenbauer(l, 0.5, t).unwrap_or(f64::NAN);
                acc += half * w * pl * (inner(t) + if l % 2 == 0 { 1.0 } else { -1.0 } * inner(-t));
            }
        }
        (acc / (2.0 * I.powu(l))).re
    }
}

/// `L_k^{(a)}(z)` for complex argument by the three-term recurrence.
fn laguerre_complex(k: u32, a: f64, z: Complex64) -> Complex64 {
    let mut prev = Complex64::new(1.0, 0.0);
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - z;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + a - z) * cur - (jf + a) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// [`RadialHankel::transform`] with the default node count.
pub fn radial_hankel(n: u32, l: u32, p: f64) -> Result<HankelResult> {
    static DEFAULT: OnceLock<RadialHankel> = OnceLock::new();
    DEFAULT
        .get_or_init(|| RadialHankel::new(DEFAULT_HANKEL_NODES).expect("default rule"))
        .transform(n, l, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_closed_form() {
        for k in 0..40 {
            let p = 0.1 * k as f64;
            let got = radial_hankel(1, 0, p).unwrap();
            // ψ̃_100 = 2√2/π (1+p²)^{-2} and F_10 = √(4π) ψ̃_100
            let want = (4.0 * PI).sqrt() * 2.0 * 2f64.sqrt() / PI / (1.0 + p * p).powi(2);
            assert!((got.radial - want).abs() <= 1e-8 * want, "p={p}");
            assert!(got.value.im.abs() == 0.0);
        }
    }

    #[test]
    fn rotated_route_matches_closed_form() {
        // F_10(p) = √(4π)·2√2/π (1+p²)^{-2} far beyond the direct rule's range
        let hk = RadialHankel::new(DEFAULT_HANKEL_NODES).unwrap();
        for &p in &[4.5, 8.0, 16.0, 40.0, 100.0] {
            let got = hk.transform(1, 0, p).unwrap();
            let want = (4.0 * PI).sqrt() * 2.0 * 2f64.sqrt() / PI / (1.0 + p * p).powi(2);
            assert!((got.radial - want).abs() <= 1e-10 * want, "p={p} {} {want}", got.radial);
        }
        // both routes agree at the switch
        for (n, l) in [(3u32, 1u32), (5, 2), (6, 0)] {
            let p = DIRECT_LIMIT / n as f64;
            let direct = hk.transform(n, l, p).unwrap().radial;
            let rotated = hk.rotated_integral(n, l, p * n as f64, &hk.panel_fine) * (2.0 / PI).sqrt() * (n as f64).powi(3);
            assert!((direct - rotated).abs() <= 1e-10, "n={n} l={l} {direct} {rotated}");
        }
    }

    #[test]
    fn p_wave_vanishes_at_origin() {
        let v = radial_hankel(2, 1, 0.0).unwrap();
        assert_eq!(v.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(radial_hankel(2, 2, 0.5).is_err());
        assert!(radial_hankel(2, 1, -0.5).is_err());
    }
}
