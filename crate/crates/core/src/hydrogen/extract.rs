use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::genfunc::{momentum_kernel, position_kernel};
use super::{norm3, radial_norm};
use crate::error::{domain, index, Error, Result};
use crate::specfun::{ln_factorial, MonomialPair};

/// Which generating function to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenFuncSide {
    Position,
    Momentum,
}

/// Contour settings for the Cauchy extraction.
///
/// The `α` circle is not sampled. The `α^l` term is the only one of total
/// degree `2l` in `(ξ, η)`, so fixing `α` on its circle and reading off the
/// `ξ^{l+m} η^{l−m}` coefficient already isolates it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyConfig {
    /// Radii for `z`, `α`, `ξ`, `η`.
    pub radii: [f64; 4],
    /// Trapezoid points for `z`, `ξ`, `η`.
    pub points: [usize; 3],
    /// Relative agreement demanded between the base and the refined grid.
    pub tol: f64,
}

impl Default for CauchyConfig {
    fn default() -> Self {
        Self { radii: [0.4, 0.5, 0.7, 0.7], points: [64, 24, 24], tol: 1e-9 }
    }
}

impl CauchyConfig {
    fn refined(&self) -> Self {
        let [a, b, c] = self.points;
        Self { points: [2 * a, b + 8, c + 8], ..*self }
    }

    fn validate(&self) -> Result<()> {
        let [rz, ra, rx, ry] = self.radii;
        if !(rz > 0.0 && rz < 1.0) {
            return Err(domain(format!("z radius {rz} must lie in (0, 1)")));
        }
        if !(ra > 0.0 && rx > 0.0 && ry > 0.0) {
            return Err(domain("contour radii must be positive"));
        }
        if self.points.iter().any(|&p| p < 4) {
            return Err(domain("at least 4 trapezoid points per circle"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extraction {
    /// `φ_lm(∂_ξ) (1/n!)∂_zⁿ (1/l!)∂_αˡ G` at the origin.
    pub scaled: Complex64,
    /// `scaled · N_nl / √(4π/(2l+1))`; `None` when `l ≥ n`.
    pub wavefunction: Option<Complex64>,
    /// Relative change between the base and the refined grid.
    pub residual: f64,
}

/// Mixed Taylor coefficient of a generating function at a space point,
/// by trapezoid sums on circles in `z`, `ξ`, `η`.
///
/// `n0` fixes `δ = 1/n0`; the coefficient equals the scaled wavefunction only
/// when `n = n0`. States with `l ≥ n` are accepted and should come out as zero.
pub fn extract_coefficient(
    side: GenFuncSide,
    (n, l, m): (u32, u32, i32),
    n0: u32,
    point: [f64; 3],
    cfg: &CauchyConfig,
) -> Result<Extraction> {
    if n == 0 || n0 == 0 {
        return Err(domain("principal numbers must be >= 1"));
    }
    if m.unsigned_abs() > l {
        return Err(index(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
    }
    if point.iter().any(|v| !v.is_finite()) {
        return Err(domain("evaluation point must be finite"));
    }
    cfg.validate()?;
    let delta = 1.0 / n0 as f64;
    let (base, _) = cauchy_sum(side, (n, l, m), delta, point, cfg);
    let (fine, scale) = cauchy_sum(side, (n, l, m), delta, point, &cfg.refined());
    let diff = (fine - base).norm();
    let residual = diff / fine.norm().max(f64::MIN_POSITIVE);
    if diff > cfg.tol * fine.norm() + 1e3 * f64::EPSILON * scale {
        return Err(Error::Convergence { what: format!("Cauchy extraction of ({n},{l},{m})"), residual });
    }
    let p = (l as i32 + m) as u32;
    let q = (l as i32 - m) as u32;
    let scaled = fine * (0.5 * (ln_factorial(p) + ln_factorial(q))).exp();
    let wavefunction = (l < n).then(|| scaled * radial_norm(n, l) / (4.0 * PI / (2 * l + 1) as f64).sqrt());
    Ok(Extraction { scaled, wavefunction, residual })
}

/// Returns the raw coefficient and the mean magnitude of the summands, which
/// sets the round-off floor.
fn cauchy_sum(side: GenFuncSide, (n, l, m): (u32, u32, i32), delta: f64, point: [f64; 3], cfg: &CauchyConfig) -> (Complex64, f64) {
    let [rz, ra, rx, ry] = cfg.radii;
    let [nz, nx, ny] = cfg.points;
    let p = l as i32 + m;
    let q = l as i32 - m;
    let alpha = Complex64::new(ra, 0.0);
    let circle = |r: f64, k: usize, npts: usize| Complex64::from_polar(r, 2.0 * PI * k as f64 / npts as f64);

    // a⃗·v⃗ on the (ξ, η) grid, with the Cauchy weight ξ^{−p} η^{−q}
    let mut grid = Vec::with_capacity(nx * ny);
    for a in 0..nx {
        let xi = circle(rx, a, nx);
        for b in 0..ny {
            let eta = circle(ry, b, ny);
            let av = MonomialPair::new(xi, eta).null_vector().dot(point);
            grid.push((av, xi.powi(-p) * eta.powi(-q)));
        }
    }
    let rn = norm3(point);
    let r2 = rn * rn;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for j in 0..nz {
        let z = circle(rz, j, nz);
        let wz = z.powi(-(n as i32));
        let mut inner = Complex64::new(0.0, 0.0);
        for &(av, w) in &grid {
            let g = match side {
                GenFuncSide::Position => position_kernel(z, alpha, 2.0 * delta, rn, av),
                GenFuncSide::Momentum => momentum_kernel(z, alpha, delta, r2, av),
            };
            let t = g * w;
            mag += t.norm();
            inner += t;
        }
        acc += inner * wz;
    }
    let count = (nz * nx * ny) as f64;
    let norm = count * ra.powi(l as i32);
    let mag_scale = mag / count * rz.powi(-(n as i32)) / ra.powi(l as i32);
    (acc / norm, mag_scale)
}
