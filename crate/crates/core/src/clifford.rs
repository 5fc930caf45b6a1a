//! The block-recursive matrices `A_n`, their Clifford generators, and the
//! Gaussian integrals `∫ exp(α z̄ᵗ A_n z) dμ(z)` that produce Gegenbauer
//! generating functions.

use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::mc_gaussian_complex;
use crate::specfun::gegenbauer;


pub const MAX_LEVEL: u32 = 6;

type CMat = DMatrix<Complex64>;

/// `A_n` together with the parameters it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordMatrix {
    pub level: u32,
    pub x: Vec<f64>,
    pub entries: CMat,
}

impl CliffordMatrix {
    /// Side of the matrix, `2^{n−1}` (2 at level 1).
    pub fn side(&self) -> usize {
        self.entries.nrows()
    }

    /// `|x|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum()
    }

    /// The coefficient of the identity generator, `x_{2n}` (`x₃` at level 1).
    pub fn scalar_part(&self) -> f64 {
        *self.x.last().expect("non-empty parameter vector")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaussianMethod {
    Determinant,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianResult {
    pub value: Complex64,
    pub closed_form: Complex64,
    pub residual: f64,
    pub method: GaussianMethod,
    /// Statistical error for Monte Carlo results, zero otherwise.
    pub stderr: f64,
}

fn check_level(n: u32) -> Result<()> {
    if !(1..=MAX_LEVEL).contains(&n) {
        return Err(domain(format!("level n = {n} outside [1, {MAX_LEVEL}]")));
    }
    Ok(())
}

/// Number of parameters at level `n`: 3 for `n = 1`, `2n` otherwise.
pub fn param_count(n: u32) -> usize {
    if n == 1 {
        3
    } else {
        2 * n as usize
    }
}

// Recursive block with 2k parameters; size 2^{k-1}, the k = 1 seed being the scalar x₂ + ix₁.
fn recursive_block(x: &[f64]) -> CMat {
    let k = x.len() / 2;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    if k == 1 {
        return CMat::from_element(1, 1, c(x[1], x[0]));
    }
    let inner = recursive_block(&x[..2 * k - 2]);
    let h = inner.nrows();
    let (a, b) = (x[2 * k - 1], x[2 * k - 2]);
    let mut m = CMat::zeros(2 * h, 2 * h);
    for i in 0..h {
        m[(i, i)] = c(a, b);
        m[(h + i, h + i)] = c(a, -b);
    }
    m.view_mut((0, h), (h, h)).copy_from(&inner);
    m.view_mut((h, 0), (h, h)).copy_from(&(-inner.adjoint()));
    m
}

fn level_one(x: &[f64]) -> CMat {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    CMat::from_row_slice(2, 2, &[c(x[2], x[1]), c(0.0, x[0]), c(0.0, x[0]), c(x[2], -x[1])])
}

/// Build `A_n`.
///
/// Level 1 is the 2×2 matrix `x₃I + x₂Γ₂ + x₁Γ₁` acting on real variables.
/// Levels `n ≥ 2` follow the block recursion
/// `[[(x_{2n} + ix_{2n−1})I, A_{n−1}], [−A_{n−1}^†, (x_{2n} − ix_{2n−1})I]]`
/// started from the scalar `x₂ + ix₁`.
#[allow(non_snake_case)]
pub fn build_A(n: u32, x: &[f64]) -> Result<CliffordMatrix> {
    check_level(n)?;
    let want = param_count(n);
    if x.len() != want {
        return Err(Error::Dimension { expected: want, got: x.len() });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(domain("parameters must be finite"));
    }
    verified_gammas(n)?;
    let entries = if n == 1 { level_one(x) } else { recursive_block(x) };
    Ok(CliffordMatrix { level: n, x: x.to_vec(), entries })
}

/// `Γ_i = ∂A_n/∂x_i`, in parameter order; the last one is the identity.
pub fn gammas(n: u32) -> Result<Vec<CMat>> {
    check_level(n)?;
    let k = param_count(n);
    Ok((0..k)
        .map(|i| {
            let mut e = vec![0.0; k];
            e[i] = 1.0;
            if n == 1 {
                level_one(&e)
            } else {
                recursive_block(&e)
            }
        })
        .collect())
}

/// Largest violation of `Γ_i² = −I`, `{Γ_i, Γ_j} = 0` (i ≠ j, both non-identity)
/// and `Γ_last = I`.
pub fn clifford_defect(g: &[CMat]) -> f64 {
    let k = g.len();
    let s = g[0].nrows();
    let id = CMat::identity(s, s);
    let mut worst = (&g[k - 1] - &id).camax();
    for i in 0..k - 1 {
        worst = worst.max((&g[i] * &g[i] + &id).camax());
        for j in i + 1..k - 1 {
            worst = worst.max((&g[i] * &g[j] + &g[j] * &g[i]).camax());
        }
    }
    worst
}

fn verified_gammas(n: u32) -> Result<()> {
    static CHECKED: OnceLock<Vec<f64>> = OnceLock::new();
    let defects = CHECKED.get_or_init(|| (1..=MAX_LEVEL).map(|k| clifford_defect(&gammas(k).unwrap())).collect());
    let d = defects[n as usize - 1];
    if d != 0.0 {
        return Err(Error::Convergence { what: format!("Clifford relations at level {n}"), residual: d });
    }
    Ok(())
}

/// The 4×4 matrix printed for the octonion case, kept separately because its
/// off-diagonal blocks differ from the recursion while still generating a
/// Clifford representation.
pub fn a3_printed(x: &[f64]) -> Result<CMat> {
    if x.len() != 6 {
        return Err(Error::Dimension { expected: 6, got: x.len() });
    }
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let [x1, x2, x3, x4, x5, x6] = [x[0], x[1], x[2], x[3], x[4], x[5]];
    let o = c(0.0, 0.0);
    Ok(CMat::from_row_slice(
        4,
        4,
        &[
            c(x6, x5), o, c(-x1, x2), c(-x4, x3),
            o, c(x6, x5), c(-x4, -x3), c(x1, x2),
            c(x1, x2), c(x4, -x3), c(x6, -x5), o,
            c(x4, x3), c(-x1, x2), o, c(x6, -x5),
        ],
    ))
}

/// Exponent `e_n` in `det(I − αA_n) = (1 − 2αx_{2n} + α²|x|²)^{e_n}`.
pub fn det_power(n: u32) -> u32 {
    if n == 1 {
        1
    } else {
        1 << (n - 2)
    }
}

fn quadratic(a: &CliffordMatrix, alpha: Complex64) -> Complex64 {
    1.0 - 2.0 * alpha * a.scalar_part() + alpha * alpha * a.norm_sqr()
}

/// `det(I − αA_n)` by LU against the closed form.
pub fn det_identity(n: u32, x: &[f64], alpha: Complex64) -> Result<GaussianResult> {
    let a = build_A(n, x)?;
    let closed_form = quadratic(&a, alpha).powu(det_power(n));
    if closed_form.norm() < 1e-12 {
        return Err(Error::Singular(format!("det(I - alpha A_{n}) = {closed_form}")));
    }
    let m = CMat::identity(a.side(), a.side()) - a.entries.map(|e| e * alpha);
    let value = m.determinant();
    Ok(GaussianResult {
        value,
        closed_form,
        residual: (value - closed_form).norm(),
        method: GaussianMethod::Determinant,
        stderr: 0.0,
    })
}

/// Closed form of the Gaussian integral: `det(I − αA_n)^{−1}`, or
/// `det^{−1/2}` at level 1 where the variables are real.
pub fn bargmann_closed(n: u32, x: &[f64], alpha: Complex64) -> Result<Complex64> {
    let a = build_A(n, x)?;
    let q = quadratic(&a, alpha);
    if q.norm() < 1e-12 {
        return Err(Error::Singular(format!("pole: 1 - 2 alpha x + alpha^2 |x|^2 = {q}")));
    }
    Ok(if n == 1 { q.powf(-0.5) } else { q.powi(-(det_power(n) as i32)) })
}

/// Largest eigenvalue of the Hermitian part of `αA_n`, `Re(α)x_{2n} + |Im α| ρ`
/// with `ρ² = |x|² − x_{2n}²`.
pub fn hermitian_bound(a: &CliffordMatrix, alpha: Complex64) -> f64 {
    let s = a.scalar_part();
    alpha.re * s + alpha.im.abs() * (a.norm_sqr() - s * s).max(0.0).sqrt()
}

/// Monte Carlo estimate of `∫ exp(α z̄ᵗA_n z) dμ(z)` with the normalized
/// Gaussian measure (real `u ∈ R²` at level 1, complex `z ∈ C^{2^{n−1}}` above).
///
/// The estimator has finite variance only when twice the largest eigenvalue of
/// the Hermitian part of `αA_n` is below 1; otherwise an integrability error is
/// returned.
pub fn gaussian_mc(n: u32, x: &[f64], alpha: Complex64, samples: usize, seed: u64) -> Result<GaussianResult> {
    let a = build_A(n, x)?;
    if samples < 10_000 {
        return Err(Error::Size(format!("{samples} samples, need at least 10^4")));
    }
    let bound = hermitian_bound(&a, alpha);
    if 2.0 * bound >= 1.0 {
        return Err(Error::Integrability(format!(
            "Hermitian part of alpha A_{n} reaches {bound}; the estimator needs < 1/2"
        )));
    }
    let closed_form = bargmann_closed(n, x, alpha)?;
    let s = a.side();
    let m = a.entries.map(|e| e * alpha);
    let est = if n == 1 {
        mc_gaussian_complex(2, |u| {
            let q = u[0] * u[0] * m[(0, 0)] + u[0] * u[1] * (m[(0, 1)] + m[(1, 0)]) + u[1] * u[1] * m[(1, 1)];
            q.exp()
        }, samples, seed)
    } else {
        mc_gaussian_complex(2 * s, |u| {
            let mut q = Complex64::new(0.0, 0.0);
            for i in 0..s {
                let zi = Complex64::new(u[2 * i], -u[2 * i + 1]);
                let mut row = Complex64::new(0.0, 0.0);
                for j in 0..s {
                    let e = m[(i, j)];
                    if e != Complex64::new(0.0, 0.0) {
                        row += e * Complex64::new(u[2 * j], u[2 * j + 1]);
                    }
                }
                q += zi * row;
            }
            q.exp()
        }, samples, seed)
    };
    Ok(GaussianResult {
        value: est.estimate,
        closed_form,
        residual: (est.estimate - closed_form).norm(),
        method: GaussianMethod::MonteCarlo,
        stderr: est.stderr,
    })
}

/// `|bargmann_closed − Σ_{m<terms} αᵐ|x|ᵐ C_m^{(e)}(x_{2n}/|x|)|`, with
/// `e = 1/2` at level 1 and `2^{n−2}` above.
pub fn gegenbauer_series_check(n: u32, x: &[f64], alpha: Complex64, terms: usize) -> Result<f64> {
    let a = build_A(n, x)?;
    let closed = bargmann_closed(n, x, alpha)?;
    let r = a.norm_sqr().sqrt();
    if r == 0.0 {
        // only the m = 0 term survives
        let sum = if terms > 0 { 1.0 } else { 0.0 };
        return Ok((closed - sum).norm());
    }
    let order = if n == 1 { 0.5 } else { det_power(n) as f64 };
    let t = (a.scalar_part() / r).clamp(-1.0, 1.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pw = Complex64::new(1.0, 0.0);
    for m in 0..terms {
        sum += pw * gegenbauer(m as u32, order, t)?;
        pw *= alpha * r;
    }
    Ok((closed - sum).norm())
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quaternion_level() {
        let a = build_A(2, &[0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(a.entries, CMat::identity(2, 2));
        let x = [0.3, -1.2, 0.7, 2.5];
        let a = build_A(2, &x).unwrap();
        let want = CMat::from_row_slice(2, 2, &[c(2.5, 0.7), c(-1.2, 0.3), c(1.2, 0.3), c(2.5, -0.7)]);
        assert_eq!(a.entries, want);
        let g = gammas(2).unwrap();
        assert_eq!(g[2], CMat::from_row_slice(2, 2, &[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)]));
    }

    #[test]
    fn level_one_matrix() {
        let a = build_A(1, &[0.4, 0.5, 0.6]).unwrap();
        let want = CMat::from_row_slice(2, 2, &[c(0.6, 0.5), c(0.0, 0.4), c(0.0, 0.4), c(0.6, -0.5)]);
        assert_eq!(a.entries, want);
        assert!(build_A(1, &[0.0; 2]).is_err());
        assert!(build_A(3, &[0.0; 5]).is_err());
        assert!(build_A(7, &[0.0; 14]).is_err());
    }

    #[test]
    fn generators_anticommute() {
        for n in 1..=MAX_LEVEL {
            let g = gammas(n).unwrap();
            assert_eq!(g.len(), param_count(n));
            assert_eq!(g[0].nrows(), if n == 1 { 2 } else { 1 << (n - 1) });
            assert_eq!(clifford_defect(&g), 0.0, "n={n}");
        }
    }

    #[test]
    fn printed_octonion_matrix() {
        let x = [0.3, -0.4, 0.9, 0.2, -0.7, 1.1];
        let p = a3_printed(&x).unwrap();
        let r = build_A(3, &x).unwrap().entries;
        // same diagonal blocks, different off-diagonal blocks
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(p[(i, j)], r[(i, j)]);
                assert_eq!(p[(i + 2, j + 2)], r[(i + 2, j + 2)]);
            }
        }
        assert_ne!(p, r);
        // still a Clifford representation with the same determinant law
        let g: Vec<CMat> = (0..6)
            .map(|i| {
                let mut e = [0.0; 6];
                e[i] = 1.0;
                a3_printed(&e).unwrap()
            })
            .collect();
        assert_eq!(clifford_defect(&g), 0.0);
        let alpha = c(0.12, -0.05);
        let det = (CMat::identity(4, 4) - p.map(|e| e * alpha)).determinant();
        let r2: f64 = x.iter().map(|v| v * v).sum();
        let want = (1.0 - 2.0 * alpha * x[5] + alpha * alpha * r2).powu(2);
        assert!((det - want).norm() < 1e-13);
    }

    #[test]
    fn determinant_examples() {
        let r = det_identity(2, &[0.0, 0.0, 0.0, 1.0], c(0.3, 0.0)).unwrap();
        assert!((r.value - c(0.49, 0.0)).norm() < 1e-15);
        assert!(r.residual < 1e-15);
        for n in 1..=MAX_LEVEL {
            let x = vec![0.37; param_count(n)];
            let r = det_identity(n, &x, c(0.0, 0.0)).unwrap();
            assert_eq!(r.value, c(1.0, 0.0));
            assert_eq!(r.closed_form, c(1.0, 0.0));
        }
        assert!(matches!(det_identity(2, &[0.0, 0.0, 0.0, 1.0], c(1.0, 0.0)), Err(Error::Singular(_))));
    }

    #[test]
    fn determinant_law_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=MAX_LEVEL {
            for _ in 0..40 {
                let x: Vec<f64> = (0..param_count(n)).map(|_| rng.random_range(-1.0..1.0)).collect();
                let r: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                let mag = rng.random_range(0.0..0.5) / (1.0 + r);
                let alpha = Complex64::from_polar(mag, rng.random_range(0.0..6.3));
                let g = det_identity(n, &x, alpha).unwrap();
                assert!(g.residual <= 1e-11 * g.closed_form.norm(), "n={n} {g:?}");
            }
        }
    }

    #[test]
    fn normality() {
        let x = [0.1, 0.2, -0.3, 0.4, 0.5, -0.6, 0.7, 0.8, 0.9, -1.0];
        let a = build_A(5, &x).unwrap();
        let r2 = a.norm_sqr();
        let d = &a.entries * a.entries.adjoint() - CMat::identity(16, 16).map(|e| e * r2);
        assert!(d.camax() < 1e-12);
    }

    #[test]
    fn closed_forms() {
        let alpha = c(0.25, 0.0);
        let v = bargmann_closed(2, &[0.0, 0.0, 0.0, 1.0], alpha).unwrap();
        let geo: f64 = (0..200).map(|m| (m + 1) as f64 * 0.25f64.powi(m)).sum();
        assert!((v.re - geo).abs() < 1e-12);
        let x = [0.3, 0.4, 0.5];
        let v = bargmann_closed(1, &x, alpha).unwrap();
        let want = 1.0 / (1.0 - 2.0 * 0.25 * 0.5 + 0.0625 * 0.5f64).sqrt();
        assert!((v.re - want).abs() < 1e-14);
        let x = [0.1, -0.2, 0.3, 0.1, 0.2, 0.6];
        let v = bargmann_closed(3, &x, alpha).unwrap();
        let r2: f64 = x.iter().map(|t| t * t).sum();
        assert!((v.re - (1.0 - 0.5 * 0.6 + 0.0625 * r2).powi(-2)).abs() < 1e-13);
    }

    #[test]
    fn monte_carlo_agrees() {
        let r = gaussian_mc(2, &[0.0, 0.0, 0.0, 0.5], c(0.3, 0.0), 200_000, 11).unwrap();
        assert!(r.residual < 4.0 * r.stderr, "{r:?}");
        let r = gaussian_mc(3, &[0.1, -0.2, 0.15, 0.05, -0.1, 0.2], c(0.2, 0.0), 200_000, 5).unwrap();
        assert!(r.residual < 4.0 * r.stderr, "{r:?}");
        let r = gaussian_mc(1, &[0.3, 0.2, 0.4], c(0.3, 0.1), 200_000, 9).unwrap();
        assert!(r.residual < 4.0 * r.stderr, "{r:?}");
        let r = gaussian_mc(4, &[0.3; 8], c(0.0, 0.0), 10_000, 9).unwrap();
        assert!((r.value - 1.0).norm() < 1e-15);
    }

    #[test]
    fn monte_carlo_rejects() {
        assert!(matches!(gaussian_mc(2, &[0.0, 0.0, 0.0, 2.0], c(0.3, 0.0), 20_000, 1), Err(Error::Integrability(_))));
        assert!(matches!(gaussian_mc(2, &[0.0; 4], c(0.3, 0.0), 100, 1), Err(Error::Size(_))));
    }

    #[test]
    fn series_examples() {
        let chi: f64 = 0.8;
        let x = [chi.sin() * 0.6, chi.sin() * 0.8, chi.cos()];
        assert!(gegenbauer_series_check(1, &x, c(0.4, 0.0), 80).unwrap() < 1e-12);
        let x = [0.2, -0.4, 0.5, (1.0f64 - 0.45).sqrt()];
        assert!(gegenbauer_series_check(2, &x, c(0.4, 0.0), 80).unwrap() < 1e-10);
        let x = [0.1, 0.2, 0.3, 0.1, 0.2, 0.4];
        let closed = bargmann_closed(3, &x, c(0.3, 0.1)).unwrap();
        assert_eq!(gegenbauer_series_check(3, &x, c(0.3, 0.1), 0).unwrap(), closed.norm());
        assert!(gegenbauer_series_check(3, &x, c(0.3, 0.1), 120).unwrap() < 1e-12);
    }

    proptest! {
        #[test]
        fn linear_in_parameters(x in proptest::collection::vec(-3.0..3.0f64, 8), y in proptest::collection::vec(-3.0..3.0f64, 8)) {
            let s: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            let lhs = build_A(4, &s).unwrap().entries;
            let rhs = build_A(4, &x).unwrap().entries + build_A(4, &y).unwrap().entries;
            prop_assert_eq!(lhs, rhs);
        }
    }
}
