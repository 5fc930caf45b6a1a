use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{domain, Error, Result};
use crate::specfun::ln_gamma;

const MAX_NODES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    /// `∫₋₁¹ f(x) dx`
    Legendre,
    /// `∫₀^∞ x^a e^{−x} f(x) dx`
    Laguerre { alpha: f64 },
    /// `∫ e^{−x²} f(x) dx`
    Hermite,
    /// `∫₀^∞ f(p) dp` through `p = scale·tan(φ/2)`
    HalfLine { scale: f64 },
    /// `∫ f(θ, φ) dΩ` on the unit sphere
    Angular,
    /// `∫ f(χ, θ, φ) sin²χ sinθ dχ dθ dφ` on S³
    S3,
    /// `∫_{R^d} e^{−|u|²} f(u) d^d u`
    HermiteProduct { dim: usize },
}

/// Nodes and weights. Multi-dimensional rules store their nodes flattened,
/// `dim` coordinates per point.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub dim: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = (&[f64], f64)> {
        self.nodes.chunks_exact(self.dim).zip(self.weights.iter().copied())
    }

    /// Measure of the domain under the rule's weight function.
    pub fn total_weight(&self) -> f64 {
        pairwise_sum(&self.weights)
    }

    /// `Σ wᵢ f(xᵢ)` for one-dimensional rules.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        debug_assert_eq!(self.dim, 1);
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).collect();
        pairwise_sum(&terms)
    }

    /// `Σ wᵢ f(xᵢ)` for rules of any dimension.
    pub fn integrate_nd(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        let terms: Vec<f64> = self.points().map(|(x, w)| w * f(x)).collect();
        pairwise_sum(&terms)
    }
}

/// Pairwise (cascade) summation; plain accumulation below 10⁴ terms.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 10_000 {
        v.iter().sum()
    } else {
        let mid = v.len() / 2;
        pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
    }
}

fn check_size(npts: usize) -> Result<()> {
    if !(2..=MAX_NODES).contains(&npts) {
        return Err(Error::Size(format!("node count {npts} outside 2..={MAX_NODES}")));
    }
    Ok(())
}

/// Gauss–Legendre nodes on `[−1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(npts: usize) -> Result<QuadratureRule> {
    check_size(npts)?;
    let n = npts;
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule { kind: RuleKind::Legendre, dim: 1, nodes, weights })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Golub–Welsch: nodes are the eigenvalues of the Jacobi matrix. `off` holds
/// `b₁ … b_n`, one more than the matrix needs, so that the nodes can be polished
/// by Newton steps on `p_n` and the weights recomputed as Christoffel numbers
/// `1/Σ_{k<n} p_k(x)²`, which is more accurate than squaring eigenvector entries.
fn golub_welsch(diag: Vec<f64>, off: Vec<f64>, mu0: f64) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    debug_assert_eq!(off.len(), n);
    let mut jm = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        jm[(i, i)] = diag[i];
        if i + 1 < n {
            jm[(i, i + 1)] = off[i];
            jm[(i + 1, i)] = off[i];
        }
    }
    let eig = SymmetricEigen::new(jm);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| (eig.eigenvalues[k], mu0 * eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (x, w) in pairs.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = orthonormal_eval(&diag, &off, mu0, *x);
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *x -= step;
        }
        let (_, _, ln_sum) = orthonormal_eval(&diag, &off, mu0, *x);
        if ln_sum.is_finite() {
            *w = (-ln_sum).exp();
        }
    }
    pairs.into_iter().unzip()
}

// p_n(x), p_n'(x) (both up to a common positive factor) and ln Σ_{k<n} p_k(x)²
// for the orthonormal family of the Jacobi matrix; rescaled to avoid overflow
fn orthonormal_eval(diag: &[f64], off: &[f64], mu0: f64, x: f64) -> (f64, f64, f64) {
    const BIG: f64 = 1e150;
    let mut p_prev = 0.0;
    let mut p = 1.0 / mu0.sqrt();
    let mut d_prev = 0.0;
    let mut d = 0.0;
    let mut sum = 0.0;
    let mut ln_scale = 0.0;
    for k in 0..diag.len() {
        sum += p * p;
        let b_prev = if k == 0 { 0.0 } else { off[k - 1] };
        let p_next = ((x - diag[k]) * p - b_prev * p_prev) / off[k];
        let d_next = (p + (x - diag[k]) * d - b_prev * d_prev) / off[k];
        (p_prev, p) = (p, p_next);
        (d_prev, d) = (d, d_next);
        if p.abs() > BIG || d.abs() > BIG {
            p /= BIG;
            p_prev /= BIG;
            d /= BIG;
            d_prev /= BIG;
            sum /= BIG * BIG;
            ln_scale += BIG.ln();
        }
    }
    (p, d, sum.ln() + 2.0 * ln_scale)
}

/// Gauss–Laguerre rule for the weight `x^a e^{−x}` on `(0, ∞)`.
pub fn gauss_laguerre(npts: usize, a: f64) -> Result<QuadratureRule> {
    check_size(npts)?;
    if a <= -1.0 {
        return Err(domain(format!("Laguerre weight exponent a = {a} must exceed -1")));
    }
    let diag = (0..npts).map(|i| 2.0 * i as f64 + a + 1.0).collect();
    let off = (1..=npts).map(|i| (i as f64 * (i as f64 + a)).sqrt()).collect();
    let (nodes, weights) = golub_welsch(diag, off, ln_gamma(a + 1.0).exp());
    Ok(QuadratureRule { kind: RuleKind::Laguerre { alpha: a }, dim: 1, nodes, weights })
}

/// Gauss–Hermite rule for the weight `e^{−x²}`.
pub fn gauss_hermite(npts: usize) -> Result<QuadratureRule> {
    check_size(npts)?;
    let diag = vec![0.0; npts];
    let off = (1..=npts).map(|i| (i as f64 / 2.0).sqrt()).collect();
    let (mut nodes, weights) = golub_welsch(diag, off, PI.sqrt());
    // restore exact symmetry
    for i in 0..npts / 2 {
        let x = 0.5 * (nodes[npts - 1 - i] - nodes[i]);
        nodes[i] = -x;
        nodes[npts - 1 - i] = x;
    }
    if npts % 2 == 1 {
        nodes[npts / 2] = 0.0;
    }
    Ok(QuadratureRule { kind: RuleKind::Hermite, dim: 1, nodes, weights })
}

/// Rule for `∫₀^∞ f(p) dp` after `p = scale·tan(φ/2)`, Gauss–Legendre in φ.
/// Spectrally accurate for rational integrands decaying like a power of `p`.
pub fn half_line(npts: usize, scale: f64) -> Result<QuadratureRule> {
    if scale <= 0.0 {
        return Err(domain("half-line scale must be positive"));
    }
    let gl = gauss_legendre(npts)?;
    let (nodes, weights) = gl
        .nodes
        .iter()
        .zip(&gl.weights)
        .map(|(&x, &w)| {
            let phi = 0.5 * PI * (x + 1.0);
            let c = (0.5 * phi).cos();
            (scale * (0.5 * phi).tan(), w * 0.5 * PI * scale / (2.0 * c * c))
        })
        .unzip();
    Ok(QuadratureRule { kind: RuleKind::HalfLine { scale }, dim: 1, nodes, weights })
}

/// Product rule on the unit sphere: Gauss–Legendre in `cos θ`, uniform in φ.
/// Points are `(θ, φ)`.
pub fn angular_grid(n_theta: usize, n_phi: usize) -> Result<QuadratureRule> {
    let gl = gauss_legendre(n_theta)?;
    if n_phi == 0 {
        return Err(Error::Size("need at least one azimuthal node".into()));
    }
    let dphi = 2.0 * PI / n_phi as f64;
    let mut nodes = Vec::with_capacity(2 * n_theta * n_phi);
    let mut weights = Vec::with_capacity(n_theta * n_phi);
    for (&x, &w) in gl.nodes.iter().zip(&gl.weights) {
        for k in 0..n_phi {
            nodes.extend([x.acos(), k as f64 * dphi]);
            weights.push(w * dphi);
        }
    }
    Ok(QuadratureRule { kind: RuleKind::Angular, dim: 2, nodes, weights })
}

/// Product rule on S³ with measure `sin²χ sinθ dχ dθ dφ` (total `2π²`).
/// Gauss–Legendre in χ and in θ (angles, not cosines), uniform in φ.
/// Points are `(χ, θ, φ)`.
pub fn s3_grid(n_chi: usize, n_theta: usize, n_phi: usize) -> Result<QuadratureRule> {
    let gc = gauss_legendre(n_chi)?;
    let gt = gauss_legendre(n_theta)?;
    if n_phi == 0 {
        return Err(Error::Size("need at least one azimuthal node".into()));
    }
    let dphi = 2.0 * PI / n_phi as f64;
    let mut nodes = Vec::with_capacity(3 * n_chi * n_theta * n_phi);
    let mut weights = Vec::with_capacity(n_chi * n_theta * n_phi);
    for (&xc, &wc) in gc.nodes.iter().zip(&gc.weights) {
        let chi = 0.5 * PI * (xc + 1.0);
        let wchi = 0.5 * PI * wc * chi.sin().powi(2);
        for (&xt, &wt) in gt.nodes.iter().zip(&gt.weights) {
            let theta = 0.5 * PI * (xt + 1.0);
            let wth = 0.5 * PI * wt * theta.sin();
            for k in 0..n_phi {
                nodes.extend([chi, theta, k as f64 * dphi]);
                weights.push(wchi * wth * dphi);
            }
        }
    }
    Ok(QuadratureRule { kind: RuleKind::S3, dim: 3, nodes, weights })
}

/// Tensor-product Gauss–Hermite rule in `dim` dimensions.
pub fn hermite_product(npts: usize, dim: usize) -> Result<QuadratureRule> {
    if dim == 0 || npts.pow(dim as u32) > 50_000_000 {
        return Err(Error::Size(format!("{npts}^{dim} product nodes")));
    }
    let gh = gauss_hermite(npts)?;
    let total = npts.pow(dim as u32);
    let mut nodes = Vec::with_capacity(total * dim);
    let mut weights = Vec::with_capacity(total);
    let mut idx = vec![0usize; dim];
    for _ in 0..total {
        let mut w = 1.0;
        for &i in &idx {
            nodes.push(gh.nodes[i]);
            w *= gh.weights[i];
        }
        weights.push(w);
        for d in (0..dim).rev() {
            idx[d] += 1;
            if idx[d] < npts {
                break;
            }
            idx[d] = 0;
        }
    }
    Ok(QuadratureRule { kind: RuleKind::HermiteProduct { dim }, dim, nodes, weights })
}
