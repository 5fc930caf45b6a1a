use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::specfun::MonomialPair;
use crate::I;

/// Expansion parameters shared by the position and momentum generating functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenFuncParams {
    pub z: Complex64,
    pub alpha: Complex64,
    pub pair: MonomialPair,
    /// Regulator, only read by [`genfunc_momentum_regulated`].
    pub beta: f64,
}

impl GenFuncParams {
    pub fn new(z: Complex64, alpha: Complex64, pair: MonomialPair) -> Result<Self> {
        let p = Self { z, alpha, pair, beta: 0.0 };
        p.validate()?;
        Ok(p)
    }

    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        self.beta = beta;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z.norm() < 1.0) {
            return Err(domain(format!("|z| = {} must be < 1", self.z.norm())));
        }
        if !(self.beta >= 0.0) {
            return Err(domain(format!("beta = {} must be >= 0", self.beta)));
        }
        Ok(())
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0) {
        return Err(domain(format!("delta = {delta} must be positive")));
    }
    Ok(())
}

/// Position-space generating function with `ω = 2δ`:
/// `z/(1−z)² exp[−ωr(1+z)/(2(1−z)) + αωz(a⃗·r⃗)/(2(1−z)²)]`.
pub fn genfunc_position(params: &GenFuncParams, delta: f64, r: [f64; 3]) -> Result<Complex64> {
    params.validate()?;
    check_delta(delta)?;
    let ar = params.pair.null_vector().dot(r);
    Ok(position_kernel(params.z, params.alpha, 2.0 * delta, super::norm3(r), ar))
}

#[inline]
pub(super) fn position_kernel(z: Complex64, alpha: Complex64, omega: f64, r: f64, ar: Complex64) -> Complex64 {
    let w = 1.0 - z;
    let w2 = w * w;
    z / w2 * (-omega * r * (1.0 + z) / (2.0 * w) + alpha * omega * z * ar / (2.0 * w2)).exp()
}

fn momentum_denominator(params: &GenFuncParams, delta: f64, p: [f64; 3]) -> Complex64 {
    let z = params.z;
    let p2 = p.iter().map(|v| v * v).sum::<f64>();
    let ap = params.pair.null_vector().dot(p);
    let s = delta * (1.0 + z) + params.beta * (1.0 - z);
    s * s + (1.0 - z) * (1.0 - z) * p2 + 2.0 * params.alpha * I * delta * z * ap
}

fn nonsingular(d: Complex64) -> Result<Complex64> {
    if !d.is_finite() || d.norm() < 1e-300 {
        return Err(Error::Singular(format!("generating-function denominator {d}")));
    }
    Ok(d)
}

/// `(2/√(2π)) z / [(δ(1+z) + β(1−z))² + (1−z)²p² + 2αiδz a⃗·p⃗]`.
pub fn genfunc_momentum_regulated(params: &GenFuncParams, delta: f64, p: [f64; 3]) -> Result<Complex64> {
    params.validate()?;
    check_delta(delta)?;
    let d = nonsingular(momentum_denominator(params, delta, p))?;
    Ok(2.0 / (2.0 * PI).sqrt() * params.z / d)
}

/// Same expression with no check on the sign of `β`, so that a central
/// difference can straddle `β = 0`.
pub(crate) fn regulated_unchecked(params: &GenFuncParams, delta: f64, p: [f64; 3]) -> Complex64 {
    2.0 / (2.0 * PI).sqrt() * params.z / momentum_denominator(params, delta, p)
}

/// Central difference `−∂G/∂β` at `β = 0` with step `h`.
pub fn beta_derivative(params: &GenFuncParams, delta: f64, p: [f64; 3], h: f64) -> Result<Complex64> {
    params.validate()?;
    check_delta(delta)?;
    let up = regulated_unchecked(&GenFuncParams { beta: h, ..*params }, delta, p);
    let dn = regulated_unchecked(&GenFuncParams { beta: -h, ..*params }, delta, p);
    Ok(-(up - dn) / (2.0 * h))
}

/// `(4δ/√(2π)) z(1−z²) / [(δ(1+z))² + (1−z)²p² + 2αiδz a⃗·p⃗]²`. The regulator is ignored.
pub fn genfunc_momentum(params: &GenFuncParams, delta: f64, p: [f64; 3]) -> Result<Complex64> {
    params.validate()?;
    check_delta(delta)?;
    let unreg = GenFuncParams { beta: 0.0, ..*params };
    let d = nonsingular(momentum_denominator(&unreg, delta, p))?;
    let z = params.z;
    Ok(4.0 * delta / (2.0 * PI).sqrt() * z * (1.0 - z * z) / (d * d))
}

#[inline]
pub(super) fn momentum_kernel(z: Complex64, alpha: Complex64, delta: f64, p2: f64, ap: Complex64) -> Complex64 {
    let s = delta * (1.0 + z);
    let w = 1.0 - z;
    let d = s * s + w * w * p2 + 2.0 * alpha * I * delta * z * ap;
    4.0 * delta / (2.0 * PI).sqrt() * z * (1.0 - z * z) / (d * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params() -> GenFuncParams {
        GenFuncParams::new(c(0.3, 0.2), c(0.4, -0.1), MonomialPair::new(c(0.5, 0.1), c(-0.2, 0.6))).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(GenFuncParams::new(c(1.0, 0.0), c(0.0, 0.0), MonomialPair::zero()).is_err());
        assert!(params().with_beta(-0.1).is_err());
        assert!(genfunc_position(&params(), 0.0, [1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn vanishes_at_zero_z() {
        let p = GenFuncParams { z: c(0.0, 0.0), ..params() };
        assert_eq!(genfunc_position(&p, 0.5, [1.0, 2.0, 3.0]).unwrap(), c(0.0, 0.0));
        assert_eq!(genfunc_momentum(&p, 0.5, [1.0, 2.0, 3.0]).unwrap(), c(0.0, 0.0));
        assert_eq!(genfunc_momentum_regulated(&p, 0.5, [1.0, 2.0, 3.0]).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn reductions_without_null_vector() {
        let z = c(0.25, -0.3);
        let p = GenFuncParams::new(z, c(0.0, 0.0), MonomialPair::zero()).unwrap();
        let r = [0.4, -1.1, 0.7];
        let rn = super::super::norm3(r);
        let want = z / (1.0 - z).powu(2) * (-0.5 * rn * (1.0 + z) / (1.0 - z)).exp();
        assert!((genfunc_position(&p, 0.5, r).unwrap() - want).norm() < 1e-15);

        let d: f64 = 0.5;
        let p2 = rn * rn;
        let want = 2.0 / (2.0 * PI).sqrt() * z / ((d * (1.0 + z)).powu(2) + (1.0 - z).powu(2) * p2);
        assert!((genfunc_momentum_regulated(&p, d, r).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn beta_derivative_gives_momentum_genfunc() {
        let p = params();
        let mom = [0.3, -0.8, 0.5];
        for &delta in &[1.0, 0.5, 1.0 / 3.0] {
            let deriv = beta_derivative(&p, delta, mom, 1e-4).unwrap();
            let want = genfunc_momentum(&p, delta, mom).unwrap();
            assert!((deriv - want).norm() <= 1e-7 * want.norm(), "delta={delta}");
        }
    }

    #[test]
    fn kernels_match_public_forms() {
        let p = params();
        let r = [0.2, 0.9, -0.4];
        let a = p.pair.null_vector().dot(r);
        let k = position_kernel(p.z, p.alpha, 1.0, super::super::norm3(r), a);
        assert!((k - genfunc_position(&p, 0.5, r).unwrap()).norm() < 1e-15);
        let k = momentum_kernel(p.z, p.alpha, 0.5, r.iter().map(|v| v * v).sum(), a);
        assert!((k - genfunc_momentum(&p, 0.5, r).unwrap()).norm() < 1e-15);
    }
}
