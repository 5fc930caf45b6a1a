use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{index, Result};

/// θ-part of `Y_lm` for `m ≥ 0`: `Y_lm(θ, φ) = P̄_l^m(cos θ) e^{imφ}`,
/// Condon–Shortley phase included.
pub fn normalized_legendre(l: u32, m: u32, x: f64) -> f64 {
    if m > l {
        return 0.0;
    }
    let s = (1.0 - x * x).max(0.0).sqrt();
    // P̄_m^m
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for k in 1..=m {
        let k = k as f64;
        pmm *= -((2.0 * k + 1.0) / (2.0 * k)).sqrt() * s;
    }
    if l == m {
        return pmm;
    }
    let mf = m as f64;
    let mut prev = pmm;
    let mut cur = x * (2.0 * mf + 3.0).sqrt() * pmm;
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let lp = lf - 1.0;
        let b = ((lp * lp - mf * mf) / (4.0 * lp * lp - 1.0)).sqrt();
        let next = a * (x * cur - b * prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Complex spherical harmonic `Y_lm(θ, φ)` with the Condon–Shortley phase.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    if m.unsigned_abs() > l {
        return Err(index(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
    }
    let am = m.unsigned_abs();
    let p = normalized_legendre(l, am, theta.cos());
    let y = Complex64::from_polar(p, am as f64 * phi);
    Ok(if m >= 0 {
        y
    } else if am % 2 == 0 {
        y.conj()
    } else {
        -y.conj()
    })
}

/// `Y_lm` at the direction of `v`; the north pole is used for `v = 0`.
pub fn spherical_harmonic_vec(l: u32, m: i32, v: [f64; 3]) -> Result<Complex64> {
    let (_, theta, phi) = to_spherical(v);
    spherical_harmonic(l, m, theta, phi)
}

/// Regular solid harmonic `|v|^l Y_lm(v̂)`.
pub fn solid_harmonic(l: u32, m: i32, v: [f64; 3]) -> Result<Complex64> {
    let (r, theta, phi) = to_spherical(v);
    let y = spherical_harmonic(l, m, theta, phi)?;
    Ok(if l == 0 { y } else { y * r.powi(l as i32) })
}

pub(crate) fn to_spherical(v: [f64; 3]) -> (f64, f64, f64) {
    let rho = v[0].hypot(v[1]);
    let r = rho.hypot(v[2]);
    let theta = rho.atan2(v[2]);
    let phi = v[1].atan2(v[0]);
    (r, theta, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre;
    use approx::assert_relative_eq;

    #[test]
    fn low_order_closed_forms() {
        let (t, p) = (0.83, -2.1);
        let y00 = spherical_harmonic(0, 0, t, p).unwrap();
        assert_relative_eq!(y00.re, 1.0 / (4.0 * PI).sqrt(), epsilon = 1e-15);
        let y10 = spherical_harmonic(1, 0, t, p).unwrap();
        assert_relative_eq!(y10.re, (3.0 / (4.0 * PI)).sqrt() * t.cos(), epsilon = 1e-15);
        let y11 = spherical_harmonic(1, 1, t, p).unwrap();
        let want = -Complex64::from_polar((3.0 / (8.0 * PI)).sqrt() * t.sin(), p);
        assert_relative_eq!((y11 - want).norm(), 0.0, epsilon = 1e-15);
        let y2m1 = spherical_harmonic(2, -1, t, p).unwrap();
        let want = Complex64::from_polar((15.0 / (8.0 * PI)).sqrt() * t.sin() * t.cos(), -p);
        assert_relative_eq!((y2m1 - want).norm(), 0.0, epsilon = 1e-14);
        assert!(spherical_harmonic(1, 2, t, p).is_err());
    }

    #[test]
    fn gram_matrix_is_identity() {
        let gl = gauss_legendre(24).unwrap();
        let nphi = 32;
        let mut basis = Vec::new();
        for l in 0..=6u32 {
            for m in -(l as i32)..=(l as i32) {
                basis.push((l, m));
            }
        }
        for (i, &(l1, m1)) in basis.iter().enumerate() {
            for &(l2, m2) in &basis[i..] {
                let mut acc = Complex64::new(0.0, 0.0);
                for (x, w) in gl.nodes.iter().zip(&gl.weights) {
                    let theta = x.acos();
                    for k in 0..nphi {
                        let phi = 2.0 * PI * k as f64 / nphi as f64;
                        let a = spherical_harmonic(l1, m1, theta, phi).unwrap();
                        let b = spherical_harmonic(l2, m2, theta, phi).unwrap();
                        acc += a.conj() * b * *w * (2.0 * PI / nphi as f64);
                    }
                }
                let want = if (l1, m1) == (l2, m2) { 1.0 } else { 0.0 };
                assert!((acc - want).norm() < 1e-10, "({l1},{m1}) ({l2},{m2}): {acc}");
            }
        }
    }

    #[test]
    fn solid_harmonic_at_origin() {
        assert_eq!(solid_harmonic(2, 1, [0.0; 3]).unwrap(), Complex64::new(0.0, 0.0));
        let y = solid_harmonic(0, 0, [0.0; 3]).unwrap();
        assert_relative_eq!(y.re, 1.0 / (4.0 * PI).sqrt(), epsilon = 1e-15);
    }
}
