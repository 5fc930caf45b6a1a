use crate::specfun::gamma;

/// Spherical Bessel function of the first kind `j_l(x)`.
///
/// Power series for `|x| ≤ 1`, upward recurrence for `|x| ≥ l`, and Miller's
/// downward recurrence normalized against `j₀` or `j₁` in between.
pub fn spherical_bessel(l: u32, x: f64) -> f64 {
    if x < 0.0 {
        let v = spherical_bessel(l, -x);
        return if l % 2 == 0 { v } else { -v };
    }
    if x == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    if x <= 1.0 {
        return series(l, x);
    }
    let j0 = x.sin() / x;
    if l == 0 {
        return j0;
    }
    let j1 = (j0 - x.cos()) / x;
    if x >= l as f64 {
        let (mut prev, mut cur) = (j0, j1);
        for k in 1..l {
            let next = (2 * k + 1) as f64 / x * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    miller(l, x, j0, j1)
}

fn series(l: u32, x: f64) -> f64 {
    let mut lead = 1.0;
    for k in 1..=l {
        lead *= x / (2 * k + 1) as f64;
    }
    let y = -0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        term *= y / (k as f64 * (2 * l + 2 * k + 1) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn miller(l: u32, x: f64, j0: f64, j1: f64) -> f64 {
    let start = l + 30 + (2.0 * (l as f64).sqrt()) as u32 + x as u32;
    let mut next = 0.0;
    let mut cur = 1e-30;
    let mut at_l = 0.0;
    let mut f1 = 0.0;
    let mut k = start;
    while k > 0 {
        // f_{k-1} = (2k+1)/x f_k - f_{k+1}
        let prev = (2 * k + 1) as f64 / x * cur - next;
        next = cur;
        cur = prev;
        k -= 1;
        if k == l {
            at_l = cur;
        }
        if k == 1 {
            f1 = cur;
        }
        if cur.abs() > 1e200 {
            cur *= 1e-200;
            next *= 1e-200;
            at_l *= 1e-200;
            f1 *= 1e-200;
        }
    }
    let f0 = cur;
    if j0.abs() >= j1.abs() {
        at_l * j0 / f0
    } else {
        at_l * j1 / f1
    }
}

/// `(x/2)^{−ν} J_ν(x)`, an entire function of `x` for `ν > −1`.
///
/// Summed from the power series, which is accurate for `|x| ≲ 10`.
pub fn reduced_bessel_j(nu: f64, x: f64) -> f64 {
    let y = -0.25 * x * x;
    let mut term = 1.0 / gamma(nu + 1.0);
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= y / (kf * (kf + nu));
        sum += term;
        if term.abs() < 1e-18 * sum.abs() && kf > y.abs().sqrt() {
            break;
        }
    }
    sum
}

/// Bessel function `J_ν(x)` for `x ≥ 0`, `ν > −1`, moderate `x`.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    (0.5 * x).powf(nu) * reduced_bessel_j(nu, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_forms() {
        assert_eq!(spherical_bessel(0, 0.0), 1.0);
        assert_eq!(spherical_bessel(3, 0.0), 0.0);
        for &x in &[1e-6f64, 0.3, 0.99, 1.0, 1.01, 2.5, 7.0, 31.0] {
            let j0 = x.sin() / x;
            // the closed form cancels badly for tiny x
            let j1 = if x > 1e-3 { x.sin() / (x * x) - x.cos() / x } else { x / 3.0 - x.powi(3) / 30.0 };
            let j2 = (3.0 / (x * x) - 1.0) * x.sin() / x - 3.0 * x.cos() / (x * x);
            assert!((spherical_bessel(0, x) - j0).abs() < 1e-14, "x={x}");
            assert!((spherical_bessel(1, x) - j1).abs() < 1e-14, "x={x}");
            if x > 1e-3 {
                assert!((spherical_bessel(2, x) - j2).abs() < 1e-12, "x={x}");
            }
        }
    }

    #[test]
    fn regimes_agree_with_series() {
        // the small-argument series is exact in exact arithmetic; compare the
        // recurrences against it at the branch boundaries
        for l in 0..30u32 {
            for &x in &[1.0 + 1e-9, 1.5, 3.0, 6.0] {
                let got = spherical_bessel(l, x);
                let want = series(l, x);
                assert!((got - want).abs() <= 1e-12 * want.abs().max(1e-300) + 1e-280, "l={l} x={x} {got} {want}");
            }
        }
    }

    #[test]
    fn cross_product_wronskian() {
        // j_l(x) y_{l-1}(x) - j_{l-1}(x) y_l(x) = 1/x² with y from the closed forms
        // is awkward; use the three-term identity instead at large order
        for l in 1..40u32 {
            for &x in &[0.5, 2.0, 11.0, 45.0] {
                let lhs = spherical_bessel(l - 1, x) + spherical_bessel(l + 1, x);
                let rhs = (2 * l + 1) as f64 / x * spherical_bessel(l, x);
                assert!((lhs - rhs).abs() <= 1e-11 * lhs.abs().max(rhs.abs()).max(1e-300), "l={l} x={x}");
            }
        }
    }

    #[test]
    fn half_integer_bessel_matches_spherical() {
        for l in 0..5u32 {
            for &x in &[0.1, 1.0, 3.3, 5.0] {
                let j = bessel_j(l as f64 + 0.5, x);
                let want = (2.0 * x / PI).sqrt() * spherical_bessel(l, x);
                assert!((j - want).abs() < 1e-13, "l={l} x={x}");
            }
        }
        assert!((bessel_j(0.0, 2.404825557695773)).abs() < 1e-14);
        assert_eq!(reduced_bessel_j(1.5, 0.0), 1.0 / gamma(2.5));
    }
}
