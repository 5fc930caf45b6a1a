use crate::error::{domain, Result};

/// Associated Laguerre polynomial `L_k^{(a)}(x)` in the standard normalization
/// `Σ_k t^k L_k^{(a)}(x) = (1 − t)^{−a−1} exp(−xt/(1 − t))`.
///
/// The older convention that carries an extra `(k + a)!` maps onto this one as
/// `L_old = (k + a)! · L_std`.
pub fn laguerre(k: u32, a: f64, x: f64) -> Result<f64> {
    if a <= -1.0 {
        return Err(domain(format!("Laguerre superscript a = {a} must exceed -1")));
    }
    if !x.is_finite() {
        return Err(domain("Laguerre argument must be finite"));
    }
    let mut prev = 1.0;
    if k == 0 {
        return Ok(prev);
    }
    let mut cur = 1.0 + a - x;
    for j in 1..k {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + a - x) * cur - (j + a) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Gegenbauer polynomial `C_m^{(a)}(x)`, generating function `(1 − 2xt + t²)^{−a}`.
pub fn gegenbauer(m: u32, a: f64, x: f64) -> Result<f64> {
    if a <= -0.5 {
        return Err(domain(format!("Gegenbauer order a = {a} must exceed -1/2")));
    }
    let mut prev = 1.0;
    if m == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * a * x;
    for j in 1..m {
        let j = j as f64;
        let next = (2.0 * x * (j + a) * cur - (j + 2.0 * a - 1.0) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// [`gegenbauer`] extended to negative degree, where it is defined as zero.
pub fn gegenbauer_ext(m: i64, a: f64, x: f64) -> Result<f64> {
    if m < 0 {
        if a <= -0.5 {
            return Err(domain(format!("Gegenbauer order a = {a} must exceed -1/2")));
        }
        return Ok(0.0);
    }
    gegenbauer(m as u32, a, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{binomial, gamma, ln_gamma};
    use proptest::prelude::*;

    // Explicit finite sums, independent of the recurrences above.
    fn laguerre_series(k: u32, a: f64, x: f64) -> f64 {
        (0..=k)
            .map(|i| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                let fact: f64 = (1..=i).map(|j| j as f64).product();
                sign * binomial(k as f64 + a, k - i) * x.powi(i as i32) / fact
            })
            .sum()
    }

    // explicit sum, together with the sum of magnitudes of its terms
    fn gegenbauer_series(m: u32, a: f64, x: f64) -> (f64, f64) {
        (0..=m / 2)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let ln = ln_gamma((m - k) as f64 + a)
                    - ln_gamma(a)
                    - ln_gamma(k as f64 + 1.0)
                    - ln_gamma((m - 2 * k) as f64 + 1.0);
                sign * ln.exp() * (2.0 * x).powi((m - 2 * k) as i32)
            })
            .fold((0.0, 0.0), |(s, a), t| (s + t, a + t.abs()))
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(0, 3.5, 7.0).unwrap(), 1.0);
        assert!((laguerre(1, 1.0, 2.0).unwrap() - 0.0).abs() < 1e-15);
        assert!((laguerre(2, 0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(laguerre(3, -1.0, 0.5).is_err());
        assert!(laguerre(3, 0.0, f64::NAN).is_err());
    }

    #[test]
    fn laguerre_at_zero_is_binomial() {
        for k in 0..12 {
            for a in [0.0, 0.5, 3.0] {
                let want = binomial(k as f64 + a, k);
                let got = laguerre(k, a, 0.0).unwrap();
                assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
            }
        }
    }

    #[test]
    fn laguerre_matches_series() {
        for k in 0..10 {
            for &a in &[0.0, 1.0, 2.5, 5.0] {
                for &x in &[0.0, 0.3, 1.7, 6.0] {
                    let want = laguerre_series(k, a, x);
                    let got = laguerre(k, a, x).unwrap();
                    assert!((got - want).abs() <= 1e-11 * want.abs().max(1.0), "k={k} a={a} x={x}");
                }
            }
        }
    }

    #[test]
    fn laguerre_recurrence_residual() {
        for k in 1..50u32 {
            for a in 0..=10 {
                let a = a as f64;
                for xi in 0..=25 {
                    let x = 2.0 * xi as f64;
                    let lm = laguerre(k - 1, a, x).unwrap();
                    let l0 = laguerre(k, a, x).unwrap();
                    let lp = laguerre(k + 1, a, x).unwrap();
                    let kf = k as f64;
                    let res = ((kf + 1.0) * lp - ((2.0 * kf + a + 1.0 - x) * l0 - (kf + a) * lm)).abs();
                    assert!(res <= 1e-12 * l0.abs().max(1.0) * (kf + a + x + 1.0), "k={k} a={a} x={x}");
                }
            }
        }
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer(0, 2.3, 0.4).unwrap(), 1.0);
        for &x in &[-0.7, 0.0, 0.25, 1.0] {
            let got = gegenbauer(2, 1.0, x).unwrap();
            assert!((got - (4.0 * x * x - 1.0)).abs() < 1e-14);
        }
        for m in 0..15u32 {
            for &a in &[0.5, 1.0, 2.5] {
                let want = gamma(m as f64 + 2.0 * a) / (gamma(m as f64 + 1.0) * gamma(2.0 * a));
                let got = gegenbauer(m, a, 1.0).unwrap();
                assert!((got - want).abs() <= 1e-12 * want);
            }
        }
        assert!(gegenbauer(2, -0.5, 0.1).is_err());
        assert_eq!(gegenbauer_ext(-1, 2.0, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn gegenbauer_matches_series() {
        for m in 0..16 {
            for &a in &[0.5, 1.0, 1.5, 4.0] {
                for &x in &[-0.9, -0.2, 0.0, 0.6, 1.0] {
                    let (want, mag) = gegenbauer_series(m, a, x);
                    let got = gegenbauer(m, a, x).unwrap();
                    let scale = mag.max(1.0);
                    assert!((got - want).abs() <= 1e-12 * scale, "m={m} a={a} x={x}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn gegenbauer_parity(m in 0u32..30, a in -0.45..8.0f64, x in -1.0..1.0f64) {
            let p = gegenbauer(m, a, x).unwrap();
            let q = gegenbauer(m, a, -x).unwrap();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((q - sign * p).abs() <= 1e-13 * p.abs().max(1e-300) + 1e-300);
        }
    }
}
