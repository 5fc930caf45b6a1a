use std::sync::OnceLock;

const TABLE_LEN: usize = 256;

fn table() -> &'static [f64; TABLE_LEN] {
    static TABLE: OnceLock<[f64; TABLE_LEN]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; TABLE_LEN];
        for k in 1..TABLE_LEN {
            t[k] = t[k - 1] + (k as f64).ln();
        }
        t
    })
}

/// `ln(n!)`, tabulated for small `n`.
pub fn ln_factorial(n: u32) -> f64 {
    let n = n as usize;
    if n < TABLE_LEN {
        table()[n]
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

pub fn factorial(n: u32) -> f64 {
    if n < 171 {
        (1..=n).fold(1.0, |acc, k| acc * k as f64)
    } else {
        f64::INFINITY
    }
}

pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// Generalized binomial coefficient `C(x, k)` for real `x`.
pub fn binomial(x: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x - j as f64) / (j as f64 + 1.0))
}
