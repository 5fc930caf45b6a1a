use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

const CHUNK: usize = 1 << 15;

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate<T> {
    pub estimate: T,
    pub stderr: f64,
    pub samples: usize,
}

#[derive(Clone, Copy)]
struct Welford {
    n: f64,
    mean: Complex64,
    m2: f64,
}

impl Welford {
    fn new() -> Self {
        Self { n: 0.0, mean: Complex64::new(0.0, 0.0), m2: 0.0 }
    }

    fn push(&mut self, x: Complex64) {
        self.n += 1.0;
        let d = x - self.mean;
        self.mean += d / self.n;
        self.m2 += (d.conj() * (x - self.mean)).re;
    }

    // Chan et al. pairwise combination
    fn merge(self, o: Welford) -> Welford {
        if o.n == 0.0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Welford {
            n,
            mean: self.mean + d * (o.n / n),
            m2: self.m2 + o.m2 + d.norm_sqr() * self.n * o.n / n,
        }
    }

    fn stderr(&self) -> f64 {
        if self.n < 2.0 {
            0.0
        } else {
            (self.m2 / (self.n - 1.0) / self.n).sqrt()
        }
    }
}

fn run<F>(dim: usize, samples: usize, seed: u64, f: F) -> Welford
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Welford> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut acc = Welford::new();
            let mut u = vec![0.0; dim];
            for _ in 0..count {
                for x in u.iter_mut() {
                    let g: f64 = rng.sample(StandardNormal);
                    *x = g * std::f64::consts::FRAC_1_SQRT_2;
                }
                acc.push(f(&u));
            }
            acc
        })
        .collect();
    parts.into_iter().fold(Welford::new(), Welford::merge)
}

/// Monte Carlo estimate of `∫ f(u) π^{−d/2} e^{−|u|²} d^d u`.
///
/// Samples come from a ChaCha stream per fixed-size chunk, and the chunk
/// statistics are merged in chunk order, so the result depends only on
/// `(seed, samples)` and not on the thread count.
pub fn mc_gaussian<F>(dim: usize, integrand: F, samples: usize, seed: u64) -> McEstimate<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let w = run(dim, samples, seed, |u| Complex64::new(integrand(u), 0.0));
    McEstimate { estimate: w.mean.re, stderr: w.stderr(), samples }
}

/// Complex-valued variant of [`mc_gaussian`]; the standard error is that of
/// the modulus, `√((σ²_re + σ²_im)/N)`.
pub fn mc_gaussian_complex<F>(dim: usize, integrand: F, samples: usize, seed: u64) -> McEstimate<Complex64>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let w = run(dim, samples, seed, integrand);
    McEstimate { estimate: w.mean, stderr: w.stderr(), samples }
}
