//! Deterministic quadrature rules, the radial Hankel transform used as the
//! Fourier oracle, and seeded Monte Carlo over Gaussian measures.
//!
//! Default node counts per consumer:
//!
//! | consumer                                | rule                         | nodes |
//! |-----------------------------------------|------------------------------|-------|
//! | radial Hankel transform                 | Gauss–Laguerre, `a = 2`      | 320   |
//! | position-space overlaps                 | Gauss–Laguerre, `a = 0`      | 200   |
//! | momentum-space norms, Parseval          | Legendre on the half line    | 400   |
//! | integral representation of `C_m^{(a)}`  | Gauss–Laguerre, `a = l + 1`  | 160   |
//! | S³ orthonormality, triple-D integrals   | Legendre in angle × uniform  | 48    |
//! | lifted R⁴ integrals                     | product Gauss–Hermite        | 28⁴   |

mod hankel;
mod montecarlo;
mod rules;

pub use hankel::{radial_hankel, HankelResult, RadialHankel, DEFAULT_HANKEL_NODES};
pub use montecarlo::{mc_gaussian, mc_gaussian_complex, McEstimate};
pub use rules::{
    angular_grid, gauss_hermite, gauss_laguerre, gauss_legendre, half_line, hermite_product,
    pairwise_sum, s3_grid, QuadratureRule, RuleKind,
};
