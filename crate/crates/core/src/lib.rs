//! Hydrogen-atom wavefunctions in position and momentum space, built through
//! the quadratic R⁴ → R³ map and generating functions, together with the
//! Gegenbauer, hyperspherical and Clifford-matrix identities that surround the
//! construction.
//!
//! Every closed form in this crate is paired with an independent numerical
//! route (Gauss quadrature, Cauchy contour extraction, Monte Carlo or a direct
//! determinant) so that the identities can be checked rather than trusted.
//! [`verify`] runs those checks and collects them into a [`verify::Report`].
//!
//! Atomic units are used throughout (ħ = mₑ = e = 1, Z = 1).

pub mod clifford;
pub mod error;
pub mod hydrogen;
pub mod identities;
pub mod quadmaps;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use clifford::{CliffordMatrix, GaussianResult, GaussianMethod};
pub use hydrogen::{BoundState, FockPoint, GenFuncParams, PhaseConvention};
pub use quadmaps::CoordinateTuple;
pub use quadrature::{QuadratureRule, RuleKind};
pub use specfun::{HalfInt, MonomialPair, NullVector, QuantumNumbers};
pub use verify::{IdentityCase, Report, Suite, VerifyConfig};

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);
