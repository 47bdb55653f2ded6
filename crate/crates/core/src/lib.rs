//! Exact arithmetic for Grassmannian BGG computations.
//!
//! The crate is `no_std` (it only needs `alloc`) and is organised bottom-up:
//!
//! - [`partition`], [`schur`], [`lr`]: the cohomology ring of `Gr(k, q)` in the
//!   Schubert basis, plus a stable (untruncated) mode for symbolic `q`.
//! - [`poly`], [`series`], [`symchern`]: truncated total-Chern-class series,
//!   symbolic powers and Chern classes of symmetric powers.
//! - [`bgg`]: `c(F)`, the vanishing-pattern sweep and the `g_λ` polynomials.
//! - [`linalg`], [`complex`], [`models`]: higher-rank derivative complexes
//!   over explicit Hodge data and their homology.
//! - [`bounds`]: closed-form Hodge-number inequalities.
//!
//! Every coefficient is an exact rational (or a rational polynomial in the
//! symbols `h`, `q`); nothing in here uses floating point.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bgg;
pub mod bounds;
pub mod coeff;
pub mod complex;
pub mod error;
pub mod linalg;
pub mod lr;
pub mod models;
pub mod partition;
pub mod poly;
pub mod schur;
pub mod series;
pub mod symchern;

pub use coeff::Coeff;
pub use error::{Error, Result};
pub use partition::Partition;
pub use poly::{CoefPoly, Poly};
pub use schur::{GrassmannianContext, SchubertExpr, Width};
pub use series::GradedSeries;

/// Arbitrary-precision rational number used for every exact coefficient.
pub type Rational = num_rational::BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
