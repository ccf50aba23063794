//! Exact bigraded characters of sl2 fusion products.
//!
//! Three independent routes to the same `(q, z)`-character: degreewise
//! linear algebra on graded ideal quotients of `C[e_0, ..., e_{n-1}]`, a dual
//! model of symmetric polynomials with diagonal conditions, and closed
//! q-series formulas. A fusion-product construction and a functional model
//! supply further cross-checks.
//!
//! The algorithms are generic over [`scalar::Scalar`]; the aliases below fix
//! the exact rational field used everywhere in practice.

pub mod cyclic;
pub mod dualmodel;
pub mod funcmodel;
pub mod fusion;
pub mod ideals;
pub mod poly;
pub mod qchar;
pub mod qkernel;
pub mod scalar;
pub mod verify;

pub use num_rational::BigRational;

/// Exact rational scalar.
pub type Rat = BigRational;
/// Dense matrix over [`Rat`].
pub type QMatrix = qkernel::Matrix<Rat>;
/// Row space over [`Rat`] in reduced echelon form.
pub type QSubspace = qkernel::Subspace<Rat>;
/// Polynomial in the `e_i` over [`Rat`].
pub type QEPoly = poly::EPoly<Rat>;
/// Polynomial in auxiliary variables over [`Rat`].
pub type QMultiPoly = poly::MultiPoly<Rat>;

pub use qchar::CharTable;
