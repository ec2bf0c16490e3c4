//! Exact classification of Z^d-odometers defined by nonsingular integer
//! matrices.
//!
//! The crate is split into four layers:
//!
//! - [`exact`]: integer and rational matrices, Hermite normal forms, full-rank
//!   lattices in Q^d (dual, sum, intersection, containment) and coset tables.
//! - [`polyarith`]: integer polynomials, characteristic polynomials,
//!   factorization over Z, reduction modulo p and integer factorization.
//! - [`cocycle`]: 1-cocycles of the finite quotient actions Z^d/G, their
//!   integrals against the invariant measure and the explicit cocycle realizing
//!   a dual vector.
//! - [`odometer`]: the groups G_A, their prime-local truncations, and the
//!   conjugacy / isomorphism / continuous orbit equivalence / orbit
//!   equivalence decision procedures.

pub mod cocycle;
pub mod error;
pub mod exact;
pub mod odometer;
pub mod polyarith;

pub use error::{Error, Result};
pub use exact::{good_basis, CosetTable, FundamentalDomain, IntMatrix, Lattice, RatMatrix};
pub use odometer::{classify, Answer, ClassificationReport, Config, OdometerPresentation, TruncationInvariant, Verdict, Witness};
pub use polyarith::{charpoly, factor, FactorList, IntPolynomial, ModPPolynomial};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
