//! Exact integer/rational linear algebra and lattice arithmetic.

mod cosets;
mod good_basis;
mod hnf;
mod kernel;
mod lattice;
mod matrix;

pub use cosets::{enumerate_cosets, enumerate_parallelepiped, CosetTable, FundamentalDomain};
pub use good_basis::good_basis;
pub use hnf::{hnf, hnf_rat, is_hnf};
pub use kernel::{integer_kernel, size_reduce};
pub use lattice::{pairing, Lattice};
pub use matrix::{IntMatrix, RatMatrix};
