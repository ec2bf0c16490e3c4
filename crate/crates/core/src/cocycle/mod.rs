//! 1-cocycles of the finite translation actions Z^d ↷ Z^d/G, their integral
//! `tau` against the uniform measure, and the explicit cocycle realizing a
//! given vector of the dual lattice.

#[allow(clippy::module_inception)]
mod cocycle;
mod realize;
mod system;
mod verify;

pub use cocycle::{Coboundary, Cocycle};
pub use realize::{
    boundary_layer, check_in_dual, cocycle_from_dual_vector, normalized_basis, verify_coordinate_sums, CoordinateSumCheck,
};
pub use system::{reduce_to_domain, FiniteLevelSystem};
pub use verify::{check_cocycle_identity, verify_cocycle_identity, Counterexample};
