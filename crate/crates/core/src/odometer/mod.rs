//! The groups `G_A = ∪_k A^{-k} Z^d`, their exact truncations at each
//! prime, and the decision procedures for density, orbit equivalence,
//! conjugacy, isomorphism and continuous orbit equivalence of the
//! associated odometers.
//!
//! Every Yes and No carries a witness: a matrix, a prime/depth pair where
//! truncations differ, or a complete criterion. Answers that rest on the
//! truncation depth record it in `level`.

mod classify;
mod context;
mod decide;
mod presentation;
mod search;
mod truncation;
mod verdict;

pub use classify::classify;
pub use context::default_depth;
pub use decide::{conjugate, groups_equal, is_dense, orbit_equivalent, ttodo_fast_path, verify_witness};
pub use presentation::{level_lattice, OdometerPresentation};
pub use search::{cont_orbit_equivalent, intertwiners, isomorphic};
pub use truncation::{stable_intersection, truncation, truncation_via_levels, TruncationInvariant};
pub use verdict::{Answer, ClassificationReport, Config, Verdict, Witness};
