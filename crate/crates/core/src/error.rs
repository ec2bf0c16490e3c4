use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry count {found} does not match shape {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, found: usize },
    #[error("lattice basis is not integral")]
    NonIntegralLattice,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("coset table does not belong to this lattice")]
    DomainMismatch,
    #[error("vector is not in the dual lattice: <f_{basis_index}, h> = {pairing} is not an integer")]
    NotInDual { basis_index: usize, pairing: String },
    #[error("generator table is not a cocycle: commutation fails at coset {coset} for generators e_{first}, e_{second}")]
    NotACocycle { coset: usize, first: usize, second: usize },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("fast path not applicable: {0}")]
    NotApplicable(String),
    #[error("report violates the implication chain: {0}")]
    InconsistentReport(String),
}

pub type Result<T> = std::result::Result<T, Error>;
