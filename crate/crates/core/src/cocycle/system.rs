use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{enumerate_cosets, CosetTable, FundamentalDomain, Lattice};

/// The finite action of Z^d on Z^d/G by translation, for an integral lattice
/// `G` of finite index.
#[derive(Clone, Debug)]
pub struct FiniteLevelSystem {
    cosets: CosetTable,
    index: usize,
}

impl FiniteLevelSystem {
    pub fn new(lattice: &Lattice) -> Result<Self> {
        let cosets = enumerate_cosets(lattice)?;
        let index = cosets.len();
        Ok(FiniteLevelSystem { cosets, index })
    }

    pub fn lattice(&self) -> &Lattice {
        self.cosets.lattice()
    }

    pub fn dim(&self) -> usize {
        self.lattice().dim()
    }

    pub fn cosets(&self) -> &CosetTable {
        &self.cosets
    }

    /// `[Z^d : G]`.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Canonical representative of coset number `idx`.
    pub fn rep(&self, idx: usize) -> &[BigInt] {
        &self.cosets.reps()[idx]
    }

    /// Coset number of an integer vector.
    pub fn coset_of(&self, x: &[BigInt]) -> usize {
        self.lattice().reduce_integer(x).0
    }

    /// Coset number of `rep(idx) + n`, i.e. the action of `n`.
    pub fn act(&self, idx: usize, n: &[BigInt]) -> usize {
        let y: Vec<BigInt> = self.rep(idx).iter().zip(n).map(|(a, b)| a + b).collect();
        self.coset_of(&y)
    }

    /// Coset number of `rep(idx) + e_j`, or `- e_j` when `negative`.
    pub fn step(&self, idx: usize, j: usize, negative: bool) -> usize {
        let mut y = self.rep(idx).to_vec();
        if negative {
            y[j] -= 1;
        } else {
            y[j] += 1;
        }
        self.coset_of(&y)
    }
}

/// Unique decomposition `x = k' + g'` with `k'` in the fundamental domain
/// and `g'` in the lattice.
pub fn reduce_to_domain(
    system: &FiniteLevelSystem,
    domain: &FundamentalDomain,
    x: &[BigInt],
) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    if domain.lattice() != system.lattice() {
        return Err(Error::DomainMismatch);
    }
    if x.len() != system.dim() {
        return Err(Error::DimensionMismatch { expected: system.dim(), found: x.len() });
    }
    Ok(domain.split(x))
}

pub(crate) fn to_i64s(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}
