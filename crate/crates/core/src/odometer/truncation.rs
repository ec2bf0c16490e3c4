//! Exact finite views of `G_A`: the intersections `G_A ∩ N^{-1} Z^d`.
//!
//! The chain `A^{-k} Z^d ∩ N^{-1} Z^d` increases with `k` inside the finite
//! interval `[Z^d, N^{-1} Z^d]`, and since `A` maps `N^{-1} Z^d` into itself
//! the chain is constant from the first `k` where it pauses. The main route
//! works with duals, `(A^T)^k Z^d + N Z^d`, whose generators can be kept
//! reduced modulo `N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{hnf, IntMatrix, Lattice};
use crate::polyarith::primes::is_prime;

use super::presentation::level_lattice;

/// `G_A ∩ p^{-j} Z^d`, with the step `k_stab` at which the chain
/// `A^{-k} Z^d ∩ p^{-j} Z^d` was first seen to pause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationInvariant {
    pub p: BigInt,
    pub j: u32,
    pub lattice: Lattice,
    pub k_stab: u32,
}

impl TruncationInvariant {
    /// `[lattice : Z^d]`.
    pub fn index(&self) -> BigInt {
        self.lattice.index_of(&Lattice::standard(self.lattice.dim())).expect("contains Z^d")
    }
}

pub fn truncation(a: &IntMatrix, p: &BigInt, j: u32) -> Result<TruncationInvariant> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let (lattice, k_stab) = stable_intersection(a, &p.pow(j))?;
    Ok(TruncationInvariant { p: p.clone(), j, lattice, k_stab })
}

/// `G_A ∩ N^{-1} Z^d` for any `N ≥ 1`, and the pause step.
pub fn stable_intersection(a: &IntMatrix, n: &BigInt) -> Result<(Lattice, u32)> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let d = a.rows();
    if a.det() == BigInt::from(0) {
        return Err(Error::SingularMatrix);
    }
    let at = a.transpose().map_mod(n);
    let n_id = IntMatrix::identity(d).scale(n);
    let mut x = IntMatrix::identity(d).map_mod(n);
    let mut prev = hnf(&x.hconcat(&n_id)?)?;
    let mut k = 0u32;
    loop {
        x = (&at * &x).map_mod(n);
        let next = hnf(&x.hconcat(&n_id)?)?;
        if next == prev {
            break;
        }
        prev = next;
        k += 1;
    }
    Ok((Lattice::from_int_basis(&prev)?.dual(), k))
}

/// Same intersection computed level by level with rational lattices; kept
/// as an independent check of [`stable_intersection`].
pub fn truncation_via_levels(a: &IntMatrix, n: &BigInt) -> Result<(Lattice, u32)> {
    let d = a.rows();
    let r = Lattice::scaled_standard(d, &BigRational::new(BigInt::one(), n.clone()))?;
    let mut prev = level_lattice(a, 0)?.intersect(&r)?;
    let mut k = 0u32;
    loop {
        let next = level_lattice(a, k + 1)?.intersect(&r)?;
        if next == prev {
            return Ok((prev, k));
        }
        prev = next;
        k += 1;
    }
}

/// `p^{-j} Z^d`.
pub(crate) fn p_power_lattice(d: usize, p: &BigInt, j: u32) -> Lattice {
    Lattice::scaled_standard(d, &BigRational::new(BigInt::one(), p.pow(j))).expect("nonzero scale")
}

/// Smallest `N` with `N·M` integral.
pub(crate) fn denominator_lcm(entries: &[BigRational]) -> BigInt {
    entries.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
}
