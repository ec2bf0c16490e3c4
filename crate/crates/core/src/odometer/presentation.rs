use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Lattice};
use crate::polyarith::{charpoly, primes, IntPolynomial};

/// A nonsingular integer matrix `A` with the data attached to `G_A`: its
/// characteristic polynomial, determinant, prime set `P`, the primes `P'`
/// where `h_A ≢ t^d`, and `t_p` for each `p ∈ P`.
#[derive(Clone, Debug)]
pub struct OdometerPresentation {
    a: IntMatrix,
    charpoly: IntPolynomial,
    det: BigInt,
    primes: BTreeSet<BigInt>,
    exceptional: BTreeSet<BigInt>,
    t: BTreeMap<BigInt, usize>,
}

impl OdometerPresentation {
    pub fn new(a: &IntMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
        }
        let det = a.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let d = a.rows();
        let h = charpoly(a)?;
        let primes: BTreeSet<BigInt> = primes::factorize(&det).into_keys().collect();
        let t: BTreeMap<BigInt, usize> = primes
            .iter()
            .map(|p| (p.clone(), h.reduce_mod_p(p).zero_root_multiplicity()))
            .collect();
        let exceptional = t.iter().filter(|(_, &tp)| tp < d).map(|(p, _)| p.clone()).collect();
        Ok(OdometerPresentation { a: a.clone(), charpoly: h, det, primes, exceptional, t })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn charpoly(&self) -> &IntPolynomial {
        &self.charpoly
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    /// Prime divisors of `det A`.
    pub fn primes(&self) -> &BTreeSet<BigInt> {
        &self.primes
    }

    /// Primes of `det A` modulo which `h_A` is not `t^d`.
    pub fn exceptional_primes(&self) -> &BTreeSet<BigInt> {
        &self.exceptional
    }

    /// `t_p` for `p ∈ P`.
    pub fn t_values(&self) -> &BTreeMap<BigInt, usize> {
        &self.t
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs().is_one()
    }
}

/// `A^{-k} Z^d`.
pub fn level_lattice(a: &IntMatrix, k: u32) -> Result<Lattice> {
    let inv = a.pow(k).inverse()?;
    Lattice::from_basis(inv)
}
