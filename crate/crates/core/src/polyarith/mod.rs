//! Integer polynomials, characteristic polynomials, factorization over Z and
//! the prime-local data `P(A)`, `P'(A)` and `t_p(A)`.

mod charpoly;
mod factor;
mod modp;
mod poly;
pub mod primes;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

pub use charpoly::{charpoly, eval_matrix};
pub use factor::{factor, factor_with_seed, FactorList};
pub use modp::ModPPolynomial;
pub use poly::IntPolynomial;

use crate::error::{Error, Result};
use crate::exact::IntMatrix;

/// Multiplicity of 0 as a root of `charpoly(A) mod p`.
pub fn t_p(a: &IntMatrix, p: &BigInt) -> Result<usize> {
    if !primes::is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(charpoly(a)?.reduce_mod_p(p).zero_root_multiplicity())
}

/// Prime divisors of `det A`.
pub fn prime_set(a: &IntMatrix) -> Result<BTreeSet<BigInt>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let det = a.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(primes::factorize(&det).into_keys().collect())
}

/// Primes `p | det A` with `charpoly(A) ≢ t^d (mod p)`.
pub fn prime_set_exceptional(a: &IntMatrix) -> Result<BTreeSet<BigInt>> {
    let d = a.rows();
    let h = charpoly(a)?;
    Ok(prime_set(a)?
        .into_iter()
        .filter(|p| h.reduce_mod_p(p).zero_root_multiplicity() < d)
        .collect())
}
