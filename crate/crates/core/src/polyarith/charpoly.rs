use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};
use crate::exact::IntMatrix;

/// Characteristic polynomial `det(tI - A)` by Faddeev–LeVerrier. Every
/// division by `k` is exact over Z.
pub fn charpoly(a: &IntMatrix) -> Result<IntPolynomial> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let d = a.rows();
    let mut coeffs = vec![BigInt::zero(); d + 1];
    coeffs[d] = BigInt::one();
    // M_0 = 0, c_d = 1; M_k = A M_{k-1} + c_{d-k+1} I; c_{d-k} = -tr(A M_k)/k
    let mut m = IntMatrix::zeros(d, d);
    for k in 1..=d {
        let mut next = a * &m;
        for i in 0..d {
            let v = next.get(i, i) + &coeffs[d - k + 1];
            next.set(i, i, v);
        }
        m = next;
        let am = a * &m;
        let tr: BigInt = (0..d).map(|i| am.get(i, i).clone()).sum();
        let (q, r) = tr.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[d - k] = -q;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Evaluates `h(A)` as a matrix (Horner).
pub fn eval_matrix(h: &IntPolynomial, a: &IntMatrix) -> IntMatrix {
    let d = a.rows();
    let mut acc = IntMatrix::zeros(d, d);
    for c in h.coeffs().iter().rev() {
        acc = &acc * a;
        for i in 0..d {
            let v = acc.get(i, i) + c;
            acc.set(i, i, v);
        }
    }
    acc
}
