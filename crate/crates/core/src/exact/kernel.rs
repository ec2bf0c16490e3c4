use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// A Z-basis of `{x ∈ Z^n : C x = 0}` for an `m × n` integer matrix,
/// obtained by unimodular column operations on `C` stacked over `I_n`.
pub fn integer_kernel(c: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (m, n) = (c.rows(), c.cols());
    let mut w = IntMatrix::zeros(m + n, n);
    for i in 0..m {
        for j in 0..n {
            w.set(i, j, c.get(i, j).clone());
        }
    }
    for j in 0..n {
        w.set(m + j, j, BigInt::from(1));
    }
    let mut next = 0;
    for r in 0..m {
        if next == n {
            break;
        }
        loop {
            let pivot = (next..n)
                .filter(|&col| !w.get(r, col).is_zero())
                .min_by(|&a, &b| w.get(r, a).abs().cmp(&w.get(r, b).abs()));
            let Some(p) = pivot else { break };
            w.swap_cols(next, p);
            let mut clean = true;
            for col in next + 1..n {
                if w.get(r, col).is_zero() {
                    continue;
                }
                let q = w.get(r, col).div_floor(w.get(r, next));
                w.sub_col_multiple(col, next, &q);
                clean &= w.get(r, col).is_zero();
            }
            if clean {
                next += 1;
                break;
            }
        }
    }
    (next..n).map(|col| (m..m + n).map(|i| w.get(i, col).clone()).collect()).collect()
}

/// Pairwise size reduction: repeatedly subtracts the nearest-integer
/// multiple of one vector from another while that shortens it. Exact and
/// deterministic; not a full lattice reduction.
pub fn size_reduce(mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let dot = |a: &[BigInt], b: &[BigInt]| -> BigInt { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                let nj = dot(&basis[j], &basis[j]);
                if nj.is_zero() {
                    continue;
                }
                let num = dot(&basis[i], &basis[j]);
                // nearest integer to num / nj
                let q = (BigInt::from(2) * &num + &nj).div_floor(&(BigInt::from(2) * &nj));
                if q.is_zero() {
                    continue;
                }
                let cand: Vec<BigInt> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a - &q * b).collect();
                if dot(&cand, &cand) < dot(&basis[i], &basis[i]) {
                    basis[i] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            return basis;
        }
    }
}
