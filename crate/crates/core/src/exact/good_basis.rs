//! Bases of a finite-index subgroup `G ⊆ Z^d` containing a multiple of a
//! chosen standard basis vector.
//!
//! For nonsingular `M` and a column index `i` we produce a unimodular `P`
//! such that column `i` of `M·P` is `a_i·e_i` with `a_i ≥ 1`. The reduction
//! works one row at a time with the pairwise Euclidean step and recurses on a
//! `(d-1)`-dimensional block: for `i > 1` the first row is cleared and the
//! lower-right block is handled, for `i = 1` the last row is cleared and the
//! upper-left block is handled.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Returns `(P, a_i)`; `i` is 1-based.
pub fn good_basis(m: &IntMatrix, i: usize) -> Result<(IntMatrix, BigInt)> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let d = m.rows();
    if i == 0 || i > d {
        return Err(Error::IndexOutOfRange { index: i, dim: d });
    }
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let mut work = Work { m: m.clone(), p: IntMatrix::identity(d) };
    work.reduce(0, d, i - 1);
    let a = work.m.get(i - 1, i - 1).clone();
    debug_assert!(a.is_positive());
    Ok((work.p, a))
}

/// `M` and the accumulated column transform; every column operation is
/// mirrored on `P` so `M_current = M_original · P` throughout.
struct Work {
    m: IntMatrix,
    p: IntMatrix,
}

impl Work {
    fn swap(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.p.swap_cols(a, b);
    }

    fn negate(&mut self, c: usize) {
        self.m.negate_col(c);
        self.p.negate_col(c);
    }

    fn sub_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.m.sub_col_multiple(dst, src, q);
        self.p.sub_col_multiple(dst, src, q);
    }

    /// Works on the square block `[lo, lo+size)` (same range for rows and
    /// columns). `target` is the absolute index whose column must end up as
    /// a positive multiple of `e_target`.
    fn reduce(&mut self, lo: usize, size: usize, target: usize) {
        if size == 1 {
            if self.m.get(lo, lo).is_negative() {
                self.negate(lo);
            }
            return;
        }
        let hi = lo + size;
        if target > lo {
            self.clear_row(lo, lo, hi, lo);
            self.reduce(lo + 1, size - 1, target);
        } else {
            self.clear_row(hi - 1, lo, hi, hi - 1);
            self.reduce(lo, size - 1, target);
        }
    }

    /// Leaves row `row` with a single positive entry, in column `keep`, among
    /// columns `[lo, hi)`.
    fn clear_row(&mut self, row: usize, lo: usize, hi: usize, keep: usize) {
        loop {
            let nonzero: Vec<usize> = (lo..hi).filter(|&c| !self.m.get(row, c).is_zero()).collect();
            match nonzero.as_slice() {
                [] => unreachable!("nonsingular block has a zero row"),
                [only] => {
                    let only = *only;
                    self.swap(only, keep);
                    if self.m.get(row, keep).is_negative() {
                        self.negate(keep);
                    }
                    return;
                }
                [first, second, ..] => self.euclid_pair(row, *first, *second),
            }
        }
    }

    /// Euclidean reduction of two columns along `row` until one entry is 0.
    fn euclid_pair(&mut self, row: usize, mut c1: usize, mut c2: usize) {
        for c in [c1, c2] {
            if self.m.get(row, c).is_negative() {
                self.negate(c);
            }
        }
        loop {
            let a1 = self.m.get(row, c1).clone();
            let a2 = self.m.get(row, c2).clone();
            if a1.is_zero() || a2.is_zero() {
                return;
            }
            if a1 == a2 {
                self.sub_multiple(c2, c1, &BigInt::from(1));
                return;
            }
            if a1 < a2 {
                std::mem::swap(&mut c1, &mut c2);
                continue;
            }
            // a1 = k·a2 + a3 with 0 ≤ a3 < a2
            let k = a1.div_floor(&a2);
            self.sub_multiple(c1, c2, &k);
            std::mem::swap(&mut c1, &mut c2);
        }
    }
}
