//! Column-style Hermite normal form.
//!
//! For a `d × n` integer matrix of rank `d` the column lattice has a unique
//! basis `H` that is lower triangular with positive diagonal and whose
//! entries to the left of the diagonal lie in `[0, H[i][i])`. Two bases span
//! the same lattice iff their normal forms are equal entry-wise.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// Column HNF of an integer matrix with full row rank. The result is square
/// (`rows × rows`); surplus columns reduce to zero and are dropped.
pub fn hnf(m: &IntMatrix) -> Result<IntMatrix> {
    let d = m.rows();
    let n = m.cols();
    if n < d {
        return Err(Error::SingularMatrix);
    }
    let mut w = m.clone();
    for i in 0..d {
        loop {
            // smallest nonzero |entry| in row i among columns i..n
            let pivot = (i..n)
                .filter(|&c| !w.get(i, c).is_zero())
                .min_by(|&a, &b| w.get(i, a).abs().cmp(&w.get(i, b).abs()));
            let Some(p) = pivot else {
                return Err(Error::SingularMatrix);
            };
            w.swap_cols(i, p);
            let mut done = true;
            for c in i + 1..n {
                if w.get(i, c).is_zero() {
                    continue;
                }
                let q = w.get(i, c).div_floor(w.get(i, i));
                w.sub_col_multiple(c, i, &q);
                if !w.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if w.get(i, i).is_negative() {
            w.negate_col(i);
        }
        let diag = w.get(i, i).clone();
        for j in 0..i {
            let q = w.get(i, j).div_floor(&diag);
            w.sub_col_multiple(j, i, &q);
        }
    }
    let mut out = IntMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..=i {
            out.set(i, j, w.get(i, j).clone());
        }
    }
    Ok(out)
}

/// Column HNF of a nonsingular rational matrix: `hnf(D·M) / D` for the
/// common denominator `D`.
pub fn hnf_rat(m: &RatMatrix) -> Result<RatMatrix> {
    let (num, den) = m.split_denominator();
    let h = hnf(&num)?;
    Ok(RatMatrix::from_int_over(&h, &den))
}

pub fn is_hnf(h: &IntMatrix) -> bool {
    let d = h.rows();
    if !h.is_square() {
        return false;
    }
    for i in 0..d {
        let diag = h.get(i, i);
        if !diag.is_positive() {
            return false;
        }
        for j in 0..d {
            let v = h.get(i, j);
            if j > i && !v.is_zero() {
                return false;
            }
            if j < i && (v.is_negative() || v >= diag) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    /// Brute force over unimodular 2×2 column transforms with bounded
    /// entries, returning every product already in normal form.
    fn brute_force_hnf_2x2(m: &[[i64; 2]; 2], bound: i64) -> Vec<[[i64; 2]; 2]> {
        let mut found = Vec::new();
        for a in -bound..=bound {
            for b in -bound..=bound {
                for c in -bound..=bound {
                    for d in -bound..=bound {
                        if (a * d - b * c).abs() != 1 {
                            continue;
                        }
                        let p = [
                            [m[0][0] * a + m[0][1] * c, m[0][0] * b + m[0][1] * d],
                            [m[1][0] * a + m[1][1] * c, m[1][0] * b + m[1][1] * d],
                        ];
                        if p[0][1] == 0 && p[0][0] > 0 && p[1][1] > 0 && p[1][0] >= 0 && p[1][0] < p[1][1]
                            && !found.contains(&p) {
                                found.push(p);
                            }
                    }
                }
            }
        }
        found
    }

    fn to_matrix(p: &[[i64; 2]; 2]) -> IntMatrix {
        IntMatrix::from_rows(&[p[0].to_vec(), p[1].to_vec()])
    }

    #[test]
    fn already_canonical() {
        let m = IntMatrix::diagonal(&[2, 3]);
        assert_eq!(hnf(&m).unwrap(), m);
    }

    #[test]
    fn unimodular_gives_identity() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(hnf(&m).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn matches_brute_force_oracle() {
        let oracle = brute_force_hnf_2x2(&[[2, 1], [0, 3]], 6);
        assert_eq!(oracle, vec![[[1, 0], [3, 6]]]);
        assert_eq!(hnf(&IntMatrix::from_rows(&[vec![2, 1], vec![0, 3]])).unwrap(), to_matrix(&oracle[0]));

        for m in [[[4, 6], [2, -3]], [[-3, 5], [7, 1]], [[6, 4], [9, 6 + 1]]] {
            let oracle = brute_force_hnf_2x2(&m, 8);
            assert_eq!(oracle.len(), 1, "oracle not unique for {m:?}");
            let got = hnf(&IntMatrix::from_rows(&[m[0].to_vec(), m[1].to_vec()])).unwrap();
            assert_eq!(got, to_matrix(&oracle[0]));
        }
    }

    #[test]
    fn singular_is_rejected() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(hnf(&m).unwrap_err(), Error::SingularMatrix);
    }

    #[test]
    fn wide_input_drops_redundant_columns() {
        let m = IntMatrix::from_rows(&[vec![2, 0, 3, 0], vec![0, 2, 0, 3]]);
        assert_eq!(hnf(&m).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn rational_hnf() {
        let m = RatMatrix::from_int_over(&IntMatrix::from_rows(&[vec![1, 1], vec![0, 2]]), &BigInt::from(2));
        let h = hnf_rat(&m).unwrap();
        assert_eq!(h, RatMatrix::from_int_over(&IntMatrix::from_rows(&[vec![1, 0], vec![0, 2]]), &BigInt::from(2)));
    }
}
