//! Fixed inputs shared by the benchmarks.

use odolat::{IntMatrix, IntPolynomial};

/// The 4x4 pair with characteristic polynomial t^4 + t^2 + 9.
pub fn quartic_pair() -> (IntMatrix, IntMatrix) {
    let a = IntMatrix::from_rows(&[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![-9, 0, -1, 0]]);
    let b = IntMatrix::from_rows(&[vec![0, 1, -1, 0], vec![9, 0, 2, 1], vec![9, 0, 1, 1], vec![-18, -9, 7, -1]]);
    (a, b)
}

/// A dense `d`x`d` matrix with moderate entries; diagonally dominant, so
/// nonsingular.
pub fn dense_matrix(d: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> =
        (0..d).map(|i| (0..d).map(|j| ((i * 7 + j * 13 + 3) % 19) as i64 - 9 + if i == j { 60 } else { 0 }).collect()).collect();
    IntMatrix::from_rows(&rows)
}

/// (t^3 - 39t - 91)(t^4 + t^2 + 9)(2t^2 + 3t - 5)
pub fn product_polynomial() -> IntPolynomial {
    let f = IntPolynomial::from_i64s(&[-91, -39, 0, 1]);
    let g = IntPolynomial::from_i64s(&[9, 0, 1, 0, 1]);
    let h = IntPolynomial::from_i64s(&[-5, 3, 2]);
    &(&f * &g) * &h
}
