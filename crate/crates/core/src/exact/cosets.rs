use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::lattice::Lattice;
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// One integer representative per coset of Z^d modulo an integral lattice.
#[derive(Clone, Debug)]
pub struct CosetTable {
    lattice: Lattice,
    reps: Vec<Vec<BigInt>>,
}

impl CosetTable {
    /// Builds a table from explicit representatives, checking that they hit
    /// every coset exactly once.
    pub fn new(lattice: Lattice, reps: Vec<Vec<BigInt>>) -> Result<Self> {
        let index = lattice.index_in_standard()?;
        if BigInt::from(reps.len()) != index {
            return Err(Error::DomainMismatch);
        }
        let n = reps.len();
        let mut seen = vec![false; n];
        for r in &reps {
            if r.len() != lattice.dim() {
                return Err(Error::DimensionMismatch { expected: lattice.dim(), found: r.len() });
            }
            let (idx, _) = lattice.reduce_integer(r);
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::DomainMismatch);
            }
        }
        Ok(CosetTable { lattice, reps })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn reps(&self) -> &[Vec<BigInt>] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Coset representatives in the HNF box `0 ≤ x_i < H_ii`, listed in
/// canonical coset-index order.
pub fn enumerate_cosets(lattice: &Lattice) -> Result<CosetTable> {
    if !lattice.is_integral() {
        return Err(Error::NonIntegralLattice);
    }
    let h = lattice.hnf_numerator();
    let d = lattice.dim();
    let radices: Vec<usize> = (0..d).map(|i| h.get(i, i).to_usize().expect("index fits in usize")).collect();
    let total: usize = radices.iter().product();
    let mut reps = Vec::with_capacity(total);
    for mut idx in 0..total {
        // digits of the mixed-radix index are the box coordinates; undo the
        // column reduction to get the actual representative
        let mut digits = vec![0usize; d];
        for i in (0..d).rev() {
            digits[i] = idx % radices[i];
            idx /= radices[i];
        }
        reps.push(digits.into_iter().map(BigInt::from).collect());
    }
    // a box point x satisfies 0 ≤ x_i < H_ii already, so it is its own
    // reduced representative
    Ok(CosetTable { lattice: lattice.clone(), reps })
}

/// Integer points of the half-open parallelepiped spanned by the columns of
/// `basis`, `{Σ t_j f_j : 0 ≤ t_j < 1} ∩ Z^d`.
#[derive(Clone, Debug)]
pub struct FundamentalDomain {
    basis: IntMatrix,
    adjugate: IntMatrix,
    det: BigInt,
    table: CosetTable,
}

impl FundamentalDomain {
    pub fn new(basis: &IntMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::NotSquare { rows: basis.rows(), cols: basis.cols() });
        }
        let det = basis.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let adjugate = basis.adjugate()?;
        let d = basis.rows();
        let lo: Vec<BigInt> = (0..d)
            .map(|i| basis.row(i).iter().filter(|v| v.is_negative()).sum())
            .collect();
        let hi: Vec<BigInt> = (0..d)
            .map(|i| basis.row(i).iter().filter(|v| v.is_positive()).sum())
            .collect();
        let abs_det = det.abs();
        let mut reps = Vec::new();
        let mut x = lo.clone();
        'outer: loop {
            if in_unit_cube(&adjugate, &det, &abs_det, &x) {
                reps.push(x.clone());
            }
            for i in (0..d).rev() {
                if x[i] < hi[i] {
                    x[i] += 1;
                    continue 'outer;
                }
                x[i] = lo[i].clone();
            }
            break;
        }
        let lattice = Lattice::from_int_basis(basis)?;
        let table = CosetTable::new(lattice, reps)?;
        Ok(FundamentalDomain { basis: basis.clone(), adjugate, det, table })
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn lattice(&self) -> &Lattice {
        self.table.lattice()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        in_unit_cube(&self.adjugate, &self.det, &self.det.abs(), x)
    }

    /// Unique `(k', g')` with `x = k' + g'`, `k'` in the domain and `g'` in
    /// the lattice: `g' = B·floor(B^{-1} x)`.
    pub fn split(&self, x: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let t_num = self.adjugate.mul_vec(x);
        let coeffs: Vec<BigInt> = t_num.iter().map(|v| v.div_floor(&self.det)).collect();
        let g = self.basis.mul_vec(&coeffs);
        let k = x.iter().zip(&g).map(|(a, b)| a - b).collect();
        (k, g)
    }
}

fn in_unit_cube(adj: &IntMatrix, det: &BigInt, abs_det: &BigInt, x: &[BigInt]) -> bool {
    // t = adj·x / det must satisfy 0 ≤ t_j < 1
    (0..adj.rows()).all(|j| {
        let mut v: BigInt = adj.row(j).iter().zip(x).map(|(a, b)| a * b).sum();
        if det.is_negative() {
            v = -v;
        }
        !v.is_negative() && &v < abs_det
    })
}

/// Shorthand for [`FundamentalDomain::new`] returning the bare table.
pub fn enumerate_parallelepiped(basis: &IntMatrix) -> Result<CosetTable> {
    Ok(FundamentalDomain::new(basis)?.table)
}
