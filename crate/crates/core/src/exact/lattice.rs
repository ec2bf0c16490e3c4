use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hnf::hnf;
use super::matrix::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// A full-rank subgroup of Q^d, given by a basis whose columns are the basis
/// vectors.
///
/// The canonical form is kept as `(H, D)` with `H` an integer column HNF and
/// `D > 0` such that the lattice is `H/D · Z^d` and `gcd(content(H), D) = 1`.
/// Equality and hashing go through the canonical form only.
#[derive(Clone)]
pub struct Lattice {
    basis: RatMatrix,
    hnf: IntMatrix,
    den: BigInt,
}

impl Lattice {
    pub fn from_basis(basis: RatMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::NotSquare { rows: basis.rows(), cols: basis.cols() });
        }
        let (num, den) = basis.split_denominator();
        let (hnf, den) = canonicalize(&num, den)?;
        Ok(Lattice { basis, hnf, den })
    }

    pub fn from_int_basis(basis: &IntMatrix) -> Result<Self> {
        Self::from_basis(basis.to_rat())
    }

    /// Lattice spanned by the columns of a `d × n` integer matrix over `den`.
    /// Columns may be linearly dependent as long as they span Q^d.
    pub fn from_generators(gens: &IntMatrix, den: &BigInt) -> Result<Self> {
        let (hnf, den) = canonicalize(gens, den.clone())?;
        let basis = RatMatrix::from_int_over(&hnf, &den);
        Ok(Lattice { basis, hnf, den })
    }

    /// Z^d.
    pub fn standard(d: usize) -> Self {
        Self::from_int_basis(&IntMatrix::identity(d)).expect("identity is nonsingular")
    }

    /// `r·Z^d` for nonzero rational `r`.
    pub fn scaled_standard(d: usize, r: &BigRational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Self::from_basis(RatMatrix::identity(d).scale(r))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.hnf.rows()
    }

    /// The basis the lattice was built from.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    /// Canonical column HNF as a rational matrix.
    pub fn hnf(&self) -> RatMatrix {
        RatMatrix::from_int_over(&self.hnf, &self.den)
    }

    /// Integer part of the canonical form: the lattice is `hnf_numerator / denominator`.
    pub fn hnf_numerator(&self) -> &IntMatrix {
        &self.hnf
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Covolume `|det|` of any basis.
    pub fn covolume(&self) -> BigRational {
        let num: BigInt = (0..self.dim()).map(|i| self.hnf.get(i, i).clone()).product();
        BigRational::new(num, num_traits::pow(self.den.clone(), self.dim()))
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// `[Z^d : L]` for an integral lattice.
    pub fn index_in_standard(&self) -> Result<BigInt> {
        if !self.is_integral() {
            return Err(Error::NonIntegralLattice);
        }
        Ok((0..self.dim()).map(|i| self.hnf.get(i, i).clone()).product())
    }

    /// `[self : sub]` for `sub ⊆ self`.
    pub fn index_of(&self, sub: &Lattice) -> Result<BigInt> {
        if !self.contains(sub)? {
            return Err(Error::DomainMismatch);
        }
        Ok((sub.covolume() / self.covolume()).to_integer())
    }

    fn check_dim(&self, other: &Lattice) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    /// `{x : <k, x> ∈ Z for all k ∈ L}`, with basis the inverse transpose.
    pub fn dual(&self) -> Lattice {
        let inv = self.hnf().inverse().expect("lattice basis is nonsingular");
        Lattice::from_basis(inv.transpose()).expect("inverse is nonsingular")
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_dim(other)?;
        let den = self.den.lcm(&other.den);
        let a = self.hnf.scale(&(&den / &self.den));
        let b = other.hnf.scale(&(&den / &other.den));
        Lattice::from_generators(&a.hconcat(&b)?, &den)
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        self.check_dim(other)?;
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// True iff `other ⊆ self`, decided by integrality of `B_self^{-1} B_other`.
    pub fn contains(&self, other: &Lattice) -> Result<bool> {
        self.check_dim(other)?;
        let inv = self.hnf().inverse()?;
        Ok((&inv * &other.hnf()).is_integral())
    }

    pub fn contains_vector(&self, v: &[BigRational]) -> bool {
        assert_eq!(v.len(), self.dim());
        let inv = self.hnf().inverse().expect("nonsingular");
        inv.mul_vec(v).iter().all(|x| x.is_integer())
    }

    /// `T·L` for a nonsingular rational `T`.
    pub fn transform(&self, t: &RatMatrix) -> Result<Lattice> {
        if t.rows() != self.dim() || t.cols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: t.rows() });
        }
        Lattice::from_basis(t * &self.hnf())
    }

    /// Canonical coset index of an integer vector modulo an integral lattice
    /// (mixed radix over the HNF diagonal), together with the reduced
    /// representative in the box `0 ≤ x_i < H_ii`.
    pub fn reduce_integer(&self, x: &[BigInt]) -> (usize, Vec<BigInt>) {
        debug_assert!(self.is_integral());
        let d = self.dim();
        let mut v = x.to_vec();
        let mut idx = 0usize;
        for i in 0..d {
            let diag = self.hnf.get(i, i);
            let q = v[i].div_floor(diag);
            if !q.is_zero() {
                for (r, vr) in v.iter_mut().enumerate().skip(i) {
                    *vr -= self.hnf.get(r, i) * &q;
                }
            }
            let radix: usize = diag.try_into().expect("coset index fits in usize");
            let digit: usize = (&v[i]).try_into().expect("reduced coordinate fits in usize");
            idx = idx * radix + digit;
        }
        (idx, v)
    }
}

fn canonicalize(num: &IntMatrix, den: BigInt) -> Result<(IntMatrix, BigInt)> {
    let h = hnf(num)?;
    let g = h.entries().iter().fold(den.clone(), |acc, x| acc.gcd(x));
    if g.is_one() {
        return Ok((h, den));
    }
    let data = h.entries().iter().map(|x| x / &g).collect();
    Ok((IntMatrix::new(h.rows(), h.cols(), data)?, den / g))
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.hnf == other.hnf
    }
}

impl Eq for Lattice {}

impl Hash for Lattice {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.hnf.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "Lattice({})", self.hnf)
        } else {
            write!(f, "Lattice({} / {})", self.hnf, self.den)
        }
    }
}

/// Inner product of an integer vector with a rational vector.
pub fn pairing(k: &[BigInt], h: &[BigRational]) -> BigRational {
    k.iter()
        .zip(h)
        .fold(BigRational::zero(), |acc, (a, b)| acc + b * BigRational::from_integer(a.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn int_lattice(rows: &[Vec<i64>]) -> Lattice {
        Lattice::from_int_basis(&IntMatrix::from_rows(rows)).unwrap()
    }

    #[test]
    fn standard_is_self_dual() {
        for d in 1..=4 {
            assert_eq!(Lattice::standard(d).dual(), Lattice::standard(d));
        }
    }

    #[test]
    fn diagonal_dual() {
        let l = int_lattice(&[vec![2, 0], vec![0, 3]]);
        let mut expect = RatMatrix::zeros(2, 2);
        expect.set(0, 0, r(1, 2));
        expect.set(1, 1, r(1, 3));
        assert_eq!(l.dual(), Lattice::from_basis(expect).unwrap());
        assert_eq!(l.dual().dual(), l);
    }

    #[test]
    fn dual_pairs_integrally() {
        let l = int_lattice(&[vec![3, 1, 0], vec![-2, 4, 1], vec![1, 1, 5]]);
        let dual = l.dual();
        let b = l.hnf();
        let db = dual.hnf();
        for i in 0..3 {
            for j in 0..3 {
                let ip: BigRational = (0..3).map(|k| b.get(k, i) * db.get(k, j)).sum();
                assert!(ip.is_integer());
            }
        }
    }

    #[test]
    fn equality_is_basis_independent() {
        let a = int_lattice(&[vec![2, 1], vec![0, 3]]);
        let b = int_lattice(&[vec![2, 3], vec![0, 3]]);
        assert_eq!(a, b);
        let c = int_lattice(&[vec![2, 0], vec![0, 3]]);
        assert_ne!(a, c);
    }

    #[test]
    fn idempotent_sum_and_intersection() {
        let l = int_lattice(&[vec![4, 1], vec![2, 3]]);
        assert_eq!(l.sum(&l).unwrap(), l);
        assert_eq!(l.intersect(&l).unwrap(), l);
    }

    #[test]
    fn coprime_scalings_intersect() {
        let two = Lattice::scaled_standard(2, &r(2, 1)).unwrap();
        let three = Lattice::scaled_standard(2, &r(3, 1)).unwrap();
        assert_eq!(two.intersect(&three).unwrap(), Lattice::scaled_standard(2, &r(6, 1)).unwrap());
        assert_eq!(two.sum(&three).unwrap(), Lattice::standard(2));
    }

    #[test]
    fn containment() {
        let z = Lattice::standard(2);
        let two = Lattice::scaled_standard(2, &r(2, 1)).unwrap();
        assert!(z.contains(&two).unwrap());
        assert!(!two.contains(&z).unwrap());
        assert_eq!(z.index_of(&two).unwrap(), BigInt::from(4));
    }

    #[test]
    fn dimension_mismatch() {
        let a = Lattice::standard(2);
        let b = Lattice::standard(3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.intersect(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.contains(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rational_canonical_form_reduces() {
        let half = Lattice::scaled_standard(2, &r(1, 2)).unwrap();
        let via = Lattice::from_basis(RatMatrix::from_int_over(&IntMatrix::diagonal(&[2, 2]), &BigInt::from(4))).unwrap();
        assert_eq!(half, via);
        assert_eq!(half.denominator(), &BigInt::from(2));
        assert!((0..2).all(|i| half.hnf_numerator().get(i, i).is_positive()));
    }

    #[test]
    fn coset_reduction() {
        let l = int_lattice(&[vec![2, 0], vec![1, 3]]);
        let (idx, rep) = l.reduce_integer(&[BigInt::from(5), BigInt::from(-1)]);
        assert!(rep.iter().all(|x| !x.is_negative()));
        assert!(idx < 6);
        let diff: Vec<BigRational> = [BigInt::from(5) - &rep[0], BigInt::from(-1) - &rep[1]]
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        assert!(l.contains_vector(&diff));
    }
}
