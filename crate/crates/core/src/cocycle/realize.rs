use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cocycle::{in_dual, unit, ClosedForm, Cocycle};
use super::system::FiniteLevelSystem;
use crate::error::{Error, Result};
use crate::exact::{good_basis, pairing, FundamentalDomain, IntMatrix};

/// Checks `⟨f_j, h⟩ ∈ Z` for every HNF basis vector `f_j` of `G`.
pub fn check_in_dual(system: &FiniteLevelSystem, h: &[BigRational]) -> Result<()> {
    let d = system.dim();
    if h.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: h.len() });
    }
    let basis = system.lattice().hnf_numerator();
    for (j, f) in basis.columns().iter().enumerate() {
        let v = pairing(f, h);
        if !v.is_integer() {
            return Err(Error::NotInDual { basis_index: j + 1, pairing: v.to_string() });
        }
    }
    debug_assert!(in_dual(system.lattice(), h));
    Ok(())
}

/// Basis of `G` normalized so that its `i`-th vector (1-based) is `a·e_i`,
/// together with `a`.
pub fn normalized_basis(system: &FiniteLevelSystem, i: usize) -> Result<(IntMatrix, BigInt)> {
    let m = system.lattice().hnf_numerator();
    let (p, a) = good_basis(m, i)?;
    Ok((m * &p, a))
}

/// The cocycle `θ(k + G, n) = ⟨g', h⟩`, where `k` is taken in the
/// parallelepiped `F` of the `i`-normalized basis and `k + n = k' + g'`
/// with `k' ∈ F`, `g' ∈ G`. Its restriction to `G` at the base point is
/// `g ↦ ⟨g, h⟩`.
pub fn cocycle_from_dual_vector(system: &FiniteLevelSystem, h: &[BigRational], i: usize) -> Result<Cocycle> {
    check_in_dual(system, h)?;
    let (basis, _) = normalized_basis(system, i)?;
    let domain = FundamentalDomain::new(&basis)?;
    Ok(Cocycle::from_closed_form(system, ClosedForm::new(system, h.to_vec(), domain)))
}

/// Points `k` of the domain with `k + e_i` outside it: exactly those where
/// `θ(k, e_i)` can be nonzero for the `i`-normalized construction.
pub fn boundary_layer(domain: &FundamentalDomain, i: usize) -> Vec<Vec<BigInt>> {
    domain
        .table()
        .reps()
        .iter()
        .filter(|k| {
            let mut y = (*k).clone();
            y[i - 1] += 1;
            !domain.contains(&y)
        })
        .cloned()
        .collect()
}

/// Outcome of the per-coordinate check `Σ_{k∈F} θ(k, e_i) = [Z^d:G]·h_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSumCheck {
    /// 1-based coordinate.
    pub component: usize,
    pub sum: BigInt,
    pub expected: BigRational,
    pub layer_size: usize,
    pub a: BigInt,
    pub domain_size: usize,
}

impl CoordinateSumCheck {
    /// The sum identity and the layer count `|F_i|·a = |F|`.
    pub fn holds(&self) -> bool {
        BigRational::from_integer(self.sum.clone()) == self.expected
            && BigInt::from(self.layer_size) * &self.a == BigInt::from(self.domain_size)
    }
}

/// Runs the check for every coordinate, each with its own normalized basis
/// and domain.
pub fn verify_coordinate_sums(system: &FiniteLevelSystem, h: &[BigRational]) -> Result<Vec<CoordinateSumCheck>> {
    check_in_dual(system, h)?;
    let d = system.dim();
    let index = BigInt::from(system.index());
    (1..=d)
        .map(|i| {
            let theta = cocycle_from_dual_vector(system, h, i)?;
            let (_, domain) = theta.source().expect("constructed");
            let (_, a) = normalized_basis(system, i)?;
            let e = unit(d, i - 1);
            let sum: BigInt = domain
                .table()
                .reps()
                .iter()
                .map(|k| theta.value(system.coset_of(k), &e))
                .fold(BigInt::zero(), |acc, v| acc + v);
            Ok(CoordinateSumCheck {
                component: i,
                sum,
                expected: BigRational::from_integer(index.clone()) * &h[i - 1],
                layer_size: boundary_layer(domain, i).len(),
                a,
                domain_size: domain.len(),
            })
        })
        .collect()
}
