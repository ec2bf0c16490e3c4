use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::system::{to_i64s, FiniteLevelSystem};
use crate::error::{Error, Result};
use crate::exact::{pairing, CosetTable, FundamentalDomain, Lattice};

/// An integer 1-cocycle `θ(x, n)` of the translation action on Z^d/G,
/// stored through its values on the generators `e_1, …, e_d`.
#[derive(Clone, Debug)]
pub struct Cocycle {
    system: FiniteLevelSystem,
    table: Vec<Vec<BigInt>>,
    closed: Option<ClosedForm>,
}

/// `θ(x, n) = ⟨g', h⟩` where `rep_F(x) + n = k' + g'` for a fundamental
/// domain `F`: the value is `Σ_j floor((adj·y)_j / det)·⟨f_j, h⟩`.
#[derive(Clone, Debug)]
pub(crate) struct ClosedForm {
    pub(crate) h: Vec<BigRational>,
    pub(crate) domain: FundamentalDomain,
    reps: Vec<Vec<BigInt>>,
    adj: Vec<Vec<BigInt>>,
    det: BigInt,
    weights: Vec<BigInt>,
    small: Option<SmallForm>,
}

#[derive(Clone, Debug)]
struct SmallForm {
    reps: Vec<Vec<i64>>,
    adj: Vec<Vec<i64>>,
    det: i64,
    weights: Vec<i64>,
}

impl ClosedForm {
    pub(crate) fn new(system: &FiniteLevelSystem, h: Vec<BigRational>, domain: FundamentalDomain) -> Self {
        let basis = domain.basis().clone();
        let mut adj: Vec<Vec<BigInt>> = basis.adjugate().expect("nonsingular").to_rows();
        let mut det = basis.det();
        if det.is_negative() {
            det = -det;
            for row in &mut adj {
                for a in row.iter_mut() {
                    *a = -&*a;
                }
            }
        }
        let weights: Vec<BigInt> = basis
            .columns()
            .iter()
            .map(|f| pairing(f, &h).to_integer())
            .collect();
        let mut reps = vec![Vec::new(); system.index()];
        for k in domain.table().reps() {
            reps[system.coset_of(k)] = k.clone();
        }
        let small = (|| {
            Some(SmallForm {
                reps: reps.iter().map(|r| to_i64s(r)).collect::<Option<_>>()?,
                adj: adj.iter().map(|r| to_i64s(r)).collect::<Option<_>>()?,
                det: i64::try_from(&det).ok()?,
                weights: to_i64s(&weights)?,
            })
        })();
        ClosedForm { h, domain, reps, adj, det, weights, small }
    }

    fn value(&self, x: usize, n: &[BigInt]) -> BigInt {
        if let (Some(s), Some(n)) = (&self.small, to_i64s(n)) {
            let y: Vec<i128> = s.reps[x].iter().zip(&n).map(|(&a, &b)| a as i128 + b as i128).collect();
            let mut acc: i128 = 0;
            for (row, &w) in s.adj.iter().zip(&s.weights) {
                let t: i128 = row.iter().zip(&y).map(|(&a, &b)| a as i128 * b).sum();
                acc += t.div_euclid(s.det as i128) * w as i128;
            }
            return BigInt::from(acc);
        }
        let y: Vec<BigInt> = self.reps[x].iter().zip(n).map(|(a, b)| a + b).collect();
        self.adj
            .iter()
            .zip(&self.weights)
            .map(|(row, w)| {
                let t: BigInt = row.iter().zip(&y).map(|(a, b)| a * b).sum();
                t.div_floor(&self.det) * w
            })
            .sum()
    }
}

impl Cocycle {
    /// Validates the generator table `table[coset][j] = θ(coset, e_j)` by
    /// checking `θ(x, e_j) + θ(x + e_j, e_l) = θ(x, e_l) + θ(x + e_l, e_j)`.
    pub fn from_table(system: &FiniteLevelSystem, table: Vec<Vec<BigInt>>) -> Result<Self> {
        let d = system.dim();
        if table.len() != system.index() {
            return Err(Error::DimensionMismatch { expected: system.index(), found: table.len() });
        }
        if let Some(row) = table.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: row.len() });
        }
        for x in 0..system.index() {
            for j in 0..d {
                let xj = system.step(x, j, false);
                for l in j + 1..d {
                    let xl = system.step(x, l, false);
                    if &table[x][j] + &table[xj][l] != &table[x][l] + &table[xl][j] {
                        return Err(Error::NotACocycle { coset: x, first: j + 1, second: l + 1 });
                    }
                }
            }
        }
        Ok(Cocycle { system: system.clone(), table, closed: None })
    }

    pub(crate) fn from_closed_form(system: &FiniteLevelSystem, closed: ClosedForm) -> Self {
        let d = system.dim();
        let table = (0..system.index())
            .map(|x| (0..d).map(|j| closed.value(x, &unit(d, j))).collect())
            .collect();
        Cocycle { system: system.clone(), table, closed: Some(closed) }
    }

    pub fn zero(system: &FiniteLevelSystem) -> Self {
        let table = vec![vec![BigInt::zero(); system.dim()]; system.index()];
        Cocycle { system: system.clone(), table, closed: None }
    }

    pub fn system(&self) -> &FiniteLevelSystem {
        &self.system
    }

    /// `table()[x][j] = θ(x, e_j)`.
    pub fn table(&self) -> &[Vec<BigInt>] {
        &self.table
    }

    /// The dual vector and fundamental domain, for cocycles built from one.
    pub fn source(&self) -> Option<(&[BigRational], &FundamentalDomain)> {
        self.closed.as_ref().map(|c| (c.h.as_slice(), &c.domain))
    }

    /// `θ(x, n)`: evaluated directly for constructed cocycles, otherwise by
    /// walking from `x` along the coordinate path to `x + n`.
    pub fn value(&self, x: usize, n: &[BigInt]) -> BigInt {
        if let Some(c) = &self.closed {
            return c.value(x, n);
        }
        self.walk(x, n)
    }

    fn walk(&self, mut x: usize, n: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (j, nj) in n.iter().enumerate() {
            let steps = nj.magnitude().clone();
            let mut s = num_bigint::BigUint::zero();
            while s < steps {
                if nj.is_positive() {
                    acc += &self.table[x][j];
                    x = self.system.step(x, j, false);
                } else {
                    x = self.system.step(x, j, true);
                    acc -= &self.table[x][j];
                }
                s += 1u32;
            }
        }
        acc
    }

    /// Pointwise sum; both cocycles must live on the same system.
    pub fn add(&self, other: &Cocycle) -> Result<Cocycle> {
        if self.system.lattice() != other.system.lattice() {
            return Err(Error::DomainMismatch);
        }
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Cocycle { system: self.system.clone(), table, closed: None })
    }

    /// Integral against the invariant measure: `(1/[Z^d:G]) Σ_x θ(x, e_j)`.
    pub fn tau(&self) -> Vec<BigRational> {
        let index = BigInt::from(self.system.index());
        (0..self.system.dim())
            .map(|j| {
                let s: BigInt = self.table.iter().map(|row| &row[j]).sum();
                BigRational::new(s, index.clone())
            })
            .collect()
    }

    /// Same integral, but summed over the cosets of an arbitrary coset
    /// table of the same lattice.
    pub fn tau_over(&self, table: &CosetTable) -> Result<Vec<BigRational>> {
        if table.lattice() != self.system.lattice() {
            return Err(Error::DomainMismatch);
        }
        let index = BigInt::from(table.len());
        let d = self.system.dim();
        let mut sums = vec![BigInt::zero(); d];
        for r in table.reps() {
            let x = self.system.coset_of(r);
            for (s, v) in sums.iter_mut().zip(&self.table[x]) {
                *s += v;
            }
        }
        Ok(sums.into_iter().map(|s| BigRational::new(s, index.clone())).collect())
    }

    /// Whether `tau` lies in the dual lattice of `G`.
    pub fn tau_image_in_dual(&self) -> bool {
        in_dual(self.system.lattice(), &self.tau())
    }

    /// A potential `u` with `θ(x, e_j) = u(x + e_j) − u(x)` and `u(0) = 0`,
    /// if the cocycle is a coboundary.
    pub fn coboundary_potential(&self) -> Option<Coboundary> {
        let n = self.system.index();
        let d = self.system.dim();
        let mut pot: Vec<Option<BigInt>> = vec![None; n];
        pot[0] = Some(BigInt::zero());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let px = pot[x].clone().expect("visited");
            for j in 0..d {
                let fwd = self.system.step(x, j, false);
                let back = self.system.step(x, j, true);
                for (y, val) in [(fwd, &px + &self.table[x][j]), (back, &px - &self.table[back][j])] {
                    match &pot[y] {
                        None => {
                            pot[y] = Some(val);
                            queue.push_back(y);
                        }
                        Some(v) if *v != val => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let potential = pot.into_iter().collect::<Option<Vec<_>>>()?;
        let cob = Coboundary { system: self.system.clone(), potential };
        (cob.cocycle().table == self.table).then_some(cob)
    }
}

/// A coboundary `θ(x, n) = u(x + n) − u(x)` given by its potential `u`.
#[derive(Clone, Debug)]
pub struct Coboundary {
    system: FiniteLevelSystem,
    potential: Vec<BigInt>,
}

impl Coboundary {
    /// `potential[x]` is the value on coset number `x`.
    pub fn new(system: &FiniteLevelSystem, potential: Vec<BigInt>) -> Result<Self> {
        if potential.len() != system.index() {
            return Err(Error::DimensionMismatch { expected: system.index(), found: potential.len() });
        }
        Ok(Coboundary { system: system.clone(), potential })
    }

    pub fn potential(&self) -> &[BigInt] {
        &self.potential
    }

    pub fn cocycle(&self) -> Cocycle {
        let d = self.system.dim();
        let table = (0..self.system.index())
            .map(|x| {
                (0..d)
                    .map(|j| &self.potential[self.system.step(x, j, false)] - &self.potential[x])
                    .collect()
            })
            .collect();
        Cocycle { system: self.system.clone(), table, closed: None }
    }
}

pub(crate) fn in_dual(lattice: &Lattice, h: &[BigRational]) -> bool {
    lattice.dual().contains_vector(h)
}

pub(crate) fn unit(d: usize, j: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); d];
    e[j] = BigInt::from(1);
    e
}
