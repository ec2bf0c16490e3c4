use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;

use super::presentation::OdometerPresentation;
use super::truncation::{p_power_lattice, stable_intersection};
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Lattice};
use crate::polyarith::primes::valuation;

/// Both presentations plus cached truncations, shared by the decision
/// procedures for one pair.
pub(crate) struct Pair {
    pub a: OdometerPresentation,
    pub b: OdometerPresentation,
    pub depth: u32,
    pub primes: BTreeSet<BigInt>,
    cache: RefCell<HashMap<(bool, BigInt), Lattice>>,
    deadline: Option<Instant>,
}

impl Pair {
    pub fn new(a: &IntMatrix, b: &IntMatrix, depth: Option<u32>) -> Result<Self> {
        let pa = OdometerPresentation::new(a)?;
        let pb = OdometerPresentation::new(b)?;
        if pa.dim() != pb.dim() {
            return Err(Error::DimensionMismatch { expected: pa.dim(), found: pb.dim() });
        }
        let primes: BTreeSet<BigInt> = pa.primes().union(pb.primes()).cloned().collect();
        let depth = depth.unwrap_or_else(|| default_depth_for(&pa, &pb));
        Ok(Pair { a: pa, b: pb, depth, primes, cache: RefCell::new(HashMap::new()), deadline: None })
    }

    pub fn with_budget(mut self, ms: u64) -> Self {
        self.deadline = Some(Instant::now() + Duration::from_millis(ms));
        self
    }

    pub fn out_of_time(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// `G ∩ N^{-1} Z^d` for `G = G_A` (`side_b = false`) or `G_B`.
    pub fn intersection(&self, side_b: bool, n: &BigInt) -> Lattice {
        let key = (side_b, n.clone());
        if let Some(l) = self.cache.borrow().get(&key) {
            return l.clone();
        }
        let m = if side_b { self.b.matrix() } else { self.a.matrix() };
        let (l, _) = stable_intersection(m, n).expect("presentation is nonsingular");
        self.cache.borrow_mut().insert(key, l.clone());
        l
    }

    /// `G ∩ p^{-j} Z^d`, derived from the depth-`J` intersection when
    /// `j ≤ J`.
    pub fn truncated(&self, side_b: bool, p: &BigInt, j: u32) -> Lattice {
        if j >= self.depth {
            return self.intersection(side_b, &p.pow(j));
        }
        let full = self.intersection(side_b, &p.pow(self.depth));
        full.intersect(&p_power_lattice(self.dim(), p, j)).expect("same dimension")
    }
}

/// `2·d·max_p v_p(det A · det B) + 4`, or 4 when neither determinant has a
/// prime divisor.
pub fn default_depth(a: &IntMatrix, b: &IntMatrix) -> Result<u32> {
    let pa = OdometerPresentation::new(a)?;
    let pb = OdometerPresentation::new(b)?;
    Ok(default_depth_for(&pa, &pb))
}

fn default_depth_for(a: &OdometerPresentation, b: &OdometerPresentation) -> u32 {
    let prod = a.det() * b.det();
    let vmax = a
        .primes()
        .union(b.primes())
        .map(|p| valuation(&prod.abs(), p))
        .max()
        .unwrap_or(0);
    2 * a.dim() as u32 * vmax + 4
}
