//! Bounded witness searches for isomorphism and continuous orbit
//! equivalence. Candidates are tried in a fixed order so that the reported
//! witness is reproducible.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::context::Pair;
use super::decide::{
    density_gate, fast_path_pair, irreducibility_obstruction, orbit_equivalent_pair, truncation_index_mismatch,
    verify_witness_pair,
};
use super::verdict::{Config, Verdict, Witness};
use crate::error::Result;
use crate::exact::{integer_kernel, size_reduce, IntMatrix, RatMatrix};

/// Isomorphism: some `T ∈ GL_d(Z)` with `T·G_A = G_B`.
pub fn isomorphic(a: &IntMatrix, b: &IntMatrix, config: &Config) -> Result<Verdict> {
    let pair = Pair::new(a, b, config.depth)?.with_budget(config.time_budget_ms);
    isomorphic_pair(&pair, config)
}

/// Continuous orbit equivalence: some `T ∈ GL_d(Q)` with `det T = ±1` and
/// `T·G_A = G_B`.
pub fn cont_orbit_equivalent(a: &IntMatrix, b: &IntMatrix, config: &Config) -> Result<Verdict> {
    let pair = Pair::new(a, b, config.depth)?.with_budget(config.time_budget_ms);
    cont_orbit_equivalent_pair(&pair, config)
}

/// Verdicts that need no search: degenerate inputs, failure of orbit
/// equivalence, the nilpotent fast path and the irreducibility obstruction.
fn complete_criteria(pair: &Pair) -> Option<Verdict> {
    if let Some(v) = density_gate(pair) {
        return Some(v);
    }
    let oe = orbit_equivalent_pair(pair);
    if oe.is_no() {
        return Some(Verdict::no(oe.witness.expect("No has a witness"), "not-orbit-equivalent"));
    }
    if let Ok(v) = fast_path_pair(pair) {
        return Some(v);
    }
    irreducibility_obstruction(pair)
}

pub(crate) fn isomorphic_pair(pair: &Pair, config: &Config) -> Result<Verdict> {
    if let Some(v) = complete_criteria(pair) {
        return Ok(v);
    }
    let exhausted = Verdict::unknown(
        Witness::Exhausted { search_bound: if config.fast_path_only { 0 } else { config.search_bound }, depth: pair.depth },
        "witness-search",
    )
    .at_level(pair.depth);
    if config.fast_path_only {
        return Ok(exhausted);
    }
    if let Some(v) = truncation_index_mismatch(pair) {
        return Ok(v);
    }
    let mut seen = HashSet::new();
    for t in unimodular_candidates(pair, config.search_bound) {
        if pair.out_of_time() {
            break;
        }
        if !seen.insert(t.clone()) {
            continue;
        }
        let v = verify_witness_pair(pair, &t.to_rat(), false)?;
        if v.is_yes() {
            return Ok(v);
        }
    }
    Ok(exhausted)
}

pub(crate) fn cont_orbit_equivalent_pair(pair: &Pair, config: &Config) -> Result<Verdict> {
    if let Some(v) = complete_criteria(pair) {
        return Ok(v);
    }
    let exhausted = Verdict::unknown(
        Witness::Exhausted { search_bound: if config.fast_path_only { 0 } else { config.search_bound }, depth: pair.depth },
        "witness-search",
    )
    .at_level(pair.depth);
    if config.fast_path_only {
        return Ok(exhausted);
    }
    let mut seen = HashSet::new();
    let candidates = unimodular_candidates(pair, config.search_bound)
        .map(|m| m.to_rat())
        .chain(rational_candidates(pair, config.search_bound));
    for t in candidates {
        if pair.out_of_time() {
            break;
        }
        if !seen.insert(t.clone()) {
            continue;
        }
        let v = verify_witness_pair(pair, &t, false)?;
        if v.is_yes() {
            return Ok(v);
        }
    }
    Ok(exhausted)
}

/// Integer solutions of `X·A = B·X`, as a size-reduced lattice basis.
pub fn intertwiners(a: &IntMatrix, b: &IntMatrix) -> Vec<IntMatrix> {
    let d = a.rows();
    // row-major vec(X); (XA - BX)[i][k] = Σ_l X[i][l] A[l][k] - Σ_l B[i][l] X[l][k]
    let mut c = IntMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for k in 0..d {
            let row = i * d + k;
            for l in 0..d {
                let v = c.get(row, i * d + l) + a.get(l, k);
                c.set(row, i * d + l, v);
                let w = c.get(row, l * d + k) - b.get(i, l);
                c.set(row, l * d + k, w);
            }
        }
    }
    size_reduce(integer_kernel(&c))
        .into_iter()
        .map(|mut v| {
            // first nonzero entry positive, for a reproducible search order
            if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
                v.iter_mut().for_each(|x| *x = -&*x);
            }
            IntMatrix::new(d, d, v).expect("d*d entries")
        })
        .collect()
}

/// Unimodular candidates in search order: the identity, then unimodular
/// integer intertwiners by coefficient height, then products of elementary
/// matrices.
fn unimodular_candidates<'a>(pair: &'a Pair, bound: u32) -> impl Iterator<Item = IntMatrix> + 'a {
    let d = pair.dim();
    let basis = intertwiners(pair.a.matrix(), pair.b.matrix());
    let from_kernel = GradedVectors::new(basis.len(), bound as i64)
        .map(move |c| combine(&basis, &c, d))
        .filter(IntMatrix::is_unimodular);
    std::iter::once(IntMatrix::identity(d))
        .chain(from_kernel)
        .chain(elementary_products(d, bound as usize))
}

fn combine(basis: &[IntMatrix], coeffs: &[i64], d: usize) -> IntMatrix {
    let mut acc = IntMatrix::zeros(d, d);
    for (m, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let data = acc.entries().iter().zip(m.entries()).map(|(x, y)| x + y * BigInt::from(c)).collect();
        acc = IntMatrix::new(d, d, data).expect("same shape");
    }
    acc
}

/// Rational intertwiners `X/N` with `det = ±1`, `N` a power (up to the
/// bound) of a prime dividing either determinant.
fn rational_candidates<'a>(pair: &'a Pair, bound: u32) -> impl Iterator<Item = RatMatrix> + 'a {
    let d = pair.dim();
    let basis = intertwiners(pair.a.matrix(), pair.b.matrix());
    let dens: Vec<BigInt> = pair
        .primes
        .iter()
        .flat_map(|p| (1..=bound).map(move |e| p.pow(e)))
        .collect();
    dens.into_iter().flat_map(move |n| {
        let basis = basis.clone();
        let target = n.pow(d as u32);
        GradedVectors::new(basis.len(), bound as i64).filter_map(move |c| {
            let x = combine(&basis, &c, d);
            (x.det().abs() == target).then(|| RatMatrix::from_int_over(&x, &n))
        })
    })
}

/// Nonzero integer vectors of length `m` with entries of absolute value at
/// most `bound`, grouped by height and ordered within a height by the entry
/// order 0, 1, -1, 2, -2, …
struct GradedVectors {
    m: usize,
    bound: i64,
    height: i64,
    digits: Vec<usize>,
    done: bool,
}

impl GradedVectors {
    fn new(m: usize, bound: i64) -> Self {
        GradedVectors { m, bound, height: 1, digits: vec![0; m], done: m == 0 || bound < 1 }
    }

    fn value(digit: usize) -> i64 {
        let k = digit.div_ceil(2) as i64;
        if digit % 2 == 1 {
            k
        } else {
            -k
        }
    }

    /// Advances the odometer over digits `0..=2h`; false on wraparound.
    fn advance(&mut self) -> bool {
        let top = 2 * self.height as usize;
        for i in (0..self.m).rev() {
            if self.digits[i] < top {
                self.digits[i] += 1;
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }
}

impl Iterator for GradedVectors {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        while !self.done {
            if !self.advance() {
                self.height += 1;
                if self.height > self.bound {
                    self.done = true;
                }
                continue;
            }
            let v: Vec<i64> = self.digits.iter().map(|&g| Self::value(g)).collect();
            if v.iter().map(|x| x.abs()).max() == Some(self.height) {
                return Some(v);
            }
        }
        None
    }
}

/// Products of at most `len` elementary matrices (transvections
/// `I ± E_ij` and sign changes), breadth first.
fn elementary_products(d: usize, len: usize) -> impl Iterator<Item = IntMatrix> {
    let mut gens = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            for s in [1i64, -1] {
                let mut m = IntMatrix::identity(d);
                m.set(i, j, BigInt::from(s));
                gens.push(m);
            }
        }
    }
    for i in 0..d {
        let mut m = IntMatrix::identity(d);
        m.set(i, i, -BigInt::one());
        gens.push(m);
    }
    let mut layers: Vec<Vec<IntMatrix>> = vec![vec![IntMatrix::identity(d)]];
    let mut seen: HashSet<IntMatrix> = HashSet::from([IntMatrix::identity(d)]);
    let gens_for_iter = gens.clone();
    (1..=len).flat_map(move |_| {
        let prev = layers.last().expect("nonempty").clone();
        let mut next = Vec::new();
        for p in &prev {
            for g in &gens_for_iter {
                let m = p * g;
                if seen.insert(m.clone()) {
                    next.push(m);
                }
            }
        }
        layers.push(next.clone());
        next
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odometer::verdict::Answer;

    #[test]
    fn graded_order() {
        let v: Vec<_> = GradedVectors::new(2, 1).collect();
        assert_eq!(v, vec![vec![0, 1], vec![0, -1], vec![1, 0], vec![1, 1], vec![1, -1], vec![-1, 0], vec![-1, 1], vec![-1, -1]]);
        assert_eq!(GradedVectors::new(1, 2).collect::<Vec<_>>(), vec![vec![1], vec![-1], vec![2], vec![-2]]);
    }

    #[test]
    fn intertwiners_of_swapped_diagonal() {
        let a = IntMatrix::diagonal(&[3, 5]);
        let b = IntMatrix::diagonal(&[5, 3]);
        let basis = intertwiners(&a, &b);
        assert_eq!(basis.len(), 2);
        for x in &basis {
            assert_eq!(&(x * &a), &(&b * x));
        }
    }

    #[test]
    fn swap_found() {
        let v = isomorphic(&IntMatrix::diagonal(&[3, 5]), &IntMatrix::diagonal(&[5, 3]), &Config::default()).unwrap();
        assert_eq!(v.answer, Answer::Yes);
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).to_rat();
        assert_eq!(v.witness, Some(Witness::Matrix(swap)));
    }

    #[test]
    fn elementary_layers() {
        let first: Vec<_> = elementary_products(2, 1).collect();
        assert_eq!(first.len(), 6);
        assert!(first.iter().all(IntMatrix::is_unimodular));
    }
}
