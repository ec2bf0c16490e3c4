//! Factorization over Z: squarefree part, factorization modulo a small prime,
//! multifactor Hensel lifting and exhaustive recombination.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Fp, Poly};
use super::poly::IntPolynomial;
use super::primes::{factorize, is_prime};

/// `unit · Π factor^multiplicity`. Prime constants carry the content of the
/// input; the remaining factors are primitive, irreducible, with positive
/// leading coefficient, listed in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct FactorList {
    unit: i8,
    factors: Vec<(IntPolynomial, u32)>,
}

impl FactorList {
    pub fn unit(&self) -> i8 {
        self.unit
    }

    pub fn factors(&self) -> &[(IntPolynomial, u32)] {
        &self.factors
    }

    /// Non-constant factors only.
    pub fn polynomial_factors(&self) -> impl Iterator<Item = &(IntPolynomial, u32)> {
        self.factors.iter().filter(|(f, _)| f.degree().unwrap_or(0) > 0)
    }

    /// Multiplies everything back together.
    pub fn product(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(IntPolynomial::constant(BigInt::from(self.unit)), |acc, (f, m)| acc * f.pow(*m))
    }

    /// True iff the input was a primitive irreducible polynomial up to sign.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1 && self.factors[0].0.degree().unwrap_or(0) > 0
    }
}

impl fmt::Debug for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.unit < 0 { "-" } else { "" })?;
        for (i, (g, m)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " · ")?;
            }
            write!(f, "({g})")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Factorization with the PRNG seeded from `ODOLAT_SEED` when set, otherwise
/// from the coefficients, so repeated runs agree.
pub fn factor(h: &IntPolynomial) -> FactorList {
    let seed = std::env::var("ODOLAT_SEED")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .unwrap_or_else(|| fnv1a(h));
    factor_with_seed(h, seed)
}

/// Panics on the zero polynomial.
pub fn factor_with_seed(h: &IntPolynomial, seed: u64) -> FactorList {
    assert!(!h.is_zero(), "cannot factor the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unit: i8 = if h.leading_coeff().is_negative() { -1 } else { 1 };
    let mut factors: Vec<(IntPolynomial, u32)> = factorize(&h.content())
        .into_iter()
        .map(|(p, e)| (IntPolynomial::constant(p), e))
        .collect();

    let mut f = h.primitive_part();
    let zeros = f.zero_root_multiplicity();
    if zeros > 0 {
        factors.push((IntPolynomial::t(), zeros as u32));
        f = f.shift_down(zeros);
    }
    if f.degree().unwrap_or(0) > 0 {
        let g = f.gcd(&f.derivative());
        let squarefree = f.exact_div(&g).expect("gcd divides").primitive_part();
        for irr in factor_squarefree(&squarefree, &mut rng) {
            let mut m = 0;
            while let Some(q) = f.exact_div(&irr) {
                f = q;
                m += 1;
            }
            debug_assert!(m > 0);
            factors.push((irr, m));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    FactorList { unit, factors }
}

fn fnv1a(h: &IntPolynomial) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for c in h.coeffs() {
        for b in c.to_signed_bytes_le().into_iter().chain([0xff]) {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0100_0000_01b3);
        }
    }
    hash
}

const PRIME_TRIALS: usize = 5;

/// Irreducible factors of a primitive squarefree polynomial with positive
/// leading coefficient and nonzero constant term.
fn factor_squarefree(f: &IntPolynomial, rng: &mut ChaCha8Rng) -> Vec<IntPolynomial> {
    let n = f.degree().expect("nonzero");
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.leading_coeff();

    // pick the prime giving the fewest modular factors among the first few
    // admissible ones
    let mut best: Option<(u64, Vec<Poly>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < PRIME_TRIALS {
        if is_prime(&BigInt::from(p)) && !(&lc % p).is_zero() {
            let fp = Fp::new(p);
            let reduced = fp.lift(f.coeffs());
            if reduced.len() == n + 1 && fp.is_squarefree(&reduced) {
                tried += 1;
                let facs = fp.factor_squarefree(&fp.monic(&reduced), rng);
                if facs.len() == 1 {
                    return vec![f.clone()];
                }
                if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
                    best = Some((p, facs));
                }
            }
        }
        p += 2;
        if p >= 1000 && best.is_some() {
            break;
        }
    }
    let (p, modular) = best.expect("an admissible prime exists");

    // coefficients of lc·g for any factor g are below |lc|·2^n·||f||_1
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * f.l1_norm();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, p, k);
    recombine(f, lifted, &pk)
}

/// Lifts `f ≡ lc · Π factors (mod p)` to monic factors modulo `p^k`.
fn hensel_lift(f: &IntPolynomial, factors: &[Poly], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let pk = BigInt::from(p).pow(k);
    let target: Vec<BigInt> = f.coeffs().iter().map(|c| c.mod_floor(&pk)).collect();
    lift_tree(&target, factors, p, k, &pk)
}

fn lift_tree(f: &[BigInt], factors: &[Poly], p: u64, k: u32, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let fp = Fp::new(p);
    let lc = f.last().expect("nonzero").clone();
    if factors.len() == 1 {
        let inv = mod_inverse(&lc, pk);
        return vec![f.iter().map(|c| (c * &inv).mod_floor(pk)).collect()];
    }
    let mid = factors.len() / 2;
    let g0 = factors[..mid].iter().fold(vec![1u64], |acc, g| fp.mul(&acc, g));
    let h_monic = factors[mid..].iter().fold(vec![1u64], |acc, g| fp.mul(&acc, g));
    let lc_p = (&lc % BigInt::from(p)).to_u64().expect("reduced");
    let h0 = fp.scale(&h_monic, lc_p);
    let (g, h) = lift_pair(f, &g0, &h0, p, k, pk);
    let mut out = lift_tree(&g, &factors[..mid], p, k, pk);
    out.extend(lift_tree(&h, &factors[mid..], p, k, pk));
    out
}

/// Linear Hensel lifting of `f ≡ g·h (mod p)`, `g` monic and coprime to `h`,
/// to `f ≡ G·H (mod p^k)` with `G` monic of the same degree.
fn lift_pair(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32, pk: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let fp = Fp::new(p);
    let (one, s, t) = fp.ext_gcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    let bp = BigInt::from(p);
    let mut g: Vec<BigInt> = g0.iter().map(|&c| BigInt::from(c)).collect();
    let mut h: Vec<BigInt> = h0.iter().map(|&c| BigInt::from(c)).collect();
    let mut pj = bp.clone();
    for _ in 1..k {
        let gh = int_mul(&g, &h);
        let n = f.len().max(gh.len());
        let err: Vec<BigInt> = (0..n)
            .map(|i| {
                let diff = f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default();
                let diff = diff.mod_floor(pk);
                debug_assert!((&diff % &pj).is_zero());
                diff / &pj
            })
            .collect();
        let e = fp.lift(&err);
        if !e.is_empty() {
            let (q, dg) = fp.divrem(&fp.mul(&e, &t), g0);
            let dh = fp.add(&fp.mul(&e, &s), &fp.mul(&q, h0));
            add_scaled(&mut g, &dg, &pj, pk);
            add_scaled(&mut h, &dh, &pj, pk);
        }
        pj *= &bp;
    }
    (g, h)
}

fn add_scaled(a: &mut Vec<BigInt>, delta: &[u64], scale: &BigInt, modulus: &BigInt) {
    if a.len() < delta.len() {
        a.resize(delta.len(), BigInt::zero());
    }
    for (x, &d) in a.iter_mut().zip(delta) {
        *x = (&*x + scale * BigInt::from(d)).mod_floor(modulus);
    }
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if BigInt::from(2) * &r > *m {
        r - m
    } else {
        r
    }
}

/// Tries every subset of lifted factors, smallest first, keeping those whose
/// lc-scaled product gives a true divisor over Z.
fn recombine(f: &IntPolynomial, mut lifted: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in Subsets::new(lifted.len(), size) {
            let lc = f.leading_coeff();
            let prod = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| int_mul(&acc, &lifted[i]).into_iter().map(|c| c.mod_floor(pk)).collect());
            let candidate = IntPolynomial::new(prod.iter().map(|c| symmetric(c, pk)).collect()).primitive_part();
            if candidate.constant_term().is_zero() || !(f.constant_term() % candidate.constant_term()).is_zero() {
                continue;
            }
            if let Some(q) = f.exact_div(&candidate) {
                out.push(candidate);
                f = q.primitive_part();
                let mut keep = Vec::new();
                for (i, u) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(u);
                    }
                }
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f.degree().unwrap_or(0) > 0 {
        out.push(f);
    }
    out.sort_by(IntPolynomial::canonical_cmp);
    out
}

/// k-subsets of `0..n` in lexicographic order.
struct Subsets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.cur.take()?;
        let k = cur.len();
        let mut nxt = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if nxt[i] < self.n - k + i {
                nxt[i] += 1;
                for j in i + 1..k {
                    nxt[j] = nxt[j - 1] + 1;
                }
                self.cur = Some(nxt);
                break;
            }
        }
        Some(cur)
    }
}

impl PartialOrd for FactorList {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FactorList {
    fn cmp(&self, other: &Self) -> Ordering {
        self.unit.cmp(&other.unit).then_with(|| {
            self.factors
                .iter()
                .zip(&other.factors)
                .map(|(a, b)| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)))
                .find(|o| o.is_ne())
                .unwrap_or(self.factors.len().cmp(&other.factors.len()))
        })
    }
}
