use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

/// Polynomial with coefficients in `[0, p)`, ascending, no leading zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPPolynomial {
    p: BigInt,
    coeffs: Vec<BigInt>,
}

impl ModPPolynomial {
    /// Coefficients must already be reduced into `[0, p)`.
    pub fn new(p: BigInt, mut coeffs: Vec<BigInt>) -> Self {
        debug_assert!(coeffs.iter().all(|c| !c.is_negative_or_ge(&p)));
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ModPPolynomial { p, coeffs }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest `m` with `t^m` dividing the polynomial (the degree + 1 never
    /// occurs: the zero polynomial reports 0).
    pub fn zero_root_multiplicity(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// True iff the polynomial is `c·t^d` with `d` its degree.
    pub fn is_pure_power(&self) -> bool {
        self.degree().is_some_and(|d| self.zero_root_multiplicity() == d)
    }
}

trait RangeCheck {
    fn is_negative_or_ge(&self, p: &BigInt) -> bool;
}

impl RangeCheck for BigInt {
    fn is_negative_or_ge(&self, p: &BigInt) -> bool {
        self.sign() == num_bigint::Sign::Minus || self >= p
    }
}

impl fmt::Debug for ModPPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ModPPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lifted = super::poly::IntPolynomial::new(self.coeffs.clone());
        write!(f, "{lifted} (mod {})", self.p)
    }
}

/// Dense polynomial arithmetic over F_p for a word-sized prime (`p < 2^31`),
/// used by the factorizer. Polynomials are `Vec<u64>`, ascending, trimmed.
pub(crate) struct Fp {
    pub p: u64,
}

pub(crate) type Poly = Vec<u64>;

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31));
        Fp { p }
    }

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn lift(&self, coeffs: &[BigInt]) -> Poly {
        let p = BigInt::from(self.p);
        Self::trim(
            coeffs
                .iter()
                .map(|c| {
                    let r = ((c % &p) + &p) % &p;
                    r.to_u64().expect("reduced")
                })
                .collect(),
        )
    }

    #[inline]
    fn mulm(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow_scalar(a, self.p - 2)
    }

    fn pow_scalar(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulm(r, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        r
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        Self::trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        Self::trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        Self::trim(out)
    }

    pub fn scale(&self, a: &[u64], k: u64) -> Poly {
        Self::trim(a.iter().map(|&x| self.mulm(x, k)).collect())
    }

    pub fn monic(&self, a: &[u64]) -> Poly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    /// `(q, r)` with `a = q·b + r`, `deg r < deg b`.
    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (Poly, Poly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), Self::trim(r));
        }
        let inv_lc = self.inv(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - b.len() + 1];
        for i in (0..q.len()).rev() {
            let c = self.mulm(r[i + b.len() - 1], inv_lc);
            if c == 0 {
                continue;
            }
            q[i] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + self.p - self.mulm(c, bj)) % self.p;
            }
        }
        r.truncate(b.len() - 1);
        (Self::trim(q), Self::trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> Poly {
        self.divrem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Poly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s·a + t·b = g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let k = self.inv(*r0.last().expect("gcd of zero polynomials"));
        (self.scale(&r0, k), self.scale(&s0, k), self.scale(&t0, k))
    }

    pub fn derivative(&self, a: &[u64]) -> Poly {
        Self::trim(a.iter().enumerate().skip(1).map(|(i, &c)| self.mulm(c, i as u64 % self.p)).collect())
    }

    /// `base^e mod m` for a big exponent.
    pub fn powmod(&self, base: &[u64], e: &BigUint, m: &[u64]) -> Poly {
        let mut result = vec![1u64];
        let base = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            result = self.rem(&self.mul(&result, &result), m);
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &base), m);
            }
        }
        self.rem(&result, m)
    }

    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        let g = self.gcd(a, &self.derivative(a));
        g.len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree i, i)`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x: Poly = vec![0, 1];
        let mut w = x.clone();
        let p = BigUint::from(self.p);
        let mut i = 0;
        while f.len() > 1 {
            i += 1;
            if 2 * i > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f, deg));
                break;
            }
            w = self.powmod(&w, &p, &f);
            let g = self.gcd(&f, &self.sub(&w, &x));
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                w = self.rem(&w, &f);
                out.push((g, i));
            }
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a monic product of distinct
    /// irreducibles of degree `deg` (odd `p`).
    pub fn equal_degree<R: Rng>(&self, f: &[u64], deg: usize, rng: &mut R) -> Vec<Poly> {
        let n = f.len() - 1;
        if n == deg {
            return vec![f.to_vec()];
        }
        let exp = (num_traits::pow(BigUint::from(self.p), deg) - BigUint::one()) >> 1;
        loop {
            let a: Poly = Self::trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &exp, f), &[1]);
            let g = self.gcd(f, &b);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, deg, rng);
                out.extend(self.equal_degree(&self.monic(&h), deg, rng));
                return out;
            }
        }
    }

    /// Full factorization of a monic squarefree polynomial into monic
    /// irreducibles, sorted for determinism.
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<Poly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
        out
    }
}
