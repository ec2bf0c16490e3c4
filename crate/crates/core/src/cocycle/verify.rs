use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::cocycle::Cocycle;

/// A triple where `θ(x, m + n) ≠ θ(x, m) + θ(x + m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub coset: usize,
    pub m: Vec<i64>,
    pub n: Vec<i64>,
}

/// Exhaustive check of the cocycle identity for every coset and all `m`, `n`
/// in `[-r, r]^d`. Returns the first failure in (coset, m, n) lexicographic
/// order.
pub fn check_cocycle_identity(theta: &Cocycle, r: u32) -> Option<Counterexample> {
    let sys = theta.system();
    let d = sys.dim();
    let r = r as i64;
    let wide = Grid::new(d, 2 * r);
    let narrow = Grid::new(d, r);
    let n_cosets = sys.index();

    // θ(x, v) for every coset and every v in [-2r, 2r]^d
    let values: Vec<Vec<BigInt>> = (0..n_cosets)
        .map(|x| wide.points.iter().map(|v| theta.value(x, &big(v))).collect())
        .collect();
    let small: Option<Vec<Vec<i64>>> = values
        .iter()
        .map(|row| row.iter().map(ToPrimitive::to_i64).collect())
        .collect();

    // coset reached from x by m, for m in the narrow box
    let moved: Vec<Vec<usize>> = (0..n_cosets)
        .map(|x| narrow.points.iter().map(|m| sys.act(x, &big(m))).collect())
        .collect();
    let wide_idx: Vec<usize> = narrow.points.iter().map(|m| wide.index(m)).collect();

    for x in 0..n_cosets {
        for (mi, m) in narrow.points.iter().enumerate() {
            let xm = moved[x][mi];
            for (ni, n) in narrow.points.iter().enumerate() {
                let sum: Vec<i64> = m.iter().zip(n).map(|(a, b)| a + b).collect();
                let s = wide.index(&sum);
                let ok = match &small {
                    Some(v) => v[x][s] as i128 == v[x][wide_idx[mi]] as i128 + v[xm][wide_idx[ni]] as i128,
                    None => values[x][s] == &values[x][wide_idx[mi]] + &values[xm][wide_idx[ni]],
                };
                if !ok {
                    return Some(Counterexample { coset: x, m: m.clone(), n: n.clone() });
                }
            }
        }
    }
    None
}

pub fn verify_cocycle_identity(theta: &Cocycle, r: u32) -> bool {
    check_cocycle_identity(theta, r).is_none()
}

struct Grid {
    r: i64,
    points: Vec<Vec<i64>>,
}

impl Grid {
    fn new(d: usize, r: i64) -> Self {
        let side = (2 * r + 1) as usize;
        let total = side.pow(d as u32);
        let points = (0..total)
            .map(|mut k| {
                let mut p = vec![0i64; d];
                for c in p.iter_mut().rev() {
                    *c = (k % side) as i64 - r;
                    k /= side;
                }
                p
            })
            .collect();
        Grid { r, points }
    }

    fn index(&self, p: &[i64]) -> usize {
        let side = 2 * self.r + 1;
        p.iter().fold(0i64, |acc, &c| acc * side + (c + self.r)) as usize
    }
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
