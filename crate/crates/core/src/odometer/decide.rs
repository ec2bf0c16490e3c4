use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::context::Pair;
use super::presentation::OdometerPresentation;
use super::truncation::{denominator_lcm, p_power_lattice};
use super::verdict::{Verdict, Witness};
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Lattice, RatMatrix};
use crate::polyarith::{factor, primes::factorize};

pub(crate) const DENSITY_UNMET: &str = "density hypothesis unmet";

/// Density of `G_A` in Q^d: every irreducible factor of `h_A` must have
/// constant term other than ±1.
pub fn is_dense(a: &IntMatrix) -> Result<Verdict> {
    let p = OdometerPresentation::new(a)?;
    Ok(density_of(&p))
}

pub(crate) fn density_of(p: &OdometerPresentation) -> Verdict {
    let fl = factor(p.charpoly());
    for (f, _) in fl.polynomial_factors() {
        let c = f.constant_term();
        if c.abs().is_one() {
            return Verdict::no(
                Witness::Criterion(format!("irreducible factor {f} of the characteristic polynomial has constant term {c}")),
                "factor-constant-terms",
            );
        }
    }
    Verdict::yes(
        Witness::Criterion("no irreducible factor of the characteristic polynomial has constant term ±1".into()),
        "factor-constant-terms",
    )
}

/// Shared handling of degenerate inputs: both determinants ±1 settles every
/// relation as Yes, exactly one settles them as No, and any non-dense group
/// otherwise leaves them Unknown.
pub(crate) fn density_gate(pair: &Pair) -> Option<Verdict> {
    match (pair.a.is_unimodular(), pair.b.is_unimodular()) {
        (true, true) => {
            return Some(Verdict::yes(
                Witness::Matrix(RatMatrix::identity(pair.dim())),
                "unimodular-trivial-groups",
            ))
        }
        (true, false) | (false, true) => {
            return Some(Verdict::no(
                Witness::Criterion("exactly one of det A, det B is ±1, so exactly one group is Z^d".into()),
                "unimodular-trivial-groups",
            ))
        }
        _ => {}
    }
    if !density_of(&pair.a).is_yes() || !density_of(&pair.b).is_yes() {
        return Some(Verdict::unknown(Witness::Hypothesis(DENSITY_UNMET.into()), "density-check"));
    }
    None
}

fn fmt_primes(s: &BTreeSet<BigInt>) -> String {
    let v: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

/// Orbit equivalence of dense odometers: same prime divisors of the
/// determinants.
pub fn orbit_equivalent(a: &IntMatrix, b: &IntMatrix) -> Result<Verdict> {
    let pair = Pair::new(a, b, None)?;
    Ok(orbit_equivalent_pair(&pair))
}

pub(crate) fn orbit_equivalent_pair(pair: &Pair) -> Verdict {
    if let Some(v) = density_gate(pair) {
        return v;
    }
    let (pa, pb) = (pair.a.primes(), pair.b.primes());
    if pa == pb {
        Verdict::yes(
            Witness::Criterion(format!("det A and det B have the same prime divisors {}", fmt_primes(pa))),
            "determinant-prime-divisors",
        )
    } else {
        Verdict::no(
            Witness::Criterion(format!("prime divisors differ: {} vs {}", fmt_primes(pa), fmt_primes(pb))),
            "determinant-prime-divisors",
        )
    }
}

/// The case where `h_A ≡ t^d` modulo every prime of `det A` (or the same
/// for `B`). Then `G_A = Z[1/det A]^d`, and conjugacy, isomorphism and
/// continuous orbit equivalence all hold exactly when `det A`, `det B`
/// share their prime divisors and `h_B ≡ t^d` modulo each of them.
pub fn ttodo_fast_path(a: &IntMatrix, b: &IntMatrix) -> Result<Verdict> {
    let pair = Pair::new(a, b, None)?;
    fast_path_pair(&pair)
}

pub(crate) fn fast_path_pair(pair: &Pair) -> Result<Verdict> {
    if !density_of(&pair.a).is_yes() || !density_of(&pair.b).is_yes() {
        return Err(Error::NotApplicable(DENSITY_UNMET.into()));
    }
    let (x, y, names) = if pair.a.exceptional_primes().is_empty() {
        (&pair.a, &pair.b, ("A", "B"))
    } else if pair.b.exceptional_primes().is_empty() {
        (&pair.b, &pair.a, ("B", "A"))
    } else {
        return Err(Error::NotApplicable(
            "the characteristic polynomials are not t^d modulo every prime of the determinant".into(),
        ));
    };
    let method = "nilpotent-mod-p-fast-path";
    if x.primes() != y.primes() {
        return Ok(Verdict::no(
            Witness::Criterion(format!(
                "prime divisors differ: {} vs {}",
                fmt_primes(x.primes()),
                fmt_primes(y.primes())
            )),
            method,
        ));
    }
    if let Some(p) = y.exceptional_primes().iter().next() {
        return Ok(Verdict::no(
            Witness::Criterion(format!(
                "h_{} ≡ t^d mod every prime of det {} but h_{} ≢ t^d mod {p}",
                names.0, names.0, names.1
            )),
            method,
        ));
    }
    Ok(Verdict::yes(
        Witness::Criterion(format!(
            "both characteristic polynomials are t^d modulo every prime in {}",
            fmt_primes(x.primes())
        )),
        method,
    ))
}

/// `G_A = G_B`, decided exactly for identical matrices or by the fast path,
/// otherwise by comparing `G ∩ p^{-j} Z^d` for all relevant `p` and
/// `j ≤ J`.
pub fn groups_equal(a: &IntMatrix, b: &IntMatrix, depth: u32) -> Result<Verdict> {
    let pair = Pair::new(a, b, Some(depth))?;
    Ok(groups_equal_pair(&pair, true))
}

pub(crate) fn groups_equal_pair(pair: &Pair, allow_truncation: bool) -> Verdict {
    if pair.a.matrix() == pair.b.matrix() {
        return Verdict::yes(Witness::Matrix(RatMatrix::identity(pair.dim())), "identical-matrices");
    }
    if let Ok(v) = fast_path_pair(pair) {
        return v;
    }
    if !allow_truncation {
        return Verdict::unknown(Witness::Exhausted { search_bound: 0, depth: pair.depth }, "fast-path-only");
    }
    match first_truncation_mismatch(pair, |side_b, p, j| pair.truncated(side_b, p, j)) {
        Some((p, j)) => Verdict::no(Witness::Truncation { p, j }, "truncation-comparison").at_level(j),
        None => Verdict::yes(Witness::Matrix(RatMatrix::identity(pair.dim())), "truncation-comparison")
            .at_level(pair.depth),
    }
}

/// Compares `f(false, p, j)` with `f(true, p, j)` at depth `J` for every
/// relevant prime; on a mismatch, scans up from `j = 1` for the smallest
/// differing depth.
fn first_truncation_mismatch<F>(pair: &Pair, f: F) -> Option<(BigInt, u32)>
where
    F: Fn(bool, &BigInt, u32) -> Lattice,
{
    for p in &pair.primes {
        if f(false, p, pair.depth) != f(true, p, pair.depth) {
            let j = (1..=pair.depth).find(|&j| f(false, p, j) != f(true, p, j)).expect("differs at J");
            return Some((p.clone(), j));
        }
    }
    None
}

/// Conjugacy: `G_A = G_B`, for dense groups.
pub fn conjugate(a: &IntMatrix, b: &IntMatrix, depth: u32) -> Result<Verdict> {
    let pair = Pair::new(a, b, Some(depth))?;
    Ok(conjugate_pair(&pair, true))
}

pub(crate) fn conjugate_pair(pair: &Pair, allow_truncation: bool) -> Verdict {
    if let Some(v) = density_gate(pair) {
        return v;
    }
    groups_equal_pair(pair, allow_truncation)
}

/// How a verified `T` relates the two odometers.
pub(crate) fn witness_class(t: &RatMatrix) -> &'static str {
    if t.is_identity() {
        "conjugacy"
    } else if t.to_int().is_some_and(|m| m.is_unimodular()) {
        "isomorphism"
    } else if t.det().abs().is_one() {
        "continuous-orbit-equivalence"
    } else {
        "group-isomorphism"
    }
}

/// Checks `T·G_A = G_B` through depth `J`. A Yes names what `T` certifies:
/// conjugacy for `T = I`, isomorphism for `T ∈ GL_d(Z)`, continuous orbit
/// equivalence for `det T = ±1`.
pub fn verify_witness(t: &RatMatrix, a: &IntMatrix, b: &IntMatrix, depth: u32) -> Result<Verdict> {
    let pair = Pair::new(a, b, Some(depth))?;
    if t.rows() != pair.dim() || t.cols() != pair.dim() {
        return Err(Error::DimensionMismatch { expected: pair.dim(), found: t.rows() });
    }
    verify_witness_pair(&pair, t, true)
}

/// `minimal` controls whether a mismatch is located at its smallest depth.
pub(crate) fn verify_witness_pair(pair: &Pair, t: &RatMatrix, minimal: bool) -> Result<Verdict> {
    let t_inv = t.inverse()?;
    let method = format!("witness-check:{}", witness_class(t));
    let d = pair.dim();
    let unimodular = t.to_int().filter(IntMatrix::is_unimodular);
    if unimodular.is_none() {
        if let Some(reason) = containment_failure(pair, t, true).or_else(|| containment_failure(pair, &t_inv, false)) {
            return Ok(Verdict::no(Witness::Criterion(reason), &method));
        }
    }
    let image = |side_b: bool, p: &BigInt, j: u32| -> Lattice {
        if side_b {
            return pair.truncated(true, p, j);
        }
        if unimodular.is_some() {
            return pair.truncated(false, p, j).transform(t).expect("same dimension");
        }
        // T·G_A ∩ p^{-j}Z^d = T·(G_A ∩ T^{-1} p^{-j} Z^d), and the latter
        // sits inside N^{-1} Z^d
        let pre = p_power_lattice(d, p, j).transform(&t_inv).expect("same dimension");
        let n = p.pow(j) * denominator_lcm(t_inv.entries());
        let inside = pair.intersection(false, &n).intersect(&pre).expect("same dimension");
        inside.transform(t).expect("same dimension")
    };
    let mismatch = if minimal {
        first_truncation_mismatch(pair, image)
    } else {
        pair.primes
            .iter()
            .find(|p| image(false, p, pair.depth) != image(true, p, pair.depth))
            .map(|p| (p.clone(), pair.depth))
    };
    Ok(match mismatch {
        Some((p, j)) => Verdict::no(Witness::Truncation { p, j }, &method).at_level(j),
        None => Verdict::yes(Witness::Matrix(t.clone()), &method).at_level(pair.depth),
    })
}

/// For a non-integral map, `T·Z^d ⊆ G_B` (or `T^{-1}·Z^d ⊆ G_A` when
/// `into_b` is false) must hold before the local comparison is meaningful.
fn containment_failure(pair: &Pair, m: &RatMatrix, into_b: bool) -> Option<String> {
    let target = if into_b { &pair.b } else { &pair.a };
    let name = if into_b { ("T", "G_B") } else { ("T^-1", "G_A") };
    let den = denominator_lcm(m.entries());
    if den.is_one() {
        return None;
    }
    for p in factorize(&den).into_keys() {
        if !target.primes().contains(&p) {
            return Some(format!("{}·Z^d has denominators divisible by {p}, which {} does not allow", name.0, name.1));
        }
    }
    let image = Lattice::from_basis(m.clone()).expect("nonsingular");
    let allowed = pair.intersection(into_b, &den);
    if allowed.contains(&image).expect("same dimension") {
        None
    } else {
        Some(format!("{}·Z^d is not contained in {}", name.0, name.1))
    }
}

/// The hypothesis under which a map `T·G_A = G_B` forces `h_B` to be
/// irreducible: `h_A` irreducible and `gcd(t_p, d) = 1` for some `p ∈ P(A)`.
pub(crate) fn irreducible_hypothesis(p: &OdometerPresentation) -> bool {
    let d = p.dim();
    factor(p.charpoly()).is_irreducible() && p.t_values().values().any(|&tp| tp.gcd(&d) == 1)
}

/// No for every relation when one side satisfies the irreducibility
/// hypothesis and the other side's characteristic polynomial is reducible.
pub(crate) fn irreducibility_obstruction(pair: &Pair) -> Option<Verdict> {
    for (x, y, nx, ny) in [(&pair.a, &pair.b, "A", "B"), (&pair.b, &pair.a, "B", "A")] {
        if irreducible_hypothesis(x) && !factor(y.charpoly()).is_irreducible() {
            return Some(Verdict::no(
                Witness::Criterion(format!(
                    "h_{nx} is irreducible with gcd(t_p, d) = 1 for some p, so any T with T·G_{nx} = G_{ny} forces h_{ny} irreducible, but h_{ny} = {} is reducible",
                    y.charpoly()
                )),
                "irreducible-characteristic-polynomial",
            ));
        }
    }
    None
}

/// A unimodular `T` maps `G_A ∩ p^{-j}Z^d` onto `G_B ∩ p^{-j}Z^d`, so the
/// indices over Z^d must agree for every `p` and `j ≤ J`.
pub(crate) fn truncation_index_mismatch(pair: &Pair) -> Option<Verdict> {
    let std = Lattice::standard(pair.dim());
    let index = |side_b: bool, p: &BigInt, j: u32| -> BigInt {
        pair.truncated(side_b, p, j).index_of(&std).expect("contains Z^d")
    };
    for p in &pair.primes {
        for j in 1..=pair.depth {
            if index(false, p, j) != index(true, p, j) {
                return Some(
                    Verdict::no(Witness::Truncation { p: p.clone(), j }, "truncation-index-comparison").at_level(j),
                );
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odometer::verdict::Answer;

    fn comp(c: &[i64]) -> IntMatrix {
        IntMatrix::companion(&c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn density_examples() {
        assert_eq!(is_dense(&IntMatrix::identity(3)).unwrap().answer, Answer::No);
        assert_eq!(is_dense(&IntMatrix::diagonal(&[2, 2])).unwrap().answer, Answer::Yes);
        assert_eq!(is_dense(&comp(&[-1, -1])).unwrap().answer, Answer::No);
        assert_eq!(is_dense(&comp(&[-91, -39, 0])).unwrap().answer, Answer::Yes);
        assert_eq!(is_dense(&comp(&[9, 0, 1, 0])).unwrap().answer, Answer::Yes);
    }

    #[test]
    fn orbit_equivalence_examples() {
        let d35 = IntMatrix::diagonal(&[3, 5]);
        let d53 = IntMatrix::diagonal(&[5, 3]);
        assert_eq!(orbit_equivalent(&d35, &d53).unwrap().answer, Answer::Yes);
        let two = IntMatrix::diagonal(&[2, 2]);
        let three = IntMatrix::diagonal(&[3, 3]);
        assert_eq!(orbit_equivalent(&two, &three).unwrap().answer, Answer::No);
    }

    #[test]
    fn fast_path_examples() {
        let swap2 = IntMatrix::from_rows(&[vec![0, 2], vec![2, 0]]);
        let two = IntMatrix::diagonal(&[2, 2]);
        assert_eq!(ttodo_fast_path(&swap2, &two).unwrap().answer, Answer::Yes);
        assert_eq!(ttodo_fast_path(&two, &IntMatrix::diagonal(&[3, 3])).unwrap().answer, Answer::No);
        assert_eq!(ttodo_fast_path(&two, &IntMatrix::diagonal(&[6, 6])).unwrap().answer, Answer::No);
        let d35 = IntMatrix::diagonal(&[3, 5]);
        assert!(matches!(ttodo_fast_path(&d35, &d35), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn swapped_diagonal_not_equal() {
        let v = groups_equal(&IntMatrix::diagonal(&[3, 5]), &IntMatrix::diagonal(&[5, 3]), 3).unwrap();
        assert_eq!(v.answer, Answer::No);
        assert_eq!(v.witness, Some(Witness::Truncation { p: BigInt::from(3), j: 1 }));
    }

    #[test]
    fn swap_witness_verifies() {
        let a = IntMatrix::diagonal(&[3, 5]);
        let b = IntMatrix::diagonal(&[5, 3]);
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).to_rat();
        let v = verify_witness(&swap, &a, &b, 3).unwrap();
        assert_eq!(v.answer, Answer::Yes);
        assert_eq!(v.method, "witness-check:isomorphism");
        let id = RatMatrix::identity(2);
        assert_eq!(verify_witness(&id, &a, &b, 3).unwrap().answer, Answer::No);
    }

    #[test]
    fn rational_witness() {
        // G_{2I} = Z[1/2]^2 is preserved by diag(2, 1/2), which has det 1
        let two = IntMatrix::diagonal(&[2, 2]);
        let mut t = RatMatrix::identity(2);
        t.set(0, 0, num_rational::BigRational::from_integer(2.into()));
        t.set(1, 1, num_rational::BigRational::new(1.into(), 2.into()));
        let v = verify_witness(&t, &two, &two, 4).unwrap();
        assert_eq!(v.answer, Answer::Yes);
        assert_eq!(v.method, "witness-check:continuous-orbit-equivalence");
        // diag(3, 1/3) leaves Z[1/2]^2
        let mut bad = RatMatrix::identity(2);
        bad.set(0, 0, num_rational::BigRational::from_integer(3.into()));
        bad.set(1, 1, num_rational::BigRational::new(1.into(), 3.into()));
        assert_eq!(verify_witness(&bad, &two, &two, 4).unwrap().answer, Answer::No);
    }
}
