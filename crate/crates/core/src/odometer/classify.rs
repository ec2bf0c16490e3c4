use super::context::Pair;
use super::decide::{conjugate_pair, density_of, orbit_equivalent_pair};
use super::search::{cont_orbit_equivalent_pair, isomorphic_pair};
use super::verdict::{Answer, ClassificationReport, Config, Verdict, Witness};
use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::polyarith::factor;

/// Runs every decision for the pair and makes the answers consistent along
/// conjugate ⇒ isomorphic ⇒ continuously orbit equivalent ⇒ orbit
/// equivalent.
pub fn classify(a: &IntMatrix, b: &IntMatrix, config: &Config) -> Result<ClassificationReport> {
    let pair = Pair::new(a, b, config.depth)?.with_budget(config.time_budget_ms);
    let dense_a = density_of(&pair.a);
    let dense_b = density_of(&pair.b);
    let mut oe = orbit_equivalent_pair(&pair);
    let mut conj = conjugate_pair(&pair, !config.fast_path_only);

    let mut iso = if conj.is_yes() {
        implied(&conj, "implied-by-conjugacy")
    } else {
        isomorphic_pair(&pair, config)?
    };
    let mut coe = if iso.is_yes() {
        implied(&iso, "implied-by-isomorphism")
    } else {
        cont_orbit_equivalent_pair(&pair, config)?
    };

    if coe.is_yes() && oe.answer == Answer::Unknown {
        oe = implied(&coe, "implied-by-continuous-orbit-equivalence");
    }
    if oe.is_no() {
        for v in [&mut conj, &mut iso, &mut coe] {
            if v.is_yes() {
                return Err(Error::InconsistentReport("orbit equivalence fails but a stronger relation holds".into()));
            }
            if v.answer == Answer::Unknown {
                *v = Verdict::no(oe.witness.clone().expect("No has a witness"), "not-orbit-equivalent");
            }
        }
    }
    if coe.is_no() {
        demote(&mut iso, &coe, "no-continuous-orbit-equivalence")?;
        demote(&mut conj, &coe, "no-continuous-orbit-equivalence")?;
    }
    if iso.is_no() {
        demote(&mut conj, &iso, "not-isomorphic")?;
    }

    let mut warnings = Vec::new();
    for (name, p, dense) in [("A", &pair.a, &dense_a), ("B", &pair.b, &dense_b)] {
        if !dense.is_yes() && !p.is_unimodular() {
            if let Some(Witness::Criterion(why)) = &dense.witness {
                warnings.push(format!("G_{name} is not dense ({why}); density hypothesis unmet"));
            }
        }
        let fl = factor(p.charpoly());
        if !fl.is_irreducible() {
            warnings.push(format!("characteristic polynomial of {name} is reducible: {} = {fl:?}", p.charpoly()));
        }
    }
    if pair.a.det() != pair.b.det() {
        warnings.push(format!("determinants differ: det A = {}, det B = {}", pair.a.det(), pair.b.det()));
    }
    if pair.a.charpoly() != pair.b.charpoly() {
        warnings.push(format!(
            "characteristic polynomials differ: h_A = {}, h_B = {}",
            pair.a.charpoly(),
            pair.b.charpoly()
        ));
    }
    if conj.is_yes() && conj.method == "truncation-comparison" {
        warnings.push(format!("groups equal through depth {} for all relevant primes", pair.depth));
    }

    let report = ClassificationReport {
        config: config.clone(),
        depth: pair.depth,
        dense_a,
        dense_b,
        orbit_equivalent: oe,
        conjugate: conj,
        isomorphic: iso,
        cont_orbit_equivalent: coe,
        warnings,
    };
    report.validate()?;
    Ok(report)
}

fn implied(from: &Verdict, method: &str) -> Verdict {
    Verdict { answer: from.answer, witness: from.witness.clone(), method: method.into(), level: from.level }
}

/// A weaker relation failing forces a stronger one to fail.
fn demote(stronger: &mut Verdict, weaker: &Verdict, method: &str) -> Result<()> {
    match stronger.answer {
        Answer::Yes => Err(Error::InconsistentReport(format!("{method} contradicts a Yes verdict"))),
        Answer::Unknown => {
            *stronger = implied(weaker, method);
            Ok(())
        }
        Answer::No => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflexive_all_yes() {
        let a = IntMatrix::from_rows(&[vec![2, 1], vec![1, 3]]);
        let r = classify(&a, &a, &Config::default()).unwrap();
        for (_, v) in r.chain() {
            assert_eq!(v.answer, Answer::Yes);
        }
    }

    #[test]
    fn swapped_diagonal() {
        let r = classify(&IntMatrix::diagonal(&[3, 5]), &IntMatrix::diagonal(&[5, 3]), &Config::default()).unwrap();
        assert_eq!(r.conjugate.answer, Answer::No);
        assert_eq!(r.isomorphic.answer, Answer::Yes);
        assert_eq!(r.cont_orbit_equivalent.answer, Answer::Yes);
        assert_eq!(r.orbit_equivalent.answer, Answer::Yes);
    }

    #[test]
    fn different_primes_all_no() {
        let r = classify(&IntMatrix::diagonal(&[2, 2]), &IntMatrix::diagonal(&[3, 3]), &Config::default()).unwrap();
        for (_, v) in r.chain() {
            assert_eq!(v.answer, Answer::No);
        }
    }

    #[test]
    fn identity_pair_trivially_yes() {
        let r = classify(&IntMatrix::identity(2), &IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]), &Config::default())
            .unwrap();
        for (_, v) in r.chain() {
            assert_eq!(v.answer, Answer::Yes);
        }
    }
}
