//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its runtime; the process exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use odolat::cocycle::{
    cocycle_from_dual_vector, verify_cocycle_identity, verify_coordinate_sums, Coboundary, FiniteLevelSystem,
};
use odolat::exact::{good_basis, hnf, IntMatrix, Lattice};
use odolat::odometer::{
    classify, groups_equal, is_dense, level_lattice, truncation_via_levels, verify_witness, Answer, Config, Witness,
};
use odolat::polyarith::{factor, IntPolynomial};

type Check = std::result::Result<(), String>;

/// Name, check and target runtime in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x0d01_a700 ^ tag)
}

fn random_matrix(r: &mut ChaCha8Rng, d: usize, bound: i64) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..d).map(|_| r.gen_range(-bound..=bound)).collect()).collect();
    IntMatrix::from_rows(&rows)
}

fn random_nonsingular(r: &mut ChaCha8Rng, d: usize, bound: i64) -> IntMatrix {
    loop {
        let m = random_matrix(r, d, bound);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Product of random elementary matrices.
fn random_unimodular(r: &mut ChaCha8Rng, d: usize, steps: usize) -> IntMatrix {
    let mut s = IntMatrix::identity(d);
    for _ in 0..steps {
        let mut e = IntMatrix::identity(d);
        if d == 1 || r.gen_bool(0.2) {
            let i = r.gen_range(0..d);
            e.set(i, i, BigInt::from(-1));
        } else {
            let i = r.gen_range(0..d);
            let j = (i + r.gen_range(1..d)) % d;
            e.set(i, j, BigInt::from(r.gen_range(-2..=2)));
        }
        s = &s * &e;
    }
    s
}

/// Random lower-triangular HNF basis with index at most `max_index`.
#[allow(clippy::needless_range_loop)]
fn random_sublattice(r: &mut ChaCha8Rng, d: usize, max_index: u64) -> Lattice {
    loop {
        let diag: Vec<u64> = (0..d).map(|_| r.gen_range(1..=10)).collect();
        if diag.iter().product::<u64>() > max_index {
            continue;
        }
        let mut m = IntMatrix::zeros(d, d);
        for j in 0..d {
            m.set(j, j, BigInt::from(diag[j]));
            for i in j + 1..d {
                m.set(i, j, BigInt::from(r.gen_range(0..diag[i])));
            }
        }
        return Lattice::from_int_basis(&m).expect("nonsingular");
    }
}

/// A random element of the dual lattice, as integer coordinates against its
/// basis.
fn random_dual_vector(r: &mut ChaCha8Rng, g: &Lattice) -> Vec<BigRational> {
    let dual = g.dual();
    let b = dual.basis();
    let d = g.dim();
    let coeffs: Vec<BigRational> = (0..d).map(|_| BigRational::from_integer(r.gen_range(-3i64..=3).into())).collect();
    b.mul_vec(&coeffs)
}

fn companion(coeffs: &[i64]) -> IntMatrix {
    IntMatrix::companion(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
}

// 1
fn good_basis_suite() -> Check {
    let mut r = rng(1);
    for case in 0..500 {
        let d = r.gen_range(1..=5);
        let m = random_nonsingular(&mut r, d, 20);
        let target = hnf(&m).map_err(|e| e.to_string())?;
        for i in 1..=d {
            let (p, a) = good_basis(&m, i).map_err(|e| e.to_string())?;
            ensure(p.det().abs().is_one(), || format!("case {case}: P not unimodular for i={i}"))?;
            ensure(a >= BigInt::one(), || format!("case {case}: a_{i} = {a}"))?;
            let mp = &m * &p;
            for row in 0..d {
                let want = if row == i - 1 { a.clone() } else { BigInt::zero() };
                ensure(mp.get(row, i - 1) == &want, || format!("case {case}: column {i} of MP is not a·e_{i}"))?;
            }
            ensure(hnf(&mp).map_err(|e| e.to_string())? == target, || format!("case {case}: HNF changed"))?;
        }
    }
    Ok(())
}

// 2
fn realization_suite() -> Check {
    let mut r = rng(2);
    for case in 0..200 {
        let d = r.gen_range(1..=3);
        let g = random_sublattice(&mut r, d, 100);
        let sys = FiniteLevelSystem::new(&g).map_err(|e| e.to_string())?;
        let h = random_dual_vector(&mut r, &g);
        let i = r.gen_range(1..=d);
        let theta = cocycle_from_dual_vector(&sys, &h, i).map_err(|e| e.to_string())?;
        ensure(verify_cocycle_identity(&theta, 2), || format!("case {case}: identity fails"))?;
        ensure(theta.tau() == h, || format!("case {case}: tau {:?} != h {:?}", theta.tau(), h))?;
        let checks = verify_coordinate_sums(&sys, &h).map_err(|e| e.to_string())?;
        ensure(checks.iter().all(|c| c.holds()), || format!("case {case}: coordinate sums fail"))?;
    }
    Ok(())
}

// 3
fn coboundary_suite() -> Check {
    let mut r = rng(3);
    for case in 0..200 {
        let d = r.gen_range(1..=3);
        let g = random_sublattice(&mut r, d, 100);
        let sys = FiniteLevelSystem::new(&g).map_err(|e| e.to_string())?;
        let potential: Vec<BigInt> = (0..sys.index()).map(|_| BigInt::from(r.gen_range(-50..=50))).collect();
        let cb = Coboundary::new(&sys, potential).map_err(|e| e.to_string())?;
        let tau = cb.cocycle().tau();
        ensure(tau.iter().all(Zero::is_zero), || format!("case {case}: tau {tau:?}"))?;
    }
    Ok(())
}

// 4
fn density_examples() -> Check {
    let cases: Vec<(&str, IntMatrix, Answer)> = vec![
        ("I_3", IntMatrix::identity(3), Answer::No),
        ("2I_3", IntMatrix::diagonal(&[2, 2, 2]), Answer::Yes),
        ("companion(t^2-t-1)", companion(&[-1, -1]), Answer::No),
        ("companion(t^3-39t-91)", companion(&[-91, -39, 0]), Answer::Yes),
        ("companion(t^4+t^2+9)", companion(&[9, 0, 1, 0]), Answer::Yes),
    ];
    for (name, m, want) in cases {
        let v = is_dense(&m).map_err(|e| e.to_string())?;
        ensure(v.answer == want, || format!("{name}: got {}, expected {want}", v.answer))?;
    }
    Ok(())
}

fn example_4x4() -> (IntMatrix, IntMatrix) {
    let a = IntMatrix::from_rows(&[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![-9, 0, -1, 0]]);
    let b = IntMatrix::from_rows(&[vec![0, 1, -1, 0], vec![9, 0, 2, 1], vec![9, 0, 1, 1], vec![-18, -9, 7, -1]]);
    (a, b)
}

// 5
fn conjugate_4x4() -> Check {
    let (a, b) = example_4x4();
    let report = classify(&a, &b, &Config::default()).map_err(|e| e.to_string())?;
    for (name, v) in report.chain() {
        ensure(v.answer == Answer::Yes, || format!("{name}: {}", v.answer))?;
    }
    ensure(report.conjugate.level == Some(report.depth), || "conjugacy not labeled with its depth".into())
}

// 6
fn swapped_diagonal() -> Check {
    let a = IntMatrix::diagonal(&[3, 5]);
    let b = IntMatrix::diagonal(&[5, 3]);
    let report = classify(&a, &b, &Config::default()).map_err(|e| e.to_string())?;
    let conj = &report.conjugate;
    ensure(conj.answer == Answer::No, || format!("conjugate {}", conj.answer))?;
    match &conj.witness {
        Some(Witness::Truncation { p, j }) if (*p == BigInt::from(3) || *p == BigInt::from(5)) && *j == 1 => {
            let n = p.clone();
            let (la, _) = truncation_via_levels(&a, &n).map_err(|e| e.to_string())?;
            let (lb, _) = truncation_via_levels(&b, &n).map_err(|e| e.to_string())?;
            ensure(la != lb, || "brute-force truncations agree".into())?;
        }
        other => return Err(format!("unexpected conjugacy witness {other:?}")),
    }
    let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).to_rat();
    ensure(report.isomorphic.answer == Answer::Yes, || format!("isomorphic {}", report.isomorphic.answer))?;
    ensure(report.isomorphic.witness == Some(Witness::Matrix(swap)), || "isomorphism witness is not the swap".into())?;
    ensure(report.orbit_equivalent.answer == Answer::Yes, || "orbit equivalence not Yes".into())
}

// 7
fn nilpotent_fast_path() -> Check {
    let a = IntMatrix::from_rows(&[vec![0, 2], vec![2, 0]]);
    let b = IntMatrix::diagonal(&[2, 2]);
    let report = classify(&a, &b, &Config::default()).map_err(|e| e.to_string())?;
    for v in [&report.conjugate, &report.isomorphic, &report.cont_orbit_equivalent] {
        ensure(v.answer == Answer::Yes, || format!("{}: {}", v.method, v.answer))?;
    }
    let direct = groups_equal(&a, &b, 6).map_err(|e| e.to_string())?;
    ensure(direct.answer == Answer::Yes, || "groups_equal at depth 6 disagrees".into())?;
    // the lattice comparison, not the shortcut
    let la = truncation_via_levels(&a, &BigInt::from(64)).map_err(|e| e.to_string())?.0;
    let lb = truncation_via_levels(&b, &BigInt::from(64)).map_err(|e| e.to_string())?.0;
    ensure(la == lb, || "truncations at 2^6 differ".into())
}

// 8
fn pause_implies_stable() -> Check {
    let mut r = rng(8);
    let primes = [2u32, 3, 5, 7];
    let mut pauses = 0usize;
    for case in 0..1000 {
        let d = r.gen_range(1..=3);
        let a = random_nonsingular(&mut r, d, 5);
        let p = BigInt::from(primes[r.gen_range(0..primes.len())]);
        let j = r.gen_range(1..=3u32);
        let cap = Lattice::scaled_standard(d, &BigRational::new(BigInt::one(), p.pow(j))).map_err(|e| e.to_string())?;
        let mut seq = Vec::new();
        let mut k = 0u32;
        let mut paused_at = None;
        while k <= 12 || paused_at.is_some_and(|s: u32| k <= s + 6) {
            let l = level_lattice(&a, k).map_err(|e| e.to_string())?.intersect(&cap).map_err(|e| e.to_string())?;
            seq.push(l);
            let n = seq.len();
            if paused_at.is_none() && n >= 2 && seq[n - 1] == seq[n - 2] {
                paused_at = Some(k - 1);
            }
            if paused_at.is_none() && k >= 12 {
                break;
            }
            k += 1;
        }
        if let Some(s) = paused_at {
            pauses += 1;
            let s = s as usize;
            for t in s + 1..=s + 6 {
                ensure(seq[t] == seq[s], || format!("case {case}: paused at {s} but changed at {t}"))?;
            }
        }
    }
    ensure(pauses > 0, || "no pauses observed".into())
}

// 9
fn conjugation_identity() -> Check {
    let mut r = rng(9);
    for case in 0..100 {
        let d = r.gen_range(1..=3);
        let a = random_nonsingular(&mut r, d, 4);
        let s = random_unimodular(&mut r, d, 4);
        let s_inv = s.inverse().map_err(|e| e.to_string())?.to_int().ok_or("inverse not integral")?;
        let b = &(&s * &a) * &s_inv;
        let v = verify_witness(&s.to_rat(), &a, &b, 4).map_err(|e| e.to_string())?;
        ensure(v.answer == Answer::Yes, || format!("case {case}: {} ({})", v.answer, v.method))?;
    }
    Ok(())
}

fn example_3x3() -> [(&'static str, IntMatrix); 3] {
    [
        ("A", IntMatrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![91, 39, 0]])),
        ("B", IntMatrix::from_rows(&[vec![7, 0, 0], vec![5, 1, 0], vec![-24, -4, 1]])),
        ("C", IntMatrix::from_rows(&[vec![49, 0, 0], vec![33, 1, 0], vec![4, -4, 1]])),
    ]
}

// 10
fn triple_guardrails() -> Check {
    let triple = example_3x3();
    let dets: Vec<BigInt> = triple.iter().map(|(_, m)| m.det()).collect();
    ensure(dets == [BigInt::from(91), BigInt::from(7), BigInt::from(49)], || format!("determinants {dets:?}"))?;
    let dense: Vec<Answer> = triple.iter().map(|(_, m)| is_dense(m).map(|v| v.answer)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(dense == [Answer::Yes, Answer::No, Answer::No], || format!("density {dense:?}"))?;
    for (x, a) in &triple {
        for (y, b) in &triple {
            if x == y {
                continue;
            }
            let report = classify(a, b, &Config::default()).map_err(|e| e.to_string())?;
            ensure(report.cont_orbit_equivalent.answer != Answer::Yes, || format!("{x},{y}: COE Yes"))?;
            ensure(report.orbit_equivalent.answer != Answer::Yes, || format!("{x},{y}: OE Yes"))?;
            ensure(
                report.warnings.iter().any(|w| w.contains("characteristic polynomials differ")),
                || format!("{x},{y}: missing consistency warning"),
            )?;
            ensure(
                report.warnings.iter().any(|w| w.contains("density hypothesis unmet")),
                || format!("{x},{y}: missing density warning"),
            )?;
        }
    }
    Ok(())
}

/// Irreducible over Q by an independent test: linear factors are
/// primitive, quadratics have non-square discriminant, cubics have no
/// rational root.
fn random_irreducible(r: &mut ChaCha8Rng) -> IntPolynomial {
    loop {
        let deg = r.gen_range(1..=3usize);
        let mut c: Vec<i64> = (0..deg).map(|_| r.gen_range(-10..=10)).collect();
        c.push(r.gen_range(1..=10));
        let g = c.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g != 1 {
            continue;
        }
        let ok = match deg {
            1 => true,
            2 => {
                let disc = c[1] * c[1] - 4 * c[0] * c[2];
                disc < 0 || (disc as f64).sqrt().round().powi(2) as i64 != disc
            }
            _ => !has_rational_root(&c),
        };
        if ok {
            return IntPolynomial::from_i64s(&c);
        }
    }
}

fn has_rational_root(c: &[i64]) -> bool {
    if c[0] == 0 {
        return true;
    }
    let divisors = |n: i64| (1..=n.abs()).filter(move |k| n % k == 0);
    let lead = *c.last().expect("nonempty");
    for num in divisors(c[0]) {
        for den in divisors(lead) {
            for s in [1i64, -1] {
                // Σ c_i (s·num)^i den^(n-i) == 0
                let n = c.len() - 1;
                let val: i128 = c
                    .iter()
                    .enumerate()
                    .map(|(i, &ci)| ci as i128 * (s * num).pow(i as u32) as i128 * den.pow((n - i) as u32) as i128)
                    .sum();
                if val == 0 {
                    return true;
                }
            }
        }
    }
    false
}

// 11
fn factorization_suite() -> Check {
    let mut r = rng(11);
    for case in 0..300 {
        let count = r.gen_range(1..=4);
        let mut expected: BTreeMap<Vec<BigInt>, u32> = BTreeMap::new();
        let mut product = IntPolynomial::constant(BigInt::one());
        for _ in 0..count {
            let f = random_irreducible(&mut r);
            *expected.entry(f.coeffs().to_vec()).or_default() += 1;
            product = &product * &f;
        }
        let fl = factor(&product);
        let mut got: BTreeMap<Vec<BigInt>, u32> = BTreeMap::new();
        for (f, m) in fl.factors() {
            *got.entry(f.coeffs().to_vec()).or_default() += m;
        }
        ensure(fl.unit() == 1, || format!("case {case}: unit {}", fl.unit()))?;
        ensure(got == expected, || format!("case {case}: {product} gave {fl:?}"))?;
    }
    let h = IntPolynomial::from_i64s(&[9, 0, 1, 0, 1]);
    ensure(factor(&h).is_irreducible(), || "t^4+t^2+9 reported reducible".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("good_basis property suite", good_basis_suite, 10),
        ("dual-vector cocycle realization", realization_suite, 60),
        ("coboundary annihilation", coboundary_suite, 10),
        ("density examples", density_examples, 5),
        ("4x4 pair with t^4+t^2+9 is conjugate", conjugate_4x4, 30),
        ("diag(3,5) vs diag(5,3)", swapped_diagonal, 5),
        ("nilpotent-mod-p fast path", nilpotent_fast_path, 5),
        ("pause implies stable", pause_implies_stable, 60),
        ("conjugation by unimodular S", conjugation_identity, 60),
        ("3x3 triple guardrails", triple_guardrails, 30),
        ("polynomial factorization", factorization_suite, 30),
    ];
    let mut failed = 0;
    for (n, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*limit);
        match outcome {
            Ok(()) => {
                let note = if over { format!(" (over the {limit}s target)") } else { String::new() };
                println!("PASS {:>2}. {name} [{:.2}s]{note}", n + 1, elapsed.as_secs_f64());
            }
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2}. {name} [{:.2}s]: {msg}", n + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
