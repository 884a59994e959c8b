//! The eight acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report stays readable; the
//! process exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use valflock::algebraic::{lindstrom_toric, LinearizedParam, ToricRep};
use valflock::convex::{check_lconvex, fenchel_dual, lconvex_is_minimizer, LConvexVerdict, WindowFunction};
use valflock::flock::{check_flock_axioms, check_flock_lemmas, extract_valuation, g_m, MatroidFlock};
use valflock::intvec::box_points;
use valflock::lazarson::{lazarson, lazarson_char_check, LazarsonVariant};
use valflock::matroid::{matroid_from_int_matrix, named_matroid, uniform, NamedMatroid};
use valflock::rigidity::{rigidity_certificate, RigidityVerdict};
use valflock::subset::k_subsets;
use valflock::{ExtInt, GroundSet, IntVec, Matroid, Triviality, Valuation};

use common::{corpus, g_oracle, random_toric, random_valuation, rng};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fin(v: i64) -> ExtInt {
    ExtInt::Fin(v)
}

/// Two-element flock: `M_(k,l)` has both bases iff `k = l`, else the
/// basis on the larger coordinate.
fn two_element_flock() -> Check {
    let g = Arc::new(GroundSet::numbered(2));
    let nu = Valuation::from_fn(g.clone(), 1, |_| fin(0));
    let flock = MatroidFlock::from_valuation(nu);
    let one = g.subset_of_ints(&[1]).unwrap();
    let two = g.subset_of_ints(&[2]).unwrap();
    for k in -5..=5 {
        for l in -5..=5 {
            let expected = match k.cmp(&l) {
                std::cmp::Ordering::Equal => vec![one, two],
                std::cmp::Ordering::Greater => vec![one],
                std::cmp::Ordering::Less => vec![two],
            };
            let m = flock.evaluate(&IntVec(vec![k, l])).map_err(|e| e.to_string())?;
            ensure!(m.bases() == expected.as_slice(), "M_({k},{l}) has bases {:?}", m.bases());
        }
    }
    Ok(())
}

/// Valuation -> flock -> valuation is the identity, and the flock passes
/// the axioms at radius 3.
fn round_trip() -> Check {
    let mut r = rng(2);
    for t in 0..200 {
        let nu = random_valuation(&mut r, 6);
        let flock = MatroidFlock::from_valuation(nu.clone());
        let ex = extract_valuation(&flock, None).map_err(|e| e.to_string())?;
        ensure!(ex.valuation == nu, "sample {t}: extracted {:?}, expected {nu:?}", ex.valuation);
        let rep = check_flock_axioms(&flock, 3, false).map_err(|e| e.to_string())?;
        ensure!(rep.passed(), "sample {t}: {:?}", rep.violation);
    }
    Ok(())
}

/// Non-bases of a loopless rank-2 matroid, i.e. its parallel pairs.
fn parallel_pairs(m: &Matroid) -> Vec<Vec<i64>> {
    let mut pairs: Vec<Vec<i64>> = k_subsets(m.len(), 2)
        .filter(|&s| !m.is_basis(s))
        .map(|s| s.iter().map(|i| i as i64 + 1).collect())
        .collect();
    pairs.sort();
    pairs
}

/// The additive example with `p = 2`, `g = 2`.
fn linearized_example() -> Check {
    let x = LinearizedParam::example(2, 2).map_err(|e| e.to_string())?;
    let displayed = [
        (vec![0, 0, 0, 0], vec![vec![1, 0, 1, 1], vec![0, 1, 1, 0]], vec![vec![1, 4]]),
        (vec![0, -1, -1, 0], vec![vec![1, 0, 0, 1], vec![0, 1, 1, 0]], vec![vec![1, 4], vec![2, 3]]),
        (vec![0, -2, -2, 0], vec![vec![1, 0, 0, 1], vec![0, 1, 1, 1]], vec![vec![2, 3]]),
    ];
    for (alpha, matrix, pairs) in &displayed {
        let a = IntVec(alpha.clone());
        let tangent = x.shift(&a).tangent();
        ensure!(&tangent.to_rows() == matrix, "tangent at {alpha:?} is {:?}", tangent.to_rows());
        let space = x.tangent_space_at(&a).map_err(|e| e.to_string())?;
        ensure!(space.same_row_space(&tangent), "saturated tangent at {alpha:?} differs");
        let m = x.matroid_at(&a).map_err(|e| e.to_string())?;
        ensure!(&parallel_pairs(&m) == pairs, "parallel pairs at {alpha:?}: {:?}", parallel_pairs(&m));
    }
    let flock = MatroidFlock::from_linearized(x);
    let nu = extract_valuation(&flock, None).map_err(|e| e.to_string())?.valuation;
    for b in k_subsets(4, 2) {
        let expected = if b.to_vec() == [0, 3] { 2 } else { 0 };
        ensure!(nu.get(b) == fin(expected), "nu({:?}) = {:?}", b.to_vec(), nu.get(b));
    }
    let cells = nu.zero_dimensional_cells(0, 4);
    let expected = vec![IntVec(vec![0, -2, -2, 0]), IntVec(vec![0, 0, 0, 0])];
    ensure!(cells == expected, "zero-dimensional cells {cells:?}");
    Ok(())
}

/// `val_p` of every maximal minor, straight from the determinant.
fn minor_valuations(rep: &ToricRep) -> Valuation {
    let p = BigInt::from(rep.p());
    let a = rep.matrix();
    Valuation::from_fn(Arc::new(GroundSet::numbered(rep.n())), rep.rank(), |b| {
        let mut det = a.minor(b);
        if det.is_zero() {
            return ExtInt::Inf;
        }
        let mut k = 0;
        while det.is_multiple_of(&p) {
            det /= &p;
            k += 1;
        }
        fin(k)
    })
}

/// The toric flock recovers the minor valuations.
fn toric_oracle() -> Check {
    let mut r = rng(4);
    for t in 0..100 {
        let rep = random_toric(&mut r);
        let oracle = minor_valuations(&rep);
        ensure!(lindstrom_toric(&rep) == oracle, "sample {t}: closed form differs from oracle");
        let flock = MatroidFlock::from_toric(rep.clone());
        let ex = extract_valuation(&flock, None).map_err(|e| e.to_string())?;
        ensure!(ex.valuation == oracle, "sample {t} ({:?}, p={}): {:?} vs {oracle:?}", rep.matrix(), rep.p(), ex.valuation);
    }
    Ok(())
}

fn rigidity() -> Check {
    let fano = named_matroid(NamedMatroid::Fano).unwrap();
    ensure!(rigidity_certificate(&fano) == RigidityVerdict::Rigid, "Fano is not certified rigid");
    for n in 2..=6 {
        for d in [1, n - 1] {
            let m = uniform(d, n).unwrap();
            let v = rigidity_certificate(&m);
            ensure!(v == RigidityVerdict::Rigid, "U({d},{n}): {v:?}");
        }
    }
    let u24 = uniform(2, 4).unwrap();
    match rigidity_certificate(&u24) {
        RigidityVerdict::NotRigid(w) => {
            ensure!(w.check_axioms().is_valid(), "witness fails the exchange axiom");
            ensure!(w.support_matroid() == u24, "witness support differs");
            ensure!(w.is_trivial().map_err(|e| e.to_string())? == Triviality::NotTrivial, "witness is trivial");
        }
        other => return Err(format!("U(2,4): {other:?}")),
    }
    Ok(())
}

fn lazarson_family() -> Check {
    let fano = named_matroid(NamedMatroid::Fano).unwrap();
    let nonfano = named_matroid(NamedMatroid::NonFano).unwrap();
    let full = lazarson(2, LazarsonVariant::Full).map_err(|e| e.to_string())?;
    let minus = lazarson(2, LazarsonVariant::Minus).map_err(|e| e.to_string())?;
    ensure!(full.find_isomorphism(&fano).is_some(), "M_2 is not the Fano matroid");
    ensure!(minus.find_isomorphism(&nonfano).is_some(), "M_2^- is not the non-Fano matroid");
    for n in 2..=6 {
        for p in [2u64, 3, 5] {
            let rep = lazarson_char_check(n, p).map_err(|e| e.to_string())?;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            ensure!(rep.det == BigInt::from(sign * n as i64), "n={n}: det {}", rep.det);
            ensure!(rep.det_matches, "n={n}: mismatch flag");
            ensure!(rep.det_divisible_by_p == (n as u64).is_multiple_of(p), "n={n}, p={p}: divisibility");
            ensure!(rep.p_divides_n == (n as u64).is_multiple_of(p), "n={n}, p={p}: p | n flag");
        }
    }
    Ok(())
}

/// `Σ w_ij max(0, x_i - x_j - c_ij) + g^ν(x) - d x_0`: L-convex with slope 0.
fn random_lconvex(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> impl Fn(&IntVec) -> ExtInt {
    use rand::Rng;
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                terms.push((i, j, r.gen_range(1..=2i64), r.gen_range(-2..=2i64)));
            }
        }
    }
    let nu = loop {
        let nu = random_valuation(r, 4);
        if nu.n() == n {
            break nu;
        }
    };
    let d = nu.d() as i64;
    move |x: &IntVec| {
        let pen: i64 = terms.iter().map(|&(i, j, w, c)| w * (x[i] - x[j] - c).max(0)).sum();
        fin(pen + nu.g_value(x) - d * x[0])
    }
}

fn discrete_convex() -> Check {
    let mut r = rng(7);
    let mut vals = corpus();
    while vals.len() < 16 {
        vals.push(random_valuation(&mut r, 4));
    }
    for nu in &vals {
        let n = nu.n();
        let lo = IntVec(vec![-3; n]);
        let hi = IntVec(vec![3; n]);
        let dual = fenchel_dual(&WindowFunction::from_valuation(nu), lo.clone(), hi.clone())
            .map_err(|e| e.to_string())?;
        for (x, v) in dual.iter() {
            ensure!(v == fin(g_oracle(nu, &x)), "dual differs from g at {x:?} for {nu:?}");
        }
        let flock = MatroidFlock::from_valuation(nu.clone());
        let g = WindowFunction::from_fn(lo, hi, |a| fin(g_m(&flock, a).expect("in range")))
            .map_err(|e| e.to_string())?;
        let rep = check_lconvex(&g);
        ensure!(
            rep.verdict == LConvexVerdict::Valid { r: Some(nu.d() as i64) },
            "g_M of {nu:?}: {:?}",
            rep.verdict
        );
    }
    for t in 0..50 {
        let n = 2 + t % 2;
        let g = random_lconvex(&mut r, n);
        let window = WindowFunction::from_fn(IntVec(vec![-3; n]), IntVec(vec![3; n]), &g)
            .map_err(|e| e.to_string())?;
        ensure!(
            check_lconvex(&window).verdict == LConvexVerdict::Valid { r: Some(0) },
            "window {t} is not L-convex"
        );
        for x in box_points(&vec![-2; n], &vec![2; n]) {
            let lo: Vec<i64> = x.as_slice().iter().map(|v| v - 3).collect();
            let hi: Vec<i64> = x.as_slice().iter().map(|v| v + 3).collect();
            let best = box_points(&lo, &hi).map(|y| g(&y)).min().unwrap();
            let exhaustive = g(&x) == best;
            ensure!(
                lconvex_is_minimizer(&g, &x, n) == exhaustive,
                "window {t}: criterion disagrees at {x:?}"
            );
        }
    }
    Ok(())
}

/// Axioms and lemma checks on every flock source.
fn flock_lemmas() -> Check {
    let mut flocks: Vec<(MatroidFlock, Option<Matroid>, i64)> = Vec::new();
    let mut r = rng(8);
    let mut vals = corpus();
    while vals.len() < 20 {
        vals.push(random_valuation(&mut r, 4));
    }
    while vals.len() < 26 {
        let nu = random_valuation(&mut r, 3);
        vals.push(nu);
    }
    for (k, nu) in vals.into_iter().enumerate() {
        let radius = if nu.n() <= 3 && k >= 20 { 3 } else { 2 };
        let support = (nu.spread() <= radius).then(|| nu.support_matroid());
        flocks.push((MatroidFlock::from_valuation(nu), support, radius));
    }
    while flocks.len() < 32 {
        let rep = random_toric(&mut r);
        if rep.n() > 4 {
            continue;
        }
        let spread = lindstrom_toric(&rep).spread();
        let support = (spread <= 2).then(|| matroid_from_int_matrix(rep.matrix(), Arc::new(GroundSet::numbered(rep.n()))));
        flocks.push((MatroidFlock::from_toric(rep), support, 2));
    }
    let x = LinearizedParam::example(2, 2).map_err(|e| e.to_string())?;
    let support = Some(x.algebraic_matroid());
    flocks.push((MatroidFlock::from_linearized(x), support, 2));

    for (t, (flock, support, radius)) in flocks.iter().enumerate() {
        let rep = check_flock_axioms(flock, *radius, true).map_err(|e| e.to_string())?;
        ensure!(rep.passed(), "flock {t}: {:?}", rep.violation);
        let lem = check_flock_lemmas(flock, *radius, support.as_ref()).map_err(|e| e.to_string())?;
        ensure!(lem.violations.is_empty(), "flock {t}: {:?}", lem.violations);
    }
    Ok(())
}

type Criterion = (&'static str, Duration, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("two-element flock", Duration::from_secs(1), two_element_flock),
        ("valuation/flock round trip", Duration::from_secs(60), round_trip),
        ("additive example, p = 2, g = 2", Duration::from_secs(5), linearized_example),
        ("toric flock vs minor valuations", Duration::from_secs(120), toric_oracle),
        ("rigidity certificates", Duration::from_secs(30), rigidity),
        ("Lazarson family", Duration::from_secs(10), lazarson_family),
        ("discrete-convex suite", Duration::from_secs(60), discrete_convex),
        ("flock lemma suites", Duration::from_secs(120), flock_lemmas),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if took <= *limit {
                Ok(())
            } else {
                Err(format!("took {took:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({took:.2?})", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
