//! Generators and brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use valflock::algebraic::ToricRep;
use valflock::matroid::{check_basis_axioms, uniform};
use valflock::subset::k_subsets;
use valflock::{ExtInt, GroundSet, IntMatrix, IntVec, Matroid, Subset, Valuation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimum weight of a perfect matching between the rows of `w` and the
/// columns in `cols`; `None` entries are infinite.
pub fn tropical_det(w: &[Vec<Option<i64>>], cols: &[usize]) -> ExtInt {
    fn go(w: &[Vec<Option<i64>>], row: usize, free: &mut Vec<usize>) -> ExtInt {
        if row == w.len() {
            return ExtInt::Fin(0);
        }
        let mut best = ExtInt::Inf;
        for k in 0..free.len() {
            let c = free.remove(k);
            if let Some(x) = w[row][c] {
                best = best.min(go(w, row + 1, free) + ExtInt::Fin(x));
            }
            free.insert(k, c);
        }
        best
    }
    go(w, 0, &mut cols.to_vec())
}

/// Shifts the finite values so the least is 0.
pub fn normalized(nu: &Valuation) -> Valuation {
    let lo = nu.finite_values().iter().map(|&(_, v)| v).min().unwrap_or(0);
    Valuation::from_fn(nu.ground().clone(), nu.d(), |b| match nu.get(b) {
        ExtInt::Fin(v) => ExtInt::Fin(v - lo),
        ExtInt::Inf => ExtInt::Inf,
    })
}

fn in_range(nu: &Valuation) -> bool {
    let infinite = nu.iter().filter(|(_, v)| !v.is_finite()).count();
    nu.finite_values().iter().all(|&(_, v)| (0..=3).contains(&v)) && infinite <= 2
}

/// Tropical Plücker vector of a random weight matrix: always a valuation.
fn stiefel(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Option<Valuation> {
    let w: Vec<Vec<Option<i64>>> = (0..d)
        .map(|_| {
            (0..n)
                .map(|_| match rng.gen_range(0..20) {
                    0..=9 => Some(0),
                    10..=16 => Some(1),
                    17..=18 => Some(2),
                    _ => None,
                })
                .collect()
        })
        .collect();
    let ground = Arc::new(GroundSet::numbered(n));
    let nu = Valuation::from_fn(ground, d, |b| tropical_det(&w, &b.to_vec()));
    if nu.finite_values().is_empty() {
        return None;
    }
    Some(normalized(&nu))
}

/// Random values on a random near-uniform support, kept only if valid.
fn rejection(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Option<Valuation> {
    let ground = Arc::new(GroundSet::numbered(n));
    let mut bases: Vec<Subset> = k_subsets(n, d).collect();
    bases.shuffle(rng);
    let drop = rng.gen_range(0..=2).min(bases.len() - 1);
    let kept: Vec<Subset> = bases[drop..].to_vec();
    if !check_basis_axioms(&ground, d, &kept).ok()?.is_valid() {
        return None;
    }
    let values: HashMap<Subset, i64> = kept.iter().map(|&b| (b, rng.gen_range(0..=3))).collect();
    let nu = Valuation::from_fn(ground, d, |b| values.get(&b).map_or(ExtInt::Inf, |&v| ExtInt::Fin(v)));
    nu.check_axioms().is_valid().then(|| normalized(&nu))
}

/// A valid valuation with `n <= max_n`, `d <= 3`, values in `0..=3` with
/// minimum 0 and at most two infinite entries.
pub fn random_valuation(rng: &mut ChaCha8Rng, max_n: usize) -> Valuation {
    loop {
        let n = rng.gen_range(2..=max_n);
        let d = rng.gen_range(1..=3.min(n - 1));
        let candidate = if rng.gen_bool(0.3) {
            rejection(rng, n, d)
        } else {
            stiefel(rng, n, d)
        };
        if let Some(nu) = candidate {
            if in_range(&nu) && nu.check_axioms().is_valid() {
                return nu;
            }
        }
    }
}

/// A full-rank saturated integer matrix with entries in `[-4, 4]`.
pub fn random_toric(rng: &mut ChaCha8Rng) -> ToricRep {
    let primes = [2u64, 3, 5];
    loop {
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(d..=6);
        let rows: Vec<Vec<i64>> = (0..d)
            .map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        let p = *primes.choose(rng).unwrap();
        if let Ok(rep) = ToricRep::new(IntMatrix::from_i64(&rows).unwrap(), p) {
            return rep;
        }
    }
}

/// Hand-picked valuations used across suites.
pub fn corpus() -> Vec<Valuation> {
    let g4 = Arc::new(GroundSet::numbered(4));
    let e = |l: &[i64]| g4.subset_of_ints(l).unwrap();
    let bump = Valuation::from_entries(
        g4.clone(),
        2,
        &[(e(&[1, 2]), 1.into()), (e(&[3, 4]), 1.into())],
        ExtInt::Fin(0),
    )
    .unwrap();
    let twist = Valuation::from_entries(g4.clone(), 2, &[(e(&[1, 4]), 2.into())], ExtInt::Fin(0)).unwrap();
    let g2 = Arc::new(GroundSet::numbered(2));
    let pair = Valuation::from_fn(g2, 1, |_| ExtInt::Fin(0));
    let partial = Valuation::from_entries(
        g4.clone(),
        2,
        &[(e(&[1, 2]), ExtInt::Inf), (e(&[3, 4]), 1.into())],
        ExtInt::Fin(0),
    )
    .unwrap();
    let all = vec![
        pair,
        bump,
        twist,
        partial,
        Valuation::zero_on(&uniform(2, 3).unwrap()),
        Valuation::zero_on(&uniform(1, 4).unwrap()),
    ];
    assert!(all.iter().all(|nu| nu.check_axioms().is_valid()));
    all
}

/// `g^ν(α)` by scanning every subset, finite or not.
pub fn g_oracle(nu: &Valuation, alpha: &IntVec) -> i64 {
    k_subsets(nu.n(), nu.d())
        .filter_map(|b| nu.get(b).finite().map(|v| alpha.sum_over(b) - v))
        .max()
        .unwrap()
}

/// Rank by brute force: the largest intersection with a basis.
pub fn rank_oracle(m: &Matroid, s: Subset) -> usize {
    m.bases().iter().map(|b| b.intersection(s).len()).max().unwrap_or(0)
}
