mod common;

use proptest::prelude::*;
use rand::Rng;

use valflock::intvec::box_points;
use valflock::matroid::check_basis_axioms;
use valflock::subset::k_subsets;
use valflock::{IntVec, Subset, Triviality, Valuation};

use common::{g_oracle, random_valuation, rng};

/// Maximizers of `α·e_B - ν(B)` by a direct scan.
fn optimal_oracle(nu: &Valuation, alpha: &IntVec) -> Vec<Subset> {
    let best = g_oracle(nu, alpha);
    let mut out: Vec<Subset> = k_subsets(nu.n(), nu.d())
        .filter(|&b| nu.get(b).finite().is_some_and(|v| alpha.sum_over(b) - v == best))
        .collect();
    out.sort();
    out
}

fn window(n: usize, r: i64) -> Vec<IntVec> {
    box_points(&vec![-r; n], &vec![r; n]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matroids_at_points_are_rank_d_matroids(seed in any::<u64>()) {
        let nu = random_valuation(&mut rng(seed), 5);
        for a in window(nu.n(), 2) {
            let oracle = optimal_oracle(&nu, &a);
            let m = nu.matroid_at(&a);
            prop_assert_eq!(m.bases(), oracle.as_slice());
            prop_assert_eq!(m.full_rank(), nu.d());
            prop_assert!(check_basis_axioms(m.ground(), m.full_rank(), m.bases()).unwrap().is_valid());
        }
    }

    #[test]
    fn shift_and_minor_identities(seed in any::<u64>()) {
        let nu = random_valuation(&mut rng(seed), 5);
        let n = nu.n();
        for a in window(n, 2) {
            let m = nu.matroid_at(&a);
            prop_assert_eq!(&m, &nu.matroid_at(&(&a + &IntVec::ones(n))));
            for i in 0..n {
                let e = Subset::singleton(i);
                let left = m.contract(e).unwrap();
                let right = nu.matroid_at(&a.plus_indicator(e, 1)).delete(e).unwrap();
                prop_assert_eq!(left, right, "alpha {:?}, i {}", a, i);
            }
        }
    }

    #[test]
    fn potential_is_lconvex(seed in any::<u64>()) {
        let nu = random_valuation(&mut rng(seed), 4);
        let n = nu.n();
        let pts = window(n, 2);
        for x in &pts {
            prop_assert_eq!(nu.g_value(x), g_oracle(&nu, x));
            prop_assert_eq!(nu.g_value(&(x + &IntVec::ones(n))), nu.g_value(x) + nu.d() as i64);
        }
        for x in &pts {
            for y in &pts {
                prop_assert!(nu.g_value(x) + nu.g_value(y) >= nu.g_value(&x.join(y)) + nu.g_value(&x.meet(y)));
            }
        }
    }

    #[test]
    fn cell_membership_is_containment(seed in any::<u64>()) {
        let mut r = rng(seed);
        let nu = random_valuation(&mut r, 5);
        let n = nu.n();
        for _ in 0..8 {
            let beta = IntVec((0..n).map(|_| r.gen_range(-3..=3)).collect());
            let cell = nu.cell_inequalities(&beta);
            let want = nu.optimal_bases(&beta);
            for _ in 0..30 {
                let a = IntVec((0..n).map(|_| r.gen_range(-4..=4)).collect());
                let have = optimal_oracle(&nu, &a);
                let contains = want.iter().all(|b| have.contains(b));
                prop_assert_eq!(cell.contains(&a), contains, "beta {:?} alpha {:?}", beta, a);
            }
            prop_assert!(cell.contains(&beta));
            let p = cell.integer_point().expect("beta lies in its cell");
            prop_assert!(cell.contains(&p));
        }
    }

    #[test]
    fn triviality_matches_the_leader_scan(seed in any::<u64>()) {
        let nu = random_valuation(&mut rng(seed), 5);
        let support = nu.support_matroid();
        let scan = nu.enumerate_leaders(None);
        let seen = scan.leaders.iter().any(|l| l.matroid == support);
        match nu.is_trivial().unwrap() {
            Triviality::Trivial(a) => {
                prop_assert_eq!(nu.matroid_at(&a), support);
                prop_assert!(seen || !scan.complete);
            }
            Triviality::NotTrivial => prop_assert!(!seen),
        }
    }

    #[test]
    fn minors_and_dual_stay_valuations(seed in any::<u64>()) {
        let nu = random_valuation(&mut rng(seed), 5);
        prop_assert!(nu.dual().check_axioms().is_valid());
        prop_assert_eq!(nu.dual().dual(), nu.clone());
        for i in 0..nu.n() {
            if let Ok(del) = nu.delete(i) {
                prop_assert!(del.check_axioms().is_valid());
            }
            if let Ok(con) = nu.contract(i) {
                prop_assert!(con.check_axioms().is_valid());
            }
        }
    }
}

#[test]
fn corpus_support_and_leaders() {
    for nu in common::corpus() {
        let scan = nu.enumerate_leaders(None);
        assert!(scan.complete, "{nu:?}");
        for l in &scan.leaders {
            assert_eq!(nu.matroid_at(&l.alpha), l.matroid);
        }
    }
}
