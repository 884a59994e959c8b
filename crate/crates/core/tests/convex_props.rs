mod common;

use proptest::prelude::*;

use valflock::convex::{check_mconvex, fenchel_dual, MConvexVerdict, WindowFunction};
use valflock::subset::k_subsets;
use valflock::{ExtInt, IntVec, Valuation};

use common::{g_oracle, random_valuation, rng};

fn cube(n: usize, r: i64) -> (IntVec, IntVec) {
    (IntVec(vec![-r; n]), IntVec(vec![r; n]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_of_a_valuation_is_its_potential(seed in any::<u64>()) {
        let nu = random_valuation(&mut rng(seed), 5);
        let (lo, hi) = cube(nu.n(), 2);
        let dual = fenchel_dual(&WindowFunction::from_valuation(&nu), lo, hi).unwrap();
        for (x, v) in dual.iter() {
            prop_assert_eq!(v, ExtInt::Fin(g_oracle(&nu, &x)));
        }
    }

    /// The slopes of `f•` needed to recover `f(e_B)` are at most the spread
    /// plus one, so a box of that radius suffices.
    #[test]
    fn double_dual_restores_the_valuation(seed in any::<u64>()) {
        let nu = random_valuation(&mut rng(seed), 4);
        let f = WindowFunction::from_valuation(&nu);
        let (lo, hi) = cube(nu.n(), nu.spread() + 1);
        let g = fenchel_dual(&f, lo, hi).unwrap();
        let back = fenchel_dual(&g, f.lo().clone(), f.hi().clone()).unwrap();
        for b in k_subsets(nu.n(), nu.d()) {
            let x = IntVec::indicator(nu.n(), b);
            if let ExtInt::Fin(v) = nu.get(b) {
                prop_assert_eq!(back.get(&x), ExtInt::Fin(v));
            }
        }
    }

    #[test]
    fn exchange_is_mconvexity(seed in any::<u64>(), noise in prop::collection::vec(0i64..=3, 20)) {
        // random values on all d-subsets, valid or not
        let base = random_valuation(&mut rng(seed), 5);
        let subsets: Vec<_> = k_subsets(base.n(), base.d()).collect();
        let nu = Valuation::from_fn(base.ground().clone(), base.d(), |b| {
            let k = subsets.iter().position(|&s| s == b).unwrap();
            ExtInt::Fin(noise[k % noise.len()])
        });
        let m = check_mconvex(&WindowFunction::from_valuation(&nu));
        prop_assert_eq!(matches!(m, MConvexVerdict::Valid), nu.check_axioms().is_valid());
        prop_assert!(matches!(check_mconvex(&WindowFunction::from_valuation(&base)), MConvexVerdict::Valid));
    }
}
