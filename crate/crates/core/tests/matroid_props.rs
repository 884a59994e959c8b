mod common;

use std::sync::Arc;

use proptest::prelude::*;

use valflock::lazarson::{lazarson, lazarson_matrix, LazarsonVariant};
use valflock::matroid::{check_basis_axioms, matroid_from_fp_matrix, matroid_from_matrix_on, named_matroid, uniform, NamedMatroid};
use valflock::subset::subsets_of;
use valflock::{FieldSpec, FpMatrix, GroundSet, Matroid, Subset};

use common::rank_oracle;

fn library() -> Vec<Matroid> {
    let mut ms = vec![
        named_matroid(NamedMatroid::Fano).unwrap(),
        named_matroid(NamedMatroid::NonFano).unwrap(),
        uniform(2, 4).unwrap(),
        uniform(3, 6).unwrap(),
        uniform(0, 3).unwrap(),
        uniform(4, 4).unwrap(),
        lazarson(2, LazarsonVariant::Minus).unwrap(),
    ];
    let fano = ms[0].clone();
    ms.push(fano.dual());
    ms.push(fano.delete(Subset::singleton(0)).unwrap());
    ms.push(fano.contract(Subset::from_indices([0, 1])).unwrap());
    ms
}

fn gf_matroid(p: u64, rows: &[Vec<u64>]) -> Matroid {
    let a = FpMatrix::from_rows(p, rows);
    matroid_from_fp_matrix(&a, Arc::new(GroundSet::numbered(rows[0].len())))
}

#[test]
fn constructed_matroids_satisfy_the_axioms() {
    for m in library() {
        let check = check_basis_axioms(m.ground(), m.full_rank(), m.bases()).unwrap();
        assert!(check.is_valid(), "{m:?}");
    }
}

#[test]
fn rank_is_monotone_and_submodular() {
    for m in library() {
        let full = m.ground().full();
        let sets: Vec<Subset> = subsets_of(full).collect();
        for &a in &sets {
            assert_eq!(m.rank(a), rank_oracle(&m, a));
        }
        for &a in &sets {
            for &b in &sets {
                let (ra, rb) = (m.rank(a), m.rank(b));
                assert!(ra + rb >= m.rank(a.union(b)) + m.rank(a.intersection(b)));
                if a.is_subset_of(b) {
                    assert!(ra <= rb);
                }
            }
        }
    }
}

#[test]
fn duality_swaps_deletion_and_contraction() {
    for m in library().into_iter().filter(|m| m.len() <= 7) {
        let dual = m.dual();
        assert_eq!(dual.dual(), m);
        for i in subsets_of(m.ground().full()) {
            assert_eq!(m.delete(i).unwrap().dual(), dual.contract(i).unwrap(), "{m:?} I={i:?}");
            assert_eq!(m.contract(i).unwrap().dual(), dual.delete(i).unwrap(), "{m:?} I={i:?}");
        }
    }
}

#[test]
fn lazarson_matrix_over_q_is_non_fano() {
    let (a, ground) = lazarson_matrix(2);
    let m = matroid_from_matrix_on(&a.to_rat(), FieldSpec::Rationals, ground).unwrap();
    let nonfano = named_matroid(NamedMatroid::NonFano).unwrap();
    let iso = m.find_isomorphism(&nonfano).expect("isomorphic");
    // the bijection carries bases to bases
    for &b in m.bases() {
        let image = Subset::from_indices(b.iter().map(|i| iso[i]));
        assert!(nonfano.is_basis(image));
    }
    // over GF(2) the same matrix gives the Fano matroid
    let (a, ground) = lazarson_matrix(2);
    let m2 = matroid_from_matrix_on(&a.to_rat(), FieldSpec::PrimeField(2), ground).unwrap();
    assert!(m2.find_isomorphism(&named_matroid(NamedMatroid::Fano).unwrap()).is_some());
}

#[test]
fn isomorphism_distinguishes_fano_from_non_fano() {
    let fano = named_matroid(NamedMatroid::Fano).unwrap();
    let nonfano = named_matroid(NamedMatroid::NonFano).unwrap();
    assert!(fano.find_isomorphism(&nonfano).is_none());
    assert!(fano.find_isomorphism(&fano).is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_matroids_are_matroids(
        p in prop::sample::select(vec![2u64, 3, 5]),
        d in 1usize..=3,
        n in 3usize..=6,
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let mut r = common::rng(seed);
        let rows: Vec<Vec<u64>> = (0..d).map(|_| (0..n).map(|_| r.gen_range(0..p)).collect()).collect();
        let m = gf_matroid(p, &rows);
        prop_assert!(check_basis_axioms(m.ground(), m.full_rank(), m.bases()).unwrap().is_valid());
        for s in subsets_of(m.ground().full()) {
            prop_assert_eq!(m.rank(s), rank_oracle(&m, s));
        }
    }
}
