//! Linear constraints satisfied by every valuation of a matroid, and the
//! rigidity test they give.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::RatMatrix;
use crate::matroid::Matroid;
use crate::subset::{k_subsets, Subset};
use crate::valuation::{circuit_hyperplane_valuation, ExtInt, Triviality, Valuation};

/// Equations `ν(ac) + ν(bd) = ν(ad) + ν(bc)`, stored as indices into
/// `bases` in that order (`ac` standing for `F + a + c`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub bases: Vec<Subset>,
    pub equations: Vec<[usize; 4]>,
}

impl ConstraintSystem {
    /// Whether `values` (one per basis, in `bases` order) satisfies all equations.
    pub fn satisfied_by(&self, values: &[i64]) -> bool {
        self.equations
            .iter()
            .all(|&[ac, bd, ad, bc]| values[ac] + values[bd] == values[ad] + values[bc])
    }

    /// Coefficient matrix, one row per equation.
    pub fn matrix(&self) -> RatMatrix {
        let mut a = RatMatrix::zeros(self.equations.len(), self.bases.len());
        for (r, &[ac, bd, ad, bc]) in self.equations.iter().enumerate() {
            for (c, s) in [(ac, 1), (bd, 1), (ad, -1), (bc, -1)] {
                let v = a.get(r, c) + BigRational::from_integer(BigInt::from(s));
                a.set(r, c, v);
            }
        }
        a
    }

    /// Rows are bases, columns elements: the span of the trivial valuations.
    pub fn incidence(&self, n: usize) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.bases.len(), n);
        for (r, b) in self.bases.iter().enumerate() {
            for i in b.iter() {
                t.set(r, i, BigRational::one());
            }
        }
        t
    }
}

/// All equations from configurations `(F, a, b, c, d)` where `F + a + c`,
/// `F + b + d`, `F + a + d`, `F + b + c` are bases and `F + a + b` is not.
/// Each unordered pair of pairs is emitted once.
pub fn dw_constraints(m: &Matroid) -> ConstraintSystem {
    let bases = m.bases().to_vec();
    let index: HashMap<Subset, usize> = bases.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let n = m.len();
    let d = m.full_rank();
    let mut seen: BTreeSet<[usize; 4]> = BTreeSet::new();
    let mut equations = Vec::new();
    if d >= 2 {
        for f in k_subsets(n, d - 2) {
            if !m.is_independent(f) {
                continue;
            }
            let rest: Vec<usize> = f.complement(n).iter().collect();
            for &a in &rest {
                for &b in &rest {
                    if b == a || m.is_basis(f.with(a).with(b)) {
                        continue;
                    }
                    for &c in &rest {
                        for &e in &rest {
                            if [a, b].contains(&c) || [a, b, c].contains(&e) {
                                continue;
                            }
                            let get = |x: usize, y: usize| index.get(&f.with(x).with(y)).copied();
                            let (Some(ac), Some(bd), Some(ad), Some(bc)) =
                                (get(a, c), get(b, e), get(a, e), get(b, c))
                            else {
                                continue;
                            };
                            let mut p1 = [ac.min(bd), ac.max(bd)];
                            let mut p2 = [ad.min(bc), ad.max(bc)];
                            if p2 < p1 {
                                std::mem::swap(&mut p1, &mut p2);
                            }
                            if seen.insert([p1[0], p1[1], p2[0], p2[1]]) {
                                equations.push([ac, bd, ad, bc]);
                            }
                        }
                    }
                }
            }
        }
    }
    ConstraintSystem { bases, equations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigidityVerdict {
    Rigid,
    NotRigid(Valuation),
    /// A solution direction outside the trivial valuations, one value per basis.
    Inconclusive(Vec<BigRational>),
}

/// Compares the solution space of [`dw_constraints`] with the trivial
/// valuations; if it is larger, searches a few integral candidates for a
/// nontrivial valuation with full support.
pub fn rigidity_certificate(m: &Matroid) -> RigidityVerdict {
    let sys = dw_constraints(m);
    let n = m.len();
    let t = sys.incidence(n);
    let trivial_rank = t.rank();
    let null = sys.matrix().nullspace();
    if null.len() == trivial_rank {
        return RigidityVerdict::Rigid;
    }
    let outside: Vec<Vec<BigRational>> = null
        .into_iter()
        .filter(|w| !in_column_space(&t, trivial_rank, w))
        .collect();

    for w in &outside {
        let ints = integerize(w);
        for sign in [1i64, -1] {
            let vals: Option<Vec<i64>> = ints.iter().map(|v| (v * sign).to_i64()).collect();
            let Some(vals) = vals else { continue };
            if let Some(nu) = accept(m, &sys, &vals) {
                return RigidityVerdict::NotRigid(nu);
            }
        }
    }
    for &b0 in m.bases() {
        if let Ok(nu) = circuit_hyperplane_valuation(m, b0, 1) {
            if is_witness(m, &nu) {
                return RigidityVerdict::NotRigid(nu);
            }
        }
    }
    RigidityVerdict::Inconclusive(outside.into_iter().next().expect("nullspace exceeds T"))
}

fn in_column_space(t: &RatMatrix, rank: usize, w: &[BigRational]) -> bool {
    let rows: Vec<Vec<BigRational>> = t
        .rows()
        .iter()
        .zip(w)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    RatMatrix::new(rows).expect("rectangular").rank() == rank
}

/// Clears denominators and divides by the content.
fn integerize(w: &[BigRational]) -> Vec<BigInt> {
    let l = w.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = w
        .iter()
        .map(|v| (v * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

fn accept(m: &Matroid, sys: &ConstraintSystem, vals: &[i64]) -> Option<Valuation> {
    let lo = vals.iter().copied().min()?;
    let lookup: HashMap<Subset, i64> = sys
        .bases
        .iter()
        .zip(vals)
        .map(|(&b, &v)| (b, v - lo))
        .collect();
    let nu = Valuation::from_fn(m.ground().clone(), m.full_rank(), |b| {
        lookup.get(&b).map_or(ExtInt::Inf, |&v| ExtInt::Fin(v))
    });
    is_witness(m, &nu).then_some(nu)
}

fn is_witness(m: &Matroid, nu: &Valuation) -> bool {
    nu.check_axioms().is_valid()
        && nu.support_matroid() == *m
        && matches!(nu.is_trivial(), Ok(Triviality::NotTrivial))
}

/// Whether every value is nonnegative; witnesses are shifted to start at 0.
pub fn witness_is_normalized(nu: &Valuation) -> bool {
    nu.finite_values().iter().all(|&(_, v)| v >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intvec::IntVec;
    use crate::matroid::{named_matroid, uniform, NamedMatroid};

    #[test]
    fn constraint_counts() {
        assert!(dw_constraints(&uniform(1, 2).unwrap()).equations.is_empty());
        assert!(dw_constraints(&uniform(2, 4).unwrap()).equations.is_empty());
        let fano = named_matroid(NamedMatroid::Fano).unwrap();
        let sys = dw_constraints(&fano);
        assert!(!sys.equations.is_empty());
        assert_eq!(dw_constraints(&fano), sys);
        for eq in &sys.equations {
            let set: BTreeSet<usize> = eq.iter().copied().collect();
            assert_eq!(set.len(), 4);
        }
    }

    #[test]
    fn trivial_valuations_satisfy_constraints() {
        let fano = named_matroid(NamedMatroid::Fano).unwrap();
        let sys = dw_constraints(&fano);
        for alpha in [vec![0, 1, 2, 3, 4, 5, 6], vec![3, -1, 0, 7, 2, 2, -5]] {
            let a = IntVec(alpha);
            let vals: Vec<i64> = sys.bases.iter().map(|&b| a.sum_over(b)).collect();
            assert!(sys.satisfied_by(&vals));
        }
    }

    #[test]
    fn verdicts() {
        let fano = named_matroid(NamedMatroid::Fano).unwrap();
        assert_eq!(rigidity_certificate(&fano), RigidityVerdict::Rigid);
        assert_eq!(rigidity_certificate(&uniform(1, 3).unwrap()), RigidityVerdict::Rigid);
        let u24 = uniform(2, 4).unwrap();
        match rigidity_certificate(&u24) {
            RigidityVerdict::NotRigid(nu) => {
                assert!(nu.check_axioms().is_valid());
                assert_eq!(nu.support_matroid(), u24);
                assert_eq!(nu.is_trivial().unwrap(), Triviality::NotTrivial);
                assert!(witness_is_normalized(&nu));
            }
            other => panic!("expected NotRigid, got {other:?}"),
        }
    }
}
