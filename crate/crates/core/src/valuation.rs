//! Valuated matroids `ν : C(E, d) -> Z ∪ {∞}` and the objects they induce:
//! the support matroid, the potential `g^ν`, the matroids `M^ν_α`, cells,
//! triviality and equivalence.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cells::{CellSystem, DiffConstraint};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::intvec::{box_points, IntVec};
use crate::linalg::RatMatrix;
use crate::matroid::Matroid;
use crate::subset::{binomial, k_subsets, Subset};

/// An element of `Z ∪ {∞}`. `Inf` compares above every finite value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtInt {
    Fin(i64),
    Inf,
}

impl ExtInt {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            ExtInt::Inf => None,
        }
    }
}

impl std::ops::Add for ExtInt {
    type Output = ExtInt;

    fn add(self, other: ExtInt) -> ExtInt {
        match (self, other) {
            (ExtInt::Fin(a), ExtInt::Fin(b)) => ExtInt::Fin(a + b),
            _ => ExtInt::Inf,
        }
    }
}

impl fmt::Debug for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::Inf => f.write_str("inf"),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(v)
    }
}

/// Outcome of [`Valuation::check_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValuationCheck {
    Valid,
    /// (V1) fails: every value is infinite.
    NoFiniteValue,
    /// (V2) fails for `(basis, other, out)`: no `j` satisfies the exchange
    /// inequality.
    Exchange {
        basis: Subset,
        other: Subset,
        out: usize,
    },
}

impl ValuationCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValuationCheck::Valid)
    }
}

/// A total map from the `d`-subsets of `E` to `Z ∪ {∞}`.
///
/// Values are stored in colexicographic order of the subsets. Construction
/// does not enforce the axioms; use [`Valuation::check_axioms`].
#[derive(Clone, PartialEq, Eq)]
pub struct Valuation {
    ground: Arc<GroundSet>,
    d: usize,
    values: Vec<ExtInt>,
    finite: Vec<(Subset, i64)>,
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (b, v) in self.iter() {
            m.entry(&self.ground.labels_of(b), &v);
        }
        m.finish()
    }
}

/// Outcome of [`Valuation::is_trivial`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triviality {
    /// `M^ν_α` equals the support matroid for this integral `α`.
    Trivial(IntVec),
    NotTrivial,
}

/// A distinct matroid `M^ν_α` seen in a window scan, with the
/// lexicographically smallest `α` producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leader {
    pub matroid: Matroid,
    pub alpha: IntVec,
}

#[derive(Clone, Debug)]
pub struct LeaderScan {
    pub leaders: Vec<Leader>,
    pub radius: i64,
    /// Whether the union of all leaders' bases is the whole support.
    pub complete: bool,
}

impl Valuation {
    pub fn new(ground: Arc<GroundSet>, d: usize, values: Vec<ExtInt>) -> Result<Self> {
        let n = ground.len();
        if d > n {
            return Err(Error::Input(format!("d = {d} exceeds |E| = {n}")));
        }
        if values.len() != binomial(n, d) {
            return Err(Error::Input(format!(
                "expected {} values, got {}",
                binomial(n, d),
                values.len()
            )));
        }
        let finite = k_subsets(n, d)
            .zip(&values)
            .filter_map(|(b, v)| v.finite().map(|x| (b, x)))
            .collect();
        Ok(Valuation {
            ground,
            d,
            values,
            finite,
        })
    }

    pub fn from_fn(ground: Arc<GroundSet>, d: usize, f: impl Fn(Subset) -> ExtInt) -> Self {
        let values = k_subsets(ground.len(), d).map(f).collect();
        Self::new(ground, d, values).expect("sizes agree")
    }

    /// Sets the listed subsets to the given values, every other subset to `default`.
    pub fn from_entries(
        ground: Arc<GroundSet>,
        d: usize,
        entries: &[(Subset, ExtInt)],
        default: ExtInt,
    ) -> Result<Self> {
        let mut map = HashMap::new();
        for &(b, v) in entries {
            ground.check_subset(b)?;
            if b.len() != d {
                return Err(Error::Input(format!("subset {b:?} does not have size {d}")));
            }
            if map.insert(b, v).is_some() {
                return Err(Error::Input(format!("subset {:?} listed twice", ground.labels_of(b))));
            }
        }
        Ok(Self::from_fn(ground, d, |b| *map.get(&b).unwrap_or(&default)))
    }

    /// The valuation that is zero on every basis of `m` and infinite elsewhere.
    pub fn zero_on(m: &Matroid) -> Self {
        Self::from_fn(m.ground().clone(), m.full_rank(), |b| {
            if m.is_basis(b) {
                ExtInt::Fin(0)
            } else {
                ExtInt::Inf
            }
        })
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, b: Subset) -> ExtInt {
        debug_assert_eq!(b.len(), self.d);
        self.values[b.colex_rank()]
    }

    /// All `(B, ν(B))`, in colex order of `B`.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, ExtInt)> + '_ {
        k_subsets(self.n(), self.d).zip(self.values.iter().copied())
    }

    pub fn finite_values(&self) -> &[(Subset, i64)] {
        &self.finite
    }

    /// `max ν - min ν` over the finite values.
    pub fn spread(&self) -> i64 {
        let lo = self.finite.iter().map(|x| x.1).min().unwrap_or(0);
        let hi = self.finite.iter().map(|x| x.1).max().unwrap_or(0);
        hi - lo
    }

    /// Exhaustive check of (V1) and (V2).
    pub fn check_axioms(&self) -> ValuationCheck {
        if self.finite.is_empty() {
            return ValuationCheck::NoFiniteValue;
        }
        let lookup: HashMap<Subset, i64> = self.finite.iter().copied().collect();
        let val = |s: Subset| lookup.get(&s).map_or(ExtInt::Inf, |&v| ExtInt::Fin(v));
        // an infinite left-hand side satisfies the inequality for every j
        for &(b, vb) in &self.finite {
            for &(b2, vb2) in &self.finite {
                let lhs = ExtInt::Fin(vb + vb2);
                for i in b.difference(b2).iter() {
                    let ok = b2.difference(b).iter().any(|j| {
                        lhs >= val(b.without(i).with(j)) + val(b2.with(i).without(j))
                    });
                    if !ok {
                        return ValuationCheck::Exchange {
                            basis: b,
                            other: b2,
                            out: i,
                        };
                    }
                }
            }
        }
        ValuationCheck::Valid
    }

    /// The matroid whose bases are the finite-valued `d`-subsets.
    pub fn support_matroid(&self) -> Matroid {
        Matroid::from_bases_unchecked(
            self.ground.clone(),
            self.d,
            self.finite.iter().map(|x| x.0).collect(),
        )
    }

    /// `g^ν(α) = max_B e_B^T α - ν(B)`.
    pub fn g_value(&self, alpha: &IntVec) -> i64 {
        self.finite
            .iter()
            .map(|&(b, v)| alpha.sum_over(b) - v)
            .max()
            .expect("a valuation has a finite value")
    }

    /// The basis family `B^ν_α` of maximizers.
    pub fn optimal_bases(&self, alpha: &IntVec) -> Vec<Subset> {
        let g = self.g_value(alpha);
        self.finite
            .iter()
            .filter(|&&(b, v)| alpha.sum_over(b) - v == g)
            .map(|x| x.0)
            .collect()
    }

    /// `M^ν_α`.
    pub fn matroid_at(&self, alpha: &IntVec) -> Matroid {
        Matroid::from_bases_unchecked(self.ground.clone(), self.d, self.optimal_bases(alpha))
    }

    /// Restriction to `C(E - i, d)`; requires `i` not to be a coloop of the
    /// support matroid.
    pub fn delete(&self, i: usize) -> Result<Valuation> {
        self.ground.check_subset(Subset::singleton(i))?;
        if self.finite.iter().all(|(b, _)| b.contains(i)) {
            return Err(Error::Coloop(i));
        }
        let removed = Subset::singleton(i);
        Ok(Valuation::from_fn(
            Arc::new(self.ground.without(removed)),
            self.d,
            |b| self.get(b.expand(removed)),
        ))
    }

    /// `B ↦ ν(B + i)` on `C(E - i, d - 1)`; requires `i` not to be a loop.
    pub fn contract(&self, i: usize) -> Result<Valuation> {
        self.ground.check_subset(Subset::singleton(i))?;
        if self.finite.iter().all(|(b, _)| !b.contains(i)) {
            return Err(Error::Loop(i));
        }
        let removed = Subset::singleton(i);
        Ok(Valuation::from_fn(
            Arc::new(self.ground.without(removed)),
            self.d - 1,
            |b| self.get(b.expand(removed).with(i)),
        ))
    }

    /// `B ↦ ν(E \ B)` on `C(E, |E| - d)`.
    pub fn dual(&self) -> Valuation {
        let n = self.n();
        Valuation::from_fn(self.ground.clone(), n - self.d, |b| self.get(b.complement(n)))
    }

    /// `B ↦ ν(B) + e_B^T α`.
    pub fn shifted(&self, alpha: &IntVec) -> Valuation {
        Valuation::from_fn(self.ground.clone(), self.d, |b| {
            self.get(b) + ExtInt::Fin(alpha.sum_over(b))
        })
    }

    /// Whether `ν(B) = e_B^T α` on the support for some rational `α`; when
    /// so, an integral `α` with `M^ν_α = M^ν` is returned.
    pub fn is_trivial(&self) -> Result<Triviality> {
        if self.finite.is_empty() {
            return Err(Error::Domain("valuation has no finite value".into()));
        }
        let rows: Vec<Subset> = self.finite.iter().map(|x| x.0).collect();
        let rhs: Vec<i64> = self.finite.iter().map(|x| x.1).collect();
        if solve_on_bases(self.n(), &rows, &rhs).is_none() {
            return Ok(Triviality::NotTrivial);
        }
        // every support basis is optimal at the rational solution, so the
        // cell of the full support is nonempty; it is cut out by integral
        // difference constraints and therefore has an integer point
        let cell = self.cell_for_family(&rows);
        let alpha = cell.integer_point().ok_or_else(|| {
            Error::Domain("rational shift exists but the support cell is empty".into())
        })?;
        let alpha = normalize_first(alpha);
        debug_assert_eq!(self.matroid_at(&alpha), self.support_matroid());
        Ok(Triviality::Trivial(alpha))
    }

    /// A rational `α` with `ν(B) = ν'(B) + e_B^T α` for every `B`, if any.
    pub fn equivalence_shift(&self, other: &Valuation) -> Result<Option<Vec<BigRational>>> {
        if self.ground != other.ground || self.d != other.d {
            return Err(Error::Input("valuations live on different ground sets or ranks".into()));
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for ((b, v), (_, w)) in self.iter().zip(other.iter()) {
            match (v, w) {
                (ExtInt::Fin(a), ExtInt::Fin(c)) => {
                    rows.push(b);
                    rhs.push(a - c);
                }
                (ExtInt::Inf, ExtInt::Inf) => {}
                _ => return Ok(None),
            }
        }
        Ok(solve_on_bases(self.n(), &rows, &rhs))
    }

    /// The cell `C^ν_β`: all `α` with `B^ν_α ⊇ B^ν_β`.
    pub fn cell_inequalities(&self, beta: &IntVec) -> CellSystem {
        self.cell_for_family(&self.optimal_bases(beta))
    }

    /// Dimension of `C^ν_β` modulo `R·1`: the optimal bases at `β` pin `α`
    /// to an affine space of codimension `rank{e_B - e_B0}`.
    pub fn cell_dimension(&self, beta: &IntVec) -> usize {
        let family = self.optimal_bases(beta);
        let n = self.n();
        let Some((&b0, rest)) = family.split_first() else {
            return n.saturating_sub(1);
        };
        let e0 = IntVec::indicator(n, b0);
        let rows: Vec<Vec<BigRational>> = rest
            .iter()
            .map(|&b| {
                let e = IntVec::indicator(n, b);
                (0..n)
                    .map(|i| BigRational::from_integer(BigInt::from(e[i] - e0[i])))
                    .collect()
            })
            .collect();
        let rank = if rows.is_empty() {
            0
        } else {
            RatMatrix::new(rows).expect("rectangular").rank()
        };
        n - 1 - rank
    }

    /// Integral points of the zero-dimensional cells with `α_fixed = 0`,
    /// within `|α| <= radius`, sorted.
    pub fn zero_dimensional_cells(&self, fixed: usize, radius: i64) -> Vec<IntVec> {
        let n = self.n();
        let mut lo = vec![-radius; n];
        let mut hi = vec![radius; n];
        lo[fixed] = 0;
        hi[fixed] = 0;
        let mut pts: Vec<IntVec> = box_points(&lo, &hi)
            .collect::<Vec<_>>()
            .into_par_iter()
            .filter(|a| self.cell_dimension(a) == 0)
            .collect();
        pts.sort();
        pts
    }

    /// Difference constraints `α_i - α_j >= ν(B) - ν(B')` for `B` in `family`
    /// and finite `B' = B - i + j`.
    fn cell_for_family(&self, family: &[Subset]) -> CellSystem {
        let lookup: HashMap<Subset, i64> = self.finite.iter().copied().collect();
        let n = self.n();
        let mut raw = Vec::new();
        for &b in family {
            let vb = lookup[&b];
            for i in b.iter() {
                for j in b.complement(n).iter() {
                    if let Some(&vb2) = lookup.get(&b.without(i).with(j)) {
                        raw.push(DiffConstraint { i, j, c: vb - vb2 });
                    }
                }
            }
        }
        let reference =
            Matroid::from_bases_unchecked(self.ground.clone(), self.d, family.to_vec());
        CellSystem::new(reference, raw)
    }

    /// Default scan radius `(n - 1) S + 1` with `S` the spread of `ν`.
    pub fn default_leader_radius(&self) -> i64 {
        (self.n() as i64 - 1).max(0) * self.spread() + 1
    }

    /// Scans `{α : α_0 = 0, |α_i| <= R}` and collects the distinct `M^ν_α`.
    pub fn enumerate_leaders(&self, radius: Option<i64>) -> LeaderScan {
        let n = self.n();
        let r = radius.unwrap_or_else(|| self.default_leader_radius());
        let leaders: Vec<Leader> = if n <= 1 {
            let alpha = IntVec::zeros(n);
            vec![Leader {
                matroid: self.matroid_at(&alpha),
                alpha,
            }]
        } else {
            let chunks: Vec<BTreeMap<Vec<Subset>, IntVec>> = (-r..=r)
                .into_par_iter()
                .map(|first| {
                    let mut lo = vec![-r; n];
                    let mut hi = vec![r; n];
                    lo[0] = 0;
                    hi[0] = 0;
                    lo[1] = first;
                    hi[1] = first;
                    let mut seen: BTreeMap<Vec<Subset>, IntVec> = BTreeMap::new();
                    for alpha in box_points(&lo, &hi) {
                        seen.entry(self.optimal_bases(&alpha)).or_insert(alpha);
                    }
                    seen
                })
                .collect();
            let mut merged: BTreeMap<Vec<Subset>, IntVec> = BTreeMap::new();
            for chunk in chunks {
                for (k, a) in chunk {
                    merged
                        .entry(k)
                        .and_modify(|cur| {
                            if a < *cur {
                                *cur = a.clone();
                            }
                        })
                        .or_insert(a);
                }
            }
            let mut out: Vec<Leader> = merged
                .into_iter()
                .map(|(bases, alpha)| Leader {
                    matroid: Matroid::from_bases_unchecked(self.ground.clone(), self.d, bases),
                    alpha,
                })
                .collect();
            out.sort_by(|a, b| a.alpha.cmp(&b.alpha));
            out
        };
        let seen: HashSet<Subset> = leaders
            .iter()
            .flat_map(|l| l.matroid.bases().iter().copied())
            .collect();
        let complete = self.finite.iter().all(|(b, _)| seen.contains(b));
        LeaderScan {
            leaders,
            radius: r,
            complete,
        }
    }
}

/// Valuation of `m` that is `v` on `b0`, zero on the other bases and
/// infinite off the support. Requires every `b0 - i + j` to be a basis.
pub fn circuit_hyperplane_valuation(m: &Matroid, b0: Subset, v: i64) -> Result<Valuation> {
    if !m.is_basis(b0) {
        return Err(Error::Input(format!(
            "{:?} is not a basis",
            m.ground().labels_of(b0)
        )));
    }
    if v < 0 {
        return Err(Error::Input(format!("value {v} must be nonnegative")));
    }
    let n = m.len();
    for i in b0.iter() {
        for j in b0.complement(n).iter() {
            if !m.is_basis(b0.without(i).with(j)) {
                return Err(Error::ExchangeFails {
                    basis: b0,
                    out: i,
                    into: j,
                });
            }
        }
    }
    Ok(Valuation::from_fn(m.ground().clone(), m.full_rank(), |b| {
        if b == b0 {
            ExtInt::Fin(v)
        } else if m.is_basis(b) {
            ExtInt::Fin(0)
        } else {
            ExtInt::Inf
        }
    }))
}

/// Solves `e_B^T α = rhs_B` over Q.
fn solve_on_bases(n: usize, rows: &[Subset], rhs: &[i64]) -> Option<Vec<BigRational>> {
    if rows.is_empty() {
        return Some(vec![BigRational::zero(); n]);
    }
    let mut a = RatMatrix::zeros(rows.len(), n);
    for (r, b) in rows.iter().enumerate() {
        for i in b.iter() {
            a.set(r, i, BigRational::one());
        }
    }
    let b: Vec<BigRational> = rhs
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect();
    a.solve(&b)
}

/// Translates by a multiple of `1` so the first coordinate is zero.
fn normalize_first(alpha: IntVec) -> IntVec {
    match alpha.0.first() {
        Some(&a0) => IntVec(alpha.0.iter().map(|v| v - a0).collect()),
        None => alpha,
    }
}
