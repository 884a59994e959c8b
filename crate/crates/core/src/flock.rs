//! Matroid flocks `α ↦ M_α`, window checks of their axioms, the potential
//! `g^M` and extraction of the valuation that generates a flock.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::algebraic::{LinearizedParam, ToricRep};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::intvec::{box_points, IntVec};
use crate::matroid::Matroid;
use crate::subset::{k_subsets, Subset};
use crate::valuation::{ExtInt, Valuation};

/// A flock given by a finite table on `[-radius, radius]^E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitFlock {
    pub ground: Arc<GroundSet>,
    pub rank: usize,
    pub radius: i64,
    pub table: HashMap<IntVec, Matroid>,
}

impl ExplicitFlock {
    /// Tabulates `f` on the window.
    pub fn tabulate(
        ground: Arc<GroundSet>,
        rank: usize,
        radius: i64,
        f: impl Fn(&IntVec) -> Matroid,
    ) -> Self {
        let n = ground.len();
        let table = box_points(&vec![-radius; n], &vec![radius; n])
            .map(|a| {
                let m = f(&a);
                (a, m)
            })
            .collect();
        ExplicitFlock {
            ground,
            rank,
            radius,
            table,
        }
    }

    /// Checks that every entry lives on the flock's ground set and has its rank.
    pub fn validate(&self) -> Result<()> {
        let n = self.ground.len();
        for (a, m) in &self.table {
            if a.len() != n {
                return Err(Error::Input(format!("point {a:?} has the wrong length")));
            }
            if a.norm_inf() > self.radius {
                return Err(Error::Input(format!("point {a:?} lies outside the radius")));
            }
            if **m.ground() != *self.ground || m.full_rank() != self.rank {
                return Err(Error::Input(format!(
                    "matroid at {a:?} has the wrong ground set or rank"
                )));
            }
            if !m.check_axioms().is_valid() {
                return Err(Error::Domain(format!("entry at {a:?} is not a matroid")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum FlockSource {
    FromValuation(Valuation),
    FromToric(ToricRep),
    FromLinearized(LinearizedParam),
    Explicit(ExplicitFlock),
}

/// A matroid flock with memoized evaluation.
#[derive(Debug)]
pub struct MatroidFlock {
    ground: Arc<GroundSet>,
    rank: usize,
    source: FlockSource,
    memo: Mutex<HashMap<IntVec, Arc<Matroid>>>,
}

impl MatroidFlock {
    fn with_source(ground: Arc<GroundSet>, rank: usize, source: FlockSource) -> Self {
        MatroidFlock {
            ground,
            rank,
            source,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// `α ↦ M^ν_α`.
    pub fn from_valuation(nu: Valuation) -> Self {
        Self::with_source(nu.ground().clone(), nu.d(), FlockSource::FromValuation(nu))
    }

    pub fn from_toric(rep: ToricRep) -> Self {
        Self::with_source(
            Arc::new(GroundSet::numbered(rep.n())),
            rep.rank(),
            FlockSource::FromToric(rep),
        )
    }

    pub fn from_linearized(param: LinearizedParam) -> Self {
        Self::with_source(
            Arc::new(GroundSet::numbered(param.n())),
            param.generic_rank(),
            FlockSource::FromLinearized(param),
        )
    }

    pub fn from_table(table: ExplicitFlock) -> Self {
        Self::with_source(table.ground.clone(), table.rank, FlockSource::Explicit(table))
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn source(&self) -> &FlockSource {
        &self.source
    }

    /// Default number of steps for [`extract_valuation`].
    pub fn default_cutoff(&self) -> i64 {
        match &self.source {
            FlockSource::FromValuation(nu) => nu.spread() + 1,
            _ => 16,
        }
    }

    /// `M_α` without touching the memo table.
    pub fn compute(&self, alpha: &IntVec) -> Result<Matroid> {
        if alpha.len() != self.n() {
            return Err(Error::Input(format!(
                "point {alpha:?} does not have {} coordinates",
                self.n()
            )));
        }
        match &self.source {
            FlockSource::FromValuation(nu) => Ok(nu.matroid_at(alpha)),
            FlockSource::FromToric(rep) => Ok(rep.matroid_at(alpha)),
            FlockSource::FromLinearized(param) => param.matroid_at(alpha),
            FlockSource::Explicit(t) => t
                .table
                .get(alpha)
                .cloned()
                .ok_or_else(|| Error::OutOfWindow(alpha.0.clone())),
        }
    }

    /// `M_α`, memoized.
    pub fn evaluate(&self, alpha: &IntVec) -> Result<Arc<Matroid>> {
        if let Some(m) = self.memo.lock().expect("memo lock").get(alpha) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.compute(alpha)?);
        self.memo
            .lock()
            .expect("memo lock")
            .insert(alpha.clone(), m.clone());
        Ok(m)
    }

    /// `r_α(I)`.
    pub fn rank_at(&self, alpha: &IntVec, set: Subset) -> Result<usize> {
        Ok(self.evaluate(alpha)?.rank(set))
    }
}

pub fn flock_from_valuation(nu: Valuation) -> MatroidFlock {
    MatroidFlock::from_valuation(nu)
}

pub fn flock_from_toric(rep: ToricRep) -> MatroidFlock {
    MatroidFlock::from_toric(rep)
}

pub fn flock_from_linearized(param: LinearizedParam) -> MatroidFlock {
    MatroidFlock::from_linearized(param)
}

/// Which identity failed in a window check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlockAxiom {
    /// `M_α / i = M_{α+e_i} \ i`.
    Minor(usize),
    /// `M_α = M_{α+1}`.
    Shift,
    /// `M_α / I = M_{α+e_I} \ I`.
    SetMinor(Subset),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlockViolation {
    pub alpha: IntVec,
    pub axiom: FlockAxiom,
    pub left: Matroid,
    pub right: Matroid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlockWindowReport {
    pub radius: i64,
    pub minor_checks: u64,
    pub shift_checks: u64,
    pub set_checks: u64,
    /// Checks that needed a point outside an explicit table.
    pub skipped: u64,
    pub violation: Option<FlockViolation>,
}

impl FlockWindowReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Values of a flock on a box, computed in parallel.
struct WindowTable {
    lo: i64,
    side: usize,
    n: usize,
    entries: Vec<Option<Matroid>>,
    /// First point an explicit table does not cover.
    missing: Option<IntVec>,
}

impl WindowTable {
    fn build(flock: &MatroidFlock, lo: i64, hi: i64) -> Result<Self> {
        let n = flock.n();
        let pts: Vec<IntVec> = box_points(&vec![lo; n], &vec![hi; n]).collect();
        let entries = pts
            .par_iter()
            .map(|a| match flock.compute(a) {
                Ok(m) => Ok(Some(m)),
                Err(Error::OutOfWindow(_)) => Ok(None),
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<_>>>()?;
        let missing = pts.iter().zip(&entries).find(|(_, m)| m.is_none()).map(|(a, _)| a.clone());
        Ok(WindowTable {
            lo,
            side: (hi - lo + 1) as usize,
            n,
            entries,
            missing,
        })
    }

    fn get(&self, a: &IntVec) -> Option<&Matroid> {
        let mut idx = 0usize;
        for k in 0..self.n {
            let off = a[k] - self.lo;
            if off < 0 || off as usize >= self.side {
                return None;
            }
            idx = idx * self.side + off as usize;
        }
        self.entries[idx].as_ref()
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(FlockViolation),
}

/// Verifies (MF1) and (MF2) at every `α ∈ [-radius, radius]^E`; with
/// `sets`, also `M_α / I = M_{α+e_I} \ I` for every nonempty `I`.
pub fn check_flock_axioms(
    flock: &MatroidFlock,
    radius: i64,
    sets: bool,
) -> Result<FlockWindowReport> {
    if radius < 0 {
        return Err(Error::Input("radius must be nonnegative".into()));
    }
    let n = flock.n();
    let table = WindowTable::build(flock, -radius, radius + 1)?;
    let pts: Vec<IntVec> = box_points(&vec![-radius; n], &vec![radius; n]).collect();

    let compare = |alpha: &IntVec, set: Subset, axiom: FlockAxiom, other: &IntVec| -> Outcome {
        let (Some(a), Some(b)) = (table.get(alpha), table.get(other)) else {
            return Outcome::Skip;
        };
        let equal = if matches!(axiom, FlockAxiom::Shift) {
            a == b
        } else {
            a.minor_bases(Subset::EMPTY, set) == b.minor_bases(set, Subset::EMPTY)
        };
        if equal {
            return Outcome::Pass;
        }
        let (left, right) = if matches!(axiom, FlockAxiom::Shift) {
            (a.clone(), b.clone())
        } else {
            (
                a.contract(set).expect("subset of the ground set"),
                b.delete(set).expect("subset of the ground set"),
            )
        };
        Outcome::Fail(FlockViolation {
            alpha: alpha.clone(),
            axiom,
            left,
            right,
        })
    };

    // per point: (minor, shift, set, skipped, first violation)
    let per_point = pts.par_iter().map(|alpha| {
        let mut counts = [0u64; 4];
        let mut record = |o: Outcome, slot: usize| -> Option<FlockViolation> {
            match o {
                Outcome::Pass => {
                    counts[slot] += 1;
                    None
                }
                Outcome::Skip => {
                    counts[3] += 1;
                    None
                }
                Outcome::Fail(v) => Some(v),
            }
        };
        for i in 0..n {
            let o = compare(alpha, Subset::singleton(i), FlockAxiom::Minor(i), &alpha.plus_indicator(Subset::singleton(i), 1));
            if let Some(v) = record(o, 0) {
                return (counts, Some(v));
            }
        }
        let o = compare(alpha, Subset::EMPTY, FlockAxiom::Shift, &(alpha + &IntVec::ones(n)));
        if let Some(v) = record(o, 1) {
            return (counts, Some(v));
        }
        if sets {
            for bits in 1..(1u64 << n) {
                let set = Subset::from_bits(bits);
                if set.len() < 2 {
                    continue;
                }
                let o = compare(alpha, set, FlockAxiom::SetMinor(set), &alpha.plus_indicator(set, 1));
                if let Some(v) = record(o, 2) {
                    return (counts, Some(v));
                }
            }
        }
        (counts, None)
    });
    let results: Vec<([u64; 4], Option<FlockViolation>)> = per_point.collect();
    let mut total = [0u64; 4];
    let mut violation = None;
    for (c, v) in results {
        for k in 0..4 {
            total[k] += c[k];
        }
        if violation.is_none() {
            violation = v;
        }
    }
    Ok(FlockWindowReport {
        radius,
        minor_checks: total[0],
        shift_checks: total[1],
        set_checks: total[2],
        skipped: total[3],
        violation,
    })
}

/// `g^M(α)`, summing rank increments along the staircase
/// `m1 → m1 + e_{I_1} → ... → α` with `m = min α` and `I_t = {i : α_i - m >= t}`.
pub fn g_m(flock: &MatroidFlock, alpha: &IntVec) -> Result<i64> {
    if alpha.len() != flock.n() {
        return Err(Error::Input("point has the wrong length".into()));
    }
    if alpha.is_empty() {
        return Ok(0);
    }
    let m = alpha.min();
    let top = alpha.max();
    let mut g = m * flock.rank() as i64;
    let mut gamma = IntVec(vec![m; alpha.len()]);
    for t in 1..=(top - m) {
        let step = Subset::from_indices((0..alpha.len()).filter(|&i| alpha[i] - m >= t));
        g += flock.rank_at(&gamma, step)? as i64;
        gamma = gamma.plus_indicator(step, 1);
    }
    Ok(g)
}

/// Result of [`extract_valuation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub valuation: Valuation,
    pub cutoff: i64,
    /// Subsets that never became a basis along `k e_B`, `k <= cutoff`, and
    /// were therefore given the value `∞`.
    pub hit_cutoff: Vec<Subset>,
}

/// For each `d`-subset `B`, finds the least `k` with `B` a basis of
/// `M_{k e_B}` and sets `ν(B) = k d - g^M(k e_B)`.
pub fn extract_valuation(flock: &MatroidFlock, cutoff: Option<i64>) -> Result<Extraction> {
    let cutoff = cutoff.unwrap_or_else(|| flock.default_cutoff());
    if cutoff < 1 {
        return Err(Error::Input("cutoff must be at least 1".into()));
    }
    let n = flock.n();
    let d = flock.rank();
    let subsets: Vec<Subset> = k_subsets(n, d).collect();
    let values = subsets
        .par_iter()
        .map(|&b| -> Result<ExtInt> {
            for k in 0..=cutoff {
                let alpha = IntVec::indicator(n, b).scaled(k);
                let m = match flock.evaluate(&alpha) {
                    Ok(m) => m,
                    Err(Error::OutOfWindow(_)) => break,
                    Err(e) => return Err(e),
                };
                if m.is_basis(b) {
                    return Ok(ExtInt::Fin(k * d as i64 - g_m(flock, &alpha)?));
                }
            }
            Ok(ExtInt::Inf)
        })
        .collect::<Result<Vec<ExtInt>>>()?;
    let hit_cutoff = subsets
        .iter()
        .zip(&values)
        .filter(|(_, v)| !v.is_finite())
        .map(|(b, _)| *b)
        .collect();
    let valuation = Valuation::new(flock.ground().clone(), d, values)?;
    Ok(Extraction {
        valuation,
        cutoff,
        hit_cutoff,
    })
}

/// First `α ∈ [-radius, radius]^E` with `M^ν_α ≠ M_α`, if any.
pub fn round_trip_mismatch(
    flock: &MatroidFlock,
    nu: &Valuation,
    radius: i64,
) -> Result<Option<IntVec>> {
    let n = flock.n();
    let pts: Vec<IntVec> = box_points(&vec![-radius; n], &vec![radius; n]).collect();
    let found = pts
        .par_iter()
        .map(|a| match flock.compute(a) {
            Ok(m) => Ok((m != nu.matroid_at(a)).then(|| a.clone())),
            Err(Error::OutOfWindow(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(found.into_iter().flatten().next())
}

/// A failed instance of one of the flock lemmas checked by
/// [`check_flock_lemmas`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaViolation {
    /// `r_α(J) ≠ r_α(I) + r_{α+e_I}(J \ I)`.
    Triangle { alpha: IntVec, i: Subset, j: Subset },
    /// `r_α(I) < r_β(I)` with `α <= β` and `I` disjoint from `supp(β - α)`.
    Rank { alpha: IntVec, beta: IntVec, set: Subset },
    /// `M_α = M_{α+e_J}` but `λ(J) > 0`.
    Step { alpha: IntVec, set: Subset },
    /// The points carrying one matroid split into several components.
    Walk { first: IntVec, stranded: IntVec },
    /// The union of all `B_α` in the window differs from the given support.
    Support { missing: Vec<Subset>, extra: Vec<Subset> },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LemmaReport {
    pub triangle: u64,
    pub rank: u64,
    pub step: u64,
    pub walk_regions: u64,
    pub violations: Vec<LemmaViolation>,
}

/// Exhaustive window checks of the rank triangle identity, rank
/// monotonicity, the step lemma, connectivity of matroid regions and, when a
/// support matroid is given, that the window's bases cover it exactly.
///
/// Triangle and rank checks use every `α ∈ [-radius, radius]^E`, every
/// `I ⊆ J` and every `β = α + e_K` with `K ∩ I = ∅` (single steps generate
/// the order). Region connectivity is checked on the slice `α_0 = 0`, where
/// moves `±e_J` with `0 ∉ J` suffice. Explicit tables must cover
/// `[-radius, radius + 1]^E`.
pub fn check_flock_lemmas(
    flock: &MatroidFlock,
    radius: i64,
    support: Option<&Matroid>,
) -> Result<LemmaReport> {
    let n = flock.n();
    assert!(n < 16, "window lemma checks are exponential in |E|");
    let table = WindowTable::build(flock, -radius, radius + 1)?;
    if let Some(a) = &table.missing {
        return Err(Error::OutOfWindow(a.0.clone()));
    }
    let pts: Vec<IntVec> = box_points(&vec![-radius; n], &vec![radius; n]).collect();
    let full = (1u64 << n) - 1;
    let at = |a: &IntVec| table.get(a).expect("window table covers the box").clone();

    let per_point: Vec<(u64, u64, u64, Vec<LemmaViolation>)> = pts
        .par_iter()
        .map(|alpha| {
            let m = at(alpha);
            let mut tri = 0;
            let mut rk = 0;
            let mut st = 0;
            let mut bad = Vec::new();
            for ib in 0..=full {
                let i = Subset::from_bits(ib);
                let shifted = at(&alpha.plus_indicator(i, 1));
                // triangle: all J ⊇ I
                let rest = full & !ib;
                let mut sub = rest;
                loop {
                    let j = i.union(Subset::from_bits(sub));
                    tri += 1;
                    if m.rank(j) != m.rank(i) + shifted.rank(j.difference(i)) {
                        bad.push(LemmaViolation::Triangle {
                            alpha: alpha.clone(),
                            i,
                            j,
                        });
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & rest;
                }
                // rank: β = α + e_K with K disjoint from I
                let mut k = rest;
                while k != 0 {
                    let kset = Subset::from_bits(k);
                    let beta = alpha.plus_indicator(kset, 1);
                    rk += 1;
                    if m.rank(i) < at(&beta).rank(i) {
                        bad.push(LemmaViolation::Rank {
                            alpha: alpha.clone(),
                            beta,
                            set: i,
                        });
                    }
                    k = (k - 1) & rest;
                }
                // step
                if ib != 0 && shifted == m {
                    st += 1;
                    if m.connectivity(i) != 0 {
                        bad.push(LemmaViolation::Step {
                            alpha: alpha.clone(),
                            set: i,
                        });
                    }
                }
            }
            (tri, rk, st, bad)
        })
        .collect();

    let mut report = LemmaReport::default();
    for (t, r, s, v) in per_point {
        report.triangle += t;
        report.rank += r;
        report.step += s;
        report.violations.extend(v);
    }

    if n >= 1 {
        let (regions, stranded) = walk_regions(&table, n, radius);
        report.walk_regions = regions;
        report.violations.extend(stranded);
    }

    if let Some(sup) = support {
        let mut seen: Vec<Subset> = pts
            .iter()
            .flat_map(|a| at(a).bases().to_vec())
            .collect();
        seen.sort();
        seen.dedup();
        let missing: Vec<Subset> = sup
            .bases()
            .iter()
            .filter(|b| seen.binary_search(b).is_err())
            .copied()
            .collect();
        let extra: Vec<Subset> = seen.iter().filter(|b| !sup.is_basis(**b)).copied().collect();
        if !missing.is_empty() || !extra.is_empty() {
            report
                .violations
                .push(LemmaViolation::Support { missing, extra });
        }
    }
    Ok(report)
}

/// Flood fill of each matroid's region in the slice `α_0 = 0` of the window.
fn walk_regions(table: &WindowTable, n: usize, radius: i64) -> (u64, Vec<LemmaViolation>) {
    let mut lo = vec![-radius; n];
    let mut hi = vec![radius; n];
    lo[0] = 0;
    hi[0] = 0;
    let slice: Vec<IntVec> = box_points(&lo, &hi).collect();
    let inside = |a: &IntVec| a.0.iter().all(|&v| v.abs() <= radius);
    let moves: Vec<Subset> = (1..(1u64 << n))
        .map(Subset::from_bits)
        .filter(|s| !s.contains(0))
        .collect();
    let mut first_seen: HashMap<Matroid, IntVec> = HashMap::new();
    let mut visited: HashMap<IntVec, ()> = HashMap::new();
    let mut bad = Vec::new();
    for start in &slice {
        if visited.contains_key(start) {
            continue;
        }
        let m = table.get(start).expect("window table covers the slice").clone();
        if let Some(prev) = first_seen.get(&m) {
            bad.push(LemmaViolation::Walk {
                first: prev.clone(),
                stranded: start.clone(),
            });
        } else {
            first_seen.insert(m.clone(), start.clone());
        }
        let mut queue = VecDeque::from([start.clone()]);
        visited.insert(start.clone(), ());
        while let Some(a) = queue.pop_front() {
            for &j in &moves {
                for sign in [1, -1] {
                    let b = a.plus_indicator(j, sign);
                    if !inside(&b) || visited.contains_key(&b) {
                        continue;
                    }
                    if table.get(&b) == Some(&m) {
                        visited.insert(b.clone(), ());
                        queue.push_back(b);
                    }
                }
            }
        }
    }
    (first_seen.len() as u64, bad)
}
