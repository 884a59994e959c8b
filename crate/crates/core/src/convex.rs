//! M- and L-convexity, Legendre-Fenchel duality and the L-convex local
//! optimality test, all by exhaustive computation on finite boxes.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intvec::{box_points, IntVec};
use crate::subset::Subset;
use crate::valuation::{ExtInt, Valuation};

/// A function on the lattice points of a box `[lo, hi]`, taking values in
/// `Z ∪ {∞}`. Points outside the box read as `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowFunction {
    lo: IntVec,
    hi: IntVec,
    strides: Vec<usize>,
    values: Vec<ExtInt>,
}

impl WindowFunction {
    /// `values` lists the box points in lexicographic order.
    pub fn new(lo: IntVec, hi: IntVec, values: Vec<ExtInt>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::Input("box bounds differ in length".into()));
        }
        if !lo.le(&hi) {
            return Err(Error::Input(format!("empty box {lo:?}..{hi:?}")));
        }
        let n = lo.len();
        let mut strides = vec![1usize; n];
        let mut size = 1usize;
        for k in (0..n).rev() {
            strides[k] = size;
            size = size
                .checked_mul((hi[k] - lo[k] + 1) as usize)
                .ok_or_else(|| Error::Input("box too large".into()))?;
        }
        if values.len() != size {
            return Err(Error::Input(format!(
                "box has {size} points, got {} values",
                values.len()
            )));
        }
        if values.iter().all(|v| !v.is_finite()) {
            return Err(Error::Domain("function has empty domain".into()));
        }
        Ok(WindowFunction {
            lo,
            hi,
            strides,
            values,
        })
    }

    pub fn from_fn(lo: IntVec, hi: IntVec, f: impl Fn(&IntVec) -> ExtInt) -> Result<Self> {
        let values = box_points(&lo.0, &hi.0).map(|x| f(&x)).collect();
        Self::new(lo, hi, values)
    }

    /// `f(e_B) = ν(B)` on `[0, 1]^E`, `∞` at every other point.
    pub fn from_valuation(nu: &Valuation) -> Self {
        let n = nu.n();
        let d = nu.d();
        Self::from_fn(IntVec::zeros(n), IntVec::ones(n), |x| {
            let b = x.support();
            if b.len() == d {
                nu.get(b)
            } else {
                ExtInt::Inf
            }
        })
        .expect("a valuation has a finite value")
    }

    pub fn n(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &IntVec {
        &self.lo
    }

    pub fn hi(&self) -> &IntVec {
        &self.hi
    }

    pub fn contains(&self, x: &IntVec) -> bool {
        self.lo.le(x) && x.le(&self.hi)
    }

    fn index(&self, x: &IntVec) -> usize {
        (0..self.n())
            .map(|k| (x[k] - self.lo[k]) as usize * self.strides[k])
            .sum()
    }

    pub fn get(&self, x: &IntVec) -> ExtInt {
        if self.contains(x) {
            self.values[self.index(x)]
        } else {
            ExtInt::Inf
        }
    }

    /// All `(x, f(x))` in lexicographic order of `x`.
    pub fn iter(&self) -> impl Iterator<Item = (IntVec, ExtInt)> + '_ {
        box_points(&self.lo.0, &self.hi.0).zip(self.values.iter().copied())
    }

    /// Points with finite value.
    pub fn domain(&self) -> Vec<(IntVec, i64)> {
        self.iter()
            .filter_map(|(x, v)| v.finite().map(|v| (x, v)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LConvexViolation {
    /// `g(x) + g(y) < g(x ∨ y) + g(x ∧ y)`.
    Submodularity { x: IntVec, y: IntVec },
    /// `g(x + 1) - g(x)` is infinite, or differs from the slope seen at `other`.
    Shift { x: IntVec, other: Option<IntVec> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LConvexVerdict {
    /// The common slope `r`, if any shift pair had both values finite.
    Valid { r: Option<i64> },
    Violation(LConvexViolation),
}

/// Result of [`check_lconvex`] with its coverage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LConvexReport {
    pub verdict: LConvexVerdict,
    pub pairs_checked: u64,
    pub shifts_checked: u64,
    /// Points whose `x + 1` leaves the box.
    pub shifts_skipped: u64,
}

/// Submodularity over all pairs of box points (the box is a lattice, so
/// `x ∨ y` and `x ∧ y` never leave it) and constancy of `g(x + 1) - g(x)`.
pub fn check_lconvex(g: &WindowFunction) -> LConvexReport {
    let pts: Vec<IntVec> = box_points(&g.lo.0, &g.hi.0).collect();
    let total = pts.len();
    let bad = (0..total).into_par_iter().find_first(|&a| {
        let x = &pts[a];
        let gx = g.values[a];
        (a..total).any(|b| {
            let y = &pts[b];
            let lhs = gx + g.values[b];
            lhs < g.get(&x.join(y)) + g.get(&x.meet(y))
        })
    });
    let pairs_checked = (total * (total + 1) / 2) as u64;
    if let Some(a) = bad {
        let x = &pts[a];
        let y = (a..total)
            .map(|b| &pts[b])
            .find(|y| g.get(x) + g.get(y) < g.get(&x.join(y)) + g.get(&x.meet(y)))
            .expect("violation was found before");
        return LConvexReport {
            verdict: LConvexVerdict::Violation(LConvexViolation::Submodularity {
                x: x.clone(),
                y: y.clone(),
            }),
            pairs_checked,
            shifts_checked: 0,
            shifts_skipped: 0,
        };
    }

    let one = IntVec::ones(g.n());
    let mut slope: Option<(i64, IntVec)> = None;
    let mut checked = 0;
    let mut skipped = 0;
    for (x, gx) in g.iter() {
        let up = &x + &one;
        if !g.contains(&up) {
            skipped += 1;
            continue;
        }
        checked += 1;
        let violation = match (gx, g.get(&up)) {
            (ExtInt::Inf, ExtInt::Inf) => None,
            (ExtInt::Fin(a), ExtInt::Fin(b)) => match &slope {
                None => {
                    slope = Some((b - a, x.clone()));
                    None
                }
                Some((r, at)) if *r != b - a => Some(Some(at.clone())),
                Some(_) => None,
            },
            _ => Some(None),
        };
        if let Some(other) = violation {
            return LConvexReport {
                verdict: LConvexVerdict::Violation(LConvexViolation::Shift { x, other }),
                pairs_checked,
                shifts_checked: checked,
                shifts_skipped: skipped,
            };
        }
    }
    LConvexReport {
        verdict: LConvexVerdict::Valid {
            r: slope.map(|s| s.0),
        },
        pairs_checked,
        shifts_checked: checked,
        shifts_skipped: skipped,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MConvexVerdict {
    Valid,
    /// No `j ∈ supp⁻(x - y)` satisfies the exchange inequality for `i`.
    Violation { x: IntVec, y: IntVec, i: usize },
}

/// Exhaustive exchange check over all pairs of domain points.
pub fn check_mconvex(f: &WindowFunction) -> MConvexVerdict {
    let dom = f.domain();
    let found = dom.par_iter().find_map_first(|(x, fx)| {
        for (y, fy) in &dom {
            let diff = x - y;
            let lhs = ExtInt::Fin(fx + fy);
            let neg: Vec<usize> = diff.support_neg().iter().collect();
            for i in diff.support_pos().iter() {
                let ok = neg.iter().any(|&j| {
                    let mut x2 = x.clone();
                    x2.0[i] -= 1;
                    x2.0[j] += 1;
                    let mut y2 = y.clone();
                    y2.0[i] += 1;
                    y2.0[j] -= 1;
                    lhs >= f.get(&x2) + f.get(&y2)
                });
                if !ok {
                    return Some((x.clone(), y.clone(), i));
                }
            }
        }
        None
    });
    match found {
        Some((x, y, i)) => MConvexVerdict::Violation { x, y, i },
        None => MConvexVerdict::Valid,
    }
}

/// `h•(x) = max { x^T y - h(y) : y ∈ dom(h) }` for every `x` of `[lo, hi]`.
pub fn fenchel_dual(h: &WindowFunction, lo: IntVec, hi: IntVec) -> Result<WindowFunction> {
    if lo.len() != h.n() || hi.len() != h.n() {
        return Err(Error::Input("dual box has the wrong dimension".into()));
    }
    let dom = h.domain();
    let pts: Vec<IntVec> = box_points(&lo.0, &hi.0).collect();
    let values = pts
        .par_iter()
        .map(|x| {
            let best = dom.iter().map(|(y, v)| x.dot(y) - v).max().expect("nonempty domain");
            ExtInt::Fin(best)
        })
        .collect();
    WindowFunction::new(lo, hi, values)
}

/// The local criterion for a minimizer of an L-convex `G`: `G(x) <= G(x + e_I)`
/// for every `I` and `G(x) = G(x + 1)`.
pub fn lconvex_is_minimizer(g: impl Fn(&IntVec) -> ExtInt, x: &IntVec, n: usize) -> bool {
    assert!(n < 64, "dimension too large for subset enumeration");
    let gx = g(x);
    if gx != g(&(x + &IntVec::ones(n))) {
        return false;
    }
    (0..1u64 << n).all(|bits| gx <= g(&x.plus_indicator(Subset::from_bits(bits), 1)))
}
