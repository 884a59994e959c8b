//! Difference-constraint systems describing the cells `C^ν_β`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::intvec::IntVec;
use crate::matroid::Matroid;

/// `α_i - α_j >= c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiffConstraint {
    pub i: usize,
    pub j: usize,
    pub c: i64,
}

impl DiffConstraint {
    pub fn holds(&self, alpha: &IntVec) -> bool {
        alpha[self.i] - alpha[self.j] >= self.c
    }
}

/// The cell of all `α` whose optimal-basis family contains that of a
/// reference point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSystem {
    pub reference: Matroid,
    pub constraints: Vec<DiffConstraint>,
}

impl CellSystem {
    /// Keeps only the tightest constraint per ordered pair.
    pub fn new(reference: Matroid, raw: impl IntoIterator<Item = DiffConstraint>) -> Self {
        let mut best: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for k in raw {
            debug_assert_ne!(k.i, k.j);
            best.entry((k.i, k.j))
                .and_modify(|c| *c = (*c).max(k.c))
                .or_insert(k.c);
        }
        CellSystem {
            reference,
            constraints: best
                .into_iter()
                .map(|((i, j), c)| DiffConstraint { i, j, c })
                .collect(),
        }
    }

    pub fn contains(&self, alpha: &IntVec) -> bool {
        self.constraints.iter().all(|k| k.holds(alpha))
    }

    /// An integral point of the cell, if any.
    pub fn integer_point(&self) -> Option<IntVec> {
        solve_difference_constraints(self.reference.len(), &self.constraints)
    }
}

/// Bellman-Ford on the constraint graph: `α_i - α_j >= c` becomes an arc
/// `i -> j` of weight `-c`. Shortest distances from a virtual source are an
/// integral solution; a negative cycle means the system is infeasible.
pub fn solve_difference_constraints(n: usize, constraints: &[DiffConstraint]) -> Option<IntVec> {
    let mut dist = vec![0i64; n];
    for round in 0..=n {
        let mut changed = false;
        for k in constraints {
            let cand = dist[k.i] - k.c;
            if cand < dist[k.j] {
                dist[k.j] = cand;
                changed = true;
            }
        }
        if !changed {
            return Some(IntVec(dist));
        }
        if round == n {
            break;
        }
    }
    None
}
