//! Integer vectors indexed by the ground set.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::subset::Subset;

/// A point of `Z^E`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVec(pub Vec<i64>);

impl IntVec {
    pub fn zeros(n: usize) -> Self {
        IntVec(vec![0; n])
    }

    /// The all-one vector `1`.
    pub fn ones(n: usize) -> Self {
        IntVec(vec![1; n])
    }

    /// The unit vector `e_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        Self::indicator(n, Subset::singleton(i))
    }

    /// The incidence vector `e_I`.
    pub fn indicator(n: usize, set: Subset) -> Self {
        IntVec((0..n).map(|i| set.contains(i) as i64).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// `e_B^T α`.
    #[inline]
    pub fn sum_over(&self, set: Subset) -> i64 {
        set.iter().map(|i| self.0[i]).sum()
    }

    pub fn dot(&self, other: &IntVec) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, k: i64) -> IntVec {
        IntVec(self.0.iter().map(|v| v * k).collect())
    }

    /// `self + k e_I`.
    pub fn plus_indicator(&self, set: Subset, k: i64) -> IntVec {
        let mut out = self.clone();
        for i in set.iter() {
            out.0[i] += k;
        }
        out
    }

    /// Componentwise maximum `α ∨ β`.
    pub fn join(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Componentwise minimum `α ∧ β`.
    pub fn meet(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn support(&self) -> Subset {
        Subset::from_indices(self.0.iter().enumerate().filter(|(_, v)| **v != 0).map(|(i, _)| i))
    }

    pub fn support_pos(&self) -> Subset {
        Subset::from_indices(self.0.iter().enumerate().filter(|(_, v)| **v > 0).map(|(i, _)| i))
    }

    pub fn support_neg(&self) -> Subset {
        Subset::from_indices(self.0.iter().enumerate().filter(|(_, v)| **v < 0).map(|(i, _)| i))
    }

    pub fn min(&self) -> i64 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn le(&self, other: &IntVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn norm_inf(&self) -> i64 {
        self.0.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}

impl From<Vec<i64>> for IntVec {
    fn from(v: Vec<i64>) -> Self {
        IntVec(v)
    }
}

impl Index<usize> for IntVec {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &IntVec {
    type Output = IntVec;
    fn add(self, rhs: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVec {
    type Output = IntVec;
    fn sub(self, rhs: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVec {
    type Output = IntVec;
    fn neg(self) -> IntVec {
        IntVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Iterates all points of the box `[lo, hi]` in lexicographic order.
pub fn box_points(lo: &[i64], hi: &[i64]) -> impl Iterator<Item = IntVec> {
    let lo = lo.to_vec();
    let hi = hi.to_vec();
    let empty = lo.iter().zip(&hi).any(|(a, b)| a > b);
    let mut cur = if empty { None } else { Some(lo.clone()) };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut k = next.len();
        loop {
            if k == 0 {
                cur = None;
                break;
            }
            k -= 1;
            if next[k] < hi[k] {
                next[k] += 1;
                next[k + 1..].copy_from_slice(&lo[k + 1..]);
                cur = Some(next);
                break;
            }
        }
        Some(IntVec(out))
    })
}

/// Points of the cube `[-r, r]^n`.
pub fn cube_points(n: usize, r: i64) -> impl Iterator<Item = IntVec> {
    box_points(&vec![-r; n], &vec![r; n])
}
