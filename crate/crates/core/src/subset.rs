//! Fixed-width bit-set encoding of subsets of a ground set `{0, .., n-1}`.

use std::cmp::Ordering;
use std::fmt;

/// Largest ground set this crate supports.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `{0, .., 63}` stored as a bit mask.
///
/// The ordering is lexicographic on the sorted element lists: the set
/// containing the smallest element of the symmetric difference comes first.
/// For equal-sized sets this agrees with comparing `[1,2] < [1,3] < [2,3]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(Subset::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u64 << i))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement inside `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        Subset::full(n).difference(self)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Relabels the elements that survive removal of `removed`, closing the
    /// gaps so that the result lives on `{0, .., n - |removed| - 1}`.
    pub fn compress(self, removed: Subset) -> Subset {
        let top = 64 - self.0.leading_zeros() as usize;
        let mut out = 0u64;
        let mut pos = 0;
        for idx in 0..top {
            if removed.contains(idx) {
                continue;
            }
            if self.contains(idx) {
                out |= 1 << pos;
            }
            pos += 1;
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`]: spreads a subset of the compressed
    /// ground set back onto the original indices.
    pub fn expand(self, removed: Subset) -> Subset {
        let mut out = 0u64;
        let mut idx = 0;
        let mut rest = self.0;
        while rest != 0 {
            if !removed.contains(idx) {
                if rest & 1 == 1 {
                    out |= 1 << idx;
                }
                rest >>= 1;
            }
            idx += 1;
        }
        Subset(out)
    }

    /// Position of this subset in the colexicographic listing of all subsets
    /// of the same size.
    pub fn colex_rank(self) -> usize {
        self.iter()
            .enumerate()
            .map(|(k, e)| binomial(e, k + 1))
            .sum()
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let x = self.0 ^ other.0;
        if x == 0 {
            return Ordering::Equal;
        }
        let low = x & x.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetIter {}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// All `k`-subsets of `{0, .., n-1}` in colexicographic order (Gosper's hack),
/// so that the `t`-th item has `colex_rank() == t`.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    assert!(n <= 63, "ground sets above 63 elements are not supported");
    let first = if k > n { None } else { Some((1u64 << k) - 1) };
    KSubsets { n, next: first }
}

pub struct KSubsets {
    n: usize,
    next: Option<u64>,
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            if nxt >> self.n != 0 {
                None
            } else {
                Some(nxt)
            }
        };
        Some(Subset(cur))
    }
}

/// All subsets of `set` (including the empty set and `set` itself).
pub fn subsets_of(set: Subset) -> impl Iterator<Item = Subset> {
    let full = set.0;
    let mut cur = Some(0u64);
    std::iter::from_fn(move || {
        let c = cur?;
        cur = if c == full {
            None
        } else {
            Some((c.wrapping_sub(full)) & full)
        };
        Some(Subset(c))
    })
}
