use thiserror::Error;

use crate::subset::Subset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: wrong sizes, unknown labels, unparsable entries.
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("matrix rows do not generate a saturated lattice (maximal minors have gcd {0})")]
    Unsaturated(String),
    #[error("element {0} is a coloop; deletion would change the rank")]
    Coloop(usize),
    #[error("element {0} is a loop; contraction is undefined for this valuation")]
    Loop(usize),
    #[error("delete and contract sets overlap in {0:?}")]
    Overlap(Subset),
    #[error("basis {basis:?} cannot be exchanged: {basis:?} - {out} + {into} is not a basis")]
    ExchangeFails { basis: Subset, out: usize, into: usize },
    #[error("tangent space at alpha = {alpha:?} has rank {found}, expected {expected}")]
    Degenerate {
        alpha: Vec<i64>,
        found: usize,
        expected: usize,
    },
    #[error("alpha = {0:?} lies outside the tabulated window")]
    OutOfWindow(Vec<i64>),
    #[error("{0}")]
    Domain(String),
}
