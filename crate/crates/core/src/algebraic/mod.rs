//! Algebraic representations: toric varieties of rational linear spaces and
//! additive parametrizations over prime fields.

pub mod linearized;
pub mod poly;
pub mod toric;

pub use linearized::{
    check_frobenius_axioms, FrobeniusAxiom, FrobeniusFlockWindow, FrobeniusReport,
    FrobeniusViolation, LinearizedParam, Term,
};
pub use poly::FpPoly;
pub use toric::{
    hermite_rows, lindstrom_toric, maximal_minor_gcd, padic_minor_valuation, saturate_lattice,
    toric_matroid_at, ToricRep,
};
