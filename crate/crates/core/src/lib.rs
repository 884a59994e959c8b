//! Matroid flocks, valuated matroids and their discrete-convex potentials.

pub mod algebraic;
pub mod cells;
pub mod convex;
pub mod error;
pub mod flock;
pub mod ground;
pub mod intvec;
pub mod json;
pub mod lazarson;
pub mod linalg;
pub mod matroid;
pub mod rigidity;
pub mod subset;
pub mod valuation;

pub use cells::{CellSystem, DiffConstraint};
pub use error::{Error, Result};
pub use ground::{GroundSet, Label};
pub use intvec::IntVec;
pub use linalg::{FieldSpec, FpMatrix, IntMatrix, RatMatrix};
pub use matroid::{Matroid, NamedMatroid};
pub use subset::Subset;
pub use valuation::{ExtInt, Triviality, Valuation, ValuationCheck};
pub use algebraic::{LinearizedParam, ToricRep};
pub use convex::WindowFunction;
pub use flock::{ExplicitFlock, MatroidFlock};
pub use rigidity::RigidityVerdict;
