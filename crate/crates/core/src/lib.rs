//! Exact computations with nilpotent Lie algebras and almost complex structures.
//!
//! Everything is computed over `Q` (or `Q(i)` for complex structure
//! equations), so every dimension count and every identity check is exact.

pub mod ceq;
pub mod cpx;
pub mod error;
pub mod exactlin;
pub mod liealg;
pub mod obstruct;

pub use error::{Error, Result};
pub use exactlin::{CScalar, Matrix, Scalar, Subspace};
pub use cpx::{Acs, JClassification, JKind};
pub use liealg::{LieAlgebra, SeriesReport};
