use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("Jacobi identity fails on {count} basis triple(s), first at (e{}, e{}, e{})", .first.0 + 1, .first.1 + 1, .first.2 + 1)]
    NotALieAlgebra { count: usize, first: (usize, usize, usize) },

    #[error("algebra is not nilpotent: ascending central series stabilizes at dimension {reached} of {dim}")]
    NotNilpotent { reached: usize, dim: usize },

    #[error("bracket [e{n}, e{n}] must vanish", n = .index + 1)]
    DiagonalBracket { index: usize },

    #[error("subspace is not an ideal")]
    NotAnIdeal,

    #[error("odd dimension {0}: no almost complex structure exists")]
    OddDimension(usize),

    #[error("J^2 != -Id")]
    NotAlmostComplex,

    #[error("almost complex structure is not integrable ({count} nonzero Nijenhuis component(s))")]
    NotIntegrable { count: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("basis is not J-adapted: column {column} is not J applied to column {}", .column - 1)]
    NotJAdapted { column: usize },

    #[error("bad pairing: {0}")]
    BadPairing(String),

    #[error("malformed structure equations: {0}")]
    MalformedEquations(String),

    #[error("parameter {symbol} does not occur in family {family}")]
    ForeignParameter { family: &'static str, symbol: String },

    #[error("parameter {symbol} must be real")]
    ComplexRealParameter { symbol: String },

    #[error("realified structure equations violate the Jacobi identity")]
    JacobiViolated,
}

pub type Result<T> = std::result::Result<T, Error>;
