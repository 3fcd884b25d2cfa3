//! Exact arithmetic over `Q` and `Q(i)`: scalars, dense matrices, and
//! subspaces in canonical reduced row echelon form.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use scalar::{int, parse_scalar, rat, CScalar, ParseCScalarError, Scalar};
pub use subspace::{format_span, format_vector, unit, Subspace};

/// Matrix with the given 0-based entries set; everything else zero.
pub fn sparse_matrix(rows: usize, cols: usize, entries: &[(usize, usize, Scalar)]) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for (r, c, v) in entries {
        m[(*r, *c)] = v.clone();
    }
    m
}
