use std::fmt;

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Linear subspace of `Q^n` stored by its reduced row echelon basis.
///
/// The canonical basis has no zero rows, so two subspaces are equal exactly
/// when their fields are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Matrix::zeros(0, ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Matrix::identity(ambient_dim) }
    }

    /// Span of the given vectors (dependent or zero vectors allowed).
    pub fn span<V: AsRef<[Scalar]>>(ambient_dim: usize, vectors: &[V]) -> Result<Self> {
        let rows = vectors.iter().map(|v| v.as_ref().to_vec()).collect();
        Ok(Self::row_space(&Matrix::from_rows(ambient_dim, rows)?))
    }

    /// Span of the coordinate vectors `e_i` for the given 0-based indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        let mut vectors = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= ambient_dim {
                return Err(Error::IndexOutOfRange { index: i, limit: ambient_dim });
            }
            vectors.push(unit(ambient_dim, i));
        }
        Self::span(ambient_dim, &vectors)
    }

    pub fn row_space(m: &Matrix) -> Self {
        let mut red = m.rref();
        red.matrix.truncate_rows(red.rank);
        Self { ambient_dim: m.cols(), basis: red.matrix }
    }

    /// Null space `{ v : m v = 0 }`.
    pub fn kernel(m: &Matrix) -> Self {
        let n = m.cols();
        let red = m.rref();
        let mut is_pivot = vec![false; n];
        for &p in &red.pivots {
            is_pivot[p] = true;
        }
        let vectors: Vec<Vec<Scalar>> = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut v = vec![Scalar::zero(); n];
                v[free] = Scalar::one();
                for (row, &p) in red.pivots.iter().enumerate() {
                    v[p] = -&red.matrix[(row, free)];
                }
                v
            })
            .collect();
        Self::span(n, &vectors).expect("kernel vectors have ambient length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors().map(<[Scalar]>::to_vec).collect()
    }

    /// Pivot columns of the canonical basis, strictly increasing.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .row_vectors()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("canonical rows are nonzero"))
            .collect()
    }

    /// Coordinates not used as pivots; the matching unit vectors span a complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let pivots = self.pivots();
        (0..self.ambient_dim).filter(|c| !pivots.contains(c)).collect()
    }

    /// Rows `a` with `a·v = 0` for all `v` in the subspace, spanning all such rows.
    pub fn annihilator(&self) -> Matrix {
        Subspace::kernel(&self.basis).basis
    }

    /// Reduces `v` modulo the subspace: the result vanishes on every pivot
    /// coordinate and differs from `v` by an element of the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(v.len())?;
        let mut out = v.to_vec();
        for (row, p) in self.basis.row_vectors().zip(self.pivots()) {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (o, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *o -= &factor * b;
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        other.check_len(self.ambient_dim)?;
        for v in self.basis.row_vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self ∩ other`, as the common kernel of both annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        other.check_len(self.ambient_dim)?;
        let equations = self.annihilator().stack(&other.annihilator())?;
        Ok(Subspace::kernel(&equations))
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        other.check_len(self.ambient_dim)?;
        Ok(Subspace::row_space(&self.basis.stack(&other.basis)?))
    }

    /// Image `{ m v : v ∈ self }`.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: m.cols() });
        }
        let images = self.basis.row_vectors().map(|v| m.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        Subspace::span(m.rows(), &images)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: len });
        }
        Ok(())
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("{0}");
        }
        let names: Vec<String> = (1..=self.ambient_dim).map(|i| format!("e{i}")).collect();
        f.write_str(&format_span(self, &names))
    }
}

/// `span{...}` using the given basis labels, e.g. `span{e7, e1 - 1/2 e3}`.
pub fn format_span(s: &Subspace, names: &[String]) -> String {
    if s.is_zero() {
        return "{0}".to_string();
    }
    let parts: Vec<String> = s.basis.row_vectors().map(|v| format_vector(v, names)).collect();
    format!("span{{{}}}", parts.join(", "))
}

pub fn format_vector(v: &[Scalar], names: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let negative = c < &Scalar::zero();
        let mag = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag} "));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
