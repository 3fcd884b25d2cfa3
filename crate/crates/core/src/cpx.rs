//! Almost complex structures on Lie algebras: integrability, the ascending
//! J-compatible series and the nilpotent / weakly non-nilpotent / strongly
//! non-nilpotent trichotomy.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{unit, Matrix, Scalar, Subspace};
use crate::liealg::LieAlgebra;

/// Endomorphism `J` with `J² = -Id`, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acs {
    matrix: Matrix,
}

impl Acs {
    /// Validates `j² = -Id` on an even-dimensional square matrix.
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        if matrix.rows() % 2 == 1 {
            return Err(Error::OddDimension(matrix.rows()));
        }
        if matrix.mul(&matrix)? != Matrix::identity(matrix.rows()).neg() {
            return Err(Error::NotAlmostComplex);
        }
        Ok(Self { matrix })
    }

    /// `J e_x = e_y`, `J e_y = -e_x` for every 0-based pair `(x, y)`.
    pub fn from_pairs(dim: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Matrix::zeros(dim, dim);
        for &(x, y) in pairs {
            for idx in [x, y] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, limit: dim });
                }
            }
            m[(y, x)] = num_traits::One::one();
            m[(x, y)] = -Scalar::from_integer(1.into());
        }
        Self::new(m)
    }

    /// The structure pairing `e_{2a}` with `e_{2a+1}`.
    pub fn standard(dim: usize) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (0..dim / 2).map(|a| (2 * a, 2 * a + 1)).collect();
        Self::from_pairs(dim, &pairs)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.mul_vec(v)
    }

    /// `J S`.
    pub fn image(&self, s: &Subspace) -> Result<Subspace> {
        s.image(&self.matrix)
    }

    pub fn is_invariant(&self, s: &Subspace) -> Result<bool> {
        Ok(&self.image(s)? == s)
    }

    /// Conjugates by the basis change whose columns are the new basis.
    pub fn change_basis(&self, p: &Matrix) -> Result<Acs> {
        let m = p.inverse()?.mul(&self.matrix)?.mul(p)?;
        Acs::new(m)
    }
}

fn check_dims(g: &LieAlgebra, j: &Acs) -> Result<()> {
    if g.dim() != j.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: j.dim() });
    }
    Ok(())
}

/// `N_J(x, y) = [x,y] + J[Jx,y] + J[x,Jy] - [Jx,Jy]`.
pub fn nijenhuis(g: &LieAlgebra, j: &Acs, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
    check_dims(g, j)?;
    let jx = j.apply(x)?;
    let jy = j.apply(y)?;
    let mut inner = g.bracket(&jx, y)?;
    for (a, b) in inner.iter_mut().zip(g.bracket(x, &jy)?) {
        *a += b;
    }
    let mut out = g.bracket(x, y)?;
    for ((o, a), b) in out.iter_mut().zip(j.apply(&inner)?).zip(g.bracket(&jx, &jy)?) {
        *o += a;
        *o -= b;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisDefect {
    pub pair: (usize, usize),
    pub defect: Vec<Scalar>,
}

/// Nonzero `N_J(e_i, e_k)` for `i < k`; empty exactly when `J` is integrable.
pub fn integrability_defect(g: &LieAlgebra, j: &Acs) -> Result<Vec<NijenhuisDefect>> {
    check_dims(g, j)?;
    let n = g.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            let defect = nijenhuis(g, j, &unit(n, i), &unit(n, k))?;
            if defect.iter().any(|x| !x.is_zero()) {
                out.push(NijenhuisDefect { pair: (i, k), defect });
            }
        }
    }
    Ok(out)
}

pub fn is_integrable(g: &LieAlgebra, j: &Acs) -> Result<bool> {
    Ok(integrability_defect(g, j)?.is_empty())
}

fn ensure_integrable(g: &LieAlgebra, j: &Acs) -> Result<()> {
    let defects = integrability_defect(g, j)?;
    if defects.is_empty() {
        Ok(())
    } else {
        Err(Error::NotIntegrable { count: defects.len() })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JKind {
    Nilpotent,
    WeaklyNonNilpotent,
    StronglyNonNilpotent,
}

impl JKind {
    /// `a_1(J) ≠ 0`.
    pub fn is_quasi_nilpotent(self) -> bool {
        self != JKind::StronglyNonNilpotent
    }
}

impl fmt::Display for JKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JKind::Nilpotent => "nilpotent",
            JKind::WeaklyNonNilpotent => "weakly non-nilpotent",
            JKind::StronglyNonNilpotent => "strongly non-nilpotent",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JClassification {
    pub kind: JKind,
    /// Least `t` with `a_t(J) = a_{t+1}(J)`.
    pub stabilization_index: usize,
    /// `a_0(J), …, a_t(J)`.
    pub j_series: Vec<Subspace>,
}

impl JClassification {
    /// `a_k(J)`, saturating at the stable term.
    pub fn term(&self, k: usize) -> &Subspace {
        &self.j_series[k.min(self.stabilization_index)]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.j_series.iter().map(Subspace::dim).collect()
    }
}

/// Ascending J-compatible series
/// `a_k(J) = { X : [X, g] ⊆ a_{k-1}(J) and [JX, g] ⊆ a_{k-1}(J) }`
/// and the resulting classification. Requires a Lie algebra and an
/// integrable `J`.
pub fn j_compatible_series(g: &LieAlgebra, j: &Acs) -> Result<JClassification> {
    check_dims(g, j)?;
    g.ensure_lie()?;
    ensure_integrable(g, j)?;
    let mut series = vec![Subspace::zero(g.dim())];
    loop {
        let prev = series.last().expect("nonempty");
        let next = g.bracket_preimage(prev, &[j.matrix()]);
        if &next == prev {
            break;
        }
        series.push(next);
    }
    let t = series.len() - 1;
    let kind = if t == 0 {
        JKind::StronglyNonNilpotent
    } else if series[t].is_full() {
        JKind::Nilpotent
    } else {
        JKind::WeaklyNonNilpotent
    };
    Ok(JClassification { kind, stabilization_index: t, j_series: series })
}

/// `S ∩ J S`: the largest J-invariant subspace of `S`.
pub fn largest_j_invariant(j: &Acs, s: &Subspace) -> Result<Subspace> {
    if s.ambient_dim() != j.dim() {
        return Err(Error::DimensionMismatch { expected: j.dim(), found: s.ambient_dim() });
    }
    s.intersect(&j.image(s)?)
}

/// `(g / a_q(J), J̃_q)`, using the same coset representatives as
/// [`LieAlgebra::quotient`].
pub fn induced_quotient(g: &LieAlgebra, j: &Acs, q: usize) -> Result<(LieAlgebra, Acs)> {
    let classification = j_compatible_series(g, j)?;
    if q > classification.stabilization_index {
        return Err(Error::IndexOutOfRange { index: q, limit: classification.stabilization_index });
    }
    if q == 0 {
        return Ok((g.clone(), j.clone()));
    }
    let quotient = g.quotient(&classification.j_series[q])?;
    let induced = quotient.projection.mul(j.matrix())?.mul(&quotient.section)?;
    Ok((quotient.algebra, Acs::new(induced)?))
}

/// Whether the columns of `basis`, read as pairs `(X_k, J X_k)`, form a
/// J-adapted basis some permutation of which is adapted to the ascending
/// central series. Decided by counting: `#(basis ∩ g_k) = dim g_k` for all k.
pub fn doubly_adapted_check(g: &LieAlgebra, j: &Acs, basis: &Matrix) -> Result<bool> {
    check_dims(g, j)?;
    if basis.rows() != g.dim() || basis.cols() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: basis.cols() });
    }
    let columns: Vec<Vec<Scalar>> = (0..basis.cols()).map(|c| basis.column(c)).collect();
    for k in (0..columns.len()).step_by(2) {
        if j.apply(&columns[k])? != columns[k + 1] {
            return Err(Error::NotJAdapted { column: k + 1 });
        }
    }
    if basis.rank() < g.dim() {
        return Err(Error::SingularMatrix);
    }
    let series = g.ascending_central_series()?;
    for term in &series.terms[1..] {
        let mut count = 0;
        for col in &columns {
            if term.contains(col)? {
                count += 1;
            }
        }
        if count != term.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}
