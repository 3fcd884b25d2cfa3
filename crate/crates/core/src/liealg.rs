//! Lie algebras given by structure constants over `Q`.
//!
//! Basis indices are 0-based throughout the library; the default labels are
//! `e1, …, en`. Only brackets `[e_i, e_j]` with `i < j` are stored, so
//! antisymmetry holds by construction.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{format_vector, unit, Matrix, Scalar, Subspace};

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vec<Scalar>>,
}

/// Two algebras are equal when their structure constants agree; labels are ignored.
impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.brackets == other.brackets
    }
}

impl Eq for LieAlgebra {}

/// A nonzero Jacobiator `Jac(e_i, e_j, e_k)` with `i < j < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDefect {
    pub triple: (usize, usize, usize),
    pub defect: Vec<Scalar>,
}

/// Ascending central series `g_0 = 0 ⊆ g_1 ⊆ …`, where `terms[k] = g_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub terms: Vec<Subspace>,
    /// Least `t` with `g_t = g_{t+1}`; `terms` holds `g_0..=g_t`.
    pub stabilized_at: usize,
    pub is_nilpotent: bool,
    pub step: Option<usize>,
    pub ascending_type: Option<Vec<usize>>,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    /// `g_k`, saturating at the stable term.
    pub fn term(&self, k: usize) -> &Subspace {
        &self.terms[k.min(self.stabilized_at)]
    }
}

/// Quotient algebra with its projection and the coordinate section used for
/// coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    /// `(dim g - dim ideal) × dim g`.
    pub projection: Matrix,
    /// `dim g × (dim g - dim ideal)`, a right inverse of `projection`.
    pub section: Matrix,
}

/// Default labels `e1, …, en`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        Self { dim, names: default_names(dim), brackets: BTreeMap::new() }
    }

    /// Builds from 0-based constants `(i, j, k, c)` meaning `[e_i, e_j] += c e_k`.
    pub fn from_constants(dim: usize, constants: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let mut g = Self::abelian(dim);
        for (i, j, k, c) in constants {
            g.add_constant(*i, *j, *k, c)?;
        }
        Ok(g)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: names.len() });
        }
        self.names = names;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Adds `c e_k` to `[e_i, e_j]` (and `-c e_k` to `[e_j, e_i]`).
    pub fn add_constant(&mut self, i: usize, j: usize, k: usize, c: &Scalar) -> Result<()> {
        for idx in [i, j, k] {
            self.check_index(idx)?;
        }
        if i == j {
            if c.is_zero() {
                return Ok(());
            }
            return Err(Error::DiagonalBracket { index: i });
        }
        let (key, value) = if i < j { ((i, j), c.clone()) } else { ((j, i), -c) };
        let dim = self.dim;
        let entry = self.brackets.entry(key).or_insert_with(|| vec![Scalar::zero(); dim]);
        entry[k] += value;
        if entry.iter().all(Zero::is_zero) {
            self.brackets.remove(&key);
        }
        Ok(())
    }

    /// Replaces `[e_i, e_j]` by `value`.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: Vec<Scalar>) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if value.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: value.len() });
        }
        if i == j {
            return Err(Error::DiagonalBracket { index: i });
        }
        let (key, value) = if i < j { ((i, j), value) } else { ((j, i), value.iter().map(|x| -x).collect()) };
        if value.iter().all(Zero::is_zero) {
            self.brackets.remove(&key);
        } else {
            self.brackets.insert(key, value);
        }
        Ok(())
    }

    /// `c_{ij}^k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.brackets.get(&(i, j)).map_or_else(Scalar::zero, |v| v[k].clone()),
            std::cmp::Ordering::Greater => self.brackets.get(&(j, i)).map_or_else(Scalar::zero, |v| -&v[k]),
            std::cmp::Ordering::Equal => Scalar::zero(),
        }
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_else(|| self.zero_vector()),
            std::cmp::Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|x| -x).collect())
                .unwrap_or_else(|| self.zero_vector()),
            std::cmp::Ordering::Equal => self.zero_vector(),
        }
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`, in lexicographic order.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &[Scalar])> {
        self.brackets.iter().map(|(&(i, j), v)| (i, j, v.as_slice()))
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    fn zero_vector(&self) -> Vec<Scalar> {
        vec![Scalar::zero(); self.dim]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange { index: i, limit: self.dim });
        }
        Ok(())
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(())
    }

    /// Bilinear extension of the stored constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (&(i, j), v) in &self.brackets {
            let coef = &x[i] * &y[j] - &x[j] * &y[i];
            if coef.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(v) {
                if !c.is_zero() {
                    *o += &coef * c;
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ [x, e_j]`: column `i` is `[e_i, e_j]`.
    pub fn right_adjoint(&self, j: usize) -> Matrix {
        let columns: Vec<Vec<Scalar>> = (0..self.dim).map(|i| self.basis_bracket(i, j)).collect();
        Matrix::from_columns(self.dim, &columns).expect("bracket vectors have length dim")
    }

    /// All nonzero `Jac(e_i, e_j, e_k) = [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobi_defect(&self) -> Vec<JacobiDefect> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit(n, i), unit(n, j), unit(n, k));
                    let mut defect = self.bracket_unchecked(&self.basis_bracket(i, j), &ek);
                    for (d, t) in defect.iter_mut().zip(self.bracket_unchecked(&self.basis_bracket(j, k), &ei)) {
                        *d += t;
                    }
                    for (d, t) in defect.iter_mut().zip(self.bracket_unchecked(&self.basis_bracket(k, i), &ej)) {
                        *d += t;
                    }
                    if defect.iter().any(|x| !x.is_zero()) {
                        out.push(JacobiDefect { triple: (i, j, k), defect });
                    }
                }
            }
        }
        out
    }

    pub fn is_lie_algebra(&self) -> bool {
        self.jacobi_defect().is_empty()
    }

    pub(crate) fn ensure_lie(&self) -> Result<()> {
        let defects = self.jacobi_defect();
        match defects.first() {
            None => Ok(()),
            Some(first) => Err(Error::NotALieAlgebra { count: defects.len(), first: first.triple }),
        }
    }

    /// `{ x : [x, e_j] ∈ target and [M x, e_j] ∈ target for all j and all M in
    /// `twists` }`, computed as one kernel. An empty `twists` gives the
    /// ascending central series step.
    pub(crate) fn bracket_preimage(&self, target: &Subspace, twists: &[&Matrix]) -> Subspace {
        let equations = target.annihilator();
        let mut stacked = Matrix::zeros(0, self.dim);
        for j in 0..self.dim {
            let ad = self.right_adjoint(j);
            let block = equations.mul(&ad).expect("annihilator width is dim");
            stacked = stacked.stack(&block).expect("same width");
            for twist in twists {
                let block = equations.mul(&ad.mul(twist).expect("square")).expect("annihilator width is dim");
                stacked = stacked.stack(&block).expect("same width");
            }
        }
        Subspace::kernel(&stacked)
    }

    pub fn ascending_central_series(&self) -> Result<SeriesReport> {
        self.ensure_lie()?;
        let mut terms = vec![Subspace::zero(self.dim)];
        loop {
            let next = self.bracket_preimage(terms.last().expect("nonempty"), &[]);
            if &next == terms.last().expect("nonempty") {
                break;
            }
            terms.push(next);
        }
        let stabilized_at = terms.len() - 1;
        let is_nilpotent = terms[stabilized_at].is_full();
        let step = is_nilpotent.then_some(stabilized_at);
        let ascending_type = is_nilpotent.then(|| terms[1..].iter().map(Subspace::dim).collect());
        Ok(SeriesReport { terms, stabilized_at, is_nilpotent, step, ascending_type })
    }

    /// `(dim g_1, …, dim g_s)`; refuses non-nilpotent algebras.
    pub fn ascending_type(&self) -> Result<Vec<usize>> {
        let series = self.ascending_central_series()?;
        series.ascending_type.ok_or(Error::NotNilpotent {
            reached: series.terms[series.stabilized_at].dim(),
            dim: self.dim,
        })
    }

    pub fn center(&self) -> Result<Subspace> {
        self.ensure_lie()?;
        Ok(self.bracket_preimage(&Subspace::zero(self.dim), &[]))
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        if s.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: s.ambient_dim() });
        }
        for v in s.basis_vectors() {
            for i in 0..self.dim {
                if !s.contains(&self.bracket_unchecked(&unit(self.dim, i), &v))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `g / ideal`, with coset representatives on the non-pivot coordinates
    /// of the ideal's canonical basis.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if !self.is_ideal(ideal)? {
            return Err(Error::NotAnIdeal);
        }
        let keep = ideal.complement_coordinates();
        let m = keep.len();
        let mut projection = Matrix::zeros(m, self.dim);
        for i in 0..self.dim {
            let reduced = ideal.reduce(&unit(self.dim, i))?;
            for (a, &c) in keep.iter().enumerate() {
                projection[(a, i)] = reduced[c].clone();
            }
        }
        let mut section = Matrix::zeros(self.dim, m);
        for (a, &c) in keep.iter().enumerate() {
            section[(c, a)] = num_traits::One::one();
        }
        let mut algebra = LieAlgebra::abelian(m);
        algebra.names = keep.iter().map(|&c| self.names[c].clone()).collect();
        for a in 0..m {
            for b in a + 1..m {
                let image = projection.mul_vec(&self.basis_bracket(keep[a], keep[b]))?;
                algebra.set_bracket(a, b, image)?;
            }
        }
        Ok(Quotient { algebra, projection, section })
    }

    /// `self × other` with `other`'s basis placed after `self`'s.
    pub fn direct_product(&self, other: &LieAlgebra) -> LieAlgebra {
        let dim = self.dim + other.dim;
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut brackets = BTreeMap::new();
        for (&(i, j), v) in &self.brackets {
            let mut w = v.clone();
            w.resize(dim, Scalar::zero());
            brackets.insert((i, j), w);
        }
        for (&(i, j), v) in &other.brackets {
            let mut w = vec![Scalar::zero(); self.dim];
            w.extend(v.iter().cloned());
            brackets.insert((i + self.dim, j + self.dim), w);
        }
        LieAlgebra { dim, names, brackets }
    }

    /// Transports the constants to the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.rows().max(p.cols()) });
        }
        let inv = p.inverse()?;
        let columns: Vec<Vec<Scalar>> = (0..self.dim).map(|c| p.column(c)).collect();
        let mut out = LieAlgebra::abelian(self.dim);
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let image = inv.mul_vec(&self.bracket_unchecked(&columns[a], &columns[b]))?;
                out.set_bracket(a, b, image)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.brackets.is_empty() {
            return write!(f, "abelian of dimension {}", self.dim);
        }
        let lines: Vec<String> = self
            .brackets
            .iter()
            .map(|(&(i, j), v)| format!("[{},{}] = {}", self.names[i], self.names[j], format_vector(v, &self.names)))
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

/// Serializable summary of a series, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesSummary {
    pub dims: Vec<usize>,
    pub is_nilpotent: bool,
    pub step: Option<usize>,
    pub ascending_type: Option<Vec<usize>>,
}

impl From<&SeriesReport> for SeriesSummary {
    fn from(r: &SeriesReport) -> Self {
        Self {
            dims: r.dims(),
            is_nilpotent: r.is_nilpotent,
            step: r.step,
            ascending_type: r.ascending_type.clone(),
        }
    }
}
