//! Chevalley–Eilenberg structure equations.
//!
//! Sign convention: `de(X, Y) = -e([X, Y])`, so a Lie algebra with
//! `[e_j, e_k] = Σ_i c_{jk}^i e_i` has `de^i = -Σ_{j<k} c_{jk}^i e^{jk}`.
//!
//! A J-adapted pairing `(x_a, y_a)` with `J e_{x_a} = e_{y_a}` defines the
//! complex coframe `ω^a = e^{x_a} - i e^{y_a}`. Its differentials are stored
//! on the bases `ω^{bc}` (b < c), `ω^{b c̄}` (all b, c) and `ω^{b̄ c̄}` (b < c).

mod family;
mod forms;
mod search;
mod text;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::cpx::{integrability_defect, Acs};
use crate::error::{Error, Result};
use crate::exactlin::{unit, CScalar, Matrix, Scalar, Subspace};
use crate::liealg::LieAlgebra;

pub use family::{
    family_case_check, family_instantiate, letras_parameters, CaseReport, CaseVerdict, FamilyCase, FamilyId,
    FamilyParams, Symbol,
};
pub use search::{realizes, search_case, SearchOptions};
pub use forms::{Bidegree, BidegreeParts, ComplexTwoForm};
pub use text::{format_equations, parse_equations, ParseEquationsError};

/// `(x, y)` index pairs with `J e_x = e_y`, 0-based.
pub type Pairing = Vec<(usize, usize)>;

/// The 8-dimensional ordering `ω¹ = e⁴ - i e⁸, ω² = e³ - i e⁷, ω³ = e² - i e⁶,
/// ω⁴ = e¹ - i e⁵` (0-based here).
pub const DIM8_FAMILY_PAIRING: [(usize, usize); 4] = [(3, 7), (2, 6), (1, 5), (0, 4)];

/// `(0,1), (2,3), …`.
pub fn standard_pairing(n_half: usize) -> Pairing {
    (0..n_half).map(|a| (2 * a, 2 * a + 1)).collect()
}

/// `de^i = Σ_{j<k} d[i][(j,k)] e^{jk}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealEquations {
    n: usize,
    d: Vec<BTreeMap<(usize, usize), Scalar>>,
}

impl RealEquations {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn differential(&self, i: usize) -> &BTreeMap<(usize, usize), Scalar> {
        &self.d[i]
    }

    /// `coeff(i; j, k)` with `j < k`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.d[i].get(&(j, k)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Inverse transcription `c_{jk}^i = -coeff(i; j, k)`; Jacobi is not checked.
    pub fn to_lie_algebra(&self) -> LieAlgebra {
        let mut g = LieAlgebra::abelian(self.n);
        for (i, form) in self.d.iter().enumerate() {
            for (&(j, k), c) in form {
                g.add_constant(j, k, i, &-c).expect("indices below n");
            }
        }
        g
    }
}

pub fn real_equations(g: &LieAlgebra) -> RealEquations {
    let n = g.dim();
    let mut d = vec![BTreeMap::new(); n];
    for (j, k, v) in g.nonzero_brackets() {
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                d[i].insert((j, k), -c);
            }
        }
    }
    RealEquations { n, d }
}

/// Nonzero component of `d(de^i)` on `e^{jkl}` (`j < k < l`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSquareTerm {
    pub form: usize,
    pub triple: (usize, usize, usize),
    pub coeff: Scalar,
}

/// Sorts three distinct indices, returning the permutation sign.
fn sort3(a: usize, b: usize, c: usize) -> Option<((usize, usize, usize), bool)> {
    if a == b || b == c || a == c {
        return None;
    }
    let mut v = [a, b, c];
    let mut odd = false;
    for i in 0..3 {
        for j in 0..2 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    Some(((v[0], v[1], v[2]), odd))
}

/// `d(de^i)` via `d(e^{jk}) = de^j ∧ e^k - e^j ∧ de^k`. Empty exactly when the
/// source algebra satisfies the Jacobi identity.
pub fn d_square_defect(eqs: &RealEquations) -> Vec<DSquareTerm> {
    let mut out = Vec::new();
    for (i, form) in eqs.d.iter().enumerate() {
        let mut acc: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        let mut add = |a: usize, b: usize, c: usize, coeff: Scalar| {
            if let Some((key, odd)) = sort3(a, b, c) {
                let e = acc.entry(key).or_insert_with(Scalar::zero);
                if odd {
                    *e -= coeff;
                } else {
                    *e += coeff;
                }
            }
        };
        for (&(j, k), c) in form {
            // c · de^j ∧ e^k
            for (&(p, q), cj) in &eqs.d[j] {
                add(p, q, k, c * cj);
            }
            // -c · e^j ∧ de^k
            for (&(p, q), ck) in &eqs.d[k] {
                add(j, p, q, -(c * ck));
            }
        }
        out.extend(
            acc.into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(triple, coeff)| DSquareTerm { form: i, triple, coeff }),
        );
    }
    out
}

/// Differentials of the complex coframe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexEquations {
    n_half: usize,
    d: Vec<ComplexTwoForm>,
}

impl ComplexEquations {
    pub fn zero(n_half: usize) -> Self {
        Self { n_half, d: vec![ComplexTwoForm::default(); n_half] }
    }

    pub fn n_half(&self) -> usize {
        self.n_half
    }

    pub fn differential(&self, a: usize) -> &ComplexTwoForm {
        &self.d[a]
    }

    pub fn differentials(&self) -> &[ComplexTwoForm] {
        &self.d
    }

    /// Adds `coeff` times the basis 2-form `(block, b, c)` to `dω^a`.
    pub fn add_term(&mut self, a: usize, block: Bidegree, b: usize, c: usize, coeff: &CScalar) -> Result<()> {
        for idx in [a, b, c] {
            if idx >= self.n_half {
                return Err(Error::MalformedEquations(format!("index {} exceeds {}", idx + 1, self.n_half)));
            }
        }
        self.d[a].add(block, b, c, coeff)
    }

    /// True when no `ω^{b̄ c̄}` coefficient survives.
    pub fn has_no_02_part(&self) -> bool {
        self.d.iter().all(|f| f.anti.is_empty())
    }
}

fn validate_pairing(n: usize, pairing: &[(usize, usize)]) -> Result<()> {
    if 2 * pairing.len() != n {
        return Err(Error::BadPairing(format!("{} pairs cannot cover dimension {n}", pairing.len())));
    }
    let mut seen = vec![false; n];
    for &(x, y) in pairing {
        for idx in [x, y] {
            if idx >= n {
                return Err(Error::BadPairing(format!("index {} out of range", idx + 1)));
            }
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::BadPairing(format!("index {} used twice", idx + 1)));
            }
        }
    }
    Ok(())
}

/// Complex structure equations without the integrability requirement; a
/// non-integrable `J` shows up as a nonzero `(0,2)` block.
pub fn complex_forms(g: &LieAlgebra, j: &Acs, pairing: &[(usize, usize)]) -> Result<ComplexEquations> {
    let n = g.dim();
    if j.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: j.dim() });
    }
    validate_pairing(n, pairing)?;
    for &(x, y) in pairing {
        if j.apply(&unit(n, x))? != unit(n, y) {
            return Err(Error::BadPairing(format!("J e{} != e{}", x + 1, y + 1)));
        }
    }
    let real = real_equations(g);
    let m = pairing.len();
    let coframe = forms::coframe_in_omega(n, pairing);
    let mut eqs = ComplexEquations::zero(m);
    for (a, &(x, y)) in pairing.iter().enumerate() {
        let mut form = ComplexTwoForm::default();
        for (&(p, q), c) in real.differential(x) {
            form.add_wedge(m, &coframe[p], &coframe[q], &CScalar::real(c.clone()));
        }
        for (&(p, q), c) in real.differential(y) {
            form.add_wedge(m, &coframe[p], &coframe[q], &CScalar::imag(-c));
        }
        eqs.d[a] = form;
    }
    Ok(eqs)
}

/// Complex structure equations of an integrable pair.
pub fn complex_equations(g: &LieAlgebra, j: &Acs, pairing: &[(usize, usize)]) -> Result<ComplexEquations> {
    let defects = integrability_defect(g, j)?;
    if !defects.is_empty() {
        return Err(Error::NotIntegrable { count: defects.len() });
    }
    complex_forms(g, j, pairing)
}

/// Splits `dω^a` into its `(2,0)`, `(1,1)` and `(0,2)` parts.
pub fn bidegree_split(eqs: &ComplexEquations, a: usize) -> Result<BidegreeParts> {
    if a >= eqs.n_half {
        return Err(Error::IndexOutOfRange { index: a, limit: eqs.n_half });
    }
    Ok(eqs.d[a].split())
}

/// Rebuilds the real algebra and `J` in the standard coordinates
/// `ω^a = e^{2a-1} - i e^{2a}` (1-based).
pub fn realify(eqs: &ComplexEquations) -> Result<(LieAlgebra, Acs, Pairing)> {
    let pairing = standard_pairing(eqs.n_half);
    let (g, j) = realify_with(eqs, &pairing)?;
    Ok((g, j, pairing))
}

/// Rebuilds the real algebra and `J` with `ω^a = e^{x_a} - i e^{y_a}` for the
/// given pairing.
pub fn realify_with(eqs: &ComplexEquations, pairing: &[(usize, usize)]) -> Result<(LieAlgebra, Acs)> {
    let n = 2 * eqs.n_half;
    if pairing.len() != eqs.n_half {
        return Err(Error::BadPairing(format!("expected {} pairs, got {}", eqs.n_half, pairing.len())));
    }
    validate_pairing(n, pairing)?;
    for form in &eqs.d {
        form.check_canonical(eqs.n_half)?;
    }
    let basis = forms::omega_in_coframe(n, pairing);
    let mut real = RealEquations { n, d: vec![BTreeMap::new(); n] };
    for (a, &(x, y)) in pairing.iter().enumerate() {
        for ((p, q), coeff) in eqs.d[a].to_real_basis(&basis) {
            if !coeff.re.is_zero() {
                real.d[x].insert((p, q), coeff.re.clone());
            }
            if !coeff.im.is_zero() {
                real.d[y].insert((p, q), -coeff.im);
            }
        }
    }
    let g = real.to_lie_algebra();
    let j = Acs::from_pairs(n, pairing)?;
    Ok((g, j))
}

/// A J-adapted basis `(X_1, J X_1, X_2, J X_2, …)` as matrix columns, built
/// greedily from the coordinate vectors.
pub fn adapted_basis(j: &Acs) -> Matrix {
    let n = j.dim();
    let mut span = Subspace::zero(n);
    let mut columns = Vec::with_capacity(n);
    for i in 0..n {
        let v = unit(n, i);
        if span.contains(&v).expect("lengths agree") {
            continue;
        }
        let jv = j.apply(&v).expect("lengths agree");
        span = span.sum(&Subspace::span(n, &[v.clone(), jv.clone()]).expect("lengths agree")).expect("same ambient");
        columns.push(v);
        columns.push(jv);
    }
    Matrix::from_columns(n, &columns).expect("columns have length n")
}

/// Moves `(g, J)` to a J-adapted frame so [`standard_pairing`] applies.
pub fn to_adapted_frame(g: &LieAlgebra, j: &Acs) -> Result<(LieAlgebra, Acs, Pairing)> {
    let p = adapted_basis(j);
    let g2 = g.change_basis(&p)?;
    let j2 = j.change_basis(&p)?;
    Ok((g2, j2, standard_pairing(g.dim() / 2)))
}
