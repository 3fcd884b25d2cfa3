//! The three parametrized families of 8-dimensional strongly non-nilpotent
//! complex structures with one-dimensional center, indexed by `dim g_2`.
//!
//! Coordinates: `X_1..X_4 = e1..e4`, `J X_k = e_{k+4}`, and the complex
//! coframe follows [`DIM8_FAMILY_PAIRING`](super::DIM8_FAMILY_PAIRING).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use super::{realify_with, Bidegree, ComplexEquations, DIM8_FAMILY_PAIRING};
use crate::cpx::{j_compatible_series, JKind};
use crate::error::{Error, Result};
use crate::exactlin::{rat, CScalar, Scalar};
use crate::liealg::LieAlgebra;
use crate::obstruct::snn_admissible_types;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Symbol {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    K,
    L,
    M,
    N,
    P,
    #[serde(rename = "s")]
    S,
    #[serde(rename = "t")]
    T,
}

impl Symbol {
    pub const ALL: [Symbol; 15] = [
        Symbol::A,
        Symbol::B,
        Symbol::C,
        Symbol::D,
        Symbol::E,
        Symbol::F,
        Symbol::G,
        Symbol::H,
        Symbol::K,
        Symbol::L,
        Symbol::M,
        Symbol::N,
        Symbol::P,
        Symbol::S,
        Symbol::T,
    ];

    pub fn is_real(self) -> bool {
        matches!(self, Symbol::S | Symbol::T)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Symbol::S => "s".to_string(),
            Symbol::T => "t".to_string(),
            other => format!("{other:?}"),
        };
        f.write_str(&s)
    }
}

impl FromStr for Symbol {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Symbol::ALL
            .into_iter()
            .find(|sym| sym.to_string() == s.trim())
            .ok_or_else(|| format!("unknown parameter `{s}`"))
    }
}

/// Families by the dimension of `g_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyId {
    #[serde(rename = "g2dim3")]
    G2Dim3,
    #[serde(rename = "g2dim4")]
    G2Dim4,
    #[serde(rename = "g2dim5")]
    G2Dim5,
}

impl FamilyId {
    pub const ALL: [FamilyId; 3] = [FamilyId::G2Dim3, FamilyId::G2Dim4, FamilyId::G2Dim5];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::G2Dim3 => "g2dim3",
            FamilyId::G2Dim4 => "g2dim4",
            FamilyId::G2Dim5 => "g2dim5",
        }
    }

    pub fn g2_dim(self) -> usize {
        match self {
            FamilyId::G2Dim3 => 3,
            FamilyId::G2Dim4 => 4,
            FamilyId::G2Dim5 => 5,
        }
    }

    pub fn symbols(self) -> &'static [Symbol] {
        use Symbol::*;
        match self {
            FamilyId::G2Dim3 => &[A, B, C, D, E, F, G, H, K, L, M, N, P, S],
            FamilyId::G2Dim4 => &[A, D, E, F, L, M, N, S],
            FamilyId::G2Dim5 => &[A, B, E, F, L, M, N, P, S, T],
        }
    }

    pub fn cases(self) -> &'static [FamilyCase] {
        CASES.iter().find(|(f, _)| *f == self).map(|(_, c)| *c).expect("every family has cases")
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let lower = s.trim().to_ascii_lowercase();
        FamilyId::ALL.into_iter().find(|f| f.name() == lower).ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// A parameter point of one family. Unset symbols are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    family: FamilyId,
    values: BTreeMap<Symbol, CScalar>,
}

impl FamilyParams {
    pub fn new(family: FamilyId) -> Self {
        Self { family, values: BTreeMap::new() }
    }

    pub fn family(&self) -> FamilyId {
        self.family
    }

    pub fn set(&mut self, symbol: Symbol, value: CScalar) -> Result<()> {
        if !self.family.symbols().contains(&symbol) {
            return Err(Error::ForeignParameter { family: self.family.name(), symbol: symbol.to_string() });
        }
        if symbol.is_real() && !value.is_real() {
            return Err(Error::ComplexRealParameter { symbol: symbol.to_string() });
        }
        if value.is_zero() {
            self.values.remove(&symbol);
        } else {
            self.values.insert(symbol, value);
        }
        Ok(())
    }

    pub fn with(mut self, symbol: Symbol, value: CScalar) -> Result<Self> {
        self.set(symbol, value)?;
        Ok(self)
    }

    pub fn get(&self, symbol: Symbol) -> CScalar {
        self.values.get(&symbol).cloned().unwrap_or_else(CScalar::zero)
    }

    /// Nonzero values only.
    pub fn values(&self) -> &BTreeMap<Symbol, CScalar> {
        &self.values
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for (sym, v) in &self.values {
            write!(f, " {sym}={v}")?;
        }
        Ok(())
    }
}

fn put(eqs: &mut ComplexEquations, a: usize, block: Bidegree, b: usize, c: usize, coeff: CScalar) {
    // 1-based indices, as in the printed equations.
    eqs.add_term(a - 1, block, b - 1, c - 1, &coeff).expect("indices within 4");
}

/// `-x (ω^{bc} - ω^{b c̄})` added to `dω^a`.
fn put_difference(eqs: &mut ComplexEquations, a: usize, b: usize, c: usize, x: CScalar) {
    put(eqs, a, Bidegree::Hol, b, c, -x.clone());
    put(eqs, a, Bidegree::Mixed, b, c, x);
}

/// Writes the family's equations with the given values.
pub fn family_instantiate(p: &FamilyParams) -> ComplexEquations {
    use Bidegree::{Hol as H2, Mixed as M1};
    use Symbol::*;
    let v = |s: Symbol| p.get(s);
    let mut eqs = ComplexEquations::zero(4);
    let e = &mut eqs;
    put(e, 2, M1, 1, 1, v(A));
    match p.family {
        FamilyId::G2Dim3 => {
            put_difference(e, 2, 1, 4, v(B));
            put(e, 3, H2, 1, 2, v(C) - v(D));
            put_difference(e, 3, 1, 4, v(E));
            put(e, 3, M1, 1, 1, v(F));
            put(e, 3, M1, 1, 2, v(G) + v(D));
            put_difference(e, 3, 2, 4, v(H));
            put(e, 3, M1, 2, 1, v(C) - v(G));
            put(e, 3, M1, 2, 2, v(K));
        }
        FamilyId::G2Dim4 => {
            put_difference(e, 3, 1, 2, v(D));
            put_difference(e, 3, 1, 4, v(E));
            put(e, 3, M1, 1, 1, v(F));
        }
        FamilyId::G2Dim5 => {
            put_difference(e, 2, 1, 4, v(B));
            put(e, 3, M1, 1, 1, v(F));
            put_difference(e, 3, 1, 4, v(E));
        }
    }
    put(e, 4, M1, 1, 1, v(L));
    put(e, 4, M1, 1, 2, v(M));
    put(e, 4, M1, 1, 3, v(N));
    put(e, 4, M1, 2, 1, -v(M).conj());
    put(e, 4, M1, 2, 2, &CScalar::i() * &v(S));
    put(e, 4, M1, 3, 1, -v(N).conj());
    if p.family != FamilyId::G2Dim4 {
        put(e, 4, M1, 2, 3, v(P));
        put(e, 4, M1, 3, 2, -v(P).conj());
    }
    if p.family == FamilyId::G2Dim5 {
        put(e, 4, M1, 3, 3, &CScalar::i() * &v(T));
    }
    eqs
}

/// Structure constants in the family coordinates, indices 1-based.
struct FamilyConstants<'a>(&'a LieAlgebra);

impl FamilyConstants<'_> {
    fn get(&self, x: usize, y: usize, z: usize) -> Scalar {
        self.0.structure_constant(x - 1, y - 1, z - 1)
    }
    /// Coefficient of `X_i` in `[X_j, X_k]`.
    fn a(&self, j: usize, k: usize, i: usize) -> Scalar {
        self.get(j, k, i)
    }
    /// Coefficient of `J X_i` in `[X_j, X_k]`.
    fn alpha(&self, j: usize, k: usize, i: usize) -> Scalar {
        self.get(j, k, i + 4)
    }
    /// Coefficient of `X_i` in `[X_j, J X_k]`.
    fn b(&self, j: usize, k: usize, i: usize) -> Scalar {
        self.get(j, k + 4, i)
    }
    /// Coefficient of `J X_i` in `[X_j, J X_k]`.
    fn c(&self, j: usize, k: usize, i: usize) -> Scalar {
        self.get(j, k + 4, i + 4)
    }
}

/// Reads the family parameters back from structure constants in the family
/// coordinates, e.g. `A = (c_{44}^3 + i b_{44}^3)/2` and `s = b_{33}^1/2`.
/// Symbols outside the family are ignored.
pub fn letras_parameters(g: &LieAlgebra, family: FamilyId) -> Result<FamilyParams> {
    if g.dim() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, found: g.dim() });
    }
    let k = FamilyConstants(g);
    let half = rat(1, 2);
    let z = |re: Scalar, im: Scalar| CScalar::new(re * &half, im * &half);
    let mut p = FamilyParams::new(family);
    for &sym in family.symbols() {
        let value = match sym {
            Symbol::A => z(k.c(4, 4, 3), k.b(4, 4, 3)),
            Symbol::B => z(k.c(4, 1, 3), k.b(4, 1, 3)),
            Symbol::C => z(k.c(3, 4, 2), k.b(3, 4, 2)),
            Symbol::D => z(k.c(4, 3, 2), k.b(4, 3, 2)),
            Symbol::E => z(k.c(4, 1, 2), k.b(4, 1, 2)),
            Symbol::F => z(k.c(4, 4, 2), k.b(4, 4, 2)),
            Symbol::G => z(k.a(3, 4, 2), -k.alpha(3, 4, 2)),
            Symbol::H => z(k.c(3, 1, 2), k.b(3, 1, 2)),
            Symbol::K => z(k.c(3, 3, 2), k.b(3, 3, 2)),
            Symbol::L => z(k.c(4, 4, 1), k.b(4, 4, 1)),
            Symbol::M => z(k.a(3, 4, 1), k.b(3, 4, 1)),
            Symbol::N => z(k.a(2, 4, 1), k.b(2, 4, 1)),
            Symbol::P => z(k.a(2, 3, 1), k.b(2, 3, 1)),
            Symbol::S => z(k.b(3, 3, 1), Scalar::zero()),
            Symbol::T => z(k.b(2, 2, 1), Scalar::zero()),
        };
        p.set(sym, value)?;
    }
    Ok(p)
}

/// One case of a family: a predicted ascending type and the parameter
/// conditions it forces.
#[derive(Clone, Copy, Debug)]
pub struct FamilyCase {
    pub family: FamilyId,
    pub label: &'static str,
    pub ascending_type: &'static [usize],
    condition: fn(&FamilyParams) -> bool,
}

impl FamilyCase {
    pub fn conditions_hold(&self, p: &FamilyParams) -> bool {
        (self.condition)(p)
    }
}

fn zero(p: &FamilyParams, syms: &[Symbol]) -> bool {
    syms.iter().all(|&s| p.get(s).is_zero())
}

fn re_zero(p: &FamilyParams, s: Symbol) -> bool {
    p.get(s).re.is_zero()
}

// K is left free in the first case: only B-free and Re L conditions are imposed there.
static G2DIM3_CASES: [FamilyCase; 4] = [
    FamilyCase {
        family: FamilyId::G2Dim3,
        label: "i",
        ascending_type: &[1, 3, 8],
        condition: |p| zero(p, &[Symbol::A, Symbol::B]) && re_zero(p, Symbol::L),
    },
    FamilyCase {
        family: FamilyId::G2Dim3,
        label: "ii",
        ascending_type: &[1, 3, 6, 8],
        condition: |p| zero(p, &[Symbol::B, Symbol::H, Symbol::K, Symbol::P]),
    },
    FamilyCase {
        family: FamilyId::G2Dim3,
        label: "iii",
        ascending_type: &[1, 3, 5, 8],
        condition: |p| zero(p, &[Symbol::K, Symbol::P]) && re_zero(p, Symbol::L),
    },
    FamilyCase {
        family: FamilyId::G2Dim3,
        label: "iv",
        ascending_type: &[1, 3, 5, 6, 8],
        condition: |p| zero(p, &[Symbol::H, Symbol::K, Symbol::P, Symbol::S]) && !re_zero(p, Symbol::L),
    },
];

static G2DIM4_CASES: [FamilyCase; 2] = [
    FamilyCase {
        family: FamilyId::G2Dim4,
        label: "i",
        ascending_type: &[1, 4, 8],
        condition: |p| re_zero(p, Symbol::A) && re_zero(p, Symbol::L),
    },
    FamilyCase {
        family: FamilyId::G2Dim4,
        label: "ii",
        ascending_type: &[1, 4, 6, 8],
        condition: |p| !(re_zero(p, Symbol::A) && re_zero(p, Symbol::L)),
    },
];

static G2DIM5_CASES: [FamilyCase; 2] = [
    FamilyCase {
        family: FamilyId::G2Dim5,
        label: "i",
        ascending_type: &[1, 5, 8],
        condition: |p| re_zero(p, Symbol::L),
    },
    FamilyCase {
        family: FamilyId::G2Dim5,
        label: "ii",
        ascending_type: &[1, 5, 6, 8],
        condition: |p| !re_zero(p, Symbol::L),
    },
];

static CASES: [(FamilyId, &[FamilyCase]); 3] = [
    (FamilyId::G2Dim3, &G2DIM3_CASES),
    (FamilyId::G2Dim4, &G2DIM4_CASES),
    (FamilyId::G2Dim5, &G2DIM5_CASES),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseVerdict {
    /// SnN, one-dimensional center, the family's `dim g_2`, and the computed
    /// type is a listed case whose conditions hold.
    Consistent,
    /// The instance degenerates out of the family's defining stratum.
    OutsideStratum,
    /// Inside the stratum but the bookkeeping does not add up.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub family: FamilyId,
    pub ascending_type: Option<Vec<usize>>,
    pub kind: JKind,
    pub center_dim: usize,
    pub g2_dim: usize,
    pub in_stratum: bool,
    pub matched_case: Option<&'static str>,
    pub matched_conditions_hold: Option<bool>,
    /// Cases whose parameter conditions hold at this point.
    pub satisfied_cases: Vec<&'static str>,
    pub in_dim8_list: bool,
    pub verdict: CaseVerdict,
}

/// Realifies `eqs` in the family coordinates and checks the computed
/// ascending type against the case conditions on `p`.
pub fn family_case_check(p: &FamilyParams, eqs: &ComplexEquations) -> Result<CaseReport> {
    let (g, j) = realify_with(eqs, &DIM8_FAMILY_PAIRING)?;
    if !g.is_lie_algebra() {
        return Err(Error::JacobiViolated);
    }
    let series = g.ascending_central_series()?;
    let ascending_type = series.ascending_type.clone();
    let center_dim = series.terms.get(1).map_or(0, |s| s.dim());
    let g2_dim = series.terms.get(2).map_or(center_dim, |s| s.dim());
    let kind = j_compatible_series(&g, &j)?.kind;
    let family = p.family();
    let in_stratum = ascending_type.is_some()
        && kind == JKind::StronglyNonNilpotent
        && center_dim == 1
        && g2_dim == family.g2_dim();

    let matched = ascending_type.as_ref().and_then(|t| family.cases().iter().find(|c| c.ascending_type == &t[..]));
    let satisfied_cases = family.cases().iter().filter(|c| c.conditions_hold(p)).map(|c| c.label).collect();
    let in_dim8_list = match (&ascending_type, snn_admissible_types(8)) {
        (Some(t), Some(list)) => list.iter().any(|l| l == t),
        _ => false,
    };
    let verdict = if !in_stratum {
        CaseVerdict::OutsideStratum
    } else if matched.is_some_and(|c| c.conditions_hold(p)) && in_dim8_list {
        CaseVerdict::Consistent
    } else {
        CaseVerdict::Inconsistent
    };
    Ok(CaseReport {
        family,
        ascending_type,
        kind,
        center_dim,
        g2_dim,
        in_stratum,
        matched_case: matched.map(|c| c.label),
        matched_conditions_hold: matched.map(|c| c.conditions_hold(p)),
        satisfied_cases,
        in_dim8_list,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ceq::{complex_equations, format_equations};
    use crate::exactlin::int;

    fn cs(re: i64, im: i64) -> CScalar {
        CScalar::new(int(re), int(im))
    }

    fn generic(family: FamilyId) -> FamilyParams {
        let mut p = FamilyParams::new(family);
        for (k, &sym) in family.symbols().iter().enumerate() {
            let k = k as i64 + 1;
            let v = if sym.is_real() { cs(k, 0) } else { cs(k, 2 - k) };
            p.set(sym, v).unwrap();
        }
        p
    }

    #[test]
    fn foreign_and_real_parameters() {
        let mut p = FamilyParams::new(FamilyId::G2Dim4);
        assert!(matches!(p.set(Symbol::B, cs(1, 0)), Err(Error::ForeignParameter { .. })));
        assert!(matches!(p.set(Symbol::T, cs(1, 0)), Err(Error::ForeignParameter { .. })));
        assert!(matches!(p.set(Symbol::S, cs(0, 1)), Err(Error::ComplexRealParameter { .. })));
        p.set(Symbol::S, cs(3, 0)).unwrap();
        assert_eq!(p.get(Symbol::S), cs(3, 0));
    }

    #[test]
    fn zero_instance_is_abelian() {
        let eqs = family_instantiate(&FamilyParams::new(FamilyId::G2Dim5));
        assert_eq!(eqs, ComplexEquations::zero(4));
    }

    #[test]
    fn direct_substitution_dim4() {
        let p = FamilyParams::new(FamilyId::G2Dim4)
            .with(Symbol::A, cs(1, 0))
            .unwrap()
            .with(Symbol::L, cs(1, 0))
            .unwrap();
        let text = format_equations(&family_instantiate(&p));
        assert_eq!(text, "dw1 = 0\ndw2 = (1) w1^-1\ndw3 = 0\ndw4 = (1) w1^-1\n");
    }

    #[test]
    fn dim4_dw3_split() {
        let p = FamilyParams::new(FamilyId::G2Dim4)
            .with(Symbol::D, cs(1, 1))
            .unwrap()
            .with(Symbol::E, cs(2, 0))
            .unwrap()
            .with(Symbol::F, cs(0, 3))
            .unwrap();
        let parts = crate::ceq::bidegree_split(&family_instantiate(&p), 2).unwrap();
        assert_eq!(parts.p20.hol.len(), 2);
        assert_eq!(parts.p20.coefficient(Bidegree::Hol, 0, 1), -cs(1, 1));
        assert_eq!(parts.p20.coefficient(Bidegree::Hol, 0, 3), -cs(2, 0));
        assert_eq!(parts.p11.coefficient(Bidegree::Mixed, 0, 1), cs(1, 1));
        assert_eq!(parts.p11.coefficient(Bidegree::Mixed, 0, 3), cs(2, 0));
        assert_eq!(parts.p11.coefficient(Bidegree::Mixed, 0, 0), cs(0, 3));
        assert!(parts.p02.is_zero());
    }

    #[test]
    fn letras_map_holds_for_generic_points() {
        // Linear in the parameters, so Jacobi is irrelevant here.
        for family in FamilyId::ALL {
            let p = generic(family);
            let eqs = family_instantiate(&p);
            let (g, j) = realify_with(&eqs, &DIM8_FAMILY_PAIRING).unwrap();
            assert_eq!(letras_parameters(&g, family).unwrap(), p, "{family}");
            if crate::cpx::is_integrable(&g, &j).unwrap() && g.is_lie_algebra() {
                assert_eq!(complex_equations(&g, &j, &DIM8_FAMILY_PAIRING).unwrap(), eqs);
            }
            assert_eq!(super::super::complex_forms(&g, &j, &DIM8_FAMILY_PAIRING).unwrap(), eqs);
        }
    }

    #[test]
    fn l_only_point() {
        let p = FamilyParams::new(FamilyId::G2Dim5).with(Symbol::L, CScalar::i()).unwrap();
        let (g, j) = realify_with(&family_instantiate(&p), &DIM8_FAMILY_PAIRING).unwrap();
        assert!(g.is_lie_algebra());
        assert!(crate::cpx::is_integrable(&g, &j).unwrap());
        let report = family_case_check(&p, &family_instantiate(&p)).unwrap();
        assert_eq!(report.verdict, CaseVerdict::OutsideStratum);
    }

    #[test]
    fn symbol_parsing() {
        assert_eq!("s".parse::<Symbol>().unwrap(), Symbol::S);
        assert_eq!("K".parse::<Symbol>().unwrap(), Symbol::K);
        assert!("I".parse::<Symbol>().is_err());
        assert_eq!("G2DIM4".parse::<FamilyId>().unwrap(), FamilyId::G2Dim4);
    }
}
