//! Known structural restrictions on nilpotent Lie algebras carrying complex
//! structures, as executable checks.
//!
//! [`obstruction_report`] looks at an algebra alone and lists which
//! restrictions apply. [`theorem_audit`] takes an integrable pair `(g, J)` and
//! verifies every restriction that applies to it; a `Fail` there means a bug
//! in this crate, since each statement is a theorem.

use serde::Serialize;

use crate::cpx::{induced_quotient, is_integrable, j_compatible_series, Acs, JKind};
use crate::error::{Error, Result};
use crate::exactlin::Subspace;
use crate::liealg::LieAlgebra;

/// What a triggered obstruction rules out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Effect {
    NoComplexStructure,
    NoStronglyNonNilpotent,
    QuasiNilpotentOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionVerdict {
    pub rule: &'static str,
    pub triggered: bool,
    pub effect: Effect,
    pub statement: &'static str,
    /// Verified inside this crate, as opposed to quoted from the literature.
    pub internal: bool,
    pub witness: String,
}

const DIM6_TYPES: [&[usize]; 2] = [&[1, 3, 6], &[1, 3, 4, 6]];
const DIM8_TYPES: [&[usize]; 8] = [
    &[1, 3, 8],
    &[1, 3, 5, 8],
    &[1, 3, 6, 8],
    &[1, 3, 5, 6, 8],
    &[1, 4, 8],
    &[1, 4, 6, 8],
    &[1, 5, 8],
    &[1, 5, 6, 8],
];

const ST_ODD: &str = "an odd-dimensional real vector space carries no almost complex structure";
const ST_CENTER_CHAIN: &str = "a 2n-dimensional nilpotent Lie algebra with dim g_{n-1} = n-1 admits no complex structure";
const ST_FILIFORM: &str = "filiform nilpotent Lie algebras (step 2n-1 in dimension 2n) admit no complex structure";
const ST_LOW_DIM: &str = "in dimension at most 4 every complex structure on a nilpotent Lie algebra is nilpotent";
const ST_DIM6: &str = "a 6-dimensional nilpotent Lie algebra with a strongly non-nilpotent complex structure has ascending type (1,3,6) or (1,3,4,6)";
const ST_DIM8: &str = "an 8-dimensional nilpotent Lie algebra with a strongly non-nilpotent complex structure has ascending type (1,3,8), (1,3,5,8), (1,3,6,8), (1,3,5,6,8), (1,4,8), (1,4,6,8), (1,5,8) or (1,5,6,8)";
const ST_ONE_DIM_CENTER: &str = "a one-dimensional center forces a_1(J) = 0, so every complex structure is strongly non-nilpotent and the admissible type list becomes a non-existence criterion";
const ST_QUASI_FILIFORM: &str = "8-dimensional quasi-filiform (6-step) nilpotent Lie algebras admit no complex structure (external result)";
const ST_STEP3: &str = "a nilpotent Lie algebra with a strongly non-nilpotent complex structure is at least 3-step";
const ST_CENTER_BOUND: &str = "if n >= 4 and J is strongly non-nilpotent then 1 <= dim g_1 <= n-3";

/// Ascending types compatible with a strongly non-nilpotent complex structure.
/// `Some(empty)` below dimension 6, the known lists in dimensions 6 and 8,
/// `None` when unknown.
pub fn snn_admissible_types(dim: usize) -> Option<Vec<Vec<usize>>> {
    match dim {
        6 => Some(DIM6_TYPES.iter().map(|t| t.to_vec()).collect()),
        8 => Some(DIM8_TYPES.iter().map(|t| t.to_vec()).collect()),
        d if d < 6 && d % 2 == 0 => Some(Vec::new()),
        _ => None,
    }
}

fn format_type(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn verdict(rule: &'static str, triggered: bool, effect: Effect, statement: &'static str, witness: String) -> ObstructionVerdict {
    ObstructionVerdict { rule, triggered, effect, statement, internal: true, witness }
}

/// Evaluates every restriction that depends on the algebra alone.
pub fn obstruction_report(g: &LieAlgebra) -> Result<Vec<ObstructionVerdict>> {
    let series = g.ascending_central_series()?;
    let (Some(ty), Some(s)) = (series.ascending_type.clone(), series.step) else {
        return Err(Error::NotNilpotent { reached: series.term(series.stabilized_at).dim(), dim: g.dim() });
    };
    let dim = g.dim();
    if dim % 2 == 1 {
        return Ok(vec![verdict(
            "odd-dimension",
            true,
            Effect::NoComplexStructure,
            ST_ODD,
            format!("dimension {dim}"),
        )]);
    }
    let n = dim / 2;
    let type_str = format_type(&ty);
    let center = series.terms.get(1).map_or(0, Subspace::dim);
    let mut out = Vec::new();

    if n >= 2 {
        let dim_n1 = series.terms.get(n - 1).map_or(dim, Subspace::dim);
        out.push(verdict(
            "center-chain",
            dim_n1 == n - 1,
            Effect::NoComplexStructure,
            ST_CENTER_CHAIN,
            format!("dim g_{} = {dim_n1}, n-1 = {}", n - 1, n - 1),
        ));
        out.push(verdict(
            "filiform",
            s == 2 * n - 1,
            Effect::NoComplexStructure,
            ST_FILIFORM,
            format!("step {s}, 2n-1 = {}", 2 * n - 1),
        ));
    }
    if dim != 0 {
        out.push(verdict(
            "snn-step",
            s <= 2,
            Effect::NoStronglyNonNilpotent,
            ST_STEP3,
            format!("step {s}"),
        ));
    }
    if let Some(list) = snn_admissible_types(dim) {
        let listed = list.iter().any(|t| *t == ty);
        let (rule, statement) = match dim {
            6 => ("snn-types-dim6", ST_DIM6),
            8 => ("snn-types-dim8", ST_DIM8),
            _ => ("snn-low-dimension", ST_LOW_DIM),
        };
        if dim != 0 {
            out.push(verdict(rule, !listed, Effect::NoStronglyNonNilpotent, statement, format!("type {type_str}")));
            out.push(verdict(
                "one-dim-center",
                center == 1 && !listed,
                Effect::NoComplexStructure,
                ST_ONE_DIM_CENTER,
                format!("dim g_1 = {center}, type {type_str}"),
            ));
        }
    }
    if dim == 8 {
        out.push(ObstructionVerdict {
            rule: "quasi-filiform-dim8",
            triggered: s == 6,
            effect: Effect::NoComplexStructure,
            statement: ST_QUASI_FILIFORM,
            internal: false,
            witness: format!("step {s}"),
        });
    }
    if n >= 4 {
        out.push(verdict(
            "center-bound",
            center >= n - 2,
            Effect::QuasiNilpotentOnly,
            ST_CENTER_BOUND,
            format!("dim g_1 = {center}, n-3 = {}", n - 3),
        ));
    }
    Ok(out)
}

/// True when some triggered rule says no complex structure exists.
pub fn forbids_complex_structures(report: &[ObstructionVerdict]) -> bool {
    report.iter().any(|v| v.triggered && v.effect == Effect::NoComplexStructure)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub rule: &'static str,
    pub status: AuditStatus,
    pub statement: &'static str,
    pub detail: String,
}

struct Audit(Vec<AuditCheck>);

impl Audit {
    fn check(&mut self, rule: &'static str, statement: &'static str, applies: bool, holds: bool, detail: String) {
        let status = match (applies, holds) {
            (false, _) => AuditStatus::Skipped,
            (true, true) => AuditStatus::Pass,
            (true, false) => AuditStatus::Fail,
        };
        self.0.push(AuditCheck { rule, status, statement, detail });
    }
}

const ST_NEXT_DISJOINT: &str = "if g_k ∩ J g_k = 0 for some k >= 1 then g_{k+1} ∩ J g_k = 0";
const ST_TERM_BOUNDS: &str = "if g_k ∩ J g_k = 0 for some k >= 1 then k <= dim g_k <= n-2";
const ST_NEXT_BOUNDS: &str = "if g_k ∩ J g_k = 0 for some k >= 1 then 1 + dim g_k <= dim g_{k+1} <= 2n-3, and 2 + dim g_k <= dim g_{k+1} when g_{k+1} ∩ J g_{k+1} != 0";
const ST_STEP_BOUND: &str = "if g_k ∩ J g_k = 0 for some k >= 1 then the step is at least k+2, and g_{k+1} ∩ J g_{k+1} != 0 when it equals k+2";
const ST_UNIT_GROWTH: &str = "if n >= 3, g_k ∩ J g_k = 0 and dim g_{k+1} = 1 + dim g_k then g_{k+1} ∩ J g_{k+1} = 0";
const ST_DEFICIT: &str = "if g_k ∩ J g_k = 0 and dim g_k = n-r with r >= 1 then g_{k+r-1} ∩ J g_{k+r-1} != 0 and dim g_{k+r-1} >= n";
const ST_DIM8_CENTER: &str = "8-dimensional nilpotent Lie algebras with a strongly non-nilpotent complex structure have 1-dimensional center";
const ST_DIM8_G2: &str = "for a strongly non-nilpotent J in dimension 8, g_2 ∩ J g_2 != 0 and 3 <= dim g_2 <= 5";
const ST_DIM6_KINDS: &str = "complex structures on 6-dimensional nilpotent Lie algebras are nilpotent or strongly non-nilpotent";
const ST_A1: &str = "a_1(J) = g_1 ∩ J g_1";
const ST_WNN_QUOTIENT: &str = "for a weakly non-nilpotent J stabilizing at a_t, the induced structure on g / a_t is strongly non-nilpotent";
const ST_OBSTRUCTIONS: &str = "no triggered obstruction of the algebra contradicts the existence of this J";

/// Checks every restriction applicable to an integrable pair `(g, J)`.
pub fn theorem_audit(g: &LieAlgebra, j: &Acs) -> Result<Vec<AuditCheck>> {
    if !is_integrable(g, j)? {
        let count = crate::cpx::integrability_defect(g, j)?.len();
        return Err(Error::NotIntegrable { count });
    }
    let series = g.ascending_central_series()?;
    let (Some(ty), Some(s)) = (series.ascending_type.clone(), series.step) else {
        return Err(Error::NotNilpotent { reached: series.term(series.stabilized_at).dim(), dim: g.dim() });
    };
    let class = j_compatible_series(g, j)?;
    let n = g.dim() / 2;
    let snn = class.kind == JKind::StronglyNonNilpotent;
    let mut audit = Audit(Vec::new());

    let term = |k: usize| -> &Subspace { series.term(k.min(s)) };
    let dim_of = |k: usize| term(k).dim();
    let meets_j = |a: &Subspace, b: &Subspace| -> Result<bool> { Ok(!a.intersect(&j.image(b)?)?.is_zero()) };
    let self_meets = |k: usize| meets_j(term(k), term(k));

    audit.check("snn-step", ST_STEP3, snn, s >= 3, format!("kind {}, step {s}", class.kind));

    let center = term(1);
    let a1_expected = center.intersect(&j.image(center)?)?;
    audit.check("a1-center", ST_A1, true, class.term(1) == &a1_expected, format!("dim a_1 = {}", class.term(1).dim()));

    let mut disjoint_ks = Vec::new();
    for k in 1..s {
        if !self_meets(k)? {
            disjoint_ks.push(k);
        }
    }
    if disjoint_ks.is_empty() {
        for (rule, st) in [
            ("next-disjoint", ST_NEXT_DISJOINT),
            ("term-bounds", ST_TERM_BOUNDS),
            ("next-bounds", ST_NEXT_BOUNDS),
            ("step-bound", ST_STEP_BOUND),
            ("unit-growth", ST_UNIT_GROWTH),
            ("deficit", ST_DEFICIT),
        ] {
            audit.check(rule, st, false, true, "no k >= 1 with g_k ∩ J g_k = 0".into());
        }
    }
    for &k in &disjoint_ks {
        let dk = dim_of(k);
        let dk1 = dim_of(k + 1);
        let next_meets = self_meets(k + 1)?;
        audit.check(
            "next-disjoint",
            ST_NEXT_DISJOINT,
            true,
            !meets_j(term(k + 1), term(k))?,
            format!("k = {k}"),
        );
        audit.check(
            "term-bounds",
            ST_TERM_BOUNDS,
            true,
            k <= dk && dk + 2 <= n,
            format!("k = {k}, dim g_k = {dk}, n = {n}"),
        );
        let lower = if next_meets { dk + 2 } else { dk + 1 };
        audit.check(
            "next-bounds",
            ST_NEXT_BOUNDS,
            true,
            lower <= dk1 && dk1 + 3 <= 2 * n,
            format!("k = {k}, dim g_k = {dk}, dim g_(k+1) = {dk1}"),
        );
        audit.check(
            "step-bound",
            ST_STEP_BOUND,
            true,
            s >= k + 2 && (s != k + 2 || next_meets),
            format!("k = {k}, step {s}"),
        );
        audit.check(
            "unit-growth",
            ST_UNIT_GROWTH,
            n >= 3 && dk1 == dk + 1,
            !next_meets,
            format!("k = {k}, dim g_k = {dk}, dim g_(k+1) = {dk1}"),
        );
        let deficit_applies = dk < n;
        let (holds, detail) = if deficit_applies {
            let r = n - dk;
            let m = k + r - 1;
            (self_meets(m)? && dim_of(m) >= n, format!("k = {k}, r = {r}, dim g_{m} = {}", dim_of(m)))
        } else {
            (true, format!("k = {k}, dim g_k = {dk} >= n"))
        };
        audit.check("deficit", ST_DEFICIT, deficit_applies, holds, detail);
    }

    let d1 = dim_of(1);
    audit.check(
        "center-bound",
        ST_CENTER_BOUND,
        snn && n >= 4,
        d1 >= 1 && d1 + 3 <= n,
        format!("dim g_1 = {d1}, n = {n}"),
    );
    let dim8_snn = g.dim() == 8 && snn;
    audit.check("dim8-center", ST_DIM8_CENTER, dim8_snn, d1 == 1, format!("dim g_1 = {d1}"));
    let d2 = dim_of(2);
    audit.check(
        "dim8-g2",
        ST_DIM8_G2,
        dim8_snn,
        (3..=5).contains(&d2) && self_meets(2)?,
        format!("dim g_2 = {d2}"),
    );
    let admissible = snn_admissible_types(g.dim());
    audit.check(
        "snn-type-list",
        match g.dim() {
            6 => ST_DIM6,
            8 => ST_DIM8,
            _ => ST_LOW_DIM,
        },
        snn && admissible.is_some(),
        admissible.is_some_and(|l| l.contains(&ty)),
        format!("type {}", format_type(&ty)),
    );
    audit.check(
        "low-dimension-nilpotent",
        ST_LOW_DIM,
        g.dim() <= 4,
        class.kind == JKind::Nilpotent,
        format!("kind {}", class.kind),
    );
    audit.check(
        "dim6-kinds",
        ST_DIM6_KINDS,
        g.dim() == 6,
        class.kind != JKind::WeaklyNonNilpotent,
        format!("kind {}", class.kind),
    );

    let wnn = class.kind == JKind::WeaklyNonNilpotent;
    let (holds, detail) = if wnn {
        let (q, jq) = induced_quotient(g, j, class.stabilization_index)?;
        let kind = j_compatible_series(&q, &jq)?.kind;
        (kind == JKind::StronglyNonNilpotent, format!("quotient of dimension {} has kind {kind}", q.dim()))
    } else {
        (true, format!("kind {}", class.kind))
    };
    audit.check("wnn-quotient", ST_WNN_QUOTIENT, wnn, holds, detail);

    let report = obstruction_report(g)?;
    let contradicted: Vec<&str> = report
        .iter()
        .filter(|v| v.triggered)
        .filter(|v| match v.effect {
            Effect::NoComplexStructure => true,
            Effect::NoStronglyNonNilpotent => snn,
            Effect::QuasiNilpotentOnly => !class.kind.is_quasi_nilpotent(),
        })
        .map(|v| v.rule)
        .collect();
    audit.check(
        "obstructions",
        ST_OBSTRUCTIONS,
        true,
        contradicted.is_empty(),
        if contradicted.is_empty() { "none contradicted".into() } else { contradicted.join(", ") },
    );
    Ok(audit.0)
}

/// In dimension 8, structures on the same algebra are either all
/// quasi-nilpotent or all strongly non-nilpotent.
pub fn coexistence_check(g: &LieAlgebra, structures: &[Acs]) -> Result<AuditCheck> {
    let mut kinds = Vec::with_capacity(structures.len());
    for j in structures {
        kinds.push(j_compatible_series(g, j)?.kind);
    }
    let snn = kinds.iter().filter(|k| **k == JKind::StronglyNonNilpotent).count();
    let applies = g.dim() == 8 && kinds.len() >= 2;
    let holds = snn == 0 || snn == kinds.len();
    let detail = kinds.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    let status = match (applies, holds) {
        (false, _) => AuditStatus::Skipped,
        (true, true) => AuditStatus::Pass,
        (true, false) => AuditStatus::Fail,
    };
    Ok(AuditCheck {
        rule: "dim8-coexistence",
        status,
        statement: "complex structures on one 8-dimensional nilpotent Lie algebra are all quasi-nilpotent or all strongly non-nilpotent",
        detail,
    })
}
