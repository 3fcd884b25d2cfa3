//! Subcommands. Each produces a [`Report`] carrying both the human text and
//! the JSON value; `main` prints whichever was asked for.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilcx::ceq::{
    complex_forms, d_square_defect, family_case_check, family_instantiate, format_equations, real_equations,
    realify_with, to_adapted_frame, CaseVerdict, FamilyId, FamilyParams, Symbol, DIM8_FAMILY_PAIRING,
};
use nilcx::cpx::{integrability_defect, j_compatible_series};
use nilcx::exactlin::{format_vector, unit};
use nilcx::obstruct::{coexistence_check, forbids_complex_structures, obstruction_report, theorem_audit, AuditStatus};
use nilcx::{Acs, CScalar, Error, Scalar, Subspace};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::nla::{parse_nla, parse_vector, print_nla, NamedStructure, NlaDocument, ParseError};

#[derive(Parser, Debug)]
#[command(name = "nilcx", version, about = "Nilpotent Lie algebras and their complex structures, computed exactly")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A single `.nla` file, or every `.nla` file in a directory.
#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Input `.nla` file.
    #[arg(required_unless_present = "all")]
    pub file: Option<PathBuf>,
    /// Run on every `.nla` file in DIR, in parallel.
    #[arg(long, value_name = "DIR", conflicts_with = "file")]
    pub all: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Jacobi identity and d² = 0.
    Check(Input),
    /// Ascending central series, type and step.
    Series(Input),
    /// Ascending J-compatible series and classification.
    Jseries {
        #[command(flatten)]
        input: Input,
        /// Structure name; all structures when omitted.
        #[arg(long)]
        j: Option<String>,
    },
    /// Nonzero Nijenhuis tensor values on basis pairs.
    Nijenhuis {
        #[command(flatten)]
        input: Input,
        /// Structure name; all structures when omitted.
        #[arg(long)]
        j: Option<String>,
    },
    /// Quotient by an ideal given as `v1;v2;...`; each vector is either
    /// comma-separated coordinates or bracket-line terms such as `7 -(1/2)*8`.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Direct product of two algebras.
    Product { first: PathBuf, second: PathBuf },
    /// Structural obstructions to complex structures.
    Obstruct(Input),
    /// Every applicable restriction checked against each structure in the file.
    Audit {
        #[command(flatten)]
        input: Input,
        /// Structure name; all structures when omitted.
        #[arg(long)]
        j: Option<String>,
    },
    /// Complex structure equations.
    Ceq {
        #[command(flatten)]
        input: Input,
        /// Structure name; all structures when omitted.
        #[arg(long)]
        j: Option<String>,
        /// 1-based pairs `x,y;...` with `J e_x = e_y`, giving `ω^a = e^x - i e^y`.
        #[arg(long)]
        pairing: Option<String>,
    },
    /// Instantiate a parametrized family and check its case bookkeeping.
    Family {
        /// g2dim3, g2dim4 or g2dim5.
        name: String,
        /// `SYMBOL=VALUE`, e.g. `A=1+2i` or `s=1/2`.
        #[arg(long = "set", value_name = "SYMBOL=VALUE")]
        set: Vec<String>,
    },
    /// Parse, print and parse again.
    Roundtrip(Input),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Computed, and any verdict is positive.
    Ok,
    /// Computed, and the verdict is negative.
    Negative,
    /// Bad input.
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub file: Option<String>,
    pub status: Status,
    pub exit_code: i32,
    pub result: Option<Value>,
    pub error: Option<ErrorInfo>,
    #[serde(skip)]
    pub text: String,
}

/// A failure that ends a subcommand early.
#[derive(Debug)]
pub enum Failure {
    Input(ErrorInfo),
    /// The computation itself gave a negative answer.
    Negative(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(ErrorInfo { message: e.to_string(), line: Some(e.line), column: Some(e.column) })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotALieAlgebra { .. }
            | Error::NotNilpotent { .. }
            | Error::NotIntegrable { .. }
            | Error::NotAnIdeal
            | Error::JacobiViolated => Failure::Negative(e.to_string()),
            _ => input(e.to_string()),
        }
    }
}

fn input(message: impl Into<String>) -> Failure {
    Failure::Input(ErrorInfo { message: message.into(), line: None, column: None })
}

/// Result of a subcommand body: verdict, human text, JSON payload.
struct Done {
    ok: bool,
    text: String,
    result: Value,
}

type Body = Result<Done, Failure>;

fn finish(command: &'static str, file: Option<&Path>, body: Body) -> Report {
    let file = file.map(|p| p.display().to_string());
    match body {
        Ok(d) => {
            let status = if d.ok { Status::Ok } else { Status::Negative };
            Report { command, file, status, exit_code: status.exit_code(), result: Some(d.result), error: None, text: d.text }
        }
        Err(Failure::Negative(message)) => Report {
            command,
            file,
            status: Status::Negative,
            exit_code: 1,
            result: None,
            text: format!("negative: {message}\n"),
            error: Some(ErrorInfo { message, line: None, column: None }),
        },
        Err(Failure::Input(info)) => Report {
            command,
            file,
            status: Status::Error,
            exit_code: 2,
            result: None,
            text: format!("error: {}\n", info.message),
            error: Some(info),
        },
    }
}

pub fn load(path: &Path) -> Result<NlaDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    Ok(parse_nla(&text)?)
}

// ---------------------------------------------------------------------------
// formatting helpers

fn scalar_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// `{0}`, `g`, or `span{e7,e8}`.
pub fn span_text(s: &Subspace, names: &[String]) -> String {
    if s.is_zero() {
        "{0}".to_string()
    } else if s.is_full() {
        "g".to_string()
    } else {
        let parts: Vec<String> = s.basis_vectors().iter().map(|v| format_vector(v, names)).collect();
        format!("span{{{}}}", parts.join(","))
    }
}

fn tuple_text(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn selected<'a>(doc: &'a NlaDocument, j: Option<&str>) -> Result<Vec<(String, Acs)>, Failure> {
    let all = doc.acs_list();
    match j {
        None => Ok(all),
        Some(name) => all
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|s| vec![s])
            .ok_or_else(|| input(format!("no structure named `{name}`"))),
    }
}

fn need_structures(list: &[(String, Acs)]) -> Result<(), Failure> {
    if list.is_empty() {
        Err(input("the file defines no almost complex structure"))
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// subcommands

fn check(doc: &NlaDocument) -> Body {
    let g = doc.algebra()?;
    let names = g.names().to_vec();
    let jacobi = g.jacobi_defect();
    let d2 = d_square_defect(&real_equations(&g));
    let mut text = String::new();
    if jacobi.is_empty() {
        text.push_str("Jacobi identity: holds\n");
    } else {
        text.push_str(&format!("Jacobi identity: fails on {} triples\n", jacobi.len()));
        for d in jacobi.iter().take(10) {
            let (i, j, k) = d.triple;
            text.push_str(&format!(
                "  Jac({},{},{}) = {}\n",
                names[i],
                names[j],
                names[k],
                format_vector(&d.defect, &names)
            ));
        }
    }
    text.push_str(&format!(
        "d^2 = 0: {}\n",
        if d2.is_empty() { "holds".to_string() } else { format!("fails ({} coefficients)", d2.len()) }
    ));
    let mut structures = Vec::new();
    for (name, j) in doc.acs_list() {
        let defects = integrability_defect(&g, &j)?;
        text.push_str(&format!(
            "{name}: {}\n",
            if defects.is_empty() { "integrable".into() } else { format!("not integrable ({} pairs)", defects.len()) }
        ));
        structures.push(json!({"name": name, "integrable": defects.is_empty(), "defect_count": defects.len()}));
    }
    let result = json!({
        "dim": g.dim(),
        "jacobi_holds": jacobi.is_empty(),
        "jacobi_defects": jacobi.iter().map(|d| json!({
            "triple": [d.triple.0 + 1, d.triple.1 + 1, d.triple.2 + 1],
            "defect": scalar_strings(&d.defect),
        })).collect::<Vec<_>>(),
        "d_squared_holds": d2.is_empty(),
        "d_squared_defect_count": d2.len(),
        "structures": structures,
    });
    Ok(Done { ok: jacobi.is_empty() && d2.is_empty(), text, result })
}

fn series(doc: &NlaDocument) -> Body {
    let g = doc.algebra()?;
    let names = g.names().to_vec();
    let s = g.ascending_central_series()?;
    let mut text = String::new();
    for k in 1..s.terms.len() {
        text.push_str(&format!("g_{k} = {} (dim {})\n", span_text(&s.terms[k], &names), s.terms[k].dim()));
    }
    match (&s.ascending_type, s.step) {
        (Some(t), Some(step)) => text.push_str(&format!("ascending type {}, {step}-step nilpotent\n", tuple_text(t))),
        _ => text.push_str(&format!("not nilpotent: the series stops at dimension {}\n", s.terms.last().map_or(0, Subspace::dim))),
    }
    let result = json!({
        "dim": g.dim(),
        "dims": s.dims(),
        "terms": s.terms.iter().map(|t| span_text(t, &names)).collect::<Vec<_>>(),
        "is_nilpotent": s.is_nilpotent,
        "step": s.step,
        "ascending_type": s.ascending_type,
    });
    Ok(Done { ok: s.is_nilpotent, text, result })
}

fn jseries(doc: &NlaDocument, j: Option<&str>) -> Body {
    let g = doc.algebra()?;
    let names = g.names().to_vec();
    let list = selected(doc, j)?;
    need_structures(&list)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for (name, j) in &list {
        let c = j_compatible_series(&g, j)?;
        let terms: Vec<String> = c.j_series.iter().map(|t| span_text(t, &names)).collect();
        let listed: Vec<String> = if c.stabilization_index == 0 {
            vec!["a_1 = {0}".to_string()]
        } else {
            (1..=c.stabilization_index).map(|k| format!("a_{k} = {}", terms[k])).collect()
        };
        text.push_str(&format!("{name}: {}, {}\n", c.kind, listed.join(", ")));
        out.push(json!({
            "name": name,
            "kind": c.kind,
            "quasi_nilpotent": c.kind.is_quasi_nilpotent(),
            "stabilization_index": c.stabilization_index,
            "dims": c.dims(),
            "terms": terms,
        }));
    }
    Ok(Done { ok: true, text, result: json!({ "structures": out }) })
}

fn nijenhuis(doc: &NlaDocument, j: Option<&str>) -> Body {
    let g = doc.algebra()?;
    let names = g.names().to_vec();
    let list = selected(doc, j)?;
    need_structures(&list)?;
    let mut text = String::new();
    let mut out = Vec::new();
    let mut all_integrable = true;
    for (name, j) in &list {
        let defects = integrability_defect(&g, j)?;
        all_integrable &= defects.is_empty();
        if defects.is_empty() {
            text.push_str(&format!("{name}: N_J = 0, integrable\n"));
        } else {
            text.push_str(&format!("{name}: not integrable, {} nonzero values\n", defects.len()));
            for d in &defects {
                let (a, b) = d.pair;
                text.push_str(&format!("  N({},{}) = {}\n", names[a], names[b], format_vector(&d.defect, &names)));
            }
        }
        out.push(json!({
            "name": name,
            "integrable": defects.is_empty(),
            "defects": defects.iter().map(|d| json!({
                "pair": [d.pair.0 + 1, d.pair.1 + 1],
                "value": scalar_strings(&d.defect),
            })).collect::<Vec<_>>(),
        }));
    }
    Ok(Done { ok: all_integrable, text, result: json!({ "structures": out }) })
}

fn parse_ideal(spec: &str, dim: usize) -> Result<Vec<Vec<Scalar>>, Failure> {
    let mut vectors = Vec::new();
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let v = if part.contains(',') {
            let coords: Vec<Scalar> = part
                .split(',')
                .map(|c| nilcx::exactlin::parse_scalar(c).ok_or_else(|| input(format!("bad coordinate `{c}`"))))
                .collect::<Result<_, _>>()?;
            if coords.len() != dim {
                return Err(input(format!("vector `{part}` has {} coordinates, expected {dim}", coords.len())));
            }
            coords
        } else {
            let sparse = parse_vector(part, dim).map_err(|e| input(format!("`{part}`: {}", e.kind)))?;
            let mut v = vec![Scalar::from_integer(0.into()); dim];
            for (k, c) in sparse {
                v[k] = c;
            }
            v
        };
        vectors.push(v);
    }
    Ok(vectors)
}

fn quotient(doc: &NlaDocument, ideal: &str) -> Body {
    let g = doc.algebra()?;
    let vectors = parse_ideal(ideal, g.dim())?;
    let ideal = Subspace::span(g.dim(), &vectors)?;
    let q = g.quotient(&ideal)?;
    let printed = print_nla(&NlaDocument::from_algebra(&q.algebra));
    let ty = q.algebra.ascending_type().ok();
    let mut text = printed.clone();
    if let Some(t) = &ty {
        text.push_str(&format!("# ascending type {}\n", tuple_text(t)));
    }
    let result = json!({
        "ideal_dim": ideal.dim(),
        "dim": q.algebra.dim(),
        "ascending_type": ty,
        "document": printed,
    });
    Ok(Done { ok: true, text, result })
}

fn product(a: &NlaDocument, b: &NlaDocument) -> Body {
    let g = a.algebra()?.direct_product(&b.algebra()?);
    let g = g.with_names(nilcx::liealg::default_names(a.dim + b.dim))?;
    let printed = print_nla(&NlaDocument::from_algebra(&g));
    let ty = g.ascending_type().ok();
    let mut text = printed.clone();
    if let Some(t) = &ty {
        text.push_str(&format!("# ascending type {}\n", tuple_text(t)));
    }
    Ok(Done { ok: true, text, result: json!({ "dim": g.dim(), "ascending_type": ty, "document": printed }) })
}

fn obstruct(doc: &NlaDocument) -> Body {
    let g = doc.algebra()?;
    let report = obstruction_report(&g)?;
    let forbids = forbids_complex_structures(&report);
    let mut text = String::new();
    for v in report.iter().filter(|v| v.triggered) {
        let source = if v.internal { "" } else { " [external]" };
        text.push_str(&format!("{}: {:?}{source}\n  {}\n  {}\n", v.rule, v.effect, v.statement, v.witness));
    }
    text.push_str(if forbids {
        "verdict: no complex structure exists\n"
    } else {
        "verdict: no obstruction rules out complex structures\n"
    });
    Ok(Done { ok: !forbids, text, result: json!({ "verdicts": report, "forbids_complex_structures": forbids }) })
}

fn audit(doc: &NlaDocument, j: Option<&str>) -> Body {
    let g = doc.algebra()?;
    let list = selected(doc, j)?;
    let mut text = String::new();
    let mut out = Vec::new();
    let mut fails = 0;
    for (name, j) in &list {
        let checks = theorem_audit(&g, j)?;
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        let (pass, fail, skip) = (count(AuditStatus::Pass), count(AuditStatus::Fail), count(AuditStatus::Skipped));
        fails += fail;
        text.push_str(&format!("{name}: {pass} pass, {fail} fail, {skip} skipped\n"));
        for c in checks.iter().filter(|c| c.status == AuditStatus::Fail) {
            text.push_str(&format!("  FAIL {}: {}\n    {}\n", c.rule, c.statement, c.detail));
        }
        out.push(json!({ "name": name, "checks": checks }));
    }
    let coexistence = if list.len() >= 2 {
        let acs: Vec<Acs> = list.iter().map(|(_, j)| j.clone()).collect();
        let c = coexistence_check(&g, &acs)?;
        if c.status == AuditStatus::Fail {
            fails += 1;
        }
        text.push_str(&format!("coexistence: {:?}\n", c.status));
        Some(c)
    } else {
        None
    };
    if list.is_empty() {
        text.push_str("no structures to audit\n");
    }
    let result = json!({ "structures": out, "coexistence": coexistence, "fail_count": fails });
    Ok(Done { ok: fails == 0, text, result })
}

fn parse_pairing(spec: &str) -> Result<Vec<(usize, usize)>, Failure> {
    spec.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (x, y) = p.split_once(',').ok_or_else(|| input(format!("bad pair `{p}`")))?;
            let idx = |s: &str| -> Result<usize, Failure> {
                s.trim()
                    .parse::<usize>()
                    .ok()
                    .and_then(|v| v.checked_sub(1))
                    .ok_or_else(|| input(format!("bad index `{s}`")))
            };
            Ok((idx(x)?, idx(y)?))
        })
        .collect()
}

/// `(x, y)` pairs with `J e_x = e_y` when `J` permutes basis vectors up to sign.
fn coordinate_pairing(j: &Acs) -> Option<Vec<(usize, usize)>> {
    let n = j.dim();
    let mut used = vec![false; n];
    let mut pairs = Vec::new();
    for x in 0..n {
        if used[x] {
            continue;
        }
        let image = j.apply(&unit(n, x)).ok()?;
        let negated: Vec<Scalar> = image.iter().map(|c| -c).collect();
        let (y, pair) = (0..n).find_map(|y| {
            let e = unit(n, y);
            if image == e {
                Some((y, (x, y)))
            } else if negated == e {
                // J e_y = e_x
                Some((y, (y, x)))
            } else {
                None
            }
        })?;
        used[x] = true;
        used[y] = true;
        pairs.push(pair);
    }
    Some(pairs)
}

fn ceq(doc: &NlaDocument, j: Option<&str>, pairing: Option<&str>) -> Body {
    let g = doc.algebra()?;
    let list = selected(doc, j)?;
    need_structures(&list)?;
    let (name, j) = &list[0];
    let (g, j, pairing, frame) = match pairing {
        Some(spec) => (g, j.clone(), parse_pairing(spec)?, "given"),
        None if doc.family.is_some() => (g, j.clone(), DIM8_FAMILY_PAIRING.to_vec(), "family"),
        None => match coordinate_pairing(j) {
            Some(p) => (g, j.clone(), p, "coordinate"),
            None => {
                let (g2, j2, p) = to_adapted_frame(&g, j)?;
                (g2, j2, p, "adapted")
            }
        },
    };
    let eqs = complex_forms(&g, &j, &pairing)?;
    let no_02 = eqs.has_no_02_part();
    let lines = format_equations(&eqs);
    let mut text = format!("# structure {name}, pairing {}\n", pairing_text(&pairing));
    if frame == "adapted" {
        text.push_str("# in a J-adapted basis\n");
    }
    text.push_str(&lines);
    if !no_02 {
        text.push_str("# nonzero (0,2) part: J is not integrable\n");
    }
    let result = json!({
        "structure": name,
        "frame": frame,
        "pairing": pairing.iter().map(|&(x, y)| [x + 1, y + 1]).collect::<Vec<_>>(),
        "equations": lines.lines().collect::<Vec<_>>(),
        "integrable": no_02,
    });
    Ok(Done { ok: no_02, text, result })
}

fn pairing_text(p: &[(usize, usize)]) -> String {
    p.iter().map(|&(x, y)| format!("{},{}", x + 1, y + 1)).collect::<Vec<_>>().join(";")
}

pub fn parse_assignment(family: FamilyId, s: &str) -> Result<(Symbol, CScalar), Failure> {
    let (sym, value) = s.split_once('=').ok_or_else(|| input(format!("expected SYMBOL=VALUE, got `{s}`")))?;
    let sym: Symbol = sym.trim().parse().map_err(input)?;
    let value: CScalar = value.trim().parse().map_err(|e| input(format!("{e}")))?;
    if !family.symbols().contains(&sym) {
        return Err(input(format!("{sym} is not a parameter of {family}")));
    }
    Ok((sym, value))
}

/// The realified algebra with its structure and family metadata, as a document.
pub fn family_document(p: &FamilyParams) -> nilcx::Result<NlaDocument> {
    let (g, j) = realify_with(&family_instantiate(p), &DIM8_FAMILY_PAIRING)?;
    let mut doc = NlaDocument::from_algebra(&g);
    doc.structures.push(NamedStructure::from_acs("J", &j));
    doc.family = Some(p.clone());
    Ok(doc)
}

fn family(name: &str, set: &[String]) -> Body {
    let id: FamilyId = name.parse().map_err(input)?;
    let mut p = FamilyParams::new(id);
    for s in set {
        let (sym, value) = parse_assignment(id, s)?;
        p.set(sym, value)?;
    }
    let eqs = family_instantiate(&p);
    let lines = format_equations(&eqs);
    let report = family_case_check(&p, &eqs)?;
    let doc = family_document(&p)?;
    let printed = print_nla(&doc);
    let ok = report.verdict != CaseVerdict::Inconsistent;
    let mut text = format!("# {p}\n{lines}");
    let ty = report.ascending_type.as_deref().map_or("none".to_string(), tuple_text);
    text.push_str(&format!(
        "ascending type {ty}, {}, dim g_1 = {}, dim g_2 = {}\n",
        report.kind, report.center_dim, report.g2_dim
    ));
    match report.matched_case {
        Some(label) => text.push_str(&format!(
            "case ({label}); conditions {}\n",
            if report.matched_conditions_hold == Some(true) { "hold" } else { "do not hold" }
        )),
        None => text.push_str("no case of this family has this ascending type\n"),
    }
    text.push_str(&format!("verdict: {:?}\n", report.verdict));
    let result = json!({
        "params": p.values().iter().map(|(k, v)| (k.to_string(), Value::String(v.to_string()))).collect::<serde_json::Map<String, Value>>(),
        "equations": lines.lines().collect::<Vec<_>>(),
        "report": report,
        "document": printed,
    });
    Ok(Done { ok, text, result })
}

fn roundtrip(text: &str) -> Body {
    let doc = parse_nla(text)?;
    let printed = print_nla(&doc);
    let again = parse_nla(&printed)?;
    let identical = again == doc && print_nla(&again) == printed;
    let mut out = printed.clone();
    if !identical {
        out.push_str("# round trip changed the document\n");
    }
    Ok(Done { ok: identical, text: out, result: json!({ "identical": identical, "canonical": printed }) })
}

// ---------------------------------------------------------------------------
// dispatch

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check(_) => "check",
        Command::Series(_) => "series",
        Command::Jseries { .. } => "jseries",
        Command::Nijenhuis { .. } => "nijenhuis",
        Command::Quotient { .. } => "quotient",
        Command::Product { .. } => "product",
        Command::Obstruct(_) => "obstruct",
        Command::Audit { .. } => "audit",
        Command::Ceq { .. } => "ceq",
        Command::Family { .. } => "family",
        Command::Roundtrip(_) => "roundtrip",
    }
}

/// Runs a single-file subcommand on `path`.
pub fn run_file(command: &Command, path: &Path) -> Report {
    let name = command_name(command);
    let body = (|| -> Body {
        if let Command::Roundtrip(_) = command {
            let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
            return roundtrip(&text);
        }
        let doc = load(path)?;
        match command {
            Command::Check(_) => check(&doc),
            Command::Series(_) => series(&doc),
            Command::Jseries { j, .. } => jseries(&doc, j.as_deref()),
            Command::Nijenhuis { j, .. } => nijenhuis(&doc, j.as_deref()),
            Command::Obstruct(_) => obstruct(&doc),
            Command::Audit { j, .. } => audit(&doc, j.as_deref()),
            Command::Ceq { j, pairing, .. } => ceq(&doc, j.as_deref(), pairing.as_deref()),
            Command::Quotient { ideal, .. } => quotient(&doc, ideal),
            _ => unreachable!("not a single-file command"),
        }
    })();
    finish(name, Some(path), body)
}

fn single_input(command: &Command) -> Option<&Input> {
    match command {
        Command::Check(i) | Command::Series(i) | Command::Obstruct(i) | Command::Roundtrip(i) => Some(i),
        Command::Jseries { input, .. }
        | Command::Nijenhuis { input, .. }
        | Command::Audit { input, .. }
        | Command::Ceq { input, .. } => Some(input),
        _ => None,
    }
}

/// `.nla` files of a directory in name order.
pub fn corpus_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "nla"))
        .collect();
    files.sort();
    Ok(files)
}

/// Reports for one invocation; batch mode yields one per file.
pub fn execute(command: &Command) -> Vec<Report> {
    let name = command_name(command);
    if let Some(inp) = single_input(command) {
        if let Some(dir) = &inp.all {
            return match corpus_files(dir) {
                Ok(files) => files.par_iter().map(|f| run_file(command, f)).collect(),
                Err(e) => vec![finish(name, Some(dir), Err(input(format!("{}: {e}", dir.display()))))],
            };
        }
        let file = inp.file.as_ref().expect("clap requires FILE or --all");
        return vec![run_file(command, file)];
    }
    let report = match command {
        Command::Quotient { file, .. } => run_file(command, file),
        Command::Product { first, second } => {
            let body = (|| -> Body { product(&load(first)?, &load(second)?) })();
            finish(name, Some(first), body)
        }
        Command::Family { name: fam, set } => finish(name, None, family(fam, set)),
        _ => unreachable!("single-file commands handled above"),
    };
    vec![report]
}

/// Rendered output and exit code.
pub fn render(cli: &Cli, reports: &[Report]) -> (String, i32) {
    let exit = reports.iter().map(|r| r.exit_code).max().unwrap_or(0);
    let batch = single_input(&cli.command).is_some_and(|i| i.all.is_some());
    let out = match cli.format {
        Format::Json if batch => serde_json::to_string_pretty(reports).expect("reports serialize"),
        Format::Json => serde_json::to_string_pretty(&reports[0]).expect("reports serialize"),
        Format::Text if batch => reports
            .iter()
            .map(|r| format!("== {} ==\n{}", r.file.as_deref().unwrap_or("-"), r.text))
            .collect::<String>(),
        Format::Text => reports[0].text.clone(),
    };
    (out, exit)
}

/// Parses arguments and runs; clap's own errors exit with 2.
pub fn main_with_args<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => {
            let reports = execute(&cli.command);
            render(&cli, &reports)
        }
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            (e.to_string(), code)
        }
    }
}
