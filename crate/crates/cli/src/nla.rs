//! The `.nla` text format: one algebra, optional almost complex structures and
//! optional family metadata.
//!
//! ```text
//! name "h3"
//! dim 3
//! [1,2] = 3             # [e1,e2] = e3
//! [1,3] = -(1/2)*2 4    # [e1,e3] = -1/2 e2 + e4 (needs dim >= 4)
//! structure J
//! J 1 = 2               # J e1 = e2 and J e2 = -e1
//! J 3 = 2*4 (1/3)*5     # J e3 = 2 e4 + 1/3 e5
//! ```
//!
//! A `J i = ...` line gives the image `J e_i`. A single term with coefficient
//! `±1` is the pair shorthand and also fixes `J e_j = ∓e_i`. Lines after
//! `structure NAME` belong to that structure; `J` lines before any header
//! belong to a structure called `J`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nilcx::ceq::{FamilyId, FamilyParams, Symbol};
use nilcx::{Acs, CScalar, LieAlgebra, Matrix, Scalar};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Documents above this dimension are rejected before anything is allocated.
pub const MAX_DIM: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("bracket [{i},{j}] stated twice")]
    DuplicateBracket { i: usize, j: usize },
    #[error("bracket [{i},{i}] of a basis element with itself")]
    DiagonalBracket { i: usize },
    #[error("index {index} outside 1..{dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("inconsistent J: {0}")]
    JInconsistent(String),
    #[error("{0}")]
    Invalid(String),
}

/// A diagnostic with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Sparse vector keyed by 0-based basis index; zero entries are never stored.
pub type SparseVec = BTreeMap<usize, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedStructure {
    pub name: String,
    /// `J e_i` for every 0-based `i`.
    pub columns: Vec<SparseVec>,
}

impl NamedStructure {
    pub fn from_acs(name: &str, j: &Acs) -> Self {
        let n = j.dim();
        let columns = (0..n).map(|c| sparse(&j.matrix().column(c))).collect();
        Self { name: name.to_string(), columns }
    }

    pub fn acs(&self) -> nilcx::Result<Acs> {
        let n = self.columns.len();
        let mut m = Matrix::zeros(n, n);
        for (c, col) in self.columns.iter().enumerate() {
            for (&r, v) in col {
                m[(r, c)] = v.clone();
            }
        }
        Acs::new(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NlaDocument {
    pub name: Option<String>,
    pub cite: Option<String>,
    pub dim: usize,
    pub basis: Option<Vec<String>>,
    /// `[e_i, e_j]` for 0-based `i < j`. A stated bracket may be zero.
    pub brackets: BTreeMap<(usize, usize), SparseVec>,
    pub structures: Vec<NamedStructure>,
    pub family: Option<FamilyParams>,
}

fn sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

impl NlaDocument {
    pub fn new(dim: usize) -> Self {
        Self { name: None, cite: None, dim, basis: None, brackets: BTreeMap::new(), structures: Vec::new(), family: None }
    }

    /// Nonzero brackets of `g`; labels are kept when they differ from `e1..en`.
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        let mut doc = Self::new(g.dim());
        for (i, j, v) in g.nonzero_brackets() {
            doc.brackets.insert((i, j), sparse(v));
        }
        if g.names() != nilcx::liealg::default_names(g.dim()).as_slice() {
            doc.basis = Some(g.names().to_vec());
        }
        doc
    }

    pub fn algebra(&self) -> nilcx::Result<LieAlgebra> {
        let mut constants = Vec::new();
        for (&(i, j), v) in &self.brackets {
            for (&k, c) in v {
                constants.push((i, j, k, c.clone()));
            }
        }
        LieAlgebra::from_constants(self.dim, &constants)?.with_names(self.element_names())
    }

    pub fn element_names(&self) -> Vec<String> {
        self.basis.clone().unwrap_or_else(|| nilcx::liealg::default_names(self.dim))
    }

    pub fn structure(&self, name: &str) -> Option<&NamedStructure> {
        self.structures.iter().find(|s| s.name == name)
    }

    /// All structures as validated [`Acs`] values, in file order.
    pub fn acs_list(&self) -> Vec<(String, Acs)> {
        self.structures
            .iter()
            .map(|s| (s.name.clone(), s.acs().expect("structures are validated on parse")))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// printing

fn write_string(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out.push('"');
}

/// One term in canonical form: `k`, `-k`, `2*k`, `-(1/2)*k`.
pub fn format_term(coeff: &Scalar, index: usize) -> String {
    let k = index + 1;
    let sign = if coeff.is_negative() { "-" } else { "" };
    let mag = coeff.abs();
    if mag.is_one() {
        format!("{sign}{k}")
    } else if mag.is_integer() {
        format!("{sign}{mag}*{k}")
    } else {
        format!("{sign}({mag})*{k}")
    }
}

fn format_terms(v: &SparseVec) -> String {
    if v.is_empty() {
        return "0".to_string();
    }
    v.iter().map(|(&k, c)| format_term(c, k)).collect::<Vec<_>>().join(" ")
}

fn is_unit(v: &SparseVec) -> Option<(usize, bool)> {
    match v.iter().next() {
        Some((&k, c)) if v.len() == 1 && c.abs().is_one() => Some((k, c.is_positive())),
        _ => None,
    }
}

fn write_structure(out: &mut String, s: &NamedStructure) {
    let _ = writeln!(out, "structure {}", s.name);
    let mut done = vec![false; s.columns.len()];
    for i in 0..s.columns.len() {
        if done[i] {
            continue;
        }
        let col = &s.columns[i];
        // Pair shorthand when J e_i = ±e_j and J e_j = ∓e_i.
        if let Some((j, positive)) = is_unit(col) {
            if j != i && !done[j] && is_unit(&s.columns[j]) == Some((i, !positive)) {
                let _ = writeln!(out, "J {} = {}{}", i + 1, if positive { "" } else { "-" }, j + 1);
                done[i] = true;
                done[j] = true;
                continue;
            }
        }
        let _ = writeln!(out, "J {} = {}", i + 1, format_terms(col));
        done[i] = true;
    }
}

/// Canonical text: metadata, `dim`, basis, brackets in key order, family
/// metadata, then structures.
pub fn print_nla(doc: &NlaDocument) -> String {
    let mut out = String::new();
    if let Some(name) = &doc.name {
        out.push_str("name ");
        write_string(&mut out, name);
        out.push('\n');
    }
    if let Some(cite) = &doc.cite {
        out.push_str("cite ");
        write_string(&mut out, cite);
        out.push('\n');
    }
    let _ = writeln!(out, "dim {}", doc.dim);
    if let Some(basis) = &doc.basis {
        let _ = writeln!(out, "basis {}", basis.join(" "));
    }
    for (&(i, j), v) in &doc.brackets {
        let _ = writeln!(out, "[{},{}] = {}", i + 1, j + 1, format_terms(v));
    }
    if let Some(p) = &doc.family {
        let _ = writeln!(out, "family {}", p.family());
        for (sym, v) in p.values() {
            let _ = writeln!(out, "param {sym} = {v}");
        }
    }
    for s in &doc.structures {
        write_structure(&mut out, s);
    }
    out
}

// ---------------------------------------------------------------------------
// parsing

struct Cursor<'a> {
    line: usize,
    chars: &'a [char],
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Cursor<'a> {
    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: pos + 1, kind }
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.error_at(self.pos, ParseErrorKind::Syntax(msg.into()))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{c}`")))
        }
    }

    fn digits(&mut self) -> PResult<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected a number"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    /// A positive integer that fits in `usize`.
    fn index(&mut self) -> PResult<usize> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| self.error_at(start, ParseErrorKind::Syntax("number too large".into())))
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| !c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn rest(&mut self) -> String {
        let s: String = self.chars[self.pos..].iter().collect();
        self.pos = self.chars.len();
        s.trim().to_string()
    }

    fn end(&mut self) -> PResult<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.syntax("unexpected trailing input"))
        }
    }

    fn string(&mut self) -> PResult<String> {
        self.expect('"')?;
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return Err(self.syntax("unterminated string")),
                Some('"') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some('\\') => {
                    self.pos += 1;
                    let c = match self.peek() {
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some('n') => '\n',
                        Some('t') => '\t',
                        Some('r') => '\r',
                        _ => return Err(self.syntax("unknown escape")),
                    };
                    out.push(c);
                    self.pos += 1;
                }
                Some(c) => {
                    out.push(c);
                    self.pos += 1;
                }
            }
        }
    }

    /// `p` or `p/q` with an optional leading sign.
    fn rational(&mut self) -> PResult<Scalar> {
        let start = self.pos;
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let num = self.digits()?;
        let den = if self.eat('/') { self.digits()? } else { "1".to_string() };
        let text = format!("{}{num}/{den}", if negative { "-" } else { "" });
        if den.bytes().all(|b| b == b'0') {
            return Err(self.error_at(start, ParseErrorKind::Syntax("zero denominator".into())));
        }
        text.parse().map_err(|_| self.error_at(start, ParseErrorKind::Syntax("bad rational".into())))
    }

    /// `±(p/q)*k`, `±p*k`, `±p/q*k` or `±k`; returns `(coefficient, k, position)`
    /// with `k` still 1-based.
    fn term(&mut self) -> PResult<(Scalar, usize, usize)> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let (coeff, index_pos, index) = if self.eat('(') {
            self.skip_ws();
            let c = self.rational()?;
            self.expect(')')?;
            if !self.eat('*') {
                return Err(self.syntax("expected `*` after a coefficient"));
            }
            let p = self.pos;
            (c, p, self.index()?)
        } else {
            let p = self.pos;
            let first = self.digits()?;
            if self.peek() == Some('/') || self.peek() == Some('*') {
                let den = if self.eat('/') { self.digits()? } else { "1".to_string() };
                if den.bytes().all(|b| b == b'0') {
                    return Err(self.error_at(p, ParseErrorKind::Syntax("zero denominator".into())));
                }
                if !self.eat('*') {
                    return Err(self.syntax("expected `*` after a coefficient"));
                }
                let c: Scalar = format!("{first}/{den}")
                    .parse()
                    .map_err(|_| self.error_at(p, ParseErrorKind::Syntax("bad rational".into())))?;
                let q = self.pos;
                (c, q, self.index()?)
            } else {
                let k = first
                    .parse()
                    .map_err(|_| self.error_at(p, ParseErrorKind::Syntax("number too large".into())))?;
                (Scalar::one(), p, k)
            }
        };
        if self.peek().is_some_and(|c| !c.is_whitespace()) {
            return Err(self.syntax("expected whitespace between terms"));
        }
        Ok((if negative { -coeff } else { coeff }, index, index_pos))
    }

    /// Whitespace-separated terms up to end of line; a lone `0` is the zero vector.
    /// Repeated indices are summed. Returns the vector and the number of terms read.
    fn terms(&mut self, dim: usize) -> PResult<(SparseVec, Vec<(Scalar, usize)>)> {
        self.skip_ws();
        let save = self.pos;
        if self.eat('0') {
            self.skip_ws();
            if self.at_end() {
                return Ok((SparseVec::new(), Vec::new()));
            }
            self.pos = save;
        }
        let mut v = SparseVec::new();
        let mut raw = Vec::new();
        if self.at_end() {
            return Err(self.syntax("expected at least one term"));
        }
        while !self.at_end() {
            let (c, k, pos) = self.term()?;
            if k == 0 || k > dim {
                return Err(self.error_at(pos, ParseErrorKind::IndexOutOfRange { index: k, dim }));
            }
            raw.push((c.clone(), k - 1));
            let entry = v.entry(k - 1).or_insert_with(Scalar::zero);
            *entry += c;
            if entry.is_zero() {
                v.remove(&(k - 1));
            }
            self.skip_ws();
        }
        Ok((v, raw))
    }
}

/// Drops a `#` comment that is not inside a string literal.
fn strip_comment(chars: &[char]) -> &[char] {
    let mut in_string = false;
    let mut escaped = false;
    for (i, &c) in chars.iter().enumerate() {
        if in_string {
            match (escaped, c) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_string = false,
                _ => {}
            }
        } else if c == '"' {
            in_string = true;
        } else if c == '#' {
            return &chars[..i];
        }
    }
    chars
}

struct StructureBuilder {
    name: String,
    line: usize,
    column: usize,
    /// Column value and where it was set.
    columns: Vec<Option<(SparseVec, usize, usize)>>,
}

impl StructureBuilder {
    fn assign(&mut self, i: usize, v: SparseVec, line: usize, column: usize) -> PResult<()> {
        if let Some((old, l, _)) = &self.columns[i] {
            if *old != v {
                return Err(ParseError {
                    line,
                    column,
                    kind: ParseErrorKind::JInconsistent(format!(
                        "J e{} in structure {} conflicts with line {l}",
                        i + 1,
                        self.name
                    )),
                });
            }
        }
        self.columns[i] = Some((v, line, column));
        Ok(())
    }

    fn finish(self) -> PResult<NamedStructure> {
        let here = |kind| ParseError { line: self.line, column: self.column, kind };
        let mut columns = Vec::with_capacity(self.columns.len());
        for (i, c) in self.columns.iter().enumerate() {
            match c {
                Some((v, _, _)) => columns.push(v.clone()),
                None => {
                    return Err(here(ParseErrorKind::JInconsistent(format!(
                        "J e{} is not given in structure {}",
                        i + 1,
                        self.name
                    ))))
                }
            }
        }
        let s = NamedStructure { name: self.name.clone(), columns };
        if let Err(e) = s.acs() {
            return Err(here(ParseErrorKind::JInconsistent(format!("structure {}: {e}", self.name))));
        }
        Ok(s)
    }
}

/// A vector written in the term syntax of bracket lines, e.g. `7 -(1/2)*8`.
pub fn parse_vector(text: &str, dim: usize) -> Result<SparseVec, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut cur = Cursor { line: 1, chars: &chars, pos: 0 };
    Ok(cur.terms(dim)?.0)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '^')
}

pub fn parse_nla(text: &str) -> Result<NlaDocument, ParseError> {
    let mut doc = NlaDocument::new(0);
    let mut have_dim = false;
    let mut current: Option<StructureBuilder> = None;
    let mut done: Vec<NamedStructure> = Vec::new();
    let mut family: Option<FamilyParams> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let all: Vec<char> = raw.chars().collect();
        let chars = strip_comment(&all);
        let mut cur = Cursor { line: lineno + 1, chars, pos: 0 };
        cur.skip_ws();
        if cur.at_end() {
            continue;
        }
        let start = cur.pos;
        let need_dim = |cur: &Cursor| -> PResult<()> {
            if have_dim {
                Ok(())
            } else {
                Err(cur.error_at(start, ParseErrorKind::Invalid("`dim` must come first".into())))
            }
        };

        if cur.peek() == Some('[') {
            need_dim(&cur)?;
            cur.pos += 1;
            cur.skip_ws();
            let ipos = cur.pos;
            let i = cur.index()?;
            cur.expect(',')?;
            cur.skip_ws();
            let jpos = cur.pos;
            let j = cur.index()?;
            cur.expect(']')?;
            cur.expect('=')?;
            for (k, p) in [(i, ipos), (j, jpos)] {
                if k == 0 || k > doc.dim {
                    return Err(cur.error_at(p, ParseErrorKind::IndexOutOfRange { index: k, dim: doc.dim }));
                }
            }
            if i == j {
                return Err(cur.error_at(start, ParseErrorKind::DiagonalBracket { i }));
            }
            let (mut v, _) = cur.terms(doc.dim)?;
            let key = if i < j {
                (i - 1, j - 1)
            } else {
                for c in v.values_mut() {
                    *c = -c.clone();
                }
                (j - 1, i - 1)
            };
            if doc.brackets.insert(key, v).is_some() {
                return Err(cur.error_at(start, ParseErrorKind::DuplicateBracket { i, j }));
            }
            continue;
        }

        let keyword = cur.word();
        match keyword.as_str() {
            "dim" => {
                if have_dim {
                    return Err(cur.error_at(start, ParseErrorKind::Invalid("`dim` given twice".into())));
                }
                cur.skip_ws();
                let p = cur.pos;
                let n = cur.index()?;
                cur.end()?;
                if n == 0 || n > MAX_DIM {
                    return Err(cur.error_at(p, ParseErrorKind::Invalid(format!("dimension must be in 1..{MAX_DIM}"))));
                }
                doc.dim = n;
                have_dim = true;
            }
            "name" | "cite" => {
                let s = cur.string()?;
                cur.end()?;
                let slot = if keyword == "name" { &mut doc.name } else { &mut doc.cite };
                if slot.replace(s).is_some() {
                    return Err(cur.error_at(start, ParseErrorKind::Invalid(format!("`{keyword}` given twice"))));
                }
            }
            "basis" => {
                need_dim(&cur)?;
                if doc.basis.is_some() {
                    return Err(cur.error_at(start, ParseErrorKind::Invalid("`basis` given twice".into())));
                }
                let mut names = Vec::new();
                cur.skip_ws();
                while !cur.at_end() {
                    let p = cur.pos;
                    let w = cur.word();
                    if !is_identifier(&w) {
                        return Err(cur.error_at(p, ParseErrorKind::Syntax(format!("bad basis name `{w}`"))));
                    }
                    if names.contains(&w) {
                        return Err(cur.error_at(p, ParseErrorKind::Invalid(format!("basis name `{w}` repeated"))));
                    }
                    names.push(w);
                    cur.skip_ws();
                }
                if names.len() != doc.dim {
                    return Err(cur.error_at(
                        start,
                        ParseErrorKind::Invalid(format!("{} basis names for dimension {}", names.len(), doc.dim)),
                    ));
                }
                doc.basis = Some(names);
            }
            "structure" => {
                need_dim(&cur)?;
                cur.skip_ws();
                let p = cur.pos;
                let name = cur.word();
                cur.end()?;
                if !is_identifier(&name) {
                    return Err(cur.error_at(p, ParseErrorKind::Syntax(format!("bad structure name `{name}`"))));
                }
                if let Some(b) = current.take() {
                    done.push(b.finish()?);
                }
                if done.iter().any(|s| s.name == name) {
                    return Err(cur.error_at(p, ParseErrorKind::Invalid(format!("structure `{name}` given twice"))));
                }
                current = Some(StructureBuilder { name, line: cur.line, column: p + 1, columns: vec![None; doc.dim] });
            }
            "J" => {
                need_dim(&cur)?;
                if current.is_none() {
                    if done.iter().any(|s| s.name == "J") {
                        return Err(cur.error_at(start, ParseErrorKind::Invalid("structure `J` given twice".into())));
                    }
                    current = Some(StructureBuilder {
                        name: "J".into(),
                        line: cur.line,
                        column: start + 1,
                        columns: vec![None; doc.dim],
                    });
                }
                cur.skip_ws();
                let ipos = cur.pos;
                let i = cur.index()?;
                if i == 0 || i > doc.dim {
                    return Err(cur.error_at(ipos, ParseErrorKind::IndexOutOfRange { index: i, dim: doc.dim }));
                }
                cur.expect('=')?;
                cur.skip_ws();
                let rhs_pos = cur.pos;
                let (v, raw) = cur.terms(doc.dim)?;
                let b = current.as_mut().expect("set above");
                let (line, col) = (cur.line, rhs_pos + 1);
                if let [(c, j)] = raw.as_slice() {
                    if c.abs().is_one() {
                        if *j == i - 1 {
                            return Err(cur.error_at(rhs_pos, ParseErrorKind::JInconsistent(format!("J e{i} = ±e{i}"))));
                        }
                        let back: SparseVec = [(i - 1, -c.clone())].into_iter().collect();
                        b.assign(i - 1, v, line, col)?;
                        b.assign(*j, back, line, col)?;
                        continue;
                    }
                }
                b.assign(i - 1, v, line, col)?;
            }
            "family" => {
                cur.skip_ws();
                let p = cur.pos;
                let name = cur.word();
                cur.end()?;
                let id: FamilyId = name.parse().map_err(|e: String| cur.error_at(p, ParseErrorKind::Invalid(e)))?;
                if family.is_some() {
                    return Err(cur.error_at(start, ParseErrorKind::Invalid("`family` given twice".into())));
                }
                family = Some(FamilyParams::new(id));
            }
            "param" => {
                let Some(p) = family.as_mut() else {
                    return Err(cur.error_at(start, ParseErrorKind::Invalid("`param` before `family`".into())));
                };
                cur.skip_ws();
                let spos = cur.pos;
                let mut sym = String::new();
                while cur.peek().is_some_and(|c| c.is_alphanumeric()) {
                    sym.push(cur.peek().expect("checked"));
                    cur.pos += 1;
                }
                let symbol: Symbol = sym.parse().map_err(|e: String| cur.error_at(spos, ParseErrorKind::Invalid(e)))?;
                cur.expect('=')?;
                cur.skip_ws();
                let vpos = cur.pos;
                let value: CScalar = cur
                    .rest()
                    .parse()
                    .map_err(|e| cur.error_at(vpos, ParseErrorKind::Syntax(format!("{e}"))))?;
                if !p.get(symbol).is_zero() {
                    return Err(cur.error_at(spos, ParseErrorKind::Invalid(format!("parameter {symbol} given twice"))));
                }
                p.set(symbol, value).map_err(|e| cur.error_at(vpos, ParseErrorKind::Invalid(e.to_string())))?;
            }
            other => {
                return Err(cur.error_at(start, ParseErrorKind::Syntax(format!("unknown statement `{other}`"))));
            }
        }
    }
    if let Some(b) = current.take() {
        done.push(b.finish()?);
    }
    if !have_dim {
        let lines = text.lines().count().max(1);
        return Err(ParseError { line: lines, column: 1, kind: ParseErrorKind::Invalid("missing `dim`".into()) });
    }
    doc.structures = done;
    doc.family = family;
    Ok(doc)
}
