//! Plain-text form of complex structure equations, one line per `dω^a`:
//!
//! ```text
//! dw1 = 0
//! dw2 = (1+2i) w1^2 + (-1/2) w1^-3 + (i) w-1^-2
//! ```
//!
//! `wb^c` is `ω^{bc}`, `wb^-c` is `ω^{b c̄}` and `w-b^-c` is `ω^{b̄ c̄}`, all 1-based.

use thiserror::Error;

use super::{Bidegree, ComplexEquations};
use crate::exactlin::CScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseEquationsError {
    pub line: usize,
    pub message: String,
}

pub fn format_equations(eqs: &ComplexEquations) -> String {
    let mut out = String::new();
    for (a, form) in eqs.differentials().iter().enumerate() {
        let terms: Vec<String> = form
            .terms()
            .map(|(block, b, c, coeff)| {
                let basis = match block {
                    Bidegree::Hol => format!("w{}^{}", b + 1, c + 1),
                    Bidegree::Mixed => format!("w{}^-{}", b + 1, c + 1),
                    Bidegree::Anti => format!("w-{}^-{}", b + 1, c + 1),
                };
                format!("({coeff}) {basis}")
            })
            .collect();
        let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        out.push_str(&format!("dw{} = {rhs}\n", a + 1));
    }
    out
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_index(s: &str) -> Option<usize> {
    let v: usize = s.parse().ok()?;
    v.checked_sub(1)
}

fn parse_basis(s: &str) -> Option<(Bidegree, usize, usize)> {
    let rest = s.strip_prefix('w')?;
    let (anti, rest) = match rest.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, rest),
    };
    let (b, c) = rest.split_once('^')?;
    let (conj, c) = match c.strip_prefix('-') {
        Some(c) => (true, c),
        None => (false, c),
    };
    let block = match (anti, conj) {
        (false, false) => Bidegree::Hol,
        (false, true) => Bidegree::Mixed,
        (true, true) => Bidegree::Anti,
        (true, false) => return None,
    };
    Some((block, parse_index(b)?, parse_index(c)?))
}

type Term = (Bidegree, usize, usize, CScalar);

fn parse_term(raw: &str) -> Result<Term, String> {
    let t = raw.trim();
    let (coeff, basis) = if let Some(rest) = t.strip_prefix('(') {
        let close = rest.find(')').ok_or("unclosed parenthesis")?;
        let coeff: CScalar = rest[..close].trim().parse().map_err(|e| format!("{e}"))?;
        (coeff, rest[close + 1..].trim())
    } else {
        (CScalar::one(), t)
    };
    let (block, b, c) = parse_basis(basis).ok_or_else(|| format!("bad basis form `{basis}`"))?;
    Ok((block, b, c, coeff))
}

pub fn parse_equations(src: &str) -> Result<ComplexEquations, ParseEquationsError> {
    let mut rows: Vec<(usize, usize, Vec<Term>)> = Vec::new();
    for (lineno, raw) in src.lines().enumerate() {
        let line = lineno + 1;
        let err = |message: String| ParseEquationsError { line, message };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (lhs, rhs) = content.split_once('=').ok_or_else(|| err("expected `dwN = ...`".into()))?;
        let a = lhs
            .trim()
            .strip_prefix("dw")
            .and_then(parse_index)
            .ok_or_else(|| err(format!("bad left-hand side `{}`", lhs.trim())))?;
        let rhs = rhs.trim();
        let terms = if rhs == "0" {
            Vec::new()
        } else {
            split_top_level(rhs).into_iter().map(parse_term).collect::<Result<Vec<_>, _>>().map_err(err)?
        };
        rows.push((line, a, terms));
    }
    let m = rows.len();
    let mut seen = vec![false; m];
    let mut eqs = ComplexEquations::zero(m);
    for (line, a, terms) in rows {
        let err = |message: String| ParseEquationsError { line, message };
        if a >= m {
            return Err(err(format!("dw{} but only {m} equations", a + 1)));
        }
        if std::mem::replace(&mut seen[a], true) {
            return Err(err(format!("dw{} given twice", a + 1)));
        }
        for (block, b, c, coeff) in terms {
            eqs.add_term(a, block, b, c, &coeff).map_err(|e| err(e.to_string()))?;
        }
    }
    Ok(eqs)
}
