//! Brute-force search for family parameter points realizing a given case.

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::family::{family_case_check, family_instantiate, FamilyCase, FamilyParams, Symbol};
use super::{realify_with, DIM8_FAMILY_PAIRING};
use crate::cpx::JKind;
use crate::exactlin::{rat, CScalar, Scalar};

/// A real coordinate of the parameter space: real or imaginary part of a symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Slot {
    symbol: Symbol,
    imaginary: bool,
}

/// Nonzero values to try, and the largest number of nonzero real slots.
#[derive(Clone, Debug)]
pub struct SearchStage {
    pub values: Vec<Scalar>,
    pub max_support: usize,
}

/// Stages are tried in order; each sweeps supports of size `1..=max_support`.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub stages: Vec<SearchStage>,
}

impl SearchOptions {
    /// Values `±1` on up to `unit_support` slots, then `±1, ±2` on up to
    /// `unit_support` slots, then every `p/q` with `p, q ∈ {-2, …, 2}` on up
    /// to `full_support` slots.
    pub fn small_rationals(unit_support: usize, full_support: usize) -> Self {
        let mut values: Vec<Scalar> = Vec::new();
        for p in -2..=2i64 {
            for q in -2..=2i64 {
                if p == 0 || q == 0 {
                    continue;
                }
                let v = rat(p, q);
                if !values.contains(&v) {
                    values.push(v);
                }
            }
        }
        values.sort_by_key(|v| (v.denom().clone(), v.numer().magnitude().clone(), v < &rat(0, 1)));
        // Units first: most cases are realized with coefficients ±1.
        Self {
            stages: vec![
                SearchStage { values: vec![rat(1, 1), rat(-1, 1)], max_support: unit_support },
                SearchStage { values: vec![rat(1, 1), rat(-1, 1), rat(2, 1), rat(-2, 1)], max_support: unit_support },
                SearchStage { values, max_support: full_support },
            ],
        }
    }
}

fn slots_for(case: &FamilyCase) -> Vec<Slot> {
    let mut slots = Vec::new();
    for &symbol in case.family.symbols() {
        for imaginary in [false, true] {
            let slot = Slot { symbol, imaginary };
            if !(imaginary && symbol.is_real()) && !forced_zero(case, slot) {
                slots.push(slot);
            }
        }
    }
    slots
}

/// Slots that are zero whenever the case's conditions hold.
fn forced_zero(case: &FamilyCase, slot: Slot) -> bool {
    use Symbol::*;
    let zeros: &[Symbol] = match (case.family.g2_dim(), case.label) {
        (3, "i") => &[A, B],
        (3, "ii") => &[B, H, K, P],
        (3, "iii") => &[K, P],
        (3, "iv") => &[H, K, P, S],
        _ => &[],
    };
    let re_l_zero = matches!((case.family.g2_dim(), case.label), (3, "i") | (3, "iii") | (4, "i") | (5, "i"));
    let re_a_zero = matches!((case.family.g2_dim(), case.label), (4, "i"));
    zeros.contains(&slot.symbol)
        || (re_l_zero && slot.symbol == L && !slot.imaginary)
        || (re_a_zero && slot.symbol == A && !slot.imaginary)
}

fn assemble(case: &FamilyCase, slots: &[Slot], support: &[usize], values: &[&Scalar]) -> FamilyParams {
    let mut p = FamilyParams::new(case.family);
    for (&idx, v) in support.iter().zip(values) {
        let slot = slots[idx];
        let mut z = p.get(slot.symbol);
        if slot.imaginary {
            z.im = (*v).clone();
        } else {
            z.re = (*v).clone();
        }
        p.set(slot.symbol, z).expect("slot belongs to family");
    }
    p
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// True when the point realizes the case: Jacobi holds, the ascending type is
/// the case's, the structure is strongly non-nilpotent and the center is a line.
pub fn realizes(case: &FamilyCase, p: &FamilyParams) -> bool {
    match family_case_check(p, &family_instantiate(p)) {
        Ok(r) => {
            r.ascending_type.as_deref() == Some(case.ascending_type)
                && r.kind == JKind::StronglyNonNilpotent
                && r.center_dim == 1
        }
        Err(_) => false,
    }
}

/// Dense structure constants `c[i][j][k]` (coefficient of `e_k` in `[e_i, e_j]`)
/// in floating point, used only to discard points quickly. All values tried
/// are small dyadic rationals, for which these sums are exact.
type Tensor = Vec<f64>;

const N: usize = 8;

fn slot_tensor(case: &FamilyCase, slot: Slot) -> Tensor {
    let mut p = FamilyParams::new(case.family);
    let v = if slot.imaginary { CScalar::i() } else { CScalar::one() };
    p.set(slot.symbol, v).expect("slot belongs to family");
    let (g, _) = realify_with(&family_instantiate(&p), &DIM8_FAMILY_PAIRING).expect("family equations are well formed");
    let mut t = vec![0.0; N * N * N];
    for (i, j, v) in g.nonzero_brackets() {
        for (k, c) in v.iter().enumerate() {
            let x = c.to_f64().expect("finite rational");
            t[(i * N + j) * N + k] = x;
            t[(j * N + i) * N + k] = -x;
        }
    }
    t
}

/// Jacobi components of `(x, y)`: `Σ_l x_{ij}^l y_{lk}^m` summed cyclically
/// over `i < j < k`, indexed by `(triple, m)`.
fn jacobi_bilinear(x: &[f64], y: &[f64]) -> Vec<f64> {
    let at = |t: &[f64], i: usize, j: usize, k: usize| t[(i * N + j) * N + k];
    let mut out = Vec::with_capacity(56 * N);
    for i in 0..N {
        for j in i + 1..N {
            for k in j + 1..N {
                for m in 0..N {
                    let mut s = 0.0;
                    for l in 0..N {
                        s += at(x, i, j, l) * at(y, l, k, m)
                            + at(x, j, k, l) * at(y, l, i, m)
                            + at(x, k, i, l) * at(y, l, j, m);
                    }
                    out.push(s);
                }
            }
        }
    }
    out
}

type Sparse = Vec<(usize, f64)>;

/// Jacobi is quadratic in the slot values: `Σ_{a<=b} v_a v_b q[a][b]`.
struct Quadratic {
    q: Vec<Vec<Sparse>>,
}

impl Quadratic {
    fn new(tensors: &[Tensor]) -> Self {
        let sparse = |v: Vec<f64>| -> Sparse { v.into_iter().enumerate().filter(|(_, x)| *x != 0.0).collect() };
        let n = tensors.len();
        let mut q = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in a..n {
                let mut v = jacobi_bilinear(&tensors[a], &tensors[b]);
                if a != b {
                    for (x, y) in v.iter_mut().zip(jacobi_bilinear(&tensors[b], &tensors[a])) {
                        *x += y;
                    }
                }
                q[a][b] = sparse(v);
            }
        }
        Self { q }
    }

    /// Monomials of the support with a nonzero coefficient, or `None` when some
    /// Jacobi component is hit by exactly one monomial (no nonzero solution).
    fn monomials(&self, support: &[usize]) -> Option<Vec<(usize, usize)>> {
        let mut hits = vec![0u8; 56 * N];
        let mut out = Vec::new();
        for (x, &a) in support.iter().enumerate() {
            for (y, &b) in support.iter().enumerate().skip(x) {
                if self.q[a][b].is_empty() {
                    continue;
                }
                for &(comp, _) in &self.q[a][b] {
                    hits[comp] = hits[comp].saturating_add(1);
                }
                out.push((x, y));
            }
        }
        if hits.contains(&1) {
            return None;
        }
        Some(out)
    }

    fn vanishes(&self, support: &[usize], monomials: &[(usize, usize)], v: &[f64], acc: &mut [f64]) -> bool {
        acc.iter_mut().for_each(|x| *x = 0.0);
        for &(x, y) in monomials {
            let w = v[x] * v[y];
            for &(comp, c) in &self.q[support[x]][support[y]] {
                acc[comp] += w * c;
            }
        }
        acc.iter().all(|x| x.abs() < 1e-9)
    }
}

/// Row-reduces `rows` (each of length `N`) in place and keeps the nonzero rows.
fn float_rref(rows: &mut Vec<[f64; N]>) {
    let mut rank = 0;
    for col in 0..N {
        let Some(p) = (rank..rows.len()).max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs())) else {
            break;
        };
        if rows[p][col].abs() < 1e-9 {
            continue;
        }
        rows.swap(rank, p);
        let pivot = rows[rank];
        for r in 0..rows.len() {
            if r != rank {
                let f = rows[r][col] / pivot[col];
                if f != 0.0 {
                    for c in 0..N {
                        rows[r][c] -= f * pivot[c];
                    }
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
}

/// Whether the ascending type, computed in floating point, equals `expected`.
/// `g_k` is the kernel of the stacked `M_{k-1} ad_j`, where the rows of
/// `M_{k-1}` span the annihilator of `g_{k-1}`.
fn float_type_is(c: &[f64], expected: &[usize]) -> bool {
    let mut m: Vec<[f64; N]> = (0..N).map(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 })).collect();
    for &want in expected {
        let mut stacked = Vec::with_capacity(m.len() * N);
        for j in 0..N {
            for row in &m {
                // (row · ad_j)_i = Σ_k row_k c[i][j][k]
                stacked.push(std::array::from_fn(|i| (0..N).map(|k| row[k] * c[(i * N + j) * N + k]).sum()));
            }
        }
        float_rref(&mut stacked);
        if N - stacked.len() != want {
            return false;
        }
        m = stacked;
    }
    true
}

/// First point (by value stage, support size, support order, then value order)
/// that realizes `case` and satisfies its parameter conditions. Candidates are
/// screened in floating point and confirmed exactly.
pub fn search_case(case: &FamilyCase, options: &SearchOptions) -> Option<FamilyParams> {
    let slots = slots_for(case);
    let tensors: Vec<Tensor> = slots.iter().map(|&s| slot_tensor(case, s)).collect();
    let quad = Quadratic::new(&tensors);
    let mut tried: Vec<(Vec<Scalar>, usize)> = Vec::new();
    for stage in &options.stages {
        let values = &stage.values;
        let floats: Vec<f64> = values.iter().map(|v| v.to_f64().expect("finite rational")).collect();
        let ones: Vec<&Scalar> = vec![&values[0]; slots.len()];
        for k in 1..=stage.max_support.min(slots.len()) {
            // Value tuples some earlier stage already covered at this support size.
            let covered = |idx: &[usize]| {
                tried.iter().any(|(vals, max)| k <= *max && idx.iter().all(|&i| vals.contains(&values[i])))
            };
            // A support must be able to meet the case's nonvanishing conditions.
            let supports: Vec<(Vec<usize>, Vec<(usize, usize)>)> = combinations(slots.len(), k)
                .into_iter()
                .filter(|sup| case.conditions_hold(&assemble(case, &slots, sup, &ones[..k])))
                .filter_map(|sup| quad.monomials(&sup).map(|m| (sup, m)))
                .collect();
            let hit = supports.par_iter().find_map_first(|(support, monomials)| {
                let mut idx = vec![0usize; k];
                let mut v = vec![0.0; k];
                let mut acc = vec![0.0; 56 * N];
                loop {
                    for (x, &i) in v.iter_mut().zip(&idx) {
                        *x = floats[i];
                    }
                    if !covered(&idx) && quad.vanishes(support, monomials, &v, &mut acc) {
                        let mut c = vec![0.0; N * N * N];
                        for (&slot, &x) in support.iter().zip(&v) {
                            for (ci, t) in c.iter_mut().zip(&tensors[slot]) {
                                *ci += x * t;
                            }
                        }
                        if float_type_is(&c, case.ascending_type) {
                            let chosen: Vec<&Scalar> = idx.iter().map(|&i| &values[i]).collect();
                            let p = assemble(case, &slots, support, &chosen);
                            if case.conditions_hold(&p) && realizes(case, &p) {
                                return Some(p);
                            }
                        }
                    }
                    let mut pos = 0;
                    loop {
                        if pos == k {
                            return None;
                        }
                        idx[pos] += 1;
                        if idx[pos] < values.len() {
                            break;
                        }
                        idx[pos] = 0;
                        pos += 1;
                    }
                }
            });
            if hit.is_some() {
                return hit;
            }
        }
        tried.push((values.clone(), stage.max_support));
    }
    None
}
