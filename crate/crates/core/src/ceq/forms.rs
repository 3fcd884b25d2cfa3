use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{rat, CScalar};

/// Which basis 2-form a coefficient sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bidegree {
    /// `ω^{bc}`, `b < c`.
    Hol,
    /// `ω^{b c̄}`.
    Mixed,
    /// `ω^{b̄ c̄}`, `b < c`.
    Anti,
}

/// A complex 2-form on the coframe `ω, ω̄`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplexTwoForm {
    pub hol: BTreeMap<(usize, usize), CScalar>,
    pub mixed: BTreeMap<(usize, usize), CScalar>,
    pub anti: BTreeMap<(usize, usize), CScalar>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BidegreeParts {
    pub p20: ComplexTwoForm,
    pub p11: ComplexTwoForm,
    pub p02: ComplexTwoForm,
}

impl BidegreeParts {
    pub fn recombine(&self) -> ComplexTwoForm {
        ComplexTwoForm { hol: self.p20.hol.clone(), mixed: self.p11.mixed.clone(), anti: self.p02.anti.clone() }
    }
}

fn accumulate(map: &mut BTreeMap<(usize, usize), CScalar>, key: (usize, usize), coeff: CScalar) {
    let entry = map.entry(key).or_insert_with(CScalar::zero);
    *entry += &coeff;
    if entry.is_zero() {
        map.remove(&key);
    }
}

impl ComplexTwoForm {
    pub fn is_zero(&self) -> bool {
        self.hol.is_empty() && self.mixed.is_empty() && self.anti.is_empty()
    }

    pub fn block(&self, block: Bidegree) -> &BTreeMap<(usize, usize), CScalar> {
        match block {
            Bidegree::Hol => &self.hol,
            Bidegree::Mixed => &self.mixed,
            Bidegree::Anti => &self.anti,
        }
    }

    /// Terms in printing order: `(2,0)`, then `(1,1)`, then `(0,2)`.
    pub fn terms(&self) -> impl Iterator<Item = (Bidegree, usize, usize, &CScalar)> {
        [Bidegree::Hol, Bidegree::Mixed, Bidegree::Anti]
            .into_iter()
            .flat_map(move |b| self.block(b).iter().map(move |(&(x, y), c)| (b, x, y, c)))
    }

    pub fn coefficient(&self, block: Bidegree, b: usize, c: usize) -> CScalar {
        self.block(block).get(&(b, c)).cloned().unwrap_or_else(CScalar::zero)
    }

    /// Adds `coeff` on the given basis form; `ω^{cb} = -ω^{bc}` is folded in.
    pub fn add(&mut self, block: Bidegree, b: usize, c: usize, coeff: &CScalar) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        match block {
            Bidegree::Mixed => accumulate(&mut self.mixed, (b, c), coeff.clone()),
            Bidegree::Hol | Bidegree::Anti => {
                if b == c {
                    return Err(Error::MalformedEquations(format!("repeated index {} in a wedge square", b + 1)));
                }
                let map = if block == Bidegree::Hol { &mut self.hol } else { &mut self.anti };
                if b < c {
                    accumulate(map, (b, c), coeff.clone());
                } else {
                    accumulate(map, (c, b), -coeff.clone());
                }
            }
        }
        Ok(())
    }

    /// Adds `coeff · u ∧ v` for 1-forms given in `(ω^1..ω^m, ω̄^1..ω̄^m)` coordinates.
    pub(crate) fn add_wedge(&mut self, m: usize, u: &[CScalar], v: &[CScalar], coeff: &CScalar) {
        for p in 0..2 * m {
            if u[p].is_zero() && v[p].is_zero() {
                continue;
            }
            for q in p + 1..2 * m {
                let w = &u[p] * &v[q] - &u[q] * &v[p];
                if w.is_zero() {
                    continue;
                }
                let w = w * coeff;
                match (p < m, q < m) {
                    (true, true) => accumulate(&mut self.hol, (p, q), w),
                    (true, false) => accumulate(&mut self.mixed, (p, q - m), w),
                    (false, false) => accumulate(&mut self.anti, (p - m, q - m), w),
                    (false, true) => unreachable!("p < q"),
                }
            }
        }
    }

    pub fn split(&self) -> BidegreeParts {
        BidegreeParts {
            p20: ComplexTwoForm { hol: self.hol.clone(), ..Default::default() },
            p11: ComplexTwoForm { mixed: self.mixed.clone(), ..Default::default() },
            p02: ComplexTwoForm { anti: self.anti.clone(), ..Default::default() },
        }
    }

    pub(crate) fn check_canonical(&self, m: usize) -> Result<()> {
        for (block, b, c, coeff) in self.terms() {
            if b >= m || c >= m {
                return Err(Error::MalformedEquations(format!("index {} exceeds {m}", b.max(c) + 1)));
            }
            if block != Bidegree::Mixed && b >= c {
                return Err(Error::MalformedEquations(format!("unordered pair ({}, {})", b + 1, c + 1)));
            }
            if coeff.is_zero() {
                return Err(Error::MalformedEquations("stored zero coefficient".into()));
            }
        }
        Ok(())
    }

    /// Coefficients on `e^{pq}` (`p < q`), given each `θ` coframe element in
    /// real coordinates.
    pub(crate) fn to_real_basis(&self, theta: &[Vec<CScalar>]) -> BTreeMap<(usize, usize), CScalar> {
        let m = theta.len() / 2;
        let mut out = BTreeMap::new();
        for (block, b, c, coeff) in self.terms() {
            let (p, q) = match block {
                Bidegree::Hol => (b, c),
                Bidegree::Mixed => (b, m + c),
                Bidegree::Anti => (m + b, m + c),
            };
            let (u, v) = (&theta[p], &theta[q]);
            for r in 0..u.len() {
                for s in r + 1..u.len() {
                    let w = &u[r] * &v[s] - &u[s] * &v[r];
                    if !w.is_zero() {
                        accumulate(&mut out, (r, s), w * coeff);
                    }
                }
            }
        }
        out
    }
}

/// For each real index `p`, `e^p` in `(ω, ω̄)` coordinates:
/// `e^{x} = (ω + ω̄)/2`, `e^{y} = i(ω - ω̄)/2`.
pub(crate) fn coframe_in_omega(n: usize, pairing: &[(usize, usize)]) -> Vec<Vec<CScalar>> {
    let m = pairing.len();
    let half = rat(1, 2);
    let mut out = vec![vec![CScalar::zero(); 2 * m]; n];
    for (a, &(x, y)) in pairing.iter().enumerate() {
        out[x][a] = CScalar::real(half.clone());
        out[x][m + a] = CScalar::real(half.clone());
        out[y][a] = CScalar::imag(half.clone());
        out[y][m + a] = CScalar::imag(-half.clone());
    }
    out
}

/// `ω^a = e^{x_a} - i e^{y_a}` and `ω̄^a = e^{x_a} + i e^{y_a}` in real coordinates,
/// indexed `ω^1..ω^m, ω̄^1..ω̄^m`.
pub(crate) fn omega_in_coframe(n: usize, pairing: &[(usize, usize)]) -> Vec<Vec<CScalar>> {
    let m = pairing.len();
    let mut out = vec![vec![CScalar::zero(); n]; 2 * m];
    for (a, &(x, y)) in pairing.iter().enumerate() {
        out[a][x] = CScalar::one();
        out[a][y] = -CScalar::i();
        out[m + a][x] = CScalar::one();
        out[m + a][y] = CScalar::i();
    }
    out
}
