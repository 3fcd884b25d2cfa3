//! Rational and Gaussian-rational scalars.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number in canonical form (reduced, positive denominator).
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `p/q` reduced to canonical form. Panics when `q == 0`.
pub fn rat(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `-p`, `p/q` into a canonical rational.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) || den.starts_with(['-', '+']) {
        return None;
    }
    let n: BigInt = num.trim_start_matches('+').parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Scalar::new(n, d))
}

/// Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl CScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        Self { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        Self { re, im: Scalar::zero() }
    }

    pub fn imag(im: Scalar) -> Self {
        Self { re: Scalar::zero(), im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(Scalar::one())
    }

    pub fn i() -> Self {
        Self::imag(Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Scalar {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self { re: &self.re * s, im: &self.im * s }
    }
}

impl From<Scalar> for CScalar {
    fn from(re: Scalar) -> Self {
        Self::real(re)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a CScalar> for &'a CScalar {
            type Output = CScalar;
            fn $method(self, rhs: &'a CScalar) -> CScalar {
                let f: fn(&CScalar, &CScalar) -> CScalar = $body;
                f(self, rhs)
            }
        }
        impl $trait for CScalar {
            type Output = CScalar;
            fn $method(self, rhs: CScalar) -> CScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a CScalar> for CScalar {
            type Output = CScalar;
            fn $method(self, rhs: &'a CScalar) -> CScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| CScalar { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(Sub, sub, |a, b| CScalar { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(Mul, mul, |a, b| CScalar {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});
forward_binop!(Div, div, |a, b| a * &b.inv().expect("division by zero Gaussian rational"));

impl Neg for CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&CScalar> for CScalar {
    fn add_assign(&mut self, rhs: &CScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&CScalar> for CScalar {
    fn sub_assign(&mut self, rhs: &CScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

/// Formats as `3`, `-1/2`, `i`, `-2i`, `1/2i`, `1+2i`, `-1/2-3/2i`.
impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            if self.im.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.im.is_one() {
            f.write_str("i")
        } else if (-&self.im).is_one() {
            f.write_str("-i")
        } else {
            write!(f, "{}i", self.im)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid Gaussian rational {0:?}")]
pub struct ParseCScalarError(pub String);

impl FromStr for CScalar {
    type Err = ParseCScalarError;

    /// Accepts the forms produced by `Display`, plus optional surrounding
    /// parentheses and an explicit `*i` suffix.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseCScalarError(s.to_string());
        let mut t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.starts_with('(') && t.ends_with(')') {
            t = t[1..t.len() - 1].to_string();
        }
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            return parse_scalar(&t).map(CScalar::real).ok_or_else(err);
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() { Scalar::zero() } else { parse_scalar(re_part).ok_or_else(err)? };
        let im = match im_part {
            "" | "+" => Scalar::one(),
            "-" => -Scalar::one(),
            p => parse_scalar(p).ok_or_else(err)?,
        };
        Ok(CScalar { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: Scalar, im: Scalar) -> CScalar {
        CScalar::new(re, im)
    }

    #[test]
    fn canonical_rationals() {
        assert_eq!(rat(4, -6), rat(-2, 3));
        assert_eq!(*rat(4, -6).denom(), BigInt::from(3));
        assert_eq!(parse_scalar("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("1/-2"), None);
        assert_eq!(parse_scalar("x"), None);
    }

    #[test]
    fn gaussian_product() {
        // (1+2i)(3-i) = 3 - i + 6i - 2i^2 = 5 + 5i
        let p = c(int(1), int(2)) * c(int(3), int(-1));
        assert_eq!(p, c(int(5), int(5)));
        assert_eq!(CScalar::i() * CScalar::i(), -CScalar::one());
        let q = c(int(5), int(5)) / c(int(3), int(-1));
        assert_eq!(q, c(int(1), int(2)));
    }

    #[test]
    fn display_and_parse() {
        let cases = [
            (c(int(3), int(0)), "3"),
            (c(rat(-1, 2), int(0)), "-1/2"),
            (c(int(0), int(1)), "i"),
            (c(int(0), int(-2)), "-2i"),
            (c(int(1), int(2)), "1+2i"),
            (c(rat(-1, 2), rat(-3, 2)), "-1/2-3/2i"),
            (c(int(0), int(0)), "0"),
        ];
        for (value, text) in cases {
            assert_eq!(value.to_string(), text);
            assert_eq!(text.parse::<CScalar>().unwrap(), value);
        }
        assert_eq!("(1 + 2*i)".parse::<CScalar>().unwrap(), c(int(1), int(2)));
        assert_eq!("-i".parse::<CScalar>().unwrap(), c(int(0), int(-1)));
        assert!("1+".parse::<CScalar>().is_err());
        assert!("".parse::<CScalar>().is_err());
    }
}
