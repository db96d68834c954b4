//! Exact rational arithmetic.
//!
//! [`ExactRational`] is an arbitrary-precision rational kept in lowest terms
//! with a positive denominator. Arithmetic operators never round; division by
//! zero through the operators panics, so fallible call sites go through
//! [`checked_div`].

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ExactRational = num_rational::BigRational;

/// `num/den` in lowest terms.
pub fn ratio(num: i64, den: i64) -> Result<ExactRational> {
    if den == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(ExactRational::new(num.into(), den.into()))
}

pub fn checked_div(a: &ExactRational, b: &ExactRational) -> Result<ExactRational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Exact value of a finite double.
pub fn from_f64_exact(v: f64) -> Result<ExactRational> {
    ExactRational::from_f64(v).ok_or_else(|| Error::Parse(format!("non-finite value {v}")))
}

/// Parses `p/q`, an integer, or a decimal literal such as `-0.125` or
/// `2.5e-3`. Decimals are read exactly in base ten.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(ExactRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(&all).map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        ExactRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        ExactRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// JSON representation: numerator and denominator as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&ExactRational> for RationalRepr {
    fn from(q: &ExactRational) -> Self {
        RationalRepr {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalRepr> for ExactRational {
    type Error = Error;

    fn try_from(r: &RationalRepr) -> Result<Self> {
        let num = BigInt::from_str(&r.num).map_err(|_| Error::Parse(format!("bad numerator {:?}", r.num)))?;
        let den = BigInt::from_str(&r.den).map_err(|_| Error::Parse(format!("bad denominator {:?}", r.den)))?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactRational::new(num, den))
    }
}
