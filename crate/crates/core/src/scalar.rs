//! Scalar abstraction shared by every algorithm in the crate.
//!
//! All mechanisms and checks are written against [`Scalar`], so they run on
//! exact rationals (the default everywhere) as well as on `f32`/`f64` when a
//! caller is happy to trade exactness for speed. Strict-threshold decisions
//! are only trustworthy on the exact types.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{NumAssignRef, NumRef, One, Signed};

use crate::error::{Error, Result};

/// Numeric type the engine can compute with.
pub trait Scalar:
    NumRef + NumAssignRef + Signed + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// `numer / denom`. `denom` must be non-zero.
    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_count(n: usize) -> Self {
        Self::from_ratio(n as i64, 1)
    }
}

impl Scalar for f64 {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }
}

impl Scalar for f32 {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f32 / denom as f32
    }
}

impl Scalar for BigRational {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }
}

impl Scalar for Ratio<i64> {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(numer, denom)
    }
}

pub(crate) fn max_of<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    values
        .into_iter()
        .fold(None::<&T>, |acc, v| match acc {
            Some(a) if a >= v => Some(a),
            _ => Some(v),
        })
        .cloned()
        .unwrap_or_else(T::zero)
}

pub(crate) fn min_of<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    values
        .into_iter()
        .fold(None::<&T>, |acc, v| match acc {
            Some(a) if a <= v => Some(a),
            _ => Some(v),
        })
        .cloned()
        .unwrap_or_else(T::zero)
}

pub(crate) fn sum_of<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    let mut acc = T::zero();
    for v in values {
        acc += v;
    }
    acc
}

/// Parses `"p/q"`, an integer, or a decimal literal such as `"-0.75"` into an
/// exact rational. Decimals are converted without rounding.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let numer = parse_integer(p).ok_or_else(bad)?;
        let denom = parse_integer(q).ok_or_else(bad)?;
        if !denom.is_positive() {
            return Err(Error::Parse(format!(
                "denominator must be positive: {text:?}"
            )));
        }
        return Ok(BigRational::new(numer, denom));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let t = s.trim();
    let body = t.strip_prefix(['-', '+']).unwrap_or(t);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(t.strip_prefix('+').unwrap_or(t)).ok()
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, always reduced.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// `true` when `0 < x < 1`.
pub(crate) fn in_open_unit<T: Scalar>(x: &T) -> bool {
    *x > T::zero() && *x < T::one()
}

/// `true` when `0 < x <= 1`.
pub(crate) fn in_half_open_unit<T: Scalar>(x: &T) -> bool {
    *x > T::zero() && *x <= T::one()
}
