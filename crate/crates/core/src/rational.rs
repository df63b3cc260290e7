//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p`, `p/q`. Accepts the typographic minus sign `−` as well.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let err = || Error::ParseRational(s.trim().to_string());
    if cleaned.is_empty() {
        return Err(err());
    }
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (cleaned.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// `p/q`, with `/q` dropped for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn format_decimal(r: &Rational) -> String {
    match r.to_f64() {
        Some(f) => format!("{f}"),
        None => format_rational(r),
    }
}

pub(crate) fn product<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::one(), |acc, v| acc * v)
}

pub(crate) fn sign_symbol(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
