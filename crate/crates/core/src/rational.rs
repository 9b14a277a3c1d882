//! Exact rational helpers shared by every module.
//!
//! All measure, cost and plan values are [`Rational`]s. Floating point only
//! appears in the derivative certifier and in the human-readable decimal
//! companions written next to exact values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.125"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidNumber(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !digits.chars().all(|c| c.is_ascii_digit())
            || (digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let mantissa: BigInt = format!("{digits}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    let value: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(value))
}

/// Formats as `p/q`, or `p` for integers.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Rounds to `digits` significant decimal digits (ties away from zero) and
/// renders without exponent, trimming trailing zeros.
pub fn decimal_string(value: &Rational, digits: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let abs = value.abs();
    let ten = BigInt::from(10);
    // Find exponent e with 10^e <= abs < 10^(e+1).
    let mut exponent: i64 = 0;
    let mut probe = abs.clone();
    while probe >= Rational::from_integer(ten.clone()) {
        probe /= Rational::from_integer(ten.clone());
        exponent += 1;
    }
    while probe < Rational::one() {
        probe *= Rational::from_integer(ten.clone());
        exponent -= 1;
    }
    let shift = digits as i64 - 1 - exponent;
    let scaled = if shift >= 0 {
        abs * Rational::from_integer(num_traits::pow(ten.clone(), shift as usize))
    } else {
        abs / Rational::from_integer(num_traits::pow(ten.clone(), (-shift) as usize))
    };
    let twice = scaled.clone() * int(2);
    let floor = scaled.floor().to_integer();
    let rounded = if twice.numer() - &floor * BigInt::from(2) * twice.denom() >= *twice.denom() {
        floor + 1
    } else {
        floor
    };
    let mut mantissa = rounded.to_string();
    let mut shift = shift;
    // Rounding may carry into an extra digit (9.99.. -> 10.0..).
    if mantissa.len() > digits {
        mantissa.pop();
        shift -= 1;
    }
    let body = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{mantissa}{zeros}")
    } else if (shift as usize) < mantissa.len() {
        let split = mantissa.len() - shift as usize;
        let (a, b) = mantissa.split_at(split);
        format!("{a}.{b}")
    } else {
        let zeros = "0".repeat(shift as usize - mantissa.len());
        format!("0.{zeros}{mantissa}")
    };
    let body = if body.contains('.') {
        body.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        body
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Twelve-significant-digit companion used in reports.
pub fn to_decimal(value: &Rational) -> f64 {
    decimal_string(value, 12).parse().unwrap_or(f64::NAN)
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of the denominators of `values` (1 when empty).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// `value * scale`, which must be an integer.
pub(crate) fn scale_exact(value: &Rational, scale: &BigInt) -> BigInt {
    let scaled = value * Rational::from_integer(scale.clone());
    debug_assert!(scaled.is_integer());
    scaled.to_integer()
}
