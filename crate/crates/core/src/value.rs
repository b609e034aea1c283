//! Exact function values: parsing decimals and fractions into rationals.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Exact real value used for vertex values and plane coordinates.
pub type Value = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as an exact rational")]
pub struct ParseValueError(pub String);

/// Accepts integers (`-3`), fractions (`1/3`, `-2/6`) and finite decimals
/// (`0.25`, `-.5`, `1e-3`, `2.5E2`). Decimals are converted exactly, so `0.1`
/// becomes `1/10`.
pub fn parse_value(s: &str) -> Result<Value, ParseValueError> {
    let err = || ParseValueError(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], i64::from_str(&t[i + 1..]).map_err(|_| err())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let all = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(&all).map_err(|_| err())?;
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 10_000 {
        return Err(err());
    }
    let ten = BigInt::from(10);
    let pow = num::pow(ten, scale.unsigned_abs() as usize);
    let mut v = if scale >= 0 {
        BigRational::from_integer(numer * pow)
    } else {
        BigRational::new(numer, pow)
    };
    if negative {
        v = -v;
    }
    Ok(v)
}

/// `n` for integers, `n/d` in lowest terms otherwise.
pub fn format_value(v: &Value) -> String {
    v.to_string()
}

pub fn int(v: i64) -> Value {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Value {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Lossy conversion, only for drawing.
pub fn to_f64(v: &Value) -> f64 {
    use num::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

pub fn abs_diff(a: &Value, b: &Value) -> Value {
    (a - b).abs()
}

pub fn two() -> Value {
    BigRational::one() + BigRational::one()
}
