//! Helpers around [`BigRational`]: strict parsing, canonical formatting and
//! exact floors.

use alloc::format;
use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parses `"num/den"` or a bare integer. Decimal points, exponents and
/// zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = parse_integer(num)?;
    let den = parse_integer(den)?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Parses a signed decimal integer.
pub fn parse_integer(s: &str) -> Result<BigInt> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not an integer: {s:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// Canonical `"num/den"` form; the denominator is always printed.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn floor(r: &BigRational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &BigRational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

/// Fractional part `r - floor(r)`, always in `[0, 1)`.
pub fn fract(r: &BigRational) -> BigRational {
    BigRational::new(r.numer().mod_floor(r.denom()), r.denom().clone())
}

pub fn to_f64(r: &BigRational) -> f64 {
    // Ratio::to_f64 handles huge numerators/denominators without overflow.
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite double.
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: &BigRational, exp: usize) -> BigRational {
    num_traits::pow(base.clone(), exp)
}

/// Midpoint of two rationals.
pub fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / int(2)
}

pub fn abs(r: &BigRational) -> BigRational {
    r.abs()
}

/// `2^-bits` as a rational.
pub fn dyadic_unit(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

/// Largest dyadic `k / 2^bits` not exceeding `r`.
pub fn round_down(r: &BigRational, bits: u32) -> BigRational {
    let scaled = r * BigRational::from_integer(BigInt::one() << bits);
    BigRational::new(floor(&scaled), BigInt::one() << bits)
}

/// Smallest dyadic `k / 2^bits` not below `r`.
pub fn round_up(r: &BigRational, bits: u32) -> BigRational {
    let scaled = r * BigRational::from_integer(BigInt::one() << bits);
    BigRational::new(ceil(&scaled), BigInt::one() << bits)
}

/// Plain decimal rendering used in human-facing diagnostics.
pub fn describe(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format_rational(r)
    }
}
