//! Parsing of command-line values: rationals, digit lists, coefficient
//! lists and parameter lists.

use farey_core::algebra::rational::{self, parse_integer};
use farey_core::algebra::{BigRational, IntPoly};
use farey_core::cf::RealParam;
use farey_core::tree::{BranchWord, VertexLabel};
use num_traits::Signed;

use crate::CliError;

fn bad(what: &str, s: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("invalid {what} {s:?}: {why}"))
}

/// `"num/den"` or a bare integer; decimals are rejected.
pub fn rational(s: &str) -> Result<BigRational, CliError> {
    rational::parse_rational(s).map_err(|e| bad("rational", s, e))
}

/// A rational strictly above zero, as a float.
pub fn positive_tolerance(s: &str) -> Result<(BigRational, f64), CliError> {
    let r = rational(s)?;
    if !r.is_positive() {
        return Err(bad("tolerance", s, "must be positive"));
    }
    let f = rational::to_f64(&r);
    Ok((r, f))
}

/// Comma-separated list of rationals.
pub fn rational_list(s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',').map(|part| rational(part.trim())).collect()
}

/// Positive digits `a,b,c`.
pub fn digits(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|d| {
            let d = d.trim();
            match d.parse::<u64>() {
                Ok(0) => Err(bad("digit", d, "digits are positive")),
                Ok(v) if d.bytes().all(|b| b.is_ascii_digit()) => Ok(v),
                _ => Err(bad("digit", d, "expected a positive integer")),
            }
        })
        .collect()
}

pub fn label(s: &str) -> Result<VertexLabel, CliError> {
    VertexLabel::new(digits(s)?).map_err(|e| bad("label", s, e))
}

pub fn branch_word(s: &str) -> Result<BranchWord, CliError> {
    s.parse().map_err(|e| bad("branch word", s, e))
}

/// Integer coefficients in ascending degree, comma-separated.
pub fn poly(s: &str) -> Result<IntPoly, CliError> {
    let coeffs = s
        .split(',')
        .map(|c| parse_integer(c.trim()).map_err(|e| bad("coefficient", c, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let p = IntPoly::new(coeffs);
    if p.is_zero() {
        return Err(bad("polynomial", s, "is zero"));
    }
    Ok(p)
}

/// A positive parameter: a rational or a quadratic surd such as `sqrt(2)`.
pub fn real_param(s: &str) -> Result<RealParam, CliError> {
    let x = RealParam::parse(s).map_err(|e| bad("parameter", s, e))?;
    if !x.is_positive() {
        return Err(bad("parameter", s, "must be positive"));
    }
    Ok(x)
}

/// A point strictly inside `(0, 1)`.
pub fn unit_point(s: &str) -> Result<BigRational, CliError> {
    let t = rational(s)?;
    if !t.is_positive() || t >= BigRational::from_integer(1.into()) {
        return Err(bad("point", s, "must lie strictly between 0 and 1"));
    }
    Ok(t)
}

pub fn positive(s: &str, what: &str) -> Result<BigRational, CliError> {
    let r = rational(s)?;
    if !r.is_positive() {
        return Err(bad(what, s, "must be positive"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_decimals_and_zero_digits() {
        assert!(rational("0.5").is_err());
        assert!(rational("1e-3").is_err());
        assert_eq!(rational("4/8").unwrap(), rational("1/2").unwrap());
        assert!(digits("1,0,2").is_err());
        assert!(digits("1,+2").is_err());
        assert_eq!(digits("2, 3,5").unwrap(), vec![2, 3, 5]);
        assert!(poly("0,0").is_err());
        assert_eq!(poly("1,3,1").unwrap(), IntPoly::from_i64s(&[1, 3, 1]));
        assert!(unit_point("1/1").is_err());
        assert!(real_param("-2").is_err());
        assert!(real_param("sqrt(2)").is_ok());
    }
}
