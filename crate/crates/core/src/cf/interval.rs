//! Rational-endpoint intervals and real parameters of the form `a + b√n`.
//!
//! Endpoints are rounded outward to dyadic rationals with a chosen number of
//! fractional bits, so every operation returns an enclosure of the exact
//! result.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::rational::{self, parse_rational};
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval);
        }
        Ok(RatInterval { lo, hi })
    }

    pub fn point(r: BigRational) -> Self {
        RatInterval {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RatInterval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn add_scalar(&self, r: &BigRational) -> Self {
        RatInterval {
            lo: &self.lo + r,
            hi: &self.hi + r,
        }
    }

    /// `r - self`
    pub fn rsub_scalar(&self, r: &BigRational) -> Self {
        RatInterval {
            lo: r - &self.hi,
            hi: r - &self.lo,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Widens both endpoints to multiples of `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> Self {
        RatInterval {
            lo: rational::round_down(&self.lo, bits),
            hi: rational::round_up(&self.hi, bits),
        }
    }

    /// `Some(n)` when every point has integer part `n`.
    pub fn floor_if_unambiguous(&self) -> Option<BigInt> {
        let lo = rational::floor(&self.lo);
        (lo == rational::floor(&self.hi)).then_some(lo)
    }

    pub fn midpoint(&self) -> BigRational {
        rational::midpoint(&self.lo, &self.hi)
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            rational::format_rational(&self.lo),
            rational::format_rational(&self.hi)
        )
    }
}

/// A positive real parameter: a rational, or `a + b√n` with `n` not a
/// perfect square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealParam {
    Rational(BigRational),
    Surd {
        a: BigRational,
        b: BigRational,
        n: BigUint,
    },
}

impl RealParam {
    /// Parses `"p/q"`, `"sqrt(n)"`, `"a + b*sqrt(n)"` and sums of such
    /// terms. Decimal literals are rejected.
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty parameter".to_string()));
        }
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        let mut radicand: Option<BigUint> = None;
        for (sign, term) in split_terms(&compact)? {
            match term.find("sqrt(") {
                None => a += sign * parse_rational(term)?,
                Some(pos) => {
                    let coeff = match &term[..pos] {
                        "" => BigRational::one(),
                        c => parse_rational(c.strip_suffix('*').unwrap_or(c))?,
                    };
                    let inner = term[pos + 5..]
                        .strip_suffix(')')
                        .ok_or_else(|| Error::Parse(format!("unclosed sqrt in {s:?}")))?;
                    let n: BigUint = inner
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad radicand {inner:?}")))?;
                    if radicand.as_ref().is_some_and(|r| *r != n) {
                        return Err(Error::Parse("only one radicand is supported".to_string()));
                    }
                    radicand = Some(n);
                    b += sign * coeff;
                }
            }
        }
        Ok(Self::from_parts(a, b, radicand.unwrap_or_else(BigUint::one)))
    }

    /// Normalizes `a + b√n`, folding perfect squares into the rational part.
    pub fn from_parts(a: BigRational, b: BigRational, n: BigUint) -> Self {
        if b.is_zero() {
            return RealParam::Rational(a);
        }
        let root = n.sqrt();
        if &root * &root == n {
            let r = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, root));
            return RealParam::Rational(a + b * r);
        }
        RealParam::Surd { a, b, n }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            RealParam::Rational(r) => Some(r),
            RealParam::Surd { .. } => None,
        }
    }

    /// Enclosure with endpoints on the grid `2^-bits`.
    pub fn enclose(&self, bits: u32) -> RatInterval {
        match self {
            RealParam::Rational(r) => RatInterval::point(r.clone()).round_outward(bits),
            RealParam::Surd { a, b, n } => {
                let scaled = n << (2 * bits as usize);
                let s = BigInt::from_biguint(Sign::Plus, scaled.sqrt());
                let den = BigInt::one() << bits;
                let root = RatInterval {
                    lo: BigRational::new(s.clone(), den.clone()),
                    hi: BigRational::new(s + 1, den),
                };
                root.mul(&RatInterval::point(b.clone()))
                    .add_scalar(a)
                    .round_outward(bits)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealParam::Rational(r) => rational::to_f64(r),
            RealParam::Surd { a, b, n } => {
                let nf: f64 = rational::to_f64(&BigRational::from_integer(BigInt::from_biguint(
                    Sign::Plus,
                    n.clone(),
                )));
                rational::to_f64(a) + rational::to_f64(b) * libm::sqrt(nf)
            }
        }
    }

    /// Positivity, decided exactly.
    pub fn is_positive(&self) -> bool {
        match self {
            RealParam::Rational(r) => r.is_positive(),
            RealParam::Surd { a, b, n } => {
                // sign(a + b√n): compare a² with b²n when signs differ.
                let nn = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, n.clone()));
                match (a.is_negative(), b.is_negative()) {
                    (false, false) => true,
                    (true, true) => false,
                    (false, true) => a * a > b * b * nn,
                    (true, false) => b * b * nn > a * a,
                }
            }
        }
    }
}

fn split_terms(s: &str) -> Result<alloc::vec::Vec<(BigRational, &str)>> {
    let mut out = alloc::vec::Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut sign = BigRational::one();
    let mut depth = 0usize;
    let mut i = 0;
    if let Some(&c) = bytes.first() {
        if c == b'-' || c == b'+' {
            if c == b'-' {
                sign = -sign;
            }
            start = 1;
            i = 1;
        }
    }
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth = depth.saturating_sub(1),
            // A sign directly after '/' or '*' belongs to the number.
            c @ (b'+' | b'-') if depth == 0 && i > start && !matches!(bytes[i - 1], b'/' | b'*') => {
                out.push((sign.clone(), &s[start..i]));
                sign = if c == b'-' { -BigRational::one() } else { BigRational::one() };
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    if start >= s.len() {
        return Err(Error::Parse(format!("dangling operator in {s:?}")));
    }
    out.push((sign, &s[start..]));
    Ok(out)
}

impl fmt::Display for RealParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealParam::Rational(r) => f.write_str(&rational::format_rational(r)),
            RealParam::Surd { a, b, n } => {
                if !a.is_zero() {
                    f.write_str(&rational::format_rational(a))?;
                    f.write_str(if b.is_negative() { "-" } else { "+" })?;
                } else if b.is_negative() {
                    f.write_str("-")?;
                }
                let m = b.abs();
                if !m.is_one() {
                    write!(f, "{}*", rational::format_rational(&m))?;
                }
                write!(f, "sqrt({n})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    #[test]
    fn display_parses_back() {
        for s in ["sqrt(2)", "1/1+1/2*sqrt(14)", "3/1-sqrt(5)", "-2/1*sqrt(3)", "5/2"] {
            let x = RealParam::parse(s).unwrap();
            assert_eq!(x.to_string(), s);
            assert_eq!(RealParam::parse(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn parses_rational_and_surds() {
        assert_eq!(RealParam::parse("3/2").unwrap(), RealParam::Rational(ratio(3, 2)));
        assert_eq!(
            RealParam::parse("sqrt(2)").unwrap(),
            RealParam::Surd {
                a: int(0),
                b: int(1),
                n: BigUint::from(2u8)
            }
        );
        assert_eq!(
            RealParam::parse("1 + 1/2*sqrt(14)").unwrap(),
            RealParam::Surd {
                a: int(1),
                b: ratio(1, 2),
                n: BigUint::from(14u8)
            }
        );
        assert_eq!(RealParam::parse("1+2*sqrt(9)").unwrap(), RealParam::Rational(int(7)));
        assert_eq!(RealParam::parse("-1/2+sqrt(2)").unwrap().as_rational(), None);
    }

    #[test]
    fn rejects_malformed_parameters() {
        for bad in ["", "0.5", "sqrt(2", "sqrt(2)+sqrt(3)", "1+", "sqrt(x)"] {
            assert!(RealParam::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn enclosures_contain_the_value() {
        let x = RealParam::parse("sqrt(2)").unwrap();
        let iv = x.enclose(64);
        let sq_lo = iv.lo() * iv.lo();
        let sq_hi = iv.hi() * iv.hi();
        assert!(sq_lo <= int(2) && int(2) <= sq_hi);
        assert!(iv.width() <= rational::dyadic_unit(62));
        let y = RealParam::parse("1-1/2*sqrt(14)").unwrap();
        assert!(!y.is_positive());
        assert!(RealParam::parse("-1+sqrt(2)").unwrap().is_positive());
    }

    #[test]
    fn interval_arithmetic() {
        let a = RatInterval::new(int(1), int(2)).unwrap();
        let b = RatInterval::new(int(-3), int(1)).unwrap();
        assert_eq!(a.mul(&b), RatInterval::new(int(-6), int(2)).unwrap());
        assert_eq!(a.sub(&b), RatInterval::new(int(0), int(5)).unwrap());
        assert!(b.recip().is_err());
        assert_eq!(a.recip().unwrap(), RatInterval::new(ratio(1, 2), int(1)).unwrap());
        assert_eq!(a.floor_if_unambiguous(), None);
        let c = RatInterval::new(ratio(5, 4), ratio(7, 4)).unwrap();
        assert_eq!(c.floor_if_unambiguous(), Some(BigInt::from(1)));
        let third = RatInterval::point(ratio(1, 3)).round_outward(8);
        assert!(third.contains(&ratio(1, 3)) && !third.is_point());
        assert!(RatInterval::point(ratio(1, 4)).round_outward(8).is_point());
    }
}
