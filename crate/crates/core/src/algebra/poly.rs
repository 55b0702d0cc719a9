use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Univariate polynomial with integer coefficients, stored dense in
/// ascending degree. The zero polynomial has no coefficients; otherwise
/// the last coefficient is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let Some(deg) = self.degree() else {
            return BigRational::zero();
        };
        let scaled = self.eval_homogeneous(t.numer(), t.denom());
        BigRational::new(scaled, num_traits::pow(t.denom().clone(), deg))
    }

    pub fn eval_int(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// `d^deg * f(n/d)`, an integer with the sign of `f(n/d)` when `d > 0`.
    pub fn eval_homogeneous(&self, n: &BigInt, d: &BigInt) -> BigInt {
        let mut iter = self.coeffs.iter().rev();
        let Some(lead) = iter.next() else {
            return BigInt::zero();
        };
        let mut acc = lead.clone();
        let mut dpow = BigInt::one();
        for c in iter {
            dpow *= d;
            acc = acc * n + c * &dpow;
        }
        acc
    }

    /// Sign of `f(t)` as an [`Ordering`] against zero.
    pub fn sign_at(&self, t: &BigRational) -> Ordering {
        self.eval_homogeneous(t.numer(), t.denom()).cmp(&BigInt::zero())
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| if g.is_one() { g } else { g.gcd(c) })
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        let Some(lead) = self.leading() else {
            return Self::zero();
        };
        let mut c = self.content();
        if lead.is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Divides by the content, keeping the sign of every coefficient.
    pub fn primitive_part_signed(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.div_scalar_exact(&self.content())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|a| a / c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Multiplicity of the root at zero (the number of vanishing low
    /// coefficients). Zero for the zero polynomial.
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `x^k`. Returns `None` unless `x^k` divides `self`.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.x_valuation() < k {
            return None;
        }
        Some(Self::new(self.coeffs[k..].to_vec()))
    }

    /// Pseudo-division: returns `(quot, rem)` with
    /// `lc(divisor)^(deg self - deg divisor + 1) * self = quot * divisor + rem`.
    pub fn pseudo_div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let Some(ds) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if ds < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); ds - dd + 1];
        for k in (0..=ds - dd).rev() {
            // Invariant: rem has degree <= k + dd.
            let top = rem[k + dd].clone();
            for q in quot.iter_mut() {
                *q *= &lc;
            }
            for r in rem.iter_mut() {
                *r *= &lc;
            }
            quot[k] += &top;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &top * c;
            }
            debug_assert!(rem[k + dd].is_zero());
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn pseudo_rem(&self, divisor: &Self) -> Result<Self> {
        self.pseudo_div_rem(divisor).map(|(_, r)| r)
    }

    /// Division in `Z[x]`; `None` if the quotient is not an integer
    /// polynomial or the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let Some(ds) = self.degree() else {
            return Some(Self::zero());
        };
        if ds < dd {
            return None;
        }
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); ds - dd + 1];
        for k in (0..=ds - dd).rev() {
            let (q, r) = rem[k + dd].div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }

    /// Primitive gcd with positive leading coefficient. `gcd(f, 0)` is the
    /// primitive part of `f`; `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r.primitive_part();
        }
        if a.degree() == Some(0) {
            return Self::one();
        }
        a
    }

    /// `f / gcd(f, f')`: same distinct roots, all simple.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .exact_div(&g)
            .expect("primitive gcd divides the primitive part")
    }

    pub fn is_square_free(&self) -> bool {
        self.degree().unwrap_or(0) == 0 || self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `1 + max |c_i| / |c_d|` over the non-leading coefficients: every
    /// complex root lies strictly inside this radius.
    pub fn cauchy_bound(&self) -> Result<BigRational> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = self.coeffs[d].abs();
        let max = self.coeffs[..d]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_default();
        Ok(BigRational::one() + BigRational::new(max, lead))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    f(
                        self.coeffs.get(i).unwrap_or(&zero),
                        other.coeffs.get(i).unwrap_or(&zero),
                    )
                })
                .collect(),
        )
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn evaluates_exactly() {
        assert_eq!(p(&[1, 3, 1]).eval(&int(2)), int(11));
        assert_eq!(p(&[1, 1]).eval(&int(-1)), int(0));
        assert_eq!(p(&[40, 44, 13, 1]).eval(&int(-1)), int(8));
        assert_eq!(p(&[1, 3, 1]).eval(&ratio(1, 2)), ratio(11, 4));
        assert_eq!(IntPoly::zero().eval(&int(5)), int(0));
    }

    #[test]
    fn sign_matches_value() {
        let f = p(&[1, 3, 1]);
        for t in [ratio(-1, 2), ratio(-3, 1), ratio(7, 5), ratio(-13, 5)] {
            assert_eq!(f.sign_at(&t), f.eval(&t).cmp(&int(0)));
        }
    }

    #[test]
    fn derivatives() {
        assert_eq!(p(&[1, 3, 1]).derivative(), p(&[3, 2]));
        assert_eq!(p(&[5]).derivative(), IntPoly::zero());
        assert_eq!(p(&[20, 34, 12, 1]).derivative(), p(&[34, 24, 3]));
    }

    #[test]
    fn trims_and_reports_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]), IntPoly::zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn gcd_cases() {
        // 2x and x^2+2x share the factor x.
        assert_eq!(p(&[0, 2]).gcd(&p(&[0, 2, 1])), IntPoly::x());
        assert_eq!(p(&[0, 1, 1]).gcd(&p(&[1, 3, 1])), IntPoly::one());
        assert_eq!(p(&[4, -6, 2]).gcd(&IntPoly::zero()), p(&[2, -3, 1]));
        assert_eq!(p(&[-2, 0, -2]).gcd(&IntPoly::zero()), p(&[1, 0, 1]));
        // (x+1)^2 (x-2) and (x+1)(x+3)
        let a = p(&[1, 1]) * p(&[1, 1]) * p(&[-2, 1]);
        let b = p(&[1, 1]) * p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn pseudo_division_identity() {
        let a = p(&[3, 0, 5, 7, 2]);
        let b = p(&[1, 2, 3]);
        let (q, r) = a.pseudo_div_rem(&b).unwrap();
        let lc = BigInt::from(3);
        let lhs = a.scale(&num_traits::pow(lc, 3));
        assert_eq!(lhs, &q * &b + r.clone());
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 1]) * p(&[-2, 3]);
        assert_eq!(a.exact_div(&p(&[1, 1])), Some(p(&[-2, 3])));
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])), None);
        assert_eq!(p(&[1, 2]).exact_div(&p(&[0, 2])), None);
    }

    #[test]
    fn square_free_part_drops_multiplicity() {
        let f = p(&[1, 1]) * p(&[1, 1]) * p(&[0, 1]);
        assert!(!f.is_square_free());
        assert_eq!(f.square_free_part(), p(&[0, 1, 1]));
        assert!(p(&[1, 3, 1]).is_square_free());
    }

    #[test]
    fn cauchy_bound_value() {
        assert_eq!(p(&[1, 3, 1]).cauchy_bound().unwrap(), int(4));
        assert_eq!(p(&[1, 2]).cauchy_bound().unwrap(), ratio(3, 2));
        assert!(IntPoly::zero().cauchy_bound().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 3, 1]).to_string(), "x^2 + 3x + 1");
        assert_eq!(p(&[0, -1, 0, 2]).to_string(), "2x^3 - x");
        assert_eq!(p(&[-5]).to_string(), "-5");
    }

    #[test]
    fn shifts() {
        let f = p(&[0, 0, 3, 1]);
        assert_eq!(f.x_valuation(), 2);
        assert_eq!(f.shift_down(2), Some(p(&[3, 1])));
        assert_eq!(f.shift_down(3), None);
        assert_eq!(p(&[3, 1]).shift_up(2), f);
    }
}
