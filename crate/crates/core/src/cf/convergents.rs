use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::expansion::{expand_exact, DigitExpansion};
use super::interval::{RatInterval, RealParam};
use crate::algebra::rational::{int, pow};
use crate::error::{Error, Result};
use crate::tree::TreeVariant;

/// Value of a digit string: exact for rational parameters, an enclosure
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelValue {
    Exact(BigRational),
    Enclosure(RatInterval),
}

fn check_digits(digits: &[u64]) -> Result<()> {
    if digits.is_empty() {
        return Err(Error::EmptyLabel);
    }
    if digits.contains(&0) {
        return Err(Error::ZeroDigit);
    }
    Ok(())
}

/// Nested evaluation from the innermost digit outwards, starting from 0.
pub fn evaluate_label_exact(digits: &[u64], x: &BigRational, variant: TreeVariant) -> Result<BigRational> {
    check_digits(digits)?;
    let mut val = BigRational::zero();
    for &a in digits.iter().rev() {
        let den = x + int(a as i64 - 1) + &val;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let frac = x / den;
        val = match variant {
            TreeVariant::Forward => frac,
            TreeVariant::Backward => BigRational::one() - frac,
        };
    }
    Ok(val)
}

/// Interval version of [`evaluate_label_exact`]. A denominator enclosure
/// that contains 0 is reported as [`Error::DivisionByZero`].
pub fn evaluate_label_interval(
    digits: &[u64],
    x: &RatInterval,
    variant: TreeVariant,
    bits: u32,
) -> Result<RatInterval> {
    check_digits(digits)?;
    let one = BigRational::one();
    let mut val = RatInterval::point(BigRational::zero());
    for &a in digits.iter().rev() {
        let den = x.add(&val).add_scalar(&int(a as i64 - 1));
        let frac = x.div(&den)?.round_outward(bits);
        val = match variant {
            TreeVariant::Forward => frac,
            TreeVariant::Backward => frac.rsub_scalar(&one),
        };
    }
    Ok(val)
}

pub fn evaluate_label(digits: &[u64], x: &RealParam, variant: TreeVariant, bits: u32) -> Result<LabelValue> {
    match x.as_rational() {
        Some(r) => evaluate_label_exact(digits, r, variant).map(LabelValue::Exact),
        None => evaluate_label_interval(digits, &x.enclose(bits), variant, bits).map(LabelValue::Enclosure),
    }
}

/// `p_n / q_n`, kept unreduced as produced by the recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub index: usize,
    pub p: BigRational,
    pub q: BigRational,
}

impl Convergent {
    pub fn value(&self) -> BigRational {
        &self.p / &self.q
    }
}

/// Convergents with indices `0..=digits.len()`.
///
/// Both variants start from `p_{-1} = 1, q_{-1} = 0`. Forward uses
/// `p_0/q_0 = 0/1` and `p_n = (x + a_n - 1) p_{n-1} + x p_{n-2}`; backward
/// uses `p_0/q_0 = 1/1` and `p_n = (x + a_n) p_{n-1} - x p_{n-2}`.
pub fn convergents(digits: &[u64], x: &BigRational, variant: TreeVariant) -> Vec<Convergent> {
    let (mut p_prev, mut q_prev) = (BigRational::one(), BigRational::zero());
    let (mut p, mut q) = match variant {
        TreeVariant::Forward => (BigRational::zero(), BigRational::one()),
        TreeVariant::Backward => (BigRational::one(), BigRational::one()),
    };
    let mut out = Vec::with_capacity(digits.len() + 1);
    out.push(Convergent {
        index: 0,
        p: p.clone(),
        q: q.clone(),
    });
    for (i, &a) in digits.iter().enumerate() {
        let (coeff, tail) = match variant {
            TreeVariant::Forward => (x + int(a as i64 - 1), x.clone()),
            TreeVariant::Backward => (x + int(a as i64), -x),
        };
        let p_next = &coeff * &p + &tail * &p_prev;
        let q_next = &coeff * &q + &tail * &q_prev;
        p_prev = core::mem::replace(&mut p, p_next);
        q_prev = core::mem::replace(&mut q, q_next);
        out.push(Convergent {
            index: i + 1,
            p: p.clone(),
            q: q.clone(),
        });
    }
    out
}

/// Error of the `n`-th convergent against its a priori bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub n: usize,
    pub error: BigRational,
    pub bound: BigRational,
    pub holds: bool,
}

/// Compares `|t - p_n/q_n|` with `x^n/q_n^2` (forward, strict) or
/// `x^n/(q_n (q_n - q_{n-1}))` (backward) for every computed digit, up to
/// `n_max` digits.
pub fn error_bound_check(
    t: &BigRational,
    x: &BigRational,
    variant: TreeVariant,
    n_max: usize,
) -> Result<Vec<BoundRow>> {
    let expansion = expand_exact(t, x, variant, n_max)?;
    let conv = convergents(&expansion.digits, x, variant);
    let mut rows = Vec::with_capacity(expansion.digits.len());
    for n in 1..conv.len() {
        let error = (t - conv[n].value()).abs();
        let xn = pow(x, n);
        let (bound, holds) = match variant {
            TreeVariant::Forward => {
                let bound = xn / (&conv[n].q * &conv[n].q);
                let holds = error < bound;
                (bound, holds)
            }
            TreeVariant::Backward => {
                let bound = xn / (&conv[n].q * (&conv[n].q - &conv[n - 1].q));
                let holds = error <= bound;
                (bound, holds)
            }
        };
        rows.push(BoundRow { n, error, bound, holds });
    }
    Ok(rows)
}

/// `q_n` of the forward all-ones expansion against its lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnesBoundRow {
    pub n: usize,
    pub q: BigRational,
    pub bound: BigRational,
    pub holds: bool,
}

/// Lower bounds for the forward all-ones denominators, valid for `n >= 3`:
/// `(n/2) x^((n+2)/2) + x^(n/2)` for even `n`, `((n+1)/2) x^((n+1)/2)` for
/// odd `n`.
pub fn all_ones_lower_bound(x: &BigRational, n: usize) -> BigRational {
    if n.is_multiple_of(2) {
        int((n / 2) as i64) * pow(x, (n + 2) / 2) + pow(x, n / 2)
    } else {
        int(n.div_ceil(2) as i64) * pow(x, n.div_ceil(2))
    }
}

pub fn all_ones_bounds(x: &BigRational, n_lo: usize, n_hi: usize) -> Vec<OnesBoundRow> {
    let conv = convergents(&alloc::vec![1; n_hi], x, TreeVariant::Forward);
    (n_lo..=n_hi)
        .map(|n| {
            let bound = all_ones_lower_bound(x, n);
            let q = conv[n].q.clone();
            OnesBoundRow {
                n,
                holds: q > bound,
                q,
                bound,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripVerdict {
    pub expansion: DigitExpansion,
    pub value: Option<BigRational>,
    pub passed: bool,
}

/// Expands `t` and evaluates the digits back; passes when the expansion is
/// finite and the value is exactly `t`. Requires a positive integer `x`.
pub fn roundtrip(
    t: &BigRational,
    x: &BigRational,
    variant: TreeVariant,
    max_steps: usize,
) -> Result<RoundtripVerdict> {
    if !x.is_integer() || !x.is_positive() {
        return Err(Error::OutOfDomain("roundtrip needs a positive integer x"));
    }
    let expansion = expand_exact(t, x, variant, max_steps)?;
    let value = if expansion.is_finite() {
        Some(evaluate_label_exact(&expansion.digits, x, variant)?)
    } else {
        None
    };
    let passed = value.as_ref() == Some(t);
    Ok(RoundtripVerdict {
        expansion,
        value,
        passed,
    })
}
