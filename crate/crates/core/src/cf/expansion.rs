use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::{RatInterval, RealParam};
use super::orbit::ExactOrbit;
use crate::error::{Error, Result};
use crate::tree::TreeVariant;

/// Default step budget for expansions.
pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfiniteReason {
    /// `x = p/q` is not an integer, `q` divides the starting denominator and
    /// the starting numerator is prime to `q`; no orbit point can be 0.
    ModInvariant { modulus: BigInt },
    /// The orbit revisits the point first seen after `start` steps.
    Cycle { start: usize, period: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpansionStatus {
    /// The orbit reached exactly 0 after the last digit.
    Finite,
    /// Gave up after `steps` digits without a verdict.
    Capped { steps: usize },
    CertifiedInfinite(InfiniteReason),
}

impl fmt::Display for ExpansionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpansionStatus::Finite => f.write_str("finite"),
            ExpansionStatus::Capped { steps } => write!(f, "capped after {steps} steps"),
            ExpansionStatus::CertifiedInfinite(InfiniteReason::ModInvariant { modulus }) => {
                write!(f, "infinite (numerators never divisible by {modulus})")
            }
            ExpansionStatus::CertifiedInfinite(InfiniteReason::Cycle { start, period }) => {
                write!(f, "infinite (cycle of period {period} from step {start})")
            }
        }
    }
}

/// Per-step record of the mod-q invariant along an exact orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRecord {
    pub modulus: BigInt,
    pub steps_checked: usize,
    pub held: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitExpansion {
    pub digits: Vec<u64>,
    pub status: ExpansionStatus,
    /// Present when the starting point satisfied the mod-q hypothesis.
    pub invariant: Option<InvariantRecord>,
}

impl DigitExpansion {
    pub fn is_finite(&self) -> bool {
        self.status == ExpansionStatus::Finite
    }
}

pub fn forward_digits(t: &BigRational, x: &BigRational, max_steps: usize) -> Result<DigitExpansion> {
    expand_exact(t, x, TreeVariant::Forward, max_steps)
}

pub fn backward_digits(t: &BigRational, x: &BigRational, max_steps: usize) -> Result<DigitExpansion> {
    expand_exact(t, x, TreeVariant::Backward, max_steps)
}

fn invariant_holds(num: &BigInt, den: &BigInt, q: &BigInt) -> bool {
    !num.is_multiple_of(q) && den.is_multiple_of(q)
}

/// Exact expansion with termination classification.
pub fn expand_exact(
    t: &BigRational,
    x: &BigRational,
    variant: TreeVariant,
    max_steps: usize,
) -> Result<DigitExpansion> {
    let mut orbit = ExactOrbit::new(t, x, variant)?;
    let q = x.denom().clone();
    let mut invariant = (!q.is_one() && invariant_holds(t.numer(), t.denom(), &q)).then(|| {
        InvariantRecord {
            modulus: q.clone(),
            steps_checked: 0,
            held: true,
        }
    });
    let mut seen = BTreeMap::new();
    seen.insert((orbit.numer().clone(), orbit.denom().clone()), 0usize);
    let mut digits = Vec::new();
    let mut status = None;
    for step in 1..=max_steps {
        let digit = orbit.step()?.expect("orbit is nonzero until it terminates");
        digits.push(digit);
        if orbit.is_zero() {
            status = Some(ExpansionStatus::Finite);
            break;
        }
        if let Some(rec) = invariant.as_mut() {
            rec.steps_checked += 1;
            rec.held &= invariant_holds(orbit.numer(), orbit.denom(), &rec.modulus);
        }
        let key = (orbit.numer().clone(), orbit.denom().clone());
        if let Some(&start) = seen.get(&key) {
            status = Some(ExpansionStatus::CertifiedInfinite(InfiniteReason::Cycle {
                start,
                period: step - start,
            }));
            break;
        }
        seen.insert(key, step);
    }
    let status = status.unwrap_or_else(|| match &invariant {
        Some(rec) if rec.held => ExpansionStatus::CertifiedInfinite(InfiniteReason::ModInvariant {
            modulus: rec.modulus.clone(),
        }),
        _ => ExpansionStatus::Capped {
            steps: digits.len(),
        },
    });
    Ok(DigitExpansion {
        digits,
        status,
        invariant,
    })
}

/// Precision schedule for expansions with an irrational parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub initial_bits: u32,
    pub cap_bits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            initial_bits: 128,
            cap_bits: 4096,
        }
    }
}

/// Expansion for a real parameter. Rational parameters use the exact orbit;
/// surds run on enclosures and stop with `Capped` as soon as a digit cannot
/// be decided at the maximum precision.
pub fn expand_real(
    t: &BigRational,
    x: &RealParam,
    variant: TreeVariant,
    max_steps: usize,
    precision: Precision,
) -> Result<DigitExpansion> {
    if let Some(r) = x.as_rational() {
        return expand_exact(t, r, variant, max_steps);
    }
    if !x.is_positive() {
        return Err(Error::OutOfDomain("x must be positive"));
    }
    if !t.is_positive() || t >= &BigRational::one() {
        return Err(Error::OutOfDomain("t must lie in (0, 1)"));
    }
    let mut bits = precision.initial_bits.max(8);
    loop {
        let (digits, decided_all) = interval_digits(t, x, variant, max_steps, bits)?;
        if decided_all || bits >= precision.cap_bits {
            let status = ExpansionStatus::Capped {
                steps: digits.len(),
            };
            return Ok(DigitExpansion {
                digits,
                status,
                invariant: None,
            });
        }
        bits = bits.saturating_mul(2).min(precision.cap_bits);
    }
}

/// Digits that are certain at the given precision, and whether the budget
/// was exhausted without ambiguity.
fn interval_digits(
    t: &BigRational,
    x: &RealParam,
    variant: TreeVariant,
    max_steps: usize,
    bits: u32,
) -> Result<(Vec<u64>, bool)> {
    let xi = x.enclose(bits);
    let one = BigRational::one();
    let mut ti = RatInterval::point(t.clone());
    let mut digits = Vec::new();
    while digits.len() < max_steps {
        // x(1-t)/t forward, xt/(1-t) backward: one occurrence of x each.
        let (top, bottom) = match variant {
            TreeVariant::Forward => (ti.rsub_scalar(&one), ti.clone()),
            TreeVariant::Backward => (ti.clone(), ti.rsub_scalar(&one)),
        };
        if !bottom.lo().is_positive() {
            return Ok((digits, false));
        }
        let y = xi.mul(&top).div(&bottom)?.round_outward(bits);
        let Some(whole) = y.floor_if_unambiguous() else {
            return Ok((digits, false));
        };
        let shift = BigRational::from_integer(whole.clone());
        let next = y.add_scalar(&-shift);
        if next.lo().is_zero() {
            // Cannot tell whether the orbit has hit 0 exactly.
            return Ok((digits, false));
        }
        let digit = whole
            .to_u64()
            .and_then(|w| w.checked_add(1))
            .ok_or(Error::DigitOverflow)?;
        digits.push(digit);
        ti = next;
    }
    Ok((digits, true))
}
