//! Exact orbits of the fast maps on rational points.
//!
//! States are kept as numerator/denominator pairs that are only partially
//! reduced: after each step, common factors are removed for primes dividing
//! `p*q` (where `x = p/q`). For reduced input no other prime can divide both
//! parts of the new pair, so the state stays in lowest terms without a full
//! gcd on large integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::tree::TreeVariant;

/// Exact orbit `t, T(t), T²(t), …` for a rational parameter.
#[derive(Clone, Debug)]
pub struct ExactOrbit {
    variant: TreeVariant,
    p: BigInt,
    q: BigInt,
    pq: BigInt,
    num: BigInt,
    den: BigInt,
}

impl ExactOrbit {
    /// Starts at `t` with `0 < t < 1` and `x > 0`.
    pub fn new(t: &BigRational, x: &BigRational, variant: TreeVariant) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::OutOfDomain("x must be positive"));
        }
        if !t.is_positive() || t >= &BigRational::one() {
            return Err(Error::OutOfDomain("t must lie in (0, 1)"));
        }
        let (p, q) = (x.numer().clone(), x.denom().clone());
        Ok(ExactOrbit {
            variant,
            pq: &p * &q,
            p,
            q,
            num: t.numer().clone(),
            den: t.denom().clone(),
        })
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn current(&self) -> BigRational {
        BigRational::new_raw(self.num.clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Applies the fast map once and returns the digit that was read.
    /// Returns `None` once the orbit sits at 0.
    pub fn step(&mut self) -> Result<Option<u64>> {
        if self.num.is_zero() {
            return Ok(None);
        }
        // x/t - x = p(d-n)/(qn) forward, x/(1-t) - x = pn/(q(d-n)) backward.
        let gap = &self.den - &self.num;
        let (m, k) = match self.variant {
            TreeVariant::Forward => (&self.p * gap, &self.q * &self.num),
            TreeVariant::Backward => (&self.p * &self.num, &self.q * gap),
        };
        let (whole, rem) = m.div_mod_floor(&k);
        let digit = whole
            .to_u64()
            .and_then(|w| w.checked_add(1))
            .ok_or(Error::DigitOverflow)?;
        self.num = rem;
        self.den = k;
        self.reduce();
        Ok(Some(digit))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.pq.is_one() {
            return;
        }
        loop {
            let g = (&self.num % &self.pq).gcd(&(&self.den % &self.pq)).gcd(&self.pq);
            if g.is_one() {
                break;
            }
            self.num /= &g;
            self.den /= &g;
        }
    }
}

/// One exact step of the fast map: the digit read at `t` and the image.
pub fn fast_step(t: &BigRational, x: &BigRational, variant: TreeVariant) -> Result<(u64, BigRational)> {
    let mut orbit = ExactOrbit::new(t, x, variant)?;
    let digit = orbit.step()?.expect("t is nonzero");
    Ok((digit, orbit.current()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};
    use proptest::prelude::*;

    fn direct(t: &BigRational, x: &BigRational, variant: TreeVariant) -> (u64, BigRational) {
        let y = match variant {
            TreeVariant::Forward => x / t - x,
            TreeVariant::Backward => x / (BigRational::one() - t) - x,
        };
        let f = y.floor();
        ((f.to_integer() + 1u32).to_u64().unwrap(), y - f)
    }

    #[test]
    fn forward_steps_match_hand_orbits() {
        assert_eq!(fast_step(&ratio(5, 7), &int(2), TreeVariant::Forward).unwrap(), (1, ratio(4, 5)));
        assert_eq!(fast_step(&ratio(3, 7), &int(1), TreeVariant::Forward).unwrap(), (2, ratio(1, 3)));
        assert_eq!(
            fast_step(&ratio(1, 2), &ratio(1, 2), TreeVariant::Forward).unwrap(),
            (1, ratio(1, 2))
        );
    }

    #[test]
    fn backward_steps_match_hand_orbits() {
        assert_eq!(fast_step(&ratio(2, 5), &int(2), TreeVariant::Backward).unwrap(), (2, ratio(1, 3)));
        assert_eq!(fast_step(&ratio(1, 2), &int(2), TreeVariant::Backward).unwrap(), (3, int(0)));
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(ExactOrbit::new(&int(0), &int(1), TreeVariant::Forward).is_err());
        assert!(ExactOrbit::new(&int(1), &int(1), TreeVariant::Forward).is_err());
        assert!(ExactOrbit::new(&ratio(1, 2), &int(0), TreeVariant::Backward).is_err());
    }

    #[test]
    fn huge_digits_overflow() {
        let t = BigRational::new(BigInt::one(), BigInt::from(10u8).pow(30));
        assert_eq!(fast_step(&t, &int(1), TreeVariant::Forward), Err(Error::DigitOverflow));
    }

    proptest! {
        #[test]
        fn partial_reduction_stays_in_lowest_terms(
            n in 1i64..500, extra in 1i64..500, xp in 1i64..40, xq in 1i64..40, fwd: bool,
        ) {
            let t = ratio(n, n + extra);
            let x = ratio(xp, xq);
            let variant = if fwd { TreeVariant::Forward } else { TreeVariant::Backward };
            let mut orbit = ExactOrbit::new(&t, &x, variant).unwrap();
            let mut current = t;
            for _ in 0..25 {
                if current.is_zero() {
                    break;
                }
                let (digit, next) = direct(&current, &x, variant);
                prop_assert_eq!(orbit.step().unwrap(), Some(digit));
                prop_assert_eq!(orbit.numer(), next.numer());
                prop_assert_eq!(orbit.denom(), next.denom());
                current = next;
            }
        }
    }
}
