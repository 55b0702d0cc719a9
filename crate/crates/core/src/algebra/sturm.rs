use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Signed;

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Signed remainder sequence of a square-free polynomial and its
/// derivative, kept primitive at every step.
///
/// Each element after the first two is `-prem(f_{i-1}, f_i)` scaled by a
/// positive integer, so sign variations are those of the classical chain
/// over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain for the square-free part of `f`.
    pub fn new(f: &IntPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f0 = f.square_free_part();
        let mut polys = Vec::with_capacity(f0.degree().unwrap_or(0) + 1);
        let f1 = f0.derivative().primitive_part();
        polys.push(f0);
        if !f1.is_zero() {
            polys.push(f1);
        }
        while polys.len() >= 2 {
            let n = polys.len();
            let (a, b) = (&polys[n - 2], &polys[n - 1]);
            if b.degree() == Some(0) {
                break;
            }
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let prem = a.pseudo_rem(b)?;
            if prem.is_zero() {
                // Only possible when a and b share a factor, which the
                // square-free first element rules out.
                unreachable!("square-free input yields a constant tail");
            }
            // prem = lc(b)^(delta+1) * rem; strip that sign, then negate.
            let lc_negative = b.leading().unwrap().is_negative();
            let flip = !(lc_negative && (delta + 1) % 2 == 1);
            let next = prem.primitive_part_signed();
            polys.push(if flip { -next } else { next });
        }
        Ok(SturmChain { polys })
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    /// Number of sign changes along the chain at `t`, zeros skipped.
    pub fn variations(&self, t: &BigRational) -> usize {
        let mut count = 0;
        let mut prev = Ordering::Equal;
        for p in &self.polys {
            let s = p.sign_at(t);
            if s == Ordering::Equal {
                continue;
            }
            if prev != Ordering::Equal && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> Result<usize> {
        if lo >= hi {
            return Err(Error::EmptyInterval);
        }
        Ok(self.variations(lo) - self.variations(hi))
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        let b = self.polys[0].cauchy_bound().expect("chain head is nonzero");
        self.variations(&-b.clone()) - self.variations(&b)
    }
}

/// Number of distinct real roots of `f` in `(lo, hi]`.
pub fn sturm_count(f: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    SturmChain::new(f)?.count(lo, hi)
}

/// Number of distinct real roots of `f` in `(lo, hi]`, with `hi` allowed to
/// be the Cauchy bound of `f` (roots never reach it).
pub fn count_above(f: &IntPoly, lo: &BigRational) -> Result<usize> {
    let b = f.cauchy_bound()?;
    if lo >= &b {
        return Ok(0);
    }
    sturm_count(f, lo, &b)
}

/// Distinct real roots of `f` in `(-B, hi]` for the Cauchy bound `B`.
pub fn count_below(f: &IntPoly, hi: &BigRational) -> Result<usize> {
    let b = -f.cauchy_bound()?;
    if hi <= &b {
        return Ok(0);
    }
    sturm_count(f, &b, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, ratio};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn counts_quadratic_roots() {
        let f = p(&[1, 3, 1]);
        assert_eq!(sturm_count(&f, &int(-1), &int(0)).unwrap(), 1);
        assert_eq!(sturm_count(&f, &int(0), &int(10)).unwrap(), 0);
        assert_eq!(sturm_count(&f, &int(-10), &int(10)).unwrap(), 2);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &int(-10), &int(10)).unwrap(), 0);
    }

    #[test]
    fn half_open_at_roots() {
        // Roots at -1 and 0.
        let f = p(&[0, 1, 1]);
        assert_eq!(sturm_count(&f, &int(-1), &int(0)).unwrap(), 1);
        assert_eq!(sturm_count(&f, &ratio(-3, 2), &int(-1)).unwrap(), 1);
        assert_eq!(sturm_count(&f, &int(0), &int(1)).unwrap(), 0);
    }

    #[test]
    fn repeated_roots_count_once() {
        let f = p(&[1, 1]) * p(&[1, 1]) * p(&[-2, 1]);
        let chain = SturmChain::new(&f).unwrap();
        assert_eq!(chain.polys()[0], p(&[-2, -1, 1]));
        assert_eq!(chain.count_all(), 2);
    }

    #[test]
    fn chain_ends_in_constant() {
        let f = p(&[40, 44, 13, 1]);
        let chain = SturmChain::new(&f).unwrap();
        assert_eq!(chain.polys().last().unwrap().degree(), Some(0));
        assert_eq!(chain.count_all(), 3);
    }

    #[test]
    fn negative_leading_coefficients() {
        // -(x-1)(x-2)(x-3)
        let f = -(p(&[-1, 1]) * p(&[-2, 1]) * p(&[-3, 1]));
        assert_eq!(sturm_count(&f, &int(0), &ratio(5, 2)).unwrap(), 2);
        assert_eq!(SturmChain::new(&f).unwrap().count_all(), 3);
    }

    #[test]
    fn constants_and_errors() {
        assert_eq!(sturm_count(&p(&[7]), &int(-1), &int(1)).unwrap(), 0);
        assert!(sturm_count(&IntPoly::zero(), &int(-1), &int(1)).is_err());
        assert!(sturm_count(&p(&[1, 1]), &int(1), &int(1)).is_err());
    }
}
