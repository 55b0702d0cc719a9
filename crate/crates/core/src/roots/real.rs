use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::rational::{self, int};
use crate::algebra::{IntPoly, SturmChain};
use crate::error::{Error, Result};

/// Interval `(lo, hi)` holding exactly one real root of its polynomial,
/// with the polynomial nonzero of opposite signs at both endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    lo: BigRational,
    hi: BigRational,
    poly: IntPoly,
}

impl IsolatingInterval {
    /// Accepts `(lo, hi)` when `f` has opposite nonzero signs at the ends
    /// and Sturm counts exactly one root inside.
    pub fn new(lo: BigRational, hi: BigRational, poly: IntPoly) -> Result<Self> {
        if lo >= hi {
            return Err(Error::EmptyInterval);
        }
        let iv = IsolatingInterval { lo, hi, poly };
        if !iv.sign_change_of(&iv.poly) || SturmChain::new(&iv.poly)?.count(&iv.lo, &iv.hi)? != 1 {
            return Err(Error::OutOfDomain("interval does not isolate a single root"));
        }
        Ok(iv)
    }

    /// Trusts the caller that `(lo, hi)` holds exactly one root; only the
    /// sign change is checked.
    pub(crate) fn from_sign_change(lo: BigRational, hi: BigRational, poly: IntPoly) -> Option<Self> {
        let iv = IsolatingInterval { lo, hi, poly };
        iv.sign_change_of(&iv.poly).then_some(iv)
    }

    /// Halves the interval, keeping the root. Returns the root itself if a
    /// midpoint hits it exactly.
    pub fn bisect(&mut self) -> Option<BigRational> {
        let mid = self.midpoint();
        match self.poly.sign_at(&mid) {
            Ordering::Equal => Some(mid),
            s if s == self.poly.sign_at(&self.lo) => {
                self.lo = mid;
                None
            }
            _ => {
                self.hi = mid;
                None
            }
        }
    }

    /// Position of the root relative to `t`, refining in place as needed.
    pub fn compare_root(&mut self, t: &BigRational) -> Ordering {
        loop {
            if t <= &self.lo {
                return Ordering::Greater;
            }
            if t >= &self.hi {
                return Ordering::Less;
            }
            if self.poly.sign_at(t) == Ordering::Equal {
                return Ordering::Equal;
            }
            if let Some(root) = self.bisect() {
                return root.cmp(t);
            }
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        rational::midpoint(&self.lo, &self.hi)
    }

    /// Floating approximation of the root.
    pub fn approx(&self) -> f64 {
        rational::to_f64(&self.midpoint())
    }

    pub fn contains(&self, t: &BigRational) -> bool {
        &self.lo < t && t < &self.hi
    }

    /// Whether the polynomial `g` changes sign across the endpoints.
    pub fn sign_change_of(&self, g: &IntPoly) -> bool {
        let a = g.sign_at(&self.lo);
        let b = g.sign_at(&self.hi);
        a != Ordering::Equal && b != Ordering::Equal && a != b
    }
}

impl fmt::Display for IsolatingInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            rational::format_rational(&self.lo),
            rational::format_rational(&self.hi)
        )
    }
}

/// Point of `(lo, hi)` where `f` is nonzero: the midpoint, or if that is a
/// root, `lo + w(2^j+1)/2^(j+1)` for the first `j` that avoids one.
fn split_point(f: &IntPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let w = hi - lo;
    let mid = rational::midpoint(lo, hi);
    if f.sign_at(&mid) != Ordering::Equal {
        return mid;
    }
    let mut j = 1usize;
    loop {
        let pow = BigInt::one() << j;
        let cand = lo + &w * BigRational::new(&pow + 1, pow << 1);
        if f.sign_at(&cand) != Ordering::Equal {
            return cand;
        }
        j += 1;
    }
}

/// Isolates all distinct real roots of a square-free `f`, ascending.
pub fn isolate_real_roots(f: &IntPoly) -> Result<Vec<IsolatingInterval>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = f.gcd(&f.derivative());
    let gcd_degree = g.degree().unwrap_or(0);
    if gcd_degree > 0 {
        return Err(Error::NotSquareFree { gcd_degree });
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(f)?;
    let b = f.cauchy_bound()?;
    let total = chain.count(&-b.clone(), &b)?;
    let mut out = Vec::with_capacity(total);
    // Depth-first with the left half on top so output is ascending.
    let mut stack = vec![(-b.clone(), b, total)];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(IsolatingInterval {
                lo,
                hi,
                poly: f.clone(),
            }),
            _ => {
                let mid = split_point(f, &lo, &hi);
                let left = chain.count(&lo, &mid)?;
                stack.push((mid.clone(), hi, n - left));
                stack.push((lo, mid, left));
            }
        }
    }
    debug_assert_eq!(out.len(), total);
    Ok(out)
}

/// Shrinks `iv` to width at most `eps` while keeping its root.
pub fn refine(iv: &IsolatingInterval, eps: &BigRational) -> Result<IsolatingInterval> {
    if eps <= &BigRational::from_integer(0.into()) {
        return Err(Error::OutOfDomain("eps must be positive"));
    }
    let f = &iv.poly;
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let lo_sign = f.sign_at(&lo);
    while &(&hi - &lo) > eps {
        let mid = rational::midpoint(&lo, &hi);
        match f.sign_at(&mid) {
            Ordering::Equal => {
                // Exact root: centre a small window on it.
                let mut half = (&hi - &lo) / int(4);
                while &(&half * int(2)) > eps {
                    half /= int(2);
                }
                lo = &mid - &half;
                hi = &mid + &half;
                break;
            }
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(IsolatingInterval {
        lo,
        hi,
        poly: f.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;
    use crate::algebra::sturm_count;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn isolates_examples() {
        let ivs = isolate_real_roots(&p(&[1, 3, 1])).unwrap();
        assert_eq!(ivs.len(), 2);
        let roots = [-2.618_033_988_749_895, -0.381_966_011_250_105_1];
        for (iv, r) in ivs.iter().zip(roots) {
            let fine = refine(iv, &ratio(1, 1_000_000)).unwrap();
            assert!((fine.approx() - r).abs() < 1e-6);
        }
        let ivs = isolate_real_roots(&p(&[0, 1, 1])).unwrap();
        assert!(ivs[0].contains(&int(-1)) && ivs[1].contains(&int(0)));
        let f = p(&[40, 44, 13, 1]);
        let fine: Vec<f64> = isolate_real_roots(&f)
            .unwrap()
            .iter()
            .map(|iv| refine(iv, &ratio(1, 10_000)).unwrap().approx())
            .collect();
        assert!(close(&fine, &[-8.259, -3.252, -1.489], 1e-3), "{fine:?}");
    }

    #[test]
    fn rejects_repeated_roots() {
        let f = p(&[1, 1]) * p(&[1, 1]);
        assert_eq!(isolate_real_roots(&f), Err(Error::NotSquareFree { gcd_degree: 1 }));
        assert!(isolate_real_roots(&IntPoly::zero()).is_err());
        assert!(isolate_real_roots(&p(&[5])).unwrap().is_empty());
    }

    #[test]
    fn refine_examples() {
        let iv = &isolate_real_roots(&p(&[1, 1])).unwrap()[0];
        let fine = refine(iv, &ratio(1, 1_000_000)).unwrap();
        assert!(fine.contains(&int(-1)));
        assert!(fine.width() <= ratio(1, 1_000_000));

        // Larger root of x^2+3x+1 is (-3+sqrt5)/2; bracket it by squares.
        let iv = &isolate_real_roots(&p(&[1, 3, 1])).unwrap()[1];
        let eps = BigRational::new(1.into(), BigInt::from(10u8).pow(12));
        let fine = refine(iv, &eps).unwrap();
        assert!(fine.width() <= eps);
        // lo < r < hi  <=>  (2lo+3)^2 < 5 < (2hi+3)^2 on the positive branch.
        let s = |t: &BigRational| {
            let u = t * int(2) + int(3);
            &u * &u
        };
        assert!(s(fine.lo()) < int(5) && int(5) < s(fine.hi()));

        let f = p(&[40, 44, 13, 1]);
        let iv = &isolate_real_roots(&f).unwrap()[0];
        let fine = refine(iv, &ratio(1, 1000)).unwrap();
        assert!((fine.approx() + 8.259).abs() < 2e-3);
    }

    #[test]
    fn exact_rational_roots_survive_splitting() {
        // Roots at 0, 1/2 and -1/4 sit on the dyadic bisection grid.
        let f = p(&[0, 1]) * p(&[-1, 2]) * p(&[1, 4]);
        let ivs = isolate_real_roots(&f).unwrap();
        assert_eq!(ivs.len(), 3);
        for (iv, r) in ivs.iter().zip([ratio(-1, 4), int(0), ratio(1, 2)]) {
            assert!(iv.contains(&r));
            let fine = refine(iv, &ratio(1, 1 << 20)).unwrap();
            assert!(fine.contains(&r));
        }
    }

    proptest! {
        #[test]
        fn count_matches_sturm(roots in proptest::collection::btree_set(-30i64..30, 1..7), c in 1i64..4) {
            let mut f = IntPoly::from_i64s(&[1, 0, c]);
            for r in &roots {
                f = f * p(&[-r, 1]);
            }
            let ivs = isolate_real_roots(&f).unwrap();
            let b = f.cauchy_bound().unwrap();
            prop_assert_eq!(ivs.len(), sturm_count(&f, &-b.clone(), &b).unwrap());
            prop_assert_eq!(ivs.len(), roots.len());
            for (iv, r) in ivs.iter().zip(&roots) {
                prop_assert!(iv.contains(&int(*r)));
                prop_assert!(iv.sign_change_of(&f));
                prop_assert!(iv.lo() < iv.hi());
            }
        }
    }
}
