use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::IntPoly;
use crate::error::{Error, Result};

/// Approximate complex root with an a posteriori inclusion radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl ComplexApprox {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

pub const MAX_ITERATIONS: usize = 200;
const ANGLE_OFFSET: f64 = 0.4;

/// Value and derivative by Horner, plus a bound on the rounding error of
/// the value.
fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut f = Complex64::zero();
    let mut df = Complex64::zero();
    let mut mag = 0.0;
    let r = z.norm();
    for &ci in c.iter().rev() {
        df = df * z + f;
        f = f * z + ci;
        mag = mag * r + ci.abs();
    }
    let err = 4.0 * c.len() as f64 * f64::EPSILON * mag;
    (f, df, err)
}

/// All complex roots of the square-free part of `f` by Aberth–Ehrlich
/// iteration, started on a circle of radius `1 + max|c_i/c_d|`.
///
/// Each radius is `d (|f(z)| + e) / (|c_d| prod |z - z_j|)` where `e`
/// bounds the rounding error in evaluating `f(z)`.
pub fn complex_roots(f: &IntPoly, tol: f64) -> Result<Vec<ComplexApprox>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = f.square_free_part();
    let c: Vec<f64> = g.coeffs().iter().map(|a| a.to_f64().unwrap_or(f64::NAN)).collect();
    let d = c.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = c[d];
    let bound = 1.0 + c[..d].iter().map(|ci| (ci / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(bound, 2.0 * PI * k as f64 / d as f64 + ANGLE_OFFSET))
        .collect();

    let mut last_step = f64::INFINITY;
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        last_step = 0.0;
        for k in 0..d {
            let (fz, dfz, _) = horner(&c, z[k]);
            if fz.is_zero() {
                continue;
            }
            let ratio = fz / dfz;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let mut w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !w.is_finite() {
                w = ratio;
            }
            if w.is_finite() {
                z[k] -= w;
                last_step = last_step.max(w.norm());
            }
        }
        if last_step < tol / 10.0 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            radius: last_step,
        });
    }

    Ok((0..d)
        .map(|k| {
            let (fz, _, err) = horner(&c, z[k]);
            let dist: f64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).norm())
                .product();
            let radius = d as f64 * (fz.norm() + err) / (lead.abs() * dist);
            ComplexApprox {
                re: z[k].re,
                im: z[k].im,
                radius,
            }
        })
        .collect())
}

/// Outcome of comparing the roots of `1 + x + ... + x^(n+1)` with the
/// nontrivial `(n+2)`-th roots of unity.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitCircleReport {
    pub n: u32,
    /// `(x - 1)(1 + ... + x^(n+1)) = x^(n+2) - 1` as polynomials.
    pub identity_holds: bool,
    pub roots: Vec<ComplexApprox>,
    pub max_distance: f64,
    /// Every nontrivial root of unity is matched by exactly one root.
    pub bijective: bool,
    pub passed: bool,
}

pub fn unit_circle_check(n: u32, tol: f64) -> Result<UnitCircleReport> {
    if n == 0 {
        return Err(Error::OutOfDomain("n must be positive"));
    }
    let m = n as usize + 2;
    let sum = IntPoly::from_i64s(&alloc::vec![1; m]);
    let lhs = IntPoly::from_i64s(&[-1, 1]) * &sum;
    let rhs = IntPoly::monomial(1.into(), m) - IntPoly::one();
    let identity_holds = lhs == rhs;

    let roots = complex_roots(&sum, tol)?;
    let mut hit = alloc::vec![false; m];
    let mut max_distance: f64 = 0.0;
    for r in &roots {
        let z = r.value();
        let k = (z.arg() * m as f64 / (2.0 * PI)).round().rem_euclid(m as f64) as usize;
        let target = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64);
        max_distance = max_distance.max((z - target).norm());
        hit[k] = true;
    }
    let bijective = roots.len() == m - 1 && !hit[0] && hit[1..].iter().all(|&h| h);
    let passed = identity_holds && bijective && max_distance < tol;
    Ok(UnitCircleReport {
        n,
        identity_holds,
        roots,
        max_distance,
        bijective,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sorted(mut v: Vec<ComplexApprox>) -> Vec<ComplexApprox> {
        let key = |a: &ComplexApprox| ((a.re * 1e6).round(), a.im);
        v.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        v
    }

    fn near(a: &ComplexApprox, re: f64, im: f64, tol: f64) -> bool {
        (a.re - re).abs() < tol && (a.im - im).abs() < tol
    }

    #[test]
    fn solver_examples() {
        let tol = 1e-10;
        let r = sorted(complex_roots(&IntPoly::from_i64s(&[1, 1, 1]), tol).unwrap());
        assert!(near(&r[0], -0.5, -0.866_025_403_784_438_6, 1e-9));
        assert!(near(&r[1], -0.5, 0.866_025_403_784_438_6, 1e-9));
        let r = sorted(complex_roots(&IntPoly::from_i64s(&[1, 1, 1, 1]), tol).unwrap());
        assert!(near(&r[0], -1.0, 0.0, 1e-9));
        assert!(near(&r[1], 0.0, -1.0, 1e-9));
        assert!(near(&r[2], 0.0, 1.0, 1e-9));
        let r = complex_roots(&IntPoly::from_i64s(&[1, 1]), tol).unwrap();
        assert!(near(&r[0], -1.0, 0.0, 1e-12));
        assert!(r.iter().all(|a| a.radius <= tol));
    }

    #[test]
    fn repeated_roots_use_square_free_part() {
        let f = IntPoly::from_i64s(&[1, 1]) * IntPoly::from_i64s(&[1, 1]) * IntPoly::from_i64s(&[-2, 1]);
        let r = sorted(complex_roots(&f, 1e-10).unwrap());
        assert_eq!(r.len(), 2);
        assert!(near(&r[0], -1.0, 0.0, 1e-9) && near(&r[1], 2.0, 0.0, 1e-9));
    }

    #[test]
    fn unit_circle_examples() {
        for n in [1, 2, 10] {
            let rep = unit_circle_check(n, 1e-8).unwrap();
            assert!(rep.passed, "n = {n}: {rep:?}");
            assert_eq!(rep.roots.len(), n as usize + 1);
        }
        let rep = unit_circle_check(2, 1e-8).unwrap();
        let r = sorted(rep.roots);
        assert!(near(&r[0], -1.0, 0.0, 1e-8) && near(&r[1], 0.0, -1.0, 1e-8) && near(&r[2], 0.0, 1.0, 1e-8));
    }

    proptest! {
        #[test]
        fn vieta_relations(coeffs in proptest::collection::vec(-20i64..20, 2..9), lead in 1i64..5) {
            let mut c = coeffs;
            c.push(lead);
            let f = IntPoly::from_i64s(&c);
            prop_assume!(f.is_square_free());
            let tol = 1e-9;
            let roots = complex_roots(&f, tol).unwrap();
            let d = c.len() - 1;
            prop_assert_eq!(roots.len(), d);
            let sum: Complex64 = roots.iter().map(|r| r.value()).sum();
            let prod: Complex64 = roots.iter().map(|r| r.value()).product();
            let want_sum = -(c[d - 1] as f64) / lead as f64;
            let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
            let want_prod = sign * c[0] as f64 / lead as f64;
            prop_assert!((sum - want_sum).norm() < 10.0 * tol, "sum {sum} vs {want_sum}");
            prop_assert!((prod - want_prod).norm() < 10.0 * tol, "prod {prod} vs {want_prod}");
        }
    }
}
