//! Exact integers, rationals and integer polynomials.
//!
//! Integers and rationals are [`BigInt`] and [`BigRational`]; polynomials
//! are dense [`IntPoly`] values with Sturm-chain root counting on top.

pub mod poly;
pub mod rational;
pub mod sturm;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::IntPoly;
pub use sturm::{sturm_count, SturmChain};

/// Exact value `f(t)`.
pub fn poly_eval(f: &IntPoly, t: &BigRational) -> BigRational {
    f.eval(t)
}

pub fn poly_derivative(f: &IntPoly) -> IntPoly {
    f.derivative()
}

/// Primitive gcd with positive leading coefficient.
pub fn poly_gcd(f: &IntPoly, g: &IntPoly) -> IntPoly {
    f.gcd(g)
}
