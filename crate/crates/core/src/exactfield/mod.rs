//! Exact arithmetic in ℚ(c₁,…,c_r)(s): rationals, multivariate polynomials
//! and their fraction field, with the s-adic valuation and specialization.

mod parse;
mod poly;
mod roots;
mod scalar;

pub use parse::parse_rational;
pub use poly::{Monomial, MultiPoly, Var, CURVE_SYMBOL};
pub use roots::rational_roots;
pub use scalar::ExactScalar;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
