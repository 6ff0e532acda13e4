//! Elements of the rational function field over the rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{Monomial, MultiPoly, Var};
use super::Rational;
use crate::error::{Error, Result};

/// A quotient `num / den` of polynomials, kept in lowest terms with a monic
/// denominator. Two scalars are equal iff their stored fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    num: MultiPoly,
    den: MultiPoly,
}

/// Gcd of two polynomials when at least one of them is a single term.
fn monomial_gcd(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let (single, other) = if a.is_single_term() {
        (a, b)
    } else if b.is_single_term() {
        (b, a)
    } else {
        return None;
    };
    let (m, _) = single.leading().expect("single term");
    let mut factors = Vec::new();
    for (v, e) in m.factors() {
        let k = (*e).min(other.min_degree_in(v));
        if k > 0 {
            factors.push(Monomial::var_pow(v.clone(), k));
        }
    }
    let g = factors
        .iter()
        .fold(Monomial::one(), |acc, f| acc.mul(f));
    Some(MultiPoly::term(g, Rational::one()))
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        ExactScalar::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        ExactScalar {
            num: MultiPoly::constant(r),
            den: MultiPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        ExactScalar {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn var(name: &str) -> Self {
        ExactScalar::from_poly(MultiPoly::var(Var::new(name)))
    }

    /// The curve parameter `s`.
    pub fn s() -> Self {
        ExactScalar::from_poly(MultiPoly::var(Var::curve()))
    }

    /// `s^k` for any integer `k`.
    pub fn s_pow(k: i64) -> Self {
        let m = MultiPoly::term(
            Monomial::var_pow(Var::curve(), k.unsigned_abs() as u32),
            Rational::one(),
        );
        if k >= 0 {
            ExactScalar::from_poly(m)
        } else {
            ExactScalar {
                num: MultiPoly::one(),
                den: m,
            }
        }
    }

    /// Builds `num / den` in lowest terms. Panics if `den` is zero.
    pub fn from_fraction(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return ExactScalar::zero();
        }
        if let Some(c) = den.as_constant() {
            return ExactScalar {
                num: num.scale(&c.recip()),
                den: MultiPoly::one(),
            };
        }
        let g = monomial_gcd(&num, &den).unwrap_or_else(|| num.gcd(&den));
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            ExactScalar { num, den }
        } else {
            let inv = lc.recip();
            ExactScalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value as a rational number, if no symbol occurs.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    /// All symbols occurring in numerator or denominator, ascending (`s` last).
    pub fn variables(&self) -> Vec<Var> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort();
        v.dedup();
        v
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    /// s-adic valuation; `None` stands for +∞ (the zero scalar).
    pub fn ord_s(&self) -> Option<i64> {
        self.ord_in(&Var::curve())
    }

    /// Valuation at `v = 0`; `None` for zero.
    pub fn ord_in(&self, v: &Var) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.num.min_degree_in(v) as i64 - self.den.min_degree_in(v) as i64)
    }

    pub fn neg(&self) -> ExactScalar {
        ExactScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one_poly() {
                return ExactScalar::from_poly(self.num.add(&other.num));
            }
            return ExactScalar::from_fraction(self.num.add(&other.num), self.den.clone());
        }
        if other.den.is_one_poly() {
            return ExactScalar::from_fraction(self.num.add(&other.num.mul(&self.den)), self.den.clone());
        }
        if self.den.is_one_poly() {
            return ExactScalar::from_fraction(self.num.mul(&other.den).add(&other.num), other.den.clone());
        }
        ExactScalar::from_fraction(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &ExactScalar) -> ExactScalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ExactScalar) -> ExactScalar {
        if self.is_zero() || other.is_zero() {
            return ExactScalar::zero();
        }
        if self.den.is_one_poly() && other.den.is_one_poly() {
            return ExactScalar::from_poly(self.num.mul(&other.num));
        }
        if let Some(a) = self.as_rational() {
            return ExactScalar {
                num: other.num.scale(&a),
                den: other.den.clone(),
            };
        }
        if let Some(b) = other.as_rational() {
            return ExactScalar {
                num: self.num.scale(&b),
                den: self.den.clone(),
            };
        }
        ExactScalar::from_fraction(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> ExactScalar {
        assert!(!self.is_zero(), "reciprocal of zero");
        ExactScalar::from_fraction(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &ExactScalar) -> ExactScalar {
        if let Some(b) = other.as_rational() {
            assert!(!b.is_zero(), "division by zero");
            return ExactScalar {
                num: self.num.scale(&b.recip()),
                den: self.den.clone(),
            };
        }
        self.mul(&other.recip())
    }

    pub fn scale(&self, k: &Rational) -> ExactScalar {
        ExactScalar {
            num: self.num.scale(k),
            den: if k.is_zero() { MultiPoly::one() } else { self.den.clone() },
        }
    }

    pub fn pow(&self, k: i64) -> ExactScalar {
        let base = if k < 0 { self.recip() } else { self.clone() };
        ExactScalar {
            num: base.num.pow(k.unsigned_abs() as u32),
            den: base.den.pow(k.unsigned_abs() as u32),
        }
    }

    /// Multiplies by `s^k`.
    pub fn mul_s_pow(&self, k: i64) -> ExactScalar {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        self.mul(&ExactScalar::s_pow(k))
    }

    /// Substitutes a rational value for `v`.
    pub fn specialize(&self, v: &Var, value: &Rational) -> Result<ExactScalar> {
        if !self.contains_var(v) {
            return Ok(self.clone());
        }
        let den = self.den.specialize(v, value);
        if den.is_zero() {
            return Err(Error::DenominatorVanishes {
                symbol: v.to_string(),
                value: value.to_string(),
            });
        }
        Ok(ExactScalar::from_fraction(self.num.specialize(v, value), den))
    }

    /// Substitutes an arbitrary scalar for `v`.
    pub fn substitute(&self, v: &Var, value: &ExactScalar) -> Result<ExactScalar> {
        if !self.contains_var(v) {
            return Ok(self.clone());
        }
        if value.den.is_one_poly() {
            let den = self.den.compose(v, &value.num);
            if den.is_zero() {
                return Err(Error::DenominatorVanishes {
                    symbol: v.to_string(),
                    value: value.to_string(),
                });
            }
            return Ok(ExactScalar::from_fraction(self.num.compose(v, &value.num), den));
        }
        // Homogenize both polynomials in v to a common degree and cancel the
        // resulting power of value.den.
        let top = self.num.degree_in(v).max(self.den.degree_in(v));
        let homogenize = |p: &MultiPoly| {
            let coeffs = p.coefficients_in(v);
            let mut acc = MultiPoly::zero();
            for (k, c) in coeffs {
                let t = c
                    .mul(&value.num.pow(k))
                    .mul(&value.den.pow(top - k));
                acc = acc.add(&t);
            }
            acc
        };
        let den = homogenize(&self.den);
        if den.is_zero() {
            return Err(Error::DenominatorVanishes {
                symbol: v.to_string(),
                value: value.to_string(),
            });
        }
        Ok(ExactScalar::from_fraction(homogenize(&self.num), den))
    }

    /// Renames symbol `from` to `to`.
    pub fn rename(&self, from: &Var, to: &Var) -> ExactScalar {
        let target = ExactScalar::from_poly(MultiPoly::var(to.clone()));
        self.substitute(from, &target)
            .expect("renaming a symbol cannot make a denominator vanish")
    }

    /// Floating-point evaluation, for oracle tests.
    pub fn eval_f64(&self, at: &dyn Fn(&Var) -> f64) -> f64 {
        self.num.eval_f64(at) / self.den.eval_f64(at)
    }

    /// Ordering key used to pick canonical representatives: zero first, then
    /// by denominator, then by numerator, both compared through their printed form.
    pub fn canonical_key(&self) -> (bool, usize, String, usize, String) {
        let d = self.den.to_string();
        let n = self.num.to_string();
        let sign_neg = self.num.has_negative_leading();
        let n_abs = if sign_neg { self.num.neg().to_string() } else { n };
        (
            !self.is_zero(),
            d.len(),
            d,
            n_abs.len(),
            format!("{}{}", n_abs, if sign_neg { "-" } else { "" }),
        )
    }
}

impl MultiPoly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        ExactScalar::zero()
    }
}

impl From<Rational> for ExactScalar {
    fn from(r: Rational) -> Self {
        ExactScalar::from_rational(r)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                ExactScalar::$m(self, rhs)
            }
        }
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar::$m(&self, &rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::neg(self)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::neg(&self)
    }
}

fn needs_parens(p: &MultiPoly) -> bool {
    p.num_terms() > 1
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let single_factor = self.den.is_single_term()
            && self
                .den
                .leading()
                .is_some_and(|(m, _)| m.factors().len() <= 1);
        if single_factor {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn sc(text: &str) -> ExactScalar {
        text.parse().unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(sc("s^2/(1+s)").ord_s(), Some(2));
        assert_eq!(sc("1/s").ord_s(), Some(-1));
        assert_eq!(sc("(s*c1 + s^2)/s").ord_s(), Some(0));
        assert_eq!(ExactScalar::zero().ord_s(), None);
    }

    #[test]
    fn specialization_examples() {
        let y3 = Var::new("y3");
        assert!(sc("1 - y3").specialize(&y3, &q(1)).unwrap().is_zero());
        let err = sc("c/s").specialize(&Var::curve(), &q(0)).unwrap_err();
        assert_eq!(err.name(), "DenominatorVanishes");
        let v = sc("(s^2 + 2*s)/s").specialize(&Var::curve(), &q(0)).unwrap();
        assert_eq!(v, ExactScalar::from_int(2));
    }

    #[test]
    fn zero_tests() {
        assert!(ExactScalar::zero().is_zero());
        assert!(sc("(c1 - c1)/s").is_zero());
        assert!(!sc("c1 - c2").is_zero());
    }

    #[test]
    fn storage_is_canonical() {
        assert_eq!(sc("(s^2 - 1)/(2*s - 2)"), sc("s/2 + 1/2"));
        assert_eq!(sc("x/(x*y)"), sc("1/y"));
        assert_eq!(sc("(x + y)/(x^2 - y^2)").to_string(), "-1/(y - x)");
    }

    #[test]
    fn substitution_of_fractions() {
        let s = Var::curve();
        let f = sc("(s + 1)/(s - 2)");
        assert_eq!(f.substitute(&s, &sc("1/s")).unwrap(), sc("(1 + s)/(1 - 2*s)"));
        assert_eq!(f.substitute(&s, &sc("v + s")).unwrap(), sc("(v + s + 1)/(v + s - 2)"));
        assert!(f.substitute(&s, &sc("2")).is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "-3/2", "c1*s^2 - 1", "(1 - y3)/s", "-s/(c1*s + 1)", "1/(c1*s)"] {
            let v = sc(text);
            assert_eq!(sc(&v.to_string()), v, "{text}");
        }
    }
}
