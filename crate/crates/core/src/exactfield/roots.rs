//! Rational roots of univariate polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{MultiPoly, Var};
use super::Rational;

/// Distinct rational roots of a univariate polynomial in `v`, ascending, plus
/// a flag telling whether the polynomial splits into linear factors over ℚ.
pub fn rational_roots(p: &MultiPoly, v: &Var) -> (Vec<Rational>, bool) {
    assert!(
        p.variables().iter().all(|w| w == v),
        "rational_roots expects a univariate polynomial"
    );
    if p.is_zero() {
        return (Vec::new(), true);
    }
    let (ip, _) = p.clear_denominators();
    let deg = ip.degree_in(v) as usize;
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (k, c) in ip.coefficients_in(v) {
        coeffs[k as usize] = c.as_constant().expect("univariate").to_integer();
    }
    let mut roots = Vec::new();
    if coeffs[0].is_zero() {
        roots.push(Rational::zero());
        let shift = coeffs.iter().position(|c| !c.is_zero()).unwrap();
        coeffs.drain(..shift);
    }
    let mut candidates = Vec::new();
    if coeffs.len() > 1 {
        let a0 = coeffs[0].abs();
        let an = coeffs.last().unwrap().abs();
        for num in divisors(&a0) {
            for den in divisors(&an) {
                let r = Rational::new(num.clone(), den.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        let mut hit = false;
        while coeffs.len() > 1 {
            match deflate(&coeffs, &r) {
                Some(q) => {
                    coeffs = q;
                    hit = true;
                }
                None => break,
            }
        }
        if hit {
            roots.push(r);
        }
    }
    roots.sort();
    (roots, coeffs.len() == 1)
}

/// Divides the integer polynomial by `(x − r)` when `r` is a root, keeping integer coefficients.
fn deflate(coeffs: &[BigInt], r: &Rational) -> Option<Vec<BigInt>> {
    let mut q: Vec<Rational> = vec![Rational::zero(); coeffs.len() - 1];
    let mut acc = Rational::zero();
    for k in (1..coeffs.len()).rev() {
        acc = acc * r + Rational::from_integer(coeffs[k].clone());
        q[k - 1] = acc.clone();
    }
    if !(acc * r + Rational::from_integer(coeffs[0].clone())).is_zero() {
        return None;
    }
    let mut l = BigInt::one();
    for c in &q {
        l = l.lcm(c.denom());
    }
    Some(
        q.into_iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect(),
    )
}

/// Positive divisors of `n` by trial division. Intended for small inputs.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = match n.to_u64() {
        Some(n) => n,
        None => return vec![BigInt::one(), n.clone()],
    };
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if d > 1_000_000 {
            break;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::ExactScalar;

    fn roots_of(text: &str) -> (Vec<String>, bool) {
        let p = text.parse::<ExactScalar>().unwrap().numerator().clone();
        let (r, split) = rational_roots(&p, &Var::new("c"));
        (r.iter().map(|x| x.to_string()).collect(), split)
    }

    #[test]
    fn finds_roots_with_multiplicity_stripped() {
        assert_eq!(roots_of("c^2 - c"), (vec!["0".into(), "1".into()], true));
        assert_eq!(roots_of("(2*c + 3)^2*(c - 5)"), (vec!["-3/2".into(), "5".into()], true));
        assert_eq!(roots_of("c^2 - 2"), (vec![], false));
        assert_eq!(roots_of("(c^2 + 1)*(c - 1)/3"), (vec!["1".into()], false));
        assert_eq!(roots_of("7"), (vec![], true));
    }
}
