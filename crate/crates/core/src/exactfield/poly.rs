//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`] under a lexicographic
//! order in which the curve symbol `s` is the most significant variable, so
//! the last entry of the map is always the leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Name of the distinguished curve parameter.
pub const CURVE_SYMBOL: &str = "s";

/// A polynomial indeterminate. Ordered by name, except that `s` sorts after
/// every other symbol.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn curve() -> Self {
        Var::new(CURVE_SYMBOL)
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_curve(&self) -> bool {
        &*self.0 == CURVE_SYMBOL
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.is_curve(), &*self.0).cmp(&(other.is_curve(), &*other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Power product of variables, stored sorted ascending by variable with
/// strictly positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map_or(0, |(_, e)| *e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v.clone(), e - f)),
                }
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// The monomial with variable `v` removed.
    pub fn without(&self, v: &Var) -> Monomial {
        Monomial(self.0.iter().filter(|(w, _)| w != v).cloned().collect())
    }

    pub fn max_var(&self) -> Option<&Var> {
        self.0.last().map(|(v, _)| v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0.iter().rev();
        let mut b = other.0.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => {
                    let ord = va.cmp(vb).then(ea.cmp(eb));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with rational coefficients; no stored term is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(Monomial::var_pow(v, 1), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if this polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    /// All variables occurring with positive exponent, ascending.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| v.clone()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.terms.keys().any(|m| m.degree_in(v) > 0)
    }

    pub fn max_var(&self) -> Option<Var> {
        self.terms.keys().filter_map(|m| m.max_var()).max().cloned()
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    /// Smallest exponent of `v` over all terms: the multiplicity of `v` as a factor.
    pub fn min_degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).min().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, k: &Rational) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = MultiPoly::zero();
        for (m, c) in &small.terms {
            for (n, d) in &large.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        let (lm, lc) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        // An exact quotient has degree deg(self) - deg(divisor) in every variable.
        let mut bound = Vec::new();
        for v in divisor.variables() {
            bound.push((self.degree_in(&v).checked_sub(divisor.degree_in(&v))?, v));
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading() {
            let q = m.div(&lm)?;
            if bound.iter().any(|(b, v)| q.degree_in(v) > *b) {
                return None;
            }
            let k = c / &lc;
            rem = rem.sub(&divisor.mul_monomial(&q, &k));
            quot.add_term(q, k);
        }
        Some(quot)
    }

    /// Divides out the largest power of `v` that divides every term.
    pub fn strip_var(&self, v: &Var, e: u32) -> MultiPoly {
        if e == 0 {
            return self.clone();
        }
        let m = Monomial::var_pow(v.clone(), e);
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.div(&m).expect("variable power divides term"), c.clone()))
                .collect(),
        }
    }

    /// Coefficients with respect to `v`: `self = Σ coeff[k]·v^k`.
    pub fn coefficients_in(&self, v: &Var) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.degree_in(v);
            out.entry(k).or_default().add_term(m.without(v), c.clone());
        }
        out
    }

    fn from_coefficients(v: &Var, coeffs: &BTreeMap<u32, MultiPoly>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (k, p) in coeffs {
            let vk = Monomial::var_pow(v.clone(), *k);
            for (m, c) in &p.terms {
                out.add_term(m.mul(&vk), c.clone());
            }
        }
        out
    }

    /// Scales so that the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => MultiPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Greatest common divisor, normalized to be monic. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return MultiPoly::one();
        }
        if self == other {
            return self.monic();
        }
        // Shared monomial content first; it is cheap and common (powers of s).
        // Eliminate in the variable of least degree; remainder sequences in a
        // high-degree variable blow up the coefficients in the others.
        let mut vars = self.variables();
        vars.extend(other.variables());
        let v = vars
            .into_iter()
            .min_by_key(|x| (self.degree_in(x).max(other.degree_in(x)), std::cmp::Reverse(x.clone())))
            .expect("non-constant");
        match (self.contains_var(&v), other.contains_var(&v)) {
            (true, false) => return self.content_in(&v).gcd(other),
            (false, true) => return self.gcd(&other.content_in(&v)),
            _ => {}
        }
        let ca = self.content_in(&v);
        let cb = other.content_in(&v);
        let content = ca.gcd(&cb);
        let mut f = self.div_exact(&ca).expect("content divides");
        let mut g = other.div_exact(&cb).expect("content divides");
        match gcd_degree_at_point(&f, &g, &v) {
            Some(0) => return content.monic(),
            Some(k) => {
                // The image gcd bounds the true degree from above; when it equals a
                // full degree, that polynomial is the gcd if it divides the other.
                for (a, b) in [(&f, &g), (&g, &f)] {
                    if k == b.degree_in(&v) && a.div_exact(b).is_some() {
                        return content.mul(b).monic();
                    }
                }
            }
            None => {}
        }
        if f.variables().len() > 1 || g.variables().len() > 1 {
            return content.mul(&interpolation_gcd(&f, &g)).monic();
        }
        if f.degree_in(&v) < g.degree_in(&v) {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            let r = f.pseudo_rem(&g, &v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(&v) == 0 {
                return content.monic();
            }
            f = g;
            g = r.primitive_part_in(&v);
        }
        content.mul(&g.primitive_part_in(&v)).monic()
    }

    /// Gcd of the coefficients with respect to `v`.
    pub fn content_in(&self, v: &Var) -> MultiPoly {
        let coeffs = self.coefficients_in(v);
        let mut g = MultiPoly::zero();
        for c in coeffs.values() {
            g = g.gcd(c);
            if g.is_constant() && !g.is_zero() {
                return MultiPoly::one();
            }
        }
        g
    }

    pub fn primitive_part_in(&self, v: &Var) -> MultiPoly {
        if self.is_zero() {
            return MultiPoly::zero();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides").integer_primitive()
    }

    /// Scalar multiple with coprime integer coefficients and positive leading
    /// coefficient. Keeps remainder sequences free of rational coefficient growth.
    fn integer_primitive(&self) -> MultiPoly {
        let (p, _) = self.clear_denominators();
        let mut g = BigInt::zero();
        for c in p.terms.values() {
            g = num_integer::Integer::gcd(&g, c.numer());
            if g.is_one() {
                break;
            }
        }
        if p.has_negative_leading() {
            g = -g;
        }
        if g.is_one() {
            p
        } else {
            p.scale(&Rational::from_integer(g).recip())
        }
    }

    /// Pseudo-remainder of `self` by `g` as polynomials in `v`, up to a unit factor.
    fn pseudo_rem(&self, g: &MultiPoly, v: &Var) -> MultiPoly {
        let dg = g.degree_in(v);
        let gc = g.coefficients_in(v);
        let lg = gc[&dg].clone();
        let mut r = self.clone();
        while !r.is_zero() {
            let dr = r.degree_in(v);
            if dr < dg {
                break;
            }
            let rc = r.coefficients_in(v);
            let lr = &rc[&dr];
            let mut shifted = BTreeMap::new();
            for (k, c) in &gc {
                shifted.insert(k + dr - dg, c.mul(lr));
            }
            r = r.mul(&lg).sub(&MultiPoly::from_coefficients(v, &shifted));
        }
        r
    }

    /// Substitutes a rational value for `v`.
    pub fn specialize(&self, v: &Var, value: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let k = m.degree_in(v);
            let factor = if k == 0 {
                c.clone()
            } else {
                c * num_traits::pow(value.clone(), k as usize)
            };
            out.add_term(m.without(v), factor);
        }
        out
    }

    /// Polynomial composition: replaces `v` with the polynomial `value`.
    pub fn compose(&self, v: &Var, value: &MultiPoly) -> MultiPoly {
        let coeffs = self.coefficients_in(v);
        let top = match coeffs.keys().next_back() {
            None => return MultiPoly::zero(),
            Some(t) => *t,
        };
        let mut acc = MultiPoly::zero();
        for k in (0..=top).rev() {
            acc = acc.mul(value);
            if let Some(c) = coeffs.get(&k) {
                acc = acc.add(c);
            }
        }
        acc
    }

    /// Evaluates at a floating-point assignment; unassigned variables panic.
    pub fn eval_f64(&self, at: &dyn Fn(&Var) -> f64) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut x = c.to_f64().unwrap_or(f64::NAN);
                for (v, e) in m.factors() {
                    x *= at(v).powi(*e as i32);
                }
                x
            })
            .sum()
    }

    /// Multiplies by the lcm of coefficient denominators, giving integer coefficients.
    pub fn clear_denominators(&self) -> (MultiPoly, BigInt) {
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        (self.scale(&Rational::from_integer(l.clone())), l)
    }

    pub(crate) fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub(crate) fn has_negative_leading(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending monomial order, e.g. `2*c1^2*s - 3/2*s + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Degree in `v` of the gcd of the images of `f` and `g` under a
/// specialization of the other variables that keeps both leading
/// coefficients in `v` nonzero. For `f`, `g` primitive in `v` this bounds the
/// degree of their gcd from above, and 0 means they are coprime.
fn gcd_degree_at_point(f: &MultiPoly, g: &MultiPoly, v: &Var) -> Option<u32> {
    let mut others: Vec<Var> = f.variables();
    others.extend(g.variables());
    others.sort();
    others.dedup();
    others.retain(|x| x != v);
    if others.is_empty() {
        return None;
    }
    let lf = f.coefficients_in(v).pop_last().expect("nonzero").1;
    let lg = g.coefficients_in(v).pop_last().expect("nonzero").1;
    for attempt in 0..4i64 {
        let point: Vec<Rational> = (0..others.len() as i64)
            .map(|i| Rational::from_integer((3 + 7 * attempt + 2 * i).into()))
            .collect();
        let at = |p: &MultiPoly| {
            others
                .iter()
                .zip(&point)
                .fold(p.clone(), |acc, (x, val)| acc.specialize(x, val))
        };
        if at(&lf).is_zero() || at(&lg).is_zero() {
            continue;
        }
        return Some(at(f).gcd(&at(g)).degree_in(v));
    }
    None
}

/// Splits `p` as content times primitive part, viewing it as a polynomial in
/// the other variables with coefficients in `k[y]`.
fn split_content_over(p: &MultiPoly, y: &Var) -> (MultiPoly, MultiPoly) {
    let mut groups: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
    for (m, c) in &p.terms {
        groups
            .entry(m.without(y))
            .or_default()
            .add_term(Monomial::var_pow(y.clone(), m.degree_in(y)), c.clone());
    }
    let content = groups.values().fold(MultiPoly::zero(), |acc, c| acc.gcd(c));
    let prim = p.div_exact(&content).expect("content divides");
    (content, prim)
}

/// Leading coefficient in `k[y]` with respect to the other variables.
fn leading_over(p: &MultiPoly, y: &Var) -> MultiPoly {
    let key = p.terms.keys().map(|m| m.without(y)).max().expect("nonzero");
    let mut out = MultiPoly::zero();
    for (m, c) in &p.terms {
        if m.without(y) == key {
            out.add_term(Monomial::var_pow(y.clone(), m.degree_in(y)), c.clone());
        }
    }
    out
}

/// Gcd of polynomials in two or more variables: specialize the variable of
/// highest degree at integer points, take gcds of the images, interpolate, and
/// confirm by trial division.
fn interpolation_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let mut vars = f.variables();
    vars.extend(g.variables());
    vars.sort();
    vars.dedup();
    let y = vars
        .iter()
        .max_by_key(|x| (f.degree_in(x).max(g.degree_in(x)), (*x).clone()))
        .expect("non-constant")
        .clone();
    let (cf, pf) = split_content_over(f, &y);
    let (cg, pg) = split_content_over(g, &y);
    let content = cf.gcd(&cg);
    if pf.is_constant() || pg.is_constant() {
        return content;
    }
    let (lf, lg) = (leading_over(&pf, &y), leading_over(&pg, &y));
    let gamma = lf.gcd(&lg);
    let yv = MultiPoly::var(y.clone());
    // Interpolant, its leading monomial, and the product of (y - a) over used points.
    let mut interp: Option<(MultiPoly, Monomial, MultiPoly)> = None;
    let bound = gamma.degree_in(&y) + pf.degree_in(&y).min(pg.degree_in(&y));
    for a in 1i64.. {
        // Only finitely many points are unlucky.
        assert!(a < 64 + 16 * i64::from(bound), "interpolation gcd did not converge");
        let at = Rational::from_integer(a.into());
        if lf.specialize(&y, &at).is_zero() || lg.specialize(&y, &at).is_zero() {
            continue;
        }
        let h = pf.specialize(&y, &at).gcd(&pg.specialize(&y, &at));
        if h.is_constant() {
            return content;
        }
        let h = h.scale(&gamma.specialize(&y, &at).as_constant().expect("univariate in y"));
        let lm = h.leading().expect("nonzero").0.clone();
        let linear = yv.sub(&MultiPoly::constant(at.clone()));
        let candidate = match interp.take() {
            Some((p, plm, q)) if lm == plm => {
                let diff = h.sub(&p.specialize(&y, &at));
                if diff.is_zero() {
                    interp = Some((p.clone(), plm, q.mul(&linear)));
                    Some(p)
                } else {
                    let qa = q.specialize(&y, &at).as_constant().expect("univariate in y");
                    let p = p.add(&diff.mul(&q).scale(&qa.recip()));
                    interp = Some((p, plm, q.mul(&linear)));
                    None
                }
            }
            // A larger image means this point is unlucky.
            Some(prev) if lm > prev.1 => {
                interp = Some(prev);
                None
            }
            _ => {
                interp = Some((h, lm, linear));
                None
            }
        };
        if let Some(p) = candidate {
            let (_, h) = split_content_over(&p, &y);
            if pf.div_exact(&h).is_some() && pg.div_exact(&h).is_some() {
                return content.mul(&h);
            }
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::new("x"))
    }
    fn y() -> MultiPoly {
        MultiPoly::var(Var::new("y"))
    }
    fn s() -> MultiPoly {
        MultiPoly::var(Var::curve())
    }
    fn k(n: i64) -> MultiPoly {
        MultiPoly::constant(Rational::from_integer(n.into()))
    }

    #[test]
    fn curve_symbol_is_most_significant() {
        let p = s().add(&x().pow(5));
        assert_eq!(p.leading().unwrap().0, &Monomial::var_pow(Var::curve(), 1));
        assert_eq!(p.to_string(), "s + x^5");
    }

    #[test]
    fn exact_division_and_remainders() {
        let a = x().add(&y());
        let b = x().sub(&y());
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.add(&k(1)).div_exact(&a), None);
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let common = x().mul(&y()).add(&s()).add(&k(2));
        let a = common.mul(&x().sub(&k(3)));
        let b = common.mul(&y().pow(2).add(&s()));
        assert_eq!(a.gcd(&b), common.monic());
        assert_eq!(x().gcd(&y()), MultiPoly::one());
    }

    #[test]
    fn gcd_by_interpolation_with_non_leading_cofactors() {
        // Cofactors whose leading terms sit in different variables, and a gcd
        // whose leading coefficient in the other variable is not constant.
        let common = s().pow(2).mul(&x()).add(&x().pow(3)).add(&s()).sub(&k(4));
        let a = common.mul(&s().pow(3).add(&x().pow(2).scale(&Rational::new(3.into(), 2.into()))));
        let b = common.mul(&x().pow(4).sub(&s().mul(&x())).add(&k(7)));
        let g = a.gcd(&b);
        assert_eq!(g, common.monic());
        assert!(a.div_exact(&g).is_some() && b.div_exact(&g).is_some());
        assert_eq!(a.div_exact(&g).unwrap().gcd(&b.div_exact(&g).unwrap()), MultiPoly::one());
    }

    #[test]
    fn div_exact_rejects_remainders() {
        let a = s().pow(10);
        let b = s().add(&x().pow(5));
        assert!(a.div_exact(&b).is_none());
        assert_eq!(a.mul(&b).div_exact(&b), Some(a));
    }

    #[test]
    fn gcd_of_powers_of_curve_symbol() {
        let a = s().pow(3).mul(&x());
        let b = s().pow(2).mul(&y().add(&k(1)));
        assert_eq!(a.gcd(&b), s().pow(2));
    }

    #[test]
    fn compose_substitutes_polynomials() {
        // (x^2 + 1) with x := y + 1
        let p = x().pow(2).add(&k(1));
        let q = p.compose(&Var::new("x"), &y().add(&k(1)));
        assert_eq!(q, y().pow(2).add(&y().scale(&Rational::from_integer(2.into()))).add(&k(2)));
    }
}
