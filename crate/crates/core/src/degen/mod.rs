//! Boundary of an orbit closure: limits along monomial curves, their
//! classification into strata, the degeneration poset and the Euler
//! characteristic.
//!
//! A curve with exponent vector `a` is `tᵢ = cᵢ·s^(−aᵢ)`; the coefficient of
//! the first coordinate with positive exponent is fixed to 1 (rescaling `s`
//! absorbs it), the others stay symbolic. A symbolic limit that still
//! depends on one coefficient and has 0-dimensional orbits is a family of
//! points; its special members are the points where the shape of the family
//! changes and the points it shares with the closure of another boundary
//! orbit. A family none of whose special members is shared with another
//! stratum closes up into a projective line of its own.

mod poset;

pub use poset::{build_poset, check_chi_bounds, euler_characteristic, ChiReport, DegenPoset, PosetNode};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactfield::{rational_roots, ExactScalar, Rational, Var};
use crate::grasslimit::{approach, grass_limit, limit_point};
use crate::modrep::{GrassPoint, ProjectiveModule, Subspace};
use crate::orbit::{orbit_descriptor, orbit_dim, psi_rows, same_orbit, OrbitDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CurveSpec {
    pub exponents: Vec<u32>,
}

impl CurveSpec {
    /// Coordinate whose coefficient is fixed to 1.
    pub fn fixed(&self) -> usize {
        self.exponents
            .iter()
            .position(|&a| a > 0)
            .expect("some exponent is positive")
    }

    /// Name of the symbolic coefficient of coordinate `i`.
    pub fn coeff_name(i: usize) -> String {
        format!("c{}", i + 1)
    }

    /// The curve `(t₁,…,t_m)` over ℚ(c)(s).
    pub fn coordinates(&self) -> Vec<ExactScalar> {
        let fixed = self.fixed();
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let p = ExactScalar::s_pow(-(a as i64));
                if i == fixed {
                    p
                } else {
                    ExactScalar::var(&Self::coeff_name(i)).mul(&p)
                }
            })
            .collect()
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.exponents.iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// All exponent vectors in `{0..=bound}^m` except zero, in lexicographic order.
pub fn all_curves(m: usize, bound: u32) -> Vec<CurveSpec> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    loop {
        if cur.iter().any(|&a| a > 0) {
            out.push(CurveSpec { exponents: cur.clone() });
        }
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < bound {
                cur[i] += 1;
                for x in cur.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StratumKind {
    Orbit,
    Family,
    Point,
}

impl StratumKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StratumKind::Orbit => "orbit",
            StratumKind::Family => "family",
            StratumKind::Point => "point",
        }
    }
}

/// Parameter space of a stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Point,
    AffineLine,
    /// The affine line with `r ≥ 1` points removed.
    AffineLineMinus(usize),
    ProjectiveLine,
}

impl Base {
    pub fn chi(&self) -> i64 {
        match self {
            Base::Point | Base::AffineLine => 1,
            Base::AffineLineMinus(r) => 1 - *r as i64,
            Base::ProjectiveLine => 2,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Base::Point => "point".into(),
            Base::AffineLine => "affine-line".into(),
            Base::AffineLineMinus(r) => format!("affine-line-minus-{r}-points"),
            Base::ProjectiveLine => "projective-line".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stratum {
    pub kind: StratumKind,
    /// Canonical numeric member.
    pub rep: GrassPoint,
    /// For families, the generic member over ℚ(c).
    pub family: Option<Subspace>,
    pub orbit_dim: usize,
    pub base: Base,
    pub chi: i64,
    /// Curves (and parameter limits) along which members were found.
    pub sources: Vec<String>,
}

/// Enumerated boundary: strata plus the reachability pairs collected during
/// the search (`None` is the open orbit).
#[derive(Clone, Debug)]
pub struct Boundary {
    pub strata: Vec<Stratum>,
    pub reach: Vec<(Option<usize>, usize)>,
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub max_exponent: u32,
    pub samples: Vec<Rational>,
}

/// Limit of one curve, classified by its parameter dependence.
enum Analysis {
    Single(GrassPoint),
    Param {
        generic: Subspace,
        param: Var,
        q: usize,
        samples: Vec<GrassPoint>,
        /// Closure points at the rational roots of entry numerators and
        /// denominators (`Some`) and at infinity (`None`).
        candidates: Vec<(Option<Rational>, GrassPoint)>,
    },
}

fn closure_at(generic: &Subspace, param: &Var, value: Option<&Rational>) -> Result<GrassPoint> {
    grass_limit(generic.ambient(), &approach(generic.rows(), param, value))
}

fn value_label(v: Option<&Rational>) -> String {
    v.map_or_else(|| "inf".to_string(), |x| x.to_string())
}

fn analyze(module: &ProjectiveModule, desc: &OrbitDescriptor, curve: &CurveSpec, samples: &[Rational]) -> Result<Analysis> {
    let rows = psi_rows(module, desc, &curve.coordinates());
    let lim = limit_point(module, &rows)?;
    let params = lim.variables();
    match params.len() {
        0 => return Ok(Analysis::Single(lim)),
        1 => {}
        _ => {
            return Err(Error::InconclusiveClassification(format!(
                "limit along curve {} depends on {} parameters",
                curve.label(),
                params.len()
            )))
        }
    }
    let param = params[0].clone();
    let mut values: Vec<Rational> = Vec::new();
    for x in lim.rows().iter().flatten() {
        for poly in [x.numerator(), x.denominator()] {
            if poly.is_constant() {
                continue;
            }
            let (roots, split) = rational_roots(poly, &param);
            if !split {
                return Err(Error::NotOverBaseField(format!(
                    "the limit along curve {} changes shape at a root of {} outside the rationals",
                    curve.label(),
                    poly
                )));
            }
            values.extend(roots);
        }
    }
    values.sort();
    values.dedup();
    let mut candidates = Vec::with_capacity(values.len() + 1);
    for v in &values {
        candidates.push((Some(v.clone()), closure_at(&lim, &param, Some(v))?));
    }
    candidates.push((None, closure_at(&lim, &param, None)?));
    let mut picks: Vec<Rational> = samples.iter().filter(|v| !values.contains(v)).cloned().collect();
    let mut extra = 4i64;
    while picks.len() < 2 {
        let v = Rational::from_integer(extra.into());
        if !values.contains(&v) && !picks.contains(&v) {
            picks.push(v);
        }
        extra += 1;
    }
    let sample_points = picks
        .iter()
        .map(|v| closure_at(&lim, &param, Some(v)))
        .collect::<Result<Vec<_>>>()?;
    let q = orbit_dim(module, &lim);
    Ok(Analysis::Param {
        generic: lim,
        param,
        q,
        samples: sample_points,
        candidates,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ref {
    Open,
    Orbit(usize),
    Family(usize),
    Pool(usize),
}

struct OrbitClass {
    members: Vec<GrassPoint>,
    q: usize,
    sources: Vec<String>,
}

struct FamilyClass {
    generic: Subspace,
    param: Var,
    samples: Vec<GrassPoint>,
    candidates: Vec<(Option<Rational>, GrassPoint)>,
    sources: Vec<String>,
}

struct PoolEntry {
    point: GrassPoint,
    /// Lies in the closure of a boundary orbit.
    shared: bool,
    source: String,
}

/// Pivot columns and nonzero positions of a subspace.
fn shape(s: &Subspace) -> (Vec<usize>, Vec<Vec<usize>>) {
    (
        s.pivots().to_vec(),
        s.rows()
            .iter()
            .map(|r| (0..r.len()).filter(|&j| !r[j].is_zero()).collect())
            .collect(),
    )
}

impl FamilyClass {
    fn pattern_specials(&self) -> Vec<&GrassPoint> {
        let generic = shape(&self.generic);
        let mut out: Vec<&GrassPoint> = Vec::new();
        for (_, p) in &self.candidates {
            if shape(p) != generic && !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }

    /// Whether the numeric point `p` lies on the closure of the family.
    fn contains(&self, p: &GrassPoint) -> Result<bool> {
        if self.candidates.iter().any(|(_, c)| c == p) || self.samples.contains(p) {
            return Ok(true);
        }
        if p.pivots() != self.generic.pivots() {
            return Ok(false);
        }
        // Solve generic(c) = p entrywise: gcd of the numerators of the differences.
        let mut g = crate::exactfield::MultiPoly::zero();
        for (gr, pr) in self.generic.rows().iter().zip(p.rows()) {
            for (x, y) in gr.iter().zip(pr) {
                let diff = x.sub(y);
                g = g.gcd(diff.numerator());
            }
        }
        if g.is_zero() {
            return Ok(true);
        }
        if g.is_constant() {
            return Ok(false);
        }
        let (roots, _) = rational_roots(&g, &self.param);
        for r in roots {
            if closure_at(&self.generic, &self.param, Some(&r))? == *p {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

struct Search<'a> {
    module: &'a ProjectiveModule,
    opts: &'a EnumOptions,
    orbits: Vec<OrbitClass>,
    families: Vec<FamilyClass>,
    pool: Vec<PoolEntry>,
    reach: Vec<(Ref, Ref)>,
    queue: Vec<usize>,
}

impl<'a> Search<'a> {
    fn find_orbit(&self, p: &GrassPoint, q: usize) -> Result<Option<usize>> {
        for (i, o) in self.orbits.iter().enumerate() {
            if o.q == q && same_orbit(self.module, &o.members[0], p)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    fn add_orbit_member(&mut self, p: GrassPoint, q: usize, source: String) -> Result<usize> {
        let idx = match self.find_orbit(&p, q)? {
            Some(i) => i,
            None => {
                self.orbits.push(OrbitClass {
                    members: Vec::new(),
                    q,
                    sources: Vec::new(),
                });
                self.queue.push(self.orbits.len() - 1);
                self.orbits.len() - 1
            }
        };
        let o = &mut self.orbits[idx];
        if !o.members.contains(&p) {
            o.members.push(p);
        }
        if !o.sources.contains(&source) {
            o.sources.push(source);
        }
        Ok(idx)
    }

    fn register_point(&mut self, p: GrassPoint, shared: bool, source: String) -> Result<Ref> {
        let q = orbit_dim(self.module, &p);
        if q >= 1 {
            return Ok(Ref::Orbit(self.add_orbit_member(p, q, source)?));
        }
        self.pool.push(PoolEntry { point: p, shared, source });
        Ok(Ref::Pool(self.pool.len() - 1))
    }

    fn explore(&mut self, origin: Ref, desc: &OrbitDescriptor) -> Result<()> {
        let curves = all_curves(desc.m, self.opts.max_exponent);
        let module = self.module;
        let samples = &self.opts.samples;
        let analyses: Vec<Result<Analysis>> = curves
            .par_iter()
            .map(|c| analyze(module, desc, c, samples))
            .collect();
        let shared = origin != Ref::Open;
        let prefix = match origin {
            Ref::Orbit(i) => format!("orbit#{i}:"),
            _ => String::new(),
        };
        for (curve, an) in curves.iter().zip(analyses) {
            let label = format!("{prefix}{}", curve.label());
            match an? {
                Analysis::Single(p) => {
                    let r = self.register_point(p, shared, label)?;
                    self.reach.push((origin, r));
                }
                Analysis::Param {
                    generic,
                    param,
                    q,
                    samples,
                    candidates,
                } if q >= 1 => {
                    let idx = self.add_orbit_member(samples[0].clone(), q, label.clone())?;
                    self.reach.push((origin, Ref::Orbit(idx)));
                    let rep = self.orbits[idx].members[0].clone();
                    for p in &samples[1..] {
                        if !same_orbit(module, &rep, p)? {
                            return Err(Error::InconclusiveClassification(format!(
                                "samples of the limit along curve {label} lie in different orbits"
                            )));
                        }
                        self.add_orbit_member(p.clone(), q, label.clone())?;
                    }
                    let _ = generic;
                    for (v, p) in candidates {
                        let src = format!("{label} {param}->{}", value_label(v.as_ref()));
                        if same_orbit(module, &rep, &p)? {
                            self.add_orbit_member(p, q, src)?;
                        } else {
                            let r = self.register_point(p, true, src)?;
                            self.reach.push((Ref::Orbit(idx), r));
                        }
                    }
                }
                Analysis::Param {
                    generic,
                    param,
                    samples,
                    candidates,
                    ..
                } => {
                    for (i, a) in samples.iter().enumerate() {
                        if samples[..i].contains(a) {
                            return Err(Error::InconclusiveClassification(format!(
                                "the family along curve {label} repeats a member at distinct parameter values"
                            )));
                        }
                    }
                    let mut found = None;
                    for (j, f) in self.families.iter().enumerate() {
                        let mut all = true;
                        for p in &samples {
                            if !f.contains(p)? {
                                all = false;
                                break;
                            }
                        }
                        if all {
                            found = Some(j);
                            break;
                        }
                    }
                    let j = match found {
                        Some(j) => {
                            self.families[j].sources.push(label.clone());
                            j
                        }
                        None => {
                            self.families.push(FamilyClass {
                                generic,
                                param: param.clone(),
                                samples,
                                candidates: candidates.clone(),
                                sources: vec![label.clone()],
                            });
                            self.families.len() - 1
                        }
                    };
                    self.reach.push((origin, Ref::Family(j)));
                    for (v, p) in candidates {
                        let src = format!("{label} {param}->{}", value_label(v.as_ref()));
                        let r = self.register_point(p, shared, src)?;
                        self.reach.push((origin, r));
                    }
                }
            }
        }
        Ok(())
    }

    fn run(&mut self, open: &OrbitDescriptor) -> Result<()> {
        self.explore(Ref::Open, open)?;
        let mut next = 0;
        while next < self.queue.len() {
            let idx = self.queue[next];
            next += 1;
            let rep = self.orbits[idx].members[0].clone();
            let desc = orbit_descriptor(self.module, &rep)?;
            self.explore(Ref::Orbit(idx), &desc)?;
        }
        Ok(())
    }
}

fn least(points: &[GrassPoint]) -> GrassPoint {
    points
        .iter()
        .min_by_key(|p| p.canonical_key())
        .expect("nonempty")
        .clone()
}

/// Enumerates and classifies the boundary of the orbit closure of `desc`.
pub fn enumerate_boundary(module: &ProjectiveModule, desc: &OrbitDescriptor, opts: &EnumOptions) -> Result<Boundary> {
    let mut search = Search {
        module,
        opts,
        orbits: Vec::new(),
        families: Vec::new(),
        pool: Vec::new(),
        reach: Vec::new(),
        queue: Vec::new(),
    };
    if desc.m > 0 {
        search.run(desc)?;
    }
    let Search {
        orbits,
        families,
        pool,
        reach,
        ..
    } = search;

    // Special members of each family and whether they are shared.
    let pattern: Vec<Vec<GrassPoint>> = families
        .iter()
        .map(|f| f.pattern_specials().into_iter().cloned().collect())
        .collect();
    let mut specials: Vec<Vec<GrassPoint>> = pattern.clone();
    for (j, f) in families.iter().enumerate() {
        for e in pool.iter().filter(|e| e.shared) {
            if !specials[j].contains(&e.point) && f.contains(&e.point)? {
                specials[j].push(e.point.clone());
            }
        }
    }
    let absorbed: Vec<bool> = (0..families.len())
        .map(|j| {
            !specials[j].iter().any(|p| {
                pool.iter().any(|e| e.shared && e.point == *p)
                    || pattern
                        .iter()
                        .enumerate()
                        .any(|(k, other)| k != j && other.contains(p))
            })
        })
        .collect();

    // Final classes: orbit classes, families, then point classes from the pool.
    let mut point_classes: Vec<(GrassPoint, Vec<String>)> = Vec::new();
    let mut pool_class: Vec<Ref> = Vec::with_capacity(pool.len());
    let mut family_sources: Vec<Vec<String>> = families.iter().map(|f| f.sources.clone()).collect();
    for e in &pool {
        if let Some(k) = point_classes.iter().position(|(p, _)| *p == e.point) {
            point_classes[k].1.push(e.source.clone());
            pool_class.push(Ref::Pool(k));
            continue;
        }
        let mut home = None;
        for (j, f) in families.iter().enumerate() {
            if f.contains(&e.point)? {
                home = Some(j);
                break;
            }
        }
        match home {
            Some(j) if absorbed[j] || !specials[j].contains(&e.point) => {
                family_sources[j].push(e.source.clone());
                pool_class.push(Ref::Family(j));
            }
            _ => {
                point_classes.push((e.point.clone(), vec![e.source.clone()]));
                pool_class.push(Ref::Pool(point_classes.len() - 1));
            }
        }
    }

    let mut strata: Vec<(Ref, Stratum)> = Vec::new();
    for (i, o) in orbits.iter().enumerate() {
        strata.push((
            Ref::Orbit(i),
            Stratum {
                kind: StratumKind::Orbit,
                rep: least(&o.members),
                family: None,
                orbit_dim: o.q,
                base: Base::Point,
                chi: 1,
                sources: o.sources.clone(),
            },
        ));
    }
    for (j, f) in families.iter().enumerate() {
        let base = if absorbed[j] {
            Base::ProjectiveLine
        } else if specials[j].len() == 1 {
            Base::AffineLine
        } else {
            Base::AffineLineMinus(specials[j].len() - 1)
        };
        let c = Var::new("c");
        let generic = Subspace::from_rows(
            f.generic.ambient(),
            f.generic
                .rows()
                .iter()
                .map(|r| r.iter().map(|x| x.rename(&f.param, &c)).collect())
                .collect(),
        );
        strata.push((
            Ref::Family(j),
            Stratum {
                kind: StratumKind::Family,
                rep: least(&f.samples),
                family: Some(generic),
                orbit_dim: 0,
                base,
                chi: base.chi(),
                sources: family_sources[j].clone(),
            },
        ));
    }
    for (k, (p, src)) in point_classes.iter().enumerate() {
        strata.push((
            Ref::Pool(k),
            Stratum {
                kind: StratumKind::Point,
                rep: p.clone(),
                family: None,
                orbit_dim: 0,
                base: Base::Point,
                chi: 1,
                sources: src.clone(),
            },
        ));
    }
    strata.sort_by(|(_, a), (_, b)| {
        b.orbit_dim
            .cmp(&a.orbit_dim)
            .then(a.kind.cmp(&b.kind))
            .then_with(|| a.rep.canonical_key().cmp(&b.rep.canonical_key()))
    });
    let position = |r: Ref| -> usize {
        let r = match r {
            Ref::Pool(i) => pool_class[i],
            other => other,
        };
        strata.iter().position(|(x, _)| *x == r).expect("every class is a stratum")
    };
    let mut pairs: Vec<(Option<usize>, usize)> = Vec::new();
    for (a, b) in &reach {
        let from = match a {
            Ref::Open => None,
            other => Some(position(*other)),
        };
        let to = position(*b);
        if from != Some(to) && !pairs.contains(&(from, to)) {
            pairs.push((from, to));
        }
    }
    pairs.sort();
    Ok(Boundary {
        strata: strata.into_iter().map(|(_, s)| s).collect(),
        reach: pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::problem::{parse_problem, OptionOverrides};

    fn run(doc: &str) -> (Boundary, DegenPoset) {
        let spec = parse_problem(doc, &OptionOverrides::default()).unwrap();
        let d = orbit_descriptor(&spec.module, &spec.c).unwrap();
        let opts = EnumOptions {
            max_exponent: spec.options.max_exponent,
            samples: spec.options.samples.clone(),
        };
        let b = enumerate_boundary(&spec.module, &d, &opts).unwrap();
        let p = build_poset(&spec.module, &d, &b);
        (b, p)
    }

    #[test]
    fn curve_order() {
        let c: Vec<String> = all_curves(2, 1).iter().map(CurveSpec::label).collect();
        assert_eq!(c, ["(0,1)", "(1,0)", "(1,1)"]);
    }

    #[test]
    fn fixture_posets_round_trip_within_bounds() {
        for doc in [
            include_str!("../../fixtures/ex_5_1a.json"),
            include_str!("../../fixtures/ex_5_1b.json"),
            include_str!("../../fixtures/ex_5_2.json"),
            include_str!("../../fixtures/ex_5_3.json"),
            include_str!("../../fixtures/ex_5_4.json"),
        ] {
            let (_, p) = run(doc);
            assert!(check_chi_bounds(&p).complete, "{}", p.to_text());
            assert_eq!(DegenPoset::from_json(&p.to_json()).unwrap(), p);
        }
    }
}
