mod common;

use proptest::prelude::*;

use common::{boundary, fixture, FIXTURES};
use orbit_closure::cli::problem::ProblemSpec;
use orbit_closure::exactfield::{ExactScalar, Rational, Var};
use orbit_closure::grasslimit::{dvr_saturate, grass_limit, plucker_limit};
use orbit_closure::linalg::rank;
use orbit_closure::modrep::ProjectiveModule;
use orbit_closure::orbit::{orbit_descriptor, orbit_dim, psi, same_orbit};
use orbit_closure::surface_lab::{blow_down, blow_up_named, BlowPoint, CurveConfig};

fn specs() -> &'static [ProblemSpec] {
    use std::sync::OnceLock;
    static SPECS: OnceLock<Vec<ProblemSpec>> = OnceLock::new();
    SPECS.get_or_init(|| FIXTURES.iter().map(|n| fixture(n)).collect())
}

/// Σ k·s^a·c^b over the given terms.
fn poly(terms: &[(i64, u8, u8)]) -> ExactScalar {
    let c = ExactScalar::var("c");
    terms.iter().fold(ExactScalar::zero(), |acc, &(k, a, b)| {
        acc.add(&ExactScalar::from_int(k).mul(&ExactScalar::s_pow(a as i64)).mul(&c.pow(b as i64)))
    })
}

fn terms() -> impl Strategy<Value = Vec<(i64, u8, u8)>> {
    prop::collection::vec((-4i64..=4, 0u8..=3, 0u8..=2), 0..4)
}

/// Sparser entries, linear in `c`, keep the saturation test fast.
fn entry_terms() -> impl Strategy<Value = Vec<(i64, u8, u8)>> {
    prop::collection::vec((-3i64..=3, 0u8..=3, 0u8..=1), 0..3)
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (terms(), terms(), 0i64..=2).prop_map(|(n, d, k)| {
        let den = poly(&d);
        let den = if den.is_zero() { ExactScalar::one() } else { den };
        poly(&n).div(&den).mul(&ExactScalar::s_pow(-k))
    })
}

fn nonzero_scalar() -> impl Strategy<Value = ExactScalar> {
    scalar().prop_filter("nonzero", |x| !x.is_zero())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn eval(x: &ExactScalar, s: f64, c: f64) -> f64 {
    x.eval_f64(&|v: &Var| if v.is_curve() { s } else { c })
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-6 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_is_multiplicative(x in nonzero_scalar(), y in nonzero_scalar()) {
        let o = |z: &ExactScalar| z.ord_s().unwrap();
        prop_assert_eq!(o(&x.mul(&y)), o(&x) + o(&y));
    }

    #[test]
    fn valuation_of_sum(x in nonzero_scalar(), y in nonzero_scalar()) {
        let sum = x.add(&y);
        if let Some(o) = sum.ord_s() {
            prop_assert!(o >= x.ord_s().unwrap().min(y.ord_s().unwrap()));
        }
    }

    #[test]
    fn specializations_commute(x in scalar(), a in small_rational(), b in small_rational()) {
        let (s, c) = (Var::curve(), Var::new("c"));
        let one = x.specialize(&s, &a).and_then(|y| y.specialize(&c, &b));
        let two = x.specialize(&c, &b).and_then(|y| y.specialize(&s, &a));
        if let (Ok(p), Ok(q)) = (one, two) {
            prop_assert_eq!(p, q);
        }
    }

    #[test]
    fn arithmetic_matches_floats(x in scalar(), y in nonzero_scalar(), s in 1i64..=5, c in -3i64..=3) {
        // Points where a denominator vanishes are skipped by the finiteness checks.
        let (sf, cf) = (s as f64 / 3.0 + 0.17, c as f64 / 2.0 + 0.31);
        let (xv, yv) = (eval(&x, sf, cf), eval(&y, sf, cf));
        prop_assume!(xv.is_finite() && yv.is_finite() && yv.abs() > 1e-9 && xv.abs() < 1e6 && yv.abs() < 1e6);
        prop_assert!(close(eval(&x.add(&y), sf, cf), xv + yv));
        prop_assert!(close(eval(&x.sub(&y), sf, cf), xv - yv));
        prop_assert!(close(eval(&x.mul(&y), sf, cf), xv * yv));
        prop_assert!(close(eval(&x.div(&y), sf, cf), xv / yv));
    }

    #[test]
    fn canonical_text_round_trips(x in scalar()) {
        let back: ExactScalar = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn algebra_is_associative(f in 0usize..5, i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let alg = specs()[f].module.algebra();
        let n = alg.dim();
        let (x, y, z) = (alg.basis_element(i % n), alg.basis_element(j % n), alg.basis_element(k % n));
        prop_assert_eq!(alg.multiply(&alg.multiply(&x, &y), &z), alg.multiply(&x, &alg.multiply(&y, &z)));
    }

    #[test]
    fn saturation_agrees_with_pluecker(
        n in 2usize..=5,
        d in 1usize..=3,
        raw in prop::collection::vec((entry_terms(), 0i64..=2), 15),
    ) {
        let d = d.min(n);
        let rows: Vec<Vec<ExactScalar>> = (0..d)
            .map(|r| (0..n).map(|j| {
                let (t, k) = &raw[(r * n + j) % raw.len()];
                poly(t).mul(&ExactScalar::s_pow(-k))
            }).collect())
            .collect();
        prop_assume!(rank(&rows) == d);
        let sat = dvr_saturate(&rows).unwrap();
        prop_assert!(sat.b.iter().flatten().all(|x| x.ord_s().is_none_or(|o| o >= 0)));
        let lim = grass_limit(n, &rows).unwrap();
        prop_assert_eq!(lim.dim(), d);
        prop_assert_eq!(lim, plucker_limit(n, &rows).unwrap());
    }

    #[test]
    fn psi_points_share_the_orbit(f in 0usize..5, t in prop::collection::vec(small_rational(), 2)) {
        let spec = &specs()[f];
        let d = orbit_descriptor(&spec.module, &spec.c).unwrap();
        let coords: Vec<ExactScalar> = t.iter().take(d.m).map(|x| ExactScalar::from_rational(x.clone())).collect();
        let p = psi(&spec.module, &d, &coords);
        prop_assert!(spec.module.is_lambda_stable(&p));
        prop_assert!(same_orbit(&spec.module, &spec.c, &p).unwrap());
        prop_assert!(same_orbit(&spec.module, &p, &spec.c).unwrap());
        prop_assert!(same_orbit(&spec.module, &p, &p).unwrap());
    }

    #[test]
    fn unit_action_composes(f in 0usize..5, u in prop::collection::vec(-3i64..=3, 2), v in prop::collection::vec(-3i64..=3, 2)) {
        let m: &ProjectiveModule = &specs()[f].module;
        let alg = m.algebra();
        let unit = |coeffs: &[i64]| {
            let mut x = vec![ExactScalar::zero(); alg.dim()];
            x[alg.idempotent(m.top())] = ExactScalar::one();
            for (k, &i) in m.cycles().iter().enumerate() {
                x[i] = ExactScalar::from_int(coeffs[k % coeffs.len()]);
            }
            x
        };
        let (u, v) = (unit(&u), unit(&v));
        let c = &specs()[f].c;
        prop_assert_eq!(
            m.right_multiply(&m.right_multiply(c, &u), &v),
            m.right_multiply(c, &alg.multiply(&u, &v))
        );
    }

    #[test]
    fn blow_ups_and_downs_track_picard_rank(steps in prop::collection::vec((0u8..3, 0usize..16), 1..12)) {
        let mut cfg = CurveConfig::x0();
        for (kind, k) in steps {
            let before = cfg.clone();
            let point = match kind {
                0 => BlowPoint::Free,
                1 => BlowPoint::OnCurve(cfg.curves[k % cfg.curves.len()].name.clone()),
                _ if !cfg.crossings.is_empty() => {
                    let (a, b) = cfg.crossings[k % cfg.crossings.len()].clone();
                    BlowPoint::Crossing(a, b)
                }
                _ => BlowPoint::Free,
            };
            let (up, e) = blow_up_named(&cfg, &point).unwrap();
            prop_assert_eq!(up.picard_rank, before.picard_rank + 1);
            prop_assert_eq!(blow_down(&up, &e).unwrap(), before.clone());
            cfg = up;
            // Contract some other (-1)-curve when there is one.
            if let Some(c) = cfg.curves.iter().find(|c| c.self_int == -1 && c.name != e).cloned() {
                let down = blow_down(&cfg, &c.name).unwrap();
                prop_assert_eq!(down.picard_rank + 1, cfg.picard_rank);
                for d in &down.curves {
                    prop_assert!(d.self_int >= cfg.self_intersection(&d.name).unwrap());
                }
                cfg = down;
            }
        }
    }
}

#[test]
fn strata_are_pairwise_distinct_and_smaller() {
    for spec in specs() {
        let m = &spec.module;
        let top = orbit_dim(m, &spec.c);
        let (b, _) = boundary(spec);
        for (i, s) in b.strata.iter().enumerate() {
            assert!(m.is_lambda_stable(&s.rep));
            assert_eq!(s.rep.dim(), spec.c.dim());
            assert!(orbit_dim(m, &s.rep) < top);
            for t in &b.strata[i + 1..] {
                assert!(!same_orbit(m, &s.rep, &t.rep).unwrap());
            }
        }
    }
}

#[test]
fn boundary_orbits_close_inside_the_poset() {
    use orbit_closure::degen::{enumerate_boundary, EnumOptions, StratumKind};
    for spec in specs() {
        let m = &spec.module;
        let (b, _) = boundary(spec);
        for s in b.strata.iter().filter(|s| s.kind == StratumKind::Orbit) {
            let d = orbit_descriptor(m, &s.rep).unwrap();
            let opts = EnumOptions {
                max_exponent: spec.options.max_exponent,
                samples: spec.options.samples.clone(),
            };
            for inner in enumerate_boundary(m, &d, &opts).unwrap().strata {
                assert!(b.strata.iter().any(|t| t.rep == inner.rep));
            }
        }
    }
}

#[test]
fn relations_vanish_and_identity_acts() {
    for spec in specs() {
        let alg = spec.module.algebra();
        for r in alg.relations() {
            let mut total = vec![Rational::from_integer(0.into()); alg.dim()];
            for (c, p) in &r.terms {
                for (t, x) in total.iter_mut().zip(alg.normal_form(p)) {
                    *t += c * x;
                }
            }
            assert!(total.iter().all(|x| *x == Rational::from_integer(0.into())));
        }
        let mut one = vec![ExactScalar::zero(); alg.dim()];
        for v in 0..alg.quiver().vertices.len() {
            one[alg.idempotent(v)] = ExactScalar::one();
        }
        for i in 0..alg.dim() {
            let x = alg.basis_element(i);
            assert_eq!(alg.multiply(&one, &x), x);
            assert_eq!(alg.multiply(&x, &one), x);
        }
    }
}
