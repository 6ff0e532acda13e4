#![allow(dead_code)]

use std::path::PathBuf;

use orbit_closure::cli::problem::{parse_problem, OptionOverrides, ProblemSpec};
use orbit_closure::degen::{build_poset, enumerate_boundary, Boundary, DegenPoset, EnumOptions};
use orbit_closure::exactfield::ExactScalar;
use orbit_closure::modrep::{GrassPoint, ProjectiveModule};
use orbit_closure::orbit::orbit_descriptor;

pub const FIXTURES: [&str; 5] = ["ex_5_1a", "ex_5_1b", "ex_5_2", "ex_5_3", "ex_5_4"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> ProblemSpec {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_problem(&text, &OptionOverrides::default()).unwrap()
}

pub fn sc(t: &str) -> ExactScalar {
    t.parse().unwrap()
}

/// Submodule generated by elements given as `(coefficient, path)` sums.
pub fn submodule(module: &ProjectiveModule, gens: &[&[(&str, &[&str])]]) -> GrassPoint {
    let alg = module.algebra();
    let vecs: Vec<_> = gens
        .iter()
        .map(|terms| {
            let t: Vec<_> = terms
                .iter()
                .map(|(c, p)| (sc(c), alg.quiver().path(p).unwrap()))
                .collect();
            module.from_algebra(&alg.element(&t)).unwrap()
        })
        .collect();
    module.lambda_closure(&vecs)
}

pub fn boundary(spec: &ProblemSpec) -> (Boundary, DegenPoset) {
    let d = orbit_descriptor(&spec.module, &spec.c).unwrap();
    let opts = EnumOptions {
        max_exponent: spec.options.max_exponent,
        samples: spec.options.samples.clone(),
    };
    let b = enumerate_boundary(&spec.module, &d, &opts).unwrap();
    let p = build_poset(&spec.module, &d, &b);
    (b, p)
}
