//! JSON problem documents: quiver, relations, top vertex, submodule generators.

use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exactfield::{parse_rational, ExactScalar, Rational};
use crate::modrep::{projective_cover, GrassPoint, ProjectiveModule};
use crate::pathalg::{build_algebra, Path, Quiver, Relation};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    name: String,
    source: String,
    target: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuiver {
    vertices: Vec<String>,
    arrows: Vec<RawArrow>,
}

fn one() -> String {
    "1".into()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    #[serde(default = "one")]
    coeff: String,
    path: Vec<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    max_exponent: Option<u32>,
    samples: Option<Vec<String>>,
    length_cap: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    quiver: RawQuiver,
    #[serde(default)]
    relations: Vec<Vec<RawTerm>>,
    top_vertex: String,
    #[serde(rename = "C")]
    c: Vec<Vec<RawTerm>>,
    #[serde(default)]
    options: Option<RawOptions>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub max_exponent: u32,
    pub samples: Vec<Rational>,
    pub length_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_exponent: 4,
            samples: [-2, -1, 1, 2, 3].iter().map(|&n| Rational::from_integer(n.into())).collect(),
            length_cap: 32,
        }
    }
}

/// Option values given on the command line; they take precedence over the document.
#[derive(Clone, Debug, Default)]
pub struct OptionOverrides {
    pub max_exponent: Option<u32>,
    pub samples: Option<Vec<Rational>>,
    pub length_cap: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub module: ProjectiveModule,
    /// Submodule generated by the listed generators.
    pub c: GrassPoint,
    pub options: Options,
}

fn parse_path(q: &Quiver, names: &[String]) -> Result<Path> {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    q.path(&refs)
}

pub fn parse_samples(csv: &str) -> Result<Vec<Rational>> {
    csv.split(',').map(|t| parse_rational(t.trim())).collect()
}

pub fn parse_problem(text: &str, overrides: &OptionOverrides) -> Result<ProblemSpec> {
    let raw: RawProblem =
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
    let vertices: Vec<&str> = raw.quiver.vertices.iter().map(String::as_str).collect();
    let arrows: Vec<(&str, &str, &str)> = raw
        .quiver
        .arrows
        .iter()
        .map(|a| (a.name.as_str(), a.source.as_str(), a.target.as_str()))
        .collect();
    let quiver = Quiver::new(&vertices, &arrows)?;
    let top = quiver.vertex_index(&raw.top_vertex)?;

    let mut relations = Vec::new();
    for r in &raw.relations {
        let mut terms = Vec::new();
        for t in r {
            if t.path.is_empty() {
                return Err(Error::NotAdmissible("relation term is a trivial path".into()));
            }
            terms.push((parse_rational(&t.coeff)?, parse_path(&quiver, &t.path)?));
        }
        relations.push(Relation { terms });
    }

    let ro = raw.options.unwrap_or_default();
    let mut options = Options::default();
    if let Some(e) = ro.max_exponent {
        options.max_exponent = e;
    }
    if let Some(s) = ro.samples {
        options.samples = s.iter().map(|t| parse_rational(t)).collect::<Result<_>>()?;
    }
    if let Some(l) = ro.length_cap {
        options.length_cap = l;
    }
    if let Some(e) = overrides.max_exponent {
        options.max_exponent = e;
    }
    if let Some(s) = &overrides.samples {
        options.samples = s.clone();
    }
    if let Some(l) = overrides.length_cap {
        options.length_cap = l;
    }
    if options.length_cap == 0 {
        return Err(Error::ParseError("length cap must be positive".into()));
    }

    // Generators are parsed before the algebra is built so that malformed
    // paths surface as parse errors.
    let mut gen_terms = Vec::new();
    for g in &raw.c {
        let mut terms = Vec::new();
        for t in g {
            let coeff: ExactScalar = parse_rational(&t.coeff)?.into();
            let path = if t.path.is_empty() {
                quiver.trivial(top)
            } else {
                parse_path(&quiver, &t.path)?
            };
            terms.push((coeff, path));
        }
        gen_terms.push(terms);
    }

    let alg = Arc::new(build_algebra(quiver, relations, options.length_cap)?);
    let module = projective_cover(alg.clone(), top);
    let mut gens = Vec::new();
    for terms in &gen_terms {
        for (_, p) in terms {
            if p.source() != top {
                return Err(Error::GeneratorNotInRadical(format!(
                    "path {} does not start at the top vertex",
                    p.display(alg.quiver())
                )));
            }
        }
        gens.push(module.from_algebra(&alg.element(terms))?);
    }
    let c = module.lambda_closure(&gens);
    Ok(ProblemSpec { module, c, options })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = include_str!("../../fixtures/ex_5_2.json");

    #[test]
    fn fixture_dimensions() {
        let spec = parse_problem(FIXTURE, &OptionOverrides::default()).unwrap();
        assert_eq!(spec.module.dim_p(), 11);
        assert_eq!(spec.c.dim(), 3);
    }

    #[test]
    fn idempotent_generator_is_rejected() {
        let doc = FIXTURE.replacen("\"path\": [\n          \"g\",\n          \"w\"\n        ]", "\"path\": []", 1);
        assert_ne!(doc, FIXTURE);
        let err = parse_problem(&doc, &OptionOverrides::default()).unwrap_err();
        assert_eq!(err.name(), "GeneratorNotInRadical");
    }

    #[test]
    fn unknown_arrow_is_a_parse_error() {
        let doc = FIXTURE.replacen("\"source\": \"1\"", "\"source\": \"9\"", 1);
        let err = parse_problem(&doc, &OptionOverrides::default()).unwrap_err();
        assert_eq!(err.name(), "ParseError");
    }
}
