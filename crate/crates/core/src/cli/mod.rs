//! Command-line front end: subcommands over a JSON problem document.

pub mod problem;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::degen::{build_poset, check_chi_bounds, enumerate_boundary, DegenPoset, EnumOptions};
use crate::error::{Error, Result};
use crate::exactfield::{parse_rational, ExactScalar, Var};
use crate::grasslimit::{approach, limit_point, rename_to_curve};
use crate::orbit::{orbit_descriptor, psi_rows};
use crate::surface_lab::hirzebruch;
use problem::{parse_problem, parse_samples, OptionOverrides, ProblemSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "orbit-closure", version, about = "Orbit closures of submodules of a projective module, in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Largest exponent used for test curves.
    #[arg(long, global = true)]
    pub max_exponent: Option<u32>,
    /// Comma-separated rational sample values for free parameters.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub samples: Option<String>,
    /// Longest path length considered while building the algebra.
    #[arg(long, global = true)]
    pub length_cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Worker threads for curve evaluation (output does not depend on it).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis of the algebra and of the projective cover.
    Basis { problem: PathBuf },
    /// Orbit dimension and complement cycles of the submodule.
    Orbit { problem: PathBuf },
    /// Limit at s = 0 of the orbit curve with the given coordinates.
    Limit {
        problem: PathBuf,
        /// One expression per complement cycle, e.g. `1/s`.
        #[arg(long = "t", required = true, allow_hyphen_values = true)]
        t: Vec<String>,
        /// Second limit after the first, as `sym` (sym to 0), `sym=value` or `sym=inf`.
        #[arg(long, allow_hyphen_values = true)]
        outer: Option<String>,
    },
    /// Strata of the orbit-closure boundary.
    Boundary { problem: PathBuf },
    /// Degeneration poset.
    Poset { problem: PathBuf },
    /// Euler characteristic of the closure with its consistency bounds.
    Euler { problem: PathBuf },
    /// Curve configuration of a Hirzebruch surface.
    Surface {
        #[arg(long, allow_hyphen_values = true)]
        hirzebruch: i64,
    },
}

fn load(path: &PathBuf, cli: &Cli) -> Result<ProblemSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
    let overrides = OptionOverrides {
        max_exponent: cli.max_exponent,
        samples: cli.samples.as_deref().map(parse_samples).transpose()?,
        length_cap: cli.length_cap,
    };
    parse_problem(&text, &overrides)
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn rows_json(s: &crate::modrep::Subspace) -> Vec<Vec<String>> {
    s.rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn poset_of(spec: &ProblemSpec) -> Result<DegenPoset> {
    let d = orbit_descriptor(&spec.module, &spec.c)?;
    let opts = EnumOptions {
        max_exponent: spec.options.max_exponent,
        samples: spec.options.samples.clone(),
    };
    let b = enumerate_boundary(&spec.module, &d, &opts)?;
    Ok(build_poset(&spec.module, &d, &b))
}

/// Runs one command and returns what it prints on success.
pub fn execute(cli: &Cli) -> Result<String> {
    match cli.jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::ParseError(e.to_string()))?;
            pool.install(|| dispatch(cli))
        }
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<String> {
    let fmt = cli.format;
    match &cli.command {
        Command::Basis { problem } => {
            let spec = load(problem, cli)?;
            let alg = spec.module.algebra();
            let q = alg.quiver();
            let basis: Vec<String> = alg.basis().iter().map(|p| p.display(q)).collect();
            let jp = spec.module.jp_names();
            Ok(match fmt {
                Format::Json => pretty(&json!({
                    "algebra_dim": alg.dim(),
                    "nilpotency_index": alg.nilpotency_index(),
                    "algebra_basis": basis,
                    "p_dim": spec.module.dim_p(),
                    "jp_basis": jp,
                })),
                _ => format!(
                    "dim Lambda = {}, nilpotency index = {}\nLambda basis: {}\ndim P = {}\nJP basis: {}\n",
                    alg.dim(),
                    alg.nilpotency_index(),
                    basis.join(", "),
                    spec.module.dim_p(),
                    jp.join(", ")
                ),
            })
        }
        Command::Orbit { problem } => {
            let spec = load(problem, cli)?;
            let d = orbit_descriptor(&spec.module, &spec.c)?;
            let alg = spec.module.algebra();
            let names: Vec<String> = d
                .omega
                .iter()
                .map(|&k| alg.basis()[spec.module.cycles()[k]].display(alg.quiver()))
                .collect();
            Ok(match fmt {
                Format::Json => pretty(&json!({
                    "m": d.m,
                    "omega": names,
                    "stab_dim": d.stab_basis.dim(),
                    "mu": d.mu,
                    "representative": spec.module.display_submodule(&spec.c),
                })),
                _ => format!(
                    "m = {}, omega = [{}], stab_dim = {}\n",
                    d.m,
                    names.join(", "),
                    d.stab_basis.dim()
                ),
            })
        }
        Command::Limit { problem, t, outer } => {
            let spec = load(problem, cli)?;
            let d = orbit_descriptor(&spec.module, &spec.c)?;
            if t.len() != d.m {
                return Err(Error::DimensionMismatch(t.len(), d.m));
            }
            let coords: Vec<ExactScalar> = t.iter().map(|x| x.parse()).collect::<Result<_>>()?;
            let mut lim = limit_point(&spec.module, &psi_rows(&spec.module, &d, &coords))?;
            if let Some(spec_outer) = outer {
                let rows = match spec_outer.split_once('=') {
                    None => rename_to_curve(lim.rows(), &Var::new(spec_outer.trim())),
                    Some((sym, "inf")) => approach(lim.rows(), &Var::new(sym.trim()), None),
                    Some((sym, v)) => approach(lim.rows(), &Var::new(sym.trim()), Some(&parse_rational(v.trim())?)),
                };
                lim = limit_point(&spec.module, &rows)?;
            }
            let gens = spec.module.display_submodule(&lim);
            Ok(match fmt {
                Format::Json => pretty(&json!({
                    "limit": gens,
                    "jp_basis": spec.module.jp_names(),
                    "rows": rows_json(&lim),
                })),
                _ => format!("{gens}\n"),
            })
        }
        Command::Boundary { problem } => {
            let spec = load(problem, cli)?;
            let p = poset_of(&spec)?;
            Ok(match fmt {
                Format::Json => pretty(&serde_json::to_value(&p.nodes[1..]).expect("json serializes")),
                _ => p.nodes[1..]
                    .iter()
                    .map(|n| format!("{} dim={} base={} chi={}: {}\n", n.kind, n.orbit_dim, n.base, n.chi, n.generators))
                    .collect(),
            })
        }
        Command::Poset { problem } => {
            let p = poset_of(&load(problem, cli)?)?;
            Ok(match fmt {
                Format::Json => p.to_json() + "\n",
                Format::Dot => p.to_dot(),
                Format::Text => p.to_text(),
            })
        }
        Command::Euler { problem } => {
            let r = check_chi_bounds(&poset_of(&load(problem, cli)?)?);
            Ok(match fmt {
                Format::Json => pretty(&serde_json::to_value(&r).expect("json serializes")),
                _ => r.to_text(),
            })
        }
        Command::Surface { hirzebruch: n } => {
            let cfg = hirzebruch(*n)?;
            Ok(match fmt {
                Format::Json => cfg.to_json() + "\n",
                Format::Dot => cfg.to_dot(),
                Format::Text => cfg.to_text(),
            })
        }
    }
}
