use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Boundary, StratumKind};
use crate::modrep::{ProjectiveModule, Subspace};
use crate::orbit::OrbitDescriptor;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetNode {
    pub id: usize,
    /// `open`, `orbit`, `family` or `point`.
    pub kind: String,
    pub orbit_dim: usize,
    pub base: String,
    pub chi: i64,
    /// Submodule generators of the representative.
    pub generators: String,
    /// Representative in reduced row echelon form over the JP basis.
    pub rep: Vec<Vec<String>>,
    /// Generic member of a family, in the parameter `c`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<Vec<String>>>,
    pub sources: Vec<String>,
}

/// Hasse diagram of the degeneration order on the strata of an orbit
/// closure; edges point from a stratum to one in its closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenPoset {
    pub jp_basis: Vec<String>,
    pub nodes: Vec<PosetNode>,
    pub edges: Vec<(usize, usize)>,
}

fn rows_text(s: &Subspace) -> Vec<Vec<String>> {
    s.rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

/// Transitive reduction of the relation `reach` on `n` nodes (assumed acyclic).
fn reduce(n: usize, reach: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut closure = vec![vec![false; n]; n];
    for &(a, b) in reach {
        closure[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if closure[i][k] {
                for j in 0..n {
                    if closure[k][j] {
                        closure[i][j] = true;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && closure[a][b] && !(0..n).any(|c| c != a && c != b && closure[a][c] && closure[c][b]) {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn build_poset(module: &ProjectiveModule, open: &OrbitDescriptor, boundary: &Boundary) -> DegenPoset {
    let mut nodes = vec![PosetNode {
        id: 0,
        kind: "open".into(),
        orbit_dim: open.m,
        base: "point".into(),
        chi: 1,
        generators: module.display_submodule(&open.representative),
        rep: rows_text(&open.representative),
        family: None,
        sources: Vec::new(),
    }];
    for (i, s) in boundary.strata.iter().enumerate() {
        nodes.push(PosetNode {
            id: i + 1,
            kind: s.kind.as_str().into(),
            orbit_dim: s.orbit_dim,
            base: s.base.label(),
            chi: s.chi,
            generators: module.display_submodule(&s.rep),
            rep: rows_text(&s.rep),
            family: s.family.as_ref().map(rows_text),
            sources: s.sources.clone(),
        });
    }
    let n = nodes.len();
    let mut reach: Vec<(usize, usize)> = (1..n).map(|b| (0, b)).collect();
    for &(a, b) in &boundary.reach {
        let a = a.map_or(0, |i| i + 1);
        // Only orbits have closure relations of their own.
        if a == 0 || boundary.strata[a - 1].kind == StratumKind::Orbit {
            reach.push((a, b + 1));
        }
    }
    DegenPoset {
        jp_basis: module.jp_names(),
        nodes,
        edges: reduce(n, &reach),
    }
}

impl DegenPoset {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("poset serializes")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::ParseError(e.to_string()))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph degenerations {\n  rankdir=TB;\n");
        for n in &self.nodes {
            let label = format!("{}\\n{} dim {}, chi {}", n.generators, n.kind, n.orbit_dim, n.chi);
            let _ = writeln!(out, "  n{} [label=\"{}\"];", n.id, label.replace('"', "\\\""));
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for n in &self.nodes {
            let _ = writeln!(
                out,
                "[{}] {} dim={} base={} chi={}: {}",
                n.id, n.kind, n.orbit_dim, n.base, n.chi, n.generators
            );
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "{a} -> {b}");
        }
        out
    }
}

pub fn euler_characteristic(poset: &DegenPoset) -> i64 {
    poset.nodes.iter().map(|n| n.chi).sum()
}

/// Consistency of χ with a boundary made of `t` one-dimensional components
/// meeting in points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiReport {
    pub chi: i64,
    pub strata: usize,
    pub boundary_chi: i64,
    /// One-dimensional orbit classes plus families.
    pub t: usize,
    pub within_bounds: bool,
    /// χ reaches m + 1, the least value for a compact surface or curve of this kind;
    /// otherwise the enumeration may have missed degenerations.
    pub complete: bool,
}

pub fn check_chi_bounds(poset: &DegenPoset) -> ChiReport {
    let chi = euler_characteristic(poset);
    let boundary_chi = chi - poset.nodes[0].chi;
    let t = poset.nodes[1..]
        .iter()
        .filter(|n| n.kind == "family" || (n.kind == "orbit" && n.orbit_dim == 1))
        .count();
    let t_i = t as i64;
    let within_bounds = boundary_chi <= t_i + 1 && boundary_chi <= 2 * t_i;
    ChiReport {
        chi,
        strata: poset.nodes.len(),
        boundary_chi,
        t,
        within_bounds,
        complete: within_bounds && chi > poset.nodes[0].orbit_dim as i64,
    }
}

impl ChiReport {
    pub fn to_text(&self) -> String {
        let t = self.t as i64;
        let ok = |b: bool| if b { "OK" } else { "VIOLATED" };
        format!(
            "chi = {}, strata = {}, bounds: chi(boundary)={} <= t+1={} {}\nchi(boundary)={} <= 2t={} {}\nstatus: {}\n",
            self.chi,
            self.strata,
            self.boundary_chi,
            t + 1,
            ok(self.boundary_chi <= t + 1),
            self.boundary_chi,
            2 * t,
            ok(self.boundary_chi <= 2 * t),
            if self.complete { "verified-complete" } else { "lower bound on degenerations" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::reduce;

    #[test]
    fn reduction_drops_implied_edges() {
        let r = reduce(4, &[(0, 1), (0, 2), (0, 3), (1, 3)]);
        assert_eq!(r, vec![(0, 1), (0, 2), (1, 3)]);
    }
}
