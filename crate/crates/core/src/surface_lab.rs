//! Intersection bookkeeping for configurations of curves on smooth rational
//! surfaces under blow-ups and blow-downs.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Curve {
    pub name: String,
    pub self_int: i64,
}

/// Curves with self-intersections and their transverse crossing points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveConfig {
    pub curves: Vec<Curve>,
    /// One entry per crossing point, names ordered within each pair; kept sorted.
    pub crossings: Vec<(String, String)>,
    pub picard_rank: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlowPoint {
    /// A crossing point of two curves.
    Crossing(String, String),
    /// A point on exactly one curve and on no crossing.
    OnCurve(String),
    /// A point on no curve.
    Free,
}

fn pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl CurveConfig {
    pub fn new(curves: &[(&str, i64)], crossings: &[(&str, &str)], picard_rank: u32) -> Result<Self> {
        let mut cfg = CurveConfig {
            curves: Vec::new(),
            crossings: Vec::new(),
            picard_rank,
        };
        if picard_rank == 0 {
            return Err(Error::InvalidPoint("picard rank must be positive".into()));
        }
        for &(name, e) in curves {
            if cfg.index(name).is_some() {
                return Err(Error::InvalidPoint(format!("curve {name} declared twice")));
            }
            cfg.curves.push(Curve {
                name: name.to_string(),
                self_int: e,
            });
        }
        for &(a, b) in crossings {
            cfg.require(a)?;
            cfg.require(b)?;
            if a == b {
                return Err(Error::InvalidPoint(format!("curve {a} cannot cross itself transversally")));
            }
            cfg.crossings.push(pair(a, b));
        }
        cfg.crossings.sort();
        Ok(cfg)
    }

    /// `X₀`: two rulings of `P¹×P¹` meeting once.
    pub fn x0() -> Self {
        Self::new(&[("D_0", 0), ("D'_0", 0)], &[("D_0", "D'_0")], 2).expect("valid configuration")
    }

    fn index(&self, name: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.name == name)
    }

    fn require(&self, name: &str) -> Result<usize> {
        self.index(name)
            .ok_or_else(|| Error::InvalidPoint(format!("unknown curve {name}")))
    }

    pub fn curve(&self, name: &str) -> Option<&Curve> {
        self.index(name).map(|i| &self.curves[i])
    }

    pub fn self_intersection(&self, name: &str) -> Option<i64> {
        self.curve(name).map(|c| c.self_int)
    }

    /// Intersection number; self-intersection when `a == b`.
    pub fn intersection(&self, a: &str, b: &str) -> i64 {
        if a == b {
            return self.self_intersection(a).unwrap_or(0);
        }
        let p = pair(a, b);
        self.crossings.iter().filter(|c| **c == p).count() as i64
    }

    fn fresh_name(&self) -> String {
        (1..)
            .map(|k| format!("E{k}"))
            .find(|n| self.index(n).is_none())
            .expect("unbounded")
    }

    pub fn rename(&mut self, from: &str, to: &str) -> Result<()> {
        let i = self.require(from)?;
        if from != to && self.index(to).is_some() {
            return Err(Error::InvalidPoint(format!("curve {to} already exists")));
        }
        self.curves[i].name = to.to_string();
        for c in &mut self.crossings {
            let (a, b) = (
                if c.0 == from { to } else { &c.0 },
                if c.1 == from { to } else { &c.1 },
            );
            *c = pair(a, b);
        }
        self.crossings.sort();
        Ok(())
    }

    fn add_self(&mut self, name: &str, delta: i64) {
        let i = self.index(name).expect("checked");
        self.curves[i].self_int += delta;
    }
}

/// Blows up one point; the exceptional curve is named `E<k>` for the least
/// unused `k`. Returns the new configuration and that name.
pub fn blow_up_named(cfg: &CurveConfig, point: &BlowPoint) -> Result<(CurveConfig, String)> {
    let mut out = cfg.clone();
    let e = cfg.fresh_name();
    let through: Vec<String> = match point {
        BlowPoint::Crossing(a, b) => {
            cfg.require(a)?;
            cfg.require(b)?;
            let p = pair(a, b);
            let k = out
                .crossings
                .iter()
                .position(|c| *c == p)
                .ok_or_else(|| Error::InvalidPoint(format!("{a} and {b} do not cross")))?;
            out.crossings.remove(k);
            vec![a.clone(), b.clone()]
        }
        BlowPoint::OnCurve(a) => {
            cfg.require(a)?;
            vec![a.clone()]
        }
        BlowPoint::Free => Vec::new(),
    };
    for c in &through {
        out.add_self(c, -1);
        out.crossings.push(pair(c, &e));
    }
    out.curves.push(Curve {
        name: e.clone(),
        self_int: -1,
    });
    out.crossings.sort();
    out.picard_rank += 1;
    Ok((out, e))
}

pub fn blow_up(cfg: &CurveConfig, point: &BlowPoint) -> Result<CurveConfig> {
    blow_up_named(cfg, point).map(|(c, _)| c)
}

/// Contracts a curve of self-intersection −1.
pub fn blow_down(cfg: &CurveConfig, name: &str) -> Result<CurveConfig> {
    let i = cfg.require(name)?;
    let e = cfg.curves[i].self_int;
    if e != -1 {
        return Err(Error::NotMinusOne {
            name: name.to_string(),
            self_int: e,
        });
    }
    let others: Vec<(String, i64)> = cfg
        .curves
        .iter()
        .filter(|c| c.name != name)
        .map(|c| (c.name.clone(), cfg.intersection(&c.name, name)))
        .collect();
    let mut out = cfg.clone();
    out.curves.remove(i);
    out.crossings.retain(|(a, b)| a != name && b != name);
    for (k, (a, ma)) in others.iter().enumerate() {
        out.add_self(a, ma * ma);
        for (b, mb) in &others[k + 1..] {
            for _ in 0..ma * mb {
                out.crossings.push(pair(a, b));
            }
        }
    }
    out.crossings.sort();
    out.picard_rank -= 1;
    Ok(out)
}

/// `X_n` from `X₀` by elementary transformations: blow up the crossing of
/// `D_i` and `D'_i`, contract the proper transform of `D'_i`, and take
/// `D_{i+1}` to be the proper transform of `D_i` and `D'_{i+1}` the
/// exceptional curve.
pub fn hirzebruch(n: i64) -> Result<CurveConfig> {
    if n < 0 || n == 1 {
        return Err(Error::InvalidHirzebruchIndex(n));
    }
    let mut cfg = CurveConfig::x0();
    for i in 0..n {
        let (d, dp) = (format!("D_{i}"), format!("D'_{i}"));
        let (up, e) = blow_up_named(&cfg, &BlowPoint::Crossing(d.clone(), dp.clone()))?;
        cfg = blow_down(&up, &dp)?;
        cfg.rename(&d, &format!("D_{}", i + 1))?;
        cfg.rename(&e, &format!("D'_{}", i + 1))?;
    }
    let dn = format!("D_{n}");
    assert_eq!(cfg.self_intersection(&dn), Some(-n));
    assert_eq!(cfg.picard_rank, 2);
    Ok(cfg)
}

impl CurveConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph curves {\n");
        for c in &self.curves {
            let _ = writeln!(out, "  \"{}\" [label=\"{} ({})\"];", c.name, c.name, c.self_int);
        }
        for (a, b) in &self.crossings {
            let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("picard_rank = {}\n", self.picard_rank);
        for c in &self.curves {
            let _ = writeln!(out, "{}^2 = {}", c.name, c.self_int);
        }
        for (a, b) in &self.crossings {
            let _ = writeln!(out, "{a} . {b} = 1");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blow_up_crossing_of_x0() {
        let up = blow_up(&CurveConfig::x0(), &BlowPoint::Crossing("D_0".into(), "D'_0".into())).unwrap();
        assert_eq!(up.self_intersection("D_0"), Some(-1));
        assert_eq!(up.self_intersection("D'_0"), Some(-1));
        assert_eq!(up.self_intersection("E1"), Some(-1));
        assert_eq!(up.intersection("D_0", "D'_0"), 0);
        assert_eq!(up.intersection("E1", "D_0"), 1);
        assert_eq!(up.intersection("E1", "D'_0"), 1);
        assert_eq!(up.picard_rank, 3);
    }

    #[test]
    fn line_blown_up_twice() {
        let p2 = CurveConfig::new(&[("L", 1)], &[], 1).unwrap();
        let once = blow_up(&p2, &BlowPoint::OnCurve("L".into())).unwrap();
        let twice = blow_up(&once, &BlowPoint::OnCurve("L".into())).unwrap();
        assert_eq!(twice.self_intersection("L"), Some(-1));
        assert_eq!(twice.picard_rank, 3);
    }

    #[test]
    fn free_point_round_trip() {
        let cfg = CurveConfig::x0();
        let (up, e) = blow_up_named(&cfg, &BlowPoint::Free).unwrap();
        assert_eq!(up.self_intersection(&e), Some(-1));
        assert_eq!(blow_down(&up, &e).unwrap(), cfg);
    }

    #[test]
    fn errors() {
        let cfg = CurveConfig::x0();
        let err = blow_down(&hirzebruch(2).unwrap(), "D_2").unwrap_err();
        assert_eq!(err.name(), "NotMinusOne");
        assert_eq!(blow_up(&cfg, &BlowPoint::OnCurve("Z".into())).unwrap_err().name(), "InvalidPoint");
        let up = blow_up(&cfg, &BlowPoint::Crossing("D_0".into(), "D'_0".into())).unwrap();
        let again = blow_up(&up, &BlowPoint::Crossing("D_0".into(), "D'_0".into()));
        assert_eq!(again.unwrap_err().name(), "InvalidPoint");
        assert_eq!(hirzebruch(1).unwrap_err().name(), "InvalidHirzebruchIndex");
    }

    #[test]
    fn hirzebruch_surfaces() {
        for n in [0, 2, 3, 5, 8] {
            let x = hirzebruch(n).unwrap();
            let (d, dp) = (format!("D_{n}"), format!("D'_{n}"));
            assert_eq!(x.self_intersection(&d), Some(-n));
            assert_eq!(x.self_intersection(&dp), Some(0));
            assert_eq!(x.intersection(&d, &dp), 1);
            assert_eq!(x.picard_rank, 2);
            assert_eq!(x.curves.len(), 2);
        }
    }
}
