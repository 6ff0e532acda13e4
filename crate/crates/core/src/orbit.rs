//! Orbits of the automorphism group of P on submodules: the affine
//! parameterization by right multiplication, orbit dimension and an exact
//! orbit-equivalence test.

use crate::error::{Error, Result};
use crate::exactfield::ExactScalar;
use crate::linalg::{nullspace, Matrix};
use crate::modrep::{GrassPoint, ProjectiveModule, Subspace};

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitDescriptor {
    pub representative: GrassPoint,
    /// Stabilizer in eJe, in coordinates of the cycle basis.
    pub stab_basis: Subspace,
    /// Positions in the cycle basis of the chosen complement ω₁…ω_m.
    pub omega: Vec<usize>,
    pub m: usize,
    pub mu: usize,
}

pub fn orbit_descriptor(module: &ProjectiveModule, c: &GrassPoint) -> Result<OrbitDescriptor> {
    let mu = module.mu();
    let stab = module.stab(c);
    let mut span = stab.clone();
    let mut omega = Vec::new();
    for k in 0..mu {
        let mut v = vec![ExactScalar::zero(); mu];
        v[k] = ExactScalar::one();
        if !span.contains(&v) {
            span = span.join(&Subspace::from_rows(mu, vec![v]));
            omega.push(k);
        }
    }
    let m = mu - stab.dim();
    debug_assert_eq!(m, omega.len());
    let via_hom = module.hom_dim_from_p(c) - module.hom_dim_from_p_mod_c(c);
    if via_hom != m {
        return Err(Error::FormulaMismatch { via_stab: m, via_hom });
    }
    Ok(OrbitDescriptor {
        representative: c.clone(),
        stab_basis: stab,
        omega,
        m,
        mu,
    })
}

/// Orbit dimension μ − dim Stab.
pub fn orbit_dim(module: &ProjectiveModule, c: &GrassPoint) -> usize {
    module.mu() - module.stab(c).dim()
}

fn cycle_coefficients(d: &OrbitDescriptor, t: &[ExactScalar]) -> Vec<ExactScalar> {
    assert_eq!(t.len(), d.m, "psi expects one coordinate per complement cycle");
    let mut cyc = vec![ExactScalar::zero(); d.mu];
    for (k, x) in d.omega.iter().zip(t) {
        cyc[*k] = x.clone();
    }
    cyc
}

/// Rows of `C · (e + Σ tᵢωᵢ)` before reduction; the input to limit computations.
pub fn psi_rows(module: &ProjectiveModule, d: &OrbitDescriptor, t: &[ExactScalar]) -> Matrix<ExactScalar> {
    module.right_multiply_rows(&d.representative, &ExactScalar::one(), &cycle_coefficients(d, t))
}

/// The point `C · (e + Σ tᵢωᵢ)` of the orbit.
pub fn psi(module: &ProjectiveModule, d: &OrbitDescriptor, t: &[ExactScalar]) -> GrassPoint {
    Subspace::from_rows(module.dim_jp(), psi_rows(module, d, t))
}

/// Whether `c2 = c1 · u` for some unit `u` of eΛe.
pub fn same_orbit(module: &ProjectiveModule, c1: &GrassPoint, c2: &GrassPoint) -> Result<bool> {
    if c1.dim() != c2.dim() {
        return Err(Error::DimensionMismatch(c1.dim(), c2.dim()));
    }
    if c1 == c2 {
        return Ok(true);
    }
    let mu = module.mu();
    let n = module.dim_jp();
    // Column 0: coefficient on e; column k+1: coefficient on the k-th cycle.
    let mut cols: Vec<Vec<Vec<ExactScalar>>> = Vec::with_capacity(mu + 1);
    cols.push(c1.rows().iter().map(|r| c2.reduce(r)).collect());
    for k in 0..mu {
        let mut cyc = vec![ExactScalar::zero(); mu];
        cyc[k] = ExactScalar::one();
        let prods = module.right_multiply_rows(c1, &ExactScalar::zero(), &cyc);
        cols.push(prods.iter().map(|p| c2.reduce(p)).collect());
    }
    let mut eqs = Vec::new();
    for r in 0..c1.dim() {
        for j in 0..n {
            let row: Vec<ExactScalar> = cols.iter().map(|c| c[r][j].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                eqs.push(row);
            }
        }
    }
    Ok(nullspace(&eqs, mu + 1).iter().any(|v| !v[0].is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathalg::{build_algebra, Quiver, Relation};
    use crate::modrep::projective_cover;
    use std::sync::Arc;

    fn setup() -> (ProjectiveModule, GrassPoint, GrassPoint) {
        let q = Quiver::new(
            &["1", "2", "3"],
            &[("w", "1", "1"), ("a", "1", "2"), ("b", "1", "2"), ("g", "1", "3")],
        )
        .unwrap();
        let rels = vec![
            Relation::monomial(q.path(&["w", "w", "w"]).unwrap()),
            Relation::monomial(q.path(&["b", "w", "w"]).unwrap()),
        ];
        let p = projective_cover(Arc::new(build_algebra(q, rels, 32).unwrap()), 0);
        let v = |terms: &[&[&str]]| {
            let q = p.algebra().quiver();
            let t: Vec<_> = terms
                .iter()
                .map(|names| (ExactScalar::one(), q.path(names).unwrap()))
                .collect();
            p.from_algebra(&p.algebra().element(&t)).unwrap()
        };
        let c = p.lambda_closure(&[v(&[&["a"], &["b"]]), v(&[&["a", "w"]]), v(&[&["g", "w"]])]);
        let e = p.lambda_closure(&[v(&[&["a", "w", "w"]]), v(&[&["a", "w"]]), v(&[&["g", "w"]])]);
        (p, c, e)
    }

    #[test]
    fn descriptors() {
        let (p, c, e) = setup();
        let dc = orbit_descriptor(&p, &c).unwrap();
        assert_eq!((dc.m, dc.omega.clone()), (2, vec![0, 1]));
        let de = orbit_descriptor(&p, &e).unwrap();
        assert_eq!((de.m, de.omega), (1, vec![0]));
    }

    #[test]
    fn orbit_membership() {
        let (p, c, e) = setup();
        let d = orbit_descriptor(&p, &c).unwrap();
        assert_eq!(psi(&p, &d, &[ExactScalar::zero(), ExactScalar::zero()]), c);
        let moved = psi(&p, &d, &[ExactScalar::from_int(3), ExactScalar::from_int(-2)]);
        assert_ne!(moved, c);
        assert!(same_orbit(&p, &c, &moved).unwrap());
        assert!(same_orbit(&p, &moved, &c).unwrap());
        assert!(!same_orbit(&p, &c, &e).unwrap());
        let small = p.lambda_closure(&[e.rows()[0].clone()]);
        assert_eq!(same_orbit(&p, &c, &small).unwrap_err().name(), "DimensionMismatch");
    }
}
