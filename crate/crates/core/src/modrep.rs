//! The projective module P = Λe, its radical JP, Λ-stable subspaces of JP,
//! stabilizers and the Hom-space dimensions attached to a point.
//!
//! Vectors of JP are coordinate vectors over the basis classes of P with the
//! idempotent `e` dropped.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{ExactScalar, Rational, Var};
use crate::linalg::{in_row_space, nullspace, rank, reduce, rref, Matrix};
use crate::pathalg::{AlgebraElement, Algebra};

/// A subspace stored as its reduced row echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Matrix<ExactScalar>,
    pivots: Vec<usize>,
}

/// A Λ-stable subspace of JP.
pub type GrassPoint = Subspace;

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(ambient: usize, rows: Matrix<ExactScalar>) -> Subspace {
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let (rows, pivots) = rref(rows);
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn from_rational_rows(ambient: usize, rows: &[Vec<Rational>]) -> Subspace {
        Subspace::from_rows(
            ambient,
            rows.iter()
                .map(|r| r.iter().cloned().map(ExactScalar::from_rational).collect())
                .collect(),
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &Matrix<ExactScalar> {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[ExactScalar]) -> bool {
        in_row_space(&self.rows, &self.pivots, v)
    }

    pub fn reduce(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        reduce(&self.rows, &self.pivots, v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Sum of two subspaces.
    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::from_rows(self.ambient, rows)
    }

    /// All symbols occurring in the entries.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.rows.iter().flatten().flat_map(|x| x.variables()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn is_numeric(&self) -> bool {
        self.rows.iter().flatten().all(ExactScalar::is_constant)
    }

    /// Substitutes a rational for a symbol in every entry and re-reduces.
    pub fn specialize(&self, v: &Var, value: &Rational) -> Result<Subspace> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.specialize(v, value)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_rows(self.ambient, rows))
    }

    /// Ordering key for picking canonical representatives: entries compared
    /// row by row under [`ExactScalar::canonical_key`].
    pub fn canonical_key(&self) -> Vec<(bool, usize, String, usize, String)> {
        self.rows.iter().flatten().map(ExactScalar::canonical_key).collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

#[derive(Clone, Debug)]
pub struct ProjectiveModule {
    alg: Arc<Algebra>,
    top: usize,
    /// Algebra basis indices of P; `basis[0]` is the idempotent.
    basis: Vec<usize>,
    /// For each algebra basis index, its JP coordinate (if any).
    jp_coord: Vec<Option<usize>>,
    /// Algebra indices of the cycle basis of eJe.
    cycles: Vec<usize>,
}

pub fn projective_cover(alg: Arc<Algebra>, top: usize) -> ProjectiveModule {
    let e = alg.idempotent(top);
    let mut basis = vec![e];
    basis.extend((0..alg.dim()).filter(|&i| i != e && alg.basis()[i].source() == top));
    let mut jp_coord = vec![None; alg.dim()];
    for (k, &i) in basis.iter().enumerate().skip(1) {
        jp_coord[i] = Some(k - 1);
    }
    let cycles = alg.cycle_basis_at(top);
    ProjectiveModule {
        alg,
        top,
        basis,
        jp_coord,
        cycles,
    }
}

impl ProjectiveModule {
    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn dim_p(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_jp(&self) -> usize {
        self.basis.len() - 1
    }

    /// Algebra basis indices of the JP coordinates, in coordinate order.
    pub fn jp_basis(&self) -> &[usize] {
        &self.basis[1..]
    }

    /// Printed names of the JP basis paths.
    pub fn jp_names(&self) -> Vec<String> {
        self.jp_basis()
            .iter()
            .map(|&i| self.alg.basis()[i].display(self.alg.quiver()))
            .collect()
    }

    /// Algebra indices of the cycles at the top vertex (a basis of eJe).
    pub fn cycles(&self) -> &[usize] {
        &self.cycles
    }

    /// μ = dim eJe.
    pub fn mu(&self) -> usize {
        self.cycles.len()
    }

    pub fn jp_coord_of(&self, alg_index: usize) -> Option<usize> {
        self.jp_coord[alg_index]
    }

    /// JP coordinate vector of the cycle `cycles()[k]`.
    pub fn cycle_vector(&self, k: usize) -> Vec<ExactScalar> {
        let mut v = vec![ExactScalar::zero(); self.dim_jp()];
        v[self.jp_coord[self.cycles[k]].expect("cycles lie in JP")] = ExactScalar::one();
        v
    }

    /// Embeds a JP vector into the algebra.
    pub fn to_algebra(&self, v: &[ExactScalar]) -> AlgebraElement {
        let mut out = vec![ExactScalar::zero(); self.alg.dim()];
        for (k, x) in v.iter().enumerate() {
            out[self.basis[k + 1]] = x.clone();
        }
        out
    }

    /// Restricts an algebra element to JP coordinates; fails if it has a
    /// component outside JP.
    pub fn from_algebra(&self, x: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        let mut v = vec![ExactScalar::zero(); self.dim_jp()];
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match self.jp_coord[i] {
                Some(k) => v[k] = c.clone(),
                None => {
                    return Err(Error::GeneratorNotInRadical(format!(
                        "component along {} is outside the radical of the projective at {}",
                        self.alg.basis()[i].display(self.alg.quiver()),
                        self.alg.quiver().vertices[self.top]
                    )))
                }
            }
        }
        Ok(v)
    }

    /// Left multiplication of a JP vector by an arrow.
    pub fn arrow_action(&self, arrow: usize, v: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut out = vec![ExactScalar::zero(); self.dim_jp()];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in self.alg.arrow_times(arrow, self.basis[k + 1]) {
                let j = self.jp_coord[*i].expect("arrow action stays in JP");
                out[j] = out[j].add(&x.scale(c));
            }
        }
        out
    }

    /// Smallest arrow-stable subspace containing the generators.
    pub fn lambda_closure(&self, gens: &[Vec<ExactScalar>]) -> Subspace {
        let n = self.dim_jp();
        let mut space = Subspace::from_rows(n, gens.to_vec());
        let mut frontier: Vec<Vec<ExactScalar>> = space.rows.clone();
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for v in &frontier {
                for a in 0..self.alg.quiver().arrows.len() {
                    let w = self.arrow_action(a, v);
                    if w.iter().all(ExactScalar::is_zero) || space.contains(&w) {
                        continue;
                    }
                    space = Subspace::from_rows(n, {
                        let mut r = space.rows.clone();
                        r.push(w.clone());
                        r
                    });
                    fresh.push(w);
                }
            }
            frontier = fresh;
        }
        space
    }

    pub fn is_lambda_stable(&self, s: &Subspace) -> bool {
        s.rows.iter().all(|v| {
            (0..self.alg.quiver().arrows.len()).all(|a| s.contains(&self.arrow_action(a, v)))
        })
    }

    /// Radical of a submodule: the span of all arrow translates of its rows.
    pub fn radical_of(&self, s: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for v in &s.rows {
            for a in 0..self.alg.quiver().arrows.len() {
                rows.push(self.arrow_action(a, v));
            }
        }
        Subspace::from_rows(self.dim_jp(), rows)
    }

    /// A minimal set of Λ-generators: rows of the RREF, scanned from the last
    /// one, that are independent modulo the radical and the earlier choices.
    pub fn generators(&self, s: &Subspace) -> Vec<Vec<ExactScalar>> {
        let mut acc = self.radical_of(s);
        let mut out = Vec::new();
        for v in s.rows.iter().rev() {
            if !acc.contains(v) {
                acc = acc.join(&Subspace::from_rows(self.dim_jp(), vec![v.clone()]));
                out.push(v.clone());
            }
        }
        out.reverse();
        out
    }

    /// `v · u` for `v` in JP and `u` given by its coefficient on `e` and on each cycle.
    pub fn right_multiply_vector(&self, v: &[ExactScalar], unit: &ExactScalar, cyc: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut out: Vec<ExactScalar> = v.iter().map(|x| x.mul(unit)).collect();
        for (k, t) in cyc.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for (j, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let xt = x.mul(t);
                for (i, c) in self.alg.basis_product(self.basis[j + 1], self.cycles[k]) {
                    let jj = self.jp_coord[*i].expect("product stays in JP");
                    out[jj] = out[jj].add(&xt.scale(c));
                }
            }
        }
        out
    }

    /// Rows of `C · (unit·e + Σ cyc[k]·ω_k)`, without re-reduction.
    pub fn right_multiply_rows(&self, c: &Subspace, unit: &ExactScalar, cyc: &[ExactScalar]) -> Matrix<ExactScalar> {
        c.rows
            .iter()
            .map(|v| self.right_multiply_vector(v, unit, cyc))
            .collect()
    }

    /// `C · u` as a subspace, for `u` in eΛe given as an algebra element.
    pub fn right_multiply(&self, c: &Subspace, u: &[ExactScalar]) -> Subspace {
        let e = self.basis[0];
        let unit = u[e].clone();
        let cyc: Vec<ExactScalar> = self.cycles.iter().map(|&i| u[i].clone()).collect();
        debug_assert!(u
            .iter()
            .enumerate()
            .all(|(i, x)| x.is_zero() || i == e || self.cycles.contains(&i)));
        Subspace::from_rows(self.dim_jp(), self.right_multiply_rows(c, &unit, &cyc))
    }

    /// `{a ∈ eJe : C·a ⊆ C}`, in coordinates of the cycle basis.
    pub fn stab(&self, c: &Subspace) -> Subspace {
        let mu = self.mu();
        let n = self.dim_jp();
        // Column k holds the remainders of C·ω_k modulo C.
        let mut eqs: Matrix<ExactScalar> = Vec::new();
        let mut rems: Vec<Vec<Vec<ExactScalar>>> = Vec::with_capacity(mu);
        for k in 0..mu {
            let mut cyc = vec![ExactScalar::zero(); mu];
            cyc[k] = ExactScalar::one();
            let prods = self.right_multiply_rows(c, &ExactScalar::zero(), &cyc);
            rems.push(prods.iter().map(|p| c.reduce(p)).collect());
        }
        for r in 0..c.dim() {
            for j in 0..n {
                let row: Vec<ExactScalar> = (0..mu).map(|k| rems[k][r][j].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    eqs.push(row);
                }
            }
        }
        Subspace::from_rows(mu, nullspace(&eqs, mu))
    }

    /// dim e·(JP/C).
    pub fn hom_dim_from_p(&self, c: &Subspace) -> usize {
        let mut rows = c.rows.clone();
        rows.extend((0..self.mu()).map(|k| self.cycle_vector(k)));
        rank(&rows) - c.dim()
    }

    /// dim {x ∈ e·(JP/C) : C·x = 0 in JP/C}.
    pub fn hom_dim_from_p_mod_c(&self, c: &Subspace) -> usize {
        let st = self.stab(c);
        let mut rows = c.rows.clone();
        for s in &st.rows {
            let mut v = vec![ExactScalar::zero(); self.dim_jp()];
            for (k, x) in s.iter().enumerate() {
                let j = self.jp_coord[self.cycles[k]].expect("cycles lie in JP");
                v[j] = x.clone();
            }
            rows.push(v);
        }
        rank(&rows) - c.dim()
    }

    /// Printed element of P for a JP vector.
    pub fn display_vector(&self, v: &[ExactScalar]) -> String {
        self.alg.display_element(&self.to_algebra(v))
    }

    /// Printed submodule as a sum of cyclic submodules `Λ(x)`.
    pub fn display_submodule(&self, s: &Subspace) -> String {
        let gens = self.generators(s);
        if gens.is_empty() {
            return "0".into();
        }
        gens.iter()
            .map(|g| format!("L({})", self.display_vector(g)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathalg::{build_algebra, Quiver, Relation};

    fn sample_module() -> ProjectiveModule {
        let q = Quiver::new(
            &["1", "2", "3"],
            &[("w", "1", "1"), ("a", "1", "2"), ("b", "1", "2"), ("g", "1", "3")],
        )
        .unwrap();
        let rels = vec![
            Relation::monomial(q.path(&["w", "w", "w"]).unwrap()),
            Relation::monomial(q.path(&["b", "w", "w"]).unwrap()),
        ];
        projective_cover(Arc::new(build_algebra(q, rels, 32).unwrap()), 0)
    }

    fn vec_of(p: &ProjectiveModule, terms: &[&[&str]]) -> Vec<ExactScalar> {
        let q = p.algebra().quiver();
        let t: Vec<_> = terms
            .iter()
            .map(|names| (ExactScalar::one(), q.path(names).unwrap()))
            .collect();
        p.from_algebra(&p.algebra().element(&t)).unwrap()
    }

    #[test]
    fn dimensions_of_projective() {
        let p = sample_module();
        assert_eq!((p.dim_p(), p.dim_jp(), p.mu()), (11, 10, 2));
    }

    #[test]
    fn closure_of_generic_point() {
        let p = sample_module();
        let c = p.lambda_closure(&[
            vec_of(&p, &[&["a"], &["b"]]),
            vec_of(&p, &[&["a", "w"]]),
            vec_of(&p, &[&["g", "w"]]),
        ]);
        assert_eq!(c.dim(), 3);
        assert!(p.is_lambda_stable(&c));
        assert_eq!(p.stab(&c).dim(), 0);
        assert_eq!(p.hom_dim_from_p(&c), 2);
        assert_eq!(p.hom_dim_from_p_mod_c(&c), 0);
        assert!(p.lambda_closure(&[]).dim() == 0);
    }

    #[test]
    fn stabilizer_of_one_dimensional_orbit() {
        let p = sample_module();
        let e = p.lambda_closure(&[
            vec_of(&p, &[&["a", "w", "w"]]),
            vec_of(&p, &[&["a", "w"]]),
            vec_of(&p, &[&["g", "w"]]),
        ]);
        let st = p.stab(&e);
        assert_eq!(st.dim(), 1);
        // The stabilizer is spanned by the second cycle, w^2.
        assert_eq!(st.pivots(), &[1]);
        let full = Subspace::from_rows(p.dim_jp(), (0..p.dim_jp()).map(|k| {
            let mut v = vec![ExactScalar::zero(); p.dim_jp()];
            v[k] = ExactScalar::one();
            v
        }).collect());
        assert_eq!(p.stab(&full).dim(), p.mu());
    }
}
