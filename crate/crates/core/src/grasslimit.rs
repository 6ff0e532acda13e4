//! Limits at `s = 0` of one-parameter families of subspaces.
//!
//! Two independent routes: lattice saturation over the valuation ring of
//! `ord_s` ([`dvr_saturate`], [`limit_point`]) and normalization of Plücker
//! coordinates ([`plucker_limit`]).

use crate::error::{Error, Result};
use crate::exactfield::{ExactScalar, MultiPoly, Rational, Var};
use crate::linalg::{determinant, rank, Matrix};
use crate::modrep::{GrassPoint, ProjectiveModule, Subspace};

/// Output of [`dvr_saturate`]: `b = y · v`, with `b` integral and of full rank mod `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct Saturation {
    pub y: Matrix<ExactScalar>,
    pub b: Matrix<ExactScalar>,
}

fn check_rank(v: &Matrix<ExactScalar>) -> Result<()> {
    let r = rank(v);
    if r < v.len() {
        return Err(Error::RankDeficient { rank: r, rows: v.len() });
    }
    Ok(())
}

/// Replaces the rows of `v` by a basis of the saturated lattice of their span.
///
/// Repeatedly picks, among the rows not yet fixed, a nonzero entry of least
/// valuation (ties: smallest row, then smallest column), scales its row to
/// valuation zero there, clears that column from the other unfixed rows and
/// fixes the row.
pub fn dvr_saturate(v: &Matrix<ExactScalar>) -> Result<Saturation> {
    check_rank(v)?;
    let d = v.len();
    let mut b = v.clone();
    let mut y: Matrix<ExactScalar> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { ExactScalar::one() } else { ExactScalar::zero() })
                .collect()
        })
        .collect();
    let mut open: Vec<usize> = (0..d).collect();
    while !open.is_empty() {
        let mut best: Option<(i64, usize, usize)> = None;
        for &i in &open {
            for (j, x) in b[i].iter().enumerate() {
                if let Some(o) = x.ord_s() {
                    if best.is_none_or(|(bo, _, _)| o < bo) {
                        best = Some((o, i, j));
                    }
                }
            }
        }
        let (q, i, j) = best.expect("full rank rows are nonzero");
        if q != 0 {
            for x in b[i].iter_mut().chain(y[i].iter_mut()) {
                *x = x.mul_s_pow(-q);
            }
        }
        let pivot = b[i][j].clone();
        for &r in &open {
            if r == i || b[r][j].is_zero() {
                continue;
            }
            let k = b[r][j].div(&pivot);
            for c in 0..b[r].len() {
                if !b[i][c].is_zero() {
                    b[r][c] = b[r][c].sub(&k.mul(&b[i][c]));
                }
            }
            for c in 0..d {
                if !y[i][c].is_zero() {
                    y[r][c] = y[r][c].sub(&k.mul(&y[i][c]));
                }
            }
        }
        open.retain(|&r| r != i);
    }
    Ok(Saturation { y, b })
}

fn at_zero(rows: &Matrix<ExactScalar>) -> Result<Matrix<ExactScalar>> {
    let s = Var::curve();
    let zero = Rational::from_integer(0.into());
    rows.iter()
        .map(|r| r.iter().map(|x| x.specialize(&s, &zero)).collect())
        .collect()
}

/// Limit at `s = 0` of the span of `rows` in the Grassmannian of `ambient`-space.
pub fn grass_limit(ambient: usize, rows: &Matrix<ExactScalar>) -> Result<Subspace> {
    let sat = dvr_saturate(rows)?;
    Ok(Subspace::from_rows(ambient, at_zero(&sat.b)?))
}

/// Limit of a family of submodules; checks that the limit is again a
/// Λ-stable subspace of the same dimension.
pub fn limit_point(module: &ProjectiveModule, rows: &Matrix<ExactScalar>) -> Result<GrassPoint> {
    let lim = grass_limit(module.dim_jp(), rows)?;
    if lim.dim() != rows.len() {
        return Err(Error::LimitNotStable(format!(
            "limit has dimension {} instead of {}",
            lim.dim(),
            rows.len()
        )));
    }
    if !module.is_lambda_stable(&lim) {
        return Err(Error::LimitNotStable("limit is not closed under the arrows".into()));
    }
    Ok(lim)
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn column_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Each row scaled by the lcm of its denominators; the span is unchanged.
fn polynomial_rows(rows: &Matrix<ExactScalar>) -> Vec<Vec<MultiPoly>> {
    rows.iter()
        .map(|r| {
            let lcm = r.iter().fold(MultiPoly::one(), |l, x| {
                let d = x.denominator();
                let g = l.gcd(d);
                l.mul(&d.div_exact(&g).expect("gcd divides"))
            });
            r.iter()
                .map(|x| x.numerator().mul(&lcm.div_exact(x.denominator()).expect("lcm is a multiple")))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
fn bareiss(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    let mut negate = false;
    let mut prev = MultiPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return MultiPoly::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = x.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Maximal minors of `rows` after clearing row denominators, so defined up
/// to one common nonzero factor.
fn scaled_minors(rows: &Matrix<ExactScalar>, ambient: usize) -> Vec<ExactScalar> {
    let poly_rows = polynomial_rows(rows);
    column_sets(ambient, rows.len())
        .iter()
        .map(|cols| {
            ExactScalar::from_poly(bareiss(
                poly_rows
                    .iter()
                    .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                    .collect(),
            ))
        })
        .collect()
}

fn minor(rows: &Matrix<ExactScalar>, cols: &[usize]) -> ExactScalar {
    determinant(
        rows.iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect(),
    )
}

/// All maximal minors in lexicographic column-set order, unnormalized.
pub fn plucker_raw(rows: &Matrix<ExactScalar>, ambient: usize) -> Vec<ExactScalar> {
    column_sets(ambient, rows.len())
        .iter()
        .map(|cols| minor(rows, cols))
        .collect()
}

/// Plücker vector of a subspace, scaled so its first nonzero coordinate is 1.
pub fn plucker(s: &Subspace) -> Vec<ExactScalar> {
    let raw = plucker_raw(s.rows(), s.ambient());
    let lead = raw
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .unwrap_or_else(ExactScalar::one);
    raw.iter().map(|x| x.div(&lead)).collect()
}

/// Rebuilds the subspace with the given (numeric or symbolic) Plücker vector.
pub fn from_plucker(ambient: usize, d: usize, p: &[ExactScalar]) -> Result<Subspace> {
    let sets = column_sets(ambient, d);
    let Some(ix) = p.iter().position(|x| !x.is_zero()) else {
        return Err(Error::RankDeficient { rank: 0, rows: d });
    };
    let base = &sets[ix];
    let lookup = |cols: &[usize]| -> ExactScalar {
        let mut sorted = cols.to_vec();
        let mut sign = false;
        // Bubble sort to count the permutation parity.
        for a in 0..sorted.len() {
            for b in 0..sorted.len() - 1 - a {
                if sorted[b] > sorted[b + 1] {
                    sorted.swap(b, b + 1);
                    sign = !sign;
                }
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return ExactScalar::zero();
        }
        let k = sets.binary_search(&sorted).expect("valid column set");
        if sign {
            p[k].neg()
        } else {
            p[k].clone()
        }
    };
    let pivot = p[ix].clone();
    let mut rows = Vec::with_capacity(d);
    for r in 0..d {
        let mut row = Vec::with_capacity(ambient);
        for j in 0..ambient {
            let mut cols = base.clone();
            cols[r] = j;
            row.push(lookup(&cols).div(&pivot));
        }
        rows.push(row);
    }
    Ok(Subspace::from_rows(ambient, rows))
}

/// Limit at `s = 0` computed through Plücker coordinates.
pub fn plucker_limit(ambient: usize, rows: &Matrix<ExactScalar>) -> Result<Subspace> {
    let raw = scaled_minors(rows, ambient);
    let k = raw
        .iter()
        .filter_map(ExactScalar::ord_s)
        .min()
        .ok_or_else(|| Error::RankDeficient { rank: rank(rows), rows: rows.len() })?;
    let s = Var::curve();
    let zero = Rational::from_integer(0.into());
    let lim: Vec<ExactScalar> = raw
        .iter()
        .map(|x| x.mul_s_pow(-k).specialize(&s, &zero))
        .collect::<Result<_>>()?;
    from_plucker(ambient, rows.len(), &lim)
}

/// Renames symbol `from` to the curve symbol `s` in every entry, so that a
/// second limit can be taken in it.
pub fn rename_to_curve(rows: &Matrix<ExactScalar>, from: &Var) -> Matrix<ExactScalar> {
    let s = Var::curve();
    rows.iter()
        .map(|r| r.iter().map(|x| x.rename(from, &s)).collect())
        .collect()
}

/// Substitutes `v := value + s` (or `v := 1/s` when `value` is `None`) so that
/// the limit at `s = 0` is the limit as `v` tends to `value` (or to ∞).
pub fn approach(rows: &Matrix<ExactScalar>, v: &Var, value: Option<&Rational>) -> Matrix<ExactScalar> {
    let target = match value {
        Some(c) => ExactScalar::from_rational(c.clone()).add(&ExactScalar::s()),
        None => ExactScalar::s_pow(-1),
    };
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.substitute(v, &target).expect("generic substitution is defined"))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(t: &str) -> ExactScalar {
        t.parse().unwrap()
    }

    fn m(rows: &[&[&str]]) -> Matrix<ExactScalar> {
        rows.iter().map(|r| r.iter().map(|t| sc(t)).collect()).collect()
    }

    #[test]
    fn single_row_is_rescaled() {
        let sat = dvr_saturate(&m(&[&["s", "s^2"]])).unwrap();
        assert_eq!(sat.y, m(&[&["1/s"]]));
        assert_eq!(sat.b, m(&[&["1", "s"]]));
    }

    #[test]
    fn integral_unit_rows_are_untouched() {
        let v = m(&[&["1", "0", "c"], &["0", "1", "1 + s"]]);
        let sat = dvr_saturate(&v).unwrap();
        assert_eq!(sat.y, m(&[&["1", "0"], &["0", "1"]]));
        assert_eq!(sat.b, v);
    }

    #[test]
    fn dependent_rows_are_rejected() {
        let err = dvr_saturate(&m(&[&["1", "s"], &["2", "2*s"]])).unwrap_err();
        assert_eq!(err.name(), "RankDeficient");
    }

    #[test]
    fn cancellation_needs_second_step() {
        // span{(1, 0, 1/s), (1, s, 1/s)} tends to span{(0,0,1), (0,1,0)}.
        let v = m(&[&["1", "0", "1/s"], &["1", "s", "1/s"]]);
        let lim = grass_limit(3, &v).unwrap();
        assert_eq!(lim.rows(), &m(&[&["0", "1", "0"], &["0", "0", "1"]]));
        assert_eq!(plucker_limit(3, &v).unwrap(), lim);
    }

    #[test]
    fn plucker_examples() {
        let id = Subspace::from_rows(2, m(&[&["1", "0"], &["0", "1"]]));
        assert_eq!(plucker(&id), m(&[&["1"]])[0]);
        let line = Subspace::from_rows(2, m(&[&["1", "t"]]));
        assert_eq!(plucker(&line), m(&[&["1", "t"]])[0]);
    }

    #[test]
    fn plucker_round_trip() {
        let s = Subspace::from_rows(4, m(&[&["1", "2", "0", "c"], &["0", "1", "3", "1"]]));
        assert_eq!(from_plucker(4, 2, &plucker(&s)).unwrap(), s);
    }
}
