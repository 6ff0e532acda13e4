//! Dense exact linear algebra over any field implementation.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::exactfield::{ExactScalar, Rational};

pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

impl Field for ExactScalar {
    fn zero() -> Self {
        ExactScalar::zero()
    }
    fn one() -> Self {
        ExactScalar::one()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        ExactScalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ExactScalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ExactScalar::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        ExactScalar::div(self, o)
    }
    fn neg(&self) -> Self {
        ExactScalar::neg(self)
    }
}

pub type Matrix<F> = Vec<Vec<F>>;

/// `row -= k * pivot_row`, skipping zero entries.
fn axpy<F: Field>(row: &mut [F], k: &F, pivot_row: &[F]) {
    for (x, p) in row.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *x = x.sub(&k.mul(p));
        }
    }
}

/// Reduced row echelon form with zero rows removed; returns the pivot columns.
pub fn rref<F: Field>(mut rows: Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one().div(&rows[r][col]);
        if inv != F::one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let k = row[col].clone();
                axpy(row, &k, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<F: Field>(rows: &Matrix<F>) -> usize {
    rref(rows.clone()).1.len()
}

/// Reduces `v` against an RREF basis; the result is zero iff `v` lies in its row space.
pub fn reduce<F: Field>(basis: &Matrix<F>, pivots: &[usize], v: &[F]) -> Vec<F> {
    let mut out = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if !out[p].is_zero() {
            let k = out[p].clone();
            axpy(&mut out, &k, row);
        }
    }
    out
}

pub fn in_row_space<F: Field>(basis: &Matrix<F>, pivots: &[usize], v: &[F]) -> bool {
    reduce(basis, pivots, v).iter().all(Field::is_zero)
}

/// Basis of `{x : A x = 0}`, one vector per free column, in column order.
pub fn nullspace<F: Field>(rows: &Matrix<F>, ncols: usize) -> Matrix<F> {
    let (red, pivots) = rref(rows.clone());
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![F::zero(); ncols];
        x[free] = F::one();
        for (row, &p) in red.iter().zip(&pivots) {
            x[p] = row[free].neg();
        }
        out.push(x);
    }
    out
}

pub fn transpose<F: Field>(rows: &Matrix<F>, ncols: usize) -> Matrix<F> {
    (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: Field>(mut m: Matrix<F>) -> F {
    let n = m.len();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            m.swap(p, col);
            det = det.neg();
        }
        let pivot = m[col][col].clone();
        det = det.mul(&pivot);
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            if !row[col].is_zero() {
                let k = row[col].div(&pivot);
                axpy(row, &k, &pivot_row);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let (a, pa) = rref(m(&[&[2, 4, 0], &[1, 2, 1], &[3, 6, 1]]));
        assert_eq!(a, m(&[&[1, 2, 0], &[0, 0, 1]]));
        assert_eq!(pa, vec![0, 2]);
    }

    #[test]
    fn nullspace_annihilates() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for row in &a {
                let dot = row.iter().zip(x).fold(rat(0), |acc, (p, q)| acc + p * q);
                assert!(Zero::is_zero(&dot));
            }
        }
    }

    #[test]
    fn determinant_matches_cofactor() {
        assert_eq!(determinant(m(&[&[0, 2], &[3, 4]])), rat(-6));
        assert_eq!(determinant(m(&[&[1, 2], &[2, 4]])), rat(0));
    }
}
