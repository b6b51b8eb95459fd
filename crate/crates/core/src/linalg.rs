//! Sparse exact linear algebra over ℚ.
//!
//! Boundary and coboundary operators are stored as row-sparse rational
//! matrices. Rank, kernel and solve all go through one exact reduced row
//! echelon routine, so results never depend on pivot choice; the pivot rule
//! only affects fill-in.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(
            row < self.nrows && col < self.ncols,
            "entry ({row}, {col}) out of bounds"
        );
        if value.is_zero() {
            self.rows[row].remove(&col);
        } else {
            self.rows[row].insert(col, value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.rows[row].get(&col).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries of one row, by column.
    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.rows[row].iter().map(|(c, v)| (*c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                t.rows[*j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.ncols, "matrix-vector shape mismatch");
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(j, _)| !x[**j].is_zero())
                    .fold(Rational::zero(), |acc, (j, v)| acc + v * &x[*j])
            })
            .collect()
    }

    pub fn matmul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.nrows, other.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            let acc = &mut out.rows[i];
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let entry = acc.entry(*j).or_insert_with(Rational::zero);
                    *entry += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (i, row) in other.rows.iter().enumerate() {
            for (j, v) in row {
                let entry = out.rows[i].entry(*j).or_insert_with(Rational::zero);
                *entry += v;
            }
            out.rows[i].retain(|_, v| !v.is_zero());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows == self.ncols && *self == self.transpose()
    }
}

/// Order in which columns are eliminated. Exact arithmetic makes rank and
/// kernel dimension independent of it; particular solutions of singular
/// systems do depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ColumnOrder {
    #[default]
    Forward,
    Reverse,
}

/// Reduced row echelon form of `[A | b]` (the right-hand side is optional).
struct Echelon {
    rows: Vec<BTreeMap<usize, Rational>>,
    /// pivot column of each of the first `pivots.len()` rows
    pivots: Vec<usize>,
}

fn reduce(a: &SparseMatrix, rhs: Option<&[Rational]>, order: ColumnOrder) -> Echelon {
    let aug = a.ncols;
    let mut rows = a.rows.clone();
    if let Some(b) = rhs {
        assert_eq!(b.len(), a.nrows, "right-hand side length mismatch");
        for (row, v) in rows.iter_mut().zip(b) {
            if !v.is_zero() {
                row.insert(aug, v.clone());
            }
        }
    }
    let columns: Vec<usize> = match order {
        ColumnOrder::Forward => (0..aug).collect(),
        ColumnOrder::Reverse => (0..aug).rev().collect(),
    };
    let mut pivots = Vec::new();
    for col in columns {
        let next = pivots.len();
        // sparsest remaining row with a nonzero in this column
        let Some(pick) = (next..rows.len())
            .filter(|&r| rows[r].contains_key(&col))
            .min_by_key(|&r| rows[r].len())
        else {
            continue;
        };
        rows.swap(next, pick);
        let inv = Rational::one() / &rows[next][&col];
        for v in rows[next].values_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next {
                continue;
            }
            let Some(factor) = row.get(&col).cloned() else {
                continue;
            };
            for (j, v) in &pivot_row {
                let entry = row.entry(*j).or_insert_with(Rational::zero);
                *entry -= &factor * v;
            }
            row.retain(|_, v| !v.is_zero());
        }
        pivots.push(col);
        if pivots.len() == rows.len() {
            break;
        }
    }
    Echelon { rows, pivots }
}

pub fn rank(a: &SparseMatrix) -> usize {
    reduce(a, None, ColumnOrder::Forward).pivots.len()
}

/// Basis of `ker A`, one vector per free column.
pub fn nullspace(a: &SparseMatrix) -> Vec<Vec<Rational>> {
    nullspace_with(a, ColumnOrder::Forward)
}

pub fn nullspace_with(a: &SparseMatrix, order: ColumnOrder) -> Vec<Vec<Rational>> {
    let ech = reduce(a, None, order);
    let mut is_pivot = vec![false; a.ncols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    let free: Vec<usize> = (0..a.ncols).filter(|&c| !is_pivot[c]).collect();
    for f in free {
        let mut v = vec![Rational::zero(); a.ncols];
        v[f] = Rational::one();
        for (r, &pc) in ech.pivots.iter().enumerate() {
            if let Some(x) = ech.rows[r].get(&f) {
                v[pc] = -x;
            }
        }
        basis.push(v);
    }
    basis
}

/// A particular solution of `A x = b` with free variables set to zero, or
/// `None` if the system is inconsistent.
pub fn solve(a: &SparseMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    solve_with(a, b, ColumnOrder::Forward)
}

pub fn solve_with(a: &SparseMatrix, b: &[Rational], order: ColumnOrder) -> Option<Vec<Rational>> {
    let aug = a.ncols;
    let ech = reduce(a, Some(b), order);
    let npiv = ech.pivots.len();
    if ech.rows[npiv..].iter().any(|row| row.contains_key(&aug)) {
        return None;
    }
    let mut x = vec![Rational::zero(); a.ncols];
    for (r, &pc) in ech.pivots.iter().enumerate() {
        if let Some(v) = ech.rows[r].get(&aug) {
            x[pc] = v.clone();
        }
    }
    Some(x)
}

/// The solution of `A x = b` orthogonal to `ker A` (minimum Euclidean norm).
pub fn solve_min_norm(a: &SparseMatrix, b: &[Rational], order: ColumnOrder) -> Option<Vec<Rational>> {
    let x0 = solve_with(a, b, order)?;
    let kernel = nullspace_with(a, order);
    if kernel.is_empty() {
        return Some(x0);
    }
    let k = kernel.len();
    let mut gram = SparseMatrix::zeros(k, k);
    let mut rhs = Vec::with_capacity(k);
    for i in 0..k {
        for j in 0..k {
            gram.set(i, j, dot(&kernel[i], &kernel[j]));
        }
        rhs.push(dot(&kernel[i], &x0));
    }
    let coeffs = solve(&gram, &rhs).expect("Gram matrix of a basis is invertible");
    let mut x = x0;
    for (c, v) in coeffs.iter().zip(&kernel) {
        axpy(&mut x, &-c, v);
    }
    Some(x)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `y += alpha * x`.
pub fn axpy(y: &mut [Rational], alpha: &Rational, x: &[Rational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += alpha * xi;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ker = nullspace(&a);
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn inconsistent_system() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert!(solve(&a, &[int(1), int(2)]).is_none());
        let x = solve(&a, &[int(3), int(3)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![int(3), int(3)]);
    }

    #[test]
    fn min_norm_is_order_independent() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let b = [int(1), int(2)];
        let f = solve_min_norm(&a, &b, ColumnOrder::Forward).unwrap();
        let r = solve_min_norm(&a, &b, ColumnOrder::Reverse).unwrap();
        assert_eq!(f, r);
        assert_eq!(a.mul_vec(&f), b.to_vec());
        // x = (0, 1, 1) + s(1, -1, 1); min norm at s = 0
        assert_eq!(f, vec![int(0), int(1), int(1)]);
        let plain_f = solve_with(&a, &b, ColumnOrder::Forward).unwrap();
        let plain_r = solve_with(&a, &b, ColumnOrder::Reverse).unwrap();
        assert_ne!(plain_f, plain_r);
    }

    #[test]
    fn product_and_transpose() {
        let a = m(&[&[1, -1, 0], &[0, 1, -1]]);
        let aat = a.matmul(&a.transpose());
        assert_eq!(aat, m(&[&[2, -1], &[-1, 2]]));
        assert!(aat.is_symmetric());
        assert_eq!(dot(&[rat(1, 2), int(2)], &[int(2), rat(1, 4)]), rat(3, 2));
    }
}
