//! Exact linear algebra: integer determinants (fraction-free Bareiss) and
//! matrix rank over an arbitrary [`Scalar`] field via sparse elimination.

use std::collections::BTreeMap;


use crate::field::Scalar;

/// Determinant of a small integer matrix by fraction-free Bareiss
/// elimination. Desk-scale inputs only (entries and sizes stay tiny here).
pub fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Sparse matrix in row-major form: each row maps column index to value.
pub struct SparseMatrix<F> {
    pub rows: Vec<BTreeMap<usize, F>>,
    pub cols: usize,
}

impl<F: Scalar> SparseMatrix<F> {
    pub fn new(row_count: usize, cols: usize) -> Self {
        SparseMatrix { rows: vec![BTreeMap::new(); row_count], cols }
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        if !v.is_zero() {
            self.rows[r].insert(c, v);
        }
    }

    /// Rank by Gaussian elimination with sparsity-aware pivot choice
    /// (shortest eligible row). Exact over any field scalar.
    pub fn rank(mut self) -> usize {
        let mut rank = 0;
        let mut active: Vec<usize> = (0..self.rows.len()).collect();
        while !active.is_empty() {
            // pick the sparsest non-empty active row
            active.retain(|&r| !self.rows[r].is_empty());
            let Some(&pivot_row) = active.iter().min_by_key(|&&r| self.rows[r].len()) else {
                break;
            };
            let (&pivot_col, pv) = self.rows[pivot_row].iter().next().unwrap();
            let pv = pv.clone();
            rank += 1;
            let pivot = self.rows[pivot_row].clone();
            active.retain(|&r| r != pivot_row);
            self.rows[pivot_row].clear();
            for &r in &active {
                let Some(coeff) = self.rows[r].get(&pivot_col).cloned() else {
                    continue;
                };
                let factor = coeff / pv.clone();
                for (&c, v) in &pivot {
                    let delta = factor.clone() * v.clone();
                    let entry = self.rows[r].remove(&c).unwrap_or_else(F::zero);
                    let new = entry - delta;
                    if !new.is_zero() {
                        self.rows[r].insert(c, new);
                    }
                }
            }
        }
        rank
    }
}

/// Convenience: rank of a dense 0/±1 matrix given as rows of i8.
pub fn rank_dense<F: Scalar>(rows: &[Vec<i8>], cols: usize) -> usize {
    let mut m = SparseMatrix::<F>::new(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                m.set(i, j, F::from_i64(v as i64));
            }
        }
    }
    m.rank()
}
