//! Dense matrices over a tower field: reduction to reduced row echelon form,
//! rank, null spaces, and row-space membership. Sizes here stay at a few
//! hundred rows/columns, so plain Gauss-Jordan is all that is needed.

use std::sync::Arc;

use crate::field::{Fe, Field};
use crate::{Error, Result};

#[derive(Clone)]
pub struct Matrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.degree() == other.field.degree()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}
impl Eq for Matrix {}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        if self.rows > 12 {
            writeln!(f, "  …")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(field: Arc<Field>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Arc<Field>, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: Arc<Field>, rows: Vec<Vec<Fe>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: Fe) {
        let f = Arc::clone(&self.field);
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, f.mul(v, s));
        }
    }

    /// row[dst] += s * row[src] (characteristic 2: += is XOR).
    fn add_scaled_row(&mut self, dst: usize, src: usize, s: Fe) {
        let f = Arc::clone(&self.field);
        for c in 0..self.cols {
            let v = self.get(dst, c) ^ f.mul(s, self.get(src, c));
            self.set(dst, c, v);
        }
    }

    /// In-place reduced row echelon form; returns the rank. Deterministic:
    /// pivots are chosen top-down at the leftmost available column.
    pub fn rref(&mut self) -> usize {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(found) = (pivot_row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(pivot_row, found);
            let inv = self.field.inv(self.get(pivot_row, col));
            self.scale_row(pivot_row, inv);
            for r in 0..self.rows {
                let v = self.get(r, col);
                if r != pivot_row && v != 0 {
                    self.add_scaled_row(r, pivot_row, v);
                }
            }
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        pivot_row
    }

    /// RREF with zero rows removed: the canonical basis of the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let mut m = self.clone();
        let rank = m.rref();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        m
    }

    pub fn rank(&self) -> usize {
        self.clone().rref()
    }

    /// Canonical basis of `{x : self · xᵀ = 0}` as rows (RREF form).
    pub fn nullspace(&self) -> Matrix {
        let mut m = self.clone();
        let rank = m.rref();
        let mut pivot_cols = Vec::with_capacity(rank);
        {
            let mut col = 0;
            for r in 0..rank {
                while m.get(r, col) == 0 {
                    col += 1;
                }
                pivot_cols.push(col);
            }
        }
        let is_pivot = {
            let mut v = vec![false; m.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if is_pivot[free] {
                continue;
            }
            let mut vec = vec![0; m.cols];
            vec[free] = 1;
            // -a = a in characteristic 2
            for (r, &p) in pivot_cols.iter().enumerate() {
                vec[p] = m.get(r, free);
            }
            basis.push(vec);
        }
        let mut out = Matrix::from_rows(Arc::clone(&self.field), basis).unwrap();
        if out.rows == 0 {
            out.cols = self.cols;
        }
        out.rref();
        out
    }

    /// Stack `other` below `self`.
    pub fn stacked(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols || self.field.degree() != other.field.degree() {
            return Err(Error::InvalidArgument(
                "stack requires equal widths and fields".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: Arc::clone(&self.field),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Whether `word` lies in the row space; assumes `self` is in RREF.
    pub fn contains_in_rowspace(&self, word: &[Fe]) -> bool {
        debug_assert_eq!(word.len(), self.cols);
        let f = &self.field;
        let mut w = word.to_vec();
        let mut col = 0;
        for r in 0..self.rows {
            while col < self.cols && self.get(r, col) == 0 {
                col += 1;
            }
            if col == self.cols {
                break;
            }
            let c = w[col];
            if c != 0 {
                for j in col..self.cols {
                    w[j] ^= f.mul(c, self.get(r, j));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// `self · otherᵀ`, used to confirm duality (result should be zero).
    pub fn times_transpose(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols || self.field.degree() != other.field.degree() {
            return Err(Error::InvalidArgument(
                "product requires equal widths and fields".into(),
            ));
        }
        let f = &self.field;
        let mut out = Matrix::zero(Arc::clone(&self.field), self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                let mut acc = 0;
                for c in 0..self.cols {
                    acc ^= f.mul(self.get(i, c), other.get(j, c));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Arc<Field> {
        Field::get(2).unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let mut m = Matrix::from_rows(
            gf4(),
            vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]],
        )
        .unwrap();
        let rank = m.rref();
        // rows sum to zero (1^2^3 = 0), so rank is 2
        assert_eq!(rank, 2);
        assert_eq!(m.row(0)[0], 1);
    }

    #[test]
    fn nullspace_is_orthogonal_complement() {
        let m = Matrix::from_rows(gf4(), vec![vec![1, 1, 0, 2], vec![0, 1, 1, 3]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.rows(), 2);
        assert!(m.times_transpose(&ns).unwrap().is_zero());
        // dual of the dual returns the original row space
        let back = ns.nullspace();
        assert_eq!(back, m.row_space_basis());
    }

    #[test]
    fn nullspace_of_full_rank_square_is_empty() {
        let m = Matrix::identity(gf4(), 3);
        let ns = m.nullspace();
        assert_eq!(ns.rows(), 0);
        assert_eq!(ns.cols(), 3);
    }

    #[test]
    fn membership_via_reduction() {
        let m = Matrix::from_rows(gf4(), vec![vec![1, 0, 2], vec![0, 1, 3]])
            .unwrap()
            .row_space_basis();
        let f = gf4();
        // 2*row0 + row1
        let w = vec![2, 1, f.add(f.mul(2, 2), 3)];
        assert!(m.contains_in_rowspace(&w));
        assert!(!m.contains_in_rowspace(&[0, 0, 1]));
    }

    #[test]
    fn zero_row_handling() {
        let m = Matrix::from_rows(gf4(), vec![vec![0, 0], vec![1, 1]]).unwrap();
        let basis = m.row_space_basis();
        assert_eq!(basis.rows(), 1);
        assert_eq!(basis.row(0), &[1, 1]);
    }
}
