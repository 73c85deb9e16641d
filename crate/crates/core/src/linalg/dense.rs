use std::fmt;

use num_bigint::BigInt;

use crate::scalar::{IntRing, Overflow};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntRing> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Build from row vectors; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[T]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).mul_add_c(a, b)?;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_apply(&self, x: &[T]) -> Result<Vec<T>, Overflow> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in matrix-vector product");
        let mut out = vec![T::zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(x) {
                if !a.is_zero() && !b.is_zero() {
                    *o = o.mul_add_c(a, b)?;
                }
            }
        }
        Ok(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += factor * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &T) -> Result<(), Overflow> {
        if factor.is_zero() {
            return Ok(());
        }
        for j in 0..self.cols {
            let s = self.get(src, j).clone();
            if !s.is_zero() {
                let v = self.get(dst, j).mul_add_c(factor, &s)?;
                self.set(dst, j, v);
            }
        }
        Ok(())
    }

    /// `col[dst] += factor * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &T) -> Result<(), Overflow> {
        if factor.is_zero() {
            return Ok(());
        }
        for i in 0..self.rows {
            let s = self.get(i, src).clone();
            if !s.is_zero() {
                let v = self.get(i, dst).mul_add_c(factor, &s)?;
                self.set(i, dst, v);
            }
        }
        Ok(())
    }

    pub fn negate_row(&mut self, r: usize) -> Result<(), Overflow> {
        for j in 0..self.cols {
            let v = self.get(r, j).neg_c()?;
            self.set(r, j, v);
        }
        Ok(())
    }

    pub fn negate_col(&mut self, c: usize) -> Result<(), Overflow> {
        for i in 0..self.rows {
            let v = self.get(i, c).neg_c()?;
            self.set(i, c, v);
        }
        Ok(())
    }

    /// Replace rows `(a, b)` by `(x*a + y*b, u*a + v*b)`.
    pub fn combine_rows(&mut self, a: usize, b: usize, [x, y, u, v]: [&T; 4]) -> Result<(), Overflow> {
        for j in 0..self.cols {
            let ra = self.get(a, j).clone();
            let rb = self.get(b, j).clone();
            if ra.is_zero() && rb.is_zero() {
                continue;
            }
            let na = x.mul_c(&ra)?.mul_add_c(y, &rb)?;
            let nb = u.mul_c(&ra)?.mul_add_c(v, &rb)?;
            self.set(a, j, na);
            self.set(b, j, nb);
        }
        Ok(())
    }

    /// Replace columns `(a, b)` by `(x*a + y*b, u*a + v*b)`.
    pub fn combine_cols(&mut self, a: usize, b: usize, [x, y, u, v]: [&T; 4]) -> Result<(), Overflow> {
        for i in 0..self.rows {
            let ca = self.get(i, a).clone();
            let cb = self.get(i, b).clone();
            if ca.is_zero() && cb.is_zero() {
                continue;
            }
            let na = x.mul_c(&ca)?.mul_add_c(y, &cb)?;
            let nb = u.mul_c(&ca)?.mul_add_c(v, &cb)?;
            self.set(i, a, na);
            self.set(i, b, nb);
        }
        Ok(())
    }

    pub fn to_big(&self) -> Matrix<BigInt> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(IntRing::to_int).collect() }
    }

    pub fn narrow<U: IntRing>(m: &Matrix<BigInt>) -> Option<Matrix<U>> {
        let data = m.data.iter().map(U::from_int).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: m.rows, cols: m.cols, data })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<T, Overflow> {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = sign.neg_c()?;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a.get(i, j).mul_c(a.get(k, k))?.sub_c(&a.get(i, k).mul_c(a.get(k, j))?)?.div_floor(&prev);
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign.mul_c(a.get(n - 1, n - 1))
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = (0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]).collect();
        f.debug_struct("Matrix").field("rows", &self.rows).field("cols", &self.cols).field("data", &rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<i64> {
        Matrix::from_rows(rows)
    }

    #[test]
    fn product_and_transpose() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        let b = m(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(a.try_mul(&b).unwrap(), m(vec![vec![2, 1], vec![4, 3]]));
        assert_eq!(a.transpose(), m(vec![vec![1, 3], vec![2, 4]]));
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(m(vec![vec![2, 4], vec![6, 8]]).determinant().unwrap(), -8);
        assert_eq!(m(vec![vec![0, 1], vec![1, 0]]).determinant().unwrap(), -1);
        assert_eq!(m(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]).determinant().unwrap(), -3);
        assert_eq!(m(vec![vec![1, 2], vec![2, 4]]).determinant().unwrap(), 0);
    }
}
