use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::Matrix;
use crate::scalar::{IntRing, Overflow};

/// One sparse row: `(column, value)` pairs, strictly increasing columns, no zeros.
pub type SparseRow<T> = Vec<(usize, T)>;

/// Row-compressed sparse integer matrix.
///
/// Coboundary and symmetry operators touch only a handful of blocks per row,
/// so this is the storage behind every [`crate::AbHom`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix<T> {
    cols: usize,
    rows: Vec<SparseRow<T>>,
}

impl<T: IntRing> SparseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { cols, rows: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { cols: n, rows: (0..n).map(|i| vec![(i, T::one())]).collect() }
    }

    /// Rows may list a column more than once; duplicates are summed and zeros dropped.
    pub fn try_from_row_entries(rows: Vec<Vec<(usize, T)>>, cols: usize) -> Result<Self, Overflow> {
        let rows = rows.into_iter().map(|r| normalize_row(r, cols)).collect::<Result<_, _>>()?;
        Ok(SparseMatrix { cols, rows })
    }

    pub fn from_dense(m: &Matrix<T>) -> Self {
        let rows = (0..m.rows())
            .map(|i| m.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect())
            .collect();
        SparseMatrix { cols: m.cols(), rows }
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.rows[i]
    }

    pub fn row_slices(&self) -> &[SparseRow<T>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(p) => self.rows[i][p].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows.len()).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.rows.len()]; self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                out[*j][i] = v.clone();
            }
        }
        out
    }

    pub fn try_apply(&self, x: &[T]) -> Result<Vec<T>, Overflow> {
        assert_eq!(x.len(), self.cols, "dimension mismatch in sparse product");
        self.rows
            .iter()
            .map(|r| {
                let mut acc = T::zero();
                for (j, v) in r {
                    if !x[*j].is_zero() {
                        acc = acc.mul_add_c(v, &x[*j])?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    /// `self * rhs`
    pub fn try_mul(&self, rhs: &SparseMatrix<T>) -> Result<SparseMatrix<T>, Overflow> {
        assert_eq!(self.cols, rhs.rows.len(), "dimension mismatch in sparse product");
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in r {
                for (j, b) in &rhs.rows[*k] {
                    let e = acc.entry(*j).or_insert_with(T::zero);
                    *e = e.mul_add_c(a, b)?;
                }
            }
            rows.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(SparseMatrix { cols: rhs.cols, rows })
    }

    pub fn try_add(&self, rhs: &SparseMatrix<T>) -> Result<SparseMatrix<T>, Overflow> {
        self.try_lin_comb(&T::one(), rhs)
    }

    pub fn try_sub(&self, rhs: &SparseMatrix<T>) -> Result<SparseMatrix<T>, Overflow> {
        self.try_lin_comb(&T::one().neg_c()?, rhs)
    }

    /// `self + factor * rhs`
    fn try_lin_comb(&self, factor: &T, rhs: &SparseMatrix<T>) -> Result<SparseMatrix<T>, Overflow> {
        assert_eq!(self.cols, rhs.cols);
        assert_eq!(self.rows.len(), rhs.rows.len());
        let mut rows = Vec::with_capacity(self.rows.len());
        for (a, b) in self.rows.iter().zip(&rhs.rows) {
            let mut acc: BTreeMap<usize, T> = a.iter().cloned().collect();
            for (j, v) in b {
                let e = acc.entry(*j).or_insert_with(T::zero);
                *e = e.mul_add_c(factor, v)?;
            }
            rows.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(SparseMatrix { cols: self.cols, rows })
    }

    pub fn transpose(&self) -> SparseMatrix<T> {
        let mut rows: Vec<SparseRow<T>> = vec![Vec::new(); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                rows[*j].push((i, v.clone()));
            }
        }
        SparseMatrix { cols: self.rows.len(), rows }
    }

    /// Stack `self` on top of `below`.
    pub fn vstack(&self, below: &SparseMatrix<T>) -> SparseMatrix<T> {
        assert_eq!(self.cols, below.cols);
        let mut rows = self.rows.clone();
        rows.extend(below.rows.iter().cloned());
        SparseMatrix { cols: self.cols, rows }
    }

    /// Place `right` next to `self`.
    pub fn hstack(&self, right: &SparseMatrix<T>) -> SparseMatrix<T> {
        assert_eq!(self.rows.len(), right.rows.len());
        let rows = self
            .rows
            .iter()
            .zip(&right.rows)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(j, v)| (j + self.cols, v.clone())));
                r
            })
            .collect();
        SparseMatrix { cols: self.cols + right.cols, rows }
    }

    /// Select and reorder rows.
    pub fn select_rows(&self, which: &[usize]) -> SparseMatrix<T> {
        SparseMatrix { cols: self.cols, rows: which.iter().map(|&i| self.rows[i].clone()).collect() }
    }

    /// Reduce row `i` modulo `moduli[i]` (zero modulus leaves the row alone).
    pub fn reduce_rows(&self, moduli: &[T]) -> SparseMatrix<T> {
        assert_eq!(moduli.len(), self.rows.len());
        let rows = self
            .rows
            .iter()
            .zip(moduli)
            .map(|(r, m)| r.iter().map(|(j, v)| (*j, v.reduce(m))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { cols: self.cols, rows }
    }

    pub fn map_values(&self, f: impl Fn(&T) -> Result<T, Overflow>) -> Result<SparseMatrix<T>, Overflow> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(j, v)| Ok((*j, f(v)?)))
                    .filter(|e| !matches!(e, Ok((_, v)) if v.is_zero()))
                    .collect::<Result<Vec<_>, Overflow>>()
            })
            .collect::<Result<Vec<_>, Overflow>>()?;
        Ok(SparseMatrix { cols: self.cols, rows })
    }
}

impl SparseMatrix<BigInt> {
    pub fn from_row_entries(rows: Vec<Vec<(usize, BigInt)>>, cols: usize) -> Self {
        Self::try_from_row_entries(rows, cols).expect("arbitrary precision")
    }

    pub fn narrow<U: IntRing>(&self) -> Option<SparseMatrix<U>> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, v)| U::from_int(v).map(|v| (*j, v))).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(SparseMatrix { cols: self.cols, rows })
    }
}

fn normalize_row<T: IntRing>(mut r: Vec<(usize, T)>, cols: usize) -> Result<SparseRow<T>, Overflow> {
    r.sort_by_key(|(j, _)| *j);
    let mut out: SparseRow<T> = Vec::with_capacity(r.len());
    for (j, v) in r {
        assert!(j < cols, "column {j} out of range {cols}");
        match out.last_mut() {
            Some((lj, lv)) if *lj == j => *lv = lv.add_c(&v)?,
            _ => out.push((j, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    Ok(out)
}
