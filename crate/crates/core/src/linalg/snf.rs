//! Smith normal form over the integers.
//!
//! `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, non-negative,
//! `d_1 | d_2 | ...`. The diagonal is unique; the transforms are not.

use super::Matrix;
use crate::scalar::{ext_gcd, IntRing, Overflow};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith<T> {
    pub left: Matrix<T>,
    /// Inverse of `left`, tracked alongside it.
    pub left_inverse: Matrix<T>,
    pub diag: Matrix<T>,
    pub right: Matrix<T>,
}

impl<T: IntRing> Smith<T> {
    /// Nonzero diagonal entries, in order.
    pub fn invariants(&self) -> Vec<T> {
        let n = self.diag.rows().min(self.diag.cols());
        (0..n).map(|i| self.diag.get(i, i).clone()).filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().len()
    }
}

/// Full Smith decomposition with both transforms.
pub fn smith_normal_form<T: IntRing>(m: &Matrix<T>) -> Result<Smith<T>, Overflow> {
    let mut d = m.clone();
    let mut left = Matrix::identity(m.rows());
    let mut left_inverse = Matrix::identity(m.rows());
    let mut right = Matrix::identity(m.cols());
    let mut tr = Transforms { left: Some(&mut left), left_inv: Some(&mut left_inverse), right: Some(&mut right) };
    diagonalize(&mut d, &mut tr)?;
    Ok(Smith { left, left_inverse, diag: d, right })
}

/// Diagonal of the Smith form only (cheaper: no transforms tracked).
pub fn smith_diagonal<T: IntRing>(m: &Matrix<T>) -> Result<Vec<T>, Overflow> {
    let mut d = m.clone();
    diagonalize(&mut d, &mut Transforms { left: None, left_inv: None, right: None })?;
    let n = d.rows().min(d.cols());
    Ok((0..n).map(|i| d.get(i, i).clone()).collect())
}

struct Transforms<'a, T> {
    left: Option<&'a mut Matrix<T>>,
    left_inv: Option<&'a mut Matrix<T>>,
    right: Option<&'a mut Matrix<T>>,
}

impl<T: IntRing> Transforms<'_, T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if let Some(l) = self.left.as_deref_mut() {
            l.swap_rows(a, b);
        }
        if let Some(li) = self.left_inv.as_deref_mut() {
            li.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if let Some(r) = self.right.as_deref_mut() {
            r.swap_cols(a, b);
        }
    }

    /// row[dst] += f * row[src]
    fn row_add(&mut self, dst: usize, src: usize, f: &T) -> Result<(), Overflow> {
        if let Some(l) = self.left.as_deref_mut() {
            l.add_row_multiple(dst, src, f)?;
        }
        if let Some(li) = self.left_inv.as_deref_mut() {
            li.add_col_multiple(src, dst, &f.neg_c()?)?;
        }
        Ok(())
    }

    fn col_add(&mut self, dst: usize, src: usize, f: &T) -> Result<(), Overflow> {
        if let Some(r) = self.right.as_deref_mut() {
            r.add_col_multiple(dst, src, f)?;
        }
        Ok(())
    }

    /// Determinant-one row combination `(a, b) <- (x a + y b, u a + v b)`.
    fn combine_rows(&mut self, a: usize, b: usize, [x, y, u, v]: [&T; 4]) -> Result<(), Overflow> {
        if let Some(l) = self.left.as_deref_mut() {
            l.combine_rows(a, b, [x, y, u, v])?;
        }
        if let Some(li) = self.left_inv.as_deref_mut() {
            li.combine_cols(a, b, [v, &u.neg_c()?, &y.neg_c()?, x])?;
        }
        Ok(())
    }

    fn combine_cols(&mut self, a: usize, b: usize, coeffs: [&T; 4]) -> Result<(), Overflow> {
        if let Some(r) = self.right.as_deref_mut() {
            r.combine_cols(a, b, coeffs)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) -> Result<(), Overflow> {
        if let Some(l) = self.left.as_deref_mut() {
            l.negate_row(r)?;
        }
        if let Some(li) = self.left_inv.as_deref_mut() {
            li.negate_col(r)?;
        }
        Ok(())
    }
}

fn diagonalize<T: IntRing>(a: &mut Matrix<T>, tr: &mut Transforms<'_, T>) -> Result<(), Overflow> {
    let (rows, cols) = (a.rows(), a.cols());
    let n = rows.min(cols);
    for t in 0..n {
        let Some((pi, pj)) = smallest_entry(a, t) else { break };
        a.swap_rows(t, pi);
        tr.swap_rows(t, pi);
        a.swap_cols(t, pj);
        tr.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let (p, b) = (a.get(t, t).clone(), a.get(i, t).clone());
                if b.is_multiple_of(&p) {
                    let q = b.div_floor(&p).neg_c()?;
                    a.add_row_multiple(i, t, &q)?;
                    tr.row_add(i, t, &q)?;
                } else {
                    let (g, x, y) = ext_gcd(&p, &b)?;
                    let (pp, bb) = (p.div_floor(&g), b.div_floor(&g));
                    let nb = bb.neg_c()?;
                    a.combine_rows(t, i, [&x, &y, &nb, &pp])?;
                    tr.combine_rows(t, i, [&x, &y, &nb, &pp])?;
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let (p, b) = (a.get(t, t).clone(), a.get(t, j).clone());
                if b.is_multiple_of(&p) {
                    let q = b.div_floor(&p).neg_c()?;
                    a.add_col_multiple(j, t, &q)?;
                    tr.col_add(j, t, &q)?;
                } else {
                    let (g, x, y) = ext_gcd(&p, &b)?;
                    let (pp, bb) = (p.div_floor(&g), b.div_floor(&g));
                    let nb = bb.neg_c()?;
                    a.combine_cols(t, j, [&x, &y, &nb, &pp])?;
                    tr.combine_cols(t, j, [&x, &y, &nb, &pp])?;
                    dirty = true;
                }
            }
            if dirty || (t + 1..rows).any(|i| !a.get(i, t).is_zero()) {
                continue;
            }
            // Row and column clear: the pivot must divide the rest.
            let p = a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    a.add_row_multiple(t, i, &T::one())?;
                    tr.row_add(t, i, &T::one())?;
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t)?;
            tr.negate_row(t)?;
        }
    }
    Ok(())
}

/// Smith form of the lattice `span(columns of m) + e Z^rows`.
///
/// Every entry of the working matrix and of the tracked `U^-1` is kept in
/// `[0, e)`, which is sound because `e Z^rows` lies in the lattice. Returns
/// the invariant factors (length `rows`, divisibility chain, each dividing
/// `e`, units included) and `U^-1` modulo `e`.
pub fn smith_modular<T: IntRing>(m: &Matrix<T>, e: &T) -> Result<(Vec<T>, Matrix<T>), Overflow> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    for i in 0..rows {
        for j in 0..cols {
            let v = a.get(i, j).reduce(e);
            a.set(i, j, v);
        }
    }
    let mut li = Matrix::identity(rows);
    let reduce_row = |a: &mut Matrix<T>, i: usize| {
        for j in 0..cols {
            let v = a.get(i, j).reduce(e);
            a.set(i, j, v);
        }
    };
    let reduce_col = |a: &mut Matrix<T>, j: usize| {
        for i in 0..rows {
            let v = a.get(i, j).reduce(e);
            a.set(i, j, v);
        }
    };
    let reduce_li_col = |li: &mut Matrix<T>, j: usize| {
        for i in 0..rows {
            let v = li.get(i, j).reduce(e);
            li.set(i, j, v);
        }
    };
    let mut diag = Vec::with_capacity(rows);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&a, t) else { break };
        a.swap_rows(t, pi);
        li.swap_cols(t, pi);
        a.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let (p, b) = (a.get(t, t).clone(), a.get(i, t).clone());
                if b.is_multiple_of(&p) {
                    let q = b.div_floor(&p);
                    a.add_row_multiple(i, t, &q.neg_c()?)?;
                    li.add_col_multiple(t, i, &q)?;
                } else {
                    let (g, x, y) = ext_gcd(&p, &b)?;
                    let (pp, bb) = (p.div_floor(&g), b.div_floor(&g));
                    a.combine_rows(t, i, [&x, &y, &bb.neg_c()?, &pp])?;
                    li.combine_cols(t, i, [&pp, &bb, &y.neg_c()?, &x])?;
                    dirty = true;
                }
                for r in [t, i] {
                    reduce_row(&mut a, r);
                    reduce_li_col(&mut li, r);
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let (p, b) = (a.get(t, t).clone(), a.get(t, j).clone());
                if b.is_multiple_of(&p) {
                    let q = b.div_floor(&p).neg_c()?;
                    a.add_col_multiple(j, t, &q)?;
                } else {
                    let (g, x, y) = ext_gcd(&p, &b)?;
                    let (pp, bb) = (p.div_floor(&g), b.div_floor(&g));
                    a.combine_cols(t, j, [&x, &y, &bb.neg_c()?, &pp])?;
                    reduce_col(&mut a, t);
                    dirty = true;
                }
                reduce_col(&mut a, j);
            }
            if !dirty && (t + 1..rows).all(|i| a.get(i, t).is_zero()) {
                break;
            }
        }
        diag.push(a.get(t, t).gcd(e));
        t += 1;
    }
    diag.resize(rows, e.clone());
    // Restore the divisibility chain on the (now independent) cyclic factors.
    let keep: Vec<usize> = (0..rows).filter(|&i| !diag[i].is_one()).collect();
    let d = Matrix::diagonal(keep.len(), keep.len(), &keep.iter().map(|&i| diag[i].clone()).collect::<Vec<_>>());
    let s = smith_normal_form(&d)?;
    let mut out_li = Matrix::zeros(rows, rows);
    // Unit factors get zero columns; callers drop them.
    let mut out_diag = vec![T::one(); rows - keep.len()];
    let units = rows - keep.len();
    for (jj, _) in keep.iter().enumerate() {
        out_diag.push(s.diag.get(jj, jj).clone());
        for r in 0..rows {
            let mut acc = T::zero();
            for (kk, &src) in keep.iter().enumerate() {
                let c = s.left_inverse.get(kk, jj);
                if !c.is_zero() {
                    acc = acc.mul_add_c(li.get(r, src), c)?;
                }
            }
            out_li.set(r, units + jj, acc.reduce(e));
        }
    }
    Ok((out_diag, out_li))
}

fn smallest_entry<T: IntRing>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| av < *b) {
                let done = av.is_one();
                best = Some((i, j, av));
                if done {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn check(m: &Matrix<i64>) -> Smith<i64> {
        let s = smith_normal_form(m).unwrap();
        let prod = s.left.try_mul(m).unwrap().try_mul(&s.right).unwrap();
        assert_eq!(prod, s.diag, "U*M*V != D");
        for i in 0..s.diag.rows() {
            for j in 0..s.diag.cols() {
                if i != j {
                    assert_eq!(*s.diag.get(i, j), 0);
                }
            }
        }
        let inv = s.invariants();
        assert!(inv.iter().all(|d| *d > 0));
        assert!(inv.windows(2).all(|w| w[1] % w[0] == 0), "divisibility chain broken: {inv:?}");
        assert_eq!(s.left.determinant().unwrap().abs(), 1);
        assert_eq!(s.right.determinant().unwrap().abs(), 1);
        assert_eq!(s.left.try_mul(&s.left_inverse).unwrap(), Matrix::identity(m.rows()));
        s
    }

    #[test]
    fn identity_case() {
        let s = check(&Matrix::identity(2));
        assert_eq!(s.diag, Matrix::identity(2));
    }

    #[test]
    fn zero_case() {
        let s = check(&Matrix::zeros(2, 3));
        assert_eq!(s.diag, Matrix::zeros(2, 3));
    }

    #[test]
    fn two_by_two() {
        let s = check(&Matrix::from_rows(vec![vec![2, 4], vec![6, 8]]));
        assert_eq!(s.invariants(), vec![2, 4]);
    }

    #[test]
    fn divisibility_fixup() {
        let s = check(&Matrix::from_rows(vec![vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariants(), vec![1, 6]);
        let s = check(&Matrix::from_rows(vec![vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]));
        assert_eq!(s.invariants(), vec![2, 2, 60]);
    }

    #[test]
    fn bigint_agrees_with_i64() {
        let m = Matrix::from_rows(vec![vec![3i64, 5, 7], vec![11, 13, 17], vec![19, 23, 29]]);
        let small = smith_diagonal(&m).unwrap();
        let big = smith_diagonal(&m.to_big()).unwrap();
        assert_eq!(small.iter().map(|v| BigInt::from(*v)).collect::<Vec<_>>(), big);
    }

    proptest! {
        #[test]
        fn random_matrices_decompose(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i64..10, 25)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            let m = Matrix::from_rows(data);
            let s = check(&m);
            // |det M| equals the product of invariants for square full-rank input.
            if rows == cols {
                let det = m.determinant().unwrap().abs();
                let prod: i64 = if s.rank() == rows { s.invariants().iter().product() } else { 0 };
                prop_assert_eq!(det, prod);
            }
        }
    }
}
