//! Row-style Hermite normal form: `U * M = H`.
//!
//! `H` is in row echelon form, each pivot is positive, entries above a pivot
//! lie in `[0, pivot)`, zero rows come last. `H` depends only on the row
//! lattice of `M`.

use super::Matrix;
use crate::scalar::{ext_gcd, IntRing, Overflow};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hermite<T> {
    pub form: Matrix<T>,
    pub transform: Matrix<T>,
    /// Column index of the pivot in each nonzero row.
    pub pivots: Vec<usize>,
}

pub fn hermite_normal_form<T: IntRing>(m: &Matrix<T>) -> Result<Hermite<T>, Overflow> {
    let mut h = m.clone();
    let mut u = Matrix::identity(m.rows());
    let pivots = echelonize(&mut h, Some(&mut u))?;
    Ok(Hermite { form: h, transform: u, pivots })
}

/// Hermite form without the transform.
pub fn hermite_form_only<T: IntRing>(m: &Matrix<T>) -> Result<(Matrix<T>, Vec<usize>), Overflow> {
    let mut h = m.clone();
    let pivots = echelonize(&mut h, None)?;
    Ok((h, pivots))
}

fn echelonize<T: IntRing>(h: &mut Matrix<T>, mut u: Option<&mut Matrix<T>>) -> Result<Vec<usize>, Overflow> {
    let rows = h.rows();
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..h.cols() {
        if p == rows {
            break;
        }
        let Some(start) = (p..rows).filter(|&i| !h.get(i, col).is_zero()).min_by_key(|&i| h.get(i, col).abs()) else {
            continue;
        };
        h.swap_rows(p, start);
        if let Some(u) = u.as_deref_mut() {
            u.swap_rows(p, start);
        }
        for i in p + 1..rows {
            if h.get(i, col).is_zero() {
                continue;
            }
            let (a, b) = (h.get(p, col).clone(), h.get(i, col).clone());
            let (g, x, y) = ext_gcd(&a, &b)?;
            let (aa, bb) = (a.div_floor(&g), b.div_floor(&g));
            let coeffs = [&x, &y, &bb.neg_c()?, &aa];
            h.combine_rows(p, i, coeffs)?;
            if let Some(u) = u.as_deref_mut() {
                u.combine_rows(p, i, coeffs)?;
            }
        }
        if h.get(p, col).is_negative() {
            h.negate_row(p)?;
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(p)?;
            }
        }
        let piv = h.get(p, col).clone();
        for i in 0..p {
            let q = h.get(i, col).div_floor(&piv);
            if !q.is_zero() {
                let f = q.neg_c()?;
                h.add_row_multiple(i, p, &f)?;
                if let Some(u) = u.as_deref_mut() {
                    u.add_row_multiple(i, p, &f)?;
                }
            }
        }
        pivots.push(col);
        p += 1;
    }
    Ok(pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &Matrix<i64>) -> Hermite<i64> {
        let h = hermite_normal_form(m).unwrap();
        assert_eq!(h.transform.try_mul(m).unwrap(), h.form);
        assert_eq!(h.transform.determinant().unwrap().abs(), 1);
        for (r, &c) in h.pivots.iter().enumerate() {
            let piv = *h.form.get(r, c);
            assert!(piv > 0);
            assert!((0..c).all(|j| *h.form.get(r, j) == 0));
            for above in 0..r {
                let v = *h.form.get(above, c);
                assert!((0..piv).contains(&v));
            }
        }
        for r in h.pivots.len()..m.rows() {
            assert!(h.form.row(r).iter().all(|v| *v == 0));
        }
        h
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(check(&Matrix::identity(3)).form, Matrix::identity(3));
        assert_eq!(check(&Matrix::from_rows(vec![vec![0i64]])).form, Matrix::from_rows(vec![vec![0]]));
    }

    #[test]
    fn gcd_column() {
        let h = check(&Matrix::from_rows(vec![vec![4i64], vec![6]]));
        assert_eq!(h.form, Matrix::from_rows(vec![vec![2], vec![0]]));
    }

    proptest! {
        #[test]
        fn form_is_a_lattice_invariant(seed in proptest::collection::vec(-6i64..7, 12), mix in proptest::collection::vec(-3i64..4, 2)) {
            let m = Matrix::from_rows(vec![seed[0..4].to_vec(), seed[4..8].to_vec(), seed[8..12].to_vec()]);
            let a = check(&m);
            // Adding a multiple of one row to another leaves the lattice, hence H, unchanged.
            let mut m2 = m.clone();
            m2.add_row_multiple(2, 0, &mix[0]).unwrap();
            m2.add_row_multiple(0, 1, &mix[1]).unwrap();
            m2.swap_rows(1, 2);
            let b = check(&m2);
            prop_assert_eq!(a.form, b.form);
        }
    }
}
