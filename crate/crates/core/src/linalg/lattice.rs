//! Lattice kernels behind every subgroup computation.
//!
//! A finitely generated abelian group with diagonal relations is `Z^n / R`
//! where `R` is spanned by `m_j e_j` for each coordinate modulus `m_j > 0`.
//! Two engines work on the lattices involved:
//!
//! * [`kernel_generators`] refines a basis of the source one target row at a
//!   time. Cost scales with the (small) source, so it is the right tool for
//!   kernels of coboundaries into large cochain groups.
//! * [`EchelonBasis`] maintains a row echelon basis of `span(gens) + R`
//!   under insertion, optionally tracking each row as a combination of the
//!   inserted generators. It answers membership, solving and syzygies.

use super::SparseRow;
use crate::scalar::{ext_gcd, IntRing, Overflow};

/// Generators of `{x in Z^n : row_i . x ≡ 0 (mod row_moduli[i]) for all i}`
/// modulo the source relations.
///
/// Every `src_moduli[j] * e_j` must already lie in the kernel (the map must
/// be well defined); this lets basis vectors be reduced in torsion
/// coordinates as the refinement proceeds. The returned vectors together with
/// the source relations span the kernel lattice.
pub fn kernel_generators<T: IntRing>(
    src_moduli: &[T],
    rows: &[SparseRow<T>],
    row_moduli: &[T],
) -> Result<Vec<Vec<T>>, Overflow> {
    assert_eq!(rows.len(), row_moduli.len());
    let n = src_moduli.len();
    let mut basis: Vec<Vec<T>> = (0..n)
        .map(|j| {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            e
        })
        .collect();
    let mut values: Vec<T> = Vec::new();
    for (row, modulus) in rows.iter().zip(row_moduli) {
        if row.is_empty() || basis.is_empty() {
            continue;
        }
        values.clear();
        for b in &basis {
            let mut acc = T::zero();
            for (j, a) in row {
                if !b[*j].is_zero() {
                    acc = acc.mul_add_c(a, &b[*j])?;
                }
            }
            values.push(acc.reduce(modulus));
        }
        // Euclid on the values, always reducing by the smallest one, keeps
        // the basis entries small.
        let p = loop {
            let Some(p) = (0..values.len())
                .filter(|&c| !values[c].is_zero())
                .min_by(|&x, &y| values[x].abs().cmp(&values[y].abs()).then(x.cmp(&y)))
            else {
                break None;
            };
            let mut done = true;
            for c in 0..basis.len() {
                if c == p || values[c].is_zero() {
                    continue;
                }
                let q = values[c].div_floor(&values[p]);
                if !q.is_zero() {
                    axpy_neg(&mut basis, c, p, &q)?;
                    reduce_torsion(&mut basis[c], src_moduli);
                }
                values[c] = values[c].sub_c(&q.mul_c(&values[p])?)?.reduce(modulus);
                if !values[c].is_zero() {
                    done = false;
                }
            }
            if done {
                break Some(p);
            }
        };
        let Some(p) = p else { continue };
        let g = values[p].clone();
        if modulus.is_zero() {
            basis.swap_remove(p);
        } else {
            let h = modulus.div_floor(&g.gcd(modulus));
            for v in basis[p].iter_mut() {
                *v = v.mul_c(&h)?;
            }
            reduce_torsion(&mut basis[p], src_moduli);
            if basis[p].iter().all(|v| v.is_zero()) {
                basis.swap_remove(p);
            }
        }
    }
    basis.retain(|b| b.iter().any(|v| !v.is_zero()));
    Ok(basis)
}

fn reduce_torsion<T: IntRing>(v: &mut [T], moduli: &[T]) {
    for (x, m) in v.iter_mut().zip(moduli) {
        if !m.is_zero() {
            *x = x.mod_floor(m);
        }
    }
}

/// `basis[dst] -= q * basis[src]`
fn axpy_neg<T: IntRing>(basis: &mut [Vec<T>], dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
    let nq = q.neg_c()?;
    let (d, s) = pair_mut(basis, dst, src);
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x = x.mul_add_c(&nq, y)?;
        }
    }
    Ok(())
}

fn pair_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &mut T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &mut lo[b])
    }
}

#[derive(Clone, Debug)]
struct Row<T> {
    vector: Vec<T>,
    transform: Vec<T>,
}

/// Incremental row echelon basis of `span(generators) + R`.
///
/// Relation rows `m_j e_j` are seeded at construction with zero transform,
/// so a vector reduces to zero exactly when it lies in the subgroup. When
/// `tracked > 0`, each row carries its coefficients over the tracked
/// generators and every generator that reduces to zero yields a syzygy.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    moduli: Vec<T>,
    tracked: usize,
    slots: Vec<Option<Row<T>>>,
    syzygies: Vec<Vec<T>>,
}

impl<T: IntRing> EchelonBasis<T> {
    pub fn new(moduli: &[T], tracked: usize) -> Self {
        let n = moduli.len();
        let mut slots = vec![None; n];
        for (j, m) in moduli.iter().enumerate() {
            if !m.is_zero() {
                let mut vector = vec![T::zero(); n];
                vector[j] = m.clone();
                slots[j] = Some(Row { vector, transform: vec![T::zero(); tracked] });
            }
        }
        EchelonBasis { moduli: moduli.to_vec(), tracked, slots, syzygies: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    /// Insert a vector; `generator` names the tracked generator it stands for.
    pub fn insert(&mut self, v: Vec<T>, generator: Option<usize>) -> Result<(), Overflow> {
        assert_eq!(v.len(), self.dim());
        let mut t = vec![T::zero(); self.tracked];
        if let Some(g) = generator {
            t[g] = T::one();
        }
        let mut v = v;
        reduce_torsion(&mut v, &self.moduli);
        let mut start = 0;
        loop {
            let Some(c) = (start..v.len()).find(|&j| !v[j].is_zero()) else {
                if t.iter().any(|x| !x.is_zero()) {
                    self.syzygies.push(t);
                }
                return Ok(());
            };
            start = c;
            let Some(row) = self.slots[c].as_mut() else {
                if v[c].is_negative() {
                    negate(&mut v)?;
                    negate(&mut t)?;
                }
                self.slots[c] = Some(Row { vector: v, transform: t });
                return Ok(());
            };
            let (h, vc) = (row.vector[c].clone(), v[c].clone());
            if vc.is_multiple_of(&h) {
                let q = vc.div_floor(&h).neg_c()?;
                add_scaled(&mut v[c..], &row.vector[c..], &q)?;
                add_scaled(&mut t, &row.transform, &q)?;
            } else {
                let (g, x, y) = ext_gcd(&h, &vc)?;
                let (hh, vv) = (h.div_floor(&g), vc.div_floor(&g));
                let nvv = vv.neg_c()?;
                mix(&mut row.vector[c..], &mut v[c..], [&x, &y, &nvv, &hh])?;
                mix(&mut row.transform, &mut t, [&x, &y, &nvv, &hh])?;
                reduce_torsion(&mut row.vector[c + 1..], &self.moduli[c + 1..]);
            }
            reduce_torsion(&mut v[c + 1..], &self.moduli[c + 1..]);
        }
    }

    /// Write `x = sum coeffs_i * gen_i + r (mod R)` with `r` reduced against
    /// the pivots into `[0, pivot)`. Returns `(r, coeffs)`.
    pub fn reduce(&self, x: &[T]) -> Result<(Vec<T>, Vec<T>), Overflow> {
        assert_eq!(x.len(), self.dim());
        let mut r = x.to_vec();
        let mut coeffs = vec![T::zero(); self.tracked];
        for c in 0..r.len() {
            let Some(row) = &self.slots[c] else { continue };
            let q = r[c].div_floor(&row.vector[c]);
            if q.is_zero() {
                continue;
            }
            let nq = q.neg_c()?;
            add_scaled(&mut r[c..], &row.vector[c..], &nq)?;
            add_scaled(&mut coeffs, &row.transform, &q)?;
        }
        Ok((r, coeffs))
    }

    pub fn contains(&self, x: &[T]) -> Result<bool, Overflow> {
        Ok(self.reduce(x)?.0.iter().all(|v| v.is_zero()))
    }

    /// Relations among the tracked generators found so far.
    pub fn syzygies(&self) -> &[Vec<T>] {
        &self.syzygies
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.slots.len()).filter(|&c| self.slots[c].is_some()).collect()
    }

    /// Canonical Hermite basis of the lattice (entries above pivots reduced).
    pub fn hermite_rows(&self) -> Result<Vec<Vec<T>>, Overflow> {
        let pivots = self.pivots();
        let mut rows: Vec<Vec<T>> =
            pivots.iter().map(|&c| self.slots[c].as_ref().map(|r| r.vector.clone()).unwrap_or_default()).collect();
        // Ascending: step k only touches columns >= c_k, so earlier
        // reductions survive.
        for (k, &c) in pivots.iter().enumerate() {
            let p = rows[k][c].clone();
            for i in 0..k {
                let q = rows[i][c].div_floor(&p);
                if !q.is_zero() {
                    let nq = q.neg_c()?;
                    let (lo, hi) = rows.split_at_mut(k);
                    add_scaled(&mut lo[i][c..], &hi[0][c..], &nq)?;
                    reduce_torsion(&mut lo[i][c + 1..], &self.moduli[c + 1..]);
                }
            }
        }
        Ok(rows)
    }
}

fn negate<T: IntRing>(v: &mut [T]) -> Result<(), Overflow> {
    for x in v.iter_mut() {
        *x = x.neg_c()?;
    }
    Ok(())
}

/// `dst += f * src`
fn add_scaled<T: IntRing>(dst: &mut [T], src: &[T], f: &T) -> Result<(), Overflow> {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.mul_add_c(f, s)?;
        }
    }
    Ok(())
}

/// `(a, b) <- (x*a + y*b, u*a + v*b)`
fn mix<T: IntRing>(a: &mut [T], b: &mut [T], [x, y, u, v]: [&T; 4]) -> Result<(), Overflow> {
    for (p, q) in a.iter_mut().zip(b.iter_mut()) {
        if p.is_zero() && q.is_zero() {
            continue;
        }
        let np = x.mul_c(p)?.mul_add_c(y, q)?;
        let nq = u.mul_c(p)?.mul_add_c(v, q)?;
        *p = np;
        *q = nq;
    }
    Ok(())
}
