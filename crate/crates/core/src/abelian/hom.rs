use num_traits::Zero;

use super::FgAbelianGroup;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseMatrix};
use crate::Int;

/// A homomorphism between finitely generated abelian groups, stored as a
/// sparse integer matrix acting on coordinate column vectors.
///
/// Rows of torsion target coordinates are kept reduced, so two maps are
/// equal as homomorphisms exactly when they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbHom {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: SparseMatrix<Int>,
}

impl AbHom {
    /// Validates shape and well-definedness on torsion generators.
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, matrix: SparseMatrix<Int>) -> Result<Self> {
        if matrix.nrows() != target.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), got: matrix.nrows() });
        }
        if matrix.ncols() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), got: matrix.ncols() });
        }
        for (i, row) in matrix.row_slices().iter().enumerate() {
            let t = target.modulus(i);
            for (j, v) in row {
                let s = source.modulus(*j);
                if s.is_zero() {
                    continue;
                }
                let image = s * v;
                let ok = if t.is_zero() { image.is_zero() } else { (&image % t).is_zero() };
                if !ok {
                    return Err(Error::IllDefined(format!(
                        "generator {j} has order {s} but its image has coordinate {i} = {v}, not killed by {s}"
                    )));
                }
            }
        }
        Ok(Self::new_unchecked(source, target, matrix))
    }

    /// For matrices that are well defined by construction.
    pub(crate) fn new_unchecked(source: FgAbelianGroup, target: FgAbelianGroup, matrix: SparseMatrix<Int>) -> Self {
        let matrix = matrix.reduce_rows(target.moduli());
        AbHom { source, target, matrix }
    }

    pub fn from_rows(source: FgAbelianGroup, target: FgAbelianGroup, rows: Vec<Vec<Int>>) -> Result<Self> {
        let cols = source.dim();
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
        }
        let dense = Matrix::from_rows_with_cols(rows, cols);
        Self::new(source, target, SparseMatrix::from_dense(&dense))
    }

    /// Column `j` is the image of the `j`-th source generator.
    pub fn from_columns(source: FgAbelianGroup, target: FgAbelianGroup, columns: &[Vec<Int>]) -> Result<Self> {
        if columns.len() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), got: columns.len() });
        }
        if let Some(c) = columns.iter().find(|c| c.len() != target.dim()) {
            return Err(Error::DimensionMismatch { expected: target.dim(), got: c.len() });
        }
        let mut rows: Vec<Vec<(usize, Int)>> = vec![Vec::new(); target.dim()];
        for (j, c) in columns.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    rows[i].push((j, v.clone()));
                }
            }
        }
        Self::new(source, target, SparseMatrix::from_row_entries(rows, columns.len()))
    }

    pub fn identity(group: &FgAbelianGroup) -> Self {
        AbHom::new_unchecked(group.clone(), group.clone(), SparseMatrix::identity(group.dim()))
    }

    pub fn zero(source: &FgAbelianGroup, target: &FgAbelianGroup) -> Self {
        AbHom::new_unchecked(source.clone(), target.clone(), SparseMatrix::zeros(target.dim(), source.dim()))
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &SparseMatrix<Int> {
        &self.matrix
    }

    pub fn dense(&self) -> Matrix<Int> {
        self.matrix.to_dense()
    }

    /// Image of `x`, in canonical form.
    pub fn apply(&self, x: &[Int]) -> Result<Vec<Int>> {
        self.source.check(x)?;
        let y = self.matrix.try_apply(x).expect("arbitrary precision");
        Ok(self.target.canonical(&y))
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        self.matrix.column(j)
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        self.matrix.columns()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &AbHom) -> Result<AbHom> {
        if first.target != self.source {
            return Err(Error::InvalidArgument(format!(
                "cannot compose: {} is not the source {}",
                first.target, self.source
            )));
        }
        let m = self.matrix.try_mul(&first.matrix).expect("arbitrary precision");
        Ok(AbHom::new_unchecked(first.source.clone(), self.target.clone(), m))
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom> {
        self.same_shape(other)?;
        let m = self.matrix.try_add(&other.matrix).expect("arbitrary precision");
        Ok(AbHom::new_unchecked(self.source.clone(), self.target.clone(), m))
    }

    pub fn sub(&self, other: &AbHom) -> Result<AbHom> {
        self.same_shape(other)?;
        let m = self.matrix.try_sub(&other.matrix).expect("arbitrary precision");
        Ok(AbHom::new_unchecked(self.source.clone(), self.target.clone(), m))
    }

    pub fn neg(&self) -> AbHom {
        let m = self.matrix.map_values(|v| Ok(-v)).expect("arbitrary precision");
        AbHom::new_unchecked(self.source.clone(), self.target.clone(), m)
    }

    fn same_shape(&self, other: &AbHom) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidArgument("homomorphisms have different source or target".into()));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.nnz() == 0
    }

    /// `[self | other]`: the map `source ⊕ other.source -> target`.
    pub fn hstack(&self, other: &AbHom) -> Result<AbHom> {
        if self.target != other.target {
            return Err(Error::InvalidArgument("maps into different targets".into()));
        }
        Ok(AbHom::new_unchecked(
            self.source.direct_sum(&other.source),
            self.target.clone(),
            self.matrix.hstack(&other.matrix),
        ))
    }

    pub fn is_injective(&self) -> bool {
        super::kernel(self).presented().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        let image = super::image(self);
        super::quotient(&self.target, &image).expect("same ambient").group().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|x| Int::from(*x)).collect()
    }

    #[test]
    fn well_definedness() {
        let z = FgAbelianGroup::free(1);
        let z4 = FgAbelianGroup::cyclic(4);
        let z2 = FgAbelianGroup::cyclic(2);
        assert!(AbHom::from_rows(z.clone(), z4.clone(), vec![ints(&[1])]).is_ok());
        assert!(AbHom::from_rows(z4.clone(), z.clone(), vec![ints(&[1])]).is_err());
        assert!(AbHom::from_rows(z2.clone(), z4.clone(), vec![ints(&[2])]).is_ok());
        assert!(AbHom::from_rows(z2, z4, vec![ints(&[1])]).is_err());
    }

    #[test]
    fn entries_are_reduced_so_equality_is_semantic() {
        let z4 = FgAbelianGroup::cyclic(4);
        let a = AbHom::from_rows(z4.clone(), z4.clone(), vec![ints(&[5])]).unwrap();
        let b = AbHom::from_rows(z4.clone(), z4.clone(), vec![ints(&[-3])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, AbHom::identity(&z4));
    }

    #[test]
    fn composition_is_matrix_product() {
        let z = FgAbelianGroup::free(1);
        let z4 = FgAbelianGroup::cyclic(4);
        let two = AbHom::from_rows(z.clone(), z.clone(), vec![ints(&[2])]).unwrap();
        let red = AbHom::from_rows(z.clone(), z4.clone(), vec![ints(&[1])]).unwrap();
        let c = red.compose(&two).unwrap();
        assert_eq!(c.apply(&ints(&[3])).unwrap(), ints(&[2]));
        assert!(two.compose(&red).is_err());
    }
}
