use crate::abelian::FgAbelianGroup;
use crate::error::{Error, Result};
use crate::group::GModule;
use crate::Int;

/// `C^n(G, A)` laid out as `A^{|G|^n}`.
///
/// The tuple `(g_1, ..., g_n)` owns block `Σ idx(g_i) |G|^{n-i}`, i.e. tuples
/// are ordered lexicographically with `g_1` most significant.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    module: GModule,
    degree: usize,
    space: FgAbelianGroup,
}

impl CochainSpace {
    pub fn new(module: &GModule, degree: usize) -> Self {
        let blocks = module.group().order().pow(degree as u32);
        CochainSpace { module: module.clone(), degree, space: module.coeff().power(blocks) }
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.space
    }

    /// Number of tuples, `|G|^n`.
    pub fn blocks(&self) -> usize {
        self.module.group().order().pow(self.degree as u32)
    }

    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        tuple_index(self.module.group().order(), tuple)
    }

    pub fn tuple(&self, index: usize) -> Vec<usize> {
        tuple_at(self.module.group().order(), self.degree, index)
    }

    pub fn zero(&self) -> Cochain {
        Cochain { degree: self.degree, block: self.module.coeff().dim(), vector: self.space.zero() }
    }

    /// The cochain `t ↦ f(t)`.
    pub fn cochain_from_fn(&self, mut f: impl FnMut(&[usize]) -> Vec<Int>) -> Result<Cochain> {
        let a = self.module.coeff();
        let mut vector = Vec::with_capacity(self.space.dim());
        for k in 0..self.blocks() {
            let v = f(&self.tuple(k));
            a.check(&v)?;
            vector.extend(a.canonical(&v));
        }
        Ok(Cochain { degree: self.degree, block: a.dim(), vector })
    }

    /// Wrap a coordinate vector of the cochain group.
    pub fn cochain(&self, vector: Vec<Int>) -> Result<Cochain> {
        self.space.check(&vector)?;
        Ok(Cochain { degree: self.degree, block: self.module.coeff().dim(), vector: self.space.canonical(&vector) })
    }

    pub fn check(&self, c: &Cochain) -> Result<()> {
        if c.degree != self.degree {
            return Err(Error::InvalidArgument(format!(
                "cochain of degree {} where {} was expected",
                c.degree, self.degree
            )));
        }
        self.space.check(&c.vector)
    }
}

pub(crate) fn tuple_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

pub(crate) fn tuple_at(order: usize, degree: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for slot in t.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
    t
}

/// An `n`-cochain: one coefficient vector per tuple, flattened in tuple order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    block: usize,
    vector: Vec<Int>,
}

impl Cochain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vector(&self) -> &[Int] {
        &self.vector
    }

    pub fn into_vector(self) -> Vec<Int> {
        self.vector
    }

    /// Value on the tuple with the given block index.
    pub fn at(&self, index: usize) -> &[Int] {
        &self.vector[index * self.block..(index + 1) * self.block]
    }

    /// Value on a tuple of element indices.
    pub fn value(&self, order: usize, tuple: &[usize]) -> &[Int] {
        debug_assert_eq!(tuple.len(), self.degree);
        self.at(tuple_index(order, tuple))
    }

    /// Values per tuple, in tuple order.
    pub fn values(&self) -> Vec<Vec<Int>> {
        if self.block == 0 {
            return vec![Vec::new(); self.vector.len()];
        }
        self.vector.chunks(self.block).map(<[Int]>::to_vec).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn index_scheme_is_row_major() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let m = GModule::trivial(&g, &FgAbelianGroup::free(2));
        let s = CochainSpace::new(&m, 2);
        assert_eq!(s.blocks(), 9);
        assert_eq!(s.group().dim(), 18);
        assert_eq!(s.tuple_index(&[1, 2]), 5);
        for k in 0..9 {
            assert_eq!(s.tuple_index(&s.tuple(k)), k);
        }
        let c = s.cochain_from_fn(|t| vec![Int::from(t[0] as i64), Int::from(t[1] as i64)]).unwrap();
        assert_eq!(c.value(3, &[2, 1]), &[Int::from(2), Int::from(1)]);
        let zero = CochainSpace::new(&m, 0);
        assert_eq!(zero.blocks(), 1);
        assert_eq!(zero.group(), m.coeff());
    }
}
