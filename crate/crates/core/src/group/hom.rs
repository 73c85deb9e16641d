use crate::error::{Error, Result};

use super::FiniteGroup;

/// A homomorphism of finite groups given on every element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::NotHomomorphism(format!(
                "{} images given for a group of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(x) = map.iter().find(|&&x| x >= target.order()) {
            return Err(Error::NotHomomorphism(format!("image {x} outside the target")));
        }
        if map[0] != 0 {
            return Err(Error::NotHomomorphism("identity is not sent to the identity".into()));
        }
        for g in source.elements() {
            for h in source.elements() {
                if map[source.mul(g, h)] != target.mul(map[g], map[h]) {
                    return Err(Error::NotHomomorphism(format!("f({g} * {h}) != f({g}) * f({h})")));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), map: g.elements().collect() }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::NotHomomorphism("composition: target and source differ".into()));
        }
        let map = first.map.iter().map(|&x| self.map[x]).collect();
        Ok(GroupHom { source: first.source.clone(), target: self.target.clone(), map })
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.source.elements().filter(|&g| self.map[g] == 0).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_mod_two() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let p = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert!(p.is_surjective());
        assert_eq!(p.kernel(), vec![0, 2]);
        assert!(GroupHom::new(z2.clone(), z4.clone(), vec![0, 1]).is_err());
        let inc = GroupHom::new(z2, z4, vec![0, 2]).unwrap();
        assert_eq!(p.compose(&inc).unwrap().map(), &[0, 0]);
    }
}
