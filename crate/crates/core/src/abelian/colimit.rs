use super::{image, AbHom, FgAbelianGroup};
use crate::error::{Error, Result};

/// Default number of trailing isomorphisms required to call a chain stable.
pub const DEFAULT_WINDOW: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColimitStatus {
    /// The last `window` maps are isomorphisms; the colimit is this group.
    Stabilized(FgAbelianGroup),
    NotStabilized,
}

#[derive(Clone, Debug)]
pub struct ColimitLevel {
    /// Canonical form of the group at this level.
    pub group: FgAbelianGroup,
    /// Map to the next level (absent at the top).
    pub map: Option<AbHom>,
    pub map_is_isomorphism: Option<bool>,
    /// Canonical form of the image of the map to the next level.
    pub map_image: Option<FgAbelianGroup>,
    /// Canonical form of the image of this level in the top level.
    pub image_in_top: FgAbelianGroup,
}

#[derive(Clone, Debug)]
pub struct ColimitReport {
    pub window: usize,
    pub levels: Vec<ColimitLevel>,
    pub status: ColimitStatus,
}

impl ColimitReport {
    pub fn is_stabilized(&self) -> bool {
        matches!(self.status, ColimitStatus::Stabilized(_))
    }

    /// Whether every class from every level dies before the top.
    pub fn all_images_trivial(&self) -> bool {
        let n = self.levels.len();
        self.levels[..n.saturating_sub(1)].iter().all(|l| l.image_in_top.is_trivial())
    }
}

/// Truncated directed colimit of `chain[0] -> chain[1] -> ...`.
pub fn directed_colimit(chain: &[FgAbelianGroup], maps: &[AbHom], window: usize) -> Result<ColimitReport> {
    if chain.is_empty() || maps.len() + 1 != chain.len() {
        return Err(Error::LengthMismatch { groups: chain.len(), maps: maps.len() });
    }
    if window == 0 {
        return Err(Error::InvalidArgument("stabilization window must be at least 1".into()));
    }
    for (k, f) in maps.iter().enumerate() {
        if f.source() != &chain[k] || f.target() != &chain[k + 1] {
            return Err(Error::InvalidArgument(format!("map {k} does not go from level {k} to level {}", k + 1)));
        }
    }
    let top = chain.len() - 1;
    let mut to_top = vec![AbHom::identity(&chain[top])];
    for k in (0..top).rev() {
        let next = to_top.last().expect("seeded").compose(&maps[k])?;
        to_top.push(next);
    }
    to_top.reverse();
    let mut levels = Vec::with_capacity(chain.len());
    for (k, g) in chain.iter().enumerate() {
        let map = maps.get(k).cloned();
        let map_is_isomorphism = map.as_ref().map(AbHom::is_isomorphism);
        let map_image = map.as_ref().map(|f| image(f).presented().clone());
        levels.push(ColimitLevel {
            group: g.canonical_form(),
            map,
            map_is_isomorphism,
            map_image,
            image_in_top: image(&to_top[k]).presented().clone(),
        });
    }
    let stable = maps.len() >= window && levels[top - window..top].iter().all(|l| l.map_is_isomorphism == Some(true));
    let status =
        if stable { ColimitStatus::Stabilized(chain[top].canonical_form()) } else { ColimitStatus::NotStabilized };
    Ok(ColimitReport { window, levels, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;

    fn scalar(g: &FgAbelianGroup, k: i64) -> AbHom {
        AbHom::from_rows(g.clone(), g.clone(), vec![vec![Int::from(k)]]).unwrap()
    }

    #[test]
    fn identity_chain_stabilizes() {
        let z = FgAbelianGroup::free(1);
        let id = AbHom::identity(&z);
        let r = directed_colimit(&[z.clone(), z.clone(), z.clone()], &[id.clone(), id], DEFAULT_WINDOW).unwrap();
        assert_eq!(r.status, ColimitStatus::Stabilized(z));
    }

    #[test]
    fn zero_maps_kill_everything() {
        let z2 = FgAbelianGroup::cyclic(2);
        let zero = AbHom::zero(&z2, &z2);
        let r = directed_colimit(&[z2.clone(), z2.clone(), z2.clone()], &[zero.clone(), zero], 2).unwrap();
        assert_eq!(r.status, ColimitStatus::NotStabilized);
        assert!(r.all_images_trivial());
        assert!(r.levels[..2].iter().all(|l| l.map_image.as_ref().unwrap().is_trivial()));
    }

    #[test]
    fn doubling_never_stabilizes() {
        let z = FgAbelianGroup::free(1);
        let two = scalar(&z, 2);
        let r = directed_colimit(&[z.clone(), z.clone(), z.clone()], &[two.clone(), two], 2).unwrap();
        assert_eq!(r.status, ColimitStatus::NotStabilized);
        assert!(r.levels[0].map.as_ref().unwrap().is_injective());
        assert!(!r.all_images_trivial());
    }

    #[test]
    fn length_mismatch() {
        let z = FgAbelianGroup::free(1);
        assert!(matches!(
            directed_colimit(&[z.clone(), z.clone()], &[], 2),
            Err(Error::LengthMismatch { groups: 2, maps: 0 })
        ));
    }
}
