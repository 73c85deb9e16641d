//! Chains of finite quotients `G_0 <- G_1 <- ... <- G_L` with fixed-point
//! coefficients, their bonding maps in cohomology and the direct limit.
//!
//! Level `k + 1` is the bigger quotient; the bonding map in cohomology runs
//! from level `k` to level `k + 1` (inflation along `p_k`, composed with the
//! inclusion of fixed points).

use std::fmt;
use std::str::FromStr;

use crate::abelian::{directed_colimit, AbHom, ColimitReport};
use crate::cochain::{cohomology, CohomologyGroup, Variant};
use crate::error::{Error, Result};
use crate::functorial::{induced_between, induced_cochain_map, InducedMap};
use crate::group::{ActionSpec, CompatiblePair, FiniteGroup, GModule, GroupHom};
use crate::presets::{GroupSpec, ModuleSpec};
use crate::Int;

#[derive(Clone, Debug)]
pub struct Tower {
    levels: Vec<FiniteGroup>,
    bonding: Vec<GroupHom>,
    coeffs: Vec<GModule>,
    injections: Vec<AbHom>,
}

impl Tower {
    /// Validate explicit data: `bonding[k]: G_{k+1} -> G_k` surjective,
    /// `injections[k]: A_k -> A_{k+1}` injective and compatible with `bonding[k]`.
    pub fn new(bonding: Vec<GroupHom>, coeffs: Vec<GModule>, injections: Vec<AbHom>) -> Result<Self> {
        if coeffs.is_empty() || bonding.len() + 1 != coeffs.len() || injections.len() != bonding.len() {
            return Err(Error::LengthMismatch { groups: coeffs.len(), maps: bonding.len() });
        }
        let levels: Vec<FiniteGroup> = coeffs.iter().map(|m| m.group().clone()).collect();
        for (k, p) in bonding.iter().enumerate() {
            if p.source() != &levels[k + 1] || p.target() != &levels[k] {
                return Err(Error::NotCompatible {
                    level: k,
                    reason: "bonding map does not run G_{k+1} -> G_k".into(),
                });
            }
            if !p.is_surjective() {
                return Err(Error::NotSurjective { level: k });
            }
            if !injections[k].is_injective() {
                return Err(Error::NotCompatible { level: k, reason: "coefficient map is not injective".into() });
            }
            CompatiblePair::new(p.clone(), injections[k].clone(), &coeffs[k], &coeffs[k + 1])
                .map_err(|e| Error::NotCompatible { level: k, reason: e.to_string() })?;
        }
        Ok(Tower { levels, bonding, coeffs, injections })
    }

    /// Coefficients `A_k = A^{U_k}` from a module over the top level, where
    /// `U_k` is the kernel of `G_top -> G_k`.
    pub fn from_top(bonding: Vec<GroupHom>, top: &GModule) -> Result<Self> {
        let depth = bonding.len();
        let top_group = top.group();
        if bonding.last().is_some_and(|p| p.source() != top_group) {
            return Err(Error::NotCompatible {
                level: depth - 1,
                reason: "top module lives over another group".into(),
            });
        }
        for (k, p) in bonding.iter().enumerate() {
            if k + 1 < depth && p.source() != bonding[k + 1].target() {
                return Err(Error::NotCompatible { level: k, reason: "bonding maps do not chain".into() });
            }
            if !p.is_surjective() {
                return Err(Error::NotSurjective { level: k });
            }
        }
        // down[k]: G_top -> G_k.
        let mut down = vec![GroupHom::identity(top_group); depth + 1];
        for k in (0..depth).rev() {
            down[k] = bonding[k].compose(&down[k + 1])?;
        }
        let fixed: Vec<_> =
            down.iter().map(|d| top.fixed_points(&d.kernel()).map(|f| f.subgroup)).collect::<Result<Vec<_>>>()?;
        let mut coeffs = Vec::with_capacity(depth + 1);
        for (k, d) in down.iter().enumerate() {
            let sub = &fixed[k];
            let g = d.target();
            let a = sub.presented();
            let coeff = if top.is_trivial() {
                GModule::trivial(g, a)
            } else {
                let mut lift = vec![usize::MAX; g.order()];
                for x in top_group.elements().rev() {
                    lift[d.apply(x)] = x;
                }
                let basis = sub.basis();
                let matrices = lift
                    .iter()
                    .map(|&x| {
                        let cols: Vec<Vec<Int>> = basis
                            .iter()
                            .map(|b| sub.coordinates(&top.act(x, b)).map(|c| c.expect("A^U is stable")))
                            .collect::<Result<_>>()?;
                        Ok((0..a.dim()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
                    })
                    .collect::<Result<Vec<Vec<Vec<Int>>>>>()?;
                GModule::new(g, a, &ActionSpec::ByElement(matrices))?
            };
            coeffs.push(coeff);
        }
        let injections = (0..depth)
            .map(|k| {
                let cols = fixed[k]
                    .basis()
                    .iter()
                    .map(|b| fixed[k + 1].coordinates(b).map(|c| c.expect("A^{U_k} ⊆ A^{U_{k+1}}")))
                    .collect::<Result<Vec<_>>>()?;
                AbHom::from_columns(coeffs[k].coeff().clone(), coeffs[k + 1].coeff().clone(), &cols)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bonding, coeffs, injections)
    }

    /// A built-in family; see [`TowerSpec`].
    pub fn builtin(spec: &TowerSpec, module: &ModuleSpec) -> Result<Self> {
        match spec {
            TowerSpec::CyclicP { p, levels } => {
                if !is_prime(*p) || *levels == 0 {
                    return Err(Error::InvalidArgument("cyclic-p needs a prime p and at least one level".into()));
                }
                let orders: Vec<usize> = (1..=*levels as u32).map(|k| p.pow(k)).collect();
                let groups = orders.iter().map(|&n| FiniteGroup::cyclic(n)).collect::<Result<Vec<_>>>()?;
                let bonding = (0..groups.len() - 1)
                    .map(|k| {
                        let map = (0..orders[k + 1]).map(|x| x % orders[k]).collect();
                        GroupHom::new(groups[k + 1].clone(), groups[k].clone(), map)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let top = module.build(&GroupSpec::Cyclic(orders[orders.len() - 1]))?;
                Self::from_top(bonding, &top)
            }
            TowerSpec::Constant { group, levels } => {
                if *levels == 0 {
                    return Err(Error::InvalidArgument("a tower needs at least one level".into()));
                }
                let m = module.build(group)?;
                let bonding = vec![GroupHom::identity(m.group()); levels - 1];
                let coeffs = vec![m.clone(); *levels];
                let injections = vec![AbHom::identity(m.coeff()); levels - 1];
                Self::new(bonding, coeffs, injections)
            }
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &FiniteGroup {
        &self.levels[k]
    }

    pub fn coeff(&self, k: usize) -> &GModule {
        &self.coeffs[k]
    }

    pub fn bonding(&self, k: usize) -> &GroupHom {
        &self.bonding[k]
    }

    pub fn injection(&self, k: usize) -> &AbHom {
        &self.injections[k]
    }

    /// The compatible pair from level `k` to level `l >= k`, built
    /// elementwise from the composite projection and coefficient inclusion.
    pub fn pair_between(&self, k: usize, l: usize) -> Result<CompatiblePair> {
        if k > l || l >= self.depth() {
            return Err(Error::InvalidArgument(format!("levels {k} -> {l} out of range")));
        }
        let map = self.levels[l].elements().map(|x| (k..l).rev().fold(x, |y, j| self.bonding[j].apply(y))).collect();
        let alpha = GroupHom::new(self.levels[l].clone(), self.levels[k].clone(), map)?;
        let mut beta = AbHom::identity(self.coeffs[k].coeff());
        for j in k..l {
            beta = self.injections[j].compose(&beta)?;
        }
        CompatiblePair::new(alpha, beta, &self.coeffs[k], &self.coeffs[l])
    }

    pub fn level_cohomology(&self, k: usize, n: usize, variant: Variant) -> CohomologyGroup {
        cohomology(&self.coeffs[k], n, variant)
    }

    /// `ψ: H^n(G_k, A_k) -> H^n(G_{k+1}, A_{k+1})`.
    pub fn bonding_psi(&self, k: usize, n: usize, variant: Variant) -> Result<InducedMap> {
        if k + 1 >= self.depth() {
            return Err(Error::InvalidArgument(format!("no bonding map above level {k}")));
        }
        let pair = self.pair_between(k, k + 1)?;
        induced_between(&pair, self.level_cohomology(k, n, variant), self.level_cohomology(k + 1, n, variant))
    }

    /// Cochain-level map from level `k` to level `l`.
    pub fn psi_cochains(&self, k: usize, l: usize, n: usize) -> Result<AbHom> {
        Ok(induced_cochain_map(&self.pair_between(k, l)?, n))
    }

    /// Direct limit of the level cohomologies along the bonding maps.
    pub fn limit_cohomology(&self, n: usize, variant: Variant, window: usize) -> Result<ColimitReport> {
        let groups: Vec<CohomologyGroup> = (0..self.depth()).map(|k| self.level_cohomology(k, n, variant)).collect();
        let mut maps = Vec::with_capacity(self.depth().saturating_sub(1));
        for k in 0..self.depth().saturating_sub(1) {
            let pair = self.pair_between(k, k + 1)?;
            maps.push(induced_between(&pair, groups[k].clone(), groups[k + 1].clone())?.map);
        }
        let chain: Vec<_> = groups.iter().map(|h| h.group().clone()).collect();
        directed_colimit(&chain, &maps, window)
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Built-in tower families: `cyclic-p:<p>:<levels>` for
/// `Z/p <- Z/p^2 <- ... <- Z/p^levels` and `constant:<group>:<levels>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerSpec {
    CyclicP { p: usize, levels: usize },
    Constant { group: GroupSpec, levels: usize },
}

impl FromStr for TowerSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!("unknown tower `{s}` (expected cyclic-p:<p>:<levels> or constant:<group>:<levels>)"))
        };
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("cyclic-p:") {
            let (p, levels) = rest.split_once(':').ok_or_else(bad)?;
            return Ok(TowerSpec::CyclicP { p: num(p)?, levels: num(levels)? });
        }
        if let Some(rest) = s.strip_prefix("constant:") {
            let (group, levels) = rest.rsplit_once(':').ok_or_else(bad)?;
            return Ok(TowerSpec::Constant { group: group.parse()?, levels: num(levels)? });
        }
        Err(bad())
    }
}

impl fmt::Display for TowerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerSpec::CyclicP { p, levels } => write!(f, "cyclic-p:{p}:{levels}"),
            TowerSpec::Constant { group, levels } => write!(f, "constant:{group}:{levels}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_round_trip() {
        for s in ["cyclic-p:2:3", "constant:sym:3:2", "constant:product:cyclic:2,cyclic:3:4"] {
            assert_eq!(s.parse::<TowerSpec>().unwrap().to_string(), s);
        }
        assert!("cyclic-p:2".parse::<TowerSpec>().is_err());
    }

    #[test]
    fn rejects_non_surjective_bonding() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let zero = GroupHom::new(z4.clone(), z2.clone(), vec![0; 4]).unwrap();
        let a = crate::abelian::FgAbelianGroup::cyclic(2);
        let t = Tower::new(
            vec![zero],
            vec![GModule::trivial(&z2, &a), GModule::trivial(&z4, &a)],
            vec![AbHom::identity(&a)],
        );
        assert_eq!(t.unwrap_err(), Error::NotSurjective { level: 0 });
    }
}
