use std::collections::VecDeque;

use crate::abelian::{kernel, AbHom, FgAbelianGroup, SubgroupPresentation};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::Int;

use super::{FiniteGroup, GroupHom};

/// How a group acts on a coefficient group, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionSpec {
    Trivial,
    /// One square matrix (rows of integers) per group element.
    ByElement(Vec<Vec<Vec<Int>>>),
    /// Matrices for some generating elements, completed through the table.
    ByGenerators {
        gens: Vec<usize>,
        matrices: Vec<Vec<Vec<Int>>>,
    },
}

/// A finite group acting on a finitely generated abelian group by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    group: FiniteGroup,
    coeff: FgAbelianGroup,
    action: Vec<AbHom>,
    trivial: bool,
}

impl GModule {
    pub fn trivial(group: &FiniteGroup, coeff: &FgAbelianGroup) -> Self {
        let id = AbHom::identity(coeff);
        GModule { group: group.clone(), coeff: coeff.clone(), action: vec![id; group.order()], trivial: true }
    }

    /// Validate an action.
    ///
    /// Checks run in the order: each matrix is a well-defined endomorphism,
    /// each is bijective, then the identity acts trivially and
    /// `M_g M_h = M_{gh}`.
    pub fn new(group: &FiniteGroup, coeff: &FgAbelianGroup, spec: &ActionSpec) -> Result<Self> {
        let endo = |g: usize, rows: &[Vec<Int>]| -> Result<AbHom> {
            if rows.len() != coeff.dim() || rows.iter().any(|r| r.len() != coeff.dim()) {
                return Err(Error::ModuleIllDefined { element: g });
            }
            AbHom::from_rows(coeff.clone(), coeff.clone(), rows.to_vec())
                .map_err(|_| Error::ModuleIllDefined { element: g })
        };
        let action = match spec {
            ActionSpec::Trivial => return Ok(Self::trivial(group, coeff)),
            ActionSpec::ByElement(ms) => {
                if ms.len() != group.order() {
                    return Err(Error::NotAction(format!(
                        "{} matrices for a group of order {}",
                        ms.len(),
                        group.order()
                    )));
                }
                let action = ms.iter().enumerate().map(|(g, m)| endo(g, m)).collect::<Result<Vec<_>>>()?;
                for (g, m) in action.iter().enumerate() {
                    if !m.is_isomorphism() {
                        return Err(Error::NotAutomorphism { element: g });
                    }
                }
                action
            }
            ActionSpec::ByGenerators { gens, matrices } => {
                if gens.len() != matrices.len() {
                    return Err(Error::NotAction("generator and matrix counts differ".into()));
                }
                if let Some(g) = gens.iter().find(|&&g| g >= group.order()) {
                    return Err(Error::NotAction(format!("generator {g} is not a group element")));
                }
                let ms = gens.iter().zip(matrices).map(|(&g, m)| endo(g, m)).collect::<Result<Vec<_>>>()?;
                for (&g, m) in gens.iter().zip(&ms) {
                    if !m.is_isomorphism() {
                        return Err(Error::NotAutomorphism { element: g });
                    }
                }
                complete(group, coeff, gens, &ms)?
            }
        };
        let id = AbHom::identity(coeff);
        if action[0] != id {
            return Err(Error::NotAction("the identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if action[g].compose(&action[h])? != action[group.mul(g, h)] {
                    return Err(Error::NotAction(format!("M_{g} M_{h} != M_{}", group.mul(g, h))));
                }
            }
        }
        let trivial = action.iter().all(|m| *m == id);
        Ok(GModule { group: group.clone(), coeff: coeff.clone(), action, trivial })
    }

    /// Action through a homomorphism to `{±1}` (as `Z/2`): elements mapping to 1 act by `-1`.
    pub fn sign(group: &FiniteGroup, coeff: &FgAbelianGroup, character: &GroupHom) -> Result<Self> {
        if character.source() != group || character.target().order() != 2 {
            return Err(Error::InvalidArgument("sign character must map the group onto Z/2".into()));
        }
        let n = coeff.dim();
        let matrices = group
            .elements()
            .map(|g| {
                let s = if character.apply(g) == 0 { 1 } else { -1 };
                (0..n).map(|i| (0..n).map(|j| Int::from(if i == j { s } else { 0 })).collect()).collect()
            })
            .collect();
        Self::new(group, coeff, &ActionSpec::ByElement(matrices))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn coeff(&self) -> &FgAbelianGroup {
        &self.coeff
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    /// `M_g`.
    pub fn action(&self, g: usize) -> &AbHom {
        &self.action[g]
    }

    /// `g · a` in canonical form.
    pub fn act(&self, g: usize, a: &[Int]) -> Vec<Int> {
        if self.trivial {
            return self.coeff.canonical(a);
        }
        self.action[g].apply(a).expect("element of the coefficient group")
    }

    /// `A^U`, with the induced `G/U`-module when `U` is normal.
    pub fn fixed_points(&self, subgroup: &[usize]) -> Result<FixedPoints> {
        let u = self.group.check_subgroup(subgroup)?;
        let sub = fixed_subgroup(self, &u);
        let quotient = match self.group.check_normal(&u) {
            Ok(_) => Some(self.induced_on(&u, &sub)?),
            Err(_) => None,
        };
        Ok(FixedPoints { subgroup: sub, quotient })
    }

    fn induced_on(&self, normal: &[usize], sub: &SubgroupPresentation) -> Result<QuotientModule> {
        let (q, proj) = self.group.quotient_group(normal)?;
        let a_u = sub.presented().clone();
        let basis = sub.basis();
        let mut reps = vec![usize::MAX; q.order()];
        for g in self.group.elements().rev() {
            reps[proj.apply(g)] = g;
        }
        let matrices = reps
            .iter()
            .map(|&g| {
                let cols: Vec<Vec<Int>> = basis
                    .iter()
                    .map(|b| sub.coordinates(&self.act(g, b)).map(|c| c.expect("A^U is G-stable for normal U")))
                    .collect::<Result<_>>()?;
                Ok((0..a_u.dim()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
            })
            .collect::<Result<Vec<Vec<Vec<Int>>>>>()?;
        let module = if self.trivial {
            GModule::trivial(&q, &a_u)
        } else {
            GModule::new(&q, &a_u, &ActionSpec::ByElement(matrices))?
        };
        Ok(QuotientModule { group: q, projection: proj, module })
    }
}

fn fixed_subgroup(m: &GModule, u: &[usize]) -> SubgroupPresentation {
    let a = m.coeff();
    if m.is_trivial() {
        return SubgroupPresentation::whole(a);
    }
    let id = AbHom::identity(a);
    let mut stacked: Option<SparseMatrix<Int>> = None;
    for &g in u {
        let d = m.action(g).sub(&id).expect("same shape");
        stacked = Some(match stacked {
            None => d.matrix().clone(),
            Some(s) => s.vstack(d.matrix()),
        });
    }
    let stacked = stacked.expect("subgroups contain the identity");
    let target = a.power(u.len());
    let f = AbHom::new(a.clone(), target, stacked).expect("differences of endomorphisms are well defined");
    kernel(&f)
}

fn complete(group: &FiniteGroup, coeff: &FgAbelianGroup, gens: &[usize], ms: &[AbHom]) -> Result<Vec<AbHom>> {
    let n = group.order();
    let mut action: Vec<Option<AbHom>> = vec![None; n];
    action[0] = Some(AbHom::identity(coeff));
    let mut queue = VecDeque::from([0]);
    while let Some(g) = queue.pop_front() {
        let mg = action[g].clone().expect("queued elements are assigned");
        for (&s, m) in gens.iter().zip(ms) {
            let gs = group.mul(g, s);
            let value = mg.compose(m)?;
            match &action[gs] {
                None => {
                    action[gs] = Some(value);
                    queue.push_back(gs);
                }
                Some(existing) if *existing != value => {
                    return Err(Error::NotAction(format!("generator matrices are inconsistent at element {gs}")));
                }
                Some(_) => {}
            }
        }
    }
    action
        .into_iter()
        .enumerate()
        .map(|(g, m)| m.ok_or_else(|| Error::NotAction(format!("generators do not reach element {g}"))))
        .collect()
}

/// `A^U` and, for normal `U`, its `G/U`-module structure.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    pub subgroup: SubgroupPresentation,
    pub quotient: Option<QuotientModule>,
}

#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub group: FiniteGroup,
    pub projection: GroupHom,
    pub module: GModule,
}

/// A group map `α: G' -> G` and module map `β: A -> A'` with
/// `β(α(g')·a) = g'·β(a)`.
#[derive(Clone, Debug)]
pub struct CompatiblePair {
    alpha: GroupHom,
    beta: AbHom,
    source: GModule,
    target: GModule,
}

impl CompatiblePair {
    /// `source` is the `G`-module `A`, `target` the `G'`-module `A'`.
    pub fn new(alpha: GroupHom, beta: AbHom, source: &GModule, target: &GModule) -> Result<Self> {
        if alpha.target() != source.group() || alpha.source() != target.group() {
            return Err(Error::IncompatiblePair("alpha does not run from G' to G".into()));
        }
        if beta.source() != source.coeff() || beta.target() != target.coeff() {
            return Err(Error::IncompatiblePair("beta does not run from A to A'".into()));
        }
        for g in target.group().elements() {
            let lhs = beta.compose(source.action(alpha.apply(g)))?;
            let rhs = target.action(g).compose(&beta)?;
            if lhs != rhs {
                return Err(Error::IncompatiblePair(format!("beta(alpha({g}) a) != {g} beta(a)")));
            }
        }
        Ok(CompatiblePair { alpha, beta, source: source.clone(), target: target.clone() })
    }

    pub fn identity(module: &GModule) -> Self {
        CompatiblePair {
            alpha: GroupHom::identity(module.group()),
            beta: AbHom::identity(module.coeff()),
            source: module.clone(),
            target: module.clone(),
        }
    }

    pub fn alpha(&self) -> &GroupHom {
        &self.alpha
    }

    pub fn beta(&self) -> &AbHom {
        &self.beta
    }

    /// The `G`-module `A`.
    pub fn source(&self) -> &GModule {
        &self.source
    }

    /// The `G'`-module `A'`.
    pub fn target(&self) -> &GModule {
        &self.target
    }

    /// `self ∘ first`: for `first = (α₁, β₁)` from `(G, A)` to `(G', A')` and
    /// `self = (α₂, β₂)` from `(G', A')` to `(G'', A'')`, the pair
    /// `(α₁ α₂, β₂ β₁)`.
    pub fn compose(&self, first: &CompatiblePair) -> Result<CompatiblePair> {
        if first.target != self.source {
            return Err(Error::IncompatiblePair("pairs do not compose".into()));
        }
        Ok(CompatiblePair {
            alpha: first.alpha.compose(&self.alpha)?,
            beta: self.beta.compose(&first.beta)?,
            source: first.source.clone(),
            target: self.target.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| r.iter().map(|x| Int::from(*x)).collect()).collect()
    }

    #[test]
    fn negation_on_z() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z = FgAbelianGroup::free(1);
        let m = GModule::new(&z2, &z, &ActionSpec::ByElement(vec![mat(&[&[1]]), mat(&[&[-1]])])).unwrap();
        assert_eq!(m.act(1, &[Int::from(3)]), vec![Int::from(-3)]);
        assert!(!m.is_trivial());
    }

    #[test]
    fn doubling_is_not_an_automorphism() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z4 = FgAbelianGroup::cyclic(4);
        let r = GModule::new(&z2, &z4, &ActionSpec::ByElement(vec![mat(&[&[1]]), mat(&[&[2]])]));
        assert!(matches!(r, Err(Error::NotAutomorphism { element: 1 })));
    }

    #[test]
    fn ill_defined_and_non_actions() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z4 = FgAbelianGroup::cyclic(4);
        let z = FgAbelianGroup::free(1);
        let zz4 = z.direct_sum(&z4);
        // Z/4 -> Z sending the generator to 1 is not well defined.
        let bad = ActionSpec::ByElement(vec![mat(&[&[1, 0], &[0, 1]]), mat(&[&[1, 1], &[0, 1]])]);
        assert!(matches!(GModule::new(&z2, &zz4, &bad), Err(Error::ModuleIllDefined { element: 1 })));
        // -1 on Z/4 by Z/3 fails the action law.
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let neg = ActionSpec::ByGenerators { gens: vec![1], matrices: vec![mat(&[&[-1]])] };
        assert!(matches!(GModule::new(&z3, &z4, &neg), Err(Error::NotAction(_))));
    }

    #[test]
    fn generator_completion() {
        let z4g = FiniteGroup::cyclic(4).unwrap();
        let z = FgAbelianGroup::free(1);
        let spec = ActionSpec::ByGenerators { gens: vec![1], matrices: vec![mat(&[&[-1]])] };
        let m = GModule::new(&z4g, &z, &spec).unwrap();
        assert_eq!(m.act(2, &[Int::from(5)]), vec![Int::from(5)]);
        assert_eq!(m.act(3, &[Int::from(5)]), vec![Int::from(-5)]);
    }

    #[test]
    fn fixed_points_of_negation_on_z4() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z4 = FgAbelianGroup::cyclic(4);
        let m = GModule::new(&z2, &z4, &ActionSpec::ByElement(vec![mat(&[&[1]]), mat(&[&[-1]])])).unwrap();
        let fp = m.fixed_points(&[0, 1]).unwrap();
        assert_eq!(fp.subgroup.presented(), &FgAbelianGroup::cyclic(2));
        for a in 0..4 {
            let inside = fp.subgroup.contains(&[Int::from(a)]).unwrap();
            assert_eq!(inside, (2 * a) % 4 == 0);
        }
        assert_eq!(fp.quotient.unwrap().group.order(), 1);
        let all = m.fixed_points(&[0]).unwrap();
        assert_eq!(all.subgroup.presented(), &z4);
        assert!(matches!(m.fixed_points(&[1]), Err(Error::NotSubgroup(_))));
        let t = GModule::trivial(&z2, &z4).fixed_points(&[0, 1]).unwrap();
        assert_eq!(t.subgroup.presented(), &z4);
    }

    #[test]
    fn compatible_pairs() {
        let z4g = FiniteGroup::cyclic(4).unwrap();
        let z2g = FiniteGroup::cyclic(2).unwrap();
        let a = FgAbelianGroup::cyclic(2);
        let alpha = GroupHom::new(z2g.clone(), z4g.clone(), vec![0, 2]).unwrap();
        let src = GModule::trivial(&z4g, &a);
        let tgt = GModule::trivial(&z2g, &a);
        assert!(CompatiblePair::new(alpha.clone(), AbHom::identity(&a), &src, &tgt).is_ok());
        let z = FgAbelianGroup::free(1);
        let neg =
            GModule::new(&z4g, &z, &ActionSpec::ByGenerators { gens: vec![1], matrices: vec![mat(&[&[-1]])] }).unwrap();
        let sign_z2 = GModule::new(&z2g, &z, &ActionSpec::ByElement(vec![mat(&[&[1]]), mat(&[&[-1]])])).unwrap();
        let proj = GroupHom::new(z4g.clone(), z2g.clone(), vec![0, 1, 0, 1]).unwrap();
        // Inflation-style pair (Z/4 -> Z/2, id): sign action pulled back is negation by odd elements.
        assert!(CompatiblePair::new(proj, AbHom::identity(&z), &sign_z2, &neg).is_ok());
        // Restriction to {0, 2} with a trivial target action is compatible; with negation it is not.
        let triv = GModule::trivial(&z2g, &z);
        assert!(CompatiblePair::new(alpha.clone(), AbHom::identity(&z), &neg, &triv).is_ok());
        assert!(matches!(
            CompatiblePair::new(alpha, AbHom::identity(&z), &neg, &sign_z2),
            Err(Error::IncompatiblePair(_))
        ));
    }
}
