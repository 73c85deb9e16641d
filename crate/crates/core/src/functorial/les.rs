use crate::abelian::{image, kernel, AbHom, FgAbelianGroup, Solver};
use crate::cochain::{apply_coboundary, cohomology, CochainSpace, CohomologyGroup, Variant};
use crate::error::{Error, Result};
use crate::group::{CompatiblePair, GModule, GroupHom};
use crate::Int;

use super::induced_between;

/// Largest `|A''|` for which module sections are tabulated.
const SECTION_LIMIT: u64 = 1 << 16;

/// `0 -> A' -i-> A -j-> A'' -> 0` over one group, with a set-theoretic
/// section `s: A'' -> A` tabulated on the elements of a finite `A''`.
#[derive(Clone, Debug)]
pub struct ShortExactModules {
    sub: GModule,
    middle: GModule,
    quotient: GModule,
    i: AbHom,
    j: AbHom,
    section: Vec<Vec<Int>>,
    symmetric: bool,
    compatible: bool,
}

impl ShortExactModules {
    /// Validate the sequence. Without a section, the first symmetric
    /// compatible one in element order is used, and the sequence is refused
    /// with `SectionNotSymmetric` when none exists.
    pub fn new(
        sub: &GModule,
        middle: &GModule,
        quotient: &GModule,
        i: AbHom,
        j: AbHom,
        section: Option<Vec<Vec<Int>>>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::NotExact(m));
        let g = middle.group();
        if sub.group() != g || quotient.group() != g {
            return bad("modules over different groups".into());
        }
        if i.source() != sub.coeff() || i.target() != middle.coeff() {
            return bad("i does not run A' -> A".into());
        }
        if j.source() != middle.coeff() || j.target() != quotient.coeff() {
            return bad("j does not run A -> A''".into());
        }
        CompatiblePair::new(GroupHom::identity(g), i.clone(), sub, middle)
            .map_err(|_| Error::NotExact("i is not G-linear".into()))?;
        CompatiblePair::new(GroupHom::identity(g), j.clone(), middle, quotient)
            .map_err(|_| Error::NotExact("j is not G-linear".into()))?;
        if !i.is_injective() {
            return bad("i is not injective".into());
        }
        if !j.is_surjective() {
            return bad("j is not surjective".into());
        }
        if !image(&i).same_subgroup(&kernel(&j))? {
            return bad("image of i differs from the kernel of j".into());
        }
        let elements = quotient
            .coeff()
            .elements(SECTION_LIMIT)
            .ok_or_else(|| Error::InvalidArgument("module sections need a small finite A''".into()))?;
        let section = match section {
            Some(s) => {
                if s.len() != elements.len() {
                    return bad(format!("section has {} values for {} elements", s.len(), elements.len()));
                }
                for (x, v) in elements.iter().zip(&s) {
                    middle.coeff().check(v)?;
                    if !quotient.coeff().equal(&j.apply(v)?, x) {
                        return bad(format!("j(s({x:?})) != {x:?}"));
                    }
                }
                s.iter().map(|v| middle.coeff().canonical(v)).collect()
            }
            None => search_section(middle, quotient, &j, &elements)?
                .ok_or_else(|| Error::SectionNotSymmetric("no symmetric compatible section exists".into()))?,
        };
        let mut ses = ShortExactModules {
            sub: sub.clone(),
            middle: middle.clone(),
            quotient: quotient.clone(),
            i,
            j,
            section,
            symmetric: false,
            compatible: false,
        };
        ses.symmetric = elements.iter().all(|x| {
            let a = middle.coeff();
            a.equal(&ses.lift(&quotient.coeff().neg(x)), &a.neg(&ses.lift(x)))
        });
        ses.compatible = g.elements().all(|h| {
            elements.iter().all(|x| middle.coeff().equal(&ses.lift(&quotient.act(h, x)), &middle.act(h, &ses.lift(x))))
        });
        Ok(ses)
    }

    pub fn sub(&self) -> &GModule {
        &self.sub
    }

    pub fn middle(&self) -> &GModule {
        &self.middle
    }

    pub fn quotient(&self) -> &GModule {
        &self.quotient
    }

    pub fn i(&self) -> &AbHom {
        &self.i
    }

    pub fn j(&self) -> &AbHom {
        &self.j
    }

    /// Section values in `FgAbelianGroup::elements` order of `A''`.
    pub fn section(&self) -> &[Vec<Int>] {
        &self.section
    }

    /// `s(-a) = -s(a)`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// `s(g·a) = g·s(a)`.
    pub fn is_compatible(&self) -> bool {
        self.compatible
    }

    /// `s(x)`.
    pub fn lift(&self, x: &[Int]) -> Vec<Int> {
        self.section[self.quotient.coeff().element_index(x) as usize].clone()
    }

    fn require_hypotheses(&self) -> Result<()> {
        if !self.symmetric {
            return Err(Error::SectionNotSymmetric("s(-a) != -s(a) for some a".into()));
        }
        if !self.compatible {
            return Err(Error::SectionNotCompatible("s(g a) != g s(a) for some g, a".into()));
        }
        Ok(())
    }
}

/// First symmetric compatible section in element order. Orbits of `A''`
/// under `G` and negation are independent; on each orbit the value at the
/// smallest element determines the rest.
fn search_section(
    middle: &GModule,
    quotient: &GModule,
    j: &AbHom,
    elements: &[Vec<Int>],
) -> Result<Option<Vec<Vec<Int>>>> {
    let (a, q) = (middle.coeff(), quotient.coeff());
    let middle_elements = a
        .elements(SECTION_LIMIT * SECTION_LIMIT)
        .ok_or_else(|| Error::InvalidArgument("section search needs a finite A".into()))?;
    let mut fibers: Vec<Vec<&Vec<Int>>> = vec![Vec::new(); elements.len()];
    for y in &middle_elements {
        fibers[q.element_index(&j.apply(y)?) as usize].push(y);
    }
    let g = quotient.group();
    let mut out: Vec<Option<Vec<Int>>> = vec![None; elements.len()];
    for (k, x) in elements.iter().enumerate() {
        if out[k].is_some() {
            continue;
        }
        let mut found = None;
        'candidates: for &c in &fibers[k] {
            let mut assigned: Vec<(usize, Vec<Int>)> = Vec::new();
            for h in g.elements() {
                for sign in [1, -1] {
                    let (y, v) = if sign == 1 {
                        (quotient.act(h, x), middle.act(h, c))
                    } else {
                        (q.neg(&quotient.act(h, x)), a.neg(&middle.act(h, c)))
                    };
                    let idx = q.element_index(&y) as usize;
                    match assigned.iter().find(|(i, _)| *i == idx) {
                        Some((_, w)) if !a.equal(w, &v) => continue 'candidates,
                        Some(_) => {}
                        None => assigned.push((idx, v)),
                    }
                }
            }
            found = Some(assigned);
            break;
        }
        let Some(assigned) = found else { return Ok(None) };
        for (idx, v) in assigned {
            out[idx] = Some(v);
        }
    }
    Ok(Some(out.into_iter().map(|v| v.expect("every orbit visited")).collect()))
}

/// `δ: H^n(G, A'') -> H^{n+1}(G, A')`, `δ[σ] = [i^{-1} ∂(s ∘ σ)]`.
///
/// The symmetric variant requires a symmetric compatible section.
pub fn connecting_map(ses: &ShortExactModules, n: usize, variant: Variant) -> Result<AbHom> {
    let source = cohomology(&ses.quotient, n, variant);
    let target = cohomology(&ses.sub, n + 1, variant);
    connecting_between(ses, &source, &target)
}

fn connecting_between(ses: &ShortExactModules, source: &CohomologyGroup, target: &CohomologyGroup) -> Result<AbHom> {
    if source.variant() == Variant::Symmetric {
        ses.require_hypotheses()?;
    }
    let n = source.degree();
    let mid = CochainSpace::new(&ses.middle, n);
    let solver = Solver::new(&ses.i);
    let tspace = target.space();
    let columns = source
        .generators()
        .iter()
        .map(|sigma| {
            let mu = mid.cochain(sigma.values().iter().flat_map(|x| ses.lift(x)).collect())?;
            let d = apply_coboundary(&ses.middle, &mu)?;
            let back: Vec<Int> =
                d.values().iter().flat_map(|v| solver.solve(v).expect("∂(s σ) takes values in i(A')")).collect();
            target.class_of(&tspace.cochain(back)?)
        })
        .collect::<Result<Vec<_>>>()?;
    AbHom::from_columns(source.group().clone(), target.group().clone(), &columns)
}

#[derive(Clone, Debug)]
pub struct LesNode {
    /// `"H^k(A')"`, `"H^k(A)"` or `"H^k(A'')"` (with `HS` for the symmetric variant).
    pub label: String,
    pub group: FgAbelianGroup,
}

/// `H^0(A') -> H^0(A) -> H^0(A'') -> H^1(A') -> ... -> H^N(A'') -> H^{N+1}(A')`.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub variant: Variant,
    pub nodes: Vec<LesNode>,
    /// `maps[k]: nodes[k] -> nodes[k + 1]`.
    pub maps: Vec<AbHom>,
    /// Exactness at each node; the first node is checked for injectivity
    /// of its outgoing map, the last one is not checked (`None`).
    pub exact: Vec<Option<bool>>,
}

impl LongExactSequence {
    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|e| e.unwrap_or(true))
    }
}

pub fn long_exact_sequence(ses: &ShortExactModules, n_max: usize, variant: Variant) -> Result<LongExactSequence> {
    if variant == Variant::Symmetric {
        ses.require_hypotheses()?;
    }
    let g = ses.middle.group();
    let pi = CompatiblePair::new(GroupHom::identity(g), ses.i.clone(), &ses.sub, &ses.middle)?;
    let pj = CompatiblePair::new(GroupHom::identity(g), ses.j.clone(), &ses.middle, &ses.quotient)?;
    let prefix = if variant == Variant::Symmetric { "HS" } else { "H" };
    let mut nodes = Vec::new();
    let mut maps = Vec::new();
    let mut h1 = cohomology(&ses.sub, 0, variant);
    for k in 0..=n_max {
        let h = cohomology(&ses.middle, k, variant);
        let h2 = cohomology(&ses.quotient, k, variant);
        let next = cohomology(&ses.sub, k + 1, variant);
        nodes.push(LesNode { label: format!("{prefix}^{k}(A')"), group: h1.group().clone() });
        nodes.push(LesNode { label: format!("{prefix}^{k}(A)"), group: h.group().clone() });
        nodes.push(LesNode { label: format!("{prefix}^{k}(A'')"), group: h2.group().clone() });
        maps.push(induced_between(&pi, h1, h.clone())?.map);
        maps.push(induced_between(&pj, h, h2.clone())?.map);
        maps.push(connecting_between(ses, &h2, &next)?);
        h1 = next;
    }
    nodes.push(LesNode { label: format!("{prefix}^{}(A')", n_max + 1), group: h1.group().clone() });
    let mut exact = vec![Some(maps[0].is_injective())];
    for k in 1..maps.len() {
        exact.push(Some(image(&maps[k - 1]).same_subgroup(&kernel(&maps[k]))?));
    }
    exact.push(None);
    Ok(LongExactSequence { variant, nodes, maps, exact })
}
