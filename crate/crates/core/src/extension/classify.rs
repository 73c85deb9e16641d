use num_traits::Zero;

use super::{ExtElement, Extension, Section};
use crate::abelian::{solve, AbHom};
use crate::cochain::{
    apply_coboundary, coboundary, cocycles, cohomology, is_cocycle, is_symmetric, symmetric_subcomplex, Cochain,
    CochainSpace, CohomologyGroup, Variant,
};
use crate::error::{Error, Result};
use crate::group::GModule;
use crate::Int;

/// A normalized symmetric section, or `None` if the extension has none.
///
/// Inverse pairs `{g, g^{-1}}` are independent: the smaller index takes the
/// first element of its fiber and its partner the inverse. An involution `g`
/// needs `s(g)^2 = 1`; writing `s(g) = i(a) r(g)` for the reference section
/// `r` this is `a + g·a + σ_r(g, g) = 0`, searched in element order for finite
/// `A` (element index order for tables) and solved exactly otherwise.
pub fn find_symmetric_section(ext: &Extension) -> Result<Option<Section>> {
    let g = ext.base().group();
    let a = ext.base().coeff();
    let r = ext.reference_section();
    let sigma = ext.cocycle_from_section(&r)?;
    let order = g.order();
    let mut values: Vec<Option<ExtElement>> = vec![None; order];
    values[0] = Some(ext.identity());
    for x in g.elements().skip(1) {
        if values[x].is_some() {
            continue;
        }
        if !g.is_involution(x) {
            let s = ext.fiber(x).map_or_else(|| r.at(x).clone(), |f| f[0].clone());
            values[g.inv(x)] = Some(ext.inv(&s));
            values[x] = Some(s);
            continue;
        }
        let found = match ext.fiber(x) {
            Some(fiber) => fiber.into_iter().find(|s| ext.mul(s, s) == ext.identity()),
            None => {
                let twice = ext.base().action(x).add(&AbHom::identity(a))?;
                let rhs = a.neg(sigma.value(order, &[x, x]));
                solve(&twice, &rhs)?.map(|c| ext.mul(&ext.include(&c), r.at(x)))
            }
        };
        match found {
            Some(s) => values[x] = Some(s),
            None => return Ok(None),
        }
    }
    Ok(Some(Section::new(values.into_iter().map(|v| v.expect("every element assigned")).collect())))
}

/// A symmetric 2-cocycle cohomologous to `σ`, or `None` when `[σ]` is not in
/// the image of `HS^2 -> H^2`.
///
/// Solves `σ = σ' + ∂λ` for `(σ', λ) ∈ ZS^2 ⊕ C^1` in one system.
pub fn class_in_symmetric_image(module: &GModule, sigma: &Cochain) -> Result<Option<Cochain>> {
    let space = CochainSpace::new(module, 2);
    space.check(sigma)?;
    if !is_cocycle(module, sigma)? {
        return Err(Error::NotACocycle);
    }
    let zs = cocycles(module, 2, Variant::Symmetric);
    let f = zs.inclusion().hstack(&coboundary(module, 1))?;
    let Some(x) = solve(&f, sigma.vector())? else {
        return Ok(None);
    };
    let k = zs.presented().dim();
    Ok(Some(space.cochain(zs.inclusion().apply(&x[..k])?)?))
}

/// `σ' = σ - ∂λ` with `σ'(g, 1) = σ'(1, g) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub cocycle: Cochain,
    pub lambda: Cochain,
    /// For symmetric input: whether a symmetric `λ` was found, so that `σ'`
    /// is symmetric too. `None` for non-symmetric input.
    pub symmetry_preserved: Option<bool>,
}

/// Normalize a 2-cocycle.
///
/// The cocycle identity forces `σ(1, g) = σ(1, 1)` and `σ(g, 1) = g·σ(1, 1)`,
/// so any `λ` with `λ(1) = σ(1, 1)` works. For symmetric `σ` the solve runs
/// over `CS^1`.
pub fn normalize_cocycle(module: &GModule, sigma: &Cochain) -> Result<Normalized> {
    let c2 = CochainSpace::new(module, 2);
    c2.check(sigma)?;
    if !is_cocycle(module, sigma)? {
        return Err(Error::NotACocycle);
    }
    let a = module.coeff();
    let c1 = CochainSpace::new(module, 1);
    let corner = sigma.value(module.group().order(), &[0, 0]).to_vec();
    let mut symmetry_preserved = None;
    let mut lambda = None;
    if is_symmetric(module, sigma)? {
        let cs = symmetric_subcomplex(module, 1);
        let rows: Vec<Vec<Int>> = (0..a.dim())
            .map(|r| (0..cs.presented().dim()).map(|j| cs.inclusion().column(j)[r].clone()).collect())
            .collect();
        let eval = AbHom::from_rows(cs.presented().clone(), a.clone(), rows)?;
        let found = solve(&eval, &corner)?;
        symmetry_preserved = Some(found.is_some());
        if let Some(x) = found {
            lambda = Some(c1.cochain(cs.inclusion().apply(&x)?)?);
        }
    }
    let lambda = match lambda {
        Some(l) => l,
        None => c1.cochain_from_fn(|t| if t[0] == 0 { corner.clone() } else { a.zero() })?,
    };
    let d = apply_coboundary(module, &lambda)?;
    let cocycle = c2.cochain(c2.group().sub(sigma.vector(), d.vector()))?;
    debug_assert!(module.group().elements().all(|g| {
        let order = module.group().order();
        cocycle.value(order, &[g, 0]).iter().all(Zero::is_zero)
            && cocycle.value(order, &[0, g]).iter().all(Zero::is_zero)
    }));
    Ok(Normalized { cocycle, lambda, symmetry_preserved })
}

/// `H^2` together with the class of `ext`, read off its reference section.
pub fn extension_class(ext: &Extension) -> Result<(CohomologyGroup, Vec<Int>)> {
    let sigma = ext.cocycle_from_section(&ext.reference_section())?;
    let h = cohomology(ext.base(), 2, Variant::Ordinary);
    let class = h.class_of(&sigma)?;
    Ok((h, class))
}

/// Equivalence of extensions with the same base: equal classes in `H^2`.
pub fn equivalent(first: &Extension, second: &Extension) -> Result<bool> {
    if first.base() != second.base() {
        return Err(Error::BaseMismatch);
    }
    let s1 = first.cocycle_from_section(&first.reference_section())?;
    let s2 = second.cocycle_from_section(&second.reference_section())?;
    let h = cohomology(first.base(), 2, Variant::Ordinary);
    Ok(h.group().equal(&h.class_of(&s1)?, &h.class_of(&s2)?))
}
