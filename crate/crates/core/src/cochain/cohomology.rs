use std::fmt;
use std::str::FromStr;

use super::ops::{coboundary, is_cocycle, is_symmetric};
use super::space::{Cochain, CochainSpace};
use super::symmetric::symmetric_subcomplex;
use crate::abelian::{image, kernel, quotient, AbHom, FgAbelianGroup, Quotient, SubgroupPresentation};
use crate::error::{Error, Result};
use crate::group::GModule;
use crate::linalg::EchelonBasis;
use crate::Int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Ordinary,
    Symmetric,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Ordinary => "ordinary",
            Variant::Symmetric => "symmetric",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordinary" => Ok(Variant::Ordinary),
            "symmetric" => Ok(Variant::Symmetric),
            _ => Err(Error::Parse(format!("unknown variant `{s}`"))),
        }
    }
}

/// `H^n` or `HS^n` together with everything needed to name classes.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    variant: Variant,
    space: CochainSpace,
    cycles: SubgroupPresentation,
    boundaries: SubgroupPresentation,
    quotient: Quotient,
    generators: Vec<Cochain>,
}

/// Cocycles of the requested variant inside `C^n`.
pub fn cocycles(module: &GModule, n: usize, variant: Variant) -> SubgroupPresentation {
    let d = coboundary(module, n);
    match variant {
        Variant::Ordinary => kernel(&d),
        Variant::Symmetric => {
            let cs = symmetric_subcomplex(module, n);
            let restricted = d.compose(cs.inclusion()).expect("inclusion lands in C^n");
            let gens = kernel(&restricted)
                .basis()
                .iter()
                .map(|k| cs.inclusion().apply(k))
                .collect::<Result<Vec<_>>>()
                .expect("coordinates of the presented group");
            SubgroupPresentation::from_generators(cs.ambient(), gens).expect("vectors live in C^n")
        }
    }
}

/// Coboundaries of the requested variant inside `C^n`.
pub fn coboundaries(module: &GModule, n: usize, variant: Variant) -> SubgroupPresentation {
    let space = CochainSpace::new(module, n);
    if n == 0 {
        return SubgroupPresentation::trivial(space.group());
    }
    let d = coboundary(module, n - 1);
    match variant {
        Variant::Ordinary => image(&d),
        Variant::Symmetric => {
            let cs = symmetric_subcomplex(module, n - 1);
            image(&d.compose(cs.inclusion()).expect("inclusion lands in C^{n-1}"))
        }
    }
}

pub fn cohomology(module: &GModule, n: usize, variant: Variant) -> CohomologyGroup {
    let space = CochainSpace::new(module, n);
    let cycles = cocycles(module, n, variant);
    let boundaries = coboundaries(module, n, variant);
    let coords = boundaries
        .basis()
        .iter()
        .map(|b| cycles.coordinates(b).map(|c| c.expect("every coboundary is a cocycle")))
        .collect::<Result<Vec<_>>>()
        .expect("coboundaries live in C^n");
    let sub = SubgroupPresentation::from_generators(cycles.presented(), coords).expect("coordinates fit");
    let quotient = quotient(cycles.presented(), &sub).expect("same ambient");

    let mut reducer = EchelonBasis::new(space.group().moduli(), 0);
    for b in boundaries.basis() {
        reducer.insert(b, None).expect("arbitrary precision");
    }
    let generators = quotient
        .lifts()
        .iter()
        .map(|l| {
            let v = cycles.inclusion().apply(l).expect("lift in the presented group");
            let (r, _) = reducer.reduce(&v).expect("arbitrary precision");
            space.cochain(r).expect("reduced vector lives in C^n")
        })
        .collect();
    CohomologyGroup { variant, space, cycles, boundaries, quotient, generators }
}

impl CohomologyGroup {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn degree(&self) -> usize {
        self.space.degree()
    }

    pub fn module(&self) -> &GModule {
        self.space.module()
    }

    pub fn space(&self) -> &CochainSpace {
        &self.space
    }

    /// The group itself, in canonical invariant-factor form.
    pub fn group(&self) -> &FgAbelianGroup {
        self.quotient.group()
    }

    /// Representative cocycles of the coordinate generators.
    pub fn generators(&self) -> &[Cochain] {
        &self.generators
    }

    pub fn cycles(&self) -> &SubgroupPresentation {
        &self.cycles
    }

    pub fn boundaries(&self) -> &SubgroupPresentation {
        &self.boundaries
    }

    /// Coordinates of `[σ]`.
    pub fn class_of(&self, sigma: &Cochain) -> Result<Vec<Int>> {
        self.space.check(sigma)?;
        let module = self.space.module();
        if !is_cocycle(module, sigma)? {
            return Err(Error::NotACocycle);
        }
        if self.variant == Variant::Symmetric && !is_symmetric(module, sigma)? {
            return Err(Error::NotSymmetric);
        }
        let c = self.cycles.coordinates(sigma.vector())?.expect("symmetric cocycles lie in the cycle group");
        self.quotient.project(&c)
    }

    /// `[σ] = 0`.
    pub fn is_coboundary(&self, sigma: &Cochain) -> Result<bool> {
        Ok(self.group().is_zero(&self.class_of(sigma)?))
    }

    /// A cocycle representing the class with the given coordinates.
    pub fn representative(&self, class: &[Int]) -> Result<Cochain> {
        self.group().check(class)?;
        let a = self.space.group();
        let mut v = a.zero();
        for (c, g) in class.iter().zip(&self.generators) {
            v = a.add(&v, &a.scale(c, g.vector()));
        }
        self.space.cochain(v)
    }
}

/// `h^*: HS^n -> H^n` with its kernel and image.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub symmetric: CohomologyGroup,
    pub ordinary: CohomologyGroup,
    pub map: AbHom,
    pub kernel: SubgroupPresentation,
    pub image: SubgroupPresentation,
}

impl Comparison {
    pub fn between(symmetric: CohomologyGroup, ordinary: CohomologyGroup) -> Result<Self> {
        if symmetric.variant != Variant::Symmetric || ordinary.variant != Variant::Ordinary {
            return Err(Error::InvalidArgument("h* needs a symmetric source and an ordinary target".into()));
        }
        if symmetric.degree() != ordinary.degree() {
            return Err(Error::InvalidArgument("h* needs groups of the same degree".into()));
        }
        let columns = symmetric.generators.iter().map(|g| ordinary.class_of(g)).collect::<Result<Vec<_>>>()?;
        let map = AbHom::from_columns(symmetric.group().clone(), ordinary.group().clone(), &columns)?;
        let kernel = kernel(&map);
        let image = image(&map);
        Ok(Comparison { symmetric, ordinary, map, kernel, image })
    }

    pub fn is_injective(&self) -> bool {
        self.kernel.presented().is_trivial()
    }
}

pub fn hstar(module: &GModule, n: usize) -> Comparison {
    Comparison::between(cohomology(module, n, Variant::Symmetric), cohomology(module, n, Variant::Ordinary))
        .expect("variants and degrees match")
}
