//! Extensions `0 -> A -> E -> G -> 1` of a finite group by a module.

mod classify;

pub use classify::{
    class_in_symmetric_image, equivalent, extension_class, find_symmetric_section, normalize_cocycle, Normalized,
};

use num_traits::Zero;

use crate::abelian::{image, kernel, solve, AbHom, FgAbelianGroup};
use crate::cochain::{is_cocycle, Cochain, CochainSpace};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GModule, GroupHom};
use crate::Int;

/// Largest `|A| |G|` for which [`Extension::to_table`] materializes `E`.
pub const TABLE_LIMIT: u64 = 2048;

/// How the middle group `E` is represented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    /// `A × G` with `(a, g)(b, h) = (a + g·b + σ(g, h), gh)` for a normalized 2-cocycle `σ`.
    Structured { cocycle: Cochain },
    /// An explicit finite group; `inclusion[k]` is the image of the `k`-th
    /// element of `A` (in `FgAbelianGroup::elements` order).
    Table { group: FiniteGroup, inclusion: Vec<usize>, projection: GroupHom },
    /// A finitely generated abelian `E` over a cyclic `G = Z/n`, with
    /// `π: E -> Z/n` and element `k` of `Z/n` read as group element `k`.
    Abelian { middle: FgAbelianGroup, inclusion: AbHom, projection: AbHom },
}

/// An element of `E`, in the form matching the carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtElement {
    Pair(Vec<Int>, usize),
    Index(usize),
    Vector(Vec<Int>),
}

/// A set-theoretic section `s: G -> E` with `π s = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    values: Vec<ExtElement>,
}

impl Section {
    pub fn new(values: Vec<ExtElement>) -> Self {
        Section { values }
    }

    pub fn values(&self) -> &[ExtElement] {
        &self.values
    }

    pub fn at(&self, g: usize) -> &ExtElement {
        &self.values[g]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    base: GModule,
    carrier: Carrier,
}

/// `E_σ` for a normalized 2-cocycle `σ`.
pub fn build_extension(module: &GModule, sigma: &Cochain) -> Result<Extension> {
    CochainSpace::new(module, 2).check(sigma)?;
    if !is_cocycle(module, sigma)? {
        return Err(Error::NotACocycle);
    }
    let order = module.group().order();
    let normalized = module.group().elements().all(|g| {
        sigma.value(order, &[g, 0]).iter().all(Zero::is_zero) && sigma.value(order, &[0, g]).iter().all(Zero::is_zero)
    });
    if !normalized {
        return Err(Error::NotNormalized);
    }
    Ok(Extension { base: module.clone(), carrier: Carrier::Structured { cocycle: sigma.clone() } })
}

impl Extension {
    /// Validate an explicit finite extension.
    pub fn from_table(base: &GModule, group: FiniteGroup, inclusion: Vec<usize>, projection: GroupHom) -> Result<Self> {
        let bad = |m: &str| Err(Error::NotAnExtension(m.into()));
        let a = base.coeff();
        let elements = a.elements(TABLE_LIMIT).ok_or_else(|| Error::NotAnExtension("A must be finite".into()))?;
        if projection.source() != &group || projection.target() != base.group() {
            return bad("projection does not run from E to G");
        }
        if inclusion.len() != elements.len() || inclusion.iter().any(|&e| e >= group.order()) {
            return bad("inclusion must list one element of E per element of A");
        }
        for x in &elements {
            for y in &elements {
                let s = inclusion[a.element_index(&a.add(x, y)) as usize];
                if s != group.mul(inclusion[a.element_index(x) as usize], inclusion[a.element_index(y) as usize]) {
                    return bad("inclusion is not a homomorphism");
                }
            }
        }
        let mut image = inclusion.clone();
        image.sort_unstable();
        image.dedup();
        if image.len() != inclusion.len() {
            return bad("inclusion is not injective");
        }
        if image != projection.kernel() {
            return bad("image of the inclusion differs from the kernel of the projection");
        }
        if !projection.is_surjective() {
            return bad("projection is not surjective");
        }
        let ext = Extension { base: base.clone(), carrier: Carrier::Table { group, inclusion, projection } };
        if !ext.conjugation_holds(&ext.reference_section())? {
            return bad("conjugation in E does not recover the action on A");
        }
        Ok(ext)
    }

    /// Validate an extension with abelian middle group over a cyclic `G`.
    pub fn abelian(base: &GModule, middle: FgAbelianGroup, inclusion: AbHom, projection: AbHom) -> Result<Self> {
        let bad = |m: &str| Err(Error::NotAnExtension(m.into()));
        let n = base.group().order();
        if base.group() != &FiniteGroup::cyclic(n)? || !base.is_trivial() {
            return bad("an abelian middle group needs a cyclic group acting trivially");
        }
        if projection.target() != &FgAbelianGroup::cyclic(n as u64) && !(n == 1 && projection.target().is_trivial()) {
            return bad("projection must land in Z/|G|");
        }
        if inclusion.source() != base.coeff() || inclusion.target() != &middle || projection.source() != &middle {
            return bad("maps do not run A -> E -> Z/|G|");
        }
        if !inclusion.is_injective() {
            return bad("inclusion is not injective");
        }
        if !projection.is_surjective() {
            return bad("projection is not surjective");
        }
        if !image(&inclusion).same_subgroup(&kernel(&projection))? {
            return bad("image of the inclusion differs from the kernel of the projection");
        }
        Ok(Extension { base: base.clone(), carrier: Carrier::Abelian { middle, inclusion, projection } })
    }

    pub fn base(&self) -> &GModule {
        &self.base
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    /// The cocycle of a structured carrier.
    pub fn cocycle(&self) -> Option<&Cochain> {
        match &self.carrier {
            Carrier::Structured { cocycle } => Some(cocycle),
            _ => None,
        }
    }

    fn group(&self) -> &FiniteGroup {
        self.base.group()
    }

    fn a(&self) -> &FgAbelianGroup {
        self.base.coeff()
    }

    pub fn identity(&self) -> ExtElement {
        match &self.carrier {
            Carrier::Structured { .. } => ExtElement::Pair(self.a().zero(), 0),
            Carrier::Table { .. } => ExtElement::Index(0),
            Carrier::Abelian { middle, .. } => ExtElement::Vector(middle.zero()),
        }
    }

    fn sigma(&self, g: usize, h: usize) -> Vec<Int> {
        match &self.carrier {
            Carrier::Structured { cocycle } => cocycle.value(self.group().order(), &[g, h]).to_vec(),
            _ => unreachable!("only structured carriers store a cocycle"),
        }
    }

    /// Canonical form of `x`, or an error if it is not an element of `E`.
    pub fn check(&self, x: &ExtElement) -> Result<ExtElement> {
        let wrong = || Error::InvalidArgument(format!("{x:?} is not an element of this extension"));
        match (&self.carrier, x) {
            (Carrier::Structured { .. }, ExtElement::Pair(a, g)) if *g < self.group().order() => {
                self.a().check(a)?;
                Ok(ExtElement::Pair(self.a().canonical(a), *g))
            }
            (Carrier::Table { group, .. }, ExtElement::Index(e)) if *e < group.order() => Ok(x.clone()),
            (Carrier::Abelian { middle, .. }, ExtElement::Vector(v)) => {
                middle.check(v)?;
                Ok(ExtElement::Vector(middle.canonical(v)))
            }
            _ => Err(wrong()),
        }
    }

    pub fn mul(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        match (&self.carrier, x, y) {
            (Carrier::Structured { .. }, ExtElement::Pair(a, g), ExtElement::Pair(b, h)) => {
                let m = self.a();
                let v = m.add(&m.add(a, &self.base.act(*g, b)), &self.sigma(*g, *h));
                ExtElement::Pair(v, self.group().mul(*g, *h))
            }
            (Carrier::Table { group, .. }, ExtElement::Index(e), ExtElement::Index(f)) => {
                ExtElement::Index(group.mul(*e, *f))
            }
            (Carrier::Abelian { middle, .. }, ExtElement::Vector(u), ExtElement::Vector(v)) => {
                ExtElement::Vector(middle.add(u, v))
            }
            _ => panic!("element does not belong to this extension"),
        }
    }

    /// `(a, g)^{-1} = (-g^{-1}·a - g^{-1}·σ(g, g^{-1}), g^{-1})` for structured carriers.
    pub fn inv(&self, x: &ExtElement) -> ExtElement {
        match (&self.carrier, x) {
            (Carrier::Structured { .. }, ExtElement::Pair(a, g)) => {
                let gi = self.group().inv(*g);
                let s = self.a().add(a, &self.sigma(*g, gi));
                ExtElement::Pair(self.a().neg(&self.base.act(gi, &s)), gi)
            }
            (Carrier::Table { group, .. }, ExtElement::Index(e)) => ExtElement::Index(group.inv(*e)),
            (Carrier::Abelian { middle, .. }, ExtElement::Vector(v)) => ExtElement::Vector(middle.neg(v)),
            _ => panic!("element does not belong to this extension"),
        }
    }

    /// `π(x)`.
    pub fn project(&self, x: &ExtElement) -> usize {
        match (&self.carrier, x) {
            (Carrier::Structured { .. }, ExtElement::Pair(_, g)) => *g,
            (Carrier::Table { projection, .. }, ExtElement::Index(e)) => projection.apply(*e),
            (Carrier::Abelian { projection, .. }, ExtElement::Vector(v)) => {
                let k = projection.apply(v).expect("element of E");
                k.first().map_or(0, |k| usize::try_from(k).expect("residue below |G|"))
            }
            _ => panic!("element does not belong to this extension"),
        }
    }

    /// `i(a)`.
    pub fn include(&self, a: &[Int]) -> ExtElement {
        match &self.carrier {
            Carrier::Structured { .. } => ExtElement::Pair(self.a().canonical(a), 0),
            Carrier::Table { inclusion, .. } => ExtElement::Index(inclusion[self.a().element_index(a) as usize]),
            Carrier::Abelian { inclusion, .. } => ExtElement::Vector(inclusion.apply(a).expect("element of A")),
        }
    }

    /// `i^{-1}(x)`, or `None` when `x` is not in the image of `i`.
    pub fn preimage(&self, x: &ExtElement) -> Option<Vec<Int>> {
        match (&self.carrier, x) {
            (Carrier::Structured { .. }, ExtElement::Pair(a, g)) => (*g == 0).then(|| a.clone()),
            (Carrier::Table { inclusion, .. }, ExtElement::Index(e)) => {
                let k = inclusion.iter().position(|f| f == e)?;
                Some(self.a().element_at(k as u64))
            }
            (Carrier::Abelian { inclusion, .. }, ExtElement::Vector(v)) => solve(inclusion, v).expect("element of E"),
            _ => None,
        }
    }

    /// The section used to read off the cocycle of the extension: `(0, g)`
    /// for structured carriers, the smallest element of each fiber for
    /// tables, and the canonical solution of `π(x) = g` for abelian ones.
    pub fn reference_section(&self) -> Section {
        let g = self.group();
        let values = match &self.carrier {
            Carrier::Structured { .. } => g.elements().map(|x| ExtElement::Pair(self.a().zero(), x)).collect(),
            Carrier::Table { group, projection, .. } => g
                .elements()
                .map(|x| {
                    let e = if x == 0 {
                        0
                    } else {
                        group.elements().find(|&e| projection.apply(e) == x).expect("surjective")
                    };
                    ExtElement::Index(e)
                })
                .collect(),
            Carrier::Abelian { middle, projection, .. } => g
                .elements()
                .map(|x| {
                    if x == 0 {
                        return ExtElement::Vector(middle.zero());
                    }
                    let v = solve(projection, &[Int::from(x)]).expect("Z/n element").expect("surjective");
                    ExtElement::Vector(v)
                })
                .collect(),
        };
        Section { values }
    }

    /// All elements over `g`, in search order; `None` for infinite `A`.
    pub fn fiber(&self, g: usize) -> Option<Vec<ExtElement>> {
        let elements = self.a().elements(TABLE_LIMIT)?;
        Some(match &self.carrier {
            Carrier::Table { group, projection, .. } => {
                group.elements().filter(|&e| projection.apply(e) == g).map(ExtElement::Index).collect()
            }
            _ => {
                let r = self.reference_section();
                elements.iter().map(|a| self.mul(&self.include(a), r.at(g))).collect()
            }
        })
    }

    /// `π s = id` with every value an element of `E`.
    pub fn check_section(&self, s: &Section) -> Result<()> {
        if s.values.len() != self.group().order() {
            return Err(Error::NotASection(format!(
                "{} values for a group of order {}",
                s.values.len(),
                self.group().order()
            )));
        }
        for (g, x) in s.values.iter().enumerate() {
            let x = self.check(x).map_err(|_| Error::NotASection(format!("value at {g} is not an element of E")))?;
            if self.project(&x) != g {
                return Err(Error::NotASection(format!("π(s({g})) != {g}")));
            }
        }
        Ok(())
    }

    pub fn is_normalized(&self, s: &Section) -> bool {
        self.check(s.at(0)).is_ok_and(|x| x == self.identity())
    }

    /// `s(g^{-1}) = s(g)^{-1}` for all `g`.
    pub fn is_symmetric(&self, s: &Section) -> Result<bool> {
        self.check_section(s)?;
        let g = self.group();
        Ok(g.elements().all(|x| {
            let a = self.check(s.at(g.inv(x))).expect("checked");
            let b = self.check(&self.inv(s.at(x))).expect("checked");
            a == b
        }))
    }

    /// `σ(g, h) = i^{-1}(s(g) s(h) s(gh)^{-1})`.
    pub fn cocycle_from_section(&self, s: &Section) -> Result<Cochain> {
        self.check_section(s)?;
        if !self.is_normalized(s) {
            return Err(Error::NotNormalized);
        }
        let g = self.group();
        let space = CochainSpace::new(&self.base, 2);
        space.cochain_from_fn(|t| {
            let (x, y) = (t[0], t[1]);
            let prod = self.mul(&self.mul(s.at(x), s.at(y)), &self.inv(s.at(g.mul(x, y))));
            self.preimage(&prod).expect("s(g)s(h)s(gh)^{-1} lies over the identity")
        })
    }

    /// `i^{-1}(s(g) i(a) s(g)^{-1}) = g·a` for every generator `a` of `A` and every `g`.
    pub fn conjugation_holds(&self, s: &Section) -> Result<bool> {
        self.check_section(s)?;
        let a = self.a();
        for g in self.group().elements() {
            for j in 0..a.dim() {
                let e = a.unit(j);
                let c = self.mul(&self.mul(s.at(g), &self.include(&e)), &self.inv(s.at(g)));
                match self.preimage(&c) {
                    Some(x) if a.equal(&x, &self.base.act(g, &e)) => {}
                    _ => return Ok(false),
                }
            }
        }
        Ok(true)
    }

    /// Materialize a finite structured or abelian extension as a table;
    /// element `(a, g)` gets index `g |A| + idx(a)`.
    pub fn to_table(&self) -> Result<Extension> {
        if let Carrier::Table { .. } = self.carrier {
            return Ok(self.clone());
        }
        let a = self.a();
        let order = self.group().order() as u64;
        let size = a.order().and_then(|o| u64::try_from(o).ok()).filter(|&o| o.saturating_mul(order) <= TABLE_LIMIT);
        let Some(size) = size else {
            return Err(Error::TooLarge(format!("|A| |G| exceeds {TABLE_LIMIT}")));
        };
        let elements = a.elements(TABLE_LIMIT).expect("finite");
        let r = self.reference_section();
        let point = |k: usize| -> ExtElement {
            let (g, x) = (k / size as usize, k % size as usize);
            self.mul(&self.include(&elements[x]), r.at(g))
        };
        let index = |x: &ExtElement| -> usize {
            let g = self.project(x);
            let a0 = self.preimage(&self.mul(x, &self.inv(r.at(g)))).expect("same fiber");
            g * size as usize + a.element_index(&a0) as usize
        };
        let n = (size * order) as usize;
        let points: Vec<ExtElement> = (0..n).map(point).collect();
        let group = FiniteGroup::from_mul(n, |x, y| index(&self.mul(&points[x], &points[y])));
        let projection =
            GroupHom::new(group.clone(), self.group().clone(), (0..n).map(|k| k / size as usize).collect())?;
        let inclusion = (0..size as usize).collect();
        Ok(Extension { base: self.base.clone(), carrier: Carrier::Table { group, inclusion, projection } })
    }

    /// The map `φ_t(a, g) = i(a) t(g)` from the table of `E_σ` (this
    /// structured extension) to a table extension, checked to be an
    /// isomorphism that commutes with the inclusions and projections.
    pub fn equivalence_to(&self, target: &Extension, t: &Section) -> Result<GroupHom> {
        if self.base != target.base {
            return Err(Error::BaseMismatch);
        }
        if self.cocycle().is_none() {
            return Err(Error::InvalidArgument("the source of φ must be a structured extension".into()));
        }
        let Carrier::Table { group: tg, inclusion: ti, projection: tp } = &target.carrier else {
            return Err(Error::InvalidArgument("the target of φ must be a table extension".into()));
        };
        target.check_section(t)?;
        let source = self.to_table()?;
        let Carrier::Table { group: sg, inclusion: si, projection: sp } = &source.carrier else {
            unreachable!("to_table returns a table")
        };
        let size = si.len();
        let t_index = |g: usize| match t.at(g) {
            ExtElement::Index(e) => *e,
            _ => unreachable!("checked section of a table"),
        };
        let map: Vec<usize> = sg.elements().map(|k| tg.mul(ti[k % size], t_index(k / size))).collect();
        let phi = GroupHom::new(sg.clone(), tg.clone(), map)?;
        let bad = |m: &str| Err(Error::NotAnExtension(format!("φ {m}")));
        if !phi.is_injective() {
            return bad("is not injective");
        }
        if (0..size).any(|k| phi.apply(si[k]) != ti[k]) {
            return bad("does not commute with the inclusions");
        }
        if sg.elements().any(|e| tp.apply(phi.apply(e)) != sp.apply(e)) {
            return bad("does not commute with the projections");
        }
        Ok(phi)
    }
}
