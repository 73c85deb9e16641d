//! Maps induced by compatible pairs, restriction, inflation and the long
//! exact sequence of a short exact sequence of modules.

mod les;

pub use les::{connecting_map, long_exact_sequence, LesNode, LongExactSequence, ShortExactModules};

use crate::abelian::AbHom;
use crate::cochain::{cohomology, CochainSpace, CohomologyGroup, Variant};
use crate::error::{Error, Result};
use crate::group::{ActionSpec, CompatiblePair, GModule};
use crate::linalg::SparseMatrix;
use crate::Int;

/// `ψ^n: C^n(G, A) -> C^n(G', A')`, `(ψσ)(g'_1..g'_n) = β(σ(α(g'_1)..α(g'_n)))`.
pub fn induced_cochain_map(pair: &CompatiblePair, n: usize) -> AbHom {
    let src = CochainSpace::new(pair.source(), n);
    let tgt = CochainSpace::new(pair.target(), n);
    let beta = pair.beta().matrix();
    let (d, d2) = (pair.source().coeff().dim(), pair.target().coeff().dim());
    let mut rows: Vec<Vec<(usize, Int)>> = vec![Vec::new(); tgt.group().dim()];
    for k in 0..tgt.blocks() {
        let t: Vec<usize> = tgt.tuple(k).iter().map(|&g| pair.alpha().apply(g)).collect();
        let col = src.tuple_index(&t) * d;
        for r in 0..d2 {
            for (c, v) in beta.row(r) {
                rows[k * d2 + r].push((col + c, v.clone()));
            }
        }
    }
    let matrix = SparseMatrix::from_row_entries(rows, src.group().dim());
    AbHom::new(src.group().clone(), tgt.group().clone(), matrix).expect("β is well defined blockwise")
}

/// The map on cohomology induced by a compatible pair.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: CohomologyGroup,
    pub target: CohomologyGroup,
    pub map: AbHom,
}

/// `ψ^n: H^n(G, A) -> H^n(G', A')` (or `HS^n`) for a compatible pair.
pub fn induced_map(pair: &CompatiblePair, n: usize, variant: Variant) -> Result<InducedMap> {
    let source = cohomology(pair.source(), n, variant);
    let target = cohomology(pair.target(), n, variant);
    induced_between(pair, source, target)
}

/// As [`induced_map`], reusing already computed groups.
pub fn induced_between(pair: &CompatiblePair, source: CohomologyGroup, target: CohomologyGroup) -> Result<InducedMap> {
    if source.module() != pair.source() || target.module() != pair.target() {
        return Err(Error::IncompatiblePair("cohomology groups do not match the pair".into()));
    }
    if source.degree() != target.degree() || source.variant() != target.variant() {
        return Err(Error::InvalidArgument("degrees or variants differ".into()));
    }
    let psi = induced_cochain_map(pair, source.degree());
    let tspace = target.space().clone();
    let columns = source
        .generators()
        .iter()
        .map(|g| target.class_of(&tspace.cochain(psi.apply(g.vector())?)?))
        .collect::<Result<Vec<_>>>()?;
    let map = AbHom::from_columns(source.group().clone(), target.group().clone(), &columns)?;
    Ok(InducedMap { source, target, map })
}

/// The module `A` restricted along the inclusion of a subgroup.
pub fn restricted_module(module: &GModule, subgroup: &[usize]) -> Result<CompatiblePair> {
    let (h, inc) = module.group().subgroup(subgroup)?;
    let res = if module.is_trivial() {
        GModule::trivial(&h, module.coeff())
    } else {
        let matrices = h.elements().map(|x| module.action(inc.apply(x)).dense().to_rows()).collect();
        GModule::new(&h, module.coeff(), &ActionSpec::ByElement(matrices))?
    };
    CompatiblePair::new(inc, AbHom::identity(module.coeff()), module, &res)
}

/// The pair `(G -> G/N, A^N -> A)`.
pub fn inflation_pair(module: &GModule, normal: &[usize]) -> Result<CompatiblePair> {
    module.group().check_normal(normal)?;
    let fixed = module.fixed_points(normal)?;
    let q = fixed.quotient.expect("normal subgroup");
    CompatiblePair::new(q.projection, fixed.subgroup.inclusion().clone(), &q.module, module)
}

/// `res: H^n(G, A) -> H^n(H, A)`.
pub fn restriction(module: &GModule, subgroup: &[usize], n: usize, variant: Variant) -> Result<InducedMap> {
    induced_map(&restricted_module(module, subgroup)?, n, variant)
}

/// `inf: H^n(G/N, A^N) -> H^n(G, A)`.
pub fn inflation(module: &GModule, normal: &[usize], n: usize, variant: Variant) -> Result<InducedMap> {
    induced_map(&inflation_pair(module, normal)?, n, variant)
}
