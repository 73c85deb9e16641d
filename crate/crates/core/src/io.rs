//! JSON forms of groups, modules, cochains, cohomology groups, extensions,
//! short exact sequences and towers.
//!
//! Integers are written as JSON numbers when they fit in `i64` and as
//! decimal strings otherwise; both forms are accepted on input. Groups and
//! modules may be given inline or as spec strings (`"cyclic:4"`, `"Zmod:2@sign"`).

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::{AbHom, ColimitReport, ColimitStatus, FgAbelianGroup};
use crate::cochain::{Cochain, CochainSpace, CohomologyGroup, Variant};
use crate::error::{Error, Result};
use crate::extension::{build_extension, ExtElement, Extension, Section};
use crate::functorial::ShortExactModules;
use crate::group::{ActionSpec, FiniteGroup, GModule, GroupHom};
use crate::presets::{GroupSpec, ModuleSpec};
use crate::profinite::Tower;
use crate::Int;

/// An integer that round-trips through JSON at any size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct JsonInt(pub Int);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(Int::from(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(Int::from(v)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.trim().parse().map(JsonInt).map_err(|_| E::custom(format!("`{v}` is not an integer")))
            }
        }
        d.deserialize_any(V)
    }
}

pub fn wrap(v: &[Int]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

pub fn unwrap(v: &[JsonInt]) -> Vec<Int> {
    v.iter().map(|x| x.0.clone()).collect()
}

pub fn wrap_rows(m: &[Vec<Int>]) -> Vec<Vec<JsonInt>> {
    m.iter().map(|r| wrap(r)).collect()
}

pub fn unwrap_rows(m: &[Vec<JsonInt>]) -> Vec<Vec<Int>> {
    m.iter().map(|r| unwrap(r)).collect()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson { order: g.order(), table: g.table().to_vec(), labels: g.labels().map(<[String]>::to_vec) }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        if self.table.len() != self.order {
            return Err(Error::Parse(format!("order {} but the table has {} rows", self.order, self.table.len())));
        }
        FiniteGroup::from_table_with_labels(self.table.clone(), self.labels.clone())
    }
}

/// A group given inline or by spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Spec(String),
    Table(GroupJson),
}

impl GroupRef {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupRef::Spec(s) => s.parse::<GroupSpec>()?.build(),
            GroupRef::Table(t) => t.build(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActionJson {
    Trivial,
    ByElement { matrices: Vec<Vec<Vec<JsonInt>>> },
    ByGenerators { gens: Vec<usize>, matrices: Vec<Vec<Vec<JsonInt>>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub free_rank: usize,
    pub torsion: Vec<JsonInt>,
    pub action: ActionJson,
}

impl ModuleJson {
    pub fn from_module(m: &GModule) -> Result<Self> {
        let (free_rank, torsion) = split_moduli(m.coeff())?;
        let action = if m.is_trivial() {
            ActionJson::Trivial
        } else {
            ActionJson::ByElement {
                matrices: m.group().elements().map(|g| wrap_rows(&m.action(g).dense().to_rows())).collect(),
            }
        };
        Ok(ModuleJson { free_rank, torsion, action })
    }

    /// Torsion entries are per-coordinate moduli; free coordinates come first.
    pub fn build(&self, group: &FiniteGroup) -> Result<GModule> {
        let mut moduli = vec![Int::from(0); self.free_rank];
        moduli.extend(unwrap(&self.torsion));
        let coeff = FgAbelianGroup::from_moduli(moduli)?;
        let spec = match &self.action {
            ActionJson::Trivial => return Ok(GModule::trivial(group, &coeff)),
            ActionJson::ByElement { matrices } => {
                ActionSpec::ByElement(matrices.iter().map(|m| unwrap_rows(m)).collect())
            }
            ActionJson::ByGenerators { gens, matrices } => ActionSpec::ByGenerators {
                gens: gens.clone(),
                matrices: matrices.iter().map(|m| unwrap_rows(m)).collect(),
            },
        };
        GModule::new(group, &coeff, &spec)
    }
}

fn split_moduli(a: &FgAbelianGroup) -> Result<(usize, Vec<JsonInt>)> {
    let free_rank = a.moduli().iter().take_while(|m| m.is_zero()).count();
    if a.moduli()[free_rank..].iter().any(Zero::is_zero) {
        return Err(Error::InvalidArgument(format!("{a} has free coordinates after torsion ones")));
    }
    Ok((free_rank, wrap(&a.moduli()[free_rank..])))
}

/// A module given inline or by spec; specs are built over the given group
/// only when it comes from a group spec as well.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleRef {
    Spec(String),
    Explicit(ModuleJson),
}

impl ModuleRef {
    pub fn build(&self, group: &GroupRef) -> Result<GModule> {
        match (self, group) {
            (ModuleRef::Spec(m), GroupRef::Spec(g)) => m.parse::<ModuleSpec>()?.build(&g.parse()?),
            (ModuleRef::Spec(m), GroupRef::Table(_)) => {
                let spec: ModuleSpec = m.parse()?;
                let g = group.build()?;
                match spec.action {
                    crate::presets::ActionKind::Trivial => Ok(GModule::trivial(&g, &spec.coeff())),
                    _ => Err(Error::Parse(
                        "nontrivial module specs need a group spec; give the action explicitly".into(),
                    )),
                }
            }
            (ModuleRef::Explicit(j), _) => j.build(&group.build()?),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub degree: usize,
    pub values: Vec<Vec<JsonInt>>,
}

impl CochainJson {
    pub fn from_cochain(c: &Cochain) -> Self {
        CochainJson { degree: c.degree(), values: wrap_rows(&c.values()) }
    }

    pub fn build(&self, module: &GModule) -> Result<Cochain> {
        let space = CochainSpace::new(module, self.degree);
        if self.values.len() != space.blocks() {
            return Err(Error::Parse(format!(
                "a degree-{} cochain over a group of order {} needs {} values, got {}",
                self.degree,
                module.group().order(),
                space.blocks(),
                self.values.len()
            )));
        }
        let dim = module.coeff().dim();
        if let Some(v) = self.values.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
        }
        space.cochain(self.values.iter().flat_map(|v| unwrap(v)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyJson {
    pub variant: String,
    pub degree: usize,
    pub free_rank: usize,
    pub invariant_factors: Vec<JsonInt>,
    pub generators: Vec<CochainJson>,
}

impl CohomologyJson {
    pub fn from_cohomology(h: &CohomologyGroup) -> Self {
        let g = h.group();
        CohomologyJson {
            variant: h.variant().name().to_string(),
            degree: h.degree(),
            free_rank: g.free_rank(),
            invariant_factors: wrap(&g.invariant_factors()),
            generators: h.generators().iter().map(CochainJson::from_cochain).collect(),
        }
    }
}

/// Invariant-factor summary of an abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianJson {
    pub free_rank: usize,
    pub invariant_factors: Vec<JsonInt>,
}

impl AbelianJson {
    pub fn from_group(g: &FgAbelianGroup) -> Self {
        let c = g.canonical_form();
        AbelianJson { free_rank: c.free_rank(), invariant_factors: wrap(&c.invariant_factors()) }
    }
}

pub fn hom_rows(f: &AbHom) -> Vec<Vec<JsonInt>> {
    wrap_rows(&f.dense().to_rows())
}

/// Element of an extension carrier: an index for tables, `{"a", "g"}` for
/// structured carriers and a coordinate vector for abelian ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Index(usize),
    Pair { a: Vec<JsonInt>, g: usize },
    Vector(Vec<JsonInt>),
}

impl ElementJson {
    pub fn from_element(x: &ExtElement) -> Self {
        match x {
            ExtElement::Index(i) => ElementJson::Index(*i),
            ExtElement::Pair(a, g) => ElementJson::Pair { a: wrap(a), g: *g },
            ExtElement::Vector(v) => ElementJson::Vector(wrap(v)),
        }
    }

    pub fn to_element(&self) -> ExtElement {
        match self {
            ElementJson::Index(i) => ExtElement::Index(*i),
            ElementJson::Pair { a, g } => ExtElement::Pair(unwrap(a), *g),
            ElementJson::Vector(v) => ExtElement::Vector(unwrap(v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionJson {
    pub assignment: Vec<ElementJson>,
}

impl SectionJson {
    pub fn from_section(s: &Section) -> Self {
        SectionJson { assignment: s.values().iter().map(ElementJson::from_element).collect() }
    }

    pub fn build(&self, ext: &Extension) -> Result<Section> {
        let s = Section::new(self.assignment.iter().map(ElementJson::to_element).collect());
        ext.check_section(&s)?;
        Ok(s)
    }
}

/// `i[k]` is the image of the `k`-th element of `A` (enumeration order),
/// `pi[e]` the image of element `e` of `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtensionJson {
    Structured {
        group: GroupRef,
        module: ModuleRef,
        cocycle: CochainJson,
    },
    Table {
        group: GroupRef,
        module: ModuleRef,
        #[serde(rename = "E")]
        e: GroupRef,
        i: Vec<usize>,
        pi: Vec<usize>,
    },
}

impl ExtensionJson {
    pub fn build(&self) -> Result<Extension> {
        match self {
            ExtensionJson::Structured { group, module, cocycle } => {
                let m = module.build(group)?;
                build_extension(&m, &cocycle.build(&m)?)
            }
            ExtensionJson::Table { group, module, e, i, pi } => {
                let m = module.build(group)?;
                let e = e.build()?;
                let pi = GroupHom::new(e.clone(), m.group().clone(), pi.clone())?;
                Extension::from_table(&m, e, i.clone(), pi)
            }
        }
    }
}

/// `i` and `j` are integer matrices (rows of target coordinates);
/// `section` lists `s(x)` for the elements `x` of `A''` in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SesJson {
    pub group: GroupRef,
    #[serde(rename = "A_prime")]
    pub a_prime: ModuleRef,
    #[serde(rename = "A")]
    pub a: ModuleRef,
    #[serde(rename = "A_doubleprime")]
    pub a_doubleprime: ModuleRef,
    pub i: Vec<Vec<JsonInt>>,
    pub j: Vec<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<Vec<JsonInt>>>,
}

impl SesJson {
    pub fn build(&self) -> Result<ShortExactModules> {
        let sub = self.a_prime.build(&self.group)?;
        let mid = self.a.build(&self.group)?;
        let quo = self.a_doubleprime.build(&self.group)?;
        let i = AbHom::from_rows(sub.coeff().clone(), mid.coeff().clone(), unwrap_rows(&self.i))?;
        let j = AbHom::from_rows(mid.coeff().clone(), quo.coeff().clone(), unwrap_rows(&self.j))?;
        let section = self.section.as_ref().map(|s| unwrap_rows(s));
        ShortExactModules::new(&sub, &mid, &quo, i, j, section)
    }
}

/// Levels from the smallest quotient up; `bonding[k]` maps level `k + 1`
/// onto level `k`; `coeff` is a module over the top level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerJson {
    pub levels: Vec<GroupRef>,
    pub bonding: Vec<Vec<usize>>,
    pub coeff: ModuleRef,
}

impl TowerJson {
    pub fn build(&self) -> Result<Tower> {
        if self.levels.is_empty() || self.bonding.len() + 1 != self.levels.len() {
            return Err(Error::LengthMismatch { groups: self.levels.len(), maps: self.bonding.len() });
        }
        let groups = self.levels.iter().map(GroupRef::build).collect::<Result<Vec<_>>>()?;
        let bonding = self
            .bonding
            .iter()
            .enumerate()
            .map(|(k, map)| {
                GroupHom::new(groups[k + 1].clone(), groups[k].clone(), map.clone())
                    .map_err(|e| Error::NotCompatible { level: k, reason: e.to_string() })
            })
            .collect::<Result<Vec<_>>>()?;
        let top = self.coeff.build(self.levels.last().expect("nonempty"))?;
        Tower::from_top(bonding, &top)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColimitLevelJson {
    pub group: AbelianJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<Vec<JsonInt>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map_is_isomorphism: Option<bool>,
    pub image_in_top: AbelianJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColimitJson {
    pub window: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<AbelianJson>,
    pub all_images_trivial: bool,
    pub levels: Vec<ColimitLevelJson>,
}

impl ColimitJson {
    pub fn from_report(r: &ColimitReport) -> Self {
        let (status, limit) = match &r.status {
            ColimitStatus::Stabilized(g) => ("STABILIZED", Some(AbelianJson::from_group(g))),
            ColimitStatus::NotStabilized => ("NOT-STABILIZED", None),
        };
        ColimitJson {
            window: r.window,
            status: status.into(),
            limit,
            all_images_trivial: r.all_images_trivial(),
            levels: r
                .levels
                .iter()
                .map(|l| ColimitLevelJson {
                    group: AbelianJson::from_group(&l.group),
                    map: l.map.as_ref().map(hom_rows),
                    map_is_isomorphism: l.map_is_isomorphism,
                    image_in_top: AbelianJson::from_group(&l.image_in_top),
                })
                .collect(),
        }
    }
}

pub fn variant_from_name(name: &str) -> Result<Variant> {
    match name {
        "ordinary" => Ok(Variant::Ordinary),
        "symmetric" => Ok(Variant::Symmetric),
        _ => Err(Error::Parse(format!("unknown variant `{name}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::cohomology;
    use crate::presets::parse_module;

    #[test]
    fn ints_round_trip_at_any_size() {
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        let v = vec![JsonInt(Int::from(-3)), JsonInt(big)];
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"[-3,"123456789012345678901234567890"]"#);
        assert_eq!(from_json::<Vec<JsonInt>>(&text).unwrap(), v);
    }

    #[test]
    fn groups_and_modules_round_trip() {
        let m = parse_module("dihedral:4", "Z^2@natural").unwrap();
        let g = GroupJson::from_group(m.group());
        let back = from_json::<GroupJson>(&to_json(&g)).unwrap().build().unwrap();
        assert_eq!(&back, m.group());
        let mj = from_json::<ModuleJson>(&to_json(&ModuleJson::from_module(&m).unwrap())).unwrap();
        assert_eq!(mj.build(&back).unwrap(), m);
        let spec: ModuleRef = from_json(r#""Zmod:2""#).unwrap();
        assert_eq!(spec, ModuleRef::Spec("Zmod:2".into()));
    }

    #[test]
    fn cochains_round_trip() {
        let m = parse_module("cyclic:2", "Zmod:2").unwrap();
        let h = cohomology(&m, 2, Variant::Ordinary);
        let c = &h.generators()[0];
        let j = CochainJson::from_cochain(c);
        assert_eq!(&from_json::<CochainJson>(&to_json(&j)).unwrap().build(&m).unwrap(), c);
        let out = CohomologyJson::from_cohomology(&h);
        assert_eq!(out.invariant_factors, vec![JsonInt(Int::from(2))]);
        assert!(CochainJson { degree: 2, values: vec![] }.build(&m).is_err());
    }

    #[test]
    fn action_schema() {
        let text = r#"{"free_rank":1,"torsion":[],"action":{"kind":"by_generators","gens":[1],"matrices":[[[-1]]]}}"#;
        let m: ModuleJson = from_json(text).unwrap();
        let g = FiniteGroup::cyclic(2).unwrap();
        let module = m.build(&g).unwrap();
        assert_eq!(module.act(1, &[Int::from(3)]), vec![Int::from(-3)]);
        let text = r#"{"free_rank":0,"torsion":[4],"action":{"kind":"by_element","matrices":[[[1]],[[2]]]}}"#;
        assert!(from_json::<ModuleJson>(text).unwrap().build(&g).is_err());
    }
}
