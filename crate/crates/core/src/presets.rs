//! Named groups, coefficient modules, extensions and the standard test battery.
//!
//! Group specs: `trivial`, `cyclic:n`, `dihedral:n` (symmetries of an
//! `n`-gon), `sym:n`, `klein4`, `product:<spec>,<spec>,...`.
//!
//! Module specs: `<coeff>[^k][@<action>]` with `coeff` one of `Z`, `Zmod:m`,
//! and `action` one of `trivial`, `sign` (negation through the first
//! nontrivial homomorphism onto `Z/2`) or `natural` (a faithful integral
//! representation on rank-2 coefficients; needs `k = 2`).
//!
//! Extension presets: see [`EXTENSION_PRESETS`]. Short exact sequence
//! presets: see [`SES_PRESETS`].

use std::fmt;
use std::str::FromStr;

use crate::abelian::{AbHom, FgAbelianGroup};
use crate::error::{Error, Result};
use crate::extension::{ExtElement, Extension, Section};
use crate::functorial::ShortExactModules;
use crate::group::{direct_product, ActionSpec, FiniteGroup, GModule, GroupHom};
use crate::Int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Klein4,
    Product(Vec<GroupSpec>),
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let number = |rest: &str| -> Result<usize> {
            rest.parse().map_err(|_| Error::Parse(format!("expected a positive integer in group spec `{s}`")))
        };
        if let Some(rest) = s.strip_prefix("product:") {
            let parts = rest.split(',').map(str::parse).collect::<Result<Vec<GroupSpec>>>()?;
            if parts.is_empty() {
                return Err(Error::Parse("empty product".into()));
            }
            return Ok(GroupSpec::Product(parts));
        }
        match s.split_once(':') {
            Some(("cyclic", n)) => Ok(GroupSpec::Cyclic(number(n)?)),
            Some(("dihedral", n)) => Ok(GroupSpec::Dihedral(number(n)?)),
            Some(("sym", n)) => Ok(GroupSpec::Symmetric(number(n)?)),
            None if s == "klein4" => Ok(GroupSpec::Klein4),
            None if s == "trivial" => Ok(GroupSpec::Trivial),
            _ => Err(Error::Parse(format!("unknown group spec `{s}`"))),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => write!(f, "trivial"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Klein4 => write!(f, "klein4"),
            GroupSpec::Product(parts) => {
                write!(f, "product:")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

type Rows = Vec<Vec<Int>>;

fn rows(m: &[[i64; 2]; 2]) -> Rows {
    m.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
}

const SWAP: [[i64; 2]; 2] = [[0, 1], [1, 0]];

/// Integral matrix of order `n` on `Z^2`, for `n` in `{1, 2, 3, 4, 6}`.
fn rotation(n: usize) -> Option<[[i64; 2]; 2]> {
    match n {
        1 => Some([[1, 0], [0, 1]]),
        2 => Some([[-1, 0], [0, -1]]),
        3 => Some([[0, -1], [1, -1]]),
        4 => Some([[0, -1], [1, 0]]),
        6 => Some([[1, -1], [1, 0]]),
        _ => None,
    }
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Trivial => Ok(FiniteGroup::trivial()),
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
            GroupSpec::Dihedral(n) => FiniteGroup::dihedral(*n),
            GroupSpec::Symmetric(n) => FiniteGroup::symmetric(*n),
            GroupSpec::Klein4 => Ok(FiniteGroup::klein4()),
            GroupSpec::Product(parts) => {
                let mut acc = parts[0].build()?;
                for p in &parts[1..] {
                    acc = direct_product(&acc, &p.build()?).group;
                }
                Ok(acc)
            }
        }
    }

    /// Generators and their matrices for the rank-2 `natural` action.
    fn natural(&self) -> Option<(Vec<usize>, Vec<Rows>)> {
        match self {
            GroupSpec::Trivial => Some((vec![], vec![])),
            GroupSpec::Cyclic(2) => Some((vec![1], vec![rows(&SWAP)])),
            GroupSpec::Cyclic(n) => rotation(*n).map(|r| (vec![1], vec![rows(&r)])),
            GroupSpec::Dihedral(n) => rotation(*n).map(|r| (vec![1, *n], vec![rows(&r), rows(&SWAP)])),
            GroupSpec::Symmetric(3) => Some((vec![3, 1], vec![rows(&rotation(3).expect("order 3")), rows(&SWAP)])),
            GroupSpec::Symmetric(2) => Some((vec![1], vec![rows(&SWAP)])),
            GroupSpec::Klein4 => Some((vec![1, 2], vec![rows(&[[-1, 0], [0, 1]]), rows(&[[1, 0], [0, -1]])])),
            _ => None,
        }
    }
}

pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    spec.parse::<GroupSpec>()?.build()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionKind {
    Trivial,
    Sign,
    Natural,
}

impl ActionKind {
    pub fn name(self) -> &'static str {
        match self {
            ActionKind::Trivial => "trivial",
            ActionKind::Sign => "sign",
            ActionKind::Natural => "natural",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    /// `None` for `Z`, `Some(m)` for `Z/m`.
    pub modulus: Option<u64>,
    pub rank: usize,
    pub action: ActionKind,
}

impl FromStr for ModuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, action) = match s.split_once('@') {
            Some((b, a)) => (b, a),
            None => (s, "trivial"),
        };
        let action = match action {
            "trivial" => ActionKind::Trivial,
            "sign" => ActionKind::Sign,
            "natural" => ActionKind::Natural,
            _ => return Err(Error::Parse(format!("unknown action `{action}`"))),
        };
        let (coeff, rank) = match body.split_once('^') {
            Some((c, k)) => (c, k.parse().map_err(|_| Error::Parse(format!("bad rank in module spec `{s}`")))?),
            None => (body, 1),
        };
        let modulus = match coeff {
            "Z" => None,
            _ => match coeff.strip_prefix("Zmod:") {
                Some(m) => {
                    let m: u64 = m.parse().map_err(|_| Error::Parse(format!("bad modulus in module spec `{s}`")))?;
                    if m < 1 {
                        return Err(Error::Parse("modulus must be positive".into()));
                    }
                    Some(m)
                }
                None => return Err(Error::Parse(format!("unknown coefficient group `{coeff}`"))),
            },
        };
        Ok(ModuleSpec { modulus, rank, action })
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "Z")?,
            Some(m) => write!(f, "Zmod:{m}")?,
        }
        if self.rank != 1 {
            write!(f, "^{}", self.rank)?;
        }
        if self.action != ActionKind::Trivial {
            write!(f, "@{}", self.action.name())?;
        }
        Ok(())
    }
}

impl ModuleSpec {
    pub fn coeff(&self) -> FgAbelianGroup {
        let one = match self.modulus {
            None => FgAbelianGroup::free(1),
            Some(m) => FgAbelianGroup::cyclic(m),
        };
        one.power(self.rank)
    }

    pub fn build(&self, group: &GroupSpec) -> Result<GModule> {
        let g = group.build()?;
        let coeff = self.coeff();
        match self.action {
            ActionKind::Trivial => Ok(GModule::trivial(&g, &coeff)),
            ActionKind::Sign => {
                let chi = sign_character(&g)
                    .ok_or_else(|| Error::InvalidArgument(format!("{group} has no homomorphism onto Z/2")))?;
                GModule::sign(&g, &coeff, &chi)
            }
            ActionKind::Natural => {
                if self.rank != 2 {
                    return Err(Error::InvalidArgument("the natural action needs rank-2 coefficients".into()));
                }
                let (gens, matrices) = group
                    .natural()
                    .ok_or_else(|| Error::InvalidArgument(format!("no natural rank-2 action for {group}")))?;
                GModule::new(&g, &coeff, &ActionSpec::ByGenerators { gens, matrices })
            }
        }
    }
}

pub fn parse_module(group: &str, module: &str) -> Result<GModule> {
    module.parse::<ModuleSpec>()?.build(&group.parse()?)
}

/// Greedy generating set: each element not yet generated, in index order.
pub fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.generated_by(&[]);
    for x in g.elements() {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.generated_by(&gens);
        }
    }
    gens
}

/// The first nontrivial homomorphism onto `Z/2`, trying values on the
/// greedy generators in binary counting order.
pub fn sign_character(g: &FiniteGroup) -> Option<GroupHom> {
    let gens = generating_set(g);
    let z2 = FiniteGroup::cyclic(2).expect("order 2");
    for mask in 1u64..(1 << gens.len()) {
        // Extend the assignment along words in the generators.
        let mut map = vec![usize::MAX; g.order()];
        map[0] = 0;
        let mut frontier = vec![0];
        let mut consistent = true;
        while let Some(x) = frontier.pop() {
            for (i, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let v = map[x] ^ ((mask >> i) & 1) as usize;
                if map[y] == usize::MAX {
                    map[y] = v;
                    frontier.push(y);
                } else if map[y] != v {
                    consistent = false;
                }
            }
        }
        if consistent {
            if let Ok(h) = GroupHom::new(g.clone(), z2.clone(), map) {
                return Some(h);
            }
        }
    }
    None
}

/// One entry of the standard battery.
#[derive(Clone, Debug)]
pub struct BatteryCase {
    pub group: GroupSpec,
    pub module: ModuleSpec,
    pub gmodule: GModule,
}

impl BatteryCase {
    pub fn name(&self) -> String {
        format!("{} / {}", self.group, self.module)
    }
}

pub fn battery_groups() -> Vec<GroupSpec> {
    vec![
        GroupSpec::Cyclic(2),
        GroupSpec::Cyclic(3),
        GroupSpec::Cyclic(4),
        GroupSpec::Klein4,
        GroupSpec::Symmetric(3),
        GroupSpec::Dihedral(4),
    ]
}

pub fn battery_coefficients() -> Vec<Option<u64>> {
    vec![None, Some(2), Some(3), Some(4), Some(6)]
}

/// Every battery group with every coefficient group under the trivial,
/// sign and natural actions (the sign action is skipped where no
/// character onto `Z/2` exists).
pub fn battery() -> Vec<BatteryCase> {
    let mut out = Vec::new();
    for group in battery_groups() {
        for modulus in battery_coefficients() {
            for (action, rank) in [(ActionKind::Trivial, 1), (ActionKind::Sign, 1), (ActionKind::Natural, 2)] {
                let module = ModuleSpec { modulus, rank, action };
                match module.build(&group) {
                    Ok(gmodule) => out.push(BatteryCase { group: group.clone(), module, gmodule }),
                    Err(Error::InvalidArgument(_)) => {}
                    Err(e) => panic!("battery module {group} / {module} failed to validate: {e}"),
                }
            }
        }
    }
    out
}

/// Names accepted by [`extension_preset`].
pub const EXTENSION_PRESETS: [&str; 3] = ["z-times-z2", "z-index-4", "z4-over-z2"];

/// A named extension with a distinguished normalized section.
#[derive(Clone, Debug)]
pub struct ExtensionPreset {
    pub name: &'static str,
    pub extension: Extension,
    pub section: Section,
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// * `z-times-z2`: `0 -> Z -> Z × Z/2 -> Z/4 -> 0`, `i(n) = (2n, n mod 2)`,
///   `π(n, m) = n + 2m mod 4`, with the symmetric section
///   `0 ↦ (0,0), 1 ↦ (-1,1), 2 ↦ (0,1), 3 ↦ (1,1)`.
/// * `z-index-4`: `0 -> Z -×4-> Z -> Z/4 -> 0` with section `k ↦ k`.
/// * `z4-over-z2`: `0 -> Z/2 -> Z/4 -> Z/2 -> 0` as a table, with section
///   `0 ↦ 0, 1 ↦ 1`.
pub fn extension_preset(name: &str) -> Result<ExtensionPreset> {
    let z4 = FiniteGroup::cyclic(4)?;
    let z = FgAbelianGroup::free(1);
    let base = GModule::trivial(&z4, &z);
    let (name, extension, section) = match name {
        "z-times-z2" => {
            let middle = FgAbelianGroup::new(1, &[Int::from(2)])?;
            let i = AbHom::from_rows(z.clone(), middle.clone(), vec![ints(&[2]), ints(&[1])])?;
            let pi = AbHom::from_rows(middle.clone(), FgAbelianGroup::cyclic(4), vec![ints(&[1, 2])])?;
            let ext = Extension::abelian(&base, middle, i, pi)?;
            let s = [[0, 0], [-1, 1], [0, 1], [1, 1]].iter().map(|v| ExtElement::Vector(ints(v))).collect();
            ("z-times-z2", ext, Section::new(s))
        }
        "z-index-4" => {
            let i = AbHom::from_rows(z.clone(), z.clone(), vec![ints(&[4])])?;
            let pi = AbHom::from_rows(z.clone(), FgAbelianGroup::cyclic(4), vec![ints(&[1])])?;
            let ext = Extension::abelian(&base, z.clone(), i, pi)?;
            let s = (0..4).map(|k| ExtElement::Vector(ints(&[k]))).collect();
            ("z-index-4", ext, Section::new(s))
        }
        "z4-over-z2" => {
            let z2 = FiniteGroup::cyclic(2)?;
            let base = GModule::trivial(&z2, &FgAbelianGroup::cyclic(2));
            let pi = GroupHom::new(z4.clone(), z2, vec![0, 1, 0, 1])?;
            let ext = Extension::from_table(&base, z4, vec![0, 2], pi)?;
            ("z4-over-z2", ext, Section::new(vec![ExtElement::Index(0), ExtElement::Index(1)]))
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown extension preset `{other}` (expected one of {})",
                EXTENSION_PRESETS.join(", ")
            )))
        }
    };
    extension.check_section(&section)?;
    Ok(ExtensionPreset { name, extension, section })
}

/// Names accepted by [`ses_preset`].
pub const SES_PRESETS: [&str; 2] = ["z3-z6-z2", "z2-z4-z2"];

/// Sequences of trivial modules over `group`:
///
/// * `z3-z6-z2`: `0 -> Z/3 -×2-> Z/6 -> Z/2 -> 0` with section `1 ↦ 3`.
/// * `z2-z4-z2`: `0 -> Z/2 -×2-> Z/4 -> Z/2 -> 0`, section searched (none is
///   symmetric, so building it fails with `SectionNotSymmetric`).
pub fn ses_preset(name: &str, group: &GroupSpec) -> Result<ShortExactModules> {
    let g = group.build()?;
    let module = |n| GModule::trivial(&g, &FgAbelianGroup::cyclic(n));
    let (p, m, q, section) = match name {
        "z3-z6-z2" => (3, 6, 2, Some(vec![ints(&[0]), ints(&[3])])),
        "z2-z4-z2" => (2, 4, 2, None),
        other => {
            return Err(Error::Parse(format!(
                "unknown sequence preset `{other}` (expected one of {})",
                SES_PRESETS.join(", ")
            )))
        }
    };
    let (sub, mid, quo) = (module(p), module(m), module(q));
    let i = AbHom::from_rows(sub.coeff().clone(), mid.coeff().clone(), vec![ints(&[(m / p) as i64])])?;
    let j = AbHom::from_rows(mid.coeff().clone(), quo.coeff().clone(), vec![ints(&[1])])?;
    ShortExactModules::new(&sub, &mid, &quo, i, j, section)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_round_trip() {
        for s in ["cyclic:4", "dihedral:3", "sym:3", "klein4", "trivial", "product:cyclic:2,cyclic:3"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        for s in ["Z", "Zmod:6", "Z^2@natural", "Zmod:4@sign"] {
            assert_eq!(s.parse::<ModuleSpec>().unwrap().to_string(), s);
        }
        assert!("cyclic:x".parse::<GroupSpec>().is_err());
        assert!("Q".parse::<ModuleSpec>().is_err());
    }

    #[test]
    fn sign_characters() {
        assert!(sign_character(&FiniteGroup::cyclic(3).unwrap()).is_none());
        let z4 = sign_character(&FiniteGroup::cyclic(4).unwrap()).unwrap();
        assert_eq!(z4.map(), &[0, 1, 0, 1]);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let chi = sign_character(&s3).unwrap();
        // Parity of the permutations in lexicographic order.
        assert_eq!(chi.map(), &[0, 1, 1, 0, 0, 1]);
    }

    #[test]
    fn battery_is_complete() {
        let b = battery();
        // 6 groups x 5 coefficients x 3 actions, minus sign actions of Z/3.
        assert_eq!(b.len(), 6 * 5 * 3 - 5);
        assert!(b.iter().any(|c| c.module.action == ActionKind::Natural && c.group == GroupSpec::Dihedral(4)));
    }

    #[test]
    fn sequence_presets() {
        let ses = ses_preset("z3-z6-z2", &GroupSpec::Cyclic(2)).unwrap();
        assert!(ses.is_symmetric() && ses.is_compatible());
        let err = ses_preset("z2-z4-z2", &GroupSpec::Cyclic(2)).unwrap_err();
        assert!(err.is_refused_hypothesis());
        assert!(ses_preset("nope", &GroupSpec::Trivial).is_err());
    }
}
