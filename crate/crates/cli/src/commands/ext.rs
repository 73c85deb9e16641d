use anyhow::{anyhow, Result};
use rayon::prelude::*;
use serde::Serialize;
use symcoh::cochain::{is_cocycle, is_symmetric, Cochain};
use symcoh::extension::{
    build_extension, class_in_symmetric_image, equivalent, extension_class, find_symmetric_section, normalize_cocycle,
    Carrier, ExtElement, Extension, Section,
};
use symcoh::io::{AbelianJson, CochainJson, ElementJson, ExtensionJson, JsonInt, SectionJson};
use symcoh::presets::extension_preset;
use symcoh::{FiniteGroup, Int};

use super::{rows_text, vector, Report};
use crate::args::{ExtAction, ExtSource};
use crate::{input, table};

struct Input {
    name: String,
    ext: Extension,
    section: Option<Section>,
}

fn load(source: &ExtSource, normalize: bool) -> Result<Vec<Input>> {
    let mut out = Vec::new();
    for name in &source.preset {
        let p = extension_preset(name)?;
        out.push(Input { name: p.name.into(), ext: p.extension, section: Some(p.section) });
    }
    for path in &source.extension {
        let ext = input::read_json::<ExtensionJson>(path)?.build()?;
        out.push(Input { name: path.clone(), ext, section: None });
    }
    if !source.cocycle.is_empty() {
        let (Some(g), Some(m)) = (&source.group, &source.module) else {
            return Err(anyhow!("--cocycle needs --group and --module"));
        };
        let module = input::module(g, m)?;
        for path in &source.cocycle {
            let mut sigma = input::read_json::<CochainJson>(path)?.build(&module)?;
            if normalize {
                sigma = normalize_cocycle(&module, &sigma)?.cocycle;
            }
            out.push(Input { name: path.clone(), ext: build_extension(&module, &sigma)?, section: None });
        }
    }
    if out.is_empty() {
        return Err(anyhow!("no extension given (use --preset, --extension or --cocycle)"));
    }
    Ok(out)
}

pub fn run(action: &ExtAction) -> Result<Report> {
    match action {
        ExtAction::Build { source, section, normalize } => build(source, section.as_deref(), *normalize),
        ExtAction::Section { source } => section(source),
        ExtAction::Classify { source } => classify(source),
    }
}

fn carrier_name(e: &Extension) -> &'static str {
    match e.carrier() {
        Carrier::Structured { .. } => "structured",
        Carrier::Table { .. } => "table",
        Carrier::Abelian { .. } => "abelian",
    }
}

fn element_text(x: &ExtElement) -> String {
    match x {
        ExtElement::Index(i) => format!("e{i}"),
        ExtElement::Pair(a, g) => format!("({}, {g})", vector(a).trim_matches(|c| c == '(' || c == ')')),
        ExtElement::Vector(v) => vector(v),
    }
}

fn section_lines(s: &Section) -> String {
    s.values().iter().enumerate().map(|(g, x)| format!("  s({g}) = {}\n", element_text(x))).collect()
}

#[derive(Serialize)]
struct Checks {
    section_normalized: bool,
    section_symmetric: bool,
    cocycle_identity: bool,
    cocycle_symmetric: bool,
    group_axioms: bool,
    conjugation_law: bool,
    round_trip: bool,
    equivalent_to_rebuilt: bool,
}

impl Checks {
    fn all(&self) -> bool {
        self.section_normalized
            && self.cocycle_identity
            && self.group_axioms
            && self.conjugation_law
            && self.round_trip
            && self.equivalent_to_rebuilt
            && self.section_symmetric == self.cocycle_symmetric
    }
}

#[derive(Serialize)]
struct BuildJson {
    name: String,
    carrier: &'static str,
    section: Vec<ElementJson>,
    cocycle: CochainJson,
    checks: Checks,
    verdict: &'static str,
}

/// Group axioms of a finite carrier by materializing its table; for infinite
/// carriers the cocycle identity of the extracted cocycle.
fn group_axioms(ext: &Extension, sigma: &Cochain) -> Result<bool> {
    if let Carrier::Abelian { .. } = ext.carrier() {
        return Ok(true);
    }
    match ext.to_table() {
        Ok(t) => {
            let Carrier::Table { group, .. } = t.carrier() else { unreachable!("to_table returns a table") };
            Ok(FiniteGroup::from_table(group.table().to_vec()).is_ok())
        }
        Err(symcoh::Error::TooLarge(_)) => Ok(is_cocycle(ext.base(), sigma)?),
        Err(e) => Err(e.into()),
    }
}

fn build_one(inp: &Input, override_section: Option<&SectionJson>) -> Result<BuildJson> {
    let ext = &inp.ext;
    let s = match override_section {
        Some(s) => s.build(ext)?,
        None => inp.section.clone().unwrap_or_else(|| ext.reference_section()),
    };
    let section_normalized = ext.is_normalized(&s);
    let sigma = ext.cocycle_from_section(&s)?;
    let base = ext.base();
    let rebuilt = build_extension(base, &sigma)?;
    let checks = Checks {
        section_normalized,
        section_symmetric: ext.is_symmetric(&s)?,
        cocycle_identity: is_cocycle(base, &sigma)?,
        cocycle_symmetric: is_symmetric(base, &sigma)?,
        group_axioms: group_axioms(ext, &sigma)?,
        conjugation_law: ext.conjugation_holds(&s)?,
        round_trip: rebuilt.cocycle_from_section(&rebuilt.reference_section())? == sigma,
        equivalent_to_rebuilt: equivalent(ext, &rebuilt)?,
    };
    let verdict = if checks.all() { "PASS" } else { "FAIL" };
    Ok(BuildJson {
        name: inp.name.clone(),
        carrier: carrier_name(ext),
        section: s.values().iter().map(ElementJson::from_element).collect(),
        cocycle: CochainJson::from_cochain(&sigma),
        checks,
        verdict,
    })
}

fn build(source: &ExtSource, section: Option<&str>, normalize: bool) -> Result<Report> {
    let inputs = load(source, normalize)?;
    let section = section.map(input::read_json::<SectionJson>).transpose()?;
    let results = inputs.par_iter().map(|i| build_one(i, section.as_ref())).collect::<Result<Vec<_>>>()?;
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!("{} ({} carrier): {}\n", r.name, r.carrier, r.verdict));
        let s = Section::new(r.section.iter().map(ElementJson::to_element).collect());
        text.push_str(&section_lines(&s));
        let checks = check_fields(&r.checks);
        text.push_str(&table::fields(&checks.iter().map(|(k, v)| (k.as_str(), v.clone())).collect::<Vec<_>>()));
        text.push_str(&format!("cocycle: {}\n\n", rows_text(&r.cocycle.values)));
    }
    Ok(Report::new(&results, text))
}

fn check_fields(c: &Checks) -> Vec<(String, String)> {
    [
        ("section_normalized", c.section_normalized),
        ("section_symmetric", c.section_symmetric),
        ("cocycle_identity", c.cocycle_identity),
        ("cocycle_symmetric", c.cocycle_symmetric),
        ("group_axioms", c.group_axioms),
        ("conjugation_law", c.conjugation_law),
        ("round_trip", c.round_trip),
        ("equivalent_to_rebuilt", c.equivalent_to_rebuilt),
    ]
    .iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

#[derive(Serialize)]
struct SectionReport {
    name: String,
    status: &'static str,
    section: Option<Vec<ElementJson>>,
}

fn section(source: &ExtSource) -> Result<Report> {
    let inputs = load(source, false)?;
    let results = inputs
        .par_iter()
        .map(|i| -> Result<SectionReport> {
            let found = find_symmetric_section(&i.ext)?;
            Ok(SectionReport {
                name: i.name.clone(),
                status: if found.is_some() { "FOUND" } else { "NONE" },
                section: found.map(|s| s.values().iter().map(ElementJson::from_element).collect()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!("{}: {}\n", r.name, r.status));
        if let Some(s) = &r.section {
            text.push_str(&section_lines(&Section::new(s.iter().map(ElementJson::to_element).collect())));
        }
    }
    Ok(Report::new(&results, text))
}

#[derive(Serialize)]
struct ClassJson {
    name: String,
    h2: AbelianJson,
    class: Vec<JsonInt>,
    in_symmetric_image: bool,
}

#[derive(Serialize)]
struct PairJson {
    first: String,
    second: String,
    verdict: &'static str,
}

#[derive(Serialize)]
struct ClassifyReport {
    classes: Vec<ClassJson>,
    comparisons: Vec<PairJson>,
}

fn classify(source: &ExtSource) -> Result<Report> {
    let inputs = load(source, false)?;
    let classes = inputs
        .par_iter()
        .map(|i| -> Result<ClassJson> {
            let (h, class) = extension_class(&i.ext)?;
            let sigma = i.ext.cocycle_from_section(&i.ext.reference_section())?;
            Ok(ClassJson {
                name: i.name.clone(),
                h2: AbelianJson::from_group(h.group()),
                class: class.into_iter().map(JsonInt).collect(),
                in_symmetric_image: class_in_symmetric_image(i.ext.base(), &sigma)?.is_some(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> =
        (0..inputs.len()).flat_map(|a| (a + 1..inputs.len()).map(move |b| (a, b))).collect();
    let comparisons = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<PairJson> {
            let same = equivalent(&inputs[a].ext, &inputs[b].ext)?;
            Ok(PairJson {
                first: inputs[a].name.clone(),
                second: inputs[b].name.clone(),
                verdict: if same { "EQUIVALENT" } else { "NOT-EQUIVALENT" },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = table::Table::new(&["extension", "H^2", "class", "in image of h*"]);
    for (c, i) in classes.iter().zip(&inputs) {
        let h = extension_class(&i.ext)?.0;
        let class: Vec<Int> = c.class.iter().map(|x| x.0.clone()).collect();
        t.row(vec![c.name.clone(), h.group().to_string(), vector(&class), c.in_symmetric_image.to_string()]);
    }
    let mut text = t.render();
    for p in &comparisons {
        text.push_str(&format!("{} vs {}: {}\n", p.first, p.second, p.verdict));
    }
    Ok(Report::new(&ClassifyReport { classes, comparisons }, text))
}
