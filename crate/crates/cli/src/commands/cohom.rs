use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;
use symcoh::cochain::{cohomology, Comparison, Variant};
use symcoh::io::{hom_rows, AbelianJson, CohomologyJson, GroupRef, JsonInt, ModuleRef};

use super::{index, prefix, rows_text, variants, Report};
use crate::args::CohomArgs;
use crate::{input, table};

#[derive(Serialize)]
pub struct HstarJson {
    pub injective: bool,
    pub kernel: AbelianJson,
    pub image: AbelianJson,
    pub image_index: Option<JsonInt>,
    pub map: Vec<Vec<JsonInt>>,
}

#[derive(Serialize)]
struct DegreeJson {
    degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    ordinary: Option<CohomologyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    symmetric: Option<CohomologyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hstar: Option<HstarJson>,
}

#[derive(Serialize)]
struct CohomReport {
    group: GroupRef,
    module: ModuleRef,
    degrees: Vec<DegreeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hstar_injective: Option<bool>,
}

fn hstar_json(c: &Comparison) -> HstarJson {
    HstarJson {
        injective: c.is_injective(),
        kernel: AbelianJson::from_group(&c.kernel.presented().canonical_form()),
        image: AbelianJson::from_group(&c.image.presented().canonical_form()),
        image_index: index(c.ordinary.group(), c.image.presented()).map(JsonInt),
        map: hom_rows(&c.map),
    }
}

pub fn run(args: &CohomArgs) -> Result<Report> {
    let group = input::group_ref(&args.group)?;
    let module_ref = input::module_ref(&args.module)?;
    let module = input::module(&args.group, &args.module)?;
    let vs = variants(args.variant);
    let jobs: Vec<(usize, Variant)> = (0..=args.degree).flat_map(|n| vs.iter().map(move |&v| (n, v))).collect();
    let groups: Vec<_> = jobs.par_iter().map(|&(n, v)| cohomology(&module, n, v)).collect();
    let mut degrees = Vec::new();
    let mut text_rows = Vec::new();
    for n in 0..=args.degree {
        let find = |v: Variant| jobs.iter().position(|&j| j == (n, v)).map(|k| groups[k].clone());
        let (ord, sym) = (find(Variant::Ordinary), find(Variant::Symmetric));
        let cmp = match (&ord, &sym) {
            (Some(o), Some(s)) => Some(Comparison::between(s.clone(), o.clone())?),
            _ => None,
        };
        let cell =
            |h: &Option<symcoh::cochain::CohomologyGroup>| h.as_ref().map_or("-".into(), |h| h.group().to_string());
        text_rows.push(vec![
            n.to_string(),
            cell(&ord),
            cell(&sym),
            cmp.as_ref().map_or("-".into(), |c| c.is_injective().to_string()),
            cmp.as_ref().map_or("-".into(), |c| c.image.presented().canonical_form().to_string()),
            cmp.as_ref()
                .and_then(|c| index(c.ordinary.group(), c.image.presented()))
                .map_or("-".into(), |i| i.to_string()),
        ]);
        degrees.push(DegreeJson {
            degree: n,
            ordinary: ord.as_ref().map(CohomologyJson::from_cohomology),
            symmetric: sym.as_ref().map(CohomologyJson::from_cohomology),
            hstar: cmp.as_ref().map(hstar_json),
        });
    }
    let hstar_injective = (args.variant == crate::args::VariantArg::Both)
        .then(|| degrees.iter().all(|d| d.hstar.as_ref().is_some_and(|h| h.injective)));
    let mut t = table::Table::new(&["degree", "H^n", "HS^n", "h* injective", "h* image", "index"]);
    for r in text_rows {
        t.row(r);
    }
    let mut text = t.render();
    if let Some(inj) = hstar_injective {
        let verdict = if inj { "injective" } else { "not injective" };
        text.push_str(&format!("\nh*: HS^n -> H^n is {verdict} for n <= {}\n", args.degree));
    }
    for d in &degrees {
        for (v, h) in [(Variant::Ordinary, &d.ordinary), (Variant::Symmetric, &d.symmetric)] {
            if let Some(h) = h {
                for (j, g) in h.generators.iter().enumerate() {
                    text.push_str(&format!("{}^{} generator {j}: {}\n", prefix(v), d.degree, rows_text(&g.values)));
                }
            }
        }
    }
    let report = CohomReport { group, module: module_ref, degrees, hstar_injective };
    Ok(Report::new(&report, text))
}
