use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;
use symcoh::functorial::long_exact_sequence;
use symcoh::io::{hom_rows, AbelianJson, JsonInt, SesJson};
use symcoh::presets::{ses_preset, GroupSpec};

use super::{variants, Report};
use crate::args::LesArgs;
use crate::{input, table};

#[derive(Serialize)]
struct NodeJson {
    label: String,
    group: AbelianJson,
    exact: Option<bool>,
}

#[derive(Serialize)]
struct SequenceJson {
    variant: String,
    exact: bool,
    nodes: Vec<NodeJson>,
    maps: Vec<Vec<Vec<JsonInt>>>,
}

#[derive(Serialize)]
struct LesReport {
    source: String,
    sequences: Vec<SequenceJson>,
}

pub fn run(args: &LesArgs) -> Result<Report> {
    let (source, ses) = match (&args.ses, &args.preset) {
        (Some(path), None) => ("file".to_string(), input::read_json::<SesJson>(path)?.build()?),
        (None, Some(name)) => {
            let g: GroupSpec = args.group.parse()?;
            (format!("{name} over {g}"), ses_preset(name, &g)?)
        }
        _ => bail!("give exactly one of --ses and --preset"),
    };
    let sequences = variants(args.variant)
        .par_iter()
        .map(|&v| -> Result<SequenceJson> {
            let les = long_exact_sequence(&ses, args.degree, v)?;
            Ok(SequenceJson {
                variant: v.name().into(),
                exact: les.is_exact(),
                nodes: les
                    .nodes
                    .iter()
                    .zip(&les.exact)
                    .map(|(n, e)| NodeJson {
                        label: n.label.clone(),
                        group: AbelianJson::from_group(&n.group),
                        exact: *e,
                    })
                    .collect(),
                maps: les.maps.iter().map(hom_rows).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut text = String::new();
    for s in &sequences {
        let mut t = table::Table::new(&["node", "group", "exact"]);
        for n in &s.nodes {
            let g = symcoh::FgAbelianGroup::new(n.group.free_rank, &symcoh::io::unwrap(&n.group.invariant_factors))?;
            t.row(vec![n.label.clone(), g.to_string(), n.exact.map_or("-".into(), |e| e.to_string())]);
        }
        text.push_str(&format!("{} sequence: {}\n", s.variant, if s.exact { "exact" } else { "NOT exact" }));
        text.push_str(&t.render());
        text.push('\n');
    }
    Ok(Report::new(&LesReport { source, sequences }, text))
}
