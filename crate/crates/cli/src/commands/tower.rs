use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;
use symcoh::cochain::Variant;
use symcoh::io::{ColimitJson, TowerJson};
use symcoh::presets::{GroupSpec, ModuleSpec};
use symcoh::profinite::{Tower, TowerSpec};

use super::{prefix, variants, Report};
use crate::args::TowerArgs;
use crate::{input, table};

#[derive(Serialize)]
struct DegreeJson {
    degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    ordinary: Option<ColimitJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    symmetric: Option<ColimitJson>,
}

#[derive(Serialize)]
struct TowerReport {
    tower: String,
    levels: Vec<usize>,
    degrees: Vec<DegreeJson>,
}

fn builtin_spec(arg: &str, levels: usize) -> Result<TowerSpec> {
    match arg.parse::<TowerSpec>() {
        Ok(spec) => Ok(spec),
        Err(first) => match format!("{arg}:{levels}").parse::<TowerSpec>() {
            Ok(spec) => Ok(spec),
            Err(_) => Err(first.into()),
        },
    }
}

fn load(args: &TowerArgs) -> Result<(String, Tower)> {
    let module = || args.module.parse::<ModuleSpec>();
    match (&args.tower, &args.group) {
        (Some(t), None) => match input::file_text(t)? {
            Some(text) => Ok(("file".into(), symcoh::io::from_json::<TowerJson>(&text)?.build()?)),
            None => {
                let spec = builtin_spec(t, args.levels)?;
                Ok((spec.to_string(), Tower::builtin(&spec, &module()?)?))
            }
        },
        (None, Some(g)) => {
            let spec = TowerSpec::Constant { group: g.parse::<GroupSpec>()?, levels: args.levels };
            Ok((spec.to_string(), Tower::builtin(&spec, &module()?)?))
        }
        _ => bail!("give exactly one of --tower and --group"),
    }
}

pub fn run(args: &TowerArgs) -> Result<Report> {
    let (name, tower) = load(args)?;
    let vs = variants(args.variant);
    let jobs: Vec<(usize, Variant)> = (0..=args.degree).flat_map(|n| vs.iter().map(move |&v| (n, v))).collect();
    let reports =
        jobs.par_iter().map(|&(n, v)| tower.limit_cohomology(n, v, args.window)).collect::<symcoh::Result<Vec<_>>>()?;
    let mut t = table::Table::new(&["group", "levels", "maps", "status", "limit"]);
    for ((n, v), r) in jobs.iter().zip(&reports) {
        let maps: Vec<&str> = r
            .levels
            .iter()
            .filter_map(|l| l.map_is_isomorphism)
            .map(|iso| if iso { "iso" } else { "not iso" })
            .collect();
        let limit = match &r.status {
            symcoh::abelian::ColimitStatus::Stabilized(g) => g.to_string(),
            symcoh::abelian::ColimitStatus::NotStabilized if r.all_images_trivial() => "all images vanish".into(),
            symcoh::abelian::ColimitStatus::NotStabilized => "-".into(),
        };
        let status = if r.is_stabilized() { "STABILIZED" } else { "NOT-STABILIZED" };
        t.row(vec![
            format!("{}^{n}", prefix(*v)),
            r.levels.iter().map(|l| l.group.to_string()).collect::<Vec<_>>().join(" -> "),
            maps.join(", "),
            status.into(),
            limit,
        ]);
    }
    let mut degrees = Vec::new();
    for n in 0..=args.degree {
        let find = |v: Variant| jobs.iter().position(|&j| j == (n, v)).map(|k| ColimitJson::from_report(&reports[k]));
        degrees.push(DegreeJson { degree: n, ordinary: find(Variant::Ordinary), symmetric: find(Variant::Symmetric) });
    }
    let levels = (0..tower.depth()).map(|k| tower.level(k).order()).collect();
    let report = TowerReport { tower: name, levels, degrees };
    Ok(Report::new(&report, t.render()))
}
