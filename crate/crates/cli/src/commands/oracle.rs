use anyhow::Result;
use rayon::prelude::*;
use serde::Serialize;
use symcoh::cochain::{cohomology, oracle_cohomology};
use symcoh::io::{GroupRef, JsonInt, ModuleRef};
use symcoh::Int;

use super::{prefix, variants, Report};
use crate::args::CohomArgs;
use crate::{input, table};

#[derive(Serialize)]
struct OracleJson {
    variant: String,
    degree: usize,
    invariant_factors: Vec<u64>,
    order: u64,
    cocycles: usize,
    coboundaries: usize,
    snf_invariant_factors: Vec<JsonInt>,
    agree: bool,
}

#[derive(Serialize)]
struct OracleReport {
    group: GroupRef,
    module: ModuleRef,
    results: Vec<OracleJson>,
}

pub fn run(args: &CohomArgs) -> Result<Report> {
    let group = input::group_ref(&args.group)?;
    let module_ref = input::module_ref(&args.module)?;
    let module = input::module(&args.group, &args.module)?;
    let results = variants(args.variant)
        .par_iter()
        .map(|&v| -> Result<OracleJson> {
            let o = oracle_cohomology(&module, args.degree, v)?;
            let h = cohomology(&module, args.degree, v);
            let snf = h.group().invariant_factors();
            let agree = h.group().free_rank() == 0
                && snf == o.invariant_factors.iter().map(|&d| Int::from(d)).collect::<Vec<_>>();
            Ok(OracleJson {
                variant: v.name().into(),
                degree: args.degree,
                invariant_factors: o.invariant_factors,
                order: o.order,
                cocycles: o.cocycles.len(),
                coboundaries: o.coboundaries,
                snf_invariant_factors: snf.into_iter().map(JsonInt).collect(),
                agree,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = table::Table::new(&["group", "oracle", "order", "cocycles", "coboundaries", "snf", "agree"]);
    let list = |v: Vec<String>| format!("[{}]", v.join(", "));
    for r in &results {
        let v = if r.variant == "ordinary" {
            symcoh::cochain::Variant::Ordinary
        } else {
            symcoh::cochain::Variant::Symmetric
        };
        t.row(vec![
            format!("{}^{}", prefix(v), r.degree),
            list(r.invariant_factors.iter().map(u64::to_string).collect()),
            r.order.to_string(),
            r.cocycles.to_string(),
            r.coboundaries.to_string(),
            list(r.snf_invariant_factors.iter().map(|d| d.0.to_string()).collect()),
            r.agree.to_string(),
        ]);
    }
    let report = OracleReport { group, module: module_ref, results };
    Ok(Report::new(&report, t.render()))
}
