use anyhow::Result;
use serde::Serialize;

use super::Report;
use crate::{input, table};

#[derive(Serialize)]
struct GroupReport {
    order: usize,
    abelian: bool,
    labels: Vec<String>,
    element_orders: Vec<usize>,
    inverses: Vec<usize>,
    table: Vec<Vec<usize>>,
}

pub fn run(arg: &str) -> Result<Report> {
    let g = input::group(arg)?;
    let report = GroupReport {
        order: g.order(),
        abelian: g.is_abelian(),
        labels: g.elements().map(|x| g.label(x)).collect(),
        element_orders: g.elements().map(|x| g.element_order(x)).collect(),
        inverses: g.inverses().to_vec(),
        table: g.table().to_vec(),
    };
    let mut text = table::fields(&[("order", report.order.to_string()), ("abelian", report.abelian.to_string())]);
    let mut t = table::Table::new(&["element", "label", "order", "inverse"]);
    for x in g.elements() {
        t.row(vec![
            x.to_string(),
            report.labels[x].clone(),
            report.element_orders[x].to_string(),
            report.inverses[x].to_string(),
        ]);
    }
    text.push('\n');
    text.push_str(&t.render());
    Ok(Report::new(&report, text))
}
