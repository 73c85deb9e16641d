mod cohom;
mod ext;
mod group;
mod les;
mod oracle;
mod tower;

use anyhow::Result;
use serde::Serialize;
use symcoh::cochain::Variant;
use symcoh::io::{to_json, JsonInt};
use symcoh::{FgAbelianGroup, Int};

use crate::args::{Command, VariantArg};

/// Rendered output of a command in both formats.
pub struct Report {
    json: String,
    table: String,
}

impl Report {
    pub fn new<T: Serialize>(value: &T, table: String) -> Self {
        Report { json: to_json(value), table }
    }

    pub fn json(&self) -> &str {
        &self.json
    }

    pub fn table(&self) -> &str {
        &self.table
    }
}

pub fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Group { group } => group::run(group),
        Command::Cohom(args) => cohom::run(args),
        Command::Ext { action } => ext::run(action),
        Command::Tower(args) => tower::run(args),
        Command::Les(args) => les::run(args),
        Command::Oracle(args) => oracle::run(args),
    }
}

fn variants(v: VariantArg) -> Vec<Variant> {
    match v {
        VariantArg::Ordinary => vec![Variant::Ordinary],
        VariantArg::Symmetric => vec![Variant::Symmetric],
        VariantArg::Both => vec![Variant::Ordinary, Variant::Symmetric],
    }
}

fn prefix(v: Variant) -> &'static str {
    match v {
        Variant::Ordinary => "H",
        Variant::Symmetric => "HS",
    }
}

fn vector(v: &[Int]) -> String {
    format!("({})", v.iter().map(Int::to_string).collect::<Vec<_>>().join(", "))
}

fn rows_text(rows: &[Vec<JsonInt>]) -> String {
    let rows: Vec<String> =
        rows.iter().map(|r| r.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

/// `[H : sub]` when both are finite.
fn index(whole: &FgAbelianGroup, sub: &FgAbelianGroup) -> Option<Int> {
    Some(whole.order()? / sub.order()?)
}
