//! The table of published values, recomputed.

use particover_core::parse_spec;

use crate::compute::{compute, ComputeOptions};
use crate::record::Quantity;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedRow {
    pub spec: &'static str,
    pub sigma: Option<u128>,
    pub rho: Option<u128>,
}

const fn row(spec: &'static str, sigma: Option<u128>, rho: Option<u128>) -> PublishedRow {
    PublishedRow { spec, sigma, rho }
}

pub const PUBLISHED_ROWS: &[PublishedRow] = &[
    row("C2^2", Some(3), Some(3)),
    row("C2^3", Some(3), Some(5)),
    row("C2^4", Some(3), Some(5)),
    row("C3^2", Some(4), Some(4)),
    row("C3^3", Some(4), Some(10)),
    row("C3^4", Some(4), Some(10)),
    row("C5^2", Some(6), Some(6)),
    row("S4", Some(4), Some(10)),
    row("PGL2(3)", Some(4), Some(10)),
    row("PSL2(4)", Some(10), Some(17)),
    row("PSL2(5)", Some(10), Some(17)),
    row("PSL2(7)", Some(15), Some(50)),
    row("PSL2(8)", Some(36), Some(65)),
    row("PSL2(9)", Some(16), Some(82)),
    row("PSL2(11)", Some(67), Some(122)),
    row("PGL2(5)", Some(16), Some(26)),
    row("PGL2(7)", Some(29), Some(50)),
    row("AGL1(5,4)", None, Some(6)),
    row("AGL1(7,3)", None, Some(8)),
    row("D12", None, Some(7)),
    row("D30", None, Some(16)),
    row("Sz(8)", Some(2080), None),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Interval,
    Untested,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Interval => "INTERVAL",
            Status::Untested => "-",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub expected: Option<u128>,
    pub computed: Quantity,
    pub source: Option<String>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub spec: String,
    pub sigma: Cell,
    pub rho: Cell,
    pub problems: Vec<String>,
}

impl TableRow {
    pub fn failed(&self) -> bool {
        self.sigma.status == Status::Fail || self.rho.status == Status::Fail
    }
}

fn cell(expected: Option<u128>, computed: Quantity, source: Option<String>, consistent: bool) -> Cell {
    let status = match (expected, computed) {
        _ if !consistent => Status::Fail,
        (Some(e), Quantity::Value(v)) => {
            if e == v {
                Status::Pass
            } else {
                Status::Fail
            }
        }
        (Some(e), q @ Quantity::Interval(..)) => {
            if q.admits(e) {
                Status::Interval
            } else {
                Status::Fail
            }
        }
        (Some(_), _) => Status::Fail,
        (None, Quantity::Interval(..)) => Status::Interval,
        (None, _) => Status::Untested,
    };
    Cell { expected, computed, source, status }
}

pub fn evaluate(r: &PublishedRow, budget_seconds: f64) -> TableRow {
    let opts = ComputeOptions { budget_seconds, ..ComputeOptions::default() };
    let spec = parse_spec(r.spec).expect("table specs parse");
    match compute(&spec, &opts) {
        Ok(c) => {
            let ok = c.report.mismatches.is_empty();
            TableRow {
                spec: r.spec.to_string(),
                sigma: cell(r.sigma, c.record.sigma, c.record.sigma_source.clone(), ok),
                rho: cell(r.rho, c.record.rho, c.record.rho_source.clone(), ok),
                problems: c.report.mismatches,
            }
        }
        Err(e) => TableRow {
            spec: r.spec.to_string(),
            sigma: cell(r.sigma, Quantity::Unknown, None, false),
            rho: cell(r.rho, Quantity::Unknown, None, false),
            problems: vec![e.to_string()],
        },
    }
}

pub fn render(rows: &[TableRow]) -> String {
    let show = |e: Option<u128>| e.map_or("-".to_string(), |v| v.to_string());
    let mut out = format!(
        "{:<11} {:>6} {:>12} {:<19} {:<8} {:>6} {:>12} {:<19} {:<8}\n",
        "group", "σ exp", "σ", "source", "status", "ρ exp", "ρ", "source", "status"
    );
    for r in rows {
        let src = |s: &Option<String>| s.clone().unwrap_or_else(|| "-".into());
        out += &format!(
            "{:<11} {:>6} {:>12} {:<19} {:<8} {:>6} {:>12} {:<19} {:<8}\n",
            r.spec,
            show(r.sigma.expected),
            r.sigma.computed.to_string(),
            src(&r.sigma.source),
            r.sigma.status.tag(),
            show(r.rho.expected),
            r.rho.computed.to_string(),
            src(&r.rho.source),
            r.rho.status.tag(),
        );
        for p in &r.problems {
            out += &format!("    {p}\n");
        }
    }
    out
}
