use clap::Args;
use rmt_kernels::specfun::selftest;
use serde::Serialize;
use serde_json::json;

use crate::output::{num, CmdResult, Report, Table};

#[derive(Debug, Clone, Args, Serialize)]
pub struct SelftestArgs {}

pub fn run(_: &SelftestArgs) -> CmdResult {
    let cases = selftest::run()?;
    let mut table = Table::new(&["name", "value", "reference", "residual", "tolerance", "passed"]);
    let mut lines = Vec::new();
    for c in &cases {
        table.push([c.name.to_string(), num(c.value), num(c.reference), num(c.residual), num(c.tolerance), c.passed().to_string()]);
        lines.push(format!("{:<40} residual {:.3e}  (≤ {:e}) {}", c.name, c.residual, c.tolerance, if c.passed() { "ok" } else { "FAIL" }));
    }
    let (csv, rows) = table.finish();
    let failures: Vec<&str> = cases.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
    let max_residual = cases.iter().map(|c| c.residual).fold(0.0, f64::max);
    let metrics = json!({ "cases": cases.len(), "max_residual": max_residual, "failures": failures });
    Ok(Report { passed: failures.is_empty(), metrics: metrics.as_object().cloned().unwrap_or_default(), csv, rows, lines })
}
