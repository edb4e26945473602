use clap::Args;
use rmt_kernels::scaling_limits::{convergence_study, MicroGrid, Observable, RegimeKind, ScalingRegime};
use rmt_kernels::Beta;
use serde::Serialize;
use serde_json::json;

use super::{beta, parse_axis, parse_list};
use crate::output::{config_error, num, CmdResult, Report, Table};

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConvergeArgs {
    /// soft_edge, bulk or hard_edge
    #[arg(long)]
    pub regime: String,
    #[arg(long)]
    pub beta: u32,
    /// kernel (β=2 only), density or pair_correlation; default kernel for β=2, density otherwise
    #[arg(long)]
    pub observable: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0)]
    pub nu: usize,
    /// Bulk center x₀ (|x₀| < 2)
    #[arg(long, default_value_t = 0.0)]
    pub center: f64,
    /// Comma-separated increasing matrix sizes; default depends on the regime
    #[arg(long)]
    pub n: Option<String>,
    /// Micro grid X axis as lo:hi:count
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Micro grid Y axis as lo:hi:count
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// strict (every step decreases), trend (last below first) or none
    #[arg(long, default_value = "strict")]
    pub require: String,
    /// Bound on the final relative deviation
    #[arg(long)]
    pub tolerance: Option<f64>,
}

pub fn run(a: &ConvergeArgs) -> CmdResult {
    let kind = RegimeKind::parse(&a.regime)?;
    let b = beta(a.beta)?;
    let observable = match &a.observable {
        Some(o) => Observable::parse(o)?,
        None if b == Beta::Two => Observable::Kernel,
        None => Observable::Density,
    };
    let ns = match &a.n {
        Some(s) => parse_list::<usize>(s, "N")?,
        None => kind.default_ns(),
    };
    let first = *ns.first().ok_or_else(|| config_error("empty N list"))?;
    let template = ScalingRegime::new(kind, first, a.sigma)?.with_nu(a.nu)?.with_center(a.center)?;
    let mut grid = MicroGrid::default_for(kind);
    if let Some(x) = &a.x {
        let (lo, hi, n) = parse_axis(x)?;
        grid.x = (lo, hi);
        grid.nx = n;
    }
    if let Some(y) = &a.y {
        let (lo, hi, n) = parse_axis(y)?;
        grid.y = (lo, hi);
        grid.ny = n;
    }
    let table = convergence_study(&template, b, observable, &grid, &ns)?;

    let monotone = match a.require.as_str() {
        "strict" => table.strictly_decreasing(),
        "trend" => table.decreasing_trend(),
        "none" => true,
        r => return Err(config_error(format!("--require must be strict, trend or none, got '{r}'"))),
    };
    let within = a.tolerance.is_none_or(|t| table.final_relative() <= t);
    let passed = monotone && within;

    let mut out = Table::new(&["n", "tau", "sup_dev", "relative"]);
    let mut lines = vec![format!("{} β={} {} on {}", kind, a.beta, observable.name(), table.grid)];
    for r in &table.rows {
        out.push([r.n.to_string(), num(r.tau), num(r.sup_dev), num(r.relative)]);
        lines.push(format!("  N={:<6} τ={:.6}  sup={:.4e}  rel={:.4e}", r.n, r.tau, r.sup_dev, r.relative));
    }
    let (csv, rows) = out.finish();
    let metrics = json!({
        "regime": kind.name(),
        "observable": observable.name(),
        "grid": table.grid,
        "strictly_decreasing": table.strictly_decreasing(),
        "decreasing_trend": table.decreasing_trend(),
        "final_relative": table.final_relative(),
        "tolerance": a.tolerance,
        "passed": passed,
    });
    Ok(Report { passed, metrics: metrics.as_object().cloned().unwrap_or_default(), csv, rows, lines })
}
