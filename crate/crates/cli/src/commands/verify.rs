use clap::Args;
use rmt_kernels::finite_kernels::{orthogonality_matrix, skew_inner_products, QuadControls, WeightFamily, WeightSpec};
use rmt_kernels::Beta;
use serde::Serialize;
use serde_json::json;

use super::beta;
use crate::output::{config_error, num, re_im, CmdResult, Report, Table};

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// orthogonality (β=2) or skew-orthogonality (β=1,4)
    #[arg(long)]
    pub what: String,
    #[arg(long)]
    pub beta: u32,
    /// ginibre or chiral
    #[arg(long, default_value = "ginibre")]
    pub family: String,
    #[arg(long, default_value_t = 0.0)]
    pub tau: f64,
    #[arg(long, default_value_t = 0)]
    pub nu: usize,
    /// Highest polynomial degree
    #[arg(long, default_value_t = 5)]
    pub kmax: usize,
    /// Bound on the normalized residuals; default 1e-6 (orthogonality) or 1e-5 (skew)
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Relative accuracy target of the planar quadrature
    #[arg(long, default_value_t = 1e-10)]
    pub quad_tol: f64,
}

pub fn run(a: &VerifyArgs) -> CmdResult {
    let family = match a.family.as_str() {
        "ginibre" => WeightFamily::Ginibre,
        "chiral" | "chiral_nonhermitian" => WeightFamily::Chiral,
        f => return Err(config_error(format!("--family must be ginibre or chiral, got '{f}'"))),
    };
    let spec = WeightSpec::new(beta(a.beta)?, family, a.tau, a.nu)?;
    let skew = match a.what.as_str() {
        "orthogonality" => false,
        "skew-orthogonality" | "skew_orthogonality" | "skew" => true,
        w => return Err(config_error(format!("--what must be orthogonality or skew-orthogonality, got '{w}'"))),
    };
    if skew == (spec.beta == Beta::Two) {
        return Err(config_error(format!("{} does not apply to β = {}", a.what, a.beta)));
    }
    if !(a.quad_tol > 0.0) {
        return Err(config_error("--quad-tol must be positive"));
    }
    let tol = a.tolerance.unwrap_or(if skew { 1e-5 } else { 1e-6 });
    let controls = QuadControls { tol: a.quad_tol, ..Default::default() };
    // skew pairs (2j, 2j+1) need an odd top degree
    let kmax = if skew { a.kmax | 1 } else { a.kmax };
    let m = if skew { skew_inner_products(&spec, kmax, &controls)? } else { orthogonality_matrix(&spec, kmax, &controls)? };
    let s = &m.values;
    let scale = |k: usize| if skew { s[2 * (k / 2)][2 * (k / 2) + 1].norm() } else { s[k][k].re };

    let mut table = Table::new(&["k", "l", "value_re", "value_im", "residual", "expect_zero"]);
    let (mut max_residual, mut min_norm) = (0.0f64, f64::INFINITY);
    for k in 0..=kmax {
        for l in 0..=kmax {
            let expect_zero = if skew { k / 2 != l / 2 || k == l } else { k != l };
            let residual = s[k][l].norm() / (scale(k) * scale(l)).sqrt();
            if expect_zero {
                max_residual = max_residual.max(residual);
            } else {
                min_norm = min_norm.min(s[k][l].norm());
            }
            let [re, im] = re_im(s[k][l]);
            table.push([k.to_string(), l.to_string(), re, im, num(residual), expect_zero.to_string()]);
        }
    }
    let (csv, rows) = table.finish();
    let passed = max_residual <= tol && min_norm > 0.0;
    let metrics = json!({
        "what": if skew { "skew-orthogonality" } else { "orthogonality" },
        "kmax": kmax,
        "max_residual": max_residual,
        "min_norm": min_norm,
        "radius": m.radius,
        "boundary_estimate": m.boundary,
        "tolerance": tol,
        "passed": passed,
    });
    let lines = vec![format!(
        "{} up to degree {kmax}: max residual {max_residual:.3e} (tolerance {tol:e}), truncation radius {:.2}",
        a.what, m.radius
    )];
    Ok(Report { passed, metrics: metrics.as_object().cloned().unwrap_or_default(), csv, rows, lines })
}
