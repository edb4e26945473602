use clap::Args;
use rmt_kernels::limiting_kernels::{hermitian_limit_regular_part, Element, KernelFamily, KernelPoint, RegularPart};
use rmt_kernels::Complex64;
use serde::Serialize;
use serde_json::json;

use super::{beta, parse_list};
use crate::output::{config_error, num, re_im, CmdResult, Report, Table};

#[derive(Debug, Clone, Args, Serialize)]
pub struct HermitianArgs {
    /// airy, sine or bessel
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub beta: u32,
    /// K, W, G_real or G_com
    #[arg(long, default_value = "K")]
    pub element: String,
    #[arg(long, default_value_t = 0)]
    pub nu: usize,
    #[arg(long, default_value_t = 0.7)]
    pub x1: f64,
    #[arg(long, default_value_t = 1.3)]
    pub x2: f64,
    /// Comma-separated σ values, evaluated from largest to smallest
    #[arg(long, default_value = "1e-1,1e-2,1e-3")]
    pub sigmas: String,
    /// Bound on the deviation at the smallest σ (relative unless the reference is 0)
    #[arg(long)]
    pub tolerance: Option<f64>,
}

pub fn run(a: &HermitianArgs) -> CmdResult {
    let family = KernelFamily::parse(&a.family)?;
    let element = Element::parse(&a.element)?;
    let b = beta(a.beta)?;
    let mut sigmas = parse_list::<f64>(&a.sigmas, "sigma")?;
    if sigmas.iter().any(|s| !(*s > 0.0)) {
        return Err(config_error("sigma values must be positive"));
    }
    sigmas.sort_by(|x, y| y.total_cmp(x));
    sigmas.dedup();
    let parts: Vec<RegularPart> = sigmas
        .iter()
        .map(|&s| {
            let p = KernelPoint::complex(family, b, element, s, Complex64::new(a.x1, 0.0), Complex64::new(a.x2, 0.0)).with_nu(a.nu);
            hermitian_limit_regular_part(&p)
        })
        .collect::<Result<_, _>>()?;

    let mut table = Table::new(&[
        "sigma",
        "regular_re",
        "regular_im",
        "reference_re",
        "reference_im",
        "deviation",
        "relative_deviation",
    ]);
    for (s, p) in sigmas.iter().zip(&parts) {
        let row: Vec<String> = std::iter::once(num(*s))
            .chain(re_im(p.regular))
            .chain(re_im(p.reference))
            .chain([num(p.deviation()), num(p.relative_deviation())])
            .collect();
        table.push(row);
    }
    let (csv, rows) = table.finish();
    let shrinking = parts.windows(2).all(|w| w[1].deviation() < w[0].deviation());
    let last = parts.last().map_or(f64::NAN, |p| p.relative_deviation());
    let passed = shrinking && a.tolerance.is_none_or(|t| last <= t);
    let metrics = json!({
        "shrinking": shrinking,
        "final_relative_deviation": last,
        "tolerance": a.tolerance,
        "passed": passed,
    });
    let mut lines = vec![format!("{family} β={} {element} at ({}, {})", a.beta, a.x1, a.x2)];
    for (s, p) in sigmas.iter().zip(&parts) {
        lines.push(format!("  σ={s:<8e} deviation {:.4e} (relative {:.4e})", p.deviation(), p.relative_deviation()));
    }
    Ok(Report { passed, metrics: metrics.as_object().cloned().unwrap_or_default(), csv, rows, lines })
}
