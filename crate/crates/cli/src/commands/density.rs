use clap::Args;
use rmt_kernels::ensembles::{compare_density, sample_spectra, Reference};
use serde::Serialize;
use serde_json::json;

use super::sample::EnsembleArgs;
use crate::output::{config_error, num, re_im, CmdResult, Report, Table};

#[derive(Debug, Clone, Args, Serialize)]
pub struct DensityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub ensemble: EnsembleArgs,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// finite_kernel, elliptic_law, semicircle or marchenko_pastur; default by ensemble
    #[arg(long)]
    pub reference: Option<String>,
    /// Cells along the real axis
    #[arg(long, default_value_t = 8)]
    pub nx: usize,
    /// Cells along the imaginary axis (planar references)
    #[arg(long, default_value_t = 4)]
    pub ny: usize,
    /// Bound on L¹ discrepancy / N; default 0.05 for the finite kernel and
    /// semicircle, 0.1 for the other laws
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub plateau_tolerance: f64,
}

fn default_tolerance(r: Reference) -> f64 {
    match r {
        Reference::FiniteKernel | Reference::Semicircle => 0.05,
        Reference::EllipticLaw | Reference::MarchenkoPastur => 0.1,
    }
}

pub fn run(a: &DensityArgs) -> CmdResult {
    let spec = a.ensemble.spec()?;
    if a.samples == 0 {
        return Err(config_error("--samples must be positive"));
    }
    let reference = match &a.reference {
        Some(r) => Reference::parse(r)?,
        None => Reference::default_for(&spec)?,
    };
    let tol = a.tolerance.unwrap_or_else(|| default_tolerance(reference));
    let samples = sample_spectra(&spec, a.ensemble.seed, a.samples)?;
    let cmp = compare_density(&samples, reference, a.nx, a.ny)?;

    let mut table = Table::new(&["re_lo", "im_lo", "re_hi", "im_hi", "observed", "expected"]);
    for c in &cmp.cells {
        let [a, b] = re_im(c.lo);
        let [d, e] = re_im(c.hi);
        table.push([a, b, d, e, num(c.observed), num(c.expected)]);
    }
    let (csv, rows) = table.finish();
    let passed = cmp.passed(tol, a.plateau_tolerance);
    let metrics = json!({
        "reference": reference.name(),
        "l1": cmp.l1,
        "l1_relative": cmp.l1_relative(),
        "sup": cmp.sup,
        "plateau": cmp.plateau,
        "outside_observed": cmp.outside_observed,
        "outside_expected": cmp.outside_expected,
        "eigenvalue_scale": cmp.scale,
        "tolerance": tol,
        "plateau_tolerance": a.plateau_tolerance,
        "passed": passed,
    });
    let mut lines = vec![format!(
        "{} vs {} samples: L1/N = {:.4} (tolerance {tol}), sup = {:.4e}",
        reference.name(),
        cmp.samples,
        cmp.l1_relative(),
        cmp.sup
    )];
    if let Some(p) = cmp.plateau {
        lines.push(format!("elliptic plateau deviation {p:.4} (tolerance {})", a.plateau_tolerance));
    }
    Ok(Report { passed, metrics: metrics.as_object().cloned().unwrap_or_default(), csv, rows, lines })
}
