use clap::Args;
use rayon::prelude::*;
use rmt_kernels::grid::GridResult;
use rmt_kernels::limiting_kernels::{evaluate, Domain, Element, KernelFamily, KernelPoint, KernelValue};
use rmt_kernels::Complex64;
use serde::Serialize;
use serde_json::json;

use super::{beta, parse_axis};
use crate::output::{config_error, num, re_im, CmdResult, Failure, Report, Table};

#[derive(Debug, Clone, Args, Serialize)]
pub struct KernelArgs {
    /// airy, sine or bessel
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub beta: u32,
    /// K, G, W, G_real or G_com
    #[arg(long, default_value = "K")]
    pub element: String,
    /// real or complex
    #[arg(long, default_value = "complex")]
    pub domain: String,
    /// Deformation σ (complex domain)
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0)]
    pub nu: usize,
    /// Real parts of z₁ as lo:hi:count
    #[arg(long, default_value = "-2:2:9", allow_hyphen_values = true)]
    pub re: String,
    /// Imaginary parts of z₁ as lo:hi:count
    #[arg(long, default_value = "0:0:1", allow_hyphen_values = true)]
    pub im: String,
    /// diagonal (z₂ = z₁), conjugate (z₂ = z₁*) or a fixed point "re,im"
    #[arg(long, default_value = "diagonal", allow_hyphen_values = true)]
    pub z2: String,
}

#[derive(Debug, Clone, Copy)]
enum Partner {
    Diagonal,
    Conjugate,
    Fixed(Complex64),
}

fn parse_partner(s: &str) -> Result<Partner, Failure> {
    match s {
        "diagonal" => Ok(Partner::Diagonal),
        "conjugate" => Ok(Partner::Conjugate),
        _ => {
            let v = super::parse_list::<f64>(s, "z2")?;
            match v.as_slice() {
                [x] => Ok(Partner::Fixed(Complex64::new(*x, 0.0))),
                [x, y] => Ok(Partner::Fixed(Complex64::new(*x, *y))),
                _ => Err(config_error(format!("--z2 takes diagonal, conjugate or re,im; got '{s}'"))),
            }
        }
    }
}

fn domain(s: &str) -> Result<Domain, Failure> {
    match s {
        "real" | "real_line" | "real-line" => Ok(Domain::RealLine),
        "complex" | "complex_plane" | "complex-plane" => Ok(Domain::ComplexPlane),
        _ => Err(config_error(format!("--domain must be real or complex, got '{s}'"))),
    }
}

/// The evaluation grid shared with callers that reproduce the dump.
pub fn grid_points(re: &str, im: &str) -> Result<Vec<Complex64>, Failure> {
    let (a, b, n) = parse_axis(re)?;
    let (c, d, m) = parse_axis(im)?;
    Ok(GridResult::linspace(a, b, n, c, d, m).points().collect())
}

pub fn run(a: &KernelArgs) -> CmdResult {
    let family = KernelFamily::parse(&a.family)?;
    let element = Element::parse(&a.element)?;
    let dom = domain(&a.domain)?;
    let partner = parse_partner(&a.z2)?;
    let base = match dom {
        Domain::RealLine => KernelPoint::real(family, beta(a.beta)?, element, 0.0, 0.0),
        Domain::ComplexPlane => {
            let zero = Complex64::new(0.0, 0.0);
            KernelPoint::complex(family, beta(a.beta)?, element, a.sigma, zero, zero)
        }
    }
    .with_nu(a.nu);
    base.validate()?;
    let points: Vec<KernelPoint> = grid_points(&a.re, &a.im)?
        .into_iter()
        .map(|z1| {
            let z2 = match partner {
                Partner::Diagonal => z1,
                Partner::Conjugate => z1.conj(),
                Partner::Fixed(z) => z,
            };
            base.with_args(z1, z2)
        })
        .collect();
    let values: Vec<KernelValue> = points.par_iter().map(evaluate).collect::<Result<_, _>>()?;

    let mut table = Table::new(&[
        "z1_re", "z1_im", "z2_re", "z2_im", "value_re", "value_im", "smooth_re", "smooth_im", "real_delta_re",
        "real_delta_im", "conj_delta_re", "conj_delta_im",
    ]);
    let mut max_abs: f64 = 0.0;
    for (p, v) in points.iter().zip(&values) {
        let value = v.value();
        max_abs = max_abs.max(value.norm());
        let opt = |c: Option<Complex64>| c.map_or([String::new(), String::new()], re_im);
        let row: Vec<String> = [re_im(p.z1), re_im(p.z2), re_im(value), re_im(v.smooth), opt(v.real_delta()), opt(v.conjugate_delta())]
            .into_iter()
            .flatten()
            .collect();
        table.push(row);
    }
    let (csv, rows) = table.finish();
    let metrics = json!({ "points": rows, "max_abs_value": max_abs });
    let lines = vec![format!("{family} β={} {element}: {rows} points, max |value| = {}", a.beta, num(max_abs))];
    Ok(Report { passed: true, metrics: metrics.as_object().cloned().unwrap_or_default(), csv, rows, lines })
}
