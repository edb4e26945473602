//! Empirical spectra against an analytic one-point density, compared cell by
//! cell as expected eigenvalue counts per sample.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{elliptic_density, EnsembleSpec, Family, SpectralSample};
use crate::correlations::{finite_beta2, r_k_beta2};
use crate::finite_kernels::WeightSpec;
use crate::specfun::gauss_legendre;
use crate::{Beta, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reference {
    /// R₁ from the finite-N β=2 kernel.
    FiniteKernel,
    EllipticLaw,
    Semicircle,
    MarchenkoPastur,
}

impl Reference {
    pub fn name(self) -> &'static str {
        match self {
            Reference::FiniteKernel => "finite_kernel",
            Reference::EllipticLaw => "elliptic_law",
            Reference::Semicircle => "semicircle",
            Reference::MarchenkoPastur => "marchenko_pastur",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "finite_kernel" | "finite" => Ok(Reference::FiniteKernel),
            "elliptic_law" | "elliptic" => Ok(Reference::EllipticLaw),
            "semicircle" => Ok(Reference::Semicircle),
            "marchenko_pastur" | "mp" => Ok(Reference::MarchenkoPastur),
            _ => Err(Error::InvalidParameter(format!("unknown reference density '{s}'"))),
        }
    }

    /// The finite kernel for β=2 non-Hermitian ensembles, the macroscopic law otherwise.
    pub fn default_for(spec: &EnsembleSpec) -> Result<Self> {
        match (spec.family, spec.beta) {
            (Family::WignerDyson, _) => Ok(Reference::Semicircle),
            (Family::WishartLaguerre, _) => Ok(Reference::MarchenkoPastur),
            (Family::Ginibre | Family::ChiralNonhermitian, Beta::Two) => Ok(Reference::FiniteKernel),
            (Family::Ginibre, _) => Ok(Reference::EllipticLaw),
            (Family::ChiralNonhermitian, _) => {
                Err(Error::Unsupported(format!("no reference density for β = {} chiral spectra", spec.beta)))
            }
        }
    }

    fn check(self, spec: &EnsembleSpec) -> Result<()> {
        let ok = match self {
            Reference::FiniteKernel => spec.beta == Beta::Two && !matches!(spec.family, Family::WignerDyson | Family::WishartLaguerre),
            Reference::EllipticLaw => spec.family == Family::Ginibre,
            Reference::Semicircle => spec.family == Family::WignerDyson,
            Reference::MarchenkoPastur => spec.family == Family::WishartLaguerre && spec.nu == 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("reference {} for β = {} {} (ν = {})", self.name(), spec.beta, spec.family, spec.nu)))
        }
    }

    fn planar(self) -> bool {
        matches!(self, Reference::FiniteKernel | Reference::EllipticLaw)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub lo: Complex64,
    pub hi: Complex64,
    /// Mean eigenvalue count per sample.
    pub observed: f64,
    pub expected: f64,
}

impl Cell {
    fn measure(&self, planar: bool) -> f64 {
        let d = self.hi - self.lo;
        if planar { d.re * d.im } else { d.re }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityComparison {
    pub reference: Reference,
    pub n: usize,
    pub samples: usize,
    /// Eigenvalues are multiplied by this before binning.
    pub scale: f64,
    pub cells: Vec<Cell>,
    pub outside_observed: f64,
    pub outside_expected: f64,
    /// Σ |observed − expected| over cells and the outside region.
    pub l1: f64,
    /// Largest density deviation over cells.
    pub sup: f64,
    /// Largest relative deviation of the mean density from the flat elliptic
    /// value over eight sectors of the ellipse scaled by 0.8 (β=2 Ginibre only).
    pub plateau: Option<f64>,
}

impl DensityComparison {
    pub fn l1_relative(&self) -> f64 {
        self.l1 / self.n as f64
    }

    pub fn passed(&self, tol: f64, plateau_tol: f64) -> bool {
        self.l1_relative() <= tol && self.plateau.is_none_or(|p| p <= plateau_tol)
    }
}

/// Cumulative semicircle count up to x for element variance `v`.
fn semicircle_cdf(x: f64, n: usize, v: f64) -> f64 {
    let r = 2.0 * (n as f64 * v).sqrt();
    let phi = (x / r).clamp(-1.0, 1.0).asin();
    n as f64 / PI * (phi + (2.0 * phi).sin() / 2.0 + PI / 2.0)
}

fn marchenko_pastur_cdf(x: f64, n: usize) -> f64 {
    let theta = (x / (4.0 * n as f64)).clamp(0.0, 1.0).sqrt().asin();
    2.0 * n as f64 / PI * (theta + (2.0 * theta).sin() / 2.0)
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let pad = 0.01 * (hi - lo).max(1.0);
    (lo - pad, hi + pad)
}

fn bin(v: f64, lo: f64, h: f64, n: usize) -> Option<usize> {
    let k = ((v - lo) / h).floor();
    (k >= 0.0 && (k as usize) < n).then_some(k as usize)
}

/// Compares `samples` (all drawn from one spec) with `reference` on `nx × ny`
/// cells spanning the observed spectrum; `ny` is ignored for real spectra.
pub fn compare_density(samples: &[SpectralSample], reference: Reference, nx: usize, ny: usize) -> Result<DensityComparison> {
    let first = samples.first().ok_or_else(|| Error::InvalidParameter("density comparison needs at least one sample".into()))?;
    let spec = first.spec;
    if samples.iter().any(|s| s.spec != spec) {
        return Err(Error::InvalidParameter("samples come from different ensembles".into()));
    }
    reference.check(&spec)?;
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidParameter("need at least one cell per axis".into()));
    }
    let n = spec.n;
    let count = samples.len() as f64;
    let scale = if spec.family == Family::ChiralNonhermitian { 1.0 + spec.tau } else { 1.0 };
    let eigs: Vec<Complex64> = samples.iter().flat_map(|s| s.eigenvalues.iter().map(|z| z * scale)).collect();
    let planar = reference.planar();
    let ny = if planar { ny } else { 1 };
    let (xlo, xhi) = bounds(eigs.iter().map(|z| z.re));
    let (ylo, yhi) = if planar { bounds(eigs.iter().map(|z| z.im)) } else { (0.0, 0.0) };
    let (hx, hy) = ((xhi - xlo) / nx as f64, (yhi - ylo) / ny as f64);

    let mut counts = vec![0.0; nx * ny];
    let mut outside = 0.0;
    for z in &eigs {
        let iy = if planar { bin(z.im, ylo, hy, ny) } else { Some(0) };
        match (bin(z.re, xlo, hx, nx), iy) {
            (Some(i), Some(j)) => counts[j * nx + i] += 1.0,
            _ => outside += 1.0,
        }
    }

    let rule = gauss_legendre(if reference == Reference::EllipticLaw { 24 } else { 8 })?;
    let density: Box<dyn Fn(Complex64) -> Result<f64> + Sync> = match reference {
        Reference::FiniteKernel => {
            let ws = match spec.family {
                Family::Ginibre => WeightSpec::ginibre(Beta::Two, spec.tau),
                _ => WeightSpec::chiral(Beta::Two, spec.tau, spec.nu),
            };
            let k = finite_beta2(ws, n);
            Box::new(move |z| r_k_beta2(&k, &[z]))
        }
        _ => Box::new(move |z| Ok(elliptic_density(z, n, spec.tau))),
    };
    // the self-dual sampler has E|H_ij|² = ½ in the complex representation
    let v = if spec.beta == Beta::Four { 0.5 } else { 1.0 };
    let cell_lo = |i: usize, j: usize| Complex64::new(xlo + i as f64 * hx, ylo + j as f64 * hy);
    let expected: Vec<f64> = (0..nx * ny)
        .into_par_iter()
        .map(|idx| {
            let lo = cell_lo(idx % nx, idx / nx);
            match reference {
                Reference::Semicircle => Ok(semicircle_cdf(lo.re + hx, n, v) - semicircle_cdf(lo.re, n, v)),
                Reference::MarchenkoPastur => Ok(marchenko_pastur_cdf(lo.re + hx, n) - marchenko_pastur_cdf(lo.re, n)),
                _ => {
                    let mut s = 0.0;
                    for (&u, &wu) in rule.nodes.iter().zip(&rule.weights) {
                        for (&v, &wv) in rule.nodes.iter().zip(&rule.weights) {
                            s += wu * wv * density(lo + Complex64::new(u * hx, v * hy))?;
                        }
                    }
                    Ok(s * hx * hy)
                }
            }
        })
        .collect::<Result<_>>()?;

    let cells: Vec<Cell> = (0..nx * ny)
        .map(|idx| {
            let lo = cell_lo(idx % nx, idx / nx);
            Cell { lo, hi: lo + Complex64::new(hx, hy), observed: counts[idx] / count, expected: expected[idx] }
        })
        .collect();
    let outside_observed = outside / count;
    let outside_expected = (n as f64 - expected.iter().sum::<f64>()).max(0.0);
    let l1 = cells.iter().map(|c| (c.observed - c.expected).abs()).sum::<f64>() + (outside_observed - outside_expected).abs();
    let sup = cells.iter().map(|c| (c.observed - c.expected).abs() / c.measure(planar)).fold(0.0, f64::max);
    let plateau = (spec.family == Family::Ginibre && spec.beta == Beta::Two).then(|| elliptic_plateau(&eigs, n, spec.tau, count));
    Ok(DensityComparison {
        reference,
        n,
        samples: samples.len(),
        scale,
        cells,
        outside_observed,
        outside_expected,
        l1,
        sup,
        plateau,
    })
}

/// Two equal-area elliptic shells times four quadrants inside the 0.8-scaled ellipse.
fn elliptic_plateau(eigs: &[Complex64], n: usize, tau: f64, samples: f64) -> f64 {
    let s = (n as f64).sqrt();
    let (a, b) = ((1.0 + tau) * s, (1.0 - tau) * s);
    let r2 = 0.8f64.powi(2);
    let mut counts = [0.0; 8];
    for z in eigs {
        let u2 = (z.re / a).powi(2) + (z.im / b).powi(2);
        if u2 < r2 {
            let shell = usize::from(u2 >= r2 / 2.0);
            let quadrant = usize::from(z.re < 0.0) + 2 * usize::from(z.im < 0.0);
            counts[shell * 4 + quadrant] += 1.0;
        }
    }
    let area = PI * a * b * r2 / 8.0;
    let flat = 1.0 / (PI * (1.0 - tau * tau));
    counts.iter().map(|c| (c / (area * samples) / flat - 1.0).abs()).fold(0.0, f64::max)
}
