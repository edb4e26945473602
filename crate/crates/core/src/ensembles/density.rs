use std::f64::consts::PI;

use num_complex::Complex64;

use super::SpectralSample;
use crate::grid::GridResult;
use crate::{Error, Result};

/// One-point density on `grid` estimated from `samples`, normalized so that its
/// integral over ℂ is the mean eigenvalue count per sample. Without a bandwidth
/// the grid nodes are taken as centres of histogram cells; with one, a
/// Gaussian kernel density estimate of that width is used.
pub fn empirical_density(samples: &[SpectralSample], grid: &GridResult, bandwidth: Option<f64>) -> Result<GridResult> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter("empirical density needs at least one sample".into()));
    }
    let mut out = grid.clone();
    let count = samples.len() as f64;
    match bandwidth {
        None => {
            let (nr, ni) = (grid.re.len(), grid.im.len());
            let step = |a: &[f64]| if a.len() > 1 { a[1] - a[0] } else { f64::INFINITY };
            let (hr, hi) = (step(&grid.re), step(&grid.im));
            let mut counts = vec![0.0; nr * ni];
            for z in samples.iter().flat_map(|s| &s.eigenvalues) {
                let ir = ((z.re - (grid.re[0] - hr / 2.0)) / hr).floor();
                let ii = if ni == 1 { 0.0 } else { ((z.im - (grid.im[0] - hi / 2.0)) / hi).floor() };
                if ir >= 0.0 && (ir as usize) < nr && ii >= 0.0 && (ii as usize) < ni {
                    counts[ii as usize * nr + ir as usize] += 1.0;
                }
            }
            let area = grid.cell_area();
            out.values = counts.iter().map(|c| Complex64::new(c / (area * count), 0.0)).collect();
        }
        Some(h) => {
            if !(h > 0.0) {
                return Err(Error::InvalidParameter(format!("bandwidth must be positive, got {h}")));
            }
            let norm = 1.0 / (2.0 * PI * h * h * count);
            let eigs: Vec<Complex64> = samples.iter().flat_map(|s| s.eigenvalues.iter().copied()).collect();
            out.fill(|p| {
                let s: f64 = eigs.iter().map(|z| (-(z - p).norm_sqr() / (2.0 * h * h)).exp()).sum();
                Complex64::new(s * norm, 0.0)
            });
        }
    }
    Ok(out.with("estimator", if bandwidth.is_some() { "gaussian_kde" } else { "histogram" }))
}

/// Histogram of real values with `bins` cells on [lo, hi], per sample and unit length.
pub fn real_histogram(values: impl IntoIterator<Item = f64>, lo: f64, hi: f64, bins: usize, samples: usize) -> GridResult {
    let mut g = GridResult::cells(lo, hi, bins, 0.0, 0.0, 1);
    g.im = vec![0.0];
    let h = (hi - lo) / bins as f64;
    let mut counts = vec![0.0; bins];
    for x in values {
        let k = ((x - lo) / h).floor();
        if k >= 0.0 && (k as usize) < bins {
            counts[k as usize] += 1.0;
        }
    }
    g.values = counts.iter().map(|c| Complex64::new(c / (h * samples as f64), 0.0)).collect();
    g
}

/// Eigenvalue count density of an n×n Hermitian ensemble with E|H_ij|² = 1:
/// √(4n − x²)/(2π).
pub fn semicircle_density(x: f64, n: usize) -> f64 {
    let r2 = 4.0 * n as f64;
    if x * x >= r2 { 0.0 } else { (r2 - x * x).sqrt() / (2.0 * PI) }
}

/// Flat elliptic law: 1/(π(1−τ²)) inside the ellipse with half-axes (1±τ)√n.
pub fn elliptic_density(z: Complex64, n: usize, tau: f64) -> f64 {
    let s = (n as f64).sqrt();
    let (a, b) = ((1.0 + tau) * s, (1.0 - tau) * s);
    if (z.re / a).powi(2) + (z.im / b).powi(2) <= 1.0 {
        1.0 / (PI * (1.0 - tau * tau))
    } else {
        0.0
    }
}

/// Marchenko-Pastur count density of WW† for square W with unit-variance entries:
/// √((4n − x)/x)/(2π) on (0, 4n].
pub fn marchenko_pastur_density(x: f64, n: usize) -> f64 {
    let top = 4.0 * n as f64;
    if x <= 0.0 || x >= top { 0.0 } else { ((top - x) / x).sqrt() / (2.0 * PI) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_spectra, EnsembleSpec, Family};
    use crate::Beta;

    #[test]
    fn analytic_laws_integrate_to_n() {
        let n = 50;
        let m = 200_000;
        let h = 4.0 * (n as f64).sqrt() / m as f64;
        let sc: f64 = (0..m).map(|k| semicircle_density(-2.0 * (n as f64).sqrt() + (k as f64 + 0.5) * h, n) * h).sum();
        assert!((sc - n as f64).abs() < 1e-3);
        let h = 4.0 * n as f64 / m as f64;
        let mp: f64 = (0..m).map(|k| marchenko_pastur_density((k as f64 + 0.5) * h, n) * h).sum();
        assert!((mp - n as f64).abs() < 0.05);
    }

    #[test]
    fn ginue_disc_is_flat() {
        let spec = EnsembleSpec::new(Beta::Two, Family::Ginibre, 400, 0.0, 0).unwrap();
        let samples = sample_spectra(&spec, 10, 50).unwrap();
        let r = 0.8 * 20.0;
        let grid = GridResult::cells(-r, r, 8, -r, r, 8);
        let d = empirical_density(&samples, &grid, None).unwrap();
        for (z, v) in d.points().zip(&d.values) {
            if z.norm() + grid.cell_area().sqrt() < r {
                assert!((v.re * PI - 1.0).abs() < 0.1, "density {} at {z}", v.re);
            }
        }
    }

    #[test]
    fn elliptic_law_holds_outside_fraction() {
        let spec = EnsembleSpec::new(Beta::Two, Family::Ginibre, 400, 0.5, 0).unwrap();
        let samples = sample_spectra(&spec, 3, 4).unwrap();
        let outside = samples
            .iter()
            .flat_map(|s| &s.eigenvalues)
            .filter(|&&z| elliptic_density(z / 1.05, 400, 0.5) == 0.0)
            .count();
        assert!((outside as f64) < 0.01 * 1600.0);
    }
}
