use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::rng::stream;
use super::sample::{sample_chiral_pair_with, sample_ginibre_with, sample_hermitian_with, sample_wishart_with};
use super::{EnsembleSpec, Family};
use crate::linalg::{self, CMatrix};
use crate::{Beta, Error, Result};

pub const DEFAULT_REAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct SpectralSample {
    pub eigenvalues: Vec<Complex64>,
    /// Which eigenvalues are real: classified for β=1 non-Hermitian spectra,
    /// all true for Hermitian families, all false otherwise.
    pub real_mask: Vec<bool>,
    pub seed: u64,
    pub sample_index: u64,
    pub spec: EnsembleSpec,
}

impl SpectralSample {
    pub fn real_count(&self) -> usize {
        self.real_mask.iter().filter(|&&r| r).count()
    }
}

/// All eigenvalues of a general square complex matrix (balanced QR).
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    if m.rows > 2048 {
        return Err(Error::InvalidParameter(format!("matrix dimension {} exceeds 2048", m.rows)));
    }
    linalg::eigenvalues(m)
}

/// Eigenvalues of the product W·V.
pub fn product_spectrum(w: &CMatrix, v: &CMatrix) -> Result<Vec<Complex64>> {
    if w.cols != v.rows || w.rows != v.cols {
        return Err(Error::InvalidParameter(format!(
            "non-conformable pair {}x{} and {}x{}",
            w.rows, w.cols, v.rows, v.cols
        )));
    }
    eigenvalues(&w.matmul(v)?)
}

/// Marks eigenvalues with |Im z| ≤ tol·(spectral radius) as real and checks that
/// the rest pair up under conjugation (greedy nearest-conjugate matching).
pub fn classify_real(eigs: &[Complex64], tol: f64) -> Result<Vec<bool>> {
    let scale = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mask: Vec<bool> = eigs.iter().map(|z| z.im.abs() <= tol * scale).collect();
    let upper: Vec<usize> = (0..eigs.len()).filter(|&i| !mask[i] && eigs[i].im > 0.0).collect();
    let mut lower: Vec<usize> = (0..eigs.len()).filter(|&i| !mask[i] && eigs[i].im < 0.0).collect();
    // a conjugate partner must agree far better than the distance to the real axis
    let pair_tol = tol.sqrt() * scale;
    for &i in &upper {
        let target = eigs[i].conj();
        let best = lower
            .iter()
            .enumerate()
            .min_by(|a, b| (eigs[*a.1] - target).norm().total_cmp(&(eigs[*b.1] - target).norm()));
        match best {
            Some((pos, &j)) if (eigs[j] - target).norm() <= pair_tol => {
                lower.swap_remove(pos);
            }
            _ => return Err(Error::Pairing(i)),
        }
    }
    if let Some(&j) = lower.first() {
        return Err(Error::Pairing(j));
    }
    Ok(mask)
}

fn spectrum_of(spec: &EnsembleSpec, rng: &mut super::rng::StreamRng) -> Result<Vec<Complex64>> {
    let hermitian = |m: &CMatrix| -> Result<Vec<Complex64>> {
        Ok(linalg::hermitian_eigenvalues(m)?.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
    };
    match spec.family {
        Family::WignerDyson => hermitian(&sample_hermitian_with(spec, rng)?),
        Family::Ginibre => eigenvalues(&sample_ginibre_with(spec, rng)?),
        Family::WishartLaguerre => {
            let w = sample_wishart_with(spec, rng)?;
            hermitian(&w.matmul(&w.adjoint())?)
        }
        Family::ChiralNonhermitian => {
            let (w, v) = sample_chiral_pair_with(spec, rng)?;
            product_spectrum(&w, &v)
        }
    }
}

/// One spectrum drawn from stream `index` of `seed`.
pub fn sample_spectrum(spec: &EnsembleSpec, seed: u64, index: u64) -> Result<SpectralSample> {
    spec.validate()?;
    let mut rng = stream(seed, index);
    let eigenvalues = spectrum_of(spec, &mut rng)?;
    let real_mask = match (spec.family, spec.beta) {
        (Family::WignerDyson | Family::WishartLaguerre, _) => vec![true; eigenvalues.len()],
        (_, Beta::One) => classify_real(&eigenvalues, DEFAULT_REAL_TOL)?,
        _ => vec![false; eigenvalues.len()],
    };
    Ok(SpectralSample { eigenvalues, real_mask, seed, sample_index: index, spec: *spec })
}

/// `count` spectra on independent streams 0..count, computed in parallel.
pub fn sample_spectra(spec: &EnsembleSpec, seed: u64, count: usize) -> Result<Vec<SpectralSample>> {
    (0..count as u64).into_par_iter().map(|k| sample_spectrum(spec, seed, k)).collect()
}

/// One CSV row per eigenvalue.
pub fn write_samples_csv<W: Write>(out: &mut W, samples: &[SpectralSample]) -> std::io::Result<()> {
    writeln!(out, "sample_index,re,im,is_real,beta,family,n,tau,nu,seed")?;
    for s in samples {
        for (z, r) in s.eigenvalues.iter().zip(&s.real_mask) {
            writeln!(
                out,
                "{},{:?},{:?},{},{},{},{},{:?},{},{}",
                s.sample_index, z.re, z.im, r, s.spec.beta, s.spec.family, s.spec.n, s.spec.tau, s.spec.nu, s.seed
            )?;
        }
    }
    Ok(())
}
