//! Monte Carlo expectations of characteristic polynomials, used to
//! cross-check the polynomials and kernels against their matrix-integral forms.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::ensembles::rng::stream;
use crate::ensembles::{sample_chiral_pair_with, sample_ginibre_with, sample_hermitian_with, sample_wishart_with};
use crate::ensembles::{EnsembleSpec, Family};
use crate::linalg::{determinant, CMatrix};
use crate::{Beta, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: Complex64,
    /// Standard error of the mean (from the sample variance of |x - mean|).
    pub stderr: f64,
}

impl McEstimate {
    fn from_samples(xs: impl Iterator<Item = Complex64> + Clone) -> Self {
        let n = xs.clone().count() as f64;
        let mean = xs.clone().sum::<Complex64>() / n;
        let var = xs.map(|x| (x - mean).norm_sqr()).sum::<f64>() / (n - 1.0).max(1.0);
        Self { mean, stderr: (var / n).sqrt() }
    }

    fn exact(mean: Complex64) -> Self {
        Self { mean, stderr: 0.0 }
    }

    /// |mean - value| in units of the standard error.
    pub fn deviation(&self, value: Complex64) -> f64 {
        let d = (self.mean - value).norm();
        if self.stderr > 0.0 {
            d / self.stderr
        } else if d <= 1e-12 * value.norm().max(1.0) {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Debug, Clone)]
pub struct CharpolyEstimates {
    /// ⟨det(z - J)⟩ at each point.
    pub det: Vec<McEstimate>,
    /// ⟨det(z - J)(z + Tr J)⟩ at each point.
    pub det_trace: Vec<McEstimate>,
    /// ⟨det(u - J) det(v - J†)⟩ for each pair.
    pub det_pair: Vec<McEstimate>,
    pub n_samples: usize,
}

/// The matrix whose characteristic polynomial is averaged: H, J, WW† or (1+τ)WV.
///
/// The chiral product carries the factor (1+τ) because the chiral weight and
/// its Laguerre polynomials describe (1+τ)WV for (W, V) drawn from the
/// two-matrix density as parametrized by the samplers.
pub fn charpoly_matrix(spec: &EnsembleSpec, seed: u64, index: u64) -> Result<CMatrix> {
    let mut rng = stream(seed, index);
    match spec.family {
        Family::WignerDyson => sample_hermitian_with(spec, &mut rng),
        Family::Ginibre => sample_ginibre_with(spec, &mut rng),
        Family::WishartLaguerre => {
            let w = sample_wishart_with(spec, &mut rng)?;
            w.matmul(&w.adjoint())
        }
        Family::ChiralNonhermitian => {
            let (w, v) = sample_chiral_pair_with(spec, &mut rng)?;
            let mut p = w.matmul(&v)?;
            for x in p.data.iter_mut() {
                *x *= 1.0 + spec.tau;
            }
            Ok(p)
        }
    }
}

fn shifted_det(z: Complex64, m: &CMatrix) -> Result<Complex64> {
    let s = CMatrix::from_fn(m.rows, m.cols, |i, j| if i == j { z - m[(i, j)] } else { -m[(i, j)] });
    determinant(&s)
}

/// Monte Carlo estimates at matrix size `n` (β=4: size of the complex representation).
/// Sample i uses the random stream (seed, i); n = 0 gives the empty-determinant value 1.
pub fn charpoly_expectation_mc(
    spec: &EnsembleSpec,
    n: usize,
    points: &[Complex64],
    pairs: &[(Complex64, Complex64)],
    n_samples: usize,
    seed: u64,
) -> Result<CharpolyEstimates> {
    if n == 0 {
        let one = McEstimate::exact(Complex64::new(1.0, 0.0));
        return Ok(CharpolyEstimates {
            det: vec![one; points.len()],
            det_trace: points.iter().map(|&z| McEstimate::exact(z)).collect(),
            det_pair: vec![one; pairs.len()],
            n_samples: 0,
        });
    }
    if spec.beta == Beta::Four && n % 2 == 1 {
        return Err(Error::InvalidParameter("β = 4 needs an even complex dimension".into()));
    }
    if n_samples < 2 {
        return Err(Error::InvalidParameter("need at least two samples".into()));
    }
    let sized = EnsembleSpec { n, ..*spec };
    let rows: Vec<Vec<Complex64>> = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let j = charpoly_matrix(&sized, seed, i)?;
            let jd = j.adjoint();
            let tr = j.trace();
            let mut row = Vec::with_capacity(2 * points.len() + pairs.len());
            for &z in points {
                let d = shifted_det(z, &j)?;
                row.push(d);
                row.push(d * (z + tr));
            }
            for &(u, v) in pairs {
                row.push(shifted_det(u, &j)? * shifted_det(v, &jd)?);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let column = |c: usize| McEstimate::from_samples(rows.iter().map(move |r| r[c]));
    let np = points.len();
    Ok(CharpolyEstimates {
        det: (0..np).map(|p| column(2 * p)).collect(),
        det_trace: (0..np).map(|p| column(2 * p + 1)).collect(),
        det_pair: (0..pairs.len()).map(|p| column(2 * np + p)).collect(),
        n_samples,
    })
}
