//! Values tabulated on a rectangular grid in the complex plane.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

/// Rectangular grid: `re` × `im` axes, values stored row-major with the
/// imaginary coordinate as the slow index.
#[derive(Debug, Clone, Serialize)]
pub struct GridResult {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    pub values: Vec<Complex64>,
    /// Parameters and tolerances that produced the values.
    pub provenance: BTreeMap<String, String>,
}

impl GridResult {
    pub fn new(re: Vec<f64>, im: Vec<f64>) -> Self {
        let n = re.len() * im.len();
        Self { re, im, values: vec![Complex64::new(0.0, 0.0); n], provenance: BTreeMap::new() }
    }

    /// Grid with cell-centred nodes over [re_lo, re_hi] × [im_lo, im_hi].
    pub fn cells(re_lo: f64, re_hi: f64, n_re: usize, im_lo: f64, im_hi: f64, n_im: usize) -> Self {
        let axis = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
            let h = (hi - lo) / n as f64;
            (0..n).map(|i| lo + (i as f64 + 0.5) * h).collect()
        };
        Self::new(axis(re_lo, re_hi, n_re), axis(im_lo, im_hi, n_im))
    }

    /// Grid whose nodes include both end points.
    pub fn linspace(re_lo: f64, re_hi: f64, n_re: usize, im_lo: f64, im_hi: f64, n_im: usize) -> Self {
        let axis = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
            if n == 1 {
                return vec![lo];
            }
            (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
        };
        Self::new(axis(re_lo, re_hi, n_re), axis(im_lo, im_hi, n_im))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn point(&self, idx: usize) -> Complex64 {
        let nr = self.re.len();
        Complex64::new(self.re[idx % nr], self.im[idx / nr])
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// Area of one cell, assuming uniform spacing.
    pub fn cell_area(&self) -> f64 {
        let step = |a: &[f64]| if a.len() > 1 { a[1] - a[0] } else { 1.0 };
        step(&self.re) * step(&self.im)
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.provenance.insert(key.to_string(), value.to_string());
        self
    }

    pub fn fill(&mut self, f: impl Fn(Complex64) -> Complex64 + Sync) {
        use rayon::prelude::*;
        let pts: Vec<Complex64> = self.points().collect();
        self.values = pts.par_iter().map(|&z| f(z)).collect();
    }
}
