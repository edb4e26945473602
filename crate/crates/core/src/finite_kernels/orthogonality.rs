//! Quadrature checks of orthogonality (β=2) and skew-orthogonality (β=1,4)
//! over a truncated plane, with the truncation radius grown until the rim
//! contribution is negligible.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use super::polynomials::{monic_ops, skew_ops};
use super::weights::{bivariate_weight, ln_weight, WeightFamily, WeightSpec};
use crate::specfun::{PanelRule, RuleKind};
use crate::{Beta, Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct QuadControls {
    /// Relative accuracy target; the rim estimate must stay below 0.01·tol.
    pub tol: f64,
    /// Gauss-Legendre points per panel.
    pub order: usize,
    /// Multiplies panel and angle counts.
    pub refine: f64,
    /// How many times the radius may grow by 1.5 before giving up.
    pub max_growth: usize,
    /// Starting radius; default (1+τ)√(2N) + 10.
    pub radius: Option<f64>,
}

impl Default for QuadControls {
    fn default() -> Self {
        Self { tol: 1e-10, order: 16, refine: 1.0, max_growth: 8, radius: None }
    }
}

/// Matrix of (skew) inner products for degrees 0..=kmax.
#[derive(Debug, Clone)]
pub struct InnerProducts {
    pub values: Vec<Vec<Complex64>>,
    pub radius: f64,
    /// Rim contribution estimate relative to the largest diagonal scale.
    pub boundary: f64,
}

impl InnerProducts {
    fn zeros(kmax: usize) -> Vec<Vec<Complex64>> {
        vec![vec![Complex64::new(0.0, 0.0); kmax + 1]; kmax + 1]
    }
}

fn default_radius(spec: &WeightSpec, kmax: usize) -> f64 {
    (1.0 + spec.tau) * (2.0 * (kmax + 1) as f64).sqrt() + 10.0
}

fn radial_rule(spec: &WeightSpec, radius: f64, c: &QuadControls) -> Result<PanelRule> {
    let width = ((0.75 * (1.0 - spec.tau).sqrt()).max(0.05) / c.refine).min(radius);
    let mut breaks = vec![0.0];
    if spec.family == WeightFamily::Chiral {
        // the chiral weight has a log or power singularity at the origin
        breaks.extend([1e-4, 1e-3, 1e-2, 0.1, 0.5].into_iter().filter(|&b| b < radius));
    }
    let start = *breaks.last().unwrap();
    let panels = ((radius - start) / width).ceil().max(1.0) as usize;
    breaks.extend((1..=panels).map(|i| start + (radius - start) * i as f64 / panels as f64));
    PanelRule::new(breaks, c.order, RuleKind::PlanarProduct)
}

/// Angular sample count resolving the weight's concentration along the real axis.
fn angle_count(spec: &WeightSpec, radius: f64, kmax: usize, c: &QuadControls) -> usize {
    let tau = spec.tau;
    let d = 1.0 - tau * tau;
    let peaks = match spec.family {
        WeightFamily::Ginibre => 10.0 * radius * (2.0 * tau / d).sqrt(),
        WeightFamily::Chiral => 10.0 * (2.0 * tau * radius / d).sqrt(),
    };
    ((64.0 + peaks + 4.0 * kmax as f64) * c.refine).ceil() as usize
}

/// Polar nodes (z, weight): full circle with the trapezoid rule in angle, or
/// the open upper half plane with Gauss-Legendre panels in angle.
fn polar_points(spec: &WeightSpec, radius: f64, kmax: usize, upper_half: bool, c: &QuadControls) -> Result<Vec<(Complex64, f64)>> {
    let radial = radial_rule(spec, radius, c)?;
    let n_ang = angle_count(spec, radius, kmax, c);
    let angular: Vec<(f64, f64)> = if upper_half {
        let panels = (n_ang / (2 * c.order)).max(2);
        let rule = PanelRule::uniform(0.0, PI, panels, c.order)?;
        rule.nodes().iter().copied().zip(rule.weights().iter().copied()).collect()
    } else {
        let h = 2.0 * PI / n_ang as f64;
        (0..n_ang).map(|a| (a as f64 * h, h)).collect()
    };
    let mut out = Vec::with_capacity(radial.nodes().len() * angular.len());
    for (&r, &wr) in radial.nodes().iter().zip(radial.weights()) {
        for &(phi, wphi) in &angular {
            out.push((Complex64::from_polar(r, phi), r * wr * wphi));
        }
    }
    Ok(out)
}

fn rim_points(radius: f64, n: usize) -> Vec<(Complex64, f64)> {
    let h = 2.0 * PI / n as f64;
    (0..n).map(|a| (Complex64::from_polar(radius, a as f64 * h), radius * h)).collect()
}

fn accumulate<F>(points: &[(Complex64, f64)], kmax: usize, f: F) -> Result<Vec<Vec<Complex64>>>
where
    F: Fn(Complex64, &mut Vec<Vec<Complex64>>, f64) -> Result<()> + Sync,
{
    points
        .par_chunks(256)
        .map(|chunk| {
            let mut acc = InnerProducts::zeros(kmax);
            for &(z, w) in chunk {
                f(z, &mut acc, w)?;
            }
            Ok(acc)
        })
        .try_reduce(
            || InnerProducts::zeros(kmax),
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(&b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                Ok(a)
            },
        )
}

fn diagonal_scale(values: &[Vec<Complex64>]) -> f64 {
    let mut m: f64 = 0.0;
    for (i, row) in values.iter().enumerate() {
        m = m.max(row[i].norm());
        if i + 1 < row.len() {
            m = m.max(row[i + 1].norm());
        }
    }
    m
}

/// Grows the radius until `eval(radius)` reports a negligible rim term.
fn with_growing_radius<F>(start: f64, c: &QuadControls, mut eval: F) -> Result<InnerProducts>
where
    F: FnMut(f64) -> Result<(Vec<Vec<Complex64>>, f64)>,
{
    let mut radius = start;
    let mut growth = 0;
    loop {
        let (values, rim) = eval(radius)?;
        let scale = diagonal_scale(&values);
        let boundary = if scale > 0.0 { rim / scale } else { rim };
        if boundary <= 0.01 * c.tol {
            return Ok(InnerProducts { values, radius, boundary });
        }
        if growth >= c.max_growth {
            return Err(Error::Truncation { estimate: boundary, limit: 0.01 * c.tol });
        }
        growth += 1;
        radius *= 1.5;
    }
}

fn ops_for(spec: &WeightSpec, kmax: usize, z: Complex64) -> Vec<Complex64> {
    monic_ops(spec.family, spec.nu, spec.tau, kmax, z)
}

/// ⟨P_k, P_l⟩ = ∫ d²z w(z) P_k(z) P_l(z)* for all k, l ≤ kmax (β=2 weights).
pub fn orthogonality_matrix(spec: &WeightSpec, kmax: usize, c: &QuadControls) -> Result<InnerProducts> {
    if spec.beta != Beta::Two {
        return Err(Error::InvalidParameter("orthogonality is checked for β = 2 weights".into()));
    }
    let start = c.radius.unwrap_or_else(|| default_radius(spec, kmax));
    with_growing_radius(start, c, |radius| {
        let pts = polar_points(spec, radius, kmax, false, c)?;
        let values = accumulate(&pts, kmax, |z, acc, wt| {
            let w = ln_weight(spec, z)?.exp() * wt;
            let p = ops_for(spec, kmax, z);
            for k in 0..=kmax {
                for l in 0..=kmax {
                    acc[k][l] += w * p[k] * p[l].conj();
                }
            }
            Ok(())
        })?;
        let mut rim = 0.0;
        for (z, ds) in rim_points(radius, angle_count(spec, radius, kmax, c)) {
            let w = ln_weight(spec, z)?.exp();
            let p = ops_for(spec, kmax, z);
            rim += ds * w * p.iter().map(|v| v.norm_sqr()).fold(0.0, f64::max);
        }
        Ok((values, rim))
    })
}

/// Returns (⟨P_k, P_l⟩, √(h_k h_l)), the second entry being h_k when k = l.
pub fn orthogonality_check(k: usize, l: usize, spec: &WeightSpec, c: &QuadControls) -> Result<(Complex64, f64)> {
    let m = orthogonality_matrix(spec, k.max(l), c)?;
    let norm = (m.values[k][k].re * m.values[l][l].re).sqrt();
    Ok((m.values[k][l], norm))
}

/// Skew products ⟨Q_a, Q_b⟩_s = ∫∫ F(z₁,z₂)(Q_a(z₁)Q_b(z₂) − Q_b(z₁)Q_a(z₂)) for a, b ≤ kmax,
/// with the delta parts of F integrated out analytically.
pub fn skew_inner_products(spec: &WeightSpec, kmax: usize, c: &QuadControls) -> Result<InnerProducts> {
    let bw = bivariate_weight(spec)?;
    skew_ops(spec, 0, Complex64::new(0.0, 0.0))?;
    let start = c.radius.unwrap_or_else(|| default_radius(spec, kmax));
    with_growing_radius(start, c, |radius| {
        // the integrand is even under z → z*, so integrate y > 0 and double
        let pts = polar_points(spec, radius, kmax, true, c)?;
        let mut values = accumulate(&pts, kmax, |z, acc, wt| {
            let cz = bw.conjugate(z)? * (2.0 * wt);
            let q = skew_ops(spec, kmax, z)?;
            let qc = skew_ops(spec, kmax, z.conj())?;
            for a in 0..=kmax {
                for b in 0..=kmax {
                    acc[a][b] += cz * (q[a] * qc[b] - q[b] * qc[a]);
                }
            }
            Ok(())
        })?;
        let mut rim = 0.0;
        for (z, ds) in rim_points(radius, angle_count(spec, radius, kmax, c)) {
            if z.im == 0.0 {
                continue;
            }
            let cz = bw.conjugate(z)?.norm();
            let q = skew_ops(spec, kmax, z)?;
            let qmax = q.iter().map(|v| v.norm()).fold(0.0, f64::max);
            rim += ds * cz * qmax * qmax;
        }
        if spec.beta == Beta::One {
            rim += add_real_line(&bw, spec, kmax, radius, c, &mut values)?;
        }
        Ok((values, rim))
    })
}

/// Adds 2∫∫ dx₁dx₂ sign(x₂−x₁) A_a(x₁) A_b(x₂) with A = f·Q over |x| ≤ radius, evaluated
/// with a running inner integral; returns the endpoint estimate.
fn add_real_line(
    bw: &super::weights::BivariateWeight,
    spec: &WeightSpec,
    kmax: usize,
    radius: f64,
    c: &QuadControls,
    values: &mut [Vec<Complex64>],
) -> Result<f64> {
    let panels = ((2.0 * radius / 0.5) * c.refine).ceil() as usize;
    let rule = PanelRule::uniform(-radius, radius, panels, c.order)?;
    let xs = rule.nodes();
    let mut series = vec![Vec::with_capacity(xs.len()); kmax + 1];
    for &x in xs {
        let f = bw.real_factor(x)?;
        let q = skew_ops(spec, kmax, Complex64::new(x, 0.0))?;
        for (s, v) in series.iter_mut().zip(&q) {
            s.push(v * f);
        }
    }
    let running: Vec<Vec<Complex64>> = series.iter().map(|s| rule.running_integral(s)).collect();
    let totals: Vec<Complex64> = series
        .iter()
        .map(|s| s.iter().zip(rule.weights()).map(|(v, &w)| v * w).sum())
        .collect();
    for a in 0..=kmax {
        for b in 0..=kmax {
            let inner: Complex64 = (0..xs.len())
                .map(|i| series[a][i] * (totals[b] - 2.0 * running[b][i]) * rule.weights()[i])
                .sum();
            values[a][b] += 2.0 * inner;
        }
    }
    let mut edge: f64 = 0.0;
    let l1: f64 = series
        .iter()
        .map(|s| s.iter().zip(rule.weights()).map(|(v, &w)| v.norm() * w).sum::<f64>())
        .fold(0.0, f64::max);
    for x in [-radius, radius] {
        let f = bw.real_factor(x)?;
        let q = skew_ops(spec, kmax, Complex64::new(x, 0.0))?;
        edge = edge.max(q.iter().map(|v| v.norm() * f).fold(0.0, f64::max));
    }
    Ok(edge * l1)
}

pub fn skew_orthogonality_check(k: usize, l: usize, spec: &WeightSpec, c: &QuadControls) -> Result<Complex64> {
    Ok(skew_inner_products(spec, k.max(l), c)?.values[k][l])
}
