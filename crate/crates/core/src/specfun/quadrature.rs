//! Quadrature rules: Gauss-Legendre, composite panels, truncated
//! semi-infinite rules for Airy-type integrands, and planar product rules.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    FiniteLegendre,
    SemiInfiniteDecaying,
    /// Radial factor of a polar product rule; weights carry the r Jacobian.
    PlanarProduct,
}

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
    /// Upper cutoff T for semi-infinite rules.
    pub truncation: Option<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn integrate_complex<F: FnMut(f64) -> Complex64>(&self, mut f: F) -> Complex64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
fn legendre_reference(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_p_and_derivative(n, t);
            dp = d;
            let dt = p / d;
            t -= dt;
            if dt.abs() < 1e-16 {
                let (_, d) = legendre_p_and_derivative(n, t);
                dp = d;
                break;
            }
        }
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_p_and_derivative(n: usize, t: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = t;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, d)
}

/// n-point Gauss-Legendre rule on [0, 1], 2 ≤ n ≤ 512.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if !(2..=512).contains(&n) {
        return Err(Error::InvalidParameter(format!("Gauss-Legendre order {n} outside [2, 512]")));
    }
    let (x, w) = legendre_reference(n);
    Ok(QuadratureRule {
        nodes: x.iter().map(|t| 0.5 * (t + 1.0)).collect(),
        weights: w.iter().map(|v| 0.5 * v).collect(),
        kind: RuleKind::FiniteLegendre,
        truncation: None,
    })
}

/// Gauss-Legendre panels of a common order laid over consecutive intervals.
#[derive(Debug, Clone)]
pub struct PanelRule {
    pub breaks: Vec<f64>,
    pub order: usize,
    pub rule: QuadratureRule,
    reference: Vec<f64>,
    cumulative: Vec<f64>,
}

impl PanelRule {
    /// Panels between consecutive entries of `breaks` (increasing).
    pub fn new(breaks: Vec<f64>, order: usize, kind: RuleKind) -> Result<Self> {
        if breaks.len() < 2 || breaks.windows(2).any(|p| !(p[1] > p[0])) {
            return Err(Error::InvalidParameter("panel breaks must be strictly increasing".into()));
        }
        let base = gauss_legendre(order)?;
        let mut nodes = Vec::with_capacity(order * (breaks.len() - 1));
        let mut weights = Vec::with_capacity(nodes.capacity());
        for p in breaks.windows(2) {
            let h = p[1] - p[0];
            for (&t, &w) in base.nodes.iter().zip(&base.weights) {
                nodes.push(p[0] + h * t);
                weights.push(h * w);
            }
        }
        let truncation = matches!(kind, RuleKind::SemiInfiniteDecaying).then(|| *breaks.last().unwrap());
        Ok(Self {
            cumulative: cumulative_matrix(&base.nodes, &base.weights),
            reference: base.nodes,
            breaks,
            order,
            rule: QuadratureRule { nodes, weights, kind, truncation },
        })
    }

    /// `panels` equal panels on [a, b].
    pub fn uniform(a: f64, b: f64, panels: usize, order: usize) -> Result<Self> {
        let panels = panels.max(1);
        let breaks = (0..=panels).map(|i| a + (b - a) * i as f64 / panels as f64).collect();
        Self::new(breaks, order, RuleKind::FiniteLegendre)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.rule.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.rule.weights
    }

    /// Given samples f at the nodes, returns ∫_{a}^{node_i} f for every node,
    /// exact for polynomials of degree < order on each panel.
    pub fn running_integral(&self, values: &[Complex64]) -> Vec<Complex64> {
        let m = self.order;
        let mut out = vec![Complex64::new(0.0, 0.0); values.len()];
        let mut offset = Complex64::new(0.0, 0.0);
        for (p, win) in self.breaks.windows(2).enumerate() {
            let h = win[1] - win[0];
            let vals = &values[p * m..(p + 1) * m];
            for i in 0..m {
                let row = &self.cumulative[i * m..(i + 1) * m];
                let partial: Complex64 = row.iter().zip(vals).map(|(&s, &v)| s * v).sum();
                out[p * m + i] = offset + h * partial;
            }
            let full: Complex64 = self.rule.weights[p * m..(p + 1) * m]
                .iter()
                .zip(vals)
                .map(|(&w, &v)| w * v)
                .sum();
            offset += full;
        }
        out
    }

    pub fn reference_nodes(&self) -> &[f64] {
        &self.reference
    }
}

/// S[i][j] = ∫_0^{t_i} ℓ_j(t) dt for the Lagrange basis on the rule's nodes in [0, 1].
fn cumulative_matrix(nodes: &[f64], weights: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    // Legendre values on [-1, 1]: pk[k][j] = P_k(x_j), k = 0..=n
    let xs: Vec<f64> = nodes.iter().map(|t| 2.0 * t - 1.0).collect();
    let mut pk = vec![vec![0.0; n]; n + 1];
    for (j, &x) in xs.iter().enumerate() {
        pk[0][j] = 1.0;
        if n >= 1 {
            pk[1][j] = x;
        }
        for k in 1..n {
            let kf = k as f64;
            pk[k + 1][j] = ((2.0 * kf + 1.0) * x * pk[k][j] - kf * pk[k - 1][j]) / (kf + 1.0);
        }
    }
    let mut s = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            // weights on [0,1] are half the reference weights
            let wj = 2.0 * weights[j];
            let mut acc = 0.0;
            for k in 0..n {
                let ck = (2.0 * k as f64 + 1.0) / 2.0 * wj * pk[k][j];
                let ik = if k == 0 {
                    xs[i] + 1.0
                } else {
                    (pk[k + 1][i] - pk[k - 1][i]) / (2.0 * k as f64 + 1.0)
                };
                acc += ck * ik;
            }
            // back to the [0, 1] variable
            s[i * n + j] = 0.5 * acc;
        }
    }
    s
}

const TAIL_MARGIN: f64 = 5.0;
const MAX_CUTOFF: f64 = 1e4;
const PANEL_ORDER: usize = 24;

/// Rule on [0, T] for integrands bounded by exp(-(2/3)(t/s)^{3/2} + growth·t)
/// with s = `decay_scale`; T is the smallest cutoff whose neglected tail is below `tol`.
pub fn semi_infinite_rule(decay_scale: f64, growth: f64, tol: f64) -> Result<QuadratureRule> {
    Ok(airy_panels(0.0, decay_scale, growth, tol)?.rule)
}

/// Panel rule for ∫_0^∞ dt e^{growth·t} Ai(shift + t)… where `shift` is the real
/// part of the Airy argument. Panels are narrowed where Ai oscillates (shift < 0).
pub fn airy_panels(shift: f64, decay_scale: f64, growth: f64, tol: f64) -> Result<PanelRule> {
    if !(decay_scale > 0.0) || !(growth >= 0.0) || !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "semi-infinite rule needs decay_scale > 0, growth ≥ 0, 0 < tol < 1 (got {decay_scale}, {growth}, {tol})"
        )));
    }
    let target = -tol.ln() + TAIL_MARGIN;
    let exponent = |t: f64| {
        let x = (shift + t) / decay_scale;
        let decay = if x > 0.0 { 2.0 / 3.0 * x.powf(1.5) } else { 0.0 };
        decay - growth * t
    };
    // the exponent is eventually increasing; bisect on a bracket past its minimum
    let mut hi = 1.0_f64;
    while exponent(hi) < target || exponent(2.0 * hi) < exponent(hi) {
        hi *= 2.0;
        if hi > MAX_CUTOFF {
            return Err(Error::Truncation { estimate: hi, limit: MAX_CUTOFF });
        }
    }
    let mut lo = hi / 2.0;
    if exponent(lo) >= target && exponent(lo) <= exponent(hi) {
        lo = 0.0;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if exponent(mid) >= target && exponent(2.0 * mid) >= exponent(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let cutoff = hi;
    let width_osc = (2.0 / (1.0 + (-shift).max(0.0).sqrt())).min(1.0) * decay_scale.min(1.0).max(0.25);
    let mut breaks = vec![0.0];
    let mut t = 0.0;
    while t < cutoff {
        let osc = shift + t < 0.0;
        let w = if osc { width_osc } else { decay_scale.min(1.0) };
        t = (t + w).min(cutoff);
        breaks.push(t);
    }
    PanelRule::new(breaks, PANEL_ORDER, RuleKind::SemiInfiniteDecaying)
}

/// Gauss-Legendre panels on [a, b] with panel width at most `max_width`.
pub fn finite_panels(a: f64, b: f64, max_width: f64, order: usize) -> Result<PanelRule> {
    let panels = (((b - a) / max_width).ceil() as usize).max(1);
    PanelRule::uniform(a, b, panels, order)
}

/// Polar product rule over the disc |z| ≤ radius: composite Gauss-Legendre in r
/// (weights include the Jacobian r) times the trapezoid rule in the angle.
#[derive(Debug, Clone)]
pub struct PlanarRule {
    pub radial: QuadratureRule,
    pub angles: usize,
    pub radius: f64,
}

impl PlanarRule {
    pub fn disc(radius: f64, radial_panels: usize, order: usize, angles: usize) -> Result<Self> {
        if !(radius > 0.0) || angles < 3 {
            return Err(Error::InvalidParameter("planar rule needs radius > 0 and ≥ 3 angles".into()));
        }
        let mut radial = PanelRule::uniform(0.0, radius, radial_panels, order)?.rule;
        for (w, r) in radial.weights.iter_mut().zip(&radial.nodes) {
            *w *= r;
        }
        radial.kind = RuleKind::PlanarProduct;
        Ok(Self { radial, angles, radius })
    }

    /// (z, weight) pairs.
    pub fn points(&self) -> Vec<(Complex64, f64)> {
        let dphi = 2.0 * PI / self.angles as f64;
        let mut out = Vec::with_capacity(self.radial.len() * self.angles);
        for (&r, &w) in self.radial.nodes.iter().zip(&self.radial.weights) {
            for a in 0..self.angles {
                out.push((Complex64::from_polar(r, a as f64 * dphi), w * dphi));
            }
        }
        out
    }

    /// Points on the rim |z| = radius with their arc-length weights.
    pub fn rim(&self) -> Vec<(Complex64, f64)> {
        let dphi = 2.0 * PI / self.angles as f64;
        (0..self.angles)
            .map(|a| (Complex64::from_polar(self.radius, a as f64 * dphi), self.radius * dphi))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{airy_ai, airy_ai_prime};

    #[test]
    fn two_point_rule_is_cubic_exact() {
        let r = gauss_legendre(2).unwrap();
        assert!((r.integrate(|t| t * t) - 1.0 / 3.0).abs() < 1e-15);
        assert!((r.integrate(|t| t * t * t) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn sixty_four_point_cosine() {
        let r = gauss_legendre(64).unwrap();
        let want = 10f64.sin() / 10.0;
        assert!((r.integrate(|t| (10.0 * t).cos()) - want).abs() < 1e-12);
    }

    #[test]
    fn rules_have_positive_weights_summing_to_one() {
        for n in [2, 3, 17, 128, 512] {
            let r = gauss_legendre(n).unwrap();
            assert!(r.weights.iter().all(|&w| w > 0.0));
            assert!(r.nodes.windows(2).all(|p| p[1] > p[0]));
            assert!((r.weights.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }
        assert!(gauss_legendre(1).is_err());
        assert!(gauss_legendre(513).is_err());
    }

    #[test]
    fn airy_integral_is_one_third() {
        let r = semi_infinite_rule(1.0, 0.0, 1e-12).unwrap();
        let v = r.integrate(|t| airy_ai(Complex64::new(t, 0.0)).unwrap().re);
        assert!((v - 1.0 / 3.0).abs() < 1e-10);
        assert!(r.truncation.unwrap() > 0.0);
    }

    #[test]
    fn airy_square_integral_matches_derivative_identity() {
        let r = semi_infinite_rule(1.0, 0.0, 1e-13).unwrap();
        let v = r.integrate(|t| airy_ai(Complex64::new(t, 0.0)).unwrap().re.powi(2));
        let d = airy_ai_prime(Complex64::new(0.0, 0.0)).unwrap().re;
        assert!((v - d * d).abs() < 1e-11);
        assert!((v - 0.0669874837796640).abs() < 1e-11);
    }

    #[test]
    fn growth_rule_is_refinement_stable() {
        let f = |t: f64| t.exp() * airy_ai(Complex64::new(t, 0.0)).unwrap().re.powi(2);
        let coarse = airy_panels(0.0, 1.0, 1.0, 1e-12).unwrap();
        let mut breaks = Vec::new();
        for p in coarse.breaks.windows(2) {
            breaks.push(p[0]);
            breaks.push(0.5 * (p[0] + p[1]));
        }
        breaks.push(*coarse.breaks.last().unwrap());
        let fine = PanelRule::new(breaks, PANEL_ORDER, RuleKind::SemiInfiniteDecaying).unwrap();
        let a = coarse.rule.integrate(f);
        let b = fine.rule.integrate(f);
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn running_integral_of_polynomial_and_exponential() {
        let p = PanelRule::uniform(0.0, 3.0, 3, 16).unwrap();
        let vals: Vec<Complex64> = p.nodes().iter().map(|&t| Complex64::new(t.exp(), 2.0 * t)).collect();
        let run = p.running_integral(&vals);
        for (&t, v) in p.nodes().iter().zip(&run) {
            let want = Complex64::new(t.exp() - 1.0, t * t);
            assert!((v - want).norm() < 1e-13, "{t}: {v} vs {want}");
        }
    }

    #[test]
    fn cutoff_limit_is_reported() {
        assert!(matches!(semi_infinite_rule(1.0, 100.0, 1e-12), Err(Error::Truncation { .. })));
    }

    #[test]
    fn planar_gaussian_mass_is_pi() {
        let rule = PlanarRule::disc(10.0, 10, 20, 32).unwrap();
        let v: f64 = rule.points().iter().map(|(z, w)| w * (-z.norm_sqr()).exp()).sum();
        assert!((v - PI).abs() < 1e-12);
    }
}
