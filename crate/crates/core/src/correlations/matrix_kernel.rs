//! Matrix kernels (K, G, W) of the β=1,4 Pfaffian point processes.
//!
//! Entries are returned with the delta factors of real points stripped: for a
//! real z₂ (β=1), `g` is the coefficient of δ(y₂) and `w` the coefficient of
//! δ(y₂) (or δ(y₁)δ(y₂)). The contact term at z₂ = z₁* is never included.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::finite_kernels::{
    bivariate_weight, finite_kernel, finite_kernel_scaled, ln_chiral_w2, ln_ginibre_w2, weight, BivariateWeight, WeightFamily,
    WeightSpec,
};
use crate::specfun::ln_erfc;
use crate::limiting_kernels::{evaluate, Domain, Element, KernelPoint};
use crate::specfun::{PanelRule, RuleKind};
use crate::{Beta, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelSource {
    FiniteN,
    Limiting,
}

pub trait MatrixKernel: Sync {
    fn beta(&self) -> Beta;
    fn source(&self) -> KernelSource;
    fn k(&self, z1: Complex64, z2: Complex64) -> Result<Complex64>;
    fn g(&self, z1: Complex64, z2: Complex64) -> Result<Complex64>;
    fn w(&self, z1: Complex64, z2: Complex64) -> Result<Complex64>;

    /// Entries after the gauge K → a₁a₂K, G → (a₁/a₂)G, W → W/(a₁a₂), which
    /// leaves every Pfaffian minor unchanged; kernels whose elements overflow
    /// override these with a(z) chosen to cancel the growth.
    fn k_gauged(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        self.k(z1, z2)
    }

    fn g_gauged(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        self.g(z1, z2)
    }

    fn w_gauged(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        self.w(z1, z2)
    }
}

pub type Prekernel = Arc<dyn Fn(Complex64, Complex64) -> Result<Complex64> + Send + Sync>;

/// Quadrature on the real line for the real-eigenvalue parts of β=1 kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineControls {
    pub half_width: f64,
    pub panel_width: f64,
    pub order: usize,
}

impl LineControls {
    pub fn for_spec(spec: &WeightSpec, n: usize) -> Self {
        let nf = n as f64;
        let half_width = match spec.family {
            WeightFamily::Ginibre => (2.0 * (1.0 + spec.tau)).sqrt() * (nf.sqrt() + 7.0),
            WeightFamily::Chiral => (1.0 + spec.tau) * (2.0 * nf + 40.0),
        };
        Self { half_width, panel_width: 1.0, order: 16 }
    }

    pub fn refined(mut self) -> Self {
        self.panel_width *= 0.5;
        self.half_width *= 1.25;
        self
    }
}

/// K from a finite-N pre-kernel; G and W by reducing the delta parts of F in
/// G = −∫ K F and W = ∫∫ F K F − F.
///
/// Internally everything is carried in the gauge a(z)² = w₂(z) (the β=2 weight
/// with the same τ, ν), where a(u)a(v)K(u, v) stays bounded for large N.
#[derive(Clone)]
pub struct FiniteMatrixKernel {
    pub spec: WeightSpec,
    pub n: usize,
    pub line: LineControls,
    weight: BivariateWeight,
    /// K(u, v) as mantissa · e^{log scale}
    raw: ScaledPrekernel,
}

type ScaledPrekernel = Arc<dyn Fn(Complex64, Complex64) -> Result<(Complex64, f64)> + Send + Sync>;

fn ln_gauge(spec: &WeightSpec, z: Complex64) -> Result<f64> {
    Ok(0.5
        * match spec.family {
            WeightFamily::Ginibre => ln_ginibre_w2(spec.tau, z),
            WeightFamily::Chiral => {
                let nu = if spec.beta == Beta::Four { 2 * spec.nu } else { spec.nu };
                ln_chiral_w2(spec.tau, nu, z)?
            }
        })
}

impl FiniteMatrixKernel {
    pub fn new(spec: WeightSpec, n: usize) -> Result<Self> {
        let s = spec;
        let raw: ScaledPrekernel = Arc::new(move |u, v| {
            let k = finite_kernel_scaled(&s, n, u, v)?;
            Ok((k.mantissa, k.log_scale))
        });
        Self::build(spec, n, raw)
    }

    /// From an ungauged pre-kernel K(u, v).
    pub fn with_prekernel(spec: WeightSpec, n: usize, prekernel: Prekernel) -> Result<Self> {
        let raw: ScaledPrekernel = Arc::new(move |u, v| Ok((prekernel(u, v)?, 0.0)));
        Self::build(spec, n, raw)
    }

    fn build(spec: WeightSpec, n: usize, raw: ScaledPrekernel) -> Result<Self> {
        let weight = bivariate_weight(&spec)?;
        if n < 2 || n % 2 == 1 {
            return Err(Error::InvalidParameter(format!("N must be even and ≥ 2, got {n}")));
        }
        Ok(Self { spec, n, line: LineControls::for_spec(&spec, n), weight, raw })
    }

    pub fn with_line(mut self, line: LineControls) -> Self {
        self.line = line;
        self
    }

    /// a(u)a(v)K(u, v)
    fn pk(&self, u: Complex64, v: Complex64) -> Result<Complex64> {
        self.pk_with(u, v, self.ln_a(u)?, self.ln_a(v)?)
    }

    /// `pk` with ln a(u), ln a(v) supplied, for quadratures that reuse them.
    fn pk_with(&self, u: Complex64, v: Complex64, ln_au: f64, ln_av: f64) -> Result<Complex64> {
        let (m, l) = (self.raw)(u, v)?;
        Ok(m * (l + ln_au + ln_av).exp())
    }

    fn ln_a(&self, z: Complex64) -> Result<f64> {
        ln_gauge(&self.spec, z)
    }

    /// f(x)/a(x) for the real part of F (β=1).
    fn line_factor(&self, x: f64) -> Result<f64> {
        match self.spec.family {
            WeightFamily::Ginibre => Ok(1.0),
            WeightFamily::Chiral => {
                let x = Complex64::new(x, 0.0);
                Ok(self.weight.real_factor(x.re)? * (-self.ln_a(x)?).exp())
            }
        }
    }

    /// c(z)/a(z)², c the coefficient of δ²(z₁ − z₂*) in F at z₁ = z.
    fn conj_factor(&self, z: Complex64) -> Result<Complex64> {
        if z.im == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        match (self.spec.beta, self.spec.family) {
            (Beta::Four, _) => Ok(z - z.conj()),
            (Beta::One, WeightFamily::Ginibre) => {
                let s = 2.0 * z.im.abs() / (2.0 * (1.0 - self.spec.tau * self.spec.tau)).sqrt();
                Ok(Complex64::new(0.0, 2.0 * crate::sign(z.im) * (ln_erfc(s) + s * s).exp()))
            }
            _ => Ok(self.weight.conjugate(z)? * (-2.0 * self.ln_a(z)?).exp()),
        }
    }

    /// Gauss-Legendre panels on [−L, L] with extra breaks at `cuts` (and graded towards
    /// 0 for the chiral weight, whose real factor is singular there).
    fn line_rule(&self, cuts: &[f64]) -> Result<PanelRule> {
        let l = self.line.half_width;
        let panels = (2.0 * l / self.line.panel_width).ceil() as usize;
        let mut breaks: Vec<f64> = (0..=panels).map(|i| -l + 2.0 * l * i as f64 / panels as f64).collect();
        breaks.extend(cuts.iter().copied().filter(|x| x.abs() < l));
        if self.spec.family == WeightFamily::Chiral {
            for g in [1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.3] {
                breaks.push(g);
                breaks.push(-g);
            }
            breaks.push(0.0);
        }
        breaks.sort_by(f64::total_cmp);
        breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        PanelRule::new(breaks, self.line.order, RuleKind::FiniteLegendre)
    }

    /// ∫ dx K̃(z, x) (f/a)(x) sign(x₀ − x)
    fn right_line(&self, z: Complex64, x0: f64) -> Result<Complex64> {
        let rule = self.line_rule(&[x0])?;
        let la = self.ln_a(z)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            let x = Complex64::new(x, 0.0);
            let f = self.line_factor(x.re)?;
            acc += self.pk_with(z, x, la, self.ln_a(x)?)? * (f * w * crate::sign(x0 - x.re));
        }
        Ok(acc)
    }

    /// ∫ dx (f/a)(x) sign(x − x₀) K̃(x, z)
    fn left_line(&self, x0: f64, z: Complex64) -> Result<Complex64> {
        let rule = self.line_rule(&[x0])?;
        let la = self.ln_a(z)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            let x = Complex64::new(x, 0.0);
            let f = self.line_factor(x.re)?;
            acc += self.pk_with(x, z, self.ln_a(x)?, la)? * (f * w * crate::sign(x.re - x0));
        }
        Ok(acc)
    }

    /// ∫∫ dx dx' (f/a)(x) sign(x − x₁) K̃(x, x') (f/a)(x') sign(x₂ − x')
    fn double_line(&self, x1: f64, x2: f64) -> Result<Complex64> {
        let rule = self.line_rule(&[x1, x2])?;
        let nodes = rule.nodes();
        let fw: Vec<f64> = nodes
            .iter()
            .zip(rule.weights())
            .map(|(&x, &w)| Ok(self.line_factor(x)? * w))
            .collect::<Result<_>>()?;
        let la: Vec<f64> = nodes.iter().map(|&x| self.ln_a(Complex64::new(x, 0.0))).collect::<Result<_>>()?;
        // rows in parallel, summed in order so the result does not depend on scheduling
        let rows: Vec<Complex64> = (0..nodes.len())
            .into_par_iter()
            .map(|a| {
                let sa = crate::sign(nodes[a] - x1);
                if sa == 0.0 || fw[a] == 0.0 {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                let x = Complex64::new(nodes[a], 0.0);
                let mut inner = Complex64::new(0.0, 0.0);
                for (b, &xp) in nodes.iter().enumerate() {
                    let sb = crate::sign(x2 - xp);
                    if sb == 0.0 || fw[b] == 0.0 {
                        continue;
                    }
                    inner += self.pk_with(x, Complex64::new(xp, 0.0), la[a], la[b])? * (fw[b] * sb);
                }
                Ok(inner * (fw[a] * sa))
            })
            .collect::<Result<_>>()?;
        Ok(rows.into_iter().fold(Complex64::new(0.0, 0.0), |acc, r| acc + r))
    }

    fn is_real_point(&self, z: Complex64) -> bool {
        self.spec.beta == Beta::One && z.im == 0.0
    }
}

impl MatrixKernel for FiniteMatrixKernel {
    fn beta(&self) -> Beta {
        self.spec.beta
    }

    fn source(&self) -> KernelSource {
        KernelSource::FiniteN
    }

    fn k(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        Ok(self.k_gauged(z1, z2)? * (-self.ln_a(z1)? - self.ln_a(z2)?).exp())
    }

    fn g(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        Ok(self.g_gauged(z1, z2)? * (self.ln_a(z2)? - self.ln_a(z1)?).exp())
    }

    fn w(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        Ok(self.w_gauged(z1, z2)? * (self.ln_a(z1)? + self.ln_a(z2)?).exp())
    }

    fn k_gauged(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        self.pk(z1, z2)
    }

    fn g_gauged(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        if self.is_real_point(z2) {
            return Ok(-self.line_factor(z2.re)? * self.right_line(z1, z2.re)?);
        }
        Ok(-self.pk(z1, z2.conj())? * self.conj_factor(z2.conj())?)
    }

    fn w_gauged(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        match (self.is_real_point(z1), self.is_real_point(z2)) {
            (false, false) => {
                let c1 = self.conj_factor(z1)?;
                let c2 = self.conj_factor(z2.conj())?;
                if c1 == Complex64::new(0.0, 0.0) || c2 == Complex64::new(0.0, 0.0) {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                Ok(c1 * self.pk(z1.conj(), z2.conj())? * c2)
            }
            (false, true) => {
                let f2 = self.line_factor(z2.re)?;
                Ok(self.conj_factor(z1)? * f2 * self.right_line(z1.conj(), z2.re)?)
            }
            (true, false) => {
                let f1 = self.line_factor(z1.re)?;
                Ok(f1 * self.left_line(z1.re, z2.conj())? * self.conj_factor(z2.conj())?)
            }
            (true, true) => {
                let (x1, x2) = (z1.re, z2.re);
                let f = self.line_factor(x1)? * self.line_factor(x2)?;
                Ok(f * self.double_line(x1, x2)? - f * crate::sign(x2 - x1))
            }
        }
    }
}

/// G and W from the closed β=4 relations
/// G = (z₂−z₂*) w₂(z₂) K(z₁,z₂*), W = −(z₁−z₁*)(z₂−z₂*) w₂(z₁) w₂(z₂) K(z₁*,z₂*).
pub fn g_w_closed_form_beta4(spec: &WeightSpec, n: usize, z1: Complex64, z2: Complex64) -> Result<(Complex64, Complex64)> {
    if spec.beta != Beta::Four {
        return Err(Error::InvalidParameter("closed G/W relations hold for β = 4".into()));
    }
    let w2 = WeightSpec { beta: Beta::Two, nu: 2 * spec.nu, ..*spec };
    let g = (z2 - z2.conj()) * weight(&w2, z2)? * finite_kernel(spec, n, z1, z2.conj())?;
    let w = -(z1 - z1.conj()) * (z2 - z2.conj()) * weight(&w2, z1)? * weight(&w2, z2)?
        * finite_kernel(spec, n, z1.conj(), z2.conj())?;
    Ok((g, w))
}

/// (G, W) from a pre-kernel by reducing the delta parts of the bivariate weight.
pub fn g_w_from_k(kernel: &FiniteMatrixKernel, z1: Complex64, z2: Complex64) -> Result<(Complex64, Complex64)> {
    Ok((kernel.g(z1, z2)?, kernel.w(z1, z2)?))
}

/// Limiting kernels as matrix kernels. On the real line all three elements are
/// used directly (W with its sign jump). In the complex plane β=4 uses K, G, W and
/// β=1 uses K, G_com, W for non-real points only.
#[derive(Debug, Clone, Copy)]
pub struct LimitingMatrixKernel {
    pub template: KernelPoint,
}

impl LimitingMatrixKernel {
    pub fn new(template: KernelPoint) -> Result<Self> {
        if template.beta == Beta::Two {
            return Err(Error::InvalidParameter("β = 2 has no matrix kernel".into()));
        }
        Ok(Self { template })
    }

    fn at(&self, element: Element, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        let t = &self.template;
        if t.domain == Domain::ComplexPlane && t.beta == Beta::One && (z1.im == 0.0 || z2.im == 0.0) {
            return Err(Error::Unsupported(
                "limiting β=1 correlations with real points use the real-line kernels".into(),
            ));
        }
        let element = match (t.domain, t.beta, element) {
            (Domain::ComplexPlane, Beta::One, Element::G) => Element::GCom,
            (_, _, e) => e,
        };
        let p = KernelPoint { element, ..*t }.with_args(z1, z2);
        let v = evaluate(&p)?;
        Ok(match t.domain {
            Domain::RealLine => v.value(),
            Domain::ComplexPlane => v.smooth,
        })
    }
}

impl MatrixKernel for LimitingMatrixKernel {
    fn beta(&self) -> Beta {
        self.template.beta
    }

    fn source(&self) -> KernelSource {
        KernelSource::Limiting
    }

    fn k(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        self.at(Element::K, z1, z2)
    }

    fn g(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        self.at(Element::G, z1, z2)
    }

    fn w(&self, z1: Complex64, z2: Complex64) -> Result<Complex64> {
        self.at(Element::W, z1, z2)
    }
}
