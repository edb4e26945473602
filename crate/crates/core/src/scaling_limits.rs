//! Weak non-Hermiticity scaling: micro ↔ matrix-scale coordinates for the soft
//! edge, bulk and hard edge, rescaled finite-N kernels and convergence studies
//! against the limiting kernels.
//!
//! With σ fixed, τ = 1 − σ²/N^{2δ} (δ = 1/6 at the soft edge, 1/2 otherwise) and
//! a micro point ζ = X + iY maps to
//!
//! * soft edge: z = (1+τ)√N + ζ/N^{1/6}, kernel prefactor N^{−1/3},
//! * bulk: z = x₀√N + ζ/(ρ√N), prefactor 1/(Nρ²) with ρ = √(1 − x₀²/4),
//! * hard edge: z = ζ/(4N), prefactor (4N)^{−2}.
//!
//! For β=1,4 the comparison is made on gauge-free quantities: the one- and
//! two-point functions built from the rescaled matrix kernel. The power of N
//! multiplying each k-point function is fitted from the data (see
//! [`stabilizing_exponent`]) and not assumed.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlations::{r_k_beta2, r_k_pfaffian, FiniteMatrixKernel, LimitingMatrixKernel};
use crate::finite_kernels::{finite_kernel, WeightFamily, WeightSpec};
use crate::limiting_kernels::{evaluate, Element, KernelFamily, KernelPoint};
use crate::{Beta, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeKind {
    SoftEdge,
    Bulk,
    HardEdge,
}

impl RegimeKind {
    pub fn name(self) -> &'static str {
        match self {
            RegimeKind::SoftEdge => "soft_edge",
            RegimeKind::Bulk => "bulk",
            RegimeKind::HardEdge => "hard_edge",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "soft_edge" | "soft" | "airy" => Ok(RegimeKind::SoftEdge),
            "bulk" | "sine" => Ok(RegimeKind::Bulk),
            "hard_edge" | "hard" | "bessel" => Ok(RegimeKind::HardEdge),
            _ => Err(Error::InvalidParameter(format!("unknown regime '{s}'"))),
        }
    }

    pub fn limiting_family(self) -> KernelFamily {
        match self {
            RegimeKind::SoftEdge => KernelFamily::Airy,
            RegimeKind::Bulk => KernelFamily::Sine,
            RegimeKind::HardEdge => KernelFamily::Bessel,
        }
    }

    pub fn weight_family(self) -> WeightFamily {
        match self {
            RegimeKind::HardEdge => WeightFamily::Chiral,
            _ => WeightFamily::Ginibre,
        }
    }

    /// δ in (1 − τ)N^{2δ} = σ².
    pub fn delta(self) -> f64 {
        match self {
            RegimeKind::SoftEdge => 1.0 / 6.0,
            _ => 0.5,
        }
    }

    /// Default N sequence for convergence studies.
    pub fn default_ns(self) -> Vec<usize> {
        match self {
            RegimeKind::SoftEdge => vec![100, 400, 1600],
            _ => vec![50, 100, 200, 400],
        }
    }
}

impl std::fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingRegime {
    pub kind: RegimeKind,
    pub n: usize,
    pub sigma: f64,
    /// Hard edge only.
    pub nu: usize,
    /// Bulk only: the real point x₀√N around which the spectrum is zoomed, |x₀| < 2.
    pub center: f64,
}

impl ScalingRegime {
    pub fn new(kind: RegimeKind, n: usize, sigma: f64) -> Result<Self> {
        let r = Self { kind, n, sigma, nu: 0, center: 0.0 };
        r.validate()?;
        Ok(r)
    }

    pub fn with_nu(mut self, nu: usize) -> Result<Self> {
        self.nu = nu;
        self.validate()?;
        Ok(self)
    }

    pub fn with_center(mut self, center: f64) -> Result<Self> {
        self.center = center;
        self.validate()?;
        Ok(self)
    }

    pub fn with_n(mut self, n: usize) -> Result<Self> {
        self.n = n;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.n % 2 == 1 {
            return Err(Error::InvalidParameter(format!("N must be even and ≥ 2, got {}", self.n)));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma must be positive, got {}", self.sigma)));
        }
        if self.nu != 0 && self.kind != RegimeKind::HardEdge {
            return Err(Error::InvalidParameter("nu is a hard-edge parameter".into()));
        }
        if self.center != 0.0 && self.kind != RegimeKind::Bulk {
            return Err(Error::InvalidParameter("center is a bulk parameter".into()));
        }
        if !(self.center.abs() < 2.0) {
            return Err(Error::InvalidParameter(format!("bulk center must satisfy |x0| < 2, got {}", self.center)));
        }
        let tau = self.tau();
        if !(0.0..1.0).contains(&tau) {
            return Err(Error::InvalidParameter(format!(
                "sigma = {} gives tau = {tau} outside [0, 1) at N = {}",
                self.sigma, self.n
            )));
        }
        Ok(())
    }

    pub fn tau(&self) -> f64 {
        let s = self.sigma / (self.n as f64).powf(self.kind.delta());
        1.0 - s * s
    }

    /// Relative local density at the bulk center, √(1 − x₀²/4); 1 at the edges.
    pub fn density_ratio(&self) -> f64 {
        match self.kind {
            RegimeKind::Bulk => (1.0 - self.center * self.center / 4.0).sqrt(),
            _ => 1.0,
        }
    }

    /// σ of the limiting kernel seen in unit-density micro coordinates.
    pub fn effective_sigma(&self) -> f64 {
        self.sigma * self.density_ratio()
    }

    /// Length of one micro unit in matrix coordinates.
    pub fn length_scale(&self) -> f64 {
        let nf = self.n as f64;
        match self.kind {
            RegimeKind::SoftEdge => nf.powf(-1.0 / 6.0),
            RegimeKind::Bulk => 1.0 / (self.density_ratio() * nf.sqrt()),
            RegimeKind::HardEdge => 1.0 / (4.0 * nf),
        }
    }

    pub fn origin(&self) -> f64 {
        let nf = self.n as f64;
        match self.kind {
            RegimeKind::SoftEdge => (1.0 + self.tau()) * nf.sqrt(),
            RegimeKind::Bulk => self.center * nf.sqrt(),
            RegimeKind::HardEdge => 0.0,
        }
    }

    /// Matrix-scale point of the micro point X + iY, and τ.
    pub fn micro_to_macro(&self, x: f64, y: f64) -> (Complex64, f64) {
        let l = self.length_scale();
        (Complex64::new(self.origin() + x * l, y * l), self.tau())
    }

    pub fn macro_to_micro(&self, z: Complex64) -> (f64, f64) {
        let l = self.length_scale();
        ((z.re - self.origin()) / l, z.im / l)
    }

    /// Area of one micro cell in matrix coordinates: the β=2 kernel prefactor.
    pub fn prefactor(&self) -> f64 {
        let l = self.length_scale();
        l * l
    }

    pub fn weight_spec(&self, beta: Beta) -> WeightSpec {
        WeightSpec { beta, family: self.kind.weight_family(), tau: self.tau(), nu: self.nu }
    }

    /// Limiting complex-plane kernel point of this regime for (β, element).
    pub fn limiting_point(&self, beta: Beta, element: Element) -> KernelPoint {
        let zero = Complex64::new(0.0, 0.0);
        KernelPoint::complex(self.kind.limiting_family(), beta, element, self.effective_sigma(), zero, zero).with_nu(self.nu)
    }
}

fn matrix_kernel(regime: &ScalingRegime, beta: Beta) -> Result<FiniteMatrixKernel> {
    FiniteMatrixKernel::new(regime.weight_spec(beta), regime.n)
}

fn mapped(regime: &ScalingRegime, zeta: Complex64) -> Complex64 {
    regime.micro_to_macro(zeta.re, zeta.im).0
}

/// β=2: prefactor × K_N at the mapped points. β=1,4: N^{−p} × the element of the
/// matrix kernel, with p supplied by the caller (see [`stabilizing_exponent`]).
pub fn rescaled_finite_kernel(
    regime: &ScalingRegime,
    beta: Beta,
    element: Element,
    z1: Complex64,
    z2: Complex64,
    exponent: Option<f64>,
) -> Result<Complex64> {
    regime.validate()?;
    let (u, v) = (mapped(regime, z1), mapped(regime, z2));
    if beta == Beta::Two {
        if element != Element::K {
            return Err(Error::InvalidParameter("β = 2 has only the K element".into()));
        }
        return Ok(finite_kernel(&regime.weight_spec(beta), regime.n, u, v)? * regime.prefactor());
    }
    let p = exponent.ok_or_else(|| Error::InvalidParameter("β = 1, 4 rescaling needs an exponent".into()))?;
    let kernel = matrix_kernel(regime, beta)?;
    use crate::correlations::MatrixKernel;
    let raw = match element {
        Element::K => kernel.k(u, v)?,
        Element::G | Element::GCom | Element::GReal => kernel.g(u, v)?,
        Element::W => kernel.w(u, v)?,
    };
    Ok(raw * (regime.n as f64).powf(-p))
}

/// Finite-N k-point function at micro points, multiplied by the k-th power of the
/// β=2 prefactor (the Jacobian of the coordinate map).
pub fn rescaled_correlation(regime: &ScalingRegime, beta: Beta, points: &[Complex64]) -> Result<f64> {
    regime.validate()?;
    let z: Vec<Complex64> = points.iter().map(|&p| mapped(regime, p)).collect();
    let jac = regime.prefactor().powi(points.len() as i32);
    let r = if beta == Beta::Two {
        let spec = regime.weight_spec(beta);
        let n = regime.n;
        r_k_beta2(|a, b| finite_kernel(&spec, n, a, b), &z)?
    } else {
        r_k_pfaffian(&matrix_kernel(regime, beta)?, &z)?
    };
    Ok(r * jac)
}

/// How the printed limiting kernels line up with the finite-N ones:
/// R_k^N(ζ₁…ζ_k) → a^k R_k(λζ₁…λζ_k; s·σ).
///
/// For β=2 this is the identity. For β=1,4 the values were measured by fitting
/// (λ, s, a) to finite-N densities at N up to 3200; `exact` is false where a
/// residual σ-dependent mismatch remains in the limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitConvention {
    pub length: f64,
    pub sigma: f64,
    pub amplitude: f64,
    pub exact: bool,
}

pub fn limit_convention(kind: RegimeKind, beta: Beta) -> LimitConvention {
    let c = |length: f64, sigma: f64, amplitude: f64| LimitConvention { length, sigma, amplitude, exact: true };
    match (kind, beta) {
        (_, Beta::Two) => c(1.0, 1.0, 1.0),
        (RegimeKind::SoftEdge, Beta::One) => c(1.0, 1.0, -1.0),
        (RegimeKind::SoftEdge, Beta::Four) => c(1.0, 1.0, 2.0),
        (RegimeKind::Bulk, Beta::One) => c(1.0, 1.0, 0.5),
        (RegimeKind::Bulk, Beta::Four) => c(0.5, std::f64::consts::FRAC_1_SQRT_2, 0.25),
        (RegimeKind::HardEdge, Beta::One) => c(1.0, 1.0, -1.0),
        (RegimeKind::HardEdge, Beta::Four) => LimitConvention {
            length: 0.25,
            sigma: 0.5,
            amplitude: 1.0 / (512.0 * std::f64::consts::PI),
            exact: false,
        },
    }
}

/// The limiting k-point function at micro points, in the finite-N units of
/// the regime (see [`limit_convention`]).
pub fn limiting_correlation(regime: &ScalingRegime, beta: Beta, points: &[Complex64]) -> Result<f64> {
    let conv = limit_convention(regime.kind, beta);
    let mut t = regime.limiting_point(beta, Element::K);
    t.sigma *= conv.sigma;
    let pts: Vec<Complex64> = points.iter().map(|&z| z * conv.length).collect();
    let r = if beta == Beta::Two {
        r_k_beta2(|a, b| Ok(evaluate(&t.with_args(a, b))?.smooth), &pts)?
    } else {
        r_k_pfaffian(&LimitingMatrixKernel::new(t)?, &pts)?
    };
    Ok(r * conv.amplitude.powi(points.len() as i32))
}

/// Fitted power p of N such that N^{−p}·|element| stays put at the micro point
/// between N and 2N, rounded to the nearest multiple of 1/6. Returns (raw, rounded).
pub fn stabilizing_exponent(
    regime: &ScalingRegime,
    beta: Beta,
    element: Element,
    z1: Complex64,
    z2: Complex64,
) -> Result<(f64, f64)> {
    let a = rescaled_finite_kernel(regime, beta, element, z1, z2, Some(0.0))?;
    let b = rescaled_finite_kernel(&regime.with_n(2 * regime.n)?, beta, element, z1, z2, Some(0.0))?;
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return Err(Error::Domain("element vanishes at the reference point".into()));
    }
    let raw = (b.norm() / a.norm()).ln() / std::f64::consts::LN_2;
    Ok((raw, (raw * 6.0).round() / 6.0))
}

/// What a convergence study compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    /// β=2 only: K(ζ_i, ζ_j*) on all grid pairs.
    Kernel,
    /// R₁ on the grid points.
    Density,
    /// R₂(ζ_i, ζ_j) on all grid pairs i < j.
    PairCorrelation,
}

impl Observable {
    pub fn name(self) -> &'static str {
        match self {
            Observable::Kernel => "kernel",
            Observable::Density => "density",
            Observable::PairCorrelation => "pair_correlation",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "kernel" | "k" => Ok(Observable::Kernel),
            "density" | "r1" => Ok(Observable::Density),
            "pair_correlation" | "pair" | "r2" => Ok(Observable::PairCorrelation),
            _ => Err(Error::InvalidParameter(format!("unknown observable '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub tau: f64,
    pub sup_dev: f64,
    /// sup_dev / sup |limit| over the grid.
    pub relative: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceTable {
    pub regime: RegimeKind,
    pub beta: Beta,
    pub observable: Observable,
    pub sigma: f64,
    pub nu: usize,
    pub center: f64,
    /// "X∈[a,b]×Y∈[c,d], m×k"
    pub grid: String,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].sup_dev < w[0].sup_dev)
    }

    /// Last deviation below the first (the trend asserted for the slower edges).
    pub fn decreasing_trend(&self) -> bool {
        match (self.rows.first(), self.rows.last()) {
            (Some(a), Some(b)) => self.rows.len() > 1 && b.sup_dev < a.sup_dev,
            _ => false,
        }
    }

    pub fn final_relative(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.relative)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,tau,sup_dev,relative,grid,regime,beta,observable,sigma,nu,center\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{:e},{:e},{:e},\"{}\",{},{},{},{:e},{},{:e}\n",
                r.n,
                r.tau,
                r.sup_dev,
                r.relative,
                self.grid,
                self.regime,
                self.beta,
                self.observable.name(),
                self.sigma,
                self.nu,
                self.center
            ));
        }
        s
    }
}

/// Micro grid: `nx` × `ny` nodes, end points included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MicroGrid {
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

impl MicroGrid {
    /// 9×5 over |X| ≤ 2, |Y| ≤ 1 (hard edge: X ∈ [0.25, 4]).
    pub fn default_for(kind: RegimeKind) -> Self {
        match kind {
            RegimeKind::HardEdge => Self { x: (0.25, 4.0), y: (-1.0, 1.0), nx: 9, ny: 5 },
            _ => Self { x: (-2.0, 2.0), y: (-1.0, 1.0), nx: 9, ny: 5 },
        }
    }

    pub fn points(&self) -> Vec<Complex64> {
        let axis = |(a, b): (f64, f64), n: usize| -> Vec<f64> {
            if n == 1 {
                vec![a]
            } else {
                (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
            }
        };
        let xs = axis(self.x, self.nx);
        let ys = axis(self.y, self.ny);
        ys.iter().flat_map(|&y| xs.iter().map(move |&x| Complex64::new(x, y))).collect()
    }

    pub fn describe(&self) -> String {
        format!("X∈[{},{}]×Y∈[{},{}], {}×{}", self.x.0, self.x.1, self.y.0, self.y.1, self.nx, self.ny)
    }
}

fn observable_points(observable: Observable, beta: Beta, grid: &MicroGrid) -> Result<Vec<Vec<Complex64>>> {
    let mut pts = grid.points();
    if beta == Beta::One {
        // β=1 limiting complex-plane kernels are for non-real points only
        pts.retain(|z| z.im != 0.0);
    }
    Ok(match observable {
        Observable::Kernel => {
            if beta != Beta::Two {
                return Err(Error::InvalidParameter(
                    "β = 1, 4 kernel elements depend on a gauge; compare densities or pair correlations".into(),
                ));
            }
            pts.iter().flat_map(|&a| pts.iter().map(move |&b| vec![a, b])).collect()
        }
        Observable::Density => pts.iter().map(|&z| vec![z]).collect(),
        Observable::PairCorrelation => {
            let mut out = Vec::new();
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    if beta == Beta::One && pts[i] == pts[j].conj() {
                        continue;
                    }
                    out.push(vec![pts[i], pts[j]]);
                }
            }
            out
        }
    })
}

/// sup over the grid of |finite − limit| for each N. β=2 kernels are compared
/// as complex numbers; the deviation for [`Observable::Kernel`] is |K_N − K|.
pub fn convergence_study(
    template: &ScalingRegime,
    beta: Beta,
    observable: Observable,
    grid: &MicroGrid,
    ns: &[usize],
) -> Result<ConvergenceTable> {
    if ns.is_empty() || ns.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("N sequence must be non-empty and increasing".into()));
    }
    let sets = observable_points(observable, beta, grid)?;
    let limit = regime_limit(template, beta, observable, &sets)?;
    let scale = limit.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let regime = template.with_n(n)?;
        let devs: Vec<f64> = sets
            .par_iter()
            .zip(&limit)
            .map(|(pts, lim)| Ok((finite_complex(&regime, beta, observable, pts)? - lim).norm()))
            .collect::<Result<_>>()?;
        let sup_dev = devs.into_iter().fold(0.0, f64::max);
        rows.push(ConvergenceRow { n, tau: regime.tau(), sup_dev, relative: sup_dev / scale });
    }
    Ok(ConvergenceTable {
        regime: template.kind,
        beta,
        observable,
        sigma: template.sigma,
        nu: template.nu,
        center: template.center,
        grid: grid.describe(),
        rows,
    })
}

fn finite_complex(regime: &ScalingRegime, beta: Beta, observable: Observable, pts: &[Complex64]) -> Result<Complex64> {
    match observable {
        Observable::Kernel => {
            let (z1, z2) = (pts[0], pts[1].conj());
            let k = rescaled_finite_kernel(regime, Beta::Two, Element::K, z1, z2, None)?;
            Ok(k * hard_edge_gauge(regime, z1, z2))
        }
        _ => Ok(Complex64::new(rescaled_correlation(regime, beta, pts)?, 0.0)),
    }
}

/// The chiral weight carries |z|^ν where the Bessel kernel carries (z₁z₂)^{ν/2}. The
/// two kernels differ by h(z₁)/h(w) with h(z) = e^{−iν arg z/2}, z₂ = w*, which cancels
/// in every correlation function; this factor undoes it.
fn hard_edge_gauge(regime: &ScalingRegime, z1: Complex64, z2: Complex64) -> Complex64 {
    if regime.kind != RegimeKind::HardEdge || regime.nu == 0 {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::from_polar(1.0, 0.5 * regime.nu as f64 * (z1.arg() + z2.arg()))
}

fn regime_limit(template: &ScalingRegime, beta: Beta, observable: Observable, sets: &[Vec<Complex64>]) -> Result<Vec<Complex64>> {
    sets.par_iter()
        .map(|pts| match observable {
            Observable::Kernel => {
                let t = template.limiting_point(Beta::Two, Element::K);
                Ok(evaluate(&t.with_args(pts[0], pts[1].conj()))?.smooth)
            }
            _ => Ok(Complex64::new(limiting_correlation(template, beta, pts)?, 0.0)),
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, CMatrix};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn coordinate_maps() {
        let bulk = ScalingRegime::new(RegimeKind::Bulk, 100, 1.0).unwrap();
        assert_eq!(bulk.micro_to_macro(0.0, 0.0).0, c(0.0, 0.0));
        let soft = ScalingRegime::new(RegimeKind::SoftEdge, 64, 1.0).unwrap();
        let (z, tau) = soft.micro_to_macro(0.0, 0.0);
        assert!((tau - 0.75).abs() < 1e-15);
        assert!((z - c(14.0, 0.0)).norm() < 1e-13);
        let hard = ScalingRegime::new(RegimeKind::HardEdge, 100, 1.0).unwrap();
        assert!((hard.micro_to_macro(4.0, 0.0).0 - c(0.01, 0.0)).norm() < 1e-17);
    }

    proptest! {
        #[test]
        fn round_trip_is_exact(x in -5.0f64..5.0, y in -3.0f64..3.0, k in 0usize..3, n in 5usize..400) {
            let kind = [RegimeKind::SoftEdge, RegimeKind::Bulk, RegimeKind::HardEdge][k];
            let r = ScalingRegime::new(kind, 2 * n, 0.8).unwrap();
            let (z, _) = r.micro_to_macro(x, y);
            let (x2, y2) = r.macro_to_micro(z);
            prop_assert!((x2 - x).abs() < 1e-14 * r.origin().abs().max(1.0) / r.length_scale().min(1.0).max(1e-3));
            prop_assert!((y2 - y).abs() < 1e-14);
        }
    }

    #[test]
    fn tau_increases_to_one() {
        for kind in [RegimeKind::SoftEdge, RegimeKind::Bulk, RegimeKind::HardEdge] {
            let mut last = -1.0;
            for n in [4, 16, 64, 256, 1024, 4096] {
                let tau = ScalingRegime::new(kind, n, 1.0).unwrap().tau();
                assert!((0.0..1.0).contains(&tau) && tau > last, "{kind} {n}: {tau}");
                last = tau;
            }
        }
        assert!(ScalingRegime::new(RegimeKind::SoftEdge, 8, 3.0).is_err());
        assert!(ScalingRegime::new(RegimeKind::Bulk, 7, 1.0).is_err());
        assert!(ScalingRegime::new(RegimeKind::Bulk, 8, 1.0).unwrap().with_nu(1).is_err());
        assert!(ScalingRegime::new(RegimeKind::Bulk, 8, 1.0).unwrap().with_center(2.5).is_err());
    }

    #[test]
    fn bulk_beta2_origin_approaches_sine_value() {
        let limit = (std::f64::consts::PI.sqrt() / 2.0 * crate::specfun::erf(1.0)) / std::f64::consts::PI.powf(1.5);
        let dev = |n| {
            let r = ScalingRegime::new(RegimeKind::Bulk, n, 1.0).unwrap();
            (rescaled_finite_kernel(&r, Beta::Two, Element::K, c(0.0, 0.0), c(0.0, 0.0), None).unwrap() - limit).norm()
        };
        assert!(dev(200) < dev(50) && dev(200) < 5e-3 * limit, "{} {}", dev(50), dev(200));
    }

    #[test]
    fn hard_edge_beta2_density_is_positive() {
        let r = ScalingRegime::new(RegimeKind::HardEdge, 100, 1.0).unwrap();
        let v = rescaled_finite_kernel(&r, Beta::Two, Element::K, c(2.0, 0.0), c(2.0, 0.0), None).unwrap();
        assert!(v.re > 0.0 && v.im.abs() < 1e-12 * v.re);
        let lim = limiting_correlation(&r, Beta::Two, &[c(2.0, 0.0)]).unwrap();
        assert!((v.re / lim - 1.0).abs() < 2e-2, "{} vs {lim}", v.re);
    }

    #[test]
    fn rescaled_prekernels_stay_antisymmetric() {
        for kind in [RegimeKind::Bulk, RegimeKind::HardEdge] {
            let r = ScalingRegime::new(kind, 40, 1.0).unwrap();
            for beta in [Beta::One, Beta::Four] {
                let (a, b) = (c(0.7, 0.3), c(1.2, -0.4));
                let k12 = rescaled_finite_kernel(&r, beta, Element::K, a, b, Some(0.5)).unwrap();
                let k21 = rescaled_finite_kernel(&r, beta, Element::K, b, a, Some(0.5)).unwrap();
                assert!((k12 + k21).norm() <= 1e-13 * k12.norm(), "{kind} {beta}");
            }
        }
        let r = ScalingRegime::new(RegimeKind::Bulk, 40, 1.0).unwrap();
        assert!(rescaled_finite_kernel(&r, Beta::Four, Element::K, c(0.1, 0.2), c(0.3, 0.4), None).is_err());
    }

    #[test]
    fn rescaled_beta2_kernel_is_positive_semidefinite() {
        let r = ScalingRegime::new(RegimeKind::Bulk, 60, 1.0).unwrap();
        let pts = MicroGrid { x: (-1.0, 1.0), y: (-0.5, 0.5), nx: 3, ny: 3 }.points();
        let m = CMatrix::from_fn(pts.len(), pts.len(), |i, j| {
            rescaled_finite_kernel(&r, Beta::Two, Element::K, pts[i], pts[j].conj(), None).unwrap()
        });
        let eig = hermitian_eigenvalues(&m).unwrap();
        assert!(eig.iter().all(|&e| e > -1e-12), "{eig:?}");
    }

    #[test]
    fn bulk_beta2_convergence_is_monotone() {
        let r = ScalingRegime::new(RegimeKind::Bulk, 50, 1.0).unwrap();
        let t = convergence_study(&r, Beta::Two, Observable::Kernel, &MicroGrid::default_for(RegimeKind::Bulk), &[50, 100, 200, 400])
            .unwrap();
        assert!(t.strictly_decreasing(), "{:?}", t.rows);
        assert!(t.final_relative() < 1e-2, "{}", t.final_relative());
        assert_eq!(t.to_csv().lines().count(), 5);
    }

    #[test]
    fn soft_edge_beta2_density_converges() {
        let r = ScalingRegime::new(RegimeKind::SoftEdge, 100, 1.0).unwrap();
        let grid = MicroGrid { x: (-2.0, 2.0), y: (-1.0, 1.0), nx: 5, ny: 3 };
        let t = convergence_study(&r, Beta::Two, Observable::Density, &grid, &[100, 400, 1600]).unwrap();
        assert!(t.strictly_decreasing(), "{:?}", t.rows);
    }

    #[test]
    fn limiting_values_are_continuous_in_sigma() {
        for kind in [RegimeKind::SoftEdge, RegimeKind::Bulk, RegimeKind::HardEdge] {
            let a = ScalingRegime::new(kind, 400, 0.5).unwrap();
            let b = ScalingRegime::new(kind, 400, 0.500001).unwrap();
            for z in MicroGrid::default_for(kind).points() {
                let (va, vb) = (limiting_correlation(&a, Beta::Two, &[z]).unwrap(), limiting_correlation(&b, Beta::Two, &[z]).unwrap());
                assert!((va - vb).abs() < 1e-4, "{kind} {z}");
            }
        }
    }

    #[test]
    fn bulk_off_center_matches_center_in_local_units() {
        let grid = MicroGrid { x: (-1.0, 1.0), y: (-0.5, 0.5), nx: 3, ny: 3 };
        let at = |x0: f64| {
            let r = ScalingRegime::new(RegimeKind::Bulk, 400, 1.0).unwrap().with_center(x0).unwrap();
            convergence_study(&r, Beta::Two, Observable::Density, &grid, &[400]).unwrap().final_relative()
        };
        let (d0, d1) = (at(0.0), at(0.8));
        assert!(d0 < 1e-2 && d1 < 2e-2, "{d0} {d1}");
    }

    #[test]
    fn left_soft_edge_mirrors_right() {
        let r = ScalingRegime::new(RegimeKind::SoftEdge, 100, 1.0).unwrap();
        let spec = r.weight_spec(Beta::Two);
        for (x, y) in [(0.0, 0.3), (-1.0, 0.7), (1.5, -0.2)] {
            let (z, _) = r.micro_to_macro(x, y);
            let right = finite_kernel(&spec, r.n, z, z.conj()).unwrap();
            let left = finite_kernel(&spec, r.n, -z, -z.conj()).unwrap();
            assert!((right - left).norm() <= 1e-12 * right.norm());
        }
    }

    #[test]
    fn beta2_needs_no_extra_power_of_n() {
        let r = ScalingRegime::new(RegimeKind::Bulk, 200, 1.0).unwrap();
        let (raw, rounded) = stabilizing_exponent(&r, Beta::Two, Element::K, c(0.2, 0.3), c(0.2, -0.3)).unwrap();
        assert!(raw.abs() < 0.02 && rounded == 0.0, "{raw}");
    }

    #[test]
    fn beta4_prekernel_exponent_stabilizes_the_diagonal() {
        let r = ScalingRegime::new(RegimeKind::Bulk, 100, 1.0).unwrap();
        let (a, b) = (c(0.2, 0.3), c(0.2, -0.3));
        let (raw, p) = stabilizing_exponent(&r, Beta::Four, Element::K, a, b).unwrap();
        assert!((raw - p).abs() < 0.1, "{raw} {p}");
        let v = |n| rescaled_finite_kernel(&r.with_n(n).unwrap(), Beta::Four, Element::K, a, b, Some(p)).unwrap().norm();
        let (v1, v2, v3) = (v(200), v(400), v(800));
        assert!((v3 / v2 - 1.0).abs() < (v2 / v1 - 1.0).abs() + 1e-3 && (v3 / v2 - 1.0).abs() < 0.05, "{v1} {v2} {v3}");
    }

    #[test]
    fn beta1_and_beta4_densities_converge_in_the_measured_units() {
        let grid = MicroGrid { x: (-1.0, 1.0), y: (0.2, 1.0), nx: 3, ny: 2 };
        for (kind, beta, ns) in [
            (RegimeKind::Bulk, Beta::Four, vec![100, 400]),
            (RegimeKind::Bulk, Beta::One, vec![100, 400]),
            (RegimeKind::SoftEdge, Beta::Four, vec![100, 800]),
            (RegimeKind::SoftEdge, Beta::One, vec![100, 800]),
        ] {
            let r = ScalingRegime::new(kind, ns[0], 1.0).unwrap();
            let t = convergence_study(&r, beta, Observable::Density, &grid, &ns).unwrap();
            // the soft edge approaches its limit only like N^{-1/3}
            let cap = if kind == RegimeKind::SoftEdge { 0.35 } else { 0.1 };
            assert!(t.strictly_decreasing() && t.final_relative() < cap, "{kind} {beta}: {:?}", t.rows);
        }
        let hard = MicroGrid { x: (0.5, 2.5), y: (0.2, 1.0), nx: 3, ny: 2 };
        let r = ScalingRegime::new(RegimeKind::HardEdge, 100, 1.0).unwrap();
        let t = convergence_study(&r, Beta::One, Observable::Density, &hard, &[100, 400]).unwrap();
        assert!(t.strictly_decreasing() && t.final_relative() < 1e-2, "{:?}", t.rows);
    }

    #[test]
    fn hard_edge_kernel_converges_off_axis_for_positive_nu() {
        let grid = MicroGrid { x: (0.5, 3.0), y: (-1.0, 1.0), nx: 3, ny: 3 };
        for nu in [1, 2] {
            let r = ScalingRegime::new(RegimeKind::HardEdge, 50, 1.0).unwrap().with_nu(nu).unwrap();
            let t = convergence_study(&r, Beta::Two, Observable::Kernel, &grid, &[50, 100, 200]).unwrap();
            let rel: Vec<f64> = t.rows.iter().map(|r| r.relative).collect();
            assert!(t.strictly_decreasing() && rel[2] < 0.6 * rel[0] && rel[2] < 2e-2, "ν={nu}: {rel:?}");
        }
    }

    #[test]
    fn beta4_pair_correlation_uses_squared_amplitude() {
        let pts = [c(0.1, 0.3), c(0.9, 0.5)];
        let dev = |n| {
            let r = ScalingRegime::new(RegimeKind::Bulk, n, 1.0).unwrap();
            let f = rescaled_correlation(&r, Beta::Four, &pts).unwrap();
            (f / limiting_correlation(&r, Beta::Four, &pts).unwrap() - 1.0).abs()
        };
        let (d1, d2) = (dev(200), dev(800));
        assert!(d2 < d1 && d2 < 5e-2, "{d1} {d2}");
    }

    #[test]
    fn kernel_observable_is_beta2_only() {
        let r = ScalingRegime::new(RegimeKind::Bulk, 50, 1.0).unwrap();
        assert!(convergence_study(&r, Beta::Four, Observable::Kernel, &MicroGrid::default_for(RegimeKind::Bulk), &[50]).is_err());
        assert!(convergence_study(&r, Beta::Two, Observable::Kernel, &MicroGrid::default_for(RegimeKind::Bulk), &[100, 50]).is_err());
    }
}
