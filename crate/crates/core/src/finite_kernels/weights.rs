//! One-point weights and the antisymmetric two-point weights of the
//! complex-eigenvalue ensembles.

use num_complex::Complex64;

use crate::specfun::{bessel_k_scaled, ln_erfc};
use crate::{Beta, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightFamily {
    Ginibre,
    Chiral,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct WeightSpec {
    pub beta: Beta,
    pub family: WeightFamily,
    pub tau: f64,
    pub nu: usize,
}

impl WeightSpec {
    pub fn new(beta: Beta, family: WeightFamily, tau: f64, nu: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&tau) {
            return Err(Error::InvalidParameter(format!("tau must lie in [0, 1), got {tau}")));
        }
        if nu != 0 && family == WeightFamily::Ginibre {
            return Err(Error::InvalidParameter("nu must be 0 for Ginibre weights".into()));
        }
        Ok(Self { beta, family, tau, nu })
    }

    pub fn ginibre(beta: Beta, tau: f64) -> Self {
        Self { beta, family: WeightFamily::Ginibre, tau, nu: 0 }
    }

    pub fn chiral(beta: Beta, tau: f64, nu: usize) -> Self {
        Self { beta, family: WeightFamily::Chiral, tau, nu }
    }
}

/// ln w₂(z) = -(|z|² - τ Re z²)/(1-τ²).
pub fn ln_ginibre_w2(tau: f64, z: Complex64) -> f64 {
    -(z.norm_sqr() - tau * (z * z).re) / (1.0 - tau * tau)
}

/// ln of |z|^ν e^{2τx/(1-τ²)} K_ν(2|z|/(1-τ²)).
pub fn ln_chiral_w2(tau: f64, nu: usize, z: Complex64) -> Result<f64> {
    let d = 1.0 - tau * tau;
    let r = z.norm();
    if r == 0.0 {
        return Err(Error::Domain("chiral weight is singular at z = 0".into()));
    }
    let arg = 2.0 * r / d;
    let k = bessel_k_scaled(nu as f64, Complex64::new(arg, 0.0))?.re;
    Ok(nu as f64 * r.ln() + 2.0 * tau * z.re / d + k.ln() - arg)
}

/// ln w(z) for every weight with a one-point form.
pub fn ln_weight(spec: &WeightSpec, z: Complex64) -> Result<f64> {
    let tau = spec.tau;
    match (spec.family, spec.beta) {
        (WeightFamily::Ginibre, Beta::Two) => Ok(ln_ginibre_w2(tau, z)),
        (WeightFamily::Ginibre, Beta::Four) => Ok(0.5 * ln_ginibre_w2(tau, z)),
        (WeightFamily::Ginibre, Beta::One) => {
            let erfc_arg = 2.0 * z.im.abs() / (2.0 * (1.0 - tau * tau)).sqrt();
            Ok(0.5 * (ln_erfc(erfc_arg) - (z.re * z.re - z.im * z.im) / (1.0 + tau)))
        }
        (WeightFamily::Chiral, Beta::Two) => ln_chiral_w2(tau, spec.nu, z),
        (WeightFamily::Chiral, Beta::Four) => Ok(0.5 * ln_chiral_w2(tau, 2 * spec.nu, z)?),
        (WeightFamily::Chiral, Beta::One) => Err(Error::Unsupported(
            "the chiral β=1 ensemble has only a bivariate weight (h_ν, g_ν)".into(),
        )),
    }
}

pub fn weight(spec: &WeightSpec, z: Complex64) -> Result<f64> {
    ln_weight(spec, z).map(f64::exp)
}

/// h_ν(x) = 2|x|^{ν/2} e^{τx/(1-τ²)} K_{ν/2}(|x|/(1-τ²)).
pub fn h_nu(tau: f64, nu: usize, x: f64) -> Result<f64> {
    let d = 1.0 - tau * tau;
    if x == 0.0 {
        return Err(Error::Domain("h_ν is singular at x = 0".into()));
    }
    let arg = x.abs() / d;
    let k = bessel_k_scaled(0.5 * nu as f64, Complex64::new(arg, 0.0))?.re;
    Ok(2.0 * (0.5 * nu as f64 * x.abs().ln() + tau * x / d - arg).exp() * k)
}

/// g_ν(z₁, z₂) for Re(z₁z₂) > 0, by trapezoid quadrature in ln t.
pub fn g_nu(tau: f64, nu: usize, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    let d = 1.0 - tau * tau;
    let d2 = d * d;
    let p = z1 * z2;
    if !(p.re > 0.0) {
        return Err(Error::Domain(format!("g_ν needs Re(z₁z₂) > 0, got {p}")));
    }
    let s = z1 * z1 + z2 * z2;
    let sep = (z2 - z1).norm() / d;
    let order = 0.5 * nu as f64;
    let mut err = None;
    // ∫ dt/t f(t) = ∫ du f(e^u)
    let integral = trapezoid_log_line(|u| {
        let t = u.exp();
        let karg = 2.0 * p * t / d2;
        match bessel_k_scaled(order, karg) {
            Ok(k) => {
                let expo = -s * t / d2 - 0.25 / t - karg + ln_erfc(sep * t.sqrt());
                expo.exp() * k
            }
            Err(e) => {
                err = Some(e);
                Complex64::new(0.0, 0.0)
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let pre = (0.5 * nu as f64 * p.norm().ln()).exp();
    Ok(2.0 * pre * (tau * (z1 + z2) / d).exp() * integral)
}

/// ∫_ℝ f(u) du for integrands decaying doubly exponentially in both
/// directions (as e^{-1/(4t)} and e^{-ct} do in u = ln t).
pub(crate) fn trapezoid_log_line<F: FnMut(f64) -> Complex64>(mut f: F) -> Complex64 {
    const H: f64 = 0.1;
    let start = -8.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    let mut k = 0;
    while k < 4000 {
        let term = f(start + k as f64 * H);
        sum += term;
        if sum.norm() > 0.0 && term.norm() <= 1e-18 * sum.norm() {
            quiet += 1;
            if quiet > 10 {
                break;
            }
        } else {
            quiet = 0;
        }
        k += 1;
    }
    sum * H
}

/// Delta-resolved parts of the antisymmetric weight F(z₁, z₂):
///
/// F = c(z₁) δ²(z₁ - z₂*) + r(x₁, x₂) δ(y₁)δ(y₂) sign(x₂ - x₁),
///
/// with `conjugate` returning c(z) (z₂ = z* on the support) and `real` returning r.
#[derive(Debug, Clone, Copy)]
pub struct BivariateWeight {
    pub spec: WeightSpec,
}

pub fn bivariate_weight(spec: &WeightSpec) -> Result<BivariateWeight> {
    if spec.beta == Beta::Two {
        return Err(Error::InvalidParameter("bivariate weights exist for β = 1, 4 only".into()));
    }
    Ok(BivariateWeight { spec: *spec })
}

impl BivariateWeight {
    /// Coefficient of δ²(z₁ - z₂*) at z₁ = z, z₂ = z*.
    pub fn conjugate(&self, z: Complex64) -> Result<Complex64> {
        let s = &self.spec;
        let zc = z.conj();
        match (s.beta, s.family) {
            (Beta::Four, _) => {
                let w = (ln_weight(s, z)? + ln_weight(s, zc)?).exp();
                Ok(w * (z - zc))
            }
            (Beta::One, WeightFamily::Ginibre) => {
                let w = (ln_weight(s, z)? + ln_weight(s, zc)?).exp();
                Ok(Complex64::new(0.0, 2.0 * w * crate::sign(z.im)))
            }
            (Beta::One, WeightFamily::Chiral) => {
                Ok(Complex64::i() * g_nu(s.tau, s.nu, z, zc)? * crate::sign(z.im))
            }
            (Beta::Two, _) => unreachable!(),
        }
    }

    /// Coefficient of δ(y₁)δ(y₂)sign(x₂ - x₁); zero for β = 4.
    pub fn real(&self, x1: f64, x2: f64) -> Result<f64> {
        let s = &self.spec;
        match (s.beta, s.family) {
            (Beta::Four, _) => Ok(0.0),
            (Beta::One, WeightFamily::Ginibre) => {
                let a = ln_weight(s, Complex64::new(x1, 0.0))?;
                let b = ln_weight(s, Complex64::new(x2, 0.0))?;
                Ok((a + b).exp())
            }
            (Beta::One, WeightFamily::Chiral) => Ok(0.5 * h_nu(s.tau, s.nu, x1)? * h_nu(s.tau, s.nu, x2)?),
            (Beta::Two, _) => unreachable!(),
        }
    }

    /// One-point factor of the real part, r(x₁, x₂) = f(x₁) f(x₂).
    pub fn real_factor(&self, x: f64) -> Result<f64> {
        let s = &self.spec;
        match (s.beta, s.family) {
            (Beta::Four, _) => Ok(0.0),
            (Beta::One, WeightFamily::Ginibre) => ln_weight(s, Complex64::new(x, 0.0)).map(f64::exp),
            (Beta::One, WeightFamily::Chiral) => Ok(h_nu(s.tau, s.nu, x)? / std::f64::consts::SQRT_2),
            (Beta::Two, _) => unreachable!(),
        }
    }
}
