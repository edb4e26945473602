//! Bessel family: hard-edge kernels for chiral ensembles with index ν.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{integrate, unit_rule, Atom, Domain, Element, KernelPoint, KernelValue};
use crate::finite_kernels::trapezoid_log_line;
use crate::specfun::quadrature::finite_panels;
use crate::specfun::{bessel_j, bessel_k_scaled, expint_e, gamma, ln_erfc, PanelRule, RuleKind};
use crate::{sign, Beta, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn j(order: i64, z: Complex64) -> Result<Complex64> {
    bessel_j(order as i32, z)
}

/// (J_ν(√x₁)√x₂J_{ν−1}(√x₂) − (x₁↔x₂)) / (2(x₁−x₂))
pub fn bessel_k2_ratio(nu: usize, x1: f64, x2: f64) -> Result<f64> {
    check_line(x1)?;
    check_line(x2)?;
    if x1 == x2 {
        return bessel_k2_integral(nu, x1, x2);
    }
    let (r1, r2) = (c(x1.sqrt()), c(x2.sqrt()));
    let n = nu as i64;
    let num = j(n, r1)? * r2 * j(n - 1, r2)? - j(n, r2)? * r1 * j(n - 1, r1)?;
    Ok(num.re / (2.0 * (x1 - x2)))
}

/// ½∫_0^1 t J_ν(√x₁t) J_ν(√x₂t) dt
pub fn bessel_k2_integral(nu: usize, x1: f64, x2: f64) -> Result<f64> {
    check_line(x1)?;
    check_line(x2)?;
    Ok(k2_core(nu, 0.0, c(x1), c(x2))?.re)
}

/// ½∫_0^1 t e^{−2σ²t²} J_ν(t√z₁) J_ν(t√z₂) dt
fn k2_core(nu: usize, sigma: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    let (r1, r2) = (z1.sqrt(), z2.sqrt());
    let rule = unit_rule(r1.norm().max(r2.norm()))?;
    let n = nu as i64;
    let v = integrate(&rule, |t| Ok(t * (-2.0 * sigma * sigma * t * t).exp() * j(n, r1 * t)? * j(n, r2 * t)?))?;
    Ok(0.5 * v)
}

fn check_line(x: f64) -> Result<()> {
    if x < 0.0 {
        return Err(Error::Domain(format!("Bessel kernels on the line need x ≥ 0, got {x}")));
    }
    Ok(())
}

/// Tensor Gauss-Legendre quadrature of f(s, t) over the unit square.
fn unit_square(freq: f64, mut f: impl FnMut(f64, f64) -> Result<Complex64>) -> Result<Complex64> {
    let rule = unit_rule(freq)?;
    let mut acc = ZERO;
    for (&s, &ws) in rule.nodes().iter().zip(rule.weights()) {
        for (&t, &wt) in rule.nodes().iter().zip(rule.weights()) {
            acc += f(s, t)? * ws * wt;
        }
    }
    Ok(acc)
}

/// ∫_0^1dt∫_0^1ds s e^{−2σ²s²(1+t²)} (J_{2ν}(2√u st)J_{2ν}(2√v s) − (u↔v)); σ = 0 gives the line form.
fn w4_core(nu: usize, sigma: f64, u: Complex64, v: Complex64) -> Result<Complex64> {
    let (a, b) = (2.0 * u.sqrt(), 2.0 * v.sqrt());
    let m = 2 * nu as i64;
    let s2 = sigma * sigma;
    unit_square(a.norm().max(b.norm()), |s, t| {
        let damp = (-2.0 * s2 * s * s * (1.0 + t * t)).exp();
        let d = j(m, a * s * t)? * j(m, b * s)? - j(m, b * s * t)? * j(m, a * s)?;
        Ok(s * damp * d)
    })
}

fn line_beta4(nu: usize, e: Element, x1: f64, x2: f64) -> Result<Complex64> {
    let (a, b) = (2.0 * x1.sqrt(), 2.0 * x2.sqrt());
    let m = 2 * nu as i64;
    let freq = a.max(b);
    match e {
        Element::K => {
            let v = unit_square(freq, |s, t| {
                let d = j(m + 1, c(a * s * t))? * j(m + 1, c(b * s))? - j(m + 1, c(b * s * t))? * j(m + 1, c(a * s))?;
                Ok(t * s.powi(3) * d)
            })?;
            Ok(2.0 * v)
        }
        Element::G => {
            let v = unit_square(freq, |s, t| {
                let d = j(m, c(a * s * t))? * j(m + 1, c(b * s))? - t * j(m, c(a * s))? * j(m + 1, c(b * s * t))?;
                Ok(s * s * d)
            })?;
            Ok(-2.0 * x1.sqrt() * v)
        }
        Element::W => Ok(2.0 * (x1 * x2).sqrt() * w4_core(nu, 0.0, c(x1), c(x2))?),
        _ => unreachable!("validated"),
    }
}

/// ∫_0^1 ds s² e^{−2σ²s²} (√z₁J_{ν+1}(s√z₁)J_ν(s√z₂) − (z₁↔z₂))
fn k1_core(nu: usize, sigma: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    let (r1, r2) = (z1.sqrt(), z2.sqrt());
    let n = nu as i64;
    let rule = unit_rule(r1.norm().max(r2.norm()))?;
    integrate(&rule, |s| {
        let d = r1 * j(n + 1, r1 * s)? * j(n, r2 * s)? - r2 * j(n + 1, r2 * s)? * j(n, r1 * s)?;
        Ok(s * s * (-2.0 * sigma * sigma * s * s).exp() * d)
    })
}

/// ∫_a^∞ J_m(s) ds
fn j_tail(m: i64, a: f64) -> Result<f64> {
    let total = if m >= 0 || m % 2 == 0 { 1.0 } else { -1.0 };
    if a == 0.0 {
        return Ok(total);
    }
    let rule = finite_panels(0.0, a, 2.0, 24)?;
    let head = integrate(&rule, |s| j(m, c(s)))?;
    Ok(total - head.re)
}

fn g_line_beta1(nu: usize, x1: f64, x2: f64, tail: f64) -> Result<f64> {
    let (r1, r2) = (x1.sqrt(), x2.sqrt());
    let n = nu as i64;
    let rule = unit_rule(r1.max(r2))?;
    let first = integrate(&rule, |t| Ok(t * j(n - 1, c(r1 * t))? * j(n - 1, c(r2 * t))?))?.re;
    Ok(-0.5 * first - j(n, c(r1))?.re * tail / (4.0 * r1))
}

/// −∫_{x₁}^{x₂} G(s, x₂) ds, integrated in u = √s.
fn w_line_beta1(nu: usize, x1: f64, x2: f64) -> Result<f64> {
    let (r1, r2) = (x1.sqrt(), x2.sqrt());
    if r1 == r2 {
        return Ok(0.0);
    }
    let n = nu as i64;
    let tail = j_tail(n - 2, r2)?;
    let (lo, hi, orient) = if r1 < r2 { (r1, r2, 1.0) } else { (r2, r1, -1.0) };
    let rule = finite_panels(lo, hi, 1.0, 24)?;
    let inner = unit_rule(hi)?;
    let mut acc = 0.0;
    for (&u, &w) in rule.nodes().iter().zip(rule.weights()) {
        let first = integrate(&inner, |t| Ok(t * j(n - 1, c(u * t))? * j(n - 1, c(r2 * t))?))?.re;
        // 2u G(u², x₂)
        let g2u = -u * first - 0.5 * j(n, c(u))?.re * tail;
        acc += g2u * w;
    }
    Ok(-orient * acc)
}

fn real_line(p: &KernelPoint) -> Result<KernelValue> {
    let (x1, x2) = (p.z1.re, p.z2.re);
    check_line(x1)?;
    check_line(x2)?;
    let nu = p.nu;
    let v = match (p.beta, p.element) {
        (Beta::Two, _) => c(bessel_k2_integral(nu, x1, x2)?),
        (Beta::Four, e) => line_beta4(nu, e, x1, x2)?,
        (Beta::One, e) => {
            if x1 == 0.0 || x2 == 0.0 {
                return Err(Error::Domain("β=1 Bessel kernels are singular at the origin".into()));
            }
            match e {
                Element::K => -k1_core(nu, 0.0, c(x1), c(x2))? / (8.0 * (x1 * x2).sqrt()),
                Element::G | Element::GReal => c(g_line_beta1(nu, x1, x2, j_tail(nu as i64 - 2, x2.sqrt())?)?),
                Element::W => {
                    return Ok(KernelValue::smooth(c(w_line_beta1(nu, x1, x2)?))
                        .with(Atom::Sign { coefficient: c(-0.5), argument: x1 - x2 }))
                }
                _ => unreachable!("validated"),
            }
        }
    };
    Ok(KernelValue::smooth(v))
}

/// K_{2ν}(|z|/4σ²) e^{x/4σ²}, the hard-edge weight pairing w(z)w(z*) for β=4.
fn w4_weight(nu: usize, sigma: f64, z: Complex64) -> Result<f64> {
    let s4 = 4.0 * sigma * sigma;
    let r = z.norm() / s4;
    let k = bessel_k_scaled(2.0 * nu as f64, c(r))?.re;
    Ok(k * ((z.re - z.norm()) / s4).exp())
}

fn k4_complex(nu: usize, sigma: f64, u: Complex64, v: Complex64) -> Result<Complex64> {
    Ok(w4_core(nu, sigma, u, v)? / sigma.powi(4))
}

fn k1_complex(nu: usize, sigma: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    Ok(k1_core(nu, sigma, z1, z2)? / (256.0 * PI * sigma * sigma))
}

/// e^{x/4σ²} ∫_0^∞ dt/t e^{−t(z²+z*²)/64σ⁴ − 1/4t} K_{ν/2}(t|z|²/32σ⁴) erfc(√t|y|/4σ²)
fn com_weight(nu: usize, sigma: f64, z: Complex64) -> Result<f64> {
    let peaked = z.re != 0.0 && sigma * sigma < z.re.abs();
    com_weight_by(nu, sigma, z, peaked, 1.0)
}

fn com_weight_by(nu: usize, sigma: f64, z: Complex64, peaked: bool, refine: f64) -> Result<f64> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("hard-edge weight is singular at z = 0".into()));
    }
    let s4 = sigma.powi(4);
    let quad = 2.0 * (z.re * z.re - z.im * z.im);
    let mod2 = z.norm_sqr();
    let order = 0.5 * nu as f64;
    let mut err = None;
    let integrand = |u: f64| {
        let t = u.exp();
        let karg = t * mod2 / (32.0 * s4);
        match bessel_k_scaled(order, c(karg)) {
            Ok(k) => {
                let expo = z.re / (4.0 * sigma * sigma) - t * quad / (64.0 * s4) - 0.25 / t - karg
                    + ln_erfc(t.sqrt() * z.im.abs() / (4.0 * sigma * sigma));
                k * expo.exp()
            }
            Err(e) => {
                err = Some(e);
                ZERO
            }
        }
    };
    // the exponent is −x²t/16σ⁴ − 1/4t + …, peaked at t = 2σ²/|x| with width 2σ/√|x| in ln t
    let v = if peaked {
        let center = (2.0 * sigma * sigma / z.re.abs()).ln();
        trapezoid_peaked(center, 0.2 * sigma / z.re.abs().sqrt() / refine, integrand)
    } else {
        trapezoid_log_line(integrand)
    };
    match err {
        Some(e) => Err(e),
        None => Ok(v.re),
    }
}

/// Trapezoid sum of a function decaying doubly exponentially on both sides of `center`.
fn trapezoid_peaked(center: f64, step: f64, mut f: impl FnMut(f64) -> Complex64) -> Complex64 {
    let mut sum = f(center);
    for dir in [1.0, -1.0] {
        let mut quiet = 0;
        for k in 1..20_000 {
            let term = f(center + dir * k as f64 * step);
            sum += term;
            if term.norm() <= 1e-18 * sum.norm() {
                quiet += 1;
                if quiet > 10 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
    }
    sum * step
}

fn g_com(nu: usize, sigma: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    let s = sign(z2.im);
    if s == 0.0 {
        return Ok(ZERO);
    }
    Ok(Complex64::new(0.0, -2.0 * s) * com_weight(nu, sigma, z2)? * k1_complex(nu, sigma, z1, z2.conj())?)
}

/// 2 e^{y/8σ²} K_{ν/2}(|y|/8σ²)
fn h(nu: usize, sigma: f64, y: f64) -> Result<f64> {
    let s8 = 8.0 * sigma * sigma;
    let k = bessel_k_scaled(0.5 * nu as f64, c(y.abs() / s8))?.re;
    Ok(2.0 * ((y - y.abs()) / s8).exp() * k)
}

/// Breaks on [0, 1] graded towards 0, where the weight factors are singular.
fn graded_unit() -> Vec<f64> {
    vec![0.0, 1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 0.05, 0.2, 0.5, 1.0]
}

fn g_real(nu: usize, sigma: f64, x1: f64, x2: f64) -> Result<Complex64> {
    if x2 == 0.0 {
        return Err(Error::Domain("G_real is singular at x₂ = 0".into()));
    }
    let s2 = sigma * sigma;
    let s8 = 8.0 * s2;
    let z1 = c(x1);
    // (sign x₂)^{ν/2} on the principal branch
    let phase = if x2 > 0.0 { c(1.0) } else { Complex64::from_polar(1.0, 0.5 * PI * nu as f64) };
    let minus_i_nu = Complex64::new(0.0, -1.0).powu(nu as u32);

    // ∫_{−∞}^0 dy with y = −8σ²u
    let u_max = {
        let v = ((8.0 * s2).sqrt() + (8.0 * s2 + 320.0).sqrt()) / 4.0;
        (v * v).max(45.0)
    };
    let mut breaks: Vec<f64> = graded_unit();
    let mut b = 1.0;
    while b < u_max {
        b = (b + 1.0).min(u_max);
        breaks.push(b);
    }
    let neg_rule = PanelRule::new(breaks, 24, RuleKind::FiniteLegendre)?;
    let neg = s8 * integrate(&neg_rule, |u| {
        let y = -s8 * u;
        Ok(k1_complex(nu, sigma, z1, c(y))? * h(nu, sigma, y)?)
    })?;

    let pos_rule = PanelRule::new(graded_unit(), 24, RuleKind::FiniteLegendre)?;
    let pos = x2 * integrate(&pos_rule, |v| {
        let y = x2 * v;
        Ok(k1_complex(nu, sigma, z1, c(y))? * h(nu, sigma, y)?)
    })?;

    let r1 = z1.sqrt();
    let n = nu as i64;
    let a = (1.0 - nu as f64) / 2.0;
    let bb = (-1.0 - nu as f64) / 2.0;
    let s_rule = unit_rule(r1.norm())?;
    let tail_int = integrate(&s_rule, |s| {
        let x = s2 * s * s;
        let (ea, eb) = (expint_e(a, x)?, expint_e(bb, x)?);
        let term = 0.5 * r1 * ea * j(n + 1, r1 * s)? - s2 * s * (eb - ea) * j(n, r1 * s)?;
        Ok((-x).exp() * s.powi(nu as i32 + 2) * term)
    })?;
    let bracket = -(-s2).exp() / sigma * j(n, r1)? + 2.0 * sigma.powi(nu as i32) / gamma(0.5 * (nu as f64 + 1.0)) * tail_int;

    let braces = minus_i_nu * neg + 2.0 / phase * pos - bracket / (32.0 * PI.sqrt());
    Ok(-h(nu, sigma, x2)? / phase * braces)
}

fn complex_plane(p: &KernelPoint) -> Result<KernelValue> {
    let (sigma, nu) = (p.sigma, p.nu);
    let (z1, z2) = (p.z1, p.z2);
    let v = match (p.beta, p.element) {
        (Beta::Two, _) => {
            let s4 = 4.0 * sigma * sigma;
            let k1 = bessel_k_scaled(nu as f64, c(z1.norm() / s4))?.re;
            let k2 = bessel_k_scaled(nu as f64, c(z2.norm() / s4))?.re;
            let expo = (z1.re - z1.norm() + z2.re - z2.norm()) / (2.0 * s4);
            (k1 * k2).sqrt() * expo.exp() / (4.0 * PI * sigma * sigma) * k2_core(nu, sigma, z1, z2)?
        }
        (Beta::Four, Element::K) => k4_complex(nu, sigma, z1, z2)?,
        (Beta::Four, Element::G) => {
            (z2 - z2.conj()) * w4_weight(nu, sigma, z2)? * k4_complex(nu, sigma, z1, z2.conj())?
        }
        (Beta::Four, Element::W) => {
            -(z1 - z1.conj()) * (z2 - z2.conj()) * w4_weight(nu, sigma, z1)? * w4_weight(nu, sigma, z2)?
                * k4_complex(nu, sigma, z1.conj(), z2.conj())?
        }
        (Beta::One, Element::K) => k1_complex(nu, sigma, z1, z2)?,
        (Beta::One, Element::GCom) => g_com(nu, sigma, z1, z2)?,
        (Beta::One, Element::GReal) => g_real(nu, sigma, z1.re, z2.re)?,
        (Beta::One, Element::W) => {
            return Err(Error::Unsupported(
                "the deformed β=1 Bessel W is not available in closed form".into(),
            ))
        }
        _ => unreachable!("validated"),
    };
    Ok(KernelValue::smooth(v))
}

pub(super) fn regular_part(p: &KernelPoint) -> Result<(Complex64, Complex64)> {
    let (sigma, nu) = (p.sigma, p.nu);
    let (x1, x2) = (p.z1.re, p.z2.re);
    check_line(x1)?;
    check_line(x2)?;
    let root = (x1 * x2).sqrt();
    match (p.beta, p.element) {
        (Beta::Two, _) => {
            let s4 = 4.0 * sigma * sigma;
            let k1 = bessel_k_scaled(nu as f64, c(x1 / s4))?.re;
            let k2 = bessel_k_scaled(nu as f64, c(x2 / s4))?.re;
            Ok((k2_core(nu, sigma, p.z1, p.z2)?, c((k1 * k2).sqrt() / (4.0 * PI * sigma * sigma))))
        }
        (Beta::Four, Element::W) | (Beta::One, Element::K) if root == 0.0 => {
            Err(Error::Domain("Hermitian limit needs x₁, x₂ > 0 here".into()))
        }
        (Beta::Four, Element::W) => {
            Ok((2.0 * root * w4_core(nu, sigma, p.z1, p.z2)?, c(1.0 / (2.0 * root * sigma.powi(4)))))
        }
        (Beta::One, Element::K) => {
            let v = -k1_core(nu, sigma, p.z1, p.z2)? / (8.0 * root);
            Ok((v, c(-8.0 * root / (256.0 * PI * sigma * sigma))))
        }
        (Beta::One, Element::GCom) => {
            let (z1, z2) = super::hermitian::strip_points(p);
            Ok((sigma * g_com(nu, sigma, z1, z2)?, c(1.0 / sigma)))
        }
        (Beta::One, Element::W) => Err(Error::Unsupported("the deformed β=1 Bessel W is not available in closed form".into())),
        _ => Err(super::hermitian::not_comparable(p)),
    }
}

pub fn bessel_kernel(p: &KernelPoint) -> Result<KernelValue> {
    p.validate()?;
    if p.family != super::KernelFamily::Bessel {
        return Err(Error::InvalidParameter("not a Bessel kernel point".into()));
    }
    match p.domain {
        Domain::RealLine => real_line(p),
        Domain::ComplexPlane => complex_plane(p),
    }
}
