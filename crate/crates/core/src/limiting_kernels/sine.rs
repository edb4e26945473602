//! Sine family: bulk kernels. Every element is an integral over t ∈ [0, 1].

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{integrate, sinc, unit_rule, Atom, Domain, Element, KernelPoint, KernelValue};
use crate::specfun::erfc;
use crate::{sign, Beta, Error, Result};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// ∫_0^1 e^{−γt²} f(t) dt for an integrand oscillating at frequency |d|.
fn unit(d: Complex64, gamma: f64, f: impl Fn(f64) -> Complex64) -> Result<Complex64> {
    let rule = unit_rule(d.norm())?;
    integrate(&rule, |t| Ok((-gamma * t * t).exp() * f(t)))
}

/// sin(x₁−x₂)/(π(x₁−x₂))
pub fn sine_k2_ratio(x1: f64, x2: f64) -> f64 {
    sinc(c(x1 - x2)).re / PI
}

/// (1/π)∫_0^1 cos((x₁−x₂)t) dt
pub fn sine_k2_integral(x1: f64, x2: f64) -> Result<f64> {
    let d = c(x1 - x2);
    Ok(unit(d, 0.0, |t| (d * t).cos())?.re / PI)
}

/// (√2/(π^{3/2}σ³)) ∫_0^1 dt/t e^{−2σ²t²} sin(2(u−v)t)
fn k4_complex(sigma: f64, u: Complex64, v: Complex64) -> Result<Complex64> {
    let d = 2.0 * (u - v);
    let i = unit(d, 2.0 * sigma * sigma, |t| d * sinc(d * t))?;
    Ok(std::f64::consts::SQRT_2 / (PI.powf(1.5) * sigma.powi(3)) * i)
}

fn w4(sigma: f64, z: Complex64) -> f64 {
    (-2.0 * z.im * z.im / (sigma * sigma)).exp()
}

/// (1/π) ∫_0^1 t e^{−σ²t²} sin((v−u)t) dt
fn k1_complex(sigma: f64, u: Complex64, v: Complex64) -> Result<Complex64> {
    let d = v - u;
    Ok(unit(d, sigma * sigma, |t| t * (d * t).sin())? / PI)
}

fn real_line(p: &KernelPoint) -> Result<KernelValue> {
    let (x1, x2) = (p.z1.re, p.z2.re);
    let d = c(x1 - x2);
    let v = match (p.beta, p.element) {
        (Beta::Two, _) => c(sine_k2_integral(x1, x2)?),
        (Beta::Four, Element::K) => 2.0 / PI * unit(d, 0.0, |t| t * (2.0 * d * t).sin())?,
        (Beta::Four, Element::G) => -unit(d, 0.0, |t| (2.0 * d * t).cos())? / PI,
        (Beta::Four, Element::W) => unit(d, 0.0, |t| 2.0 * d * sinc(2.0 * d * t))? / (2.0 * PI),
        (Beta::One, Element::K) => k1_complex(0.0, p.z1, p.z2)?,
        (Beta::One, Element::G | Element::GReal) => -unit(d, 0.0, |t| (d * t).cos())? / PI,
        (Beta::One, Element::W) => {
            let si = unit(d, 0.0, |t| d * sinc(d * t))?;
            return Ok(KernelValue::smooth(-si / PI).with(Atom::Sign { coefficient: c(0.5), argument: x1 - x2 }));
        }
        _ => unreachable!("validated"),
    };
    Ok(KernelValue::smooth(v))
}

fn g_com(sigma: f64, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    let s = sign(z2.im);
    if s == 0.0 {
        return Ok(c(0.0));
    }
    Ok(Complex64::new(0.0, -2.0 * s) * erfc(z1.im.abs() / sigma) * k1_complex(sigma, z1, z2.conj())?)
}

fn complex_plane(p: &KernelPoint) -> Result<KernelValue> {
    let sigma = p.sigma;
    let (z1, z2) = (p.z1, p.z2);
    let v = match (p.beta, p.element) {
        (Beta::Two, _) => {
            let d = z1 - z2;
            let gauss = (-(z1.im * z1.im + z2.im * z2.im) / (2.0 * sigma * sigma)).exp();
            gauss / (sigma * PI.powf(1.5)) * unit(d, sigma * sigma, |t| (d * t).cos())?
        }
        (Beta::Four, Element::K) => k4_complex(sigma, z1, z2)?,
        (Beta::Four, Element::G) => (z2 - z2.conj()) * w4(sigma, z2) * k4_complex(sigma, z1, z2.conj())?,
        (Beta::Four, Element::W) => {
            -(z1 - z1.conj()) * (z2 - z2.conj()) * w4(sigma, z1) * w4(sigma, z2) * k4_complex(sigma, z1.conj(), z2.conj())?
        }
        (Beta::One, Element::K) => k1_complex(sigma, z1, z2)?,
        (Beta::One, Element::GReal) => {
            let d = z1 - z2;
            -unit(d, sigma * sigma, |t| (d * t).cos())? / PI
        }
        (Beta::One, Element::GCom) => g_com(sigma, z1, z2)?,
        (Beta::One, Element::W) => {
            return Err(Error::Unsupported(
                "the deformed β=1 sine W is not available in closed form".into(),
            ))
        }
        _ => unreachable!("validated"),
    };
    Ok(KernelValue::smooth(v))
}

pub(super) fn regular_part(p: &KernelPoint) -> Result<(Complex64, Complex64)> {
    let sigma = p.sigma;
    let (x1, x2) = (p.z1, p.z2);
    let d = x1 - x2;
    match (p.beta, p.element) {
        (Beta::Two, _) => Ok((unit(d, sigma * sigma, |t| (d * t).cos())? / PI, c(1.0 / (sigma * PI.sqrt())))),
        (Beta::Four, Element::W) => {
            let v = unit(d, 2.0 * sigma * sigma, |t| 2.0 * d * sinc(2.0 * d * t))? / (2.0 * PI);
            Ok((v, c(2.0 * std::f64::consts::SQRT_2 / (PI.sqrt() * sigma.powi(3)))))
        }
        (Beta::One, Element::GReal) => Ok((-unit(d, sigma * sigma, |t| (d * t).cos())? / PI, c(1.0))),
        (Beta::One, Element::K) => Ok((k1_complex(sigma, x1, x2)?, c(1.0))),
        (Beta::One, Element::GCom) => {
            let (z1, z2) = super::hermitian::strip_points(p);
            Ok((sigma * g_com(sigma, z1, z2)?, c(1.0 / sigma)))
        }
        (Beta::One, Element::W) => Err(Error::Unsupported("the deformed β=1 sine W is not available in closed form".into())),
        _ => Err(super::hermitian::not_comparable(p)),
    }
}

pub fn sine_kernel(p: &KernelPoint) -> Result<KernelValue> {
    p.validate()?;
    if p.family != super::KernelFamily::Sine {
        return Err(Error::InvalidParameter("not a sine kernel point".into()));
    }
    match p.domain {
        Domain::RealLine => real_line(p),
        Domain::ComplexPlane => complex_plane(p),
    }
}
