//! Airy family: soft-edge kernels on the real line and their deformations.
//! All semi-infinite integrals are written over the shift t ∈ [0, ∞) so the
//! same code serves real and complex arguments.

use num_complex::Complex64;

use super::{Atom, Domain, Element, KernelPoint, KernelValue};
use crate::specfun::quadrature::airy_panels;
use crate::specfun::{airy_ai, airy_pair, erfc, PanelRule};
use crate::{sign, Beta, Error, Result};

const TOL: f64 = 1e-16;
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Deformation parameters: growth factor σ² and Airy shift σ⁴/4 (both zero on the real line).
#[derive(Clone, Copy)]
struct Deform {
    sigma: f64,
    s2: f64,
    shift: f64,
}

impl Deform {
    fn new(sigma: f64) -> Self {
        let s2 = sigma * sigma;
        Self { sigma, s2, shift: s2 * s2 / 4.0 }
    }

    fn line() -> Self {
        Self::new(0.0)
    }

    /// e^{σ⁶/6 + σ²(a+b)/2}
    fn pair_factor(&self, a: Complex64, b: Complex64) -> Complex64 {
        (self.s2 * self.s2 * self.s2 / 6.0 + self.s2 * (a + b) / 2.0).exp()
    }

    /// e^{σ⁶/12 + σ²a/2}
    fn single_factor(&self, a: Complex64) -> Complex64 {
        (self.s2 * self.s2 * self.s2 / 12.0 + self.s2 * a / 2.0).exp()
    }
}

fn rule_for(d: &Deform, args: &[Complex64], decay_scale: f64, growth: f64) -> Result<PanelRule> {
    let lowest = args.iter().map(|a| a.re).fold(f64::INFINITY, f64::min);
    airy_panels(lowest + d.shift, decay_scale, growth, TOL)
}

fn shifted(rule: &PanelRule, d: &Deform, a: Complex64) -> Result<Vec<(Complex64, Complex64)>> {
    rule.nodes().iter().map(|&t| airy_pair(a + t + d.shift)).collect()
}

/// ∫_0^∞ e^{gt} Ai(a+t+c) Ai(b+t+c) dt for growths g = σ² and g = 0.
fn product_integrals(d: &Deform, a: Complex64, b: Complex64) -> Result<(Complex64, Complex64)> {
    let rule = rule_for(d, &[a, b], 0.63, d.s2)?;
    let (fa, fb) = (shifted(&rule, d, a)?, shifted(&rule, d, b)?);
    let mut grown = ZERO;
    let mut plain = ZERO;
    for (i, (&t, &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
        let p = fa[i].0 * fb[i].0 * w;
        grown += p * (d.s2 * t).exp();
        plain += p;
    }
    Ok((grown, plain))
}

/// ∫_0^∞ Ai(a+t) Ai'(b+t) dt on the real line.
fn product_prime_integral(a: f64, b: f64) -> Result<f64> {
    let d = Deform::line();
    let (a, b) = (Complex64::new(a, 0.0), Complex64::new(b, 0.0));
    let rule = rule_for(&d, &[a, b], 0.63, 0.0)?;
    let (fa, fb) = (shifted(&rule, &d, a)?, shifted(&rule, &d, b)?);
    Ok(rule.weights().iter().enumerate().map(|(i, &w)| (fa[i].0 * fb[i].1).re * w).sum())
}

/// ∫_0^∞ e^{σ²t/2} Ai(a+t+c) dt
fn tail(d: &Deform, a: Complex64) -> Result<Complex64> {
    let rule = rule_for(d, &[a], 1.0, d.s2 / 2.0)?;
    let f = shifted(&rule, d, a)?;
    Ok(rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .zip(&f)
        .map(|((&t, &w), v)| v.0 * (d.s2 * t / 2.0).exp() * w)
        .sum())
}

/// With f_a(s) = e^{σ²s/2} Ai(a+s+c) and C_a its running integral from 0,
/// returns (∫ f_a C_b, ∫ f_b C_a) over [0, ∞).
fn nested(d: &Deform, a: Complex64, b: Complex64) -> Result<(Complex64, Complex64)> {
    let rule = rule_for(d, &[a, b], 1.0, d.s2 / 2.0)?;
    let grow: Vec<f64> = rule.nodes().iter().map(|&t| (d.s2 * t / 2.0).exp()).collect();
    let fa: Vec<Complex64> = shifted(&rule, d, a)?.iter().zip(&grow).map(|(v, g)| v.0 * g).collect();
    let fb: Vec<Complex64> = shifted(&rule, d, b)?.iter().zip(&grow).map(|(v, g)| v.0 * g).collect();
    let (ca, cb) = (rule.running_integral(&fa), rule.running_integral(&fb));
    let mut ab = ZERO;
    let mut ba = ZERO;
    for (i, &w) in rule.weights().iter().enumerate() {
        ab += fa[i] * cb[i] * w;
        ba += fb[i] * ca[i] * w;
    }
    Ok((ab, ba))
}

/// (Ai(x₁)Ai'(x₂) − Ai'(x₁)Ai(x₂))/(x₁ − x₂), with Ai'² − xAi² on the diagonal.
pub fn airy_k2_ratio(x1: f64, x2: f64) -> Result<f64> {
    let (a1, d1) = airy_pair(Complex64::new(x1, 0.0))?;
    if x1 == x2 {
        return Ok((d1 * d1 - x1 * a1 * a1).re);
    }
    let (a2, d2) = airy_pair(Complex64::new(x2, 0.0))?;
    Ok(((a1 * d2 - d1 * a2) / (x1 - x2)).re)
}

/// ∫_0^∞ Ai(x₁+t) Ai(x₂+t) dt
pub fn airy_k2_integral(x1: f64, x2: f64) -> Result<f64> {
    Ok(product_integrals(&Deform::line(), Complex64::new(x1, 0.0), Complex64::new(x2, 0.0))?.0.re)
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn real_line(p: &KernelPoint) -> Result<KernelValue> {
    let (x1, x2) = (p.z1.re, p.z2.re);
    let d = Deform::line();
    let v = match (p.beta, p.element) {
        (Beta::Two, _) => c(airy_k2_integral(x1, x2)?),
        (Beta::Four, Element::K) => {
            let ai = airy_ai(c(x1))? * airy_ai(c(x2))?;
            c(-0.5 * product_prime_integral(x1, x2)?) - 0.25 * ai
        }
        (Beta::Four, Element::G) => {
            c(-0.5 * airy_k2_integral(x1, x2)?) + 0.25 * airy_ai(c(x1))? * tail(&d, c(x2))?
        }
        (Beta::Four, Element::W) => {
            let (ab, ba) = nested(&d, c(x1), c(x2))?;
            -0.25 * (ab - ba)
        }
        (Beta::One, Element::K) => {
            let ai = airy_ai(c(x1))? * airy_ai(c(x2))?;
            c(-product_prime_integral(x1, x2)?) - 0.5 * ai
        }
        (Beta::One, Element::G | Element::GReal) => g_real(&d, c(x1), c(x2))?,
        (Beta::One, Element::W) => {
            return Ok(KernelValue::smooth(w_line_beta1(x1, x2)?)
                .with(Atom::Sign { coefficient: c(-0.5), argument: x1 - x2 }))
        }
        _ => unreachable!("validated"),
    };
    Ok(KernelValue::smooth(v))
}

/// Smooth part of the printed β=1 W on the line, reduced to
/// ∫_0^∞ Ai(x₂+t) T(x₁+t) dt + T(x₂)/2 with T(a) = ∫_a^∞ Ai.
fn w_line_beta1(x1: f64, x2: f64) -> Result<Complex64> {
    let d = Deform::line();
    let (t1, t2) = (tail(&d, c(x1))?, tail(&d, c(x2))?);
    let (ab, _) = nested(&d, c(x2), c(x1))?;
    Ok(t1 * t2 - ab + 0.5 * t2)
}

/// G_real continued to complex arguments (β=1).
fn g_real(d: &Deform, a: Complex64, b: Complex64) -> Result<Complex64> {
    let (j, _) = product_integrals(d, a, b)?;
    let lead = d.single_factor(a) * airy_ai(a + d.shift)?;
    let big_b = d.single_factor(b) * tail(d, b)?;
    Ok(-d.pair_factor(a, b) * j - 0.5 * lead * (1.0 - big_b))
}

fn g_com(d: &Deform, z1: Complex64, z2: Complex64) -> Result<Complex64> {
    let s = sign(z2.im);
    if s == 0.0 {
        return Ok(ZERO);
    }
    let (grown, plain) = product_integrals(d, z1, z2.conj())?;
    let damp = (erfc(z1.im.abs() / d.sigma) * erfc(z2.im.abs() / d.sigma)).sqrt();
    let pref = d.pair_factor(c(z1.re), c(z2.re)) * damp;
    Ok(Complex64::new(0.0, -s / (2.0 * d.s2)) * (z1 - z2.conj()) * pref * (grown - plain))
}

/// e^{−(Im a)²/2σ²−(Im b)²/2σ²} e^{σ⁶/6+σ²(a+b)/2} I(a,b) / (8σ³√π),
/// I(a,b) = ∫∫_{0≤t≤s} e^{σ²(s+t)/2} (Ai(b+s+c)Ai(a+t+c) − (a↔b)).
fn k4_symmetric(d: &Deform, a: Complex64, b: Complex64) -> Result<Complex64> {
    let (ab, ba) = nested(d, a, b)?;
    let gauss = (-(a.im * a.im + b.im * b.im) / (2.0 * d.s2)).exp();
    let norm = 8.0 * d.sigma.powi(3) * std::f64::consts::PI.sqrt();
    Ok(gauss * d.pair_factor(a, b) * (ba - ab) / norm)
}

fn complex_plane(p: &KernelPoint) -> Result<KernelValue> {
    let d = Deform::new(p.sigma);
    let (z1, z2) = (p.z1, p.z2);
    let v = match (p.beta, p.element) {
        (Beta::Two, _) => {
            let gauss = (-(z1.im * z1.im + z2.im * z2.im) / (2.0 * d.s2)).exp();
            let (j, _) = product_integrals(&d, z1, z2)?;
            gauss * d.pair_factor(z1, z2) * j / (p.sigma * std::f64::consts::PI.sqrt())
        }
        (Beta::Four, Element::K) => k4_symmetric(&d, z1, z2)?,
        (Beta::Four, Element::G) => (z2 - z2.conj()) * k4_symmetric(&d, z1, z2.conj())?,
        (Beta::Four, Element::W) => -(z1 - z1.conj()) * (z2 - z2.conj()) * k4_symmetric(&d, z1.conj(), z2.conj())?,
        (Beta::One, Element::K) => Complex64::new(0.0, 0.5 * sign(z2.im)) * g_com(&d, z1, z2.conj())?,
        (Beta::One, Element::GReal) => g_real(&d, z1, z2)?,
        (Beta::One, Element::GCom) => g_com(&d, z1, z2)?,
        (Beta::One, Element::W) => return w_complex_beta1(&d, z1, z2),
        _ => unreachable!("validated"),
    };
    Ok(KernelValue::smooth(v))
}

fn w_complex_beta1(d: &Deform, z1: Complex64, z2: Complex64) -> Result<KernelValue> {
    let (s1, s2) = (sign(z1.im), sign(z2.im));
    let two_i = Complex64::new(0.0, 2.0);
    let mut smooth = ZERO;
    if s2 != 0.0 {
        smooth += two_i * s2 * g_real(d, z2.conj(), z1)?;
    }
    if s1 != 0.0 {
        smooth -= two_i * s1 * (g_real(d, z1.conj(), z2)? + g_com(d, z1.conj(), z2)?);
    }
    let (x1, x2) = (c(z1.re), c(z2.re));
    let (ab, _) = nested(d, x1, x2)?;
    let big_a = d.pair_factor(x1, x2) * ab;
    let b1 = d.single_factor(x1) * tail(d, x1)?;
    let b2 = d.single_factor(x2) * tail(d, x2)?;
    let real = -2.0 * big_a + b1 * b2 + b2 - b1 - sign(z2.re - z1.re);
    Ok(KernelValue::smooth(smooth)
        .with(Atom::RealDelta { coefficient: real })
        .with(Atom::ConjugateDelta { coefficient: -two_i * s1 }))
}

pub(super) fn regular_part(p: &KernelPoint) -> Result<(Complex64, Complex64)> {
    let d = Deform::new(p.sigma);
    let (x1, x2) = (p.z1, p.z2);
    let sqrt_pi = std::f64::consts::PI.sqrt();
    match (p.beta, p.element) {
        (Beta::Two, _) => Ok((d.pair_factor(x1, x2) * product_integrals(&d, x1, x2)?.0, c(1.0 / (p.sigma * sqrt_pi)))),
        (Beta::Four, Element::W) => {
            let (ab, ba) = nested(&d, x1, x2)?;
            Ok((0.25 * d.pair_factor(x1, x2) * (ba - ab), c(1.0 / (2.0 * p.sigma.powi(3) * sqrt_pi))))
        }
        (Beta::One, Element::GReal) => Ok((g_real(&d, x1, x2)?, c(1.0))),
        (Beta::One, Element::GCom) => {
            let (z1, z2) = super::hermitian::strip_points(p);
            Ok((p.sigma * g_com(&d, z1, z2)?, c(1.0 / p.sigma)))
        }
        _ => Err(super::hermitian::not_comparable(p)),
    }
}

pub fn airy_kernel(p: &KernelPoint) -> Result<KernelValue> {
    p.validate()?;
    if p.family != super::KernelFamily::Airy {
        return Err(Error::InvalidParameter("not an Airy kernel point".into()));
    }
    match p.domain {
        Domain::RealLine => real_line(p),
        Domain::ComplexPlane => complex_plane(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limiting_kernels::KernelFamily;

    fn line(beta: Beta, e: Element, x1: f64, x2: f64) -> Complex64 {
        airy_kernel(&KernelPoint::real(KernelFamily::Airy, beta, e, x1, x2)).unwrap().value()
    }

    fn plane(beta: Beta, e: Element, sigma: f64, z1: Complex64, z2: Complex64) -> KernelValue {
        airy_kernel(&KernelPoint::complex(KernelFamily::Airy, beta, e, sigma, z1, z2)).unwrap()
    }

    #[test]
    fn diagonal_at_origin() {
        let r = airy_k2_ratio(0.0, 0.0).unwrap();
        let i = airy_k2_integral(0.0, 0.0).unwrap();
        assert!((r - 0.06698748378).abs() < 1e-10, "{r}");
        assert!((i - r).abs() < 1e-12);
    }

    #[test]
    fn ratio_and_integral_forms_agree() {
        for &(x1, x2) in &[(-3.0, 1.5), (0.2, -0.7), (2.0, 4.0), (-6.0, -5.5), (1.0, 1.0 + 1e-3)] {
            let r = airy_k2_ratio(x1, x2).unwrap();
            let i = airy_k2_integral(x1, x2).unwrap();
            assert!((r - i).abs() < 1e-9, "{x1} {x2}: {r} vs {i}");
        }
    }

    #[test]
    fn beta4_k_is_derivative_of_g() {
        let h = 1e-4;
        for &(x1, x2) in &[(-1.0, 0.5), (0.3, 1.2), (-2.5, -0.4)] {
            let k = line(Beta::Four, Element::K, x1, x2);
            let fd = (line(Beta::Four, Element::G, x1, x2 + h) - line(Beta::Four, Element::G, x1, x2 - h)) / (2.0 * h);
            assert!((k - fd).norm() < 1e-6, "{k} vs {fd}");
        }
    }

    #[test]
    fn beta4_w_integrates_g() {
        // ∂W/∂x₁ = −G(x₁, x₂) for the line kernels
        let h = 1e-4;
        for &(x1, x2) in &[(-1.0, 0.5), (0.3, 1.2)] {
            let g = line(Beta::Four, Element::G, x1, x2);
            let fd = (line(Beta::Four, Element::W, x1 + h, x2) - line(Beta::Four, Element::W, x1 - h, x2)) / (2.0 * h);
            assert!((g + fd).norm() < 1e-6, "{g} vs {fd}");
        }
    }

    #[test]
    fn beta1_k_is_derivative_of_g() {
        let h = 1e-4;
        for &(x1, x2) in &[(-1.0, 0.5), (0.3, 1.2), (-2.5, -0.4)] {
            let k = line(Beta::One, Element::K, x1, x2);
            let fd = (line(Beta::One, Element::G, x1, x2 + h) - line(Beta::One, Element::G, x1, x2 - h)) / (2.0 * h);
            assert!((k - fd).norm() < 1e-6, "{k} vs {fd}");
        }
    }

    #[test]
    fn beta1_w_matches_direct_quadrature_of_g() {
        // −∫_{x₁}^∞ G(s,x₂) ds − ½∫_{x₁}^{x₂} Ai + ½∫_{x₁}^∞Ai ∫_{x₂}^∞Ai − ½ sign(x₁−x₂)
        let (x1, x2): (f64, f64) = (-0.8, 0.6);
        let rule = airy_panels(x1.min(x2), 1.0, 0.0, 1e-15).unwrap();
        let mut g_tail = 0.0;
        for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
            g_tail += line(Beta::One, Element::G, x1 + t, x2).re * w;
        }
        let d = Deform::line();
        let (t1, t2) = (tail(&d, c(x1)).unwrap().re, tail(&d, c(x2)).unwrap().re);
        let direct = -g_tail - 0.5 * (t1 - t2) + 0.5 * t1 * t2 - 0.5 * sign(x1 - x2);
        let w = line(Beta::One, Element::W, x1, x2).re;
        assert!((w - direct).abs() < 1e-9, "{w} vs {direct}");
    }

    #[test]
    fn beta1_printed_w_symmetric_part() {
        // W(x₁,x₂) + W(x₂,x₁) = T₁T₂ + (T₁+T₂)/2 for the printed form
        let d = Deform::line();
        let (x1, x2) = (-0.5, 1.3);
        let (t1, t2) = (tail(&d, c(x1)).unwrap().re, tail(&d, c(x2)).unwrap().re);
        let s = line(Beta::One, Element::W, x1, x2).re + line(Beta::One, Element::W, x2, x1).re;
        assert!((s - (t1 * t2 + 0.5 * (t1 + t2))).abs() < 1e-10);
    }

    #[test]
    fn beta4_line_w_is_antisymmetric() {
        let a = line(Beta::Four, Element::W, -0.4, 0.9);
        let b = line(Beta::Four, Element::W, 0.9, -0.4);
        assert!((a + b).norm() < 1e-12);
    }

    #[test]
    fn complex_beta2_schwarz_and_real_axis() {
        let sigma = 0.7;
        let (z1, z2) = (Complex64::new(-0.5, 0.3), Complex64::new(0.8, -0.2));
        let k = plane(Beta::Two, Element::K, sigma, z1, z2).smooth;
        let kc = plane(Beta::Two, Element::K, sigma, z1.conj(), z2.conj()).smooth;
        assert!((k - kc.conj()).norm() < 1e-12 * k.norm().max(1.0));
        let kr = plane(Beta::Two, Element::K, sigma, c(0.3), c(-0.2)).smooth;
        assert!(kr.im.abs() < 1e-14);
    }

    #[test]
    fn complex_beta4_g_reproduces_printed_form() {
        // (iy₂/(4σ³√π)) e^{−(y₁²+y₂²)/2σ²} e^{σ⁶/6+σ²(z₁+z₂*)/2} ∫∫ (Ai(z₂*+s+c)Ai(z₁+t+c) − (z₁↔z₂*))
        let sigma = 0.9;
        let (z1, z2) = (Complex64::new(0.2, 0.4), Complex64::new(-0.3, 0.5));
        let d = Deform::new(sigma);
        let (ab, ba) = nested(&d, z1, z2.conj()).unwrap();
        let gauss = (-(z1.im * z1.im + z2.im * z2.im) / (2.0 * d.s2)).exp();
        let printed = Complex64::new(0.0, z2.im) / (4.0 * sigma.powi(3) * std::f64::consts::PI.sqrt())
            * gauss
            * d.pair_factor(z1, z2.conj())
            * (ba - ab);
        let g = plane(Beta::Four, Element::G, sigma, z1, z2).smooth;
        assert!((g - printed).norm() < 1e-14 * printed.norm().max(1e-300));
    }

    #[test]
    fn complex_beta4_antisymmetry() {
        let sigma = 0.8;
        let (z1, z2) = (Complex64::new(0.2, 0.4), Complex64::new(-0.3, -0.5));
        for e in [Element::K, Element::W] {
            let a = plane(Beta::Four, e, sigma, z1, z2).smooth;
            let b = plane(Beta::Four, e, sigma, z2, z1).smooth;
            assert!((a + b).norm() < 1e-13 * a.norm().max(1e-12), "{e}");
        }
    }

    #[test]
    fn complex_beta1_w_structure() {
        let sigma = 0.8;
        let (z1, z2) = (Complex64::new(0.2, 0.4), Complex64::new(-0.3, -0.5));
        let w = plane(Beta::One, Element::W, sigma, z1, z2);
        assert!(w.smooth.is_finite());
        assert_eq!(w.conjugate_delta(), Some(Complex64::new(0.0, -2.0)));
        let real = w.real_delta().unwrap();
        let swapped = plane(Beta::One, Element::W, sigma, z2, z1).real_delta().unwrap();
        assert!((real + swapped).norm() < 1e-12, "{real} {swapped}");
        let g = plane(Beta::One, Element::GCom, sigma, z1, c(0.1)).smooth;
        assert_eq!(g, ZERO);
    }

    #[test]
    fn complex_beta1_k_antisymmetric_off_axis() {
        let sigma = 0.6;
        let (z1, z2) = (Complex64::new(0.2, 0.4), Complex64::new(-0.3, -0.5));
        let a = plane(Beta::One, Element::K, sigma, z1, z2).smooth;
        let b = plane(Beta::One, Element::K, sigma, z2, z1).smooth;
        assert!((a + b).norm() < 1e-12 * a.norm().max(1e-12));
    }
}
