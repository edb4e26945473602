//! Limiting Airy, sine and Bessel kernels on the real line and their
//! one-parameter deformations into the complex plane.
//!
//! Every element is returned as a [`KernelValue`]: a smooth part plus
//! symbolic atoms for the sign jumps and delta functions, which are never
//! mollified. For β=4 in the complex plane only one element is printed per
//! family; the other two follow from
//!
//! G(z₁,z₂) = (z₂−z₂*) w(z₂) K(z₁,z₂*),  W(z₁,z₂) = −(z₁−z₁*)(z₂−z₂*) w(z₁) w(z₂) K(z₁*,z₂*)
//!
//! with w(z) = e^{−2y²/σ²} (sine), K_{2ν}(|z|/4σ²) e^{x/4σ²} (Bessel). For Airy the
//! printed G carries e^{−(y₁²+y₂²)/2σ²}, so the weights are absorbed symmetrically
//! into K and the relations hold with w = 1.

mod airy;
mod bessel;
mod hermitian;
mod sine;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Beta, Error, Result};

pub use airy::{airy_k2_integral, airy_k2_ratio, airy_kernel};
pub use bessel::{bessel_k2_integral, bessel_k2_ratio, bessel_kernel};
pub use hermitian::{hermitian_limit_regular_part, RegularPart};
pub use sine::{sine_k2_integral, sine_k2_ratio, sine_kernel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelFamily {
    Airy,
    Sine,
    Bessel,
}

impl KernelFamily {
    pub fn name(self) -> &'static str {
        match self {
            KernelFamily::Airy => "airy",
            KernelFamily::Sine => "sine",
            KernelFamily::Bessel => "bessel",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "airy" | "ai" => Ok(KernelFamily::Airy),
            "sine" | "sin" => Ok(KernelFamily::Sine),
            "bessel" | "bes" => Ok(KernelFamily::Bessel),
            _ => Err(Error::InvalidParameter(format!("unknown kernel family '{s}'"))),
        }
    }
}

impl std::fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Element {
    K,
    G,
    W,
    #[serde(rename = "G_real")]
    GReal,
    #[serde(rename = "G_com")]
    GCom,
}

impl Element {
    pub fn name(self) -> &'static str {
        match self {
            Element::K => "K",
            Element::G => "G",
            Element::W => "W",
            Element::GReal => "G_real",
            Element::GCom => "G_com",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "K" | "k" => Ok(Element::K),
            "G" | "g" => Ok(Element::G),
            "W" | "w" => Ok(Element::W),
            "G_real" | "g_real" | "greal" => Ok(Element::GReal),
            "G_com" | "g_com" | "gcom" => Ok(Element::GCom),
            _ => Err(Error::InvalidParameter(format!("unknown kernel element '{s}'"))),
        }
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    RealLine,
    ComplexPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelPoint {
    pub family: KernelFamily,
    pub beta: Beta,
    pub element: Element,
    pub domain: Domain,
    /// Deformation σ > 0 (complex plane only).
    pub sigma: f64,
    /// Bessel index ν (Bessel family only).
    pub nu: usize,
    pub z1: Complex64,
    pub z2: Complex64,
}

impl KernelPoint {
    pub fn real(family: KernelFamily, beta: Beta, element: Element, x1: f64, x2: f64) -> Self {
        Self {
            family,
            beta,
            element,
            domain: Domain::RealLine,
            sigma: 0.0,
            nu: 0,
            z1: Complex64::new(x1, 0.0),
            z2: Complex64::new(x2, 0.0),
        }
    }

    pub fn complex(family: KernelFamily, beta: Beta, element: Element, sigma: f64, z1: Complex64, z2: Complex64) -> Self {
        Self { family, beta, element, domain: Domain::ComplexPlane, sigma, nu: 0, z1, z2 }
    }

    pub fn with_nu(mut self, nu: usize) -> Self {
        self.nu = nu;
        self
    }

    pub fn with_args(mut self, z1: Complex64, z2: Complex64) -> Self {
        self.z1 = z1;
        self.z2 = z2;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let allowed: &[Element] = match (self.beta, self.domain) {
            (Beta::Two, _) => &[Element::K],
            (Beta::Four, _) => &[Element::K, Element::G, Element::W],
            (Beta::One, Domain::RealLine) => &[Element::K, Element::G, Element::GReal, Element::W],
            (Beta::One, Domain::ComplexPlane) => &[Element::K, Element::GReal, Element::GCom, Element::W],
        };
        if !allowed.contains(&self.element) {
            return Err(Error::InvalidParameter(format!(
                "element {} does not exist for β = {} on the {:?}",
                self.element, self.beta, self.domain
            )));
        }
        match self.domain {
            Domain::RealLine => {
                if self.z1.im != 0.0 || self.z2.im != 0.0 {
                    return Err(Error::InvalidParameter("real-line kernels need real arguments".into()));
                }
            }
            Domain::ComplexPlane => {
                if !(self.sigma > 0.0) {
                    return Err(Error::InvalidParameter(
                        "complex-plane kernels need σ > 0 (σ = 0 is the Hermitian limit)".into(),
                    ));
                }
                if self.element == Element::GReal && (self.z1.im != 0.0 || self.z2.im != 0.0) {
                    return Err(Error::InvalidParameter("G_real takes real arguments".into()));
                }
            }
        }
        if self.nu != 0 && self.family != KernelFamily::Bessel {
            return Err(Error::InvalidParameter("ν applies to the Bessel family only".into()));
        }
        if !(self.z1.re.is_finite() && self.z1.im.is_finite() && self.z2.re.is_finite() && self.z2.im.is_finite()) {
            return Err(Error::Domain("kernel arguments must be finite".into()));
        }
        Ok(())
    }
}

/// Distributional pieces attached to a kernel value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Atom {
    /// coefficient · sign(argument), an ordinary jump evaluated exactly.
    Sign { coefficient: Complex64, argument: f64 },
    /// coefficient · δ²(z₁ − z₂*).
    ConjugateDelta { coefficient: Complex64 },
    /// coefficient · δ(y₁)δ(y₂).
    RealDelta { coefficient: Complex64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub smooth: Complex64,
    pub atoms: Vec<Atom>,
}

impl KernelValue {
    pub fn smooth(value: Complex64) -> Self {
        Self { smooth: value, atoms: Vec::new() }
    }

    pub fn with(mut self, atom: Atom) -> Self {
        self.atoms.push(atom);
        self
    }

    /// Smooth part plus the sign jumps; delta atoms are excluded.
    pub fn value(&self) -> Complex64 {
        self.smooth
            + self
                .atoms
                .iter()
                .map(|a| match *a {
                    Atom::Sign { coefficient, argument } => coefficient * crate::sign(argument),
                    _ => Complex64::new(0.0, 0.0),
                })
                .sum::<Complex64>()
    }

    pub fn real_delta(&self) -> Option<Complex64> {
        self.atoms.iter().find_map(|a| match *a {
            Atom::RealDelta { coefficient } => Some(coefficient),
            _ => None,
        })
    }

    pub fn conjugate_delta(&self) -> Option<Complex64> {
        self.atoms.iter().find_map(|a| match *a {
            Atom::ConjugateDelta { coefficient } => Some(coefficient),
            _ => None,
        })
    }
}

pub fn evaluate(p: &KernelPoint) -> Result<KernelValue> {
    match p.family {
        KernelFamily::Airy => airy_kernel(p),
        KernelFamily::Sine => sine_kernel(p),
        KernelFamily::Bessel => bessel_kernel(p),
    }
}

/// Gauss-Legendre panels on [0, 1] fine enough for oscillation frequency `freq`.
pub(crate) fn unit_rule(freq: f64) -> Result<crate::specfun::PanelRule> {
    let panels = (freq / 6.0).ceil().max(1.0) as usize;
    crate::specfun::PanelRule::uniform(0.0, 1.0, panels, 24)
}

/// sin(z)/z with the removable singularity filled in.
pub(crate) fn sinc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

pub(crate) fn integrate(rule: &crate::specfun::PanelRule, mut f: impl FnMut(f64) -> Result<Complex64>) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        acc += f(t)? * w;
    }
    Ok(acc)
}
