//! σ → 0 comparison of deformed kernels with the real-line kernels.
//!
//! The deformed kernel at real arguments factors as `stripped · regular`, where
//! `stripped` carries the singular σ-dependence (Gaussian normalizations and
//! weight prefactors) and `regular` tends to the real-line element. For β=4 W
//! the complex kernel is 4y₁y₂ w(z₁)w(z₂) · stripped · regular. For β=1 G_com
//! the regular part is σ·G_com(x₁+iσ, x₂+iσ), the weight carried by a strip of
//! width σ around the axis, and the reference value is 0.

use num_complex::Complex64;
use serde::Serialize;

use super::{evaluate, Domain, Element, KernelFamily, KernelPoint};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularPart {
    pub regular: Complex64,
    pub stripped: Complex64,
    /// The real-line element the regular part should approach.
    pub reference: Complex64,
}

impl RegularPart {
    pub fn deviation(&self) -> f64 {
        (self.regular - self.reference).norm()
    }

    pub fn relative_deviation(&self) -> f64 {
        let scale = self.reference.norm();
        if scale > 0.0 {
            self.deviation() / scale
        } else {
            self.deviation()
        }
    }
}

pub(super) fn not_comparable(p: &KernelPoint) -> Error {
    Error::NotDirectlyComparable(format!("{} β={} {}", p.family, p.beta, p.element))
}

/// `point` must be a complex-plane point with real arguments and σ > 0.
pub fn hermitian_limit_regular_part(point: &KernelPoint) -> Result<RegularPart> {
    if point.domain != Domain::ComplexPlane {
        return Err(Error::InvalidParameter("Hermitian limit needs a complex-plane point with σ > 0".into()));
    }
    if point.z1.im != 0.0 || point.z2.im != 0.0 {
        return Err(Error::InvalidParameter("Hermitian limit is evaluated at real arguments".into()));
    }
    point.validate()?;
    let (regular, stripped) = match point.family {
        KernelFamily::Airy => super::airy::regular_part(point)?,
        KernelFamily::Sine => super::sine::regular_part(point)?,
        KernelFamily::Bessel => super::bessel::regular_part(point)?,
    };
    let reference = match point.element {
        Element::GCom => Complex64::new(0.0, 0.0),
        e => {
            let line_element = if e == Element::GReal { Element::G } else { e };
            let line = KernelPoint::real(point.family, point.beta, line_element, point.z1.re, point.z2.re).with_nu(point.nu);
            evaluate(&line)?.smooth
        }
    };
    Ok(RegularPart { regular, stripped, reference })
}

/// The off-axis points used for the β=1 G_com strip weight.
pub(super) fn strip_points(p: &KernelPoint) -> (Complex64, Complex64) {
    (Complex64::new(p.z1.re, p.sigma), Complex64::new(p.z2.re, p.sigma))
}
