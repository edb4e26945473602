//! Reference values and identity residuals for the special functions.

use num_complex::Complex64;
use serde::Serialize;

use super::*;
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct SelftestCase {
    pub name: &'static str,
    pub value: f64,
    pub reference: f64,
    /// Relative residual when the reference is nonzero, absolute otherwise.
    pub residual: f64,
    pub tolerance: f64,
}

impl SelftestCase {
    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

fn case(name: &'static str, value: f64, reference: f64, tolerance: f64) -> SelftestCase {
    let err = (value - reference).abs();
    let residual = if reference != 0.0 { err / reference.abs() } else { err };
    SelftestCase { name, value, reference, residual, tolerance }
}

/// A residual that should vanish, already scaled.
fn identity(name: &'static str, residual: f64, tolerance: f64) -> SelftestCase {
    SelftestCase { name, value: residual, reference: 0.0, residual, tolerance }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn run() -> Result<Vec<SelftestCase>> {
    let zero = c(0.0, 0.0);
    let mut out = vec![
        case("airy_ai(0)", airy_ai(zero)?.re, 0.355_028_053_887_817_2, 1e-10),
        case("airy_ai_prime(0)", airy_ai_prime(zero)?.re, -0.258_819_403_792_806_8, 1e-10),
        case("bessel_j(1, 1)", bessel_j(1, c(1.0, 0.0))?.re, 0.440_050_585_744_933_5, 1e-9),
        case("bessel_k(1/2, 2)", bessel_k(0.5, c(2.0, 0.0))?.re, 0.119_937_771_968_061_2, 1e-8),
        case("erfc(1)", erfc(1.0), 0.157_299_207_050_285_13, 1e-12),
        case("expint_e(0, 2)", expint_e(0.0, 2.0)?, 0.067_667_641_618_306_4, 1e-8),
        case("expint_e(1, 1)", expint_e(1.0, 1.0)?, 0.219_383_934_395_520_26, 1e-8),
        case("hermite_h(4, 1)", hermite_h(4, c(1.0, 0.0)).re, -20.0, 1e-12),
        case("laguerre_l(2, 0, 1)", laguerre_l(2, 0.0, c(1.0, 0.0)).re, -0.5, 1e-12),
        case("laguerre_l(3, 2, 0)", laguerre_l(3, 2.0, zero).re, 10.0, 1e-12),
    ];

    let z = c(1.0, 2.0);
    out.push(identity("airy_ai schwarz reflection", (airy_ai(z.conj())? - airy_ai(z)?.conj()).norm() / airy_ai(z)?.norm(), 1e-12));

    let (z, nu) = (c(3.0, 1.0), 4);
    let j = bessel_j_stack(nu + 1, z)?;
    let scale = j[nu - 1].norm().max(j[nu + 1].norm()).max(j[nu].norm());
    let rec = (j[nu - 1] + j[nu + 1] - 2.0 * nu as f64 / z * j[nu]).norm() / scale;
    out.push(identity("bessel_j recurrence (z=3+i, nu=4)", rec, 1e-9));

    let k1 = bessel_k(1.0, c(1.5, 0.0))?;
    let (k0, k2) = (bessel_k(0.0, c(1.5, 0.0))?, bessel_k(2.0, c(1.5, 0.0))?);
    out.push(identity("bessel_k recurrence (x=1.5, nu=1)", (k2 - k0 - 2.0 / 1.5 * k1).norm() / k2.norm(), 1e-9));

    let (s, x) = (1.0, 1.0);
    let e2 = expint_e(s + 1.0, x)?;
    out.push(identity("expint_e recurrence (s=1, x=1)", (e2 - ((-x).exp() - x * expint_e(s, x)?) / s).abs() / e2, 1e-10));

    let (z, n) = (c(0.4, -0.3), 9);
    let (h0, h1, h2) = (hermite_h(n - 1, z), hermite_h(n, z), hermite_h(n + 1, z));
    out.push(identity("hermite_h recurrence (n=9)", (h2 - 2.0 * z * h1 + 2.0 * n as f64 * h0).norm() / h2.norm(), 1e-9));

    let (a, n) = (1.5, 7);
    let (l0, l1, l2) = (laguerre_l(n - 1, a, z), laguerre_l(n, a, z), laguerre_l(n + 1, a, z));
    let nf = n as f64;
    let res = ((nf + 1.0) * l2 - (2.0 * nf + 1.0 + a - z) * l1 + (nf + a) * l0).norm() / l2.norm();
    out.push(identity("laguerre_l recurrence (n=7, alpha=1.5)", res, 1e-9));

    let gl = gauss_legendre(64)?;
    out.push(case("gauss_legendre(64) cos(10t)", gl.integrate(|t| (10.0 * t).cos()), 10f64.sin() / 10.0, 1e-12));
    let rule = semi_infinite_rule(1.0, 0.0, 1e-12)?;
    let ai = rule.integrate(|t| airy_ai(c(t, 0.0)).map(|v| v.re).unwrap_or(f64::NAN));
    out.push(case("semi_infinite_rule int Ai", ai, 1.0 / 3.0, 1e-10));
    Ok(out)
}

#[cfg(test)]
mod tests {
    #[test]
    fn corpus_passes() {
        for c in super::run().unwrap() {
            assert!(c.passed(), "{}: residual {:e}", c.name, c.residual);
        }
    }
}
