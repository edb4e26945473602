//! Bessel J of integer order and modified Bessel K of real order.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::{Error, Result};

const SERIES_RADIUS: f64 = 8.0;
const RESCALE: f64 = 1e100;

/// J_n(z) for integer n with |n| ≤ 200; negative orders use J_{-n} = (-1)^n J_n.
pub fn bessel_j(order: i32, z: Complex64) -> Result<Complex64> {
    let n = order.unsigned_abs() as usize;
    if n > 200 {
        return Err(Error::InvalidParameter(format!("Bessel J order {order} exceeds 200")));
    }
    check_finite(z)?;
    let v = if z.norm() <= SERIES_RADIUS {
        ascending(n, z)
    } else {
        miller(n, z)[n]
    };
    Ok(if order < 0 && n % 2 == 1 { -v } else { v })
}

/// [J_0(z), …, J_nmax(z)] from a single backward recurrence.
pub fn bessel_j_stack(nmax: usize, z: Complex64) -> Result<Vec<Complex64>> {
    check_finite(z)?;
    if z.norm() <= SERIES_RADIUS {
        return Ok((0..=nmax).map(|n| ascending(n, z)).collect());
    }
    let mut all = miller(nmax, z);
    all.truncate(nmax + 1);
    Ok(all)
}

fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Bessel function at non-finite argument {z}")))
    }
}

fn ascending(n: usize, z: Complex64) -> Complex64 {
    if z.norm() == 0.0 {
        return Complex64::new(if n == 0 { 1.0 } else { 0.0 }, 0.0);
    }
    let half = z * 0.5;
    let q = -half * half;
    // (z/2)^n / n! built in log-free steps to avoid overflow of n!
    let mut lead = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        lead = lead * half / k as f64;
    }
    let mut term = lead;
    let mut sum = lead;
    for k in 1..300 {
        term = term * q / (k as f64 * (k + n) as f64);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// Miller's backward recurrence normalized by the generating function
/// e^{∓iz} = J_0 + 2 Σ (∓i)^k J_k (upper sign for Im z ≥ 0).
fn miller(nmax: usize, z: Complex64) -> Vec<Complex64> {
    let r = z.norm();
    let mut top = nmax.max(r.ceil() as usize) + 40 + (4.0 * r.sqrt()).ceil() as usize;
    if top % 2 == 1 {
        top += 1;
    }
    let mut f = vec![Complex64::new(0.0, 0.0); top + 2];
    f[top] = Complex64::new(1.0, 0.0);
    let two_over_z = 2.0 / z;
    for k in (1..=top).rev() {
        f[k - 1] = two_over_z * k as f64 * f[k] - f[k + 1];
        if f[k - 1].norm() > RESCALE {
            for v in f[k - 1..].iter_mut() {
                *v /= RESCALE;
            }
        }
    }
    let unit = if z.im >= 0.0 {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::new(0.0, 1.0)
    };
    let mut phase = Complex64::new(1.0, 0.0);
    let mut norm = f[0];
    for v in f.iter().take(top + 1).skip(1) {
        phase *= unit;
        norm += 2.0 * phase * v;
    }
    let target = (unit * z).exp();
    // divide in two steps: norm_sqr of a large norm would overflow
    let m = norm.norm();
    let scale = target / (norm / m) / m;
    f.truncate(nmax + 1);
    f.iter_mut().for_each(|v| *v *= scale);
    f
}

/// K_ν(z) for real ν and Re z > 0.
pub fn bessel_k(order: f64, z: Complex64) -> Result<Complex64> {
    let scaled = bessel_k_scaled(order, z)?;
    Ok(scaled * (-z).exp())
}

/// e^z K_ν(z), finite for large |z|.
pub fn bessel_k_scaled(order: f64, z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.im.is_finite() || !z.re.is_finite() {
        return Err(Error::Domain(format!("Bessel K requires Re z > 0, got {z}")));
    }
    if !order.is_finite() {
        return Err(Error::InvalidParameter(format!("Bessel K order {order}")));
    }
    let nu = order.abs();
    let phi = z.arg().abs();
    // width of the strip of analyticity that controls the trapezoid error
    // and by the width ~ 1/√|z| of the peak at t = 0
    let strip = if z.im == 0.0 { 0.2 } else { (0.2_f64).min((FRAC_PI_2 - phi) / 5.0) };
    let h = strip.min(PI / (20.0 * z.norm()).sqrt());
    // K = ∫_0^∞ e^{-z cosh t} cosh(νt) dt, trapezoid with the t=0 node halved
    let mut sum = Complex64::new(0.5, 0.0);
    let mut k = 1usize;
    loop {
        let t = k as f64 * h;
        // cosh t − 1 without cancellation, which matters once h ~ 1/√|z| is tiny
        let cm1 = 2.0 * (0.5 * t).sinh().powi(2);
        let decay = cm1 * z.re;
        let cosh_nu = (nu * t).cosh();
        let term = (-cm1 * z).exp() * cosh_nu;
        sum += term;
        if decay - nu * t > 45.0 && term.norm() <= 1e-18 * sum.norm() {
            break;
        }
        k += 1;
        if k > 2_000_000 {
            return Err(Error::NoConvergence);
        }
    }
    Ok(sum * h)
}
