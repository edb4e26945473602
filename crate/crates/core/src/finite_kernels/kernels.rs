//! The six finite-N kernels: the weighted β=2 kernels and the β=1,4
//! pre-kernels, evaluated by normalized recurrences with log scaling.

use num_complex::Complex64;

use super::polynomials::{hermite_normalized_seq, laguerre_normalized_seq, ScaledSeq};
use super::weights::{ln_chiral_w2, ln_ginibre_w2, WeightFamily, WeightSpec};
use crate::specfun::{ln_gamma, Scaled};
use crate::{Beta, Error, Result};

/// Running sum of terms m · exp(s) kept as a single (mantissa, log) pair.
#[derive(Debug, Clone, Copy)]
struct LogSum {
    mantissa: Complex64,
    log_scale: f64,
}

impl LogSum {
    fn new() -> Self {
        Self { mantissa: Complex64::new(0.0, 0.0), log_scale: f64::NEG_INFINITY }
    }

    fn add(&mut self, m: Complex64, s: f64) {
        if m == Complex64::new(0.0, 0.0) {
            return;
        }
        if s <= self.log_scale {
            self.mantissa += m * (s - self.log_scale).exp();
        } else {
            self.mantissa = self.mantissa * (self.log_scale - s).exp() + m;
            self.log_scale = s;
        }
    }

    /// self - other, computed so that swapping the operands flips the sign exactly.
    fn minus(self, other: LogSum) -> LogSum {
        if self.log_scale >= other.log_scale {
            let m = self.mantissa - other.mantissa * (other.log_scale - self.log_scale).exp();
            LogSum { mantissa: m, log_scale: self.log_scale }
        } else {
            let m = self.mantissa * (self.log_scale - other.log_scale).exp() - other.mantissa;
            LogSum { mantissa: m, log_scale: other.log_scale }
        }
    }

    fn into_scaled(self, ln_prefactor: f64, sign: f64) -> Scaled {
        if self.log_scale == f64::NEG_INFINITY || self.mantissa == Complex64::new(0.0, 0.0) {
            return Scaled { mantissa: Complex64::new(0.0, 0.0), log_scale: 0.0 };
        }
        Scaled { mantissa: self.mantissa * sign, log_scale: self.log_scale + ln_prefactor }
    }
}

fn product(a: &ScaledSeq, i: usize, b: &ScaledSeq, j: usize) -> (Complex64, f64) {
    (a.mantissa[i] * b.mantissa[j], a.log_scale[i] + b.log_scale[j])
}

fn check_n(spec: &WeightSpec, n: usize) -> Result<()> {
    if !(0.0..1.0).contains(&spec.tau) {
        return Err(Error::InvalidParameter(format!("tau must lie in [0, 1), got {}", spec.tau)));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if spec.beta != Beta::Two && n % 2 == 1 {
        return Err(Error::InvalidParameter(format!("β = {} kernels need even n, got {n}", spec.beta)));
    }
    Ok(())
}

/// Kernel value as mantissa · exp(log_scale); never overflows.
pub fn finite_kernel_scaled(spec: &WeightSpec, n: usize, u: Complex64, v: Complex64) -> Result<Scaled> {
    check_n(spec, n)?;
    let tau = spec.tau;
    let d = 1.0 - tau * tau;
    let pi_ln = std::f64::consts::PI.ln();
    match (spec.beta, spec.family) {
        (Beta::Two, WeightFamily::Ginibre) => {
            let (a, b) = (hermite_normalized_seq(n, tau, u), hermite_normalized_seq(n, tau, v));
            let mut sum = LogSum::new();
            for j in 0..n {
                let (m, s) = product(&a, j, &b, j);
                sum.add(m, s);
            }
            let ln_w = 0.5 * (ln_ginibre_w2(tau, u) + ln_ginibre_w2(tau, v));
            Ok(sum.into_scaled(ln_w - pi_ln - 0.5 * d.ln(), 1.0))
        }
        (Beta::Two, WeightFamily::Chiral) => {
            let nu = spec.nu;
            let (a, b) = (laguerre_normalized_seq(n, nu, tau, u), laguerre_normalized_seq(n, nu, tau, v));
            let mut sum = LogSum::new();
            for j in 0..n {
                let (m, s) = product(&a, j, &b, j);
                sum.add(m, s);
            }
            let ln_w = 0.5 * (ln_chiral_w2(tau, nu, u)? + ln_chiral_w2(tau, nu, v)?);
            Ok(sum.into_scaled(ln_w + 2f64.ln() - pi_ln - d.ln(), 1.0))
        }
        (Beta::Four, WeightFamily::Ginibre) => {
            let (a, b) = (hermite_normalized_seq(n, tau, u), hermite_normalized_seq(n, tau, v));
            let (mut fwd, mut bwd) = (LogSum::new(), LogSum::new());
            let (mut su, mut sv) = (LogSum::new(), LogSum::new());
            let (mut alpha2, mut gamma2) = (1.0_f64, 1.0_f64);
            for k in 0..n / 2 {
                if k > 0 {
                    let kf = k as f64;
                    alpha2 *= 2.0 * kf / (2.0 * kf + 1.0);
                    gamma2 *= (2.0 * kf - 1.0) / (2.0 * kf);
                }
                let g = gamma2.sqrt();
                su.add(a.mantissa[2 * k] * g, a.log_scale[2 * k]);
                sv.add(b.mantissa[2 * k] * g, b.log_scale[2 * k]);
                let al = alpha2.sqrt();
                fwd.add(a.mantissa[2 * k + 1] * sv.mantissa * al, a.log_scale[2 * k + 1] + sv.log_scale);
                bwd.add(b.mantissa[2 * k + 1] * su.mantissa * al, b.log_scale[2 * k + 1] + su.log_scale);
            }
            Ok(fwd.minus(bwd).into_scaled(-pi_ln - (1.0 - tau).ln() - 0.5 * d.ln(), 1.0))
        }
        (Beta::Four, WeightFamily::Chiral) => {
            let nu = spec.nu;
            let nf = nu as f64;
            let (a, b) = (laguerre_normalized_seq(n, 2 * nu, tau, u), laguerre_normalized_seq(n, 2 * nu, tau, v));
            let ln2 = 2f64.ln();
            let (mut fwd, mut bwd) = (LogSum::new(), LogSum::new());
            let (mut su, mut sv) = (LogSum::new(), LogSum::new());
            for k in 0..n / 2 {
                let kf = k as f64;
                let ln_b = -2.0 * kf * ln2 + 0.5 * (ln_gamma(2.0 * kf + 1.0) + ln_gamma(2.0 * kf + 2.0 * nf + 1.0))
                    - ln_gamma(kf + 1.0)
                    - ln_gamma(kf + nf + 1.0);
                su.add(a.mantissa[2 * k], a.log_scale[2 * k] + ln_b);
                sv.add(b.mantissa[2 * k], b.log_scale[2 * k] + ln_b);
                let ln_a = 2.0 * kf * ln2 + ln_gamma(kf + 1.0) + ln_gamma(kf + nf + 1.0)
                    - 0.5 * (ln_gamma(2.0 * kf + 2.0 * nf + 2.0) + ln_gamma(2.0 * kf + 2.0));
                fwd.add(a.mantissa[2 * k + 1] * sv.mantissa, a.log_scale[2 * k + 1] + sv.log_scale + ln_a);
                bwd.add(b.mantissa[2 * k + 1] * su.mantissa, b.log_scale[2 * k + 1] + su.log_scale + ln_a);
            }
            Ok(fwd.minus(bwd).into_scaled(ln2 - pi_ln - 2.0 * d.ln(), -1.0))
        }
        (Beta::One, WeightFamily::Ginibre) => {
            let (a, b) = (hermite_normalized_seq(n, tau, u), hermite_normalized_seq(n, tau, v));
            let (mut fwd, mut bwd) = (LogSum::new(), LogSum::new());
            for l in 0..n - 1 {
                let c = ((l + 1) as f64).sqrt();
                let (m1, s1) = product(&a, l + 1, &b, l);
                let (m2, s2) = product(&b, l + 1, &a, l);
                fwd.add(m1 * c, s1);
                bwd.add(m2 * c, s2);
            }
            let ln_pre = -(2.0 * (2.0 * std::f64::consts::PI).sqrt() * (1.0 + tau)).ln();
            Ok(fwd.minus(bwd).into_scaled(ln_pre, 1.0))
        }
        (Beta::One, WeightFamily::Chiral) => {
            let nu = spec.nu;
            let (a, b) = (laguerre_normalized_seq(n, nu, tau, u), laguerre_normalized_seq(n, nu, tau, v));
            let (mut fwd, mut bwd) = (LogSum::new(), LogSum::new());
            for l in 0..n - 1 {
                let c = (((l + 1) * (l + 1 + nu)) as f64).sqrt();
                let (m1, s1) = product(&a, l + 1, &b, l);
                let (m2, s2) = product(&b, l + 1, &a, l);
                fwd.add(m1 * c, s1);
                bwd.add(m2 * c, s2);
            }
            Ok(fwd.minus(bwd).into_scaled(-(8.0 * std::f64::consts::PI * d).ln(), -1.0))
        }
    }
}

/// β=2: the weighted kernel K_N(u, v); β=1,4: the pre-kernel (no weights).
pub fn finite_kernel(spec: &WeightSpec, n: usize, u: Complex64, v: Complex64) -> Result<Complex64> {
    let s = finite_kernel_scaled(spec, n, u, v)?;
    let value = s.value();
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow(format!(
            "kernel magnitude exp({:.1}) is out of range; use finite_kernel_scaled",
            s.log_scale + s.mantissa.norm().ln()
        )));
    }
    Ok(value)
}
