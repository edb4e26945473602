//! Monic orthogonal polynomials, skew-orthogonal polynomials and the
//! normalized, overflow-safe sequences that the finite-N kernels sum over.

use num_complex::Complex64;

use super::weights::{WeightFamily, WeightSpec};
use crate::specfun::Scaled;
use crate::{Beta, Error, Result};

const RESCALE_AT: f64 = 1e100;

/// Values m_j · exp(s_j), j = 0..len.
#[derive(Debug, Clone)]
pub struct ScaledSeq {
    pub mantissa: Vec<Complex64>,
    pub log_scale: Vec<f64>,
}

impl ScaledSeq {
    pub fn len(&self) -> usize {
        self.mantissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mantissa.is_empty()
    }

    pub fn get(&self, j: usize) -> Scaled {
        Scaled { mantissa: self.mantissa[j], log_scale: self.log_scale[j] }
    }
}

/// Runs a two-term recurrence y_{j+1} = f(j, y_j, y_{j-1}) with rescaling.
fn scaled_recurrence(
    len: usize,
    y0: Complex64,
    y1: Complex64,
    mut step: impl FnMut(usize, Complex64, Complex64) -> Complex64,
) -> ScaledSeq {
    let mut mantissa = Vec::with_capacity(len);
    let mut log_scale = Vec::with_capacity(len);
    if len == 0 {
        return ScaledSeq { mantissa, log_scale };
    }
    mantissa.push(y0);
    log_scale.push(0.0);
    if len == 1 {
        return ScaledSeq { mantissa, log_scale };
    }
    mantissa.push(y1);
    log_scale.push(0.0);
    let (mut prev, mut cur, mut ls) = (y0, y1, 0.0);
    for j in 1..len - 1 {
        let next = step(j, cur, prev);
        prev = cur;
        cur = next;
        let m = cur.norm().max(prev.norm());
        if m > RESCALE_AT {
            cur /= m;
            prev /= m;
            ls += m.ln();
        }
        mantissa.push(cur);
        log_scale.push(ls);
    }
    ScaledSeq { mantissa, log_scale }
}

/// a_j(u) = √(τ^j/(2^j j!)) H_j(u/√(2τ)) for j < len.
pub fn hermite_normalized_seq(len: usize, tau: f64, u: Complex64) -> ScaledSeq {
    scaled_recurrence(len, Complex64::new(1.0, 0.0), u, |j, a, ap| {
        let jf = j as f64;
        (u * a - tau * jf.sqrt() * ap) / (jf + 1.0).sqrt()
    })
}

/// b_j(u) = τ^j √(j!/(j+α)!) L_j^α(u/τ) for j < len.
pub fn laguerre_normalized_seq(len: usize, alpha: usize, tau: f64, u: Complex64) -> ScaledSeq {
    let a = alpha as f64;
    let b0 = (-0.5 * crate::specfun::ln_factorial(alpha)).exp();
    let b1 = b0 * ((1.0 + a) * tau - u) / (1.0 + a).sqrt();
    scaled_recurrence(len, Complex64::new(b0, 0.0), b1, |j, b, bp| {
        let jf = j as f64;
        (((2.0 * jf + 1.0 + a) * tau - u) * b - tau * tau * (jf * (jf + a)).sqrt() * bp)
            / ((jf + 1.0) * (jf + 1.0 + a)).sqrt()
    })
}

/// Monic P_k(z) = (τ/2)^{k/2} H_k(z/√(2τ)), orthogonal for the elliptic Ginibre weight.
pub fn op_hermite_complex(k: usize, tau: f64, z: Complex64) -> Complex64 {
    op_hermite_complex_scaled(k, tau, z).value()
}

pub fn op_hermite_complex_scaled(k: usize, tau: f64, z: Complex64) -> Scaled {
    let s = scaled_recurrence(k + 1, Complex64::new(1.0, 0.0), z, |j, p, pp| z * p - tau * j as f64 * pp);
    s.get(k)
}

/// Monic P_k(z) = (-1)^k k! τ^k L_k^ν(z/τ), orthogonal for the chiral weight.
pub fn op_laguerre_complex(k: usize, nu: usize, tau: f64, z: Complex64) -> Complex64 {
    op_laguerre_complex_scaled(k, nu, tau, z).value()
}

pub fn op_laguerre_complex_scaled(k: usize, nu: usize, tau: f64, z: Complex64) -> Scaled {
    let a = nu as f64;
    let s = scaled_recurrence(k + 1, Complex64::new(1.0, 0.0), z - (1.0 + a) * tau, |j, p, pp| {
        let jf = j as f64;
        (z - (2.0 * jf + 1.0 + a) * tau) * p - tau * tau * jf * (jf + a) * pp
    });
    s.get(k)
}

/// Monic OPs P_0..P_kmax of the β=2 weight of `family` (Laguerre index `nu`).
pub fn monic_ops(family: WeightFamily, nu: usize, tau: f64, kmax: usize, z: Complex64) -> Vec<Complex64> {
    let mut p = Vec::with_capacity(kmax + 1);
    p.push(Complex64::new(1.0, 0.0));
    let a = nu as f64;
    for k in 0..kmax {
        let kf = k as f64;
        let prev = if k == 0 { Complex64::new(0.0, 0.0) } else { p[k - 1] };
        let next = match family {
            WeightFamily::Ginibre => z * p[k] - tau * kf * prev,
            WeightFamily::Chiral => (z - (2.0 * kf + 1.0 + a) * tau) * p[k] - tau * tau * kf * (kf + a) * prev,
        };
        p.push(next);
    }
    p
}

/// Skew-orthogonal polynomials Q_0..Q_kmax (odd ones with c = 0).
///
/// * GinOE: Q_{2k} = P_{2k}, Q_{2k+1} = P_{2k+1} - 2k P_{2k-1}.
/// * GinSE: Q_{2k+1} = P_{2k+1}, Q_{2k} = Σ_{l≤k} (2k)!!/(2l)!! P_{2l}.
/// * chiral β=4 (Laguerre index 2ν): Q_{2k+1} = P_{2k+1},
///   Q_{2k} = Σ_{j≤k} 4^{k-j} k!(k+ν)!/(j!(j+ν)!) P_{2j}.
pub fn skew_ops(spec: &WeightSpec, kmax: usize, z: Complex64) -> Result<Vec<Complex64>> {
    let tau = spec.tau;
    match (spec.beta, spec.family) {
        (Beta::One, WeightFamily::Ginibre) => {
            let p = monic_ops(WeightFamily::Ginibre, 0, tau, kmax, z);
            Ok((0..=kmax)
                .map(|k| if k % 2 == 1 && k >= 3 { p[k] - (k - 1) as f64 * p[k - 2] } else { p[k] })
                .collect())
        }
        (Beta::Four, family) => {
            let nu = spec.nu;
            let p = monic_ops(family, 2 * nu, tau, kmax, z);
            let mut out = Vec::with_capacity(kmax + 1);
            let mut even = Complex64::new(0.0, 0.0);
            for k in 0..=kmax {
                if k % 2 == 1 {
                    out.push(p[k]);
                    continue;
                }
                let h = k / 2;
                // ratio of consecutive coefficients c_h / c_{h-1}
                let ratio = match family {
                    WeightFamily::Ginibre => 2.0 * h as f64,
                    WeightFamily::Chiral => 4.0 * h as f64 * (h + nu) as f64,
                };
                even = if h == 0 { p[0] } else { even * ratio + p[k] };
                out.push(even);
            }
            Ok(out)
        }
        (Beta::One, WeightFamily::Chiral) => Err(Error::Unsupported(
            "skew-orthogonal polynomials of the chiral β=1 ensemble are not implemented".into(),
        )),
        (Beta::Two, _) => Err(Error::InvalidParameter("skew polynomials need β = 1 or 4".into())),
    }
}
