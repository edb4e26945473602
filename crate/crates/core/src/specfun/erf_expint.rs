//! Error function, gamma function and the generalized exponential integral.

use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

/// ln erfc(x), finite far beyond the underflow of erfc itself.
pub fn ln_erfc(x: f64) -> f64 {
    if x < 25.0 {
        return libm::erfc(x).ln();
    }
    // erfc(x) = e^{-x²}/(x√π) · Σ (-1)^k (2k-1)!!/(2x²)^k
    let inv = 1.0 / (2.0 * x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..8 {
        term *= -((2 * k - 1) as f64) * inv;
        sum += term;
    }
    -x * x - (x * std::f64::consts::PI.sqrt()).ln() + sum.ln()
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// ln n! for integer n ≥ 0.
pub fn ln_factorial(n: usize) -> f64 {
    libm::lgamma(n as f64 + 1.0)
}

/// E_s(x) = ∫_1^∞ e^{-xt} t^{-s} dt = x^{s-1} Γ(1-s, x) for real s and x > 0.
pub fn expint_e(s: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("E_s(x) requires x > 0, got {x}")));
    }
    if !s.is_finite() {
        return Err(Error::InvalidParameter(format!("E_s order {s}")));
    }
    let is_int = s == s.round();
    if is_int && s <= 0.0 {
        return Ok(nonpositive_integer(-s as usize, x));
    }
    if x > 1.0 {
        return continued_fraction(s, x);
    }
    if is_int {
        Ok(integer_series(s as usize, x))
    } else {
        Ok(x.powf(s - 1.0) * gamma(1.0 - s) - lower_series(s, x))
    }
}

fn nonpositive_integer(m: usize, x: f64) -> f64 {
    // E_{-m}(x) = m! e^{-x} Σ_{k≤m} x^k/k! / x^{m+1}
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=m {
        term *= x / k as f64;
        sum += term;
    }
    let mut fact = 1.0;
    for k in 1..=m {
        fact *= k as f64;
    }
    fact * (-x).exp() * sum / x.powi(m as i32 + 1)
}

fn continued_fraction(s: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = x + s;
    let mut c = 1.0 / TINY;
    let mut d = if b.abs() < TINY { 1.0 / TINY } else { 1.0 / b };
    let mut h = d;
    for i in 1..10_000 {
        let fi = i as f64;
        let an = -fi * (s - 1.0 + fi);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok(h * (-x).exp());
        }
    }
    Err(Error::NoConvergence)
}

/// x^{s-1} γ(1-s, x) = Σ_k (-x)^k / (k! (1-s+k)).
fn lower_series(s: f64, x: f64) -> f64 {
    let mut pow = 1.0;
    let mut sum = 1.0 / (1.0 - s);
    for k in 1..200 {
        pow *= -x / k as f64;
        let term = pow / (1.0 - s + k as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn integer_series(n: usize, x: f64) -> f64 {
    let nm1 = n - 1;
    let mut sum = if nm1 == 0 {
        -x.ln() - EULER_GAMMA
    } else {
        1.0 / nm1 as f64
    };
    let mut fact = 1.0;
    for k in 1..200 {
        fact *= -x / k as f64;
        let term = if k != nm1 {
            -fact / (k as f64 - nm1 as f64)
        } else {
            let psi = -EULER_GAMMA + (1..=nm1).map(|m| 1.0 / m as f64).sum::<f64>();
            fact * (-x.ln() + psi)
        };
        sum += term;
        if term.abs() < 1e-17 * sum.abs() && k > nm1 {
            break;
        }
    }
    sum
}
