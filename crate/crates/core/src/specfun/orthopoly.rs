//! Hermite and generalized Laguerre polynomials of complex argument.
//!
//! The scaled variants return `(m, e)` with value = m · exp(e), rescaling the
//! recurrence whenever its magnitude passes 1e100 so that degrees in the
//! thousands stay representable.

use num_complex::Complex64;

const RESCALE_AT: f64 = 1e100;

/// A value stored as mantissa · exp(log_scale).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: Complex64,
    pub log_scale: f64,
}

impl Scaled {
    pub fn value(self) -> Complex64 {
        self.mantissa * self.log_scale.exp()
    }
}

/// Physicists' Hermite polynomial H_n(z).
pub fn hermite_h(n: usize, z: Complex64) -> Complex64 {
    hermite_h_scaled(n, z).value()
}

pub fn hermite_h_scaled(n: usize, z: Complex64) -> Scaled {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return Scaled { mantissa: prev, log_scale: 0.0 };
    }
    let mut cur = 2.0 * z;
    let mut log_scale = 0.0;
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
        let m = cur.norm().max(prev.norm());
        if m > RESCALE_AT {
            cur /= m;
            prev /= m;
            log_scale += m.ln();
        }
    }
    Scaled { mantissa: cur, log_scale }
}

/// Generalized Laguerre polynomial L_n^α(z), α > -1.
pub fn laguerre_l(n: usize, alpha: f64, z: Complex64) -> Complex64 {
    laguerre_l_scaled(n, alpha, z).value()
}

pub fn laguerre_l_scaled(n: usize, alpha: f64, z: Complex64) -> Scaled {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return Scaled { mantissa: prev, log_scale: 0.0 };
    }
    let mut cur = 1.0 + alpha - z;
    let mut log_scale = 0.0;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - z) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        let m = cur.norm().max(prev.norm());
        if m > RESCALE_AT {
            cur /= m;
            prev /= m;
            log_scale += m.ln();
        }
    }
    Scaled { mantissa: cur, log_scale }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermite_low_degrees() {
        let z = c(3.0, -1.0);
        assert_eq!(hermite_h(0, z), c(1.0, 0.0));
        assert_eq!(hermite_h(1, z), 2.0 * z);
        assert!((hermite_h(4, c(1.0, 0.0)) - c(-20.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn hermite_parity_and_reflection() {
        let z = c(0.5, 0.5);
        assert!((hermite_h(7, -z) + hermite_h(7, z)).norm() < 1e-12);
        assert!((hermite_h(6, z.conj()) - hermite_h(6, z).conj()).norm() < 1e-12);
    }

    #[test]
    fn hermite_scaled_survives_high_degree() {
        let s = hermite_h_scaled(2000, c(3.0, 0.5));
        assert!(s.mantissa.norm().is_finite() && s.log_scale > 700.0);
        // matches the unscaled recurrence where that one is still finite
        let direct = hermite_h(60, c(1.3, 0.2));
        let scaled = hermite_h_scaled(60, c(1.3, 0.2)).value();
        assert!((direct - scaled).norm() <= 1e-12 * direct.norm());
    }

    #[test]
    fn laguerre_low_degrees() {
        let z = c(0.4, 1.1);
        assert_eq!(laguerre_l(0, 0.5, z), c(1.0, 0.0));
        assert_eq!(laguerre_l(1, 0.5, z), 1.5 - z);
        assert!((laguerre_l(2, 0.0, c(1.0, 0.0)) - c(-0.5, 0.0)).norm() < 1e-15);
        assert!((laguerre_l(3, 2.0, c(0.0, 0.0)) - c(10.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn laguerre_recurrence_residual() {
        let z = c(2.5, -0.7);
        let a = 1.5;
        for n in 1..30 {
            let nf = n as f64;
            let lhs = (nf + 1.0) * laguerre_l(n + 1, a, z);
            let rhs = (2.0 * nf + 1.0 + a - z) * laguerre_l(n, a, z) - (nf + a) * laguerre_l(n - 1, a, z);
            assert!((lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0));
        }
    }

    #[test]
    fn laguerre_scaled_high_degree_is_finite() {
        let s = laguerre_l_scaled(2000, 3.0, c(-40.0, 5.0));
        assert!(s.mantissa.norm().is_finite() && s.log_scale.is_finite());
    }
}
