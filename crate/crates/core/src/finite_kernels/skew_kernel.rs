//! Pre-kernel assembled directly from skew-orthogonal polynomials and their
//! numerically integrated norms, independent of the closed-form sums.

use num_complex::Complex64;

use super::{skew_inner_products, skew_ops, QuadControls, WeightSpec};
use crate::{Beta, Error, Result};

#[derive(Debug, Clone)]
pub struct SkewOpKernel {
    pub spec: WeightSpec,
    pub n: usize,
    /// h_k = ⟨Q_{2k}, Q_{2k+1}⟩_s for k < n/2.
    pub norms: Vec<Complex64>,
    /// Largest |⟨Q_a, Q_b⟩_s| / √(|h_a||h_b|) over pairs that should vanish.
    pub residual: f64,
}

/// K_N(u, v) = 2 Σ_{k<N/2} (Q_{2k+1}(u)Q_{2k}(v) − Q_{2k}(u)Q_{2k+1}(v)) / h_k.
///
/// The factor 2 goes with skew products taken over both orderings of the pair
/// (∫∫ F det[…]): at N = 2 it is what makes R₁ = −G(z,z) with G = −∫K F.
pub fn skew_op_prekernel(spec: &WeightSpec, n: usize, c: &QuadControls) -> Result<SkewOpKernel> {
    if spec.beta == Beta::Two {
        return Err(Error::InvalidParameter("skew-orthogonal kernels need β = 1 or 4".into()));
    }
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!("N must be even and ≥ 2, got {n}")));
    }
    let ip = skew_inner_products(spec, n - 1, c)?;
    let norms: Vec<Complex64> = (0..n / 2).map(|k| ip.values[2 * k][2 * k + 1]).collect();
    let scale = |a: usize| norms[a / 2].norm();
    let mut residual: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let paired = a / 2 == b / 2 && a != b;
            if !paired {
                residual = residual.max(ip.values[a][b].norm() / (scale(a) * scale(b)).sqrt());
            }
        }
    }
    Ok(SkewOpKernel { spec: *spec, n, norms, residual })
}

impl SkewOpKernel {
    pub fn eval(&self, u: Complex64, v: Complex64) -> Result<Complex64> {
        let qu = skew_ops(&self.spec, self.n - 1, u)?;
        let qv = skew_ops(&self.spec, self.n - 1, v)?;
        Ok(self
            .norms
            .iter()
            .enumerate()
            .map(|(k, h)| (qu[2 * k + 1] * qv[2 * k] - qu[2 * k] * qv[2 * k + 1]) / h)
            .sum::<Complex64>()
            * 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_kernels::finite_kernel;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ginse_matches_closed_form_sum() {
        let spec = WeightSpec::ginibre(Beta::Four, 0.3);
        let k = skew_op_prekernel(&spec, 6, &QuadControls::default()).unwrap();
        assert!(k.residual < 1e-8, "{}", k.residual);
        for (u, v) in [(c(0.3, 0.4), c(-0.2, 0.1)), (c(1.5, -0.7), c(0.2, 1.1))] {
            let a = k.eval(u, v).unwrap();
            let b = finite_kernel(&spec, 6, u, v).unwrap();
            assert!((a - b).norm() < 1e-8 * b.norm(), "{a} vs {b}");
        }
    }

    #[test]
    fn ginoe_matches_closed_form_sum() {
        let spec = WeightSpec::ginibre(Beta::One, 0.4);
        let k = skew_op_prekernel(&spec, 4, &QuadControls::default()).unwrap();
        let (u, v) = (c(0.3, 0.4), c(-0.8, 0.2));
        let a = k.eval(u, v).unwrap();
        let b = finite_kernel(&spec, 4, u, v).unwrap();
        assert!((a - b).norm() < 1e-8 * b.norm(), "{a} vs {b}");
    }

    #[test]
    fn chiral_quaternion_matches_closed_form_sum() {
        let spec = WeightSpec::chiral(Beta::Four, 0.4, 1);
        let k = skew_op_prekernel(&spec, 4, &QuadControls::default()).unwrap();
        let (u, v) = (c(0.9, 0.4), c(2.0, -0.3));
        let a = k.eval(u, v).unwrap();
        let b = finite_kernel(&spec, 4, u, v).unwrap();
        assert!((a - b).norm() < 1e-8 * b.norm(), "{a} vs {b}");
    }
}
