//! k-point correlation functions: determinants (β=2) and Pfaffians (β=1,4).

use num_complex::Complex64;

use super::{pfaffian, MatrixKernel};
use crate::finite_kernels::{finite_kernel, WeightSpec};
use crate::limiting_kernels::{evaluate, Element, KernelPoint};
use crate::linalg::{determinant, CMatrix};
use crate::{Beta, Error, Result};

const REALITY_TOL: f64 = 1e-8;

fn real_part(v: Complex64, what: &str) -> Result<f64> {
    if v.im.abs() > REALITY_TOL * v.re.abs().max(1.0) {
        return Err(Error::Domain(format!("{what} is not real: {v}")));
    }
    Ok(v.re)
}

/// The weighted β=2 kernel K_N(u, v) of `spec`.
pub fn finite_beta2(spec: WeightSpec, n: usize) -> impl Fn(Complex64, Complex64) -> Result<Complex64> + Sync {
    move |u, v| finite_kernel(&spec, n, u, v)
}

/// A limiting β=2 kernel with the family, domain, σ and ν of `template`.
pub fn limiting_beta2(template: KernelPoint) -> impl Fn(Complex64, Complex64) -> Result<Complex64> + Sync {
    move |u, v| Ok(evaluate(&KernelPoint { element: Element::K, ..template }.with_args(u, v))?.smooth)
}

/// det[K(z_i, z_j*)], k ≤ 8.
pub fn r_k_beta2(kernel: impl Fn(Complex64, Complex64) -> Result<Complex64>, points: &[Complex64]) -> Result<f64> {
    let k = points.len();
    if k == 0 || k > 8 {
        return Err(Error::InvalidParameter(format!("R_k needs 1 ≤ k ≤ 8, got {k}")));
    }
    let mut m = CMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = kernel(points[i], points[j].conj())?;
        }
    }
    real_part(determinant(&m)?, "R_k")
}

/// The 2k×2k matrix [[K(z_i,z_j), −G(z_i,z_j)], [G(z_j,z_i), −W(z_i,z_j)]], filled
/// on and above the diagonal and completed by antisymmetry.
pub fn pfaffian_matrix(kernel: &dyn MatrixKernel, points: &[Complex64]) -> Result<CMatrix> {
    let k = points.len();
    if kernel.beta() == Beta::One {
        for i in 0..k {
            for j in 0..k {
                if i != j && points[i].im != 0.0 && points[j] == points[i].conj() {
                    return Err(Error::DeltaSupport(format!(
                        "points {} and {} are complex conjugates",
                        points[i], points[j]
                    )));
                }
            }
        }
    }
    let n = 2 * k;
    let mut m = CMatrix::zeros(n, n);
    for i in 0..k {
        for j in i..k {
            let (zi, zj) = (points[i], points[j]);
            if i != j {
                m[(2 * i, 2 * j)] = kernel.k_gauged(zi, zj)?;
                m[(2 * i + 1, 2 * j + 1)] = -kernel.w_gauged(zi, zj)?;
                m[(2 * i + 1, 2 * j)] = kernel.g_gauged(zj, zi)?;
            }
            m[(2 * i, 2 * j + 1)] = -kernel.g_gauged(zi, zj)?;
        }
    }
    for a in 0..n {
        for b in 0..a {
            m[(a, b)] = -m[(b, a)];
        }
    }
    Ok(m)
}

/// Pf of [`pfaffian_matrix`], k ≤ 6.
pub fn r_k_pfaffian(kernel: &dyn MatrixKernel, points: &[Complex64]) -> Result<f64> {
    let k = points.len();
    if k == 0 || k > 6 {
        return Err(Error::InvalidParameter(format!("R_k needs 1 ≤ k ≤ 6, got {k}")));
    }
    if kernel.beta() == Beta::Two {
        return Err(Error::InvalidParameter("β = 2 correlations are determinants".into()));
    }
    let m = pfaffian_matrix(kernel, points)?;
    real_part(pfaffian(&m)?, "R_k")
}
