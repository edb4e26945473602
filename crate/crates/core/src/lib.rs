//! Random-matrix kernels at weak non-Hermiticity.
//!
//! The crate evaluates the finite-N (skew-)orthogonal-polynomial kernels of the
//! Gaussian elliptic Ginibre and non-Hermitian Wishart-Laguerre ensembles
//! (β = 1, 2, 4), the limiting Airy, sine and Bessel kernels on the real line
//! and their one-parameter deformations into the complex plane, and checks
//! them against Monte Carlo spectra of the corresponding matrix ensembles.
//!
//! Module map:
//!
//! * [`specfun`] – complex Airy, Bessel J/K, erfc, generalized exponential
//!   integral, Hermite/Laguerre recurrences and quadrature rules.
//! * [`ensembles`] – matrix samplers, the dense eigensolver front end,
//!   real/complex classification and empirical densities.
//! * [`finite_kernels`] – weights, bivariate weights, finite-N kernels and
//!   (skew-)orthogonality checks.
//! * [`limiting_kernels`] – the Airy/sine/Bessel kernels on ℝ and ℂ.
//! * [`correlations`] – Pfaffians, determinants and k-point functions.
//! * [`scaling_limits`] – soft-edge, bulk and hard-edge rescalings and
//!   convergence studies.

pub mod correlations;
pub mod ensembles;
mod error;
pub mod finite_kernels;
pub mod grid;
pub mod limiting_kernels;
pub mod linalg;
pub mod scaling_limits;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Dyson index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Beta {
    One,
    Two,
    Four,
}

impl Beta {
    pub fn from_int(b: u32) -> Result<Self> {
        match b {
            1 => Ok(Beta::One),
            2 => Ok(Beta::Two),
            4 => Ok(Beta::Four),
            _ => Err(Error::InvalidParameter(format!("beta must be 1, 2 or 4, got {b}"))),
        }
    }

    pub fn as_int(self) -> u32 {
        match self {
            Beta::One => 1,
            Beta::Two => 2,
            Beta::Four => 4,
        }
    }

    /// γ_β of the elliptic parametrisation: 1 for β = 2 and ½ otherwise.
    pub fn gamma(self) -> f64 {
        match self {
            Beta::Two => 1.0,
            _ => 0.5,
        }
    }
}

impl std::fmt::Display for Beta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_int())
    }
}

/// sign(x) with sign(0) = 0.
#[inline]
pub fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}
