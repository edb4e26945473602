//! Gaussian matrix ensembles: samplers, spectra and empirical densities.
//!
//! Element variances for a density ∝ exp(-c Tr H²) in each symmetry class:
//!
//! | class | diagonal | off-diagonal |
//! |---|---|---|
//! | real symmetric | 1/(2c) | 1/(4c) |
//! | Hermitian | 1/(2c) | 1/(4c) for each of Re, Im |
//! | real antisymmetric (iH with H imaginary Hermitian) | 0 | 1/(4c) |
//!
//! Quaternion matrices are stored in the complex 2M×2M representation
//! [[A, B], [-B̄, Ā]], and `n` always denotes the size of that complex matrix.
//! Traces of self-dual matrices are complex-representation traces, except for
//! the Hermitian β=4 ensemble where exp(-Tr H²) uses the quaternion trace
//! (half the complex one).
//!
//! Ginibre J = H₁ + iH₂ with H₁ ∝ exp(-γ Tr H₁²/(1+τ)), H₂ ∝ exp(-γ Tr H₂²/(1-τ)):
//!
//! * β=2 (γ=1): E|J_ij|² = 1, E[J_ij J_ji] = τ (i ≠ j).
//! * β=1 (γ=½): J = S + A, S symmetric with diagonal variance 1+τ and
//!   off-diagonal (1+τ)/2, A antisymmetric with variance (1-τ)/2.
//! * β=4 (γ=½): Hermitian part [[P, Q], [-Q̄, P̄]] with P Hermitian (diagonal
//!   variance (1+τ)/2, off-diagonal parts (1+τ)/4) and Q antisymmetric (parts
//!   (1+τ)/4); anti-Hermitian part with P' anti-Hermitian (imaginary diagonal
//!   variance (1-τ)/2, off-diagonal parts (1-τ)/4) and Q' symmetric (diagonal
//!   parts (1-τ)/2, off-diagonal parts (1-τ)/4).
//!
//! Chiral pairs from exp[-Tr(WW† + V†V - τ(WV + V†W†))/(1-τ)] are drawn as
//! W = aA + bB, V† = aA - bB with independent standard Gaussians A, B:
//!
//! * β=2 (E|A|² = 1): a² = ½, b² = (1-τ)/(2(1+τ)).
//! * β=1 (unit variance): a² = ¼, b² = (1-τ)/(4(1+τ)).
//! * β=4: every independent complex component of the quaternion blocks
//!   follows the β=2 law; rectangularity 2ν in the complex representation.

mod compare;
mod density;
pub mod rng;
mod sample;
mod spectrum;

use serde::{Deserialize, Serialize};

pub use compare::{compare_density, Cell, DensityComparison, Reference};
pub use density::{
    elliptic_density, empirical_density, marchenko_pastur_density, real_histogram, semicircle_density,
};
pub use sample::{
    sample_chiral_pair, sample_chiral_pair_with, sample_ginibre, sample_ginibre_with, sample_hermitian,
    sample_hermitian_with, sample_wishart, sample_wishart_with,
};
pub use spectrum::{
    classify_real, eigenvalues, product_spectrum, sample_spectra, sample_spectrum, write_samples_csv,
    SpectralSample,
};

use crate::{Beta, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    WignerDyson,
    Ginibre,
    WishartLaguerre,
    ChiralNonhermitian,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::WignerDyson => "wigner_dyson",
            Family::Ginibre => "ginibre",
            Family::WishartLaguerre => "wishart_laguerre",
            Family::ChiralNonhermitian => "chiral_nonhermitian",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "wigner_dyson" | "wd" | "hermitian" => Ok(Family::WignerDyson),
            "ginibre" => Ok(Family::Ginibre),
            "wishart_laguerre" | "wishart" => Ok(Family::WishartLaguerre),
            "chiral_nonhermitian" | "chiral" => Ok(Family::ChiralNonhermitian),
            _ => Err(Error::InvalidParameter(format!("unknown ensemble family '{s}'"))),
        }
    }

    pub fn is_chiral(self) -> bool {
        matches!(self, Family::WishartLaguerre | Family::ChiralNonhermitian)
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub beta: Beta,
    pub family: Family,
    /// Matrix size; for β=4 the size of the complex representation.
    pub n: usize,
    pub tau: f64,
    pub nu: usize,
}

impl EnsembleSpec {
    pub fn new(beta: Beta, family: Family, n: usize, tau: f64, nu: usize) -> Result<Self> {
        let spec = Self { beta, family, n, tau, nu };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n % 2 == 1 {
            return Err(Error::InvalidParameter(format!("n must be a positive even integer, got {}", self.n)));
        }
        self.validate_sampling()
    }

    /// Checks what the samplers need; odd sizes are allowed except for β=4,
    /// whose complex representation has even size.
    pub fn validate_sampling(&self) -> Result<()> {
        if self.n == 0 || (self.beta == Beta::Four && self.n % 2 == 1) {
            return Err(Error::InvalidParameter(format!("invalid matrix size {} for β = {}", self.n, self.beta)));
        }
        if !(0.0..1.0).contains(&self.tau) {
            return Err(Error::InvalidParameter(format!("tau must lie in [0, 1), got {}", self.tau)));
        }
        if self.nu != 0 && !self.family.is_chiral() {
            return Err(Error::InvalidParameter("nu must be 0 for non-chiral families".into()));
        }
        Ok(())
    }

    pub fn gamma(&self) -> f64 {
        self.beta.gamma()
    }
}
