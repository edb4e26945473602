//! Finite-N weights, (skew-)orthogonal polynomials and kernels of the
//! complex-eigenvalue ensembles.

mod charpoly;
mod kernels;
mod orthogonality;
mod polynomials;
mod skew_kernel;
mod weights;

pub(crate) use weights::trapezoid_log_line;

pub use charpoly::{charpoly_expectation_mc, charpoly_matrix, CharpolyEstimates, McEstimate};
pub use kernels::{finite_kernel, finite_kernel_scaled};
pub use orthogonality::{
    orthogonality_check, orthogonality_matrix, skew_inner_products, skew_orthogonality_check, InnerProducts, QuadControls,
};
pub use skew_kernel::{skew_op_prekernel, SkewOpKernel};
pub use polynomials::{
    hermite_normalized_seq, laguerre_normalized_seq, monic_ops, op_hermite_complex, op_hermite_complex_scaled,
    op_laguerre_complex, op_laguerre_complex_scaled, skew_ops, ScaledSeq,
};
pub use weights::{
    bivariate_weight, g_nu, h_nu, ln_chiral_w2, ln_ginibre_w2, ln_weight, weight, BivariateWeight, WeightFamily,
    WeightSpec,
};
