//! k-point correlation functions assembled from kernels: determinants for
//! β=2 and Pfaffians of matrix kernels for β=1,4.

mod matrix_kernel;
mod pfaffian;
mod rk;

pub use matrix_kernel::{
    g_w_closed_form_beta4, g_w_from_k, FiniteMatrixKernel, KernelSource, LimitingMatrixKernel, LineControls,
    MatrixKernel, Prekernel,
};
pub use pfaffian::{pfaffian, pfaffian_expansion};
pub use rk::{finite_beta2, limiting_beta2, pfaffian_matrix, r_k_beta2, r_k_pfaffian};
