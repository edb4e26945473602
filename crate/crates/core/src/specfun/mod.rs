//! Special functions of complex argument and quadrature rules.

mod airy;
mod bessel;
mod erf_expint;
mod orthopoly;
pub mod quadrature;
pub mod selftest;

pub use airy::{airy_ai, airy_ai_prime, airy_pair};
pub use bessel::{bessel_j, bessel_j_stack, bessel_k, bessel_k_scaled};
pub use erf_expint::{erf, erfc, expint_e, gamma, ln_erfc, ln_factorial, ln_gamma};
pub use orthopoly::{hermite_h, hermite_h_scaled, laguerre_l, laguerre_l_scaled, Scaled};
pub use quadrature::{gauss_legendre, semi_infinite_rule, PanelRule, PlanarRule, QuadratureRule, RuleKind};
