//! Special functions: complex log-gamma, Kummer's ₁F₁, and the Laguerre and
//! Legendre polynomials.

mod dd;
mod fixed;
pub mod gamma;
pub mod hyp1f1;
pub mod orthopoly;

pub use gamma::{arg_gamma, gamma, ln_gamma_real, log_gamma, principal_angle, rgamma};
pub use hyp1f1::{
    hyp1f1, hyp1f1_asymptotic, hyp1f1_asymptotic_with, hyp1f1_series, hyp1f1_series_with_bound, hyp1f1_with,
    AsymptoticConvention, Hyp1f1Config,
};
pub use orthopoly::{laguerre, laguerre_overlap, legendre, legendre_table};
