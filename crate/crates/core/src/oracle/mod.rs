//! Numerical checks that share no formulas with the closed forms.

pub mod integral;
pub mod kg;
pub mod numerov;
pub mod phase;
pub mod report;
pub mod residual;
pub mod shooting;

pub use integral::hyp1f1_quadrature_oracle;
pub use kg::{kg_vs_mie, KgComparison};
pub use numerov::{frobenius, numerov_integrate, numerov_sweep, ode_residual, RadialGrid, RadialSolution};
pub use phase::{extract_phase, fit_tail, PhaseFit};
pub use report::{OracleReport, ToleranceKind};
pub use residual::{
    kummer_residual, kummer_solution, laplace_image, laplace_residual_check,
    laplace_residual_check_with, Derivative, LaplaceForm,
};
pub use shooting::{shoot_bound_state, shoot_bound_state_with, BoundShot, ShootingConfig};
