use thiserror::Error;

/// Errors raised by the special-function layer, the model and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("series did not converge after {terms} terms: {what}")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("energy outside the {regime} regime: {detail}")]
    Regime { regime: &'static str, detail: String },

    #[error("fall to the center: 2*a1 = {two_a1} >= (l + 1/2)^2 = {barrier} for l = {l}")]
    FallToCenter { l: u32, two_a1: f64, barrier: f64 },

    #[error("not applicable: {0}")]
    Applicability(String),

    #[error("bound states need an attractive Coulomb term (a2 > 0), got a2 = {0}")]
    NotAttractive(f64),

    #[error("bracket does not isolate the requested level: {0}")]
    Bracket(String),

    #[error("integration became unstable: {0}")]
    Instability(String),

    #[error("asymptotic fit failed: residual {residual:e} exceeds {limit:e}")]
    FitFailure { residual: f64, limit: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, Error>;
