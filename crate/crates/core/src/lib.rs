// `!(x > 0.0)` is used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bound;
pub mod error;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod scattering;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
