//! Octonion algebra, elementary functions of an octonionic variable, octonionic
//! Laplace-type transforms (including gamma and zeta generalizations), and numerical
//! residual checks for the axially symmetric and asymmetric generalized
//! Cauchy-Riemann systems.

// Quadrature node tables keep their published digits; `!(x > 0.0)` rejects NaN.
#![allow(
    clippy::excessive_precision,
    clippy::neg_cmp_op_on_partial_ord,
    clippy::needless_range_loop
)]

pub mod cli;
pub mod elementary;
pub mod error;
pub mod literal;
pub mod octonion;
pub mod quadrature;
pub mod transforms;
pub mod verify;

pub use elementary::{oct_exp, oct_ln, oct_powf, oct_powi};
pub use error::{Error, Result};
pub use octonion::{Octonion, PolarDecomposition};
