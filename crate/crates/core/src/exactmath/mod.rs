//! Exact arithmetic: coefficient rings, parameter polynomials, matrices.

mod matrix;
mod param;
mod scalar;

pub use matrix::{ExactMatrix, RowSpace, Solution};
pub use param::{ParamPoly, ParamSpace};
pub use scalar::{format_rational, parse_rational, Fp, Ring, Scalar, MAX_PRIME};
