//! Exact coefficient rings and multivariate polynomials in `u_0, …, u_{n-1}`.

mod dense;
mod multipoly;
mod scalar;
mod tpoly;

use thiserror::Error;

pub use dense::{BoxPoly, BoxShape};
pub use multipoly::{
    loop_weight, one_plus_u_power, permutations_with_sign, vandermonde, MultiPoly,
};
pub use scalar::{format_rational, parse_rational, Coeff, FieldCoeff};
pub use tpoly::TPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials in {left} and {right} variables cannot be combined")]
    NvarsMismatch { left: usize, right: usize },
    #[error("exponent vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("exponent {expo:?} lies beyond the truncation caps {caps:?}")]
    CapViolation { expo: Vec<i64>, caps: Vec<u32> },
}
