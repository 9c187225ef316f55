use num_complex::Complex64;
use thiserror::Error;

use crate::halfint::HalfInt;

/// Errors raised by the evaluation kernels and the verifiers built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole in denominator: c = {c} is a non-positive integer reached before the series terminates")]
    PoleInDenominator { c: f64 },

    #[error("non-terminating series does not converge at |x| = {abs_x}")]
    NonConvergent { abs_x: f64 },

    #[error("series did not reach working precision within {cap} terms")]
    TermCapExceeded { cap: usize },

    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),

    #[error("integer Bessel order {0} is not supported; orders must be half-integers")]
    IntegerOrderUnsupported(HalfInt),

    #[error("{param} = {value} lies outside the domain {domain}")]
    Domain {
        param: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid index: {0}")]
    Index(String),

    #[error("four-momentum is off shell: E = {energy}, on-shell energy is {on_shell}")]
    OffShell { energy: f64, on_shell: f64 },

    #[error("the product kappa * kappa_dot must be real and positive, got {0}")]
    NonPositiveProduct(Complex64),

    #[error("grid has {points} points, the cap is {cap}")]
    SizeCap { points: u128, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
