//! Relativistic wavefunctions on the Poincaré group.
//!
//! A spin-1/2 wavefunction on the ten-parameter group factorizes into a
//! translation part (a plane-wave Dirac solution) and a Lorentz part (a radial
//! Bessel function times an associated hyperspherical function). The crate
//! evaluates each factor, assembles the bispinor over parameter grids, and
//! substitutes every closed form back into the equation it should satisfy.
//!
//! - [`specfun`]: `2F1` series and half-integer Bessel functions
//! - [`hypersph`]: the kernel `Z^l_m` and the functions `𝔐^m_l`
//! - [`dirac`]: gamma matrices, amplitudes `u_r`, `v_r`, plane-wave residuals
//! - [`radial`]: the radial system and its Bessel-form solutions
//! - [`assembly`]: the bispinor and grid evaluation
//! - [`verify`]: named residual suites
//! - [`cli`]: the `poincare` command

pub mod assembly;
pub mod cli;
pub mod dirac;
pub mod error;
pub mod halfint;
pub mod hypersph;
pub mod radial;
pub mod specfun;
pub mod sum;
pub mod verify;

pub use num_complex::Complex64 as ComplexScalar;

pub use error::{Error, Result};
pub use halfint::HalfInt;
