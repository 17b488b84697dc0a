//! Complex solutions, with multiplicities, of zero-dimensional polynomial
//! systems over the rationals.
//!
//! The pipeline computes Möller's triangular decomposition of the ideal
//! modulo many primes in parallel, keeps the majority structure, lifts the
//! coefficients with Chinese remaindering and Farey reconstruction, checks
//! the result against a fresh prime and finally solves each triangular set
//! numerically by back-substitution.

pub mod arith;
pub mod cli;
pub mod error;
pub mod ideals;
pub mod modular;
pub mod poly;
pub mod triang;
pub mod unisolve;

pub use error::{Error, Result};
