//! Sinc-sampling summation formulas for products of Legendre, Gegenbauer,
//! Jacobi and Hermite functions, with the closed forms of the alternating
//! series they generate.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod expansion;
pub mod functions;
pub mod gseries;
pub mod harness;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
