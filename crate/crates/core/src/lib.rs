#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod experiment;
pub mod illposed;
pub mod kernel;
pub mod regularization;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
