// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod poly;
pub mod quadrature;
pub mod realignment;
pub mod scan;
pub mod state;
pub mod symplectic;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
