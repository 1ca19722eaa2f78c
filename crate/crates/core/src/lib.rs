//! Period monomials for tensor products of pure motives with unit Hodge
//! numbers, computed from Hodge data alone, plus an exact randomized oracle
//! that checks them on Kronecker-product period matrices.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod hodge;
pub mod invariant;
pub mod kernel;
pub mod matrix;
pub mod oracle;
pub mod rational;
pub mod sampling;

pub use error::{Error, Result};
