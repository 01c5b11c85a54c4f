//! Cyclotomic harmonic sums and cyclotomic harmonic polylogarithms.
//!
//! Exact algebra (shuffle, stuffle, multiple-argument relations, counting formulas)
//! lives next to high-precision numerics, so that every symbolic identity can be
//! checked against an independent evaluation. See the `examples/` directory.

pub mod cli;
pub mod constants;
pub mod cyclopoly;
pub mod linalg;
pub mod lincomb;
pub mod numerics;
pub mod sums;
pub mod verify;
pub mod words;

pub use cyclopoly::{IntPolynomial, Letter};
pub use lincomb::LinComb;
pub use sums::SumIndex;
pub use words::Word;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
