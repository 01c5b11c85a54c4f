//! Special values of infinite cyclotomic sums and related constants.

pub mod accel;
pub mod counting;
pub mod eval;
pub mod expr;
pub mod hpl_one;
pub mod polygamma;
pub mod ramanujan;
pub mod rank;
pub mod roots;
pub mod special;
pub mod w1;

pub use eval::{agree, eval_constant, eval_symbol, regularize, sigma_numeric};
pub use expr::{ConstantExpr, ConstantSymbol, Monomial, Part};
