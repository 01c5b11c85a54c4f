//! Arbitrary-precision evaluation of polylogarithms, Mellin moments and sums.

pub mod asymptotic;
pub mod complex;
pub mod fixtures;
pub mod phi;
pub mod quad;
pub mod series;

use once_cell::sync::Lazy;
use parking_lot::Mutex;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use std::collections::HashMap;

pub use complex::Complex;
pub use quad::{eval_hpl_quadrature, integrate, integrate_weighted};
pub use series::{eval_hpl_series, SeriesExpansion};

/// Binary precision for `digits` decimal digits.
pub fn bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
}

/// Decimal digits carried by a float of the given binary precision.
pub fn digits_of(prec: u32) -> u32 {
    (prec as f64 / std::f64::consts::LOG2_10).floor() as u32
}

/// `10^-d` at precision `prec`.
pub fn tol(prec: u32, d: i32) -> Float {
    Float::with_val(prec, 10).pow(-d)
}

pub fn rat(prec: u32, q: &rug::Rational) -> Float {
    Float::with_val(prec, q)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Key {
    Pi,
    Ln2,
    Gamma,
    Catalan,
    Zeta(u32),
}

static CACHE: Lazy<Mutex<HashMap<(Key, u32), Float>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn cached(key: Key, prec: u32, f: impl FnOnce() -> Float) -> Float {
    if let Some(v) = CACHE.lock().get(&(key.clone(), prec)) {
        return v.clone();
    }
    let v = f();
    CACHE.lock().insert((key, prec), v.clone());
    v
}

pub fn pi(prec: u32) -> Float {
    cached(Key::Pi, prec, || Float::with_val(prec, Constant::Pi))
}

pub fn ln2(prec: u32) -> Float {
    cached(Key::Ln2, prec, || Float::with_val(prec, Constant::Log2))
}

pub fn euler_gamma(prec: u32) -> Float {
    cached(Key::Gamma, prec, || Float::with_val(prec, Constant::Euler))
}

pub fn catalan(prec: u32) -> Float {
    cached(Key::Catalan, prec, || Float::with_val(prec, Constant::Catalan))
}

/// Riemann `ζ(n)`, `n >= 2`.
pub fn zeta(n: u32, prec: u32) -> Float {
    cached(Key::Zeta(n), prec, || Float::with_val(prec, n).zeta())
}

/// `|a - b| <= t`.
pub fn close(a: &Float, b: &Float, t: &Float) -> bool {
    let d = Float::with_val(a.prec().max(b.prec()), a - b).abs();
    d <= *t
}
