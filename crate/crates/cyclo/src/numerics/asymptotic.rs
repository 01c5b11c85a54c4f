//! Large-`N` expansions of `φ_k(l,N)` in powers of `1/N`.

use super::{bits, euler_gamma};
use crate::cyclopoly::cyclotomic;
use crate::{Error, Result};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Printed coefficients of `1/N, 1/N^2, ..., 1/N^12`, as `(numerator, denominator)`.
/// For `φ_1` they follow `γ + ln N`.
const PRINTED: &[((u64, u64), [(i64, i64); 12])] = &[
    ((1, 0), [(1, 2), (-1, 12), (0, 1), (1, 120), (0, 1), (-1, 252), (0, 1), (1, 240), (0, 1), (-1, 132), (0, 1), (691, 32760)]),
    ((2, 0), [(1, 2), (-1, 4), (0, 1), (1, 8), (0, 1), (-1, 4), (0, 1), (17, 16), (0, 1), (-31, 4), (0, 1), (691, 8)]),
    ((3, 0), [(1, 3), (0, 1), (-2, 9), (0, 1), (2, 3), (0, 1), (-14, 3), (0, 1), (1618, 27), (0, 1), (-3694, 3), (0, 1)]),
    ((4, 0), [(1, 2), (0, 1), (-1, 2), (0, 1), (5, 2), (0, 1), (-61, 2), (0, 1), (1385, 2), (0, 1), (-50521, 2), (0, 1)]),
    ((5, 0), [(1, 5), (1, 5), (-1, 5), (-1, 1), (31, 25), (67, 5), (-109, 5), (-361, 1), (3779, 5), (412751, 25), (-214093, 5), (-1150921, 1)]),
    ((6, 0), [(1, 1), (0, 1), (-2, 1), (0, 1), (22, 1), (0, 1), (-602, 1), (0, 1), (30742, 1), (0, 1), (-2523002, 1), (0, 1)]),
    ((7, 0), [(1, 7), (2, 7), (0, 1), (-16, 7), (-12, 7), (56, 1), (3900, 49), (-20296, 7), (-5796, 1), (1809992, 7), (4582500, 7), (-35282968, 1)]),
    ((8, 0), [(1, 2), (1, 2), (-3, 2), (-11, 2), (57, 2), (361, 2), (-2763, 2), (-24611, 2), (250737, 2), (2873041, 2), (-36581523, 2), (-512343611, 2)]),
    ((9, 0), [(1, 3), (2, 3), (-2, 3), (-28, 3), (34, 3), (1172, 3), (-1862, 3), (-101428, 3), (207394, 3), (14999012, 3), (-37996022, 3), (-3386034628, 3)]),
    ((10, 0), [(1, 1), (1, 1), (-5, 1), (-17, 1), (151, 1), (871, 1), (-11465, 1), (-92777, 1), (1626151, 1), (16922791, 1), (-370714025, 1), (-4715323337, 1)]),
    ((11, 0), [(1, 11), (4, 11), (6, 11), (-56, 11), (-282, 11), (3064, 11), (26646, 11), (-382616, 11), (-4592442, 11), (7618184, 1), (13945859346, 121), (-28200213176, 11)]),
    ((12, 0), [(1, 1), (1, 1), (-7, 1), (-23, 1), (305, 1), (1681, 1), (-33367, 1), (-257543, 1), (6815585, 1), (67637281, 1), (-2237423527, 1), (-27138236663, 1)]),
    ((5, 2), [(1, 5), (0, 1), (-2, 5), (0, 1), (86, 25), (0, 1), (-338, 5), (0, 1), (12094, 5), (0, 1), (-690866, 5), (0, 1)]),
    ((8, 2), [(1, 2), (0, 1), (-2, 1), (0, 1), (40, 1), (0, 1), (-1952, 1), (0, 1), (177280, 1), (0, 1), (-25866752, 1), (0, 1)]),
    ((10, 1), [(1, 1), (1, 1), (-5, 1), (-17, 1), (151, 1), (871, 1), (-11465, 1), (-92777, 1), (1626151, 1), (16922791, 1), (-370714025, 1), (-4715323337, 1)]),
    ((10, 2), [(1, 1), (0, 1), (-6, 1), (0, 1), (186, 1), (0, 1), (-14166, 1), (0, 1), (2009946, 1), (0, 1), (-458225526, 1), (0, 1)]),
];

/// The `(k,l)` pairs with printed expansions.
pub fn listed_pairs() -> Vec<(u64, u64)> {
    PRINTED.iter().map(|(p, _)| *p).collect()
}

/// Printed coefficients `c_1..c_12` of `φ_k(l,N) ~ Σ c_j / N^j`.
pub fn printed_coefficients(k: u64, l: u64) -> Result<Vec<Rational>> {
    PRINTED
        .iter()
        .find(|(p, _)| *p == (k, l))
        .map(|(_, c)| c.iter().map(|&(a, b)| Rational::from((a, b))).collect())
        .ok_or_else(|| Error::Unsupported(format!("no printed expansion for φ_{k}({l},N)")))
}

/// Exact coefficients from `x = e^{-t}`: `∫ e^{-(N+1)t} G(t) dt = Σ G_n n!/(N+1)^{n+1}`,
/// re-expanded in `1/N`. Needs `k >= 2`.
pub fn derived_coefficients(k: u64, l: u64, order: usize) -> Result<Vec<Rational>> {
    if k < 2 {
        return Err(Error::Domain("derived expansion needs k >= 2".into()));
    }
    let poly = cyclotomic(k)?;
    let fact = |n: usize| -> Integer { (1..=n as u32).fold(Integer::from(1), |a, b| a * b) };
    // e^{-a t} coefficients
    let exp_series = |a: i64| -> Vec<Rational> {
        (0..order).map(|n| Rational::from((Integer::from(-a).pow(n as u32), fact(n)))).collect()
    };
    let num = exp_series(l as i64);
    let mut den = vec![Rational::new(); order];
    for (j, c) in poly.coeffs().iter().enumerate() {
        for (n, v) in exp_series(j as i64).into_iter().enumerate() {
            den[n] += v * c;
        }
    }
    // G = num / den
    let mut g = vec![Rational::new(); order];
    for n in 0..order {
        let mut v = num[n].clone();
        for j in 0..n {
            v -= Rational::from(&g[j] * &den[n - j]);
        }
        g[n] = v / &den[0];
    }
    // Σ_n G_n n! (N+1)^{-(n+1)}, (N+1)^{-p} = Σ_j (-1)^j C(p+j-1, j) N^{-p-j}
    let mut out = vec![Rational::new(); order];
    for n in 0..order {
        let p = n + 1;
        let gn = Rational::from(&g[n] * fact(n));
        for j in 0..order - n {
            let b = Integer::from(Integer::binomial_u((p + j - 1) as u32, j as u32));
            let mut t = Rational::from(&gn * b);
            if j % 2 == 1 {
                t = -t;
            }
            out[p + j - 1] += t;
        }
    }
    Ok(out)
}

/// Truncated printed expansion at `N`, orders `1..=order`.
pub fn phi_asymptotic(k: u64, l: u64, n: u64, order: usize, digits: u32) -> Result<Float> {
    if order > 12 {
        return Err(Error::Domain("printed expansions stop at order 12".into()));
    }
    if n == 0 {
        return Err(Error::Domain("expansion needs N > 0".into()));
    }
    let c = printed_coefficients(k, l)?;
    let prec = bits(digits + 10);
    let inv = Float::with_val(prec, 1) / n;
    let mut acc = Float::with_val(prec, 0);
    let mut p = Float::with_val(prec, 1);
    for cj in c.iter().take(order) {
        p *= &inv;
        acc += Float::with_val(prec, &p * cj);
    }
    if k == 1 {
        acc += euler_gamma(prec);
        acc += Float::with_val(prec, n).ln();
    }
    Ok(Float::with_val(bits(digits), acc))
}
