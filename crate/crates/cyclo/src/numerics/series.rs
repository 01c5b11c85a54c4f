//! Power series of polylogarithms over `{f_0, f_1, f_2, f_4^0, f_4^1}`.
//!
//! Each block is `coef · Σ_{i≥1} σ^i x^{2i+c} / (2i+c)^a · S_n(i)` with an
//! inner index `n` built from triples `{2, c', ±a'}`.

use super::bits;
use crate::cyclopoly::Letter;
use crate::sums::{SumIndex, Triple};
use crate::words::{extract_log_powers, Word};
use crate::{Error, Result};
use rug::ops::Pow;
use rug::{Float, Rational};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub sigma: i8,
    pub c: i64,
    pub a: u32,
    pub inner: SumIndex,
    pub coef: Rational,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sigma < 0 { "(-1)^i " } else { "" };
        write!(f, "{} * sum_i {s}x^(2i{:+})/(2i{:+})^{} {}", self.coef, self.c, self.c, self.a, self.inner)
    }
}

/// Series of `C_u(x)` for a word `u` without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeriesExpansion {
    pub blocks: Vec<Block>,
}

fn in_alphabet(f: &Letter) -> bool {
    matches!((f.k, f.l), (0, 0) | (1, 0) | (2, 0) | (4, 0) | (4, 1))
}

impl SeriesExpansion {
    pub fn new(w: &Word) -> Result<Self> {
        if let Some(f) = w.letters().iter().find(|f| !in_alphabet(f)) {
            return Err(Error::Unsupported(format!("letter {f} has no series template")));
        }
        if w.is_empty() || w.trailing_zeros() > 0 {
            return Err(Error::Domain("series blocks need a word ending in a nonzero letter".into()));
        }
        let one = Rational::from(1);
        let mut letters = w.letters().iter().rev();
        let last = letters.next().expect("non-empty");
        let unit = SumIndex::unit();
        let blk = |sigma, c, coef: &Rational| Block { sigma, c, a: 1, inner: unit.clone(), coef: coef.clone() };
        let mut blocks = match (last.k, last.l) {
            (1, 0) => vec![blk(1, -1, &-one.clone()), blk(1, 0, &-one.clone())],
            (2, 0) => vec![blk(1, -1, &one), blk(1, 0, &-one.clone())],
            (4, 0) => vec![blk(-1, -1, &-one.clone())],
            _ => vec![blk(-1, 0, &-one.clone())],
        };
        for f in letters {
            let mut next = Vec::new();
            for b in blocks {
                let t = Triple::new(2, b.c, b.sigma as i64 * b.a as i64);
                let tneg = Triple::new(2, b.c, -(b.sigma as i64) * b.a as i64);
                match (f.k, f.l) {
                    (0, _) => next.push(Block { a: b.a + 1, ..b }),
                    (4, l) => next.push(Block {
                        sigma: -1,
                        c: b.c + 1 + l as i64,
                        a: 1,
                        inner: b.inner.prepend(tneg),
                        coef: b.coef,
                    }),
                    (k, _) => {
                        // 1/(t-1) = -(1+t)/(1-t^2), 1/(1+t) = (1-t)/(1-t^2)
                        let (c1, c2) = if k == 1 {
                            (-b.coef.clone(), -b.coef.clone())
                        } else {
                            (b.coef.clone(), -b.coef.clone())
                        };
                        let inner = b.inner.prepend(t);
                        next.push(Block { sigma: 1, c: b.c + 1, a: 1, inner: inner.clone(), coef: c1 });
                        next.push(Block { sigma: 1, c: b.c + 2, a: 1, inner, coef: c2 });
                    }
                }
            }
            blocks = next;
        }
        Ok(SeriesExpansion { blocks })
    }

    /// Sum at `0 < x < 1` with a geometric tail bound on `|S_n(i)| <= i^depth`.
    pub fn eval(&self, x: &Float, prec: u32) -> Result<Float> {
        if *x <= 0 || *x >= 1 {
            return Err(Error::Domain("series needs 0 < x < 1".into()));
        }
        let mut total = Float::with_val(prec, 0);
        let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
        let x2 = Float::with_val(prec, x * x);
        let xf = x2.to_f64();
        for b in &self.blocks {
            let d = b.inner.depth();
            let trip = b.inner.triples();
            let mut partial = vec![Float::with_val(prec, 0); d];
            let mut xp = Float::with_val(prec, x).pow((b.c + 2) as i32);
            let coef = Float::with_val(prec, &b.coef);
            let bound_coef = coef.to_f64().abs().max(1.0);
            let mut acc = Float::with_val(prec, 0);
            let mut i: i64 = 1;
            loop {
                for lvl in (0..d).rev() {
                    let t = &trip[lvl];
                    let mut term = Float::with_val(prec, t.a * i + t.b).pow(t.c);
                    term.recip_mut();
                    if t.s < 0 && i % 2 != 0 {
                        term = -term;
                    }
                    if lvl + 1 < d {
                        term *= &partial[lvl + 1];
                    }
                    partial[lvl] += term;
                }
                let denom = Float::with_val(prec, 2 * i + b.c).pow(b.a);
                let mut v = Float::with_val(prec, &xp / &denom);
                if d > 0 {
                    v *= &partial[0];
                }
                if b.sigma < 0 && i % 2 != 0 {
                    v = -v;
                }
                acc += v;
                // majorant tail: Σ_{j>i} x^{2j+c} j^d
                let ratio = xf * ((i + 2) as f64 / (i + 1) as f64).powi(d as i32);
                if ratio < 1.0 {
                    let lead = Float::with_val(prec, &xp * &x2).to_f64_round(rug::float::Round::Up)
                        * ((i + 1) as f64).powi(d as i32);
                    let tail = bound_coef * lead / (1.0 - ratio);
                    if tail < eps.to_f64() || (tail == 0.0) {
                        break;
                    }
                }
                xp *= &x2;
                i += 1;
                if i > 10_000_000 {
                    return Err(Error::Numeric("series did not converge".into()));
                }
            }
            total += acc * &coef;
        }
        Ok(total)
    }
}

/// `C_w(x)` from the series template, `0 < x < 1`, about `digits` digits.
pub fn eval_hpl_series(w: &Word, x: &Float, digits: u32) -> Result<Float> {
    if let Some(f) = w.letters().iter().find(|f| !in_alphabet(f)) {
        return Err(Error::Unsupported(format!("letter {f} has no series template")));
    }
    let prec = bits(digits + 10);
    let xp = Float::with_val(prec, x);
    let ln = Float::with_val(prec, xp.ln_ref());
    let mut out = Float::with_val(prec, 0);
    for ((u, k), c) in extract_log_powers(w).iter() {
        let base = if u.is_empty() {
            Float::with_val(prec, 1)
        } else {
            SeriesExpansion::new(u)?.eval(&xp, prec)?
        };
        out += base * Float::with_val(prec, &ln).pow(*k as u32) * c;
    }
    Ok(Float::with_val(bits(digits), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::eval_hpl_quadrature;

    #[test]
    fn arctan_block() {
        let x = Float::with_val(128, 0.5);
        let v = eval_hpl_series(&"w[4:0]".parse().unwrap(), &x, 30).unwrap();
        assert!((v - Float::with_val(128, x.atan_ref())).abs() < 1e-29);
    }

    #[test]
    fn against_quadrature() {
        for (w, x) in [("w[4:0,4:1]", 0.3), ("w[2:0,0:0]", 0.5), ("w[1:0,2:0,4:1]", 0.7), ("w[0:0,1:0,0:0]", 0.1)] {
            let w: Word = w.parse().unwrap();
            let x = Float::with_val(128, x);
            let s = eval_hpl_series(&w, &x, 30).unwrap();
            let q = eval_hpl_quadrature(&w, &x, 30).unwrap();
            assert!((s.clone() - &q).abs() < 1e-25, "{w}: {s} {q}");
        }
    }
}
