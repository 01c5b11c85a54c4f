//! Two printed large-`N` expansions of depth-two sums, and the Mellin-space
//! form of `S_{{3,2,2},{2,1,1}}(1,-1;N)`.

use super::{bits, eval_hpl_quadrature, integrate, integrate_weighted, pi};
use crate::cyclopoly::cyclotomic;
use crate::sums::{eval_sum_definition, SumIndex};
use crate::words::Word;
use crate::{Error, Result};
use rug::ops::Pow;
use rug::{Float, Rational};

/// `(exponent, numerator, denominator)`
type Series = &'static [(i32, i64, i64)];

const EX1_C41: Series = &[
    (1, -1, 1), (2, 1, 1), (3, -11, 12), (4, 3, 4), (5, -127, 240),
    (6, 5, 16), (7, -221, 1344), (8, 7, 64), (9, -367, 3840), (10, 9, 256),
];
const EX1_ALT: Series = &[(4, 1, 16), (5, -1, 4), (6, 27, 64), (7, -1, 32), (8, -269, 256), (9, -11, 32), (10, 8699, 1024)];
const EX2_POW: Series = &[
    (1, 1, 4), (2, -1, 4), (3, 11, 48), (4, -3, 16), (5, 127, 960),
    (6, -5, 64), (7, 221, 5376), (8, -7, 256), (9, 367, 15360), (10, -9, 1024),
];
const EX2_ALT: Series = &[(4, 1, 64), (5, -5, 64), (6, 25, 128), (7, -61, 256), (8, -77, 1024), (9, 221, 512), (10, 1545, 1024)];

fn series(s: Series, n: u64, order: i32, prec: u32) -> Float {
    let mut acc = Float::with_val(prec, 0);
    for &(e, a, b) in s.iter().filter(|t| t.0 <= order) {
        acc += Float::with_val(prec, Rational::from((a, b))) / Float::with_val(prec, n).pow(e);
    }
    acc
}

fn c1(w: &str, digits: u32) -> Result<Float> {
    let w: Word = w.parse()?;
    eval_hpl_quadrature(&w, &Float::with_val(bits(digits), 1), digits)
}

/// The sum each fixture expands.
pub fn fixture_sum(name: &str) -> Result<SumIndex> {
    match name {
        "example1" => Ok(SumIndex::from_signed(&[(2, 1, 2), (1, 0, -2)])),
        "example2" => Ok(SumIndex::from_signed(&[(2, 1, 2), (2, 1, -2)])),
        _ => Err(Error::Domain(format!("unknown fixture {name:?}"))),
    }
}

/// Printed expansion truncated at `1/N^order` (`order <= 10`).
pub fn nested_asymptotic_fixtures(name: &str, n: u64, order: i32) -> Result<Float> {
    let digits = 30;
    let prec = bits(digits);
    let pi2 = Float::with_val(prec, pi(prec).square());
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let c40 = c1("w[4:0,0:0]", digits)?;
    let c41_0 = c1("w[4:1,0:0]", digits)?;
    match name {
        "example1" => {
            let c4 = c1("w[4:0]", digits)?;
            let c040 = c1("w[0:0,4:0,0:0]", digits)?;
            let c4040 = c1("w[4:0,0:0,4:0,0:0]", digits)?;
            let mut v = Float::with_val(prec, c40.square_ref()) * 4u32;
            v += Float::with_val(prec, &c4 * &c040) * 4u32;
            v -= c4040 * 4u32;
            v += (Float::with_val(prec, &pi2 / 2u32) + series(EX1_C41, n, order, prec)) * &c41_0;
            v += series(EX1_ALT, n, order, prec) * sign;
            Ok(v)
        }
        "example2" => {
            let c4 = c1("w[4:0]", digits)?;
            let c0410 = c1("w[0:0,4:1,0:0]", digits)?;
            let c40410 = c1("w[4:0,0:0,4:1,0:0]", digits)?;
            let p = series(EX2_POW, n, order, prec);
            let pi2_8 = Float::with_val(prec, &pi2 / 8u32);
            let mut v = Float::with_val(prec, -&pi2_8);
            v += Float::with_val(prec, &c4 * &c0410);
            v -= c40410;
            v += &p;
            v += series(EX2_ALT, n, order, prec) * sign;
            v += (c41_0 - pi2_8 + p) * &c40;
            Ok(v)
        }
        _ => Err(Error::Domain(format!("unknown fixture {name:?}"))),
    }
}

/// `x^l / Φ_k(x)` at `t`.
fn letter(k: u64, l: u32, t: &Float) -> Float {
    let p = cyclotomic(k).expect("k >= 1");
    let mut v = Float::with_val(t.prec(), 0);
    for c in p.coeffs().iter().rev() {
        v *= t;
        v += c;
    }
    Float::with_val(t.prec(), t.pow_ref_u32(l)) / v
}

trait PowRef {
    fn pow_ref_u32(&self, n: u32) -> Float;
}

impl PowRef for Float {
    fn pow_ref_u32(&self, n: u32) -> Float {
        Float::with_val(self.prec(), self).pow(n)
    }
}

/// Which version of the Mellin representation to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ex2Form {
    /// As printed: `-2 ∫ x^3[..] B ln x` and `B = 3 - f_4^0 - 2 f_12^0 + 2 f_12^2`.
    Printed,
    /// Re-derived: the `ln x` term carries `-(4/3)[C_4^0(1) - C_12^0(1) + 2 C_12^2(1)]`
    /// and `B = 3 - f_4^0 - 2 f_12^0 + f_12^2`, the partial fractions of `3x^6/(1+x^6)`.
    Corrected,
}

/// The right-hand side of the Mellin representation of `S_{{3,2,2},{2,1,1}}(1,-1;N)`.
pub fn ex2_rhs(n: u64, digits: u32, form: Ex2Form) -> Result<Float> {
    let corrected = form == Ex2Form::Corrected;
    let prec = bits(digits + 15);
    let pi = pi(prec);
    let six_n = (6 * n) as u32;
    let alt = if n.is_multiple_of(2) { 1 } else { -1 };
    // 3 - f_4^0 - 2 f_12^0 + 2 f_12^2
    let c122 = if corrected { 1u32 } else { 2u32 };
    let bracket12 = |t: &Float| {
        Float::with_val(t.prec(), 3) - letter(4, 0, t) - letter(12, 0, t) * 2u32 + letter(12, 2, t) * c122
    };
    // x^3 [(-1)^N x^{6N} - 1]
    let mellin_alt = |t: &Float| {
        let p = t.prec();
        Float::with_val(p, t.pow_ref_u32(3)) * (Float::with_val(p, t.pow_ref_u32(six_n)) * alt - 1u32)
    };
    let ln0: Word = "w[0:0]".parse()?;
    // (x^{6N}-1)/(x-1) kept finite at the endpoint: -(1 + x + ... + x^{6N-1})
    let t1 = integrate_weighted(
        &ln0,
        &|t, _| {
            let p = t.prec();
            let x3 = t.pow_ref_u32(3);
            let xn1 = Float::with_val(p, t.pow_ref_u32(six_n)) - 1u32;
            let mut geo = Float::with_val(p, 0);
            let mut tp = Float::with_val(p, 1);
            for _ in 0..six_n {
                geo += &tp;
                tp *= t;
            }
            let mut v = Float::with_val(p, &xn1 * 6u32);
            v += geo;
            let rest = -letter(2, 0, t) - letter(3, 0, t) * 2u32 - letter(3, 1, t) - letter(6, 0, t) * 2u32
                + letter(6, 1, t);
            v += Float::with_val(p, &xn1 * &rest);
            v * x3
        },
        digits + 10,
    )?;
    let t1 = t1 * Float::with_val(prec, 4 - &pi) / 6u32;
    let one = Float::with_val(prec, 1);
    let t2 = integrate_weighted(&ln0, &|t, _| mellin_alt(t) * bracket12(t), digits + 10)?;
    let t2 = if corrected {
        let h = |w: &str| -> Result<Float> { eval_hpl_quadrature(&w.parse()?, &one, digits + 10) };
        let h1 = h("w[4:0]")? - h("w[12:0]")? + h("w[12:2]")? * 2u32;
        t2 * h1 * Rational::from((-4, 3))
    } else {
        t2 * -2i32
    };
    let w04: Word = "w[0:0,4:0]".parse()?;
    let w012: Word = "w[0:0,12:0]".parse()?;
    let w0122: Word = "w[0:0,12:2]".parse()?;
    let k = eval_hpl_quadrature(&w04, &one, digits + 10)? - eval_hpl_quadrature(&w012, &one, digits + 10)?
        + eval_hpl_quadrature(&w0122, &one, digits + 10)? * 2u32;
    let t3 = integrate(|t, _| mellin_alt(t) * bracket12(t), digits + 10)? * k * Rational::from((-4, 3));
    let outer = |t: &Float, _: &Float| mellin_alt(t) * bracket12(t);
    let t4 = (integrate_weighted(&w04, &outer, digits + 10)? - integrate_weighted(&w012, &outer, digits + 10)?
        + integrate_weighted(&w0122, &outer, digits + 10)? * 2u32)
        * Rational::from((4, 3));
    Ok(Float::with_val(bits(digits), t1 + t2 + t3 + t4))
}

/// `|rhs - S(N)|` for the chosen form.
pub fn ex2_deviation(n: u64, digits: u32, form: Ex2Form) -> Result<Float> {
    let idx = SumIndex::from_signed(&[(3, 2, 2), (2, 1, -1)]);
    let exact = eval_sum_definition(&idx, n)?;
    let rhs = ex2_rhs(n, digits, form)?;
    Ok(Float::with_val(rhs.prec(), &rhs - &exact).abs())
}

/// The printed representation against the exact finite sum, to `1e-12`.
pub fn verify_ex2(n: u64, digits: u32) -> Result<bool> {
    Ok(ex2_deviation(n, digits, Ex2Form::Printed)? < 1e-12)
}

/// The re-derived representation against the exact finite sum, to `1e-12`.
pub fn verify_ex2_corrected(n: u64, digits: u32) -> Result<bool> {
    Ok(ex2_deviation(n, digits, Ex2Form::Corrected)? < 1e-12)
}

