//! Integer relations among constants and basis counts by rank.

use super::eval::{eval_constant, sigma_numeric};
use super::expr::{ConstantExpr, ConstantSymbol};
use super::w1::sigma_w1;
use crate::linalg;
use crate::numerics::bits;
use crate::sums::{stuffle, SumIndex, Triple};
use crate::{Error, Result};
use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::collections::BTreeMap;

fn round_int(x: &Float) -> Integer {
    x.to_integer_round(Round::Nearest).map(|(i, _)| i).unwrap_or_default()
}

/// PSLQ: an integer vector `c ≠ 0` with `Σ c_i x_i ≈ 0` at `digits` digits, or `None` once
/// every relation must have norm above `max_norm`. The `x_i` must be accurate to `digits`.
pub fn pslq(x: &[Float], digits: u32, max_norm: f64) -> Option<Vec<Integer>> {
    let n = x.len();
    if n < 2 {
        return None;
    }
    let prec = bits(digits + 10);
    let mut y: Vec<Float> = x.iter().map(|v| Float::with_val(prec, v)).collect();
    let norm = y.iter().fold(Float::with_val(prec, 0), |a, v| a + Float::with_val(prec, v.square_ref())).sqrt();
    if norm.is_zero() {
        return None;
    }
    for v in &mut y {
        *v /= &norm;
    }
    let mut s = vec![Float::with_val(prec, 0); n];
    let mut acc = Float::with_val(prec, 0);
    for k in (0..n).rev() {
        acc += Float::with_val(prec, y[k].square_ref());
        s[k] = Float::with_val(prec, acc.sqrt_ref());
    }
    let mut h = vec![vec![Float::with_val(prec, 0); n - 1]; n];
    for j in 0..n - 1 {
        if s[j].is_zero() {
            return None;
        }
        h[j][j] = Float::with_val(prec, &s[j + 1] / &s[j]);
        for i in j + 1..n {
            let d = Float::with_val(prec, &s[j] * &s[j + 1]);
            h[i][j] = -Float::with_val(prec, &y[i] * &y[j]) / d;
        }
    }
    let ident = |n: usize| -> Vec<Vec<Integer>> {
        (0..n).map(|i| (0..n).map(|j| Integer::from((i == j) as i32)).collect()).collect()
    };
    let mut a = ident(n);
    let mut b = ident(n);
    let reduce = |i: usize, j: usize, h: &mut Vec<Vec<Float>>, y: &mut Vec<Float>, a: &mut Vec<Vec<Integer>>, b: &mut Vec<Vec<Integer>>| {
        if h[j][j].is_zero() {
            return;
        }
        let t = round_int(&Float::with_val(prec, &h[i][j] / &h[j][j]));
        if t == 0 {
            return;
        }
        let tf = Float::with_val(prec, &t);
        let yi = Float::with_val(prec, &y[i] * &tf);
        y[j] += yi;
        for k in 0..=j {
            let v = Float::with_val(prec, &h[j][k] * &tf);
            h[i][k] -= v;
        }
        for k in 0..n {
            let v = Integer::from(&a[j][k] * &t);
            a[i][k] -= v;
            let w = Integer::from(&b[k][i] * &t);
            b[k][j] += w;
        }
    };
    for i in 1..n {
        for j in (0..i).rev() {
            reduce(i, j, &mut h, &mut y, &mut a, &mut b);
        }
    }
    let gamma = Float::with_val(prec, 1.2);
    let eps = Float::with_val(prec, 10).pow(-((digits * 4 / 5) as i32));
    for _iter in 0..20_000 {
        let mut m = 0;
        let mut best = Float::with_val(prec, -1);
        let mut g = Float::with_val(prec, 1);
        for i in 0..n - 1 {
            g *= &gamma;
            let v = Float::with_val(prec, &g * Float::with_val(prec, h[i][i].abs_ref()));
            if v > best {
                best = v;
                m = i;
            }
        }
        y.swap(m, m + 1);
        a.swap(m, m + 1);
        h.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }
        if m < n - 2 {
            let t0 = Float::with_val(prec, Float::with_val(prec, h[m][m].square_ref()) + Float::with_val(prec, h[m][m + 1].square_ref())).sqrt();
            let t1 = Float::with_val(prec, &h[m][m] / &t0);
            let t2 = Float::with_val(prec, &h[m][m + 1] / &t0);
            for row in h.iter_mut().skip(m) {
                let (t3, t4) = (row[m].clone(), row[m + 1].clone());
                row[m] = Float::with_val(prec, &t1 * &t3) + Float::with_val(prec, &t2 * &t4);
                row[m + 1] = Float::with_val(prec, &t1 * &t4) - Float::with_val(prec, &t2 * &t3);
            }
        }
        for i in m + 1..n {
            for j in (0..i.min(m + 2)).rev() {
                reduce(i, j, &mut h, &mut y, &mut a, &mut b);
            }
        }
        if let Some(j) = (0..n).find(|&j| Float::with_val(prec, y[j].abs_ref()) < eps) {
            let c: Vec<Integer> = (0..n).map(|i| b[i][j].clone()).collect();
            if c.iter().any(|v| *v != 0) {
                return Some(c);
            }
        }
        let hmax = (0..n - 1).map(|i| Float::with_val(prec, h[i][i].abs_ref())).fold(Float::with_val(prec, 0), |a, v| a.max(&v));
        if hmax.is_zero() {
            return None;
        }
        if Float::with_val(prec, hmax.recip_ref()) > max_norm {
            return None;
        }
    }
    None
}

/// `Σ c_i x_i`
fn residual(c: &[Integer], x: &[Float]) -> Float {
    let p = x[0].prec();
    c.iter().zip(x).fold(Float::with_val(p, 0), |acc, (c, x)| acc + Float::with_val(p, x * c))
}

/// Dimension over ℚ of the span of `values`: each is kept if PSLQ finds no relation with the
/// ones kept before it. Candidate relations found at `digits` must hold at `2·digits`.
pub fn numeric_rank(values: &[Float], digits: u32) -> usize {
    let mut kept: Vec<Float> = Vec::new();
    let tol = Float::with_val(64, 10).pow(-(3 * digits as i32 / 2));
    for v in values {
        if Float::with_val(v.prec(), v.abs_ref()) < tol {
            continue;
        }
        let mut cand = kept.clone();
        cand.push(v.clone());
        let dep = match pslq(&cand, digits, 1e12) {
            Some(c) => c.last().is_some_and(|x| *x != 0) && residual(&c, &cand).abs() < tol,
            None => false,
        };
        if !dep {
            kept.push(v.clone());
        }
    }
    kept.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    /// Stuffle products, exact rank over ℚ.
    Stuffle,
    /// ℚ-dimension of the numerical values modulo products of lower weight.
    Numeric,
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub weight: u32,
    pub cyclotomy: u64,
    pub method: RankMethod,
    pub sums: usize,
    pub rank: usize,
    pub basis: usize,
}

fn weight1_triples(l: u64) -> Vec<Triple> {
    let mut v = Vec::new();
    for m in 0..l as i64 {
        for s in [1, -1] {
            v.push(Triple::new(l as i64, m, s));
        }
    }
    v
}

/// Finite parts (`σ_0 -> 0`) of the `2l` weight-one sums at cyclotomy `l`.
pub fn weight1_finite_parts(l: u64, digits: u32) -> Result<Vec<Float>> {
    weight1_triples(l)
        .iter()
        .map(|t| {
            let e = sigma_w1(t.a as u64, t.b, t.signed_c().signum() as i8)?;
            let f = e.substitute(&ConstantSymbol::Sigma0, &ConstantExpr::zero())?;
            eval_constant(&f, digits)
        })
        .collect()
}

/// Basis counts by rank: `#sums - rank`.
///
/// At weight one the numerical rank of the finite parts together with `1`, plus one for
/// `σ_0`, is the basis size. At weight two [`RankMethod::Stuffle`] counts what remains after all
/// stuffle relations, modulo products and lower weight; [`RankMethod::Numeric`] counts the
/// convergent sums that are new beyond `1`, weight-one values and their products.
pub fn relation_rank(weight: u32, l: u64, method: RankMethod) -> Result<RankReport> {
    if l == 0 {
        return Err(Error::Domain("cyclotomy starts at 1".into()));
    }
    match (weight, method) {
        (1, RankMethod::Numeric) => {
            if l > 24 {
                return Err(Error::Unsupported("weight-one rank verified up to l = 24".into()));
            }
            let digits = 60 + 4 * l as u32;
            let mut vals = vec![Float::with_val(bits(2 * digits), 1)];
            vals.extend(weight1_finite_parts(l, 2 * digits)?);
            // drop the constant 1, add σ_0
            let dim = numeric_rank(&vals, digits);
            let sums = 2 * l as usize;
            Ok(RankReport { weight, cyclotomy: l, method, sums, rank: sums - dim, basis: dim })
        }
        (2, RankMethod::Stuffle) => {
            if l > 6 {
                return Err(Error::Unsupported("weight-two stuffle rank limited to l <= 6".into()));
            }
            let w1 = weight1_triples(l);
            let mut cols: BTreeMap<SumIndex, usize> = BTreeMap::new();
            for a in &w1 {
                cols.insert(SumIndex::new(vec![Triple::new(a.a, a.b, 2 * a.signed_c())]), 0);
                for b in &w1 {
                    cols.insert(SumIndex::new(vec![*a, *b]), 0);
                }
            }
            for (i, v) in cols.values_mut().enumerate() {
                *v = i;
            }
            let mut rows = Vec::new();
            for (i, a) in w1.iter().enumerate() {
                for b in &w1[i..] {
                    let prod = stuffle(&SumIndex::new(vec![*a]), &SumIndex::new(vec![*b]));
                    let mut row = vec![Rational::new(); cols.len()];
                    for (idx, c) in prod.iter() {
                        if idx.weight() == 2 {
                            row[cols[idx]] += c;
                        }
                    }
                    rows.push(row);
                }
            }
            let rank = linalg::rank(&rows);
            Ok(RankReport { weight, cyclotomy: l, method, sums: cols.len(), rank, basis: cols.len() - rank })
        }
        (2, RankMethod::Numeric) => {
            if l > 3 {
                return Err(Error::Unsupported("weight-two numerical rank limited to l <= 3".into()));
            }
            let digits = 45;
            let p = bits(digits + 10);
            let mut lower = vec![Float::with_val(p, 1)];
            let w1 = weight1_finite_parts(l, digits + 10)?;
            let b1: Vec<Float> = {
                // independent weight-one values
                let mut kept: Vec<Float> = Vec::new();
                for v in &w1 {
                    let mut t = vec![Float::with_val(p, 1)];
                    t.extend(kept.iter().cloned());
                    if numeric_rank(&[t.clone(), vec![v.clone()]].concat(), 35) > t.len() {
                        kept.push(v.clone());
                    }
                }
                kept
            };
            for (i, a) in b1.iter().enumerate() {
                lower.push(a.clone());
                for b in &b1[i..] {
                    lower.push(Float::with_val(p, a * b));
                }
            }
            let mut sums = Vec::new();
            for t in weight1_triples(l) {
                sums.push(sigma_numeric(&SumIndex::new(vec![Triple::new(t.a, t.b, 2 * t.signed_c())]), digits)?);
                if t.signed_c() < 0 {
                    for u in weight1_triples(l) {
                        sums.push(sigma_numeric(&SumIndex::new(vec![t, u]), digits)?);
                    }
                }
            }
            let d = 35;
            let base = numeric_rank(&lower, d);
            let all = numeric_rank(&[lower.clone(), sums.clone()].concat(), d);
            let basis = all - base;
            Ok(RankReport { weight, cyclotomy: l, method, sums: sums.len(), rank: sums.len() - basis, basis })
        }
        _ => Err(Error::Unsupported(format!("relation_rank at weight {weight} with {method:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::pi;

    #[test]
    fn pslq_finds_machin() {
        let p = bits(50);
        let x = vec![
            pi(p),
            Float::with_val(p, Float::with_val(p, Rational::from((1, 5))).atan()),
            Float::with_val(p, Float::with_val(p, Rational::from((1, 239))).atan()),
        ];
        let c = pslq(&x, 40, 1e10).unwrap();
        let c: Vec<i64> = c.iter().map(|v| v.to_i64().unwrap()).collect();
        assert!(c == [1, -16, 4] || c == [-1, 16, -4], "{c:?}");
    }

    #[test]
    fn pslq_rejects_independent() {
        let p = bits(60);
        let x = vec![Float::with_val(p, 1), pi(p), Float::with_val(p, 2).ln()];
        assert!(pslq(&x, 50, 1e6).is_none());
    }

    #[test]
    fn weight_one_ranks() {
        for l in 1..=12u64 {
            let r = relation_rank(1, l, RankMethod::Numeric).unwrap();
            assert_eq!(r.basis as u64, super::super::counting::TABLE4_BASIS[l as usize - 1], "l={l}");
        }
    }

    #[test]
    fn weight_two_stuffle() {
        for l in 1..=3u64 {
            let r = relation_rank(2, l, RankMethod::Stuffle).unwrap();
            assert_eq!(r.sums as u64, 2 * l * (2 * l + 1));
            assert_eq!(r.basis as u64, l * (2 * l + 1));
        }
    }

    #[test]
    fn weight_two_numeric_small() {
        let got: Vec<usize> = (1..=2).map(|l| relation_rank(2, l, RankMethod::Numeric).unwrap().basis).collect();
        assert_eq!(got, [1, 1]);
    }
}
