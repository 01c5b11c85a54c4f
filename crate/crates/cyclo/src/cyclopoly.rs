//! Integer polynomials, cyclotomic polynomials and the partial fractions of `1/(x^l ± 1)`.

use crate::lincomb::LinComb;
use crate::linalg;
use crate::Error;
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use rug::{Integer, Rational};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&v| Integer::from(v)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x^n + c`
    pub fn binomial(n: usize, c: i64) -> Self {
        let mut v = vec![Integer::new(); n + 1];
        v[n] += 1;
        v[0] += c;
        Self::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += Integer::from(a * b);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { Integer::from(-c) } else { c.clone() })
                .collect(),
        )
    }

    /// Division by a monic divisor. Returns (quotient, remainder).
    pub fn divrem_monic(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        assert!(d.coeffs[dd] == 1, "divisor must be monic");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Integer::new(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = r[i + dd].clone();
            if c == 0 {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= Integer::from(&c * dc);
            }
            q[i] = c;
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs.iter().map(|c| serde_json::Value::String(c.to_string())).collect(),
        )
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let abs = Integer::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = abs != 1 || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1];
    for (p, e) in factorize(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

pub fn totient(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

static CYCLO: Lazy<Mutex<HashMap<u64, Arc<IntPolynomial>>>> = Lazy::new(Default::default);

/// Φ_n, by exact division of `x^n - 1` through all Φ_d with d a proper divisor of n.
pub fn cyclotomic(n: u64) -> Result<Arc<IntPolynomial>, Error> {
    if n == 0 {
        return Err(Error::Domain("cyclotomic index must be positive".into()));
    }
    if let Some(p) = CYCLO.lock().get(&n) {
        return Ok(p.clone());
    }
    let mut num = IntPolynomial::binomial(n as usize, -1);
    for d in divisors(n) {
        if d < n {
            let (q, r) = num.divrem_monic(&*cyclotomic(d)?);
            debug_assert!(r.is_zero());
            num = q;
        }
    }
    let p = Arc::new(num);
    CYCLO.lock().insert(n, p.clone());
    Ok(p)
}

/// Indices k with `x^l + 1 = Π Φ_k`: the divisors of 2l that do not divide l.
pub fn factor_xn_plus_1(l: u64) -> Vec<u64> {
    divisors(2 * l).into_iter().filter(|d| !l.is_multiple_of(*d)).collect()
}

/// Indices k with `x^l - 1 = Π Φ_k`: all divisors of l.
pub fn factor_xn_minus_1(l: u64) -> Vec<u64> {
    divisors(l)
}

pub fn product_of_cyclotomics(ks: &[u64]) -> IntPolynomial {
    ks.iter().fold(IntPolynomial::one(), |acc, &k| {
        acc.mul(&cyclotomic(k).expect("positive index"))
    })
}

/// Letter `f_k^l(x) = x^l / Φ_k(x)`; `(0,0)` is `1/x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct Letter {
    pub k: u32,
    pub l: u32,
}

impl Letter {
    pub fn new(k: u32, l: u32) -> Result<Self, Error> {
        let ok = if k == 0 { l == 0 } else { (l as u64) < totient(k as u64) };
        if ok {
            Ok(Letter { k, l })
        } else {
            Err(Error::Domain(format!("invalid letter f_{k}^{l}")))
        }
    }

    pub const fn zero() -> Self {
        Letter { k: 0, l: 0 }
    }

    /// Numerator and denominator of the rational function.
    pub fn as_fraction(&self) -> (IntPolynomial, IntPolynomial) {
        if self.k == 0 {
            return (IntPolynomial::one(), IntPolynomial::from_i64(&[0, 1]));
        }
        let mut num = vec![Integer::new(); self.l as usize + 1];
        num[self.l as usize] += 1;
        (
            IntPolynomial::from_coeffs(num),
            (*cyclotomic(self.k as u64).expect("k >= 1")).clone(),
        )
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f_{}^{}", self.k, self.l)
    }
}

/// Partial fractions of `1/(x^l + 1)` (`sign = +1`) or `1/(x^l - 1)` (`sign = -1`) over letters.
pub fn partial_fraction_inverse(sign: i32, l: u64) -> Result<LinComb<Letter>, Error> {
    if l == 0 || sign.abs() != 1 {
        return Err(Error::Domain("need l >= 1 and sign = ±1".into()));
    }
    let ks = if sign > 0 { factor_xn_plus_1(l) } else { factor_xn_minus_1(l) };
    let full = product_of_cyclotomics(&ks);
    // Unknowns c_{k,j}: 1 = Σ c_{k,j} x^j · full/Φ_k, one equation per power of x.
    let mut cols: Vec<(Letter, IntPolynomial)> = Vec::new();
    for &k in &ks {
        let (cofactor, r) = full.divrem_monic(&*cyclotomic(k)?);
        debug_assert!(r.is_zero());
        for j in 0..totient(k) {
            let shifted = cofactor.mul(&IntPolynomial::binomial(j as usize, 0));
            cols.push((Letter { k: k as u32, l: j as u32 }, shifted));
        }
    }
    let n = cols.len();
    let a: Vec<Vec<Rational>> = (0..n)
        .map(|row| cols.iter().map(|(_, p)| Rational::from(p.coeff(row))).collect())
        .collect();
    let mut b = vec![Rational::new(); n];
    b[0] = Rational::from(1);
    let x = linalg::solve(&a, &b).ok_or_else(|| Error::Numeric("singular partial-fraction system".into()))?;
    Ok(cols.into_iter().zip(x).map(|((letter, _), c)| (letter, c)).collect())
}

/// Recombines a letter combination over its common denominator; returns (numerator, denominator).
pub fn recombine(lc: &LinComb<Letter>) -> (Vec<Rational>, IntPolynomial) {
    let mut ks: Vec<u64> = lc.iter().map(|(l, _)| l.k as u64).collect();
    ks.sort_unstable();
    ks.dedup();
    let den = ks.iter().fold(IntPolynomial::one(), |acc, &k| {
        if k == 0 {
            acc.mul(&IntPolynomial::from_i64(&[0, 1]))
        } else {
            acc.mul(&cyclotomic(k).expect("k >= 1"))
        }
    });
    let mut num = vec![Rational::new(); den.coeffs().len()];
    for (letter, c) in lc.iter() {
        let (p, q) = letter.as_fraction();
        let (cof, _) = den.divrem_monic(&q);
        let term = cof.mul(&p);
        for (i, v) in term.coeffs().iter().enumerate() {
            num[i] += Rational::from(v * c);
        }
    }
    while num.last().is_some_and(|c| *c == 0) {
        num.pop();
    }
    (num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap().to_string(), "x - 1");
        assert_eq!(cyclotomic(12).unwrap().to_string(), "x^4 - x^2 + 1");
        assert_eq!(cyclotomic(6).unwrap().to_string(), "x^2 - x + 1");
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn phi_105_has_minus_two() {
        let p = cyclotomic(105).unwrap();
        assert!(p.coeffs().iter().any(|c| *c == -2));
        for n in 1..105 {
            assert!(cyclotomic(n).unwrap().coeffs().iter().all(|c| c.clone().abs() <= 1));
        }
    }

    #[test]
    fn number_theory() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(20), (1..=20).filter(|&i| gcd(i, 20) == 1).count() as u64);
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
    }

    #[test]
    fn factorizations() {
        assert_eq!(factor_xn_plus_1(3), vec![2, 6]);
        assert_eq!(factor_xn_plus_1(1), vec![2]);
        assert_eq!(factor_xn_plus_1(20), vec![8, 40]);
        assert_eq!(factor_xn_plus_1(19), vec![2, 38]);
        assert_eq!(factor_xn_minus_1(6), vec![1, 2, 3, 6]);
        assert_eq!(product_of_cyclotomics(&factor_xn_minus_1(12)), IntPolynomial::binomial(12, -1));
    }

    #[test]
    fn partial_fractions() {
        let q = |a: i64, b: i64| Rational::from((a, b));
        let lc = partial_fraction_inverse(1, 2).unwrap();
        assert_eq!(lc, LinComb::single(Letter { k: 4, l: 0 }));
        let lc = partial_fraction_inverse(-1, 1).unwrap();
        assert_eq!(lc, LinComb::single(Letter { k: 1, l: 0 }));
        let lc = partial_fraction_inverse(1, 6).unwrap();
        let expect: LinComb<Letter> = [
            (Letter { k: 4, l: 0 }, q(1, 3)),
            (Letter { k: 12, l: 0 }, q(2, 3)),
            (Letter { k: 12, l: 2 }, q(-1, 3)),
        ]
        .into_iter()
        .collect();
        assert_eq!(lc, expect);
    }

    #[test]
    fn letter_validity() {
        assert!(Letter::new(0, 0).is_ok());
        assert!(Letter::new(0, 1).is_err());
        assert!(Letter::new(1, 1).is_err());
        assert!(Letter::new(12, 3).is_ok());
        assert!(Letter::new(12, 4).is_err());
    }
}
