//! Weight-one single sums `Σ_{k=1}^N s^k/(lk+m)` through `S_{±1}(rN)`, `φ_k(j, rN)` and `σ` constants.

use crate::constants::eval_constant;
use crate::constants::w1::sigma_w1;
use crate::numerics::phi::phi_sequence;
use crate::numerics::{bits, integrate};
use crate::{Error, Result};
use rug::ops::Pow;
use rug::{Float, Rational};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    One,
    /// `(pN+q)/(rN+s)`
    Ratio(i64, i64, i64, i64),
    /// `S_{±1}(rN)`
    S { sign: i8, mult: u64 },
    /// `φ_k(l, rN)`, or its `+` form
    Phi { k: u64, l: u64, mult: u64, plus: bool },
    /// `σ_{{a,b,±1}}`
    Sigma { a: u64, b: i64, sign: i8 },
}

#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Rational,
    /// carries `(-1)^N`
    pub twist: bool,
    pub atom: Atom,
}

#[derive(Clone, Debug)]
pub struct SingleSum {
    pub l: u64,
    pub m: u64,
    pub sign: i8,
    pub terms: Vec<Term>,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn t(c: Rational, atom: Atom) -> Term {
    Term { coeff: c, twist: false, atom }
}

fn tw(c: Rational, atom: Atom) -> Term {
    Term { coeff: c, twist: true, atom }
}

fn s1(r: u64) -> Atom {
    Atom::S { sign: 1, mult: r }
}

fn sm1(r: u64) -> Atom {
    Atom::S { sign: -1, mult: r }
}

fn ph(k: u64, l: u64, r: u64) -> Atom {
    Atom::Phi { k, l, mult: r, plus: false }
}

fn php(k: u64, l: u64, r: u64) -> Atom {
    Atom::Phi { k, l, mult: r, plus: true }
}

fn sg(a: u64, b: i64) -> Atom {
    Atom::Sigma { a, b, sign: -1 }
}

fn ratio(p: i64, qq: i64, r: i64, s: i64) -> Atom {
    Atom::Ratio(p, qq, r, s)
}

/// `(p N)/(r N + s)` with a rational prefactor `c`
fn lin(c: Rational, r: i64, s: i64) -> Term {
    t(c, ratio(1, 0, r, s))
}

/// The 22 printed representations for `l <= 6`.
pub fn single_sum_table() -> Vec<SingleSum> {
    let e = |l, m, sign, terms| SingleSum { l, m, sign, terms };
    vec![
        e(2, 1, 1, vec![lin(q(-2, 1), 2, 1), t(q(-1, 2), s1(1)), t(q(1, 1), s1(2))]),
        e(2, 1, -1, vec![tw(q(1, 1), ratio(0, 1, 2, 1)), tw(q(-1, 1), ph(4, 0, 2)), t(q(1, 1), sg(2, 1))]),
        e(3, 1, 1, vec![lin(q(-3, 1), 3, 1), t(q(-1, 6), s1(1)), t(q(1, 2), s1(3)), t(q(-1, 2), php(3, 0, 3))]),
        e(
            3,
            1,
            -1,
            vec![
                t(q(1, 6), sm1(1)),
                t(q(-1, 2), sm1(3)),
                tw(q(1, 1), ratio(0, 1, 3, 1)),
                tw(q(-1, 2), ph(6, 0, 3)),
                t(q(1, 3), sg(1, 0)),
                t(q(1, 1), sg(3, 1)),
            ],
        ),
        e(3, 2, 1, vec![lin(q(-3, 2), 3, 2), t(q(-1, 6), s1(1)), t(q(1, 2), s1(3)), t(q(1, 2), php(3, 0, 3))]),
        e(
            3,
            2,
            -1,
            vec![
                t(q(-1, 6), sm1(1)),
                t(q(1, 2), sm1(3)),
                tw(q(1, 1), ratio(0, 1, 3, 2)),
                tw(q(-1, 2), ph(6, 0, 3)),
                t(q(1, 3), sg(1, 0)),
                t(q(1, 1), sg(3, 1)),
                t(q(1, 2), Atom::One),
            ],
        ),
        e(
            4,
            1,
            1,
            vec![
                lin(q(-2, 1), 4, 1),
                t(q(-1, 4), s1(2)),
                t(q(1, 2), s1(4)),
                t(q(-1, 2), ph(4, 0, 4)),
                t(q(1, 2), sg(2, 1)),
                t(q(1, 2), ratio(0, 1, 4, 1)),
            ],
        ),
        e(4, 1, -1, vec![tw(q(1, 1), ratio(0, 1, 4, 1)), tw(q(-1, 1), ph(8, 0, 4)), t(q(1, 1), sg(4, 1))]),
        e(
            4,
            3,
            1,
            vec![
                lin(q(-10, 3), 4, 3),
                t(q(-1, 4), s1(2)),
                t(q(1, 2), s1(4)),
                t(q(1, 2), ph(4, 0, 4)),
                t(q(-1, 2), sg(2, 1)),
                t(q(-3, 2), ratio(0, 1, 4, 3)),
            ],
        ),
        e(4, 3, -1, vec![tw(q(1, 1), ratio(0, 1, 4, 3)), tw(q(-1, 1), ph(8, 2, 4)), t(q(1, 1), sg(4, 3))]),
        e(
            5,
            1,
            1,
            vec![
                lin(q(-5, 1), 5, 1),
                t(q(-1, 20), s1(1)),
                t(q(1, 4), s1(5)),
                t(q(-3, 4), php(5, 0, 5)),
                t(q(-1, 2), php(5, 1, 5)),
                t(q(-1, 4), php(5, 2, 5)),
            ],
        ),
        e(
            5,
            1,
            -1,
            vec![
                tw(q(-3, 4), ph(10, 0, 5)),
                tw(q(1, 2), ph(10, 1, 5)),
                tw(q(-1, 4), ph(10, 2, 5)),
                tw(q(1, 1), ratio(0, 1, 5, 1)),
                t(q(1, 20), sm1(1)),
                t(q(-1, 4), sm1(5)),
                t(q(1, 5), sg(1, 0)),
                t(q(1, 1), sg(5, 1)),
            ],
        ),
        e(
            5,
            2,
            1,
            vec![
                lin(q(-5, 2), 5, 2),
                t(q(-1, 20), s1(1)),
                t(q(1, 4), s1(5)),
                t(q(1, 4), php(5, 0, 5)),
                t(q(-1, 2), php(5, 1, 5)),
                t(q(-1, 4), php(5, 2, 5)),
            ],
        ),
        e(
            5,
            2,
            -1,
            vec![
                tw(q(-1, 4), ph(10, 0, 5)),
                tw(q(-1, 2), ph(10, 1, 5)),
                tw(q(1, 4), ph(10, 2, 5)),
                tw(q(1, 1), ratio(0, 1, 5, 2)),
                t(q(-1, 20), sm1(1)),
                t(q(1, 4), sm1(5)),
                t(q(-1, 5), sg(1, 0)),
                t(q(1, 1), sg(5, 2)),
            ],
        ),
        e(
            5,
            3,
            1,
            vec![
                lin(q(-5, 3), 5, 3),
                t(q(-1, 20), s1(1)),
                t(q(1, 4), s1(5)),
                t(q(1, 4), php(5, 0, 5)),
                t(q(1, 2), php(5, 1, 5)),
                t(q(-1, 4), php(5, 2, 5)),
            ],
        ),
        e(
            5,
            3,
            -1,
            vec![
                tw(q(1, 4), ph(10, 0, 5)),
                tw(q(-1, 2), ph(10, 1, 5)),
                tw(q(-1, 4), ph(10, 2, 5)),
                tw(q(1, 1), ratio(0, 1, 5, 3)),
                t(q(1, 20), sm1(1)),
                t(q(-1, 4), sm1(5)),
                t(q(1, 5), sg(1, 0)),
                t(q(1, 1), sg(5, 3)),
            ],
        ),
        e(
            5,
            4,
            1,
            vec![
                lin(q(-5, 4), 5, 4),
                t(q(-1, 20), s1(1)),
                t(q(1, 4), s1(5)),
                t(q(1, 4), php(5, 0, 5)),
                t(q(1, 2), php(5, 1, 5)),
                t(q(3, 4), php(5, 2, 5)),
            ],
        ),
        e(
            5,
            4,
            -1,
            vec![
                tw(q(-1, 4), ph(10, 0, 5)),
                tw(q(1, 2), ph(10, 1, 5)),
                tw(q(-3, 4), ph(10, 2, 5)),
                tw(q(1, 1), ratio(0, 1, 5, 4)),
                t(q(-1, 20), sm1(1)),
                t(q(1, 4), sm1(5)),
                t(q(3, 5), sg(1, 0)),
                t(q(1, 1), sg(5, 1)),
                t(q(-1, 1), sg(5, 2)),
                t(q(1, 1), sg(5, 3)),
                t(q(7, 12), Atom::One),
            ],
        ),
        e(
            6,
            1,
            1,
            vec![
                lin(q(-6, 1), 6, 1),
                t(q(1, 12), s1(1)),
                t(q(-1, 6), s1(2)),
                t(q(-1, 4), s1(3)),
                t(q(1, 2), s1(6)),
                t(q(-1, 4), php(3, 0, 3)),
                t(q(-1, 2), php(3, 0, 6)),
            ],
        ),
        e(
            6,
            1,
            -1,
            vec![
                tw(q(-1, 1), ph(12, 0, 6)),
                tw(q(1, 3), ph(4, 0, 2)),
                tw(q(1, 1), ratio(0, 1, 6, 1)),
                t(q(1, 1), sg(6, 1)),
            ],
        ),
        e(
            6,
            5,
            1,
            vec![
                lin(q(-6, 5), 6, 5),
                t(q(1, 12), s1(1)),
                t(q(-1, 6), s1(2)),
                t(q(-1, 4), s1(3)),
                t(q(1, 2), s1(6)),
                t(q(1, 4), php(3, 0, 3)),
                t(q(1, 2), php(3, 0, 6)),
            ],
        ),
        e(
            6,
            5,
            -1,
            vec![
                tw(q(1, 1), ph(12, 0, 6)),
                tw(q(-2, 3), ph(4, 0, 2)),
                tw(q(-1, 1), ph(4, 0, 6)),
                tw(q(1, 1), ratio(0, 1, 6, 5)),
                t(q(4, 3), sg(2, 1)),
                t(q(-1, 1), sg(6, 1)),
                t(q(2, 15), Atom::One),
            ],
        ),
    ]
}

/// The printed representation for `(l, m, ±)`.
pub fn single_sum_representation(l: u64, m: u64, n: u32, sign: i8) -> Result<SingleSum> {
    if n != 1 {
        return Err(Error::Unsupported(format!("closed forms are weight one; n = {n} has only the integral form")));
    }
    single_sum_table()
        .into_iter()
        .find(|s| s.l == l && s.m == m && s.sign == sign)
        .ok_or_else(|| Error::Unsupported(format!("no representation for l={l}, m={m}, sign={sign}")))
}

/// `Σ_{k=1}^N s^k/(lk+m)^n`, exact.
pub fn direct(l: u64, m: u64, n: u32, sign: i8, big_n: u64) -> Rational {
    let mut acc = Rational::new();
    for k in 1..=big_n {
        let d = rug::Integer::from(l * k + m).pow(n);
        let v = Rational::from((1, d));
        if sign < 0 && k % 2 == 1 {
            acc -= v;
        } else {
            acc += v;
        }
    }
    acc
}

/// Evaluates representations at `N = 1..=nmax`, sharing the φ and σ tables.
pub struct Evaluator {
    nmax: u64,
    digits: u32,
    phis: HashMap<(u64, u64, bool), Vec<Float>>,
    sigmas: HashMap<(u64, i64, i8), Float>,
}

impl Evaluator {
    pub fn new(nmax: u64, digits: u32) -> Self {
        Evaluator { nmax, digits, phis: HashMap::new(), sigmas: HashMap::new() }
    }

    fn atom(&mut self, a: &Atom, n: u64) -> Result<Float> {
        let p = bits(self.digits + 10);
        Ok(match a {
            Atom::One => Float::with_val(p, 1),
            Atom::Ratio(pp, qq, r, s) => {
                let n = n as i64;
                Float::with_val(p, q(pp * n + qq, r * n + s))
            }
            Atom::S { sign, mult } => Float::with_val(p, direct(1, 0, 1, *sign, mult * n)),
            Atom::Phi { k, l, mult, plus } => {
                let top = mult * self.nmax;
                let digits = self.digits + 10;
                let key = (*k, *l, *plus);
                if !self.phis.get(&key).is_some_and(|v| v.len() as u64 > top) {
                    self.phis.insert(key, phi_sequence(*k, *l, top, digits, *plus)?);
                }
                self.phis[&key][(mult * n) as usize].clone()
            }
            Atom::Sigma { a, b, sign } => {
                let key = (*a, *b, *sign);
                if let Some(v) = self.sigmas.get(&key) {
                    return Ok(v.clone());
                }
                let v = eval_constant(&sigma_w1(*a, *b, *sign)?, self.digits + 10)?;
                self.sigmas.insert(key, v.clone());
                v
            }
        })
    }

    pub fn eval(&mut self, s: &SingleSum, n: u64) -> Result<Float> {
        if n > self.nmax {
            return Err(Error::Domain(format!("evaluator prepared for N <= {}", self.nmax)));
        }
        let p = bits(self.digits + 10);
        let mut acc = Float::with_val(p, 0);
        for term in &s.terms {
            let mut v = self.atom(&term.atom, n)? * &term.coeff;
            if term.twist && n % 2 == 1 {
                v = -v;
            }
            acc += v;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug)]
pub struct SingleCheck {
    pub l: u64,
    pub m: u64,
    pub sign: i8,
    pub max_deviation: Float,
}

/// All table entries against direct summation for `N = 1..=nmax`.
pub fn verify_table(nmax: u64, digits: u32) -> Result<Vec<SingleCheck>> {
    let mut ev = Evaluator::new(nmax, digits);
    let mut out = Vec::new();
    for s in single_sum_table() {
        let mut worst = Float::with_val(64, 0);
        for n in 1..=nmax {
            let d = ev.eval(&s, n)? - direct(s.l, s.m, 1, s.sign, n);
            worst = worst.max(&Float::with_val(64, d.abs_ref()));
        }
        out.push(SingleCheck { l: s.l, m: s.m, sign: s.sign, max_deviation: worst });
    }
    Ok(out)
}

/// `Σ_{k=0}^{N-1} s^k/(lk+m)^n` from the `ln^{n-1}` Mellin integral, `m < l`.
pub fn single_sum_integral(l: u64, m: u64, n: u32, sign: i8, big_n: u64, digits: u32) -> Result<Float> {
    if m == 0 || m >= l || n == 0 {
        return Err(Error::Domain("integral form needs 0 < m < l and n >= 1".into()));
    }
    let mut fact = Float::with_val(bits(digits + 10), 1);
    for i in 1..n {
        fact *= i;
    }
    let v = integrate(
        |x, omx| {
            let p = x.prec();
            let xl = Float::with_val(p, x.pow(l as u32));
            // (x^{lN} - 1)/(x^l - 1) = Σ_{j<N} x^{lj}; keep the quotient exact near x = 1
            let ratio = if sign > 0 {
                if *omx < 1e-6 {
                    let mut s = Float::with_val(p, 0);
                    let mut pw = Float::with_val(p, 1);
                    for _ in 0..big_n {
                        s += &pw;
                        pw *= &xl;
                    }
                    s
                } else {
                    (Float::with_val(p, (&xl).pow(big_n as u32)) - 1u32) / (Float::with_val(p, &xl - 1u32))
                }
            } else {
                let mut neg = Float::with_val(p, -&xl).pow(big_n as u32);
                neg -= 1u32;
                neg / (xl + 1u32)
            };
            let lnx = if *omx < 0.5 { Float::with_val(p, -omx).ln_1p() } else { Float::with_val(p, x.ln_ref()) };
            let w = Float::with_val(p, x.pow(m as i32 - 1));
            Float::with_val(p, lnx.pow(n - 1)) * w * ratio
        },
        digits,
    )?;
    let sgn = if sign > 0 { (n - 1) % 2 } else { n % 2 };
    let r = v / fact;
    Ok(if sgn == 1 { -r } else { r })
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = |r: &u64| if *r == 1 { "N".to_string() } else { format!("{r}N") };
        match self {
            Atom::One => write!(f, "1"),
            Atom::Ratio(p, q, r, s) => {
                let num = match (p, q) {
                    (0, q) => format!("{q}"),
                    (p, 0) => format!("{p}N"),
                    (p, q) => format!("({p}N+{q})"),
                };
                write!(f, "{num}/({r}N+{s})")
            }
            Atom::S { sign, mult } => write!(f, "S_{}({})", sign, arg(mult)),
            Atom::Phi { k, l, mult, plus } => {
                write!(f, "phi_{k}({l},{})", arg(mult))?;
                if *plus {
                    write!(f, "_+")?;
                }
                Ok(())
            }
            Atom::Sigma { a, b, sign } => write!(f, "sigma{{{a},{b},{sign}}}"),
        }
    }
}

impl fmt::Display for SingleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "(-1)^k" } else { "1" };
        write!(f, "sum_{{k=1}}^N {s}/({}k+{}) =", self.l, self.m)?;
        for (i, term) in self.terms.iter().enumerate() {
            let c = &term.coeff;
            let op = if *c < 0 { "-" } else if i == 0 { "" } else { "+" };
            let mag = Rational::from(c.abs_ref());
            let mut parts = Vec::new();
            if mag != 1 {
                parts.push(mag.to_string());
            }
            if term.twist {
                parts.push("(-1)^N".into());
            }
            if term.atom != Atom::One || parts.is_empty() {
                parts.push(term.atom.to_string());
            }
            write!(f, " {op}{}{}", if op.is_empty() { "" } else { " " }, parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_entry_at_one() {
        let s = single_sum_representation(2, 1, 1, 1).unwrap();
        let mut ev = Evaluator::new(1, 30);
        let v = ev.eval(&s, 1).unwrap();
        assert!(Float::with_val(100, v - q(1, 3)).abs() < 1e-28);
    }

    #[test]
    fn table_has_22_entries() {
        let t = single_sum_table();
        assert_eq!(t.len(), 22);
        assert!(single_sum_representation(7, 1, 1, 1).is_err());
        assert!(single_sum_representation(2, 1, 2, 1).is_err());
    }

    #[test]
    fn integral_forms() {
        for (l, m, n, s) in [(2u64, 1u64, 1u32, 1i8), (3, 2, 2, -1), (4, 1, 3, 1), (5, 3, 2, 1), (6, 5, 1, -1)] {
            for big_n in [1u64, 4, 9] {
                let v = single_sum_integral(l, m, n, s, big_n, 25).unwrap();
                // k = 0..N-1 is m^{-n} plus the k = 1..N-1 sum
                let exact = direct(l, m, n, s, big_n - 1) + Rational::from((1, rug::Integer::from(m).pow(n)));
                assert!(Float::with_val(100, v - exact).abs() < 1e-20, "{l} {m} {n} {s} {big_n}");
            }
        }
    }

    #[test]
    fn all_identities_hold() {
        for c in verify_table(30, 30).unwrap() {
            assert!(c.max_deviation < 1e-20, "l={} m={} sign={}: {}", c.l, c.m, c.sign, c.max_deviation);
        }
    }
}
