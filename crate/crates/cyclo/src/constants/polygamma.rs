//! `ψ^{(n)}(p/q)`, `n >= 1`, `q <= 12`, reduced over a small set of constants by reflection and
//! multiplication relations.

use super::eval::{cot_derivative_poly, eval_constant};
use super::expr::{ConstantExpr, ConstantSymbol, Monomial};
use crate::cyclopoly::{divisors, gcd};
use crate::{Error, Result};
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use rug::ops::Pow;
use rug::Complete;
use rug::{Integer, Rational};
use std::collections::{BTreeMap, HashMap};

/// Exact Bernoulli number `B_n` (`B_1 = -1/2`).
pub fn bernoulli(n: u32) -> Rational {
    // Σ_{k=0}^{m} C(m+1,k) B_k = 0
    let mut b: Vec<Rational> = vec![Rational::from(1)];
    for m in 1..=n {
        let mut s = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            s += Rational::from(Integer::binomial_u(m + 1, k as u32).complete()) * bk;
        }
        b.push(-s / Rational::from(m + 1));
    }
    b.swap_remove(n as usize)
}

/// `ζ(k)`: a rational multiple of `π^k` for even `k`, the symbol otherwise.
pub fn zeta_expr(k: u32) -> ConstantExpr {
    if k % 2 == 1 {
        return ConstantExpr::symbol(ConstantSymbol::Zeta(k));
    }
    // ζ(2j) = (-1)^{j+1} B_{2j} (2π)^{2j} / (2 (2j)!)
    let j = k / 2;
    let f = Rational::from(Integer::factorial(k).complete());
    let mut c = bernoulli(k) * Rational::from(Integer::from(2).pow(k)) / (f * 2u32);
    if j.is_multiple_of(2) {
        c = -c;
    }
    ConstantExpr::symbol_pow(ConstantSymbol::Pi, k as i32).scale(&c)
}

/// `a + b√d`.
#[derive(Clone, Debug)]
struct Quad {
    a: Rational,
    b: Rational,
    d: u64,
}

impl Quad {
    fn mul(&self, o: &Quad) -> Quad {
        let d = self.d.max(o.d);
        let a = Rational::from(&self.a * &o.a) + Rational::from(&self.b * &o.b) * Rational::from(d);
        let b = Rational::from(&self.a * &o.b) + Rational::from(&self.b * &o.a);
        Quad { a, b, d }
    }

    fn add_int(&mut self, c: &Integer) {
        self.a += c;
    }

    fn to_expr(&self) -> ConstantExpr {
        let r = ConstantExpr::rational(self.a.clone());
        if self.b == 0 {
            return r;
        }
        r.add(&ConstantExpr::symbol(ConstantSymbol::Sqrt(self.d)).scale(&self.b))
    }
}

/// `cot(π p/q)` for `q ∈ {2,3,4,6,8,12}`, `0 < p < q` coprime.
fn cot_exact(p: u64, q: u64) -> Option<Quad> {
    let r = |a: i64, b: i64, c: i64, d: u64| Quad { a: Rational::from(a), b: Rational::from((b, c)), d };
    Some(match (q, p) {
        (2, 1) => r(0, 0, 1, 1),
        (3, 1) => r(0, 1, 3, 3),
        (3, 2) => r(0, -1, 3, 3),
        (4, 1) => r(1, 0, 1, 1),
        (4, 3) => r(-1, 0, 1, 1),
        (6, 1) => r(0, 1, 1, 3),
        (6, 5) => r(0, -1, 1, 3),
        (8, 1) => r(1, 1, 1, 2),
        (8, 3) => r(-1, 1, 1, 2),
        (8, 5) => r(1, -1, 1, 2),
        (8, 7) => r(-1, -1, 1, 2),
        (12, 1) => r(2, 1, 1, 3),
        (12, 5) => r(2, -1, 1, 3),
        (12, 7) => r(-2, 1, 1, 3),
        (12, 11) => r(-2, -1, 1, 3),
        _ => return None,
    })
}

/// `d^n/dx^n cot x` at `x = π p/q`: exact where `cot(π p/q)` is quadratic, otherwise a symbol
/// normalized to `p < q/2`.
pub fn cot_derivative_expr(n: u32, p: u64, q: u64) -> ConstantExpr {
    if let Some(c) = cot_exact(p, q) {
        let mut v = Quad { a: Rational::new(), b: Rational::new(), d: c.d };
        for coef in cot_derivative_poly(n).iter().rev() {
            v = v.mul(&c);
            v.add_int(coef);
        }
        return v.to_expr();
    }
    // cot^{(n)}(π - x) = (-1)^{n+1} cot^{(n)}(x)
    if 2 * p > q {
        let s = if n.is_multiple_of(2) { -1 } else { 1 };
        return cot_derivative_expr(n, q - p, q).scale(&Rational::from(s));
    }
    ConstantExpr::symbol(ConstantSymbol::CotDerivative { n, p, q })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Unknown {
    /// `ψ^{(n)}(p/q)`
    Psi(u64, u64),
    /// `β(n+1)`
    Beta,
}

struct Row {
    coef: BTreeMap<usize, Rational>,
    rhs: ConstantExpr,
}

/// Every unknown at order `n` as `Σ c_f f + rhs` with `f` free; free unknowns map to themselves.
type Solved = HashMap<(u64, u64), ConstantExpr>;

static SOLVED: Lazy<Mutex<HashMap<(u32, u64), Solved>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn reduce_frac(p: u64, q: u64) -> (u64, u64) {
    let g = gcd(p, q);
    (p / g, q / g)
}

fn sign_pow(n: u32) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `ψ^{(n)}(1) = (-1)^{n+1} n! ζ(n+1)`
fn psi_at_one(n: u32) -> ConstantExpr {
    let f = Rational::from(Integer::factorial(n).complete()) * sign_pow(n + 1);
    zeta_expr(n + 1).scale(&f)
}

fn solve_system(n: u32, q: u64) -> Result<Solved> {
    // unknowns ordered so that the preferred constants come last and stay free
    let mut cols: Vec<Unknown> = Vec::new();
    for d in divisors(q).into_iter().filter(|&d| d >= 2).rev() {
        for p in (1..d).rev().filter(|&p| gcd(p, d) == 1) {
            cols.push(Unknown::Psi(p, d));
        }
    }
    let with_beta = n % 2 == 1 && q.is_multiple_of(4);
    if with_beta {
        cols.push(Unknown::Beta);
    }
    let index: HashMap<Unknown, usize> = cols.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
    let col = |p: u64, d: u64| -> Option<usize> {
        let (p, d) = reduce_frac(p, d);
        if p == d {
            None
        } else {
            Some(index[&Unknown::Psi(p, d)])
        }
    };

    let mut rows: Vec<Row> = Vec::new();
    // adds c·ψ(p/d) to a row, moving ψ(1) to the right-hand side
    let put = |row: &mut Row, p: u64, d: u64, c: Rational| match col(p, d) {
        Some(i) => {
            let e = row.coef.entry(i).or_default();
            *e += c;
        }
        None => row.rhs = row.rhs.sub(&psi_at_one(n).scale(&c)),
    };

    // reflection: (-1)^n ψ(1-z) - ψ(z) = π^{n+1} cot^{(n)}(π z)
    for d in divisors(q).into_iter().filter(|&d| d >= 2) {
        for p in (1..d).filter(|&p| gcd(p, d) == 1) {
            let mut row = Row { coef: BTreeMap::new(), rhs: ConstantExpr::zero() };
            row.rhs = ConstantExpr::symbol_pow(ConstantSymbol::Pi, n as i32 + 1).mul(&cot_derivative_expr(n, p, d));
            put(&mut row, d - p, d, Rational::from(sign_pow(n)));
            put(&mut row, p, d, Rational::from(-1));
            rows.push(row);
        }
    }
    // multiplication: m^{n+1} ψ(mz) = Σ_k ψ(z + k/m), z = j/q <= 1/m
    for m in divisors(q).into_iter().filter(|&m| m >= 2) {
        for j in 1..=q / m {
            let mut row = Row { coef: BTreeMap::new(), rhs: ConstantExpr::zero() };
            put(&mut row, m * j, q, Rational::from(Integer::from(m).pow(n + 1)));
            for k in 0..m {
                put(&mut row, j + k * (q / m), q, Rational::from(-1));
            }
            rows.push(row);
        }
    }
    // ψ(1/4) - ψ(3/4) = (-1)^{n+1} n! 4^{n+1} β(n+1)
    if with_beta {
        let mut row = Row { coef: BTreeMap::new(), rhs: ConstantExpr::zero() };
        put(&mut row, 1, 4, Rational::from(1));
        put(&mut row, 3, 4, Rational::from(-1));
        let c = Rational::from(Integer::factorial(n).complete() * Integer::from(4).pow(n + 1)) * sign_pow(n + 1);
        row.coef.insert(index[&Unknown::Beta], -c);
        rows.push(row);
    }

    // reduced row echelon form
    let ncols = cols.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i].coef.get(&c).is_some_and(|v| *v != 0)) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = Rational::from(1) / rows[r].coef[&c].clone();
        scale_row(&mut rows[r], &inv);
        for i in 0..rows.len() {
            if i == r {
                continue;
            }
            let f = rows[i].coef.get(&c).cloned().unwrap_or_default();
            if f != 0 {
                let (src, dst) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                sub_row(dst, src, &f);
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    // leftover rows must be consistent
    for row in &rows[r..] {
        if !row.rhs.is_zero() {
            let v = eval_constant(&row.rhs, 40)?;
            if v.abs() > 1e-30 {
                return Err(Error::Numeric(format!("inconsistent polygamma relations at n={n}, q={q}")));
            }
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|p| p.1).collect();
    let symbol_of = |u: &Unknown| -> ConstantExpr {
        match u {
            Unknown::Psi(p, d) => ConstantExpr::symbol(ConstantSymbol::Polygamma { n, p: *p, q: *d }),
            Unknown::Beta if n == 1 => ConstantExpr::symbol(ConstantSymbol::Catalan),
            Unknown::Beta => ConstantExpr::symbol(ConstantSymbol::DirichletBeta(n + 1)),
        }
    };
    let mut out = Solved::new();
    for (c, u) in cols.iter().enumerate() {
        let Unknown::Psi(p, d) = u else { continue };
        let e = match pivots.iter().find(|pv| pv.1 == c) {
            None => symbol_of(u),
            Some(&(row, _)) => {
                let mut e = rows[row].rhs.clone();
                for (fc, v) in &rows[row].coef {
                    if *fc != c && !pivot_cols.contains(fc) {
                        e = e.sub(&symbol_of(&cols[*fc]).scale(v));
                    }
                }
                e
            }
        };
        out.insert((*p, *d), e);
    }
    Ok(out)
}

fn scale_row(row: &mut Row, f: &Rational) {
    for v in row.coef.values_mut() {
        *v *= f;
    }
    row.rhs = row.rhs.scale(f);
}

fn sub_row(dst: &mut Row, src: &Row, f: &Rational) {
    for (c, v) in &src.coef {
        let e = dst.coef.entry(*c).or_default();
        *e -= Rational::from(v * f);
    }
    dst.coef.retain(|_, v| *v != 0);
    dst.rhs = dst.rhs.sub(&src.rhs.scale(f));
}

/// `ψ^{(n)}(p/q)` for `n >= 1`, `0 < p < q <= 12`, written over `ζ_{odd}`, powers of `π`,
/// `β(2k)` and the polygamma values the relations leave free.
pub fn polygamma_reduce(n: u32, p: u64, q: u64) -> Result<ConstantExpr> {
    if n == 0 {
        return Err(Error::Unsupported("order 0 is handled by the weight-one closed forms".into()));
    }
    if q > 12 {
        return Err(Error::Unsupported(format!("polygamma reduction needs q <= 12, got {q}")));
    }
    if p == 0 || p >= q {
        return Err(Error::Domain(format!("need 0 < p < q, got {p}/{q}")));
    }
    let (p, q) = reduce_frac(p, q);
    if let Some(s) = SOLVED.lock().get(&(n, q)) {
        return Ok(s[&(p, q)].clone());
    }
    let s = solve_system(n, q)?;
    let e = s[&(p, q)].clone();
    SOLVED.lock().insert((n, q), s);
    Ok(e)
}

/// The polygamma values left free at order `n` for denominators up to `qmax`.
pub fn free_constants(n: u32, qmax: u64) -> Result<Vec<ConstantSymbol>> {
    let mut out = Vec::new();
    for q in 2..=qmax {
        for p in (1..q).filter(|&p| gcd(p, q) == 1) {
            let e = polygamma_reduce(n, p, q)?;
            let me = ConstantSymbol::Polygamma { n, p, q };
            if e.terms().count() == 1 && e.0.contains_key(&Monomial(vec![(me.clone(), 1)])) {
                out.push(me);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::special::polygamma;
    use rug::Float;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
        assert_eq!(zeta_expr(2).to_string(), "1/6*pi^2");
    }

    #[test]
    fn printed_instances() {
        let e = polygamma_reduce(2, 1, 3).unwrap();
        let want: ConstantExpr = "-4/9*sqrt(3)*pi^3 - 26*zeta(3)".parse().unwrap();
        assert_eq!(e, want);
        let e = polygamma_reduce(2, 2, 3).unwrap();
        let want: ConstantExpr = "4/9*sqrt(3)*pi^3 - 26*zeta(3)".parse().unwrap();
        assert_eq!(e, want);
        let e = polygamma_reduce(4, 1, 3).unwrap();
        let want: ConstantExpr = "-16/3*sqrt(3)*pi^5 - 2904*zeta(5)".parse().unwrap();
        assert_eq!(e, want);
        // (-1)^{l+1} l! (2^{l+1} - 1) ζ_{l+1} at l = 2
        assert_eq!(polygamma_reduce(2, 1, 2).unwrap(), "-14*zeta(3)".parse().unwrap());
    }

    #[test]
    fn reductions_evaluate_correctly() {
        for n in 1..=5 {
            for q in 2..=12u64 {
                for p in (1..q).filter(|&p| gcd(p, q) == 1) {
                    let e = polygamma_reduce(n, p, q).unwrap();
                    let v = eval_constant(&e, 35).unwrap();
                    let w = polygamma(n, &Rational::from((p, q)), 200).unwrap();
                    let rel = Float::with_val(200, (v - &w) / &w).abs();
                    assert!(rel < 1e-32, "n={n} {p}/{q}: {e}");
                }
            }
        }
    }

    #[test]
    fn free_constants_match_expected_basis() {
        let free = |n: u32| -> Vec<(u64, u64)> {
            free_constants(n, 12)
                .unwrap()
                .into_iter()
                .filter_map(|s| match s {
                    ConstantSymbol::Polygamma { p, q, .. } if ![7, 9, 11].contains(&q) => Some((p, q)),
                    _ => None,
                })
                .collect()
        };
        // odd order: ψ(1/3), ψ(1/5), ψ(2/5), ψ(1/8), and β(n+1) enters through 1/4
        let mut odd = free(3);
        odd.sort();
        assert_eq!(odd, vec![(1, 3), (1, 5), (1, 8), (2, 5)]);
        // even order: ψ(1/5), ψ(1/8), ψ(1/12)
        let mut even = free(2);
        even.sort();
        assert_eq!(even, vec![(1, 5), (1, 8), (1, 12)]);
        assert!(polygamma_reduce(3, 1, 4).unwrap().symbols().contains(&ConstantSymbol::DirichletBeta(4)));
    }
}
