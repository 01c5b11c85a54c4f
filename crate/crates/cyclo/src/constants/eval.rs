//! Numerical values of constant symbols and expressions.

use super::accel::{extrapolate, sample_points};
use super::expr::{ConstantExpr, ConstantSymbol, Part};
use super::special::{
    clausen, dirichlet_beta, hurwitz_zeta, legendre_chi, li_real_small, li_root_of_unity, nielsen_s12, polygamma,
    wprec,
};
use crate::numerics::{bits, catalan, euler_gamma, pi, zeta};
use crate::sums::{eval_sum_float_prefix, SumIndex, Triple};
use crate::{Error, Result};
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::collections::HashMap;

static CACHE: Lazy<Mutex<HashMap<(ConstantSymbol, u32), Float>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// `ψ(x)` for rational `x > 0`, shifted into `(0, 1]`.
pub fn psi_expr(x: &Rational) -> Result<ConstantExpr> {
    if *x <= 0 {
        return Err(Error::Domain(format!("ψ({x}) has a pole")));
    }
    let mut y = x.clone();
    let mut shift = ConstantExpr::zero();
    while y > 1 {
        y -= 1;
        shift = shift.add(&ConstantExpr::rational(Rational::from(1) / y.clone()));
    }
    let base = if y == 1 {
        ConstantExpr::symbol(ConstantSymbol::EulerGamma).scale(&Rational::from(-1))
    } else {
        ConstantExpr::symbol(ConstantSymbol::polygamma(0, &y)?)
    };
    Ok(base.add(&shift))
}

/// `Σ_{k>=1} 1/(ak+b) = (1/a)[σ_0 - γ - ψ((a+b)/a)]`, with `σ_0 = Σ 1/k` kept formal.
pub fn harmonic_regularized(a: i64, b: i64) -> Result<ConstantExpr> {
    let t = Triple::new(a, b, 1);
    if !t.is_valid() {
        return Err(Error::Domain(format!("invalid triple {{{a},{b},1}}")));
    }
    let inner = ConstantExpr::symbol(ConstantSymbol::Sigma0)
        .sub(&ConstantExpr::symbol(ConstantSymbol::EulerGamma))
        .sub(&psi_expr(&Rational::from((a + b, a)))?);
    Ok(inner.scale(&Rational::from((1, a))))
}

/// Rewrite every divergent depth-one `σ_{a,b,1}` through [`harmonic_regularized`].
pub fn regularize(e: &ConstantExpr) -> Result<ConstantExpr> {
    let mut out = e.clone();
    for s in e.symbols() {
        if let ConstantSymbol::Sigma(idx) = &s {
            if idx.depth() == 1 && idx.is_divergent_at_infinity() {
                let t = idx.0[0];
                out = out.substitute(&s, &harmonic_regularized(t.a, t.b)?)?;
            }
        }
    }
    Ok(out)
}

/// `σ` at one triple, `s^k/(ak+b)^c` summed over `k >= 1`.
fn sigma_depth1(t: &Triple, digits: u32) -> Result<Float> {
    let prec = wprec(digits);
    let (a, b) = (t.a, t.b);
    if t.s > 0 {
        if t.c == 1 {
            return Err(Error::Divergent(format!("σ_{{{a},{b},1}}")));
        }
        let x = Float::with_val(prec, Rational::from((a + b, a)));
        let z = hurwitz_zeta(t.c, &x)?;
        return Ok(z / Float::with_val(prec, a).pow(t.c));
    }
    let even = Rational::from((2 * a + b, 2 * a));
    let odd = Rational::from((a + b, 2 * a));
    let scale = Float::with_val(prec, 2 * a).pow(t.c);
    let v = if t.c == 1 {
        polygamma(0, &odd, prec)? - polygamma(0, &even, prec)?
    } else {
        hurwitz_zeta(t.c, &Float::with_val(prec, &even))? - hurwitz_zeta(t.c, &Float::with_val(prec, &odd))?
    };
    Ok(v / scale)
}

/// Limit of `S_idx(N)` by generalized Richardson extrapolation at even `N`, checked
/// between two sampling plans.
pub fn sigma_numeric(idx: &SumIndex, digits: u32) -> Result<Float> {
    if idx.depth() == 0 {
        return Ok(Float::with_val(wprec(digits), 1));
    }
    if idx.is_divergent_at_infinity() {
        return Err(Error::Divergent(format!("{idx} diverges")));
    }
    if idx.depth() == 1 {
        return sigma_depth1(&idx.0[0], digits);
    }
    let prec = bits(3 * digits + 60).max(600);
    let logs = idx.depth() - 1;
    let plans = [(2000u64, 40u64, 31usize), (3000, 60, 41)];
    let nmax = plans.iter().map(|&(n0, st, c)| n0 + st * (c as u64 - 1)).max().unwrap();
    let partial = eval_sum_float_prefix(idx, nmax, prec)?;
    let mut vals = Vec::new();
    for &(n0, step, count) in &plans {
        let pts: Vec<_> = sample_points(n0, step, count).into_iter().map(|n| (n, partial[n as usize].clone())).collect();
        vals.push(extrapolate(&pts, logs).ok_or_else(|| Error::Numeric("singular extrapolation system".into()))?);
    }
    let diff = Float::with_val(prec, &vals[0] - &vals[1]).abs();
    let tol = Float::with_val(prec, 10).pow(-(digits as i32));
    if diff > tol {
        return Err(Error::Numeric(format!(
            "{idx}: extrapolation unstable at {digits} digits (plans differ by {:.3e})",
            diff.to_f64()
        )));
    }
    Ok(Float::with_val(wprec(digits), &vals[1]))
}

/// Coefficients of `P_n` with `d^n/dx^n cot x = P_n(cot x)`.
pub fn cot_derivative_poly(n: u32) -> Vec<Integer> {
    let mut p = vec![Integer::from(0), Integer::from(1)];
    for _ in 0..n {
        // -(1 + c^2) P'
        let d: Vec<Integer> = (1..p.len()).map(|i| Integer::from(&p[i] * i as u32)).collect();
        let mut q = vec![Integer::new(); d.len() + 2];
        for (i, c) in d.iter().enumerate() {
            q[i] -= c;
            q[i + 2] -= c;
        }
        while q.len() > 1 && q.last().is_some_and(|c| *c == 0) {
            q.pop();
        }
        p = q;
    }
    p
}

fn cot_derivative(n: u32, p: u64, q: u64, prec: u32) -> Result<Float> {
    let x = Float::with_val(prec, pi(prec) * p) / q;
    if Float::with_val(prec, x.sin_ref()).abs() < Float::with_val(prec, 10).pow(-(prec as i32 / 8)) {
        return Err(Error::Domain(format!("cot has a pole at π·{p}/{q}")));
    }
    let c = x.cot();
    let mut v = Float::with_val(prec, 0);
    for coef in cot_derivative_poly(n).iter().rev() {
        v *= &c;
        v += coef;
    }
    Ok(v)
}

fn pick(z: crate::numerics::Complex, part: Part) -> Float {
    match part {
        Part::Re => z.re,
        Part::Im => z.im,
    }
}

/// Numerical value of a symbol, cached per precision.
pub fn eval_symbol(s: &ConstantSymbol, digits: u32) -> Result<Float> {
    if let Some(v) = CACHE.lock().get(&(s.clone(), digits)) {
        return Ok(v.clone());
    }
    let v = eval_symbol_uncached(s, digits)?;
    CACHE.lock().insert((s.clone(), digits), v.clone());
    Ok(v)
}

fn eval_symbol_uncached(s: &ConstantSymbol, digits: u32) -> Result<Float> {
    use ConstantSymbol as S;
    let prec = wprec(digits);
    let surd = |a: &Rational, b: &Rational, d: u64| {
        Float::with_val(prec, a) + Float::with_val(prec, b) * Float::with_val(prec, d).sqrt()
    };
    Ok(match s {
        S::Sigma(idx) => sigma_numeric(idx, digits)?,
        S::Sigma0 => return Err(Error::Divergent("σ_0 has no value".into())),
        S::Zeta(1) => return Err(Error::Divergent("ζ(1)".into())),
        S::Zeta(k) => zeta(*k, prec),
        S::Ln(p) => Float::with_val(prec, *p).ln(),
        S::LnSurd { a, b, d } => {
            let x = surd(a, b, *d);
            if x <= 0 {
                return Err(Error::Domain(format!("ln of non-positive {s}")));
            }
            x.ln()
        }
        S::Pi => pi(prec),
        S::Sqrt(d) => Float::with_val(prec, *d).sqrt(),
        S::SqrtSurd { a, b, d } => {
            let x = surd(a, b, *d);
            if x < 0 {
                return Err(Error::Domain(format!("square root of negative {s}")));
            }
            x.sqrt()
        }
        S::Catalan => catalan(prec),
        S::EulerGamma => euler_gamma(prec),
        S::Polygamma { n, p, q } => polygamma(*n, &Rational::from((*p, *q)), prec)?,
        S::DirichletBeta(l) | S::Ti(l) => dirichlet_beta(*l, prec)?,
        S::LiHalf(k) => li_real_small(*k, &Float::with_val(prec, 0.5))?,
        S::LiRoot { weight, l, k, part } => pick(li_root_of_unity(*weight, *k as i64, *l, prec)?, *part),
        S::Chi { nu, p, q, part } => pick(legendre_chi(*nu, *p, *q, prec)?, *part),
        S::Clausen { n, p, q } => clausen(*n, *p, *q, prec)?,
        S::CotDerivative { n, p, q } => cot_derivative(*n, *p, *q, prec)?,
        S::NielsenS12 { x } => nielsen_s12(x, prec)?,
    })
}

/// Numerical value of an expression. Divergent `σ_{a,b,1}` are regularized first and the
/// formal `σ_0` must then cancel.
pub fn eval_constant(e: &ConstantExpr, digits: u32) -> Result<Float> {
    let e = regularize(e)?;
    if e.symbols().contains(&ConstantSymbol::Sigma0) {
        return Err(Error::Divergent(format!("σ_0 does not cancel in {e}")));
    }
    let prec = wprec(digits);
    let mut acc = Float::with_val(prec, 0);
    for (m, c) in e.terms() {
        let mut t = Float::with_val(prec, c);
        for (s, k) in &m.0 {
            t *= eval_symbol(s, digits)?.pow(*k);
        }
        acc += t;
    }
    Ok(acc)
}

/// `|a - b| < 10^{-digits}` after evaluation.
pub fn agree(a: &ConstantExpr, b: &ConstantExpr, digits: u32) -> Result<bool> {
    let d = eval_constant(&a.sub(b), digits + 5)?;
    Ok(d.abs() < Float::with_val(wprec(digits), 10).pow(-(digits as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, d: u32) -> Float {
        eval_constant(&s.parse().unwrap(), d).unwrap()
    }

    #[test]
    fn depth_one_and_two() {
        assert!(ev("sigma[{2,1,-1}] + 1 - pi/4", 40).abs() < 1e-38);
        assert!(ev("sigma[{1,0,2},{1,0,1}] - 2*zeta(3)", 40).abs() < 1e-38);
        assert!(ev("sigma[{1,0,-2}] + pi^2/12", 40).abs() < 1e-38);
        // Σ 1/(2k) - Σ 1/k/2 : σ_0 cancels
        assert!(ev("sigma[{2,0,1}] - 1/2*sigma[{1,0,1}]", 30).abs() < 1e-28);
        assert!(eval_constant(&"sigma[{2,1,1}]".parse().unwrap(), 30).is_err());
    }

    #[test]
    fn cot_polys() {
        // cot' = -(1+c^2), cot'' = 2c + 2c^3
        let p1: Vec<i64> = cot_derivative_poly(1).iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(p1, vec![-1, 0, -1]);
        let p2: Vec<i64> = cot_derivative_poly(2).iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(p2, vec![0, 2, 0, 2]);
        // cot'(π/4) = -2
        let v = cot_derivative(1, 1, 4, 200).unwrap() + 2u32;
        assert!(v.abs() < 1e-50);
    }
}
