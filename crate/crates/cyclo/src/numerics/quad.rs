//! Double-exponential quadrature for nested integrals.
//!
//! All levels of an iterated integral live on one tanh-sinh grid
//! `t = x·(1 + tanh(π/2·sinh τ))/2`. Inner levels are indefinite integrals,
//! obtained from Sinc convolution weights `1/2 + Si(π m)/π`.
//! At `x = 1` a level with letter `f_1` is split into a polynomial in
//! `L = ln(1-t)` plus a remainder that vanishes at the endpoint.

use super::{bits, pi};
use crate::cyclopoly::{cyclotomic, Letter};
use crate::words::Word;
use crate::{Error, Result};
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use rug::ops::Pow;
use rug::Float;
use std::collections::HashMap;
use std::sync::Arc;

/// `Si(π m)` for `m >= 0`.
fn si_pi_m(m: u64, prec: u32) -> Float {
    let pi = pi(prec + 32);
    let z = Float::with_val(prec + 32, &pi * m);
    if m == 0 {
        return Float::with_val(prec, 0);
    }
    let cut = prec as f64 * 0.7 + 20.0;
    if z.to_f64() > cut {
        // Si(z) = π/2 - f(z) cos z on multiples of π, f(z) ~ Σ (-1)^n (2n)!/z^{2n+1}
        let p = prec + 32;
        let z2 = Float::with_val(p, &z * &z);
        let mut term = Float::with_val(p, 1 / &z);
        let mut f = term.clone();
        let eps = Float::with_val(p, Float::i_exp(1, -(prec as i32) - 8));
        let mut n = 1u64;
        loop {
            let next = Float::with_val(p, &term * ((2 * n - 1) * (2 * n))) / &z2 * -1i32;
            if next.clone().abs() > term.clone().abs() || next.clone().abs() < eps {
                break;
            }
            f += &next;
            term = next;
            n += 1;
        }
        let half_pi = Float::with_val(p, &pi / 2);
        let r = if m.is_multiple_of(2) { half_pi - f } else { half_pi + f };
        return Float::with_val(prec, r);
    }
    // power series, with extra bits for cancellation
    let p = prec + 16 + (1.45 * z.to_f64()) as u32;
    let z = Float::with_val(p, &pi * m);
    let z2 = Float::with_val(p, &z * &z);
    let mut term = z.clone();
    let mut s = z.clone();
    let eps = Float::with_val(p, Float::i_exp(1, -(prec as i32) - 8));
    let mut n = 1u64;
    loop {
        term = -term * &z2 / ((2 * n) * (2 * n + 1));
        let contrib = Float::with_val(p, &term / (2 * n + 1));
        s += &contrib;
        if contrib.abs() < eps {
            break;
        }
        n += 1;
    }
    Float::with_val(prec, s)
}

static SINC: Lazy<Mutex<HashMap<u32, Arc<Vec<Float>>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// `δ_m = 1/2 + Si(π m)/π` for `m = 0..=n`, cached per precision.
fn sinc_weights(n: usize, prec: u32) -> Arc<Vec<Float>> {
    if let Some(v) = SINC.lock().get(&prec) {
        if v.len() > n {
            return v.clone();
        }
    }
    let pi = pi(prec);
    let v: Vec<Float> = (0..=n as u64)
        .map(|m| Float::with_val(prec, si_pi_m(m, prec) / &pi) + 0.5f64)
        .collect();
    let v = Arc::new(v);
    SINC.lock().insert(prec, v.clone());
    v
}

/// Nodes of the tanh-sinh map onto `[0, x]`.
struct Grid {
    prec: u32,
    h: Float,
    is_one: bool,
    t: Vec<Float>,
    /// `1 - t`, computed without cancellation
    omt: Vec<Float>,
    /// `dt/dτ`
    dt: Vec<Float>,
    /// `dt/(t dτ)` for the letter `1/t`
    dlog: Vec<Float>,
    ln_t: Vec<Float>,
    ln_omt: Vec<Float>,
    delta: Arc<Vec<Float>>,
}

/// logistic `1/(1+e^{-u})` and `ln` of it
fn logistic(u: &Float) -> (Float, Float) {
    let p = u.prec();
    if *u >= 0 {
        let e = Float::with_val(p, -u).exp();
        let s = Float::with_val(p, 1 / Float::with_val(p, &e + 1u32));
        let l = -Float::with_val(p, e.ln_1p());
        (s, l)
    } else {
        let e = Float::with_val(p, u.exp_ref());
        let s = Float::with_val(p, &e / Float::with_val(p, &e + 1u32));
        let l = Float::with_val(p, u - Float::with_val(p, e.ln_1p()));
        (s, l)
    }
}

impl Grid {
    fn new(x: &Float, prec: u32, level: u32) -> Grid {
        // truncation where the Jacobian drops below 2^-prec
        let tmax = ((prec as f64 * std::f64::consts::LN_2 + 10.0) / std::f64::consts::PI).asinh();
        let h0 = 0.5f64;
        let h = h0 / (1u64 << level) as f64;
        let m = (tmax / h).ceil() as i64;
        let pi = pi(prec);
        let hf = Float::with_val(prec, h);
        let is_one = *x == 1;
        let one_minus_x = Float::with_val(prec, 1 - x);
        let (mut t, mut omt, mut dt, mut dlog, mut ln_t, mut ln_omt) =
            (vec![], vec![], vec![], vec![], vec![], vec![]);
        let lnx = Float::with_val(prec, x.ln_ref());
        for j in -m..=m {
            let tau = Float::with_val(prec, &hf * j);
            let u = Float::with_val(prec, tau.sinh_ref()) * &pi;
            let ch = Float::with_val(prec, tau.cosh_ref()) * &pi;
            let (s, ls) = logistic(&u);
            let (sm, _) = logistic(&Float::with_val(prec, -&u));
            let ti = Float::with_val(prec, x * &s);
            // 1 - x s = (1 - x) + x (1 - s)
            let om = Float::with_val(prec, x * &sm) + &one_minus_x;
            let jac = Float::with_val(prec, &ti * &sm) * &ch;
            dlog.push(Float::with_val(prec, &sm * &ch));
            ln_t.push(Float::with_val(prec, &lnx + &ls));
            ln_omt.push(Float::with_val(prec, om.ln_ref()));
            t.push(ti);
            omt.push(om);
            dt.push(jac);
        }
        let delta = sinc_weights(2 * m as usize + 1, prec);
        Grid { prec, h: hf, is_one, t, omt, dt, dlog, ln_t, ln_omt, delta }
    }

    fn len(&self) -> usize {
        self.t.len()
    }

    /// `f(t)·dt/dτ` on the grid.
    fn weight(&self, f: Letter) -> Result<Vec<Float>> {
        let p = self.prec;
        match (f.k, f.l) {
            (0, _) => Ok(self.dlog.clone()),
            (1, _) => Ok((0..self.len())
                .map(|j| -Float::with_val(p, &self.dt[j] / &self.omt[j]))
                .collect()),
            (k, l) => {
                let phi = cyclotomic(k as u64)?;
                Ok((0..self.len())
                    .map(|j| {
                        let t = &self.t[j];
                        let mut v = Float::with_val(p, 0);
                        for c in phi.coeffs().iter().rev() {
                            v *= t;
                            v += c;
                        }
                        let num = Float::with_val(p, t).pow(l);
                        Float::with_val(p, &num * &self.dt[j]) / v
                    })
                    .collect())
            }
        }
    }

    /// Indefinite integral `∫_{-∞}^{τ_i} g` at every node, and the total.
    fn indefinite(&self, g: &[Float]) -> (Vec<Float>, Float) {
        let n = g.len();
        let p = self.prec;
        let d = &self.delta;
        let mut out = Vec::with_capacity(n);
        let mut total = Float::with_val(p, 0);
        for gj in g {
            total += gj;
        }
        total *= &self.h;
        for i in 0..n {
            let mut acc = Float::with_val(p, 0);
            for (j, gj) in g.iter().enumerate() {
                if i >= j {
                    acc += gj * &d[i - j];
                } else {
                    // δ_{-m} = 1 - δ_m
                    acc += gj;
                    acc -= gj * &d[j - i];
                }
            }
            acc *= &self.h;
            out.push(acc);
        }
        (out, total)
    }
}

/// A level function `Σ_k A_k L^k + R(τ)`; at `x < 1` only `R` is used.
struct Level {
    a: Vec<Float>,
    r: Vec<Float>,
}

impl Level {
    fn full(&self, g: &Grid) -> Vec<Float> {
        (0..g.len())
            .map(|j| {
                let mut v = self.r[j].clone();
                let mut lp = Float::with_val(g.prec, 1);
                for ak in &self.a {
                    v += Float::with_val(g.prec, ak * &lp);
                    lp *= &g.ln_omt[j];
                }
                v
            })
            .collect()
    }
}

/// Outer weight `g(t, 1-t)` for `∫_0^1 g(t) C_w(t) dt`.
pub type Outer<'a> = dyn Fn(&Float, &Float) -> Float + 'a;

fn nested(
    letters: &[Letter],
    zeros: usize,
    x: &Float,
    prec: u32,
    level: u32,
    outer: Option<&Outer>,
) -> Result<Float> {
    let g = Grid::new(x, prec, level);
    let n = g.len();
    // innermost: ln^p(t)/p!
    let mut fact = Float::with_val(prec, 1);
    for i in 1..=zeros {
        fact *= i as u32;
    }
    let base: Vec<Float> = (0..n)
        .map(|j| Float::with_val(prec, &g.ln_t[j]).pow(zeros as u32) / &fact)
        .collect();
    let mut cur = if g.is_one {
        let a0 = if zeros == 0 { 1 } else { 0 };
        let r = base.into_iter().map(|v| v - a0).collect();
        Level { a: vec![Float::with_val(prec, a0)], r }
    } else {
        Level { a: vec![], r: base }
    };
    for (depth, &f) in letters.iter().rev().enumerate() {
        let outermost = outer.is_none() && depth + 1 == letters.len();
        let wt = g.weight(f)?;
        if g.is_one && f.k == 1 {
            if outermost && cur.a.iter().any(|a| !a.is_zero()) {
                return Err(Error::Divergent("leading f_1 at x = 1 meets a non-vanishing integrand".to_string()));
            }
            let gv: Vec<Float> = (0..n).map(|j| Float::with_val(prec, &wt[j] * &cur.r[j])).collect();
            let (ind, tot) = g.indefinite(&gv);
            if outermost {
                return Ok(tot);
            }
            let mut a = vec![tot.clone()];
            for (k, ak) in cur.a.iter().enumerate() {
                a.push(Float::with_val(prec, ak / (k as u32 + 1)));
            }
            let r = ind.into_iter().map(|v| v - &tot).collect();
            cur = Level { a, r };
        } else {
            let full = cur.full(&g);
            let gv: Vec<Float> = (0..n).map(|j| Float::with_val(prec, &wt[j] * &full[j])).collect();
            if outermost {
                let mut tot = Float::with_val(prec, 0);
                for v in &gv {
                    tot += v;
                }
                return Ok(tot * &g.h);
            }
            let (ind, tot) = g.indefinite(&gv);
            cur = if g.is_one {
                let r = ind.into_iter().map(|v| v - &tot).collect();
                Level { a: vec![tot], r }
            } else {
                Level { a: vec![], r: ind }
            };
        }
    }
    let outer = outer.expect("letters is non-empty or an outer weight is given");
    let full = cur.full(&g);
    let mut tot = Float::with_val(prec, 0);
    for j in 0..n {
        if g.dt[j].is_zero() {
            continue;
        }
        tot += outer(&g.t[j], &g.omt[j]) * &g.dt[j] * &full[j];
    }
    Ok(tot * &g.h)
}

/// Runs `f(prec, level)` on refined grids until two successive values agree.
fn settle(digits: u32, f: impl Fn(u32, u32) -> Result<Float>) -> Result<Float> {
    let out_prec = bits(digits);
    let mut prec = bits(digits + 15);
    for _attempt in 0..2 {
        let target = Float::with_val(prec, Float::i_exp(1, -(out_prec as i32)));
        let mut prev = f(prec, 0)?;
        for level in 1..12 {
            let cur = f(prec, level)?;
            let diff = Float::with_val(prec, &cur - &prev).abs();
            let scale = Float::with_val(prec, cur.clone().abs()).max(&Float::with_val(prec, 1));
            if diff <= Float::with_val(prec, &target * &scale) {
                return Ok(Float::with_val(out_prec, cur));
            }
            prev = cur;
        }
        prec *= 2;
    }
    Err(Error::Numeric("quadrature did not settle".into()))
}

/// `∫_0^1 g(t) C_w(t) dt`; `g` receives `t` and `1-t`.
pub fn integrate_weighted(w: &Word, g: &Outer, digits: u32) -> Result<Float> {
    let zeros = w.trailing_zeros();
    let head = &w.letters()[..w.weight() - zeros];
    settle(digits, |prec, level| nested(head, zeros, &Float::with_val(prec, 1), prec, level, Some(g)))
}

/// `C_w(x)` for `0 < x <= 1`, to about `digits` decimal digits.
pub fn eval_hpl_quadrature(w: &Word, x: &Float, digits: u32) -> Result<Float> {
    if *x <= 0 || *x > 1 {
        return Err(Error::Domain("quadrature needs 0 < x <= 1".into()));
    }
    let zeros = w.trailing_zeros();
    let head = &w.letters()[..w.weight() - zeros];
    let out_prec = bits(digits);
    if head.is_empty() {
        let l = Float::with_val(out_prec, x.ln_ref());
        let mut fact = Float::with_val(out_prec, 1);
        for i in 1..=zeros {
            fact *= i as u32;
        }
        return Ok(l.pow(zeros as u32) / fact);
    }
    settle(digits, |prec, level| nested(head, zeros, &Float::with_val(prec, x), prec, level, None))
}

/// `∫_0^1 f(t) dt` by tanh-sinh, for integrands with endpoint singularities.
/// `f` receives `t` and `1-t`.
pub fn integrate(f: impl Fn(&Float, &Float) -> Float, digits: u32) -> Result<Float> {
    integrate_weighted(&Word::empty(), &f, digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{catalan, zeta};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn sinc_weights_limits() {
        let d = sinc_weights(400, 128);
        assert_eq!(d[0], 0.5f64);
        assert!((d[1].to_f64() - (0.5 + 1.851937051982466 / std::f64::consts::PI)).abs() < 1e-14);
        assert!((d[400].to_f64() - 1.0).abs() < 1e-3);
        // the two Si branches meet smoothly
        for m in 25..40 {
            let a = si_pi_m(m, 128).to_f64();
            assert!((a - std::f64::consts::FRAC_PI_2).abs() < 0.02, "{m} {a}");
        }
    }

    #[test]
    fn simple_values() {
        let one = Float::with_val(64, 1);
        let v = eval_hpl_quadrature(&w("w[4:0]"), &one, 30).unwrap();
        let p = Float::with_val(v.prec(), &pi(v.prec()) / 4);
        assert!((v - p).abs() < 1e-28);
        let v = eval_hpl_quadrature(&w("w[0:0,4:0]"), &one, 30).unwrap();
        // ∫_0^1 arctan(t)/t dt is positive
        assert!((v - catalan(120)).abs() < 1e-28);
        let v = eval_hpl_quadrature(&w("w[0:0,1:0]"), &one, 30).unwrap();
        assert!((v + zeta(2, 120)).abs() < 1e-28);
        let v = eval_hpl_quadrature(&w("w[0:0,1:0,1:0]"), &one, 30).unwrap();
        assert!((v - zeta(3, 120)).abs() < 1e-28);
        assert!(matches!(
            eval_hpl_quadrature(&w("w[1:0]"), &one, 20),
            Err(Error::Divergent(_))
        ));
    }
}
