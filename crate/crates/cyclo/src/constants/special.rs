//! Numeric kernels: Hurwitz ζ, polygamma, Dirichlet β, polylogarithms at roots of unity.

use crate::numerics::{bits, digits_of, integrate, pi, zeta, Complex};
use crate::{Error, Result};
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::collections::HashMap;

static BERN: Lazy<Mutex<HashMap<u32, Vec<Float>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// `B_{2j}/(2j)!` for `j = 1..=m`, from `ζ(2j)`.
fn bernoulli_over_factorial(m: usize, prec: u32) -> Vec<Float> {
    if let Some(v) = BERN.lock().get(&prec) {
        if v.len() >= m {
            return v[..m].to_vec();
        }
    }
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    let mut out = Vec::with_capacity(m);
    let mut p = Float::with_val(prec, 1);
    for j in 1..=m as u32 {
        p *= &two_pi;
        p *= &two_pi;
        let mut v = zeta(2 * j, prec) * 2u32 / &p;
        if j % 2 == 0 {
            v = -v;
        }
        out.push(v);
    }
    BERN.lock().insert(prec, out.clone());
    out
}

/// `ζ(s, a) = Σ_{n>=0} (n+a)^{-s}` for `s >= 2`, `a > 0`, by Euler-Maclaurin.
pub fn hurwitz_zeta(s: u32, a: &Float) -> Result<Float> {
    if s < 2 {
        return Err(Error::Divergent("Hurwitz ζ needs s >= 2".into()));
    }
    if *a <= 0 {
        return Err(Error::Domain("Hurwitz ζ needs a > 0".into()));
    }
    let out = a.prec();
    let prec = out + 32;
    let d = digits_of(prec) as u64;
    let n = (d * 2 / 5 + 10) as u32;
    let mut acc = Float::with_val(prec, 0);
    for k in 0..n {
        let x = Float::with_val(prec, a + k);
        acc += x.pow(-(s as i32));
    }
    let x = Float::with_val(prec, a + n);
    let xs = Float::with_val(prec, x.pow_ref_i(-(s as i32)));
    acc += Float::with_val(prec, &xs * &x) / (s - 1);
    acc += Float::with_val(prec, &xs / 2u32);
    let eps = Float::with_val(prec, Float::with_val(prec, 2).pow(-(prec as i32))) * Float::with_val(prec, acc.clone().abs());
    let inv2 = Float::with_val(prec, x.square_ref()).recip();
    // term_j = B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}
    let mut rising = Float::with_val(prec, s);
    let mut pw = Float::with_val(prec, &xs / &x);
    let bern = bernoulli_over_factorial(d as usize + 20, prec);
    let mut last = None::<Float>;
    for (j, b) in bern.iter().enumerate() {
        let t = Float::with_val(prec, &rising * &pw) * b;
        let mag = Float::with_val(prec, t.abs_ref());
        if let Some(l) = &last {
            if mag > *l {
                break;
            }
        }
        acc += &t;
        if mag < eps {
            break;
        }
        last = Some(mag);
        let j = j as u32 + 1;
        rising *= s + 2 * j - 1;
        rising *= s + 2 * j;
        pw *= &inv2;
    }
    Ok(Float::with_val(out, acc))
}

trait PowI {
    fn pow_ref_i(&self, e: i32) -> Float;
}

impl PowI for Float {
    fn pow_ref_i(&self, e: i32) -> Float {
        Float::with_val(self.prec(), self).pow(e)
    }
}

/// `ψ^{(n)}(x)` for rational `x > 0`.
pub fn polygamma(n: u32, x: &Rational, prec: u32) -> Result<Float> {
    if *x <= 0 {
        return Err(Error::Domain("polygamma needs a positive argument".into()));
    }
    let xf = Float::with_val(prec + 16, x);
    if n == 0 {
        return Ok(Float::with_val(prec, xf.digamma()));
    }
    let z = hurwitz_zeta(n + 1, &xf)?;
    let fact = Integer::from(Integer::factorial(n));
    let mut v = z * fact;
    if n.is_multiple_of(2) {
        v = -v;
    }
    Ok(Float::with_val(prec, v))
}

/// Dirichlet `β(s) = Σ_{k>=0} (-1)^k/(2k+1)^s`, equal to `Ti_s(1)`.
pub fn dirichlet_beta(s: u32, prec: u32) -> Result<Float> {
    if s == 0 {
        return Err(Error::Domain("β(0) is not a series value".into()));
    }
    if s == 1 {
        return Ok(pi(prec) / 4u32);
    }
    let q = Float::with_val(prec + 16, 0.25);
    let t = Float::with_val(prec + 16, 0.75);
    let d = hurwitz_zeta(s, &q)? - hurwitz_zeta(s, &t)?;
    Ok(Float::with_val(prec, d / Float::with_val(prec + 16, 4u32).pow(s)))
}

/// `Li_n(e^{2πi p/q})`; `Li_1` at `1` diverges.
pub fn li_root_of_unity(n: u32, p: i64, q: u64, prec: u32) -> Result<Complex> {
    if q == 0 {
        return Err(Error::Domain("root of unity needs q >= 1".into()));
    }
    let p = p.rem_euclid(q as i64);
    let g = crate::cyclopoly::gcd(p as u64, q);
    let (p, q) = if p == 0 { (0, 1) } else { (p / g as i64, q / g) };
    let wp = prec + 16;
    if n == 0 {
        return Err(Error::Domain("Li_0 is not handled".into()));
    }
    if n == 1 {
        if p == 0 {
            return Err(Error::Divergent("Li_1(1)".into()));
        }
        let z = Complex::root_of_unity(p, q, wp);
        let one_minus = &Complex::real(Float::with_val(wp, 1)) - &z;
        let v = -one_minus.ln();
        return Ok(Complex::new(Float::with_val(prec, v.re), Float::with_val(prec, v.im)));
    }
    if p == 0 {
        return Ok(Complex::real(zeta(n, prec)));
    }
    let mut acc = Complex::zero(wp);
    for m in 1..=q {
        let a = Float::with_val(wp, Rational::from((m, q)));
        let h = hurwitz_zeta(n, &a)?;
        acc = &acc + &Complex::root_of_unity(p * m as i64, q, wp).scale(&h);
    }
    let s = Float::with_val(wp, q).pow(-(n as i32));
    let v = acc.scale(&s);
    Ok(Complex::new(Float::with_val(prec, v.re), Float::with_val(prec, v.im)))
}

/// Real `Li_n(x)` for `|x| <= 1/2` by its power series.
pub fn li_real_small(n: u32, x: &Float) -> Result<Float> {
    if Float::with_val(x.prec(), x.abs_ref()) > 0.5 {
        return Err(Error::Domain("series used only for |x| <= 1/2".into()));
    }
    let prec = x.prec() + 16;
    let eps = Float::with_val(prec, Float::with_val(prec, 2).pow(-(prec as i32)));
    let mut acc = Float::with_val(prec, 0);
    let mut pw = Float::with_val(prec, 1);
    let mut k = 1u32;
    loop {
        pw *= x;
        let t = Float::with_val(prec, &pw / Float::with_val(prec, k).pow(n));
        acc += &t;
        if t.abs() < eps {
            break;
        }
        k += 1;
    }
    Ok(Float::with_val(x.prec(), acc))
}

/// Complex `Li_2(z)` with inversion and reflection into the Bernoulli-series region.
pub fn li2_complex(z: &Complex) -> Result<Complex> {
    li2_inner(z, 0)
}

fn li2_inner(z: &Complex, depth: u32) -> Result<Complex> {
    let prec = z.prec();
    if depth > 4 {
        return Err(Error::Numeric("Li_2 transformation loop".into()));
    }
    let one = Complex::real(Float::with_val(prec, 1));
    let zeta2 = Float::with_val(prec, pi(prec).square()) / 6u32;
    let eps = Float::with_val(prec, 2).pow(-(prec as i32) / 2);
    if Float::with_val(prec, (&one - z).abs()) < eps {
        return Ok(Complex::real(zeta2));
    }
    if z.norm_sqr() > 1 {
        // Li2(z) = -Li2(1/z) - ζ2 - ln²(-z)/2
        let inv = li2_inner(&z.recip(), depth + 1)?;
        let l = (-z.clone()).ln();
        let l2 = (&l * &l).scale(&Float::with_val(prec, 0.5));
        return Ok(&(&(-inv) - &Complex::real(zeta2)) - &l2);
    }
    if z.re > 0.5 {
        // Li2(z) = -Li2(1-z) + ζ2 - ln z ln(1-z)
        let w = &one - z;
        let r = li2_inner(&w, depth + 1)?;
        let prod = &z.ln() * &w.ln();
        return Ok(&(&Complex::real(zeta2) - &r) - &prod);
    }
    if z.re.is_zero() && z.im.is_zero() {
        return Ok(Complex::zero(prec));
    }
    // u = -ln(1-z), Li2 = Σ B_n u^{n+1}/(n+1)!
    let u = -(&one - z).ln();
    let wp = prec + 16;
    let u = Complex::new(Float::with_val(wp, &u.re), Float::with_val(wp, &u.im));
    let bern = bernoulli_over_factorial(digits_of(wp) as usize + 40, wp);
    let u2 = &u * &u;
    // n = 0: u; n = 1: -u²/4
    let mut acc = &u - &u2.scale(&Float::with_val(wp, 0.25));
    let mut pw = u.clone();
    let epsw = Float::with_val(wp, 2).pow(-(wp as i32));
    for (j, b) in bern.iter().enumerate() {
        pw = &pw * &u2;
        let n = 2 * (j as u32 + 1);
        let t = pw.scale(&Float::with_val(wp, b / (n + 1)));
        acc = &acc + &t;
        if t.abs() < epsw {
            break;
        }
    }
    Ok(Complex::new(Float::with_val(prec, acc.re), Float::with_val(prec, acc.im)))
}

/// Legendre `χ_ν(e^{iπ p/q}) = [Li_ν(z) - Li_ν(-z)]/2`.
pub fn legendre_chi(nu: u32, p: i64, q: u64, prec: u32) -> Result<Complex> {
    let a = li_root_of_unity(nu, p, 2 * q, prec)?;
    let b = li_root_of_unity(nu, p + q as i64, 2 * q, prec)?;
    Ok((&a - &b).scale(&Float::with_val(prec, 0.5)))
}

/// `Cl_n(π p/q)`: imaginary part of `Li_n` for even `n`, real part for odd `n`.
pub fn clausen(n: u32, p: i64, q: u64, prec: u32) -> Result<Float> {
    let v = li_root_of_unity(n, p, 2 * q, prec)?;
    Ok(if n.is_multiple_of(2) { v.im } else { v.re })
}

/// Nielsen `S_{1,2}(x) = (1/2) ∫_0^x ln²(1-z) dz/z` for `-1 <= x <= 1`.
pub fn nielsen_s12(x: &Rational, prec: u32) -> Result<Float> {
    if *x > 1 || *x < -1 {
        return Err(Error::Domain("S_{1,2} evaluated on [-1,1] only".into()));
    }
    let digits = digits_of(prec) + 2;
    let xv = x.clone();
    let v = integrate(
        move |t, omt| {
            let p = t.prec();
            let arg = if xv == 1 { omt.clone() } else { Float::with_val(p, 1) - Float::with_val(p, t * &xv) };
            let l = arg.ln();
            Float::with_val(p, l.square_ref()) / t
        },
        digits,
    )?;
    Ok(Float::with_val(prec, v * Float::with_val(prec, x) / 2u32))
}

/// Working precision in bits for `digits` decimal digits, with guard bits.
pub fn wprec(digits: u32) -> u32 {
    bits(digits + 10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::catalan;

    #[test]
    fn hurwitz_matches_riemann_and_digamma() {
        let p = 200;
        let one = Float::with_val(p, 1);
        for s in 2..8 {
            let d = hurwitz_zeta(s, &one).unwrap() - zeta(s, p);
            assert!(d.abs() < 1e-55, "s={s}");
        }
        // ψ'(1/2) = π²/2
        let v = polygamma(1, &Rational::from((1, 2)), p).unwrap() - Float::with_val(p, pi(p).square()) / 2u32;
        assert!(v.abs() < 1e-55);
    }

    #[test]
    fn beta_and_catalan() {
        let d = dirichlet_beta(2, 200).unwrap() - catalan(200);
        assert!(d.abs() < 1e-55);
    }

    #[test]
    fn dilog_branches() {
        let p = 160;
        // Li2 at e_4 via Hurwitz and via the Bernoulli series
        let w = li_root_of_unity(2, 1, 4, p).unwrap();
        let z = Complex::root_of_unity(1, 4, p);
        let v = li2_complex(&z).unwrap();
        assert!((&w - &v).abs() < 1e-40);
        assert!((w.im - catalan(p)).abs() < 1e-40);
        let r = Float::with_val(p, 0.3);
        let v = li2_complex(&Complex::real(r.clone())).unwrap();
        assert!((v.re - r.li2()).abs() < 1e-40);
    }

    #[test]
    fn s12_at_one_is_zeta3() {
        let v = nielsen_s12(&Rational::from(1), 120).unwrap();
        assert!((v - zeta(3, 120)).abs() < 1e-30);
    }
}
