//! Cyclotomic harmonic polylogarithms at `x = 1`.

use super::eval::eval_constant;
use super::expr::{ConstantExpr, ConstantSymbol};
use super::polygamma::polygamma_reduce;
use super::special::wprec;
use crate::cyclopoly::{cyclotomic, Letter};
use crate::numerics::{bits, integrate_weighted, Complex};
use crate::words::Word;
use crate::{Error, Result};
use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};

/// `x^k - 1 = Φ_k(x) Q(x)`: returns the coefficients of `Q`, lowest first (`k >= 1`).
fn cofactor(k: u64) -> Result<Vec<Integer>> {
    let phi = cyclotomic(k)?;
    let mut xk = vec![Integer::new(); k as usize + 1];
    xk[0] = Integer::from(-1);
    xk[k as usize] = Integer::from(1);
    let (q, r) = crate::cyclopoly::IntPolynomial::from_coeffs(xk).divrem_monic(&phi);
    debug_assert!(r.is_zero());
    Ok(q.coeffs().to_vec())
}

/// `f_k^l(x) = -Σ_{j,i} q_j x^{l+j+ki}`, so `∫_0^1 x^s f dx` is a combination of
/// `Σ_i 1/(ki + l + j + 1 + s)`. Returns `(k, [(q_j, (l+j+1)/k)])`.
fn mellin_data(a: &Letter) -> Result<(u64, Vec<(Integer, Rational)>)> {
    let k = a.k as u64;
    let q = cofactor(k)?;
    let terms = q
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(j, c)| (c, Rational::from((a.l as u64 + j as u64 + 1, k))))
        .collect();
    Ok((k, terms))
}

/// `C_{0^r, a}(1)` as a combination of polygamma values.
fn zeros_then_letter_expr(r: usize, a: &Letter) -> Result<ConstantExpr> {
    let (k, terms) = mellin_data(a)?;
    let mut e = ConstantExpr::zero();
    if r == 0 {
        // (1/k) Σ q_j ψ((l+j+1)/k); the harmonic divergences cancel since Q(1) = 0
        if k == 1 {
            return Err(Error::Divergent("C_1(1) diverges".into()));
        }
        for (c, x) in terms {
            e = e.add(&super::eval::psi_expr(&x)?.scale(&Rational::from((c, Integer::from(k)))));
        }
        return Ok(e);
    }
    // -Σ q_j ζ(r+1, x_j)/k^{r+1},  ζ(s, x) = (-1)^s ψ^{(s-1)}(x)/(s-1)!
    let s = r as u32 + 1;
    let fact = Integer::factorial(r as u32).complete();
    let sign = if s.is_multiple_of(2) { 1 } else { -1 };
    for (c, x) in terms {
        let coeff = Rational::from((-c * sign, fact.clone() * Integer::from(k).pow(s)));
        e = e.add(&hurwitz_as_psi(r as u32, &x)?.scale(&coeff));
    }
    Ok(e)
}

/// `ψ^{(n)}(x)` for rational `x` in `(0, 2]`, shifted into `(0, 1]`.
fn hurwitz_as_psi(n: u32, x: &Rational) -> Result<ConstantExpr> {
    let mut x = x.clone();
    let mut shift = ConstantExpr::zero();
    // ψ^{(n)}(x+1) = ψ^{(n)}(x) + (-1)^n n!/x^{n+1}
    while x > 1 {
        x -= 1;
        let fact = Rational::from(Integer::factorial(n).complete());
        let t = fact / x.clone().pow(n + 1) * if n.is_multiple_of(2) { 1 } else { -1 };
        shift = shift.add(&ConstantExpr::rational(t));
    }
    let base = if x == 1 {
        let f = Rational::from(Integer::factorial(n).complete()) * if n.is_multiple_of(2) { -1 } else { 1 };
        ConstantExpr::symbol(ConstantSymbol::Zeta(n + 1)).scale(&f)
    } else {
        ConstantExpr::symbol(ConstantSymbol::polygamma(n, &x)?)
    };
    Ok(base.add(&shift))
}

/// Split `w` as `0^r a 0^m`, if it has exactly one non-zero letter.
fn single_letter_shape(w: &Word) -> Option<(usize, Letter, usize)> {
    let nz: Vec<usize> = (0..w.weight()).filter(|&i| w.0[i].k != 0).collect();
    if nz.len() != 1 {
        return None;
    }
    let i = nz[0];
    Some((i, w.0[i], w.weight() - i - 1))
}

/// Symbolic value of `C_w(1)` for words `0^r a` and `a 0^m`, written over reduced polygamma
/// values when `a` has cyclotomy `<= 12`.
pub fn hpl_at_one_expr(w: &Word) -> Result<Option<ConstantExpr>> {
    check_convergent(w)?;
    let e = match single_letter_shape(w) {
        Some((r, a, 0)) => zeros_then_letter_expr(r, &a)?,
        // ∫ f_a ln^m t/m! dt = (-1)^m C_{0^m, a}(1)
        Some((0, a, m)) => zeros_then_letter_expr(m, &a)?.scale(&Rational::from(if m % 2 == 0 { 1 } else { -1 })),
        _ => return Ok(None),
    };
    Ok(Some(reduce_polygammas(&e)?))
}

/// Rewrites each `ψ^{(n)}(p/q)`, `n >= 1`, `q <= 12`, through [`polygamma_reduce`].
pub fn reduce_polygammas(e: &ConstantExpr) -> Result<ConstantExpr> {
    let mut out = e.clone();
    for s in e.symbols() {
        if let ConstantSymbol::Polygamma { n, p, q } = s {
            if n >= 1 && q <= 12 {
                out = out.substitute(&s, &polygamma_reduce(n, p, q)?)?;
            }
        }
    }
    Ok(out)
}

fn check_convergent(w: &Word) -> Result<()> {
    if w.0.first().is_some_and(|a| a.k == 1) {
        return Err(Error::Divergent(format!("{w} diverges at x = 1")));
    }
    Ok(())
}

/// `x^l/Φ_k(x)` at `t`.
fn letter_value(a: &Letter, t: &Float) -> Float {
    let (num, den) = a.as_fraction();
    let ev = |p: &crate::cyclopoly::IntPolynomial| {
        let mut v = Float::with_val(t.prec(), 0);
        for c in p.coeffs().iter().rev() {
            v *= t;
            v += c;
        }
        v
    };
    ev(&num) / ev(&den)
}

/// Primitive `k`-th roots `ρ` with the residues `c_ρ = ρ^{l+1} Q(ρ)/k` of `x^l/Φ_k(x)`.
fn residues(a: &Letter, prec: u32) -> Result<Vec<(Complex, Complex)>> {
    let k = a.k as u64;
    let q = cofactor(k)?;
    let mut out = Vec::new();
    for j in 1..=k {
        if crate::cyclopoly::gcd(j, k) != 1 {
            continue;
        }
        let rho = Complex::root_of_unity(j as i64, k, prec);
        let mut qv = Complex::zero(prec);
        for c in q.iter().rev() {
            qv = &qv * &rho;
            qv.re += c;
        }
        let c = &rho.pow_u(a.l as u64 + 1) * &qv;
        out.push((rho, c.scale(&Float::with_val(prec, Rational::from((1, k))))));
    }
    Ok(out)
}

/// `ln(1 + z)` without cancellation for small `|z|`.
fn ln1p(z: &Complex) -> Complex {
    let p = z.prec();
    if z.abs() < 1e-3 {
        let mut acc = Complex::zero(p);
        let mut pw = z.clone();
        let eps = Float::with_val(p, Float::i_exp(1, -(p as i32)));
        let mut n = 1u32;
        loop {
            let t = pw.scale(&Float::with_val(p, Rational::from((if n % 2 == 1 { 1 } else { -1 }, n))));
            acc = &acc + &t;
            if t.abs() < eps {
                return acc;
            }
            pw = &pw * z;
            n += 1;
        }
    }
    (&Complex::real(Float::with_val(p, 1)) + z).ln()
}

/// `C_a(t) - C_a(1)` in closed form, given `t` and `1 - t`.
fn antiderivative_shifted(a: &Letter, t: &Float, omt: &Float, res: &[(Complex, Complex)]) -> Float {
    let p = t.prec();
    match a.k {
        0 => Float::with_val(p, t.ln_ref()),
        1 => unreachable!("first letters 1 are rejected"),
        _ => {
            // Σ c_ρ [ln(1 - t/ρ) - ln(1 - 1/ρ)] = Σ c_ρ ln(1 + (1-t)/(ρ-1))
            let one = Complex::real(Float::with_val(p, 1));
            let mut acc = Complex::zero(p);
            for (rho, c) in res {
                let z = Complex::real(omt.clone()).div(&(rho - &one));
                acc = &acc + &(c * &ln1p(&z));
            }
            acc.re
        }
    }
}

/// `C_w(1)` by the Hurwitz-ζ form for single-letter words, otherwise by one integration by
/// parts, `C_{a,w}(1) = -∫ [C_a(t) - C_a(1)] f_{w_1}(t) C_{w'}(t) dt`.
pub fn hpl_at_one(w: &Word, digits: u32) -> Result<Float> {
    check_convergent(w)?;
    let out = bits(digits);
    if w.is_empty() {
        return Ok(Float::with_val(out, 1));
    }
    if w.0.iter().all(|a| a.k == 0) {
        return Ok(Float::with_val(out, 0));
    }
    if let Some(e) = hpl_at_one_expr(w)? {
        return Ok(Float::with_val(out, eval_constant(&e, digits)?));
    }
    let a = w.0[0];
    let b = w.0[1];
    let rest = Word::new(w.0[2..].to_vec());
    let prec = wprec(digits + 10);
    let res = if a.k >= 2 { residues(&a, prec)? } else { Vec::new() };
    let g = move |t: &Float, omt: &Float| {
        let p = t.prec();
        let res: Vec<(Complex, Complex)> = res
            .iter()
            .map(|(r, c)| {
                (
                    Complex::new(Float::with_val(p, &r.re), Float::with_val(p, &r.im)),
                    Complex::new(Float::with_val(p, &c.re), Float::with_val(p, &c.im)),
                )
            })
            .collect();
        let fb = if b.k == 1 { -Float::with_val(p, omt.recip_ref()) } else { letter_value(&b, t) };
        -antiderivative_shifted(&a, t, omt, &res) * fb
    };
    let v = integrate_weighted(&rest, &g, digits + 5)?;
    Ok(Float::with_val(out, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{catalan, eval_hpl_quadrature};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn single_letter_words() {
        let c = hpl_at_one(&w("w[0:0,4:0]"), 40).unwrap();
        assert!((c - catalan(200)).abs() < 1e-38);
        let l2 = hpl_at_one(&w("w[2:0]"), 40).unwrap();
        assert!((l2 - Float::with_val(200, 2).ln()).abs() < 1e-38);
        let e = hpl_at_one_expr(&w("w[0:0,4:0]")).unwrap().unwrap();
        assert_eq!(e, ConstantExpr::symbol(ConstantSymbol::Catalan));
    }

    #[test]
    fn agrees_with_quadrature() {
        let one = Float::with_val(200, 1);
        for s in [
            "w[0:0,12:0]", "w[0:0,12:2]", "w[0:0,0:0,3:1]", "w[6:1,0:0]", "w[4:0,0:0,0:0]",
            "w[4:0,4:1]", "w[2:0,1:0]", "w[0:0,4:0,0:0]", "w[4:1,0:0,4:0]", "w[3:0,2:0,0:0]",
        ] {
            let a = hpl_at_one(&w(s), 30).unwrap();
            let b = eval_hpl_quadrature(&w(s), &one, 30).unwrap();
            assert!((a.clone() - &b).abs() < 1e-27, "{s}: {a} vs {b}");
        }
    }
}
