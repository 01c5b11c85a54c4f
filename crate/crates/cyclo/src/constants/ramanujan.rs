//! The two sides of a false identity from Ramanujan's notebooks, and the `J_1`, `J_2`, `M` sums.

use super::eval::{eval_constant, sigma_numeric};
use super::expr::ConstantExpr;
use super::special::{hurwitz_zeta, wprec};
use crate::numerics::{pi, zeta};
use crate::sums::SumIndex;
use crate::{Error, Result};
use rug::ops::Pow;
use rug::Float;

pub const G1_PRINTED: &str = "0.16227193947148339072";
pub const H1_PRINTED: &str = "0.14402290986880995023";

/// `G(1) = -53/160 ζ2² - ζ2 ln²2/4 + 7/8 ζ3 ln2 + ln⁴2/24 + Li4(1/2)`
pub fn g1_expr() -> ConstantExpr {
    "-53/160*(pi^2/6)^2 - 1/4*pi^2/6*ln(2)^2 + 7/8*zeta(3)*ln(2) + 1/24*ln(2)^4 + li_half(4)"
        .parse()
        .expect("fixture parses")
}

/// `H(1) = -(π/2048){8[π³ + 28(1 + 8√3/9)ζ3] + ψ''(1/8)}`
pub fn h1_expr() -> ConstantExpr {
    "-pi/2048*(8*(pi^3 + 28*(1 + 8/9*sqrt(3))*zeta(3)) + psi(2,1/8))".parse().expect("fixture parses")
}

/// `(G(1), H(1))` from their closed forms.
pub fn ramanujan_values(digits: u32) -> Result<(Float, Float)> {
    Ok((eval_constant(&g1_expr(), digits)?, eval_constant(&h1_expr(), digits)?))
}

/// `G(1) = (1/8) Σ_r r^{-3} Σ_{s<=r} 1/(2s-1)`, as a nested sum.
pub fn g1_from_sum(digits: u32) -> Result<Float> {
    let idx = SumIndex::from_signed(&[(1, 0, 3), (2, -1, 1)]);
    Ok(sigma_numeric(&idx, digits)? / 8u32)
}

/// `H(1) = (π/4) Σ_{r>=0} (-1)^r/(4r+1)³ - π/(3√3) Σ_{r>=0} 1/(2r+1)³`, by Hurwitz ζ.
pub fn h1_from_sum(digits: u32) -> Result<Float> {
    let p = wprec(digits + 10);
    let a = hurwitz_zeta(3, &Float::with_val(p, 0.125))? - hurwitz_zeta(3, &Float::with_val(p, 0.625))?;
    let alt = a / 512u32;
    let odd = zeta(3, p) * 7u32 / 8u32;
    let pi = pi(p);
    let s3 = Float::with_val(p, 3).sqrt() * 3u32;
    let v = Float::with_val(p, &pi * alt) / 4u32 - Float::with_val(p, &pi * odd) / s3;
    Ok(Float::with_val(wprec(digits), v))
}

/// `J_1(r)`, `J_2(r)` and `M(r)` through their σ forms, with
/// `J_1(r) = σ_{{2,1,r}} - σ_{{2,1,r+1}} + σ_{{2,1,r},{2,1,1}}`.
pub fn j_sums(r: u32, digits: u32) -> Result<(Float, Float, Float)> {
    if r < 2 {
        return Err(Error::Divergent(format!("J sums need r >= 2, got {r}")));
    }
    let r = r as i64;
    let s = |t: &[(i64, i64, i64)]| sigma_numeric(&SumIndex::from_signed(t), digits);
    let j1 = s(&[(2, 1, r)])? - s(&[(2, 1, r + 1)])? + s(&[(2, 1, r), (2, 1, 1)])?;
    let j2 = s(&[(1, 0, r), (2, -1, 1)])? / Float::with_val(wprec(digits), 2).pow(r as i32);
    let m = s(&[(2, 1, r), (1, 0, 1)])? / 2u32;
    Ok((j1, j2, m))
}

/// `J_1(r)` with the printed inner index `{2,1,r+1}` in the depth-two term.
pub fn j1_printed(r: u32, digits: u32) -> Result<Float> {
    let r = r as i64;
    let s = |t: &[(i64, i64, i64)]| sigma_numeric(&SumIndex::from_signed(t), digits);
    Ok(s(&[(2, 1, r)])? - s(&[(2, 1, r + 1)])? + s(&[(2, 1, r + 1), (2, 1, 1)])?)
}

/// `J_1`, `J_2`, `M` from their defining ψ series, summed directly and extrapolated.
pub fn j_sums_direct(r: u32, digits: u32) -> Result<(Float, Float, Float)> {
    use super::accel::{extrapolate, sample_points};
    let prec = crate::numerics::bits(3 * digits + 60).max(600);
    let plans = [(2000u64, 40u64, 31usize), (3000, 60, 41)];
    let nmax = 3000 + 60 * 40;
    // ψ(k+1/2) - ψ(1/2) = Σ_{j<k} 1/(j+1/2),  ψ(k+1) + γ = Σ_{j<=k} 1/j
    let (mut a, mut b, mut c) = (vec![Float::with_val(prec, 0)], vec![Float::with_val(prec, 0)], vec![Float::with_val(prec, 0)]);
    let mut half = Float::with_val(prec, 0);
    let mut harm = Float::with_val(prec, 0);
    for k in 0..=nmax as u64 {
        let odd = Float::with_val(prec, 2 * k + 1).pow(r);
        let ta = Float::with_val(prec, &half / &odd) / 2u32;
        let tb = if k == 0 { Float::with_val(prec, 0) } else { Float::with_val(prec, &half / Float::with_val(prec, 2 * k).pow(r)) / 2u32 };
        let tc = Float::with_val(prec, &harm / &odd) / 2u32;
        let n = a.len() - 1;
        let (na, nb, nc) = (Float::with_val(prec, &a[n] + ta), Float::with_val(prec, &b[n] + tb), Float::with_val(prec, &c[n] + tc));
        a.push(na);
        b.push(nb);
        c.push(nc);
        half += Float::with_val(prec, 2) / (2 * k + 1);
        harm += Float::with_val(prec, 1) / (k + 1);
    }
    let lim = |v: &Vec<Float>| -> Result<Float> {
        let mut out = Vec::new();
        for &(n0, st, cnt) in &plans {
            let pts: Vec<_> = sample_points(n0, st, cnt).into_iter().map(|n| (n, v[n as usize + 1].clone())).collect();
            out.push(extrapolate(&pts, 1).ok_or_else(|| Error::Numeric("singular extrapolation system".into()))?);
        }
        let d = Float::with_val(prec, &out[0] - &out[1]).abs();
        if d > Float::with_val(prec, 10).pow(-(digits as i32)) {
            return Err(Error::Numeric("direct J-sum extrapolation unstable".into()));
        }
        Ok(Float::with_val(wprec(digits), &out[1]))
    };
    Ok((lim(&a)?, lim(&b)?, lim(&c)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn printed(s: &str) -> Float {
        Float::with_val(200, Float::parse(s).unwrap())
    }

    #[test]
    fn closed_forms_reproduce_printed_digits() {
        let (g, h) = ramanujan_values(40).unwrap();
        assert!(Float::with_val(200, &g - printed(G1_PRINTED)).abs() < 1e-20);
        assert!(Float::with_val(200, &h - printed(H1_PRINTED)).abs() < 1e-20);
        assert!(Float::with_val(200, &g - &h).abs() > 0.01);
    }

    #[test]
    fn closed_forms_match_defining_sums() {
        let (g, h) = ramanujan_values(30).unwrap();
        assert!(Float::with_val(200, &g - g1_from_sum(30).unwrap()).abs() < 1e-28);
        assert!(Float::with_val(200, &h - h1_from_sum(30).unwrap()).abs() < 1e-28);
    }

    #[test]
    fn j_sum_identities() {
        let (j1, j2, m) = j_sums(2, 30).unwrap();
        let (d1, d2, dm) = j_sums_direct(2, 30).unwrap();
        for (a, b) in [(&j1, &d1), (&j2, &d2), (&m, &dm)] {
            assert!(Float::with_val(200, a - b).abs() < 1e-25, "{a} vs {b}");
        }
        let p = j1_printed(2, 30).unwrap();
        assert!(Float::with_val(200, &p - &d1).abs() > 1e-3);
    }
}
