//! Weight-one constants: `Σ_{k>=0} (±1)^k/(lk+m)` and the `σ` basis up to cyclotomy 6.

use super::eval::psi_expr;
use super::expr::{ConstantExpr, ConstantSymbol};
use crate::cyclopoly::gcd;
use crate::sums::SumIndex;
use crate::{Error, Result};
use rug::Rational;

/// `-(1/l)[γ + ψ(m/l)]`, as listed for `l <= 6`.
const NONALT: &[(u64, u64, &str)] = &[
    (1, 1, "0"),
    (2, 1, "ln(2)"),
    (3, 1, "1/2*ln(3) + pi/18*sqrt(3)"),
    (3, 2, "1/2*ln(3) - pi/18*sqrt(3)"),
    (4, 1, "3/4*ln(2) + pi/8"),
    (4, 3, "3/4*ln(2) - pi/8"),
    (5, 1, "sqrt(5)/10*(ln(2) - ln(sqrt(5)-1)) + 1/4*ln(5) + sqrt(25+10*sqrt(5))/50*pi"),
    (5, 2, "-sqrt(5)/10*(ln(2) - ln(sqrt(5)-1)) + 1/4*ln(5) + sqrt(10-2*sqrt(5))/40*(1 - sqrt(5)/5)*pi"),
    (5, 3, "-sqrt(5)/10*(ln(2) - ln(sqrt(5)-1)) + 1/4*ln(5) - sqrt(10-2*sqrt(5))/40*(1 - sqrt(5)/5)*pi"),
    (5, 4, "sqrt(5)/10*(ln(2) - ln(sqrt(5)-1)) + 1/4*ln(5) - sqrt(25+10*sqrt(5))/50*pi"),
    (6, 1, "1/3*ln(2) + 1/4*ln(3) + pi/12*sqrt(3)"),
    (6, 5, "1/3*ln(2) + 1/4*ln(3) - pi/12*sqrt(3)"),
];

/// `Σ_{k>=0} (-1)^k/(lk+m)`.
const ALT: &[(u64, u64, &str)] = &[
    (1, 1, "ln(2)"),
    (2, 1, "pi/4"),
    (3, 1, "1/3*(pi/sqrt(3) + ln(2))"),
    (3, 2, "1/3*(pi/sqrt(3) - ln(2))"),
    (4, 1, "1/(2*sqrt(2))*(pi/2 - ln(sqrt(2)-1))"),
    (4, 3, "1/(2*sqrt(2))*(pi/2 + ln(sqrt(2)-1))"),
    (5, 1, "1/5*(1+sqrt(5))*ln(2) - 1/sqrt(5)*ln(sqrt(5)-1) + (1+sqrt(5))/5/sqrt(10+2*sqrt(5))*pi"),
    (5, 2, "-1/5*(1-sqrt(5))*ln(2) - 1/sqrt(5)*ln(sqrt(5)-1) + (sqrt(5)-1)/5/sqrt(10-2*sqrt(5))*pi"),
    (5, 3, "1/5*(1-sqrt(5))*ln(2) + 1/sqrt(5)*ln(sqrt(5)-1) + (sqrt(5)-1)/5/sqrt(10-2*sqrt(5))*pi"),
    (5, 4, "-1/5*(1+sqrt(5))*ln(2) + 1/sqrt(5)*ln(sqrt(5)-1) + (1+sqrt(5))/5/sqrt(10+2*sqrt(5))*pi"),
    (6, 1, "pi/6 + 1/sqrt(3)*(1/2*ln(2) - ln(sqrt(3)-1))"),
    (6, 5, "pi/6 - 1/sqrt(3)*(1/2*ln(2) - ln(sqrt(3)-1))"),
];

fn lookup(table: &[(u64, u64, &str)], l: u64, m: u64) -> Option<ConstantExpr> {
    table
        .iter()
        .find(|t| t.0 == l && t.1 == m)
        .map(|t| t.2.parse().expect("closed-form table entries parse"))
}

fn check_lm(l: u64, m: u64, sign: i8) -> Result<()> {
    if l == 0 || m == 0 {
        return Err(Error::Domain(format!("need l, m >= 1, got l={l}, m={m}")));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Domain(format!("sign must be ±1, got {sign}")));
    }
    Ok(())
}

/// `Σ_{k>=0} s^k/(lk+m)` through the digamma function, unreduced.
pub fn sigma_w1_psi_form(l: u64, m: u64, sign: i8) -> Result<ConstantExpr> {
    check_lm(l, m, sign)?;
    let (l, m) = (l as i64, m as i64);
    if sign > 0 {
        let body = ConstantExpr::symbol(ConstantSymbol::Sigma0)
            .sub(&ConstantExpr::symbol(ConstantSymbol::EulerGamma))
            .sub(&psi_expr(&Rational::from((m, l)))?);
        return Ok(body.scale(&Rational::from((1, l))));
    }
    let body = psi_expr(&Rational::from((m + l, 2 * l)))?.sub(&psi_expr(&Rational::from((m, 2 * l)))?);
    Ok(body.scale(&Rational::from((1, 2 * l))))
}

/// `Σ_{k>=0} s^k/(lk+m)` for `s = sign`. A common factor of `l` and `m` is pulled out first;
/// for `m <= l <= 6` the result is the listed closed form in `π`, `ln` and surds, with the
/// divergence carried by `σ_0/l`; `m > l` is shifted down first. Other arguments keep the
/// digamma form.
pub fn sigma_w1_closed_form(l: u64, m: u64, sign: i8) -> Result<ConstantExpr> {
    check_lm(l, m, sign)?;
    let g = gcd(l, m);
    if g > 1 {
        return Ok(sigma_w1_closed_form(l / g, m / g, sign)?.scale(&Rational::from((1, g))));
    }
    if m > l && l <= 6 {
        // drop the k = 0 term of the shifted sum
        let first = ConstantExpr::rational(Rational::from((1, m - l)));
        let rest = sigma_w1_closed_form(l, m - l, sign)?.sub(&first);
        return Ok(if sign < 0 { rest.scale(&Rational::from(-1)) } else { rest });
    }
    if m <= l && l <= 6 {
        if sign > 0 {
            if let Some(e) = lookup(NONALT, l, m) {
                let div = ConstantExpr::symbol(ConstantSymbol::Sigma0).scale(&Rational::from((1, l)));
                return Ok(div.add(&e));
            }
        } else if let Some(e) = lookup(ALT, l, m) {
            return Ok(e);
        }
    }
    sigma_w1_psi_form(l, m, sign)
}

/// `σ_{{a,b,±1}}` (sum from `k = 1`) as a constant expression, via `k -> k+1`.
pub fn sigma_w1(a: u64, b: i64, sign: i8) -> Result<ConstantExpr> {
    let m = a as i64 + b;
    if m <= 0 {
        return Err(Error::Domain(format!("a + b must be positive for σ_{{{a},{b},1}}")));
    }
    // Σ_{k>=1} s^k/(ak+b) = s Σ_{j>=0} s^j/(aj + a + b)
    let e = sigma_w1_closed_form(a, m as u64, sign)?;
    Ok(if sign < 0 { e.scale(&Rational::from(-1)) } else { e })
}

fn sig(a: i64, b: i64, c: i64) -> ConstantExpr {
    ConstantExpr::symbol(ConstantSymbol::Sigma(SumIndex::from_signed(&[(a, b, c)])))
}

/// The independent `σ` at weight one up to cyclotomy 6.
pub fn basis_w1() -> Vec<SumIndex> {
    [
        (1, 0, 1), (1, 0, -1), (2, 1, -1), (3, 1, 1), (3, 1, -1), (4, 1, -1),
        (4, 3, -1), (5, 1, 1), (5, 1, -1), (5, 2, -1), (5, 3, -1), (6, 1, -1),
    ]
    .iter()
    .map(|&t| SumIndex::from_signed(&[t]))
    .collect()
}

/// The twelve dependent weight-one `σ` up to cyclotomy 6, each written over [`basis_w1`].
pub fn sigma_basis_w1() -> Vec<(SumIndex, ConstantExpr)> {
    let q = |a: i64, b: i64| ConstantExpr::rational(Rational::from((a, b)));
    let s = |a, b, c, r: (i64, i64)| sig(a, b, c).scale(&Rational::from(r));
    let rows: Vec<((i64, i64, i64), ConstantExpr)> = vec![
        ((2, 1, 1), q(-1, 1).sub(&sig(1, 0, -1)).add(&s(1, 0, 1, (1, 2)))),
        ((3, 2, 1), q(-1, 2).sub(&s(1, 0, -1, (1, 3))).sub(&sig(3, 1, -1)).add(&sig(3, 1, 1))),
        ((3, 2, -1), q(1, 2).add(&s(1, 0, -1, (2, 3))).add(&sig(3, 1, -1))),
        ((4, 1, 1), q(-1, 2).sub(&s(1, 0, -1, (3, 4))).add(&s(1, 0, 1, (1, 4))).add(&s(2, 1, -1, (1, 2)))),
        ((4, 3, 1), q(-5, 6).sub(&s(1, 0, -1, (3, 4))).add(&s(1, 0, 1, (1, 4))).sub(&s(2, 1, -1, (1, 2)))),
        ((5, 2, 1), s(1, 0, -1, (1, 5)).add(&sig(5, 1, 1)).sub(&sig(5, 2, -1))),
        ((5, 3, 1), q(-1, 3).sub(&s(1, 0, -1, (1, 5))).sub(&sig(5, 1, -1)).add(&sig(5, 1, 1))),
        (
            (5, 4, 1),
            q(-7, 12).sub(&s(1, 0, -1, (2, 5))).sub(&sig(5, 1, -1)).add(&sig(5, 1, 1)).sub(&sig(5, 3, -1)),
        ),
        (
            (5, 4, -1),
            q(7, 12).add(&s(1, 0, -1, (4, 5))).add(&sig(5, 1, -1)).sub(&sig(5, 2, -1)).add(&sig(5, 3, -1)),
        ),
        ((6, 1, 1), s(1, 0, -1, (-1, 6)).add(&s(3, 1, -1, (1, 2))).add(&s(3, 1, 1, (1, 2)))),
        ((6, 5, 1), q(-7, 10).sub(&s(1, 0, -1, (2, 3))).sub(&sig(3, 1, -1)).add(&s(3, 1, 1, (1, 2)))),
        ((6, 5, -1), q(2, 15).add(&s(2, 1, -1, (4, 3))).sub(&sig(6, 1, -1))),
    ];
    rows.into_iter().map(|(t, e)| (SumIndex::from_signed(&[t]), e)).collect()
}

/// Replace every depth-one weight-one `σ` in `e` by [`sigma_w1`].
pub fn expand_w1(e: &ConstantExpr) -> Result<ConstantExpr> {
    let mut out = e.clone();
    for s in e.symbols() {
        if let ConstantSymbol::Sigma(idx) = &s {
            if idx.depth() == 1 && idx.0[0].c == 1 {
                let t = idx.0[0];
                out = out.substitute(&s, &sigma_w1(t.a as u64, t.b, t.s)?)?;
            }
        }
    }
    Ok(out)
}

/// The weight-one basis at cyclotomy `<= 2`: `σ_0`, `σ_{{1,0,-1}} = -ln 2`, `σ_{{2,1,-1}} = π/4 - 1`.
pub fn table3_w1_basis() -> Vec<(SumIndex, ConstantExpr)> {
    vec![
        (SumIndex::from_signed(&[(1, 0, 1)]), ConstantExpr::symbol(ConstantSymbol::Sigma0)),
        (SumIndex::from_signed(&[(1, 0, -1)]), "-ln(2)".parse().unwrap()),
        (SumIndex::from_signed(&[(2, 1, -1)]), "pi/4 - 1".parse().unwrap()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::eval::eval_constant;
    use rug::Float;

    #[test]
    fn closed_forms_match_digamma() {
        for sign in [1i8, -1] {
            for l in 2..=6u64 {
                for m in 1..l {
                    let a = sigma_w1_closed_form(l, m, sign).unwrap();
                    let b = sigma_w1_psi_form(l, m, sign).unwrap();
                    let d = eval_constant(&a.sub(&b), 40).unwrap();
                    assert!(d.abs() < Float::with_val(200, 1e-38), "l={l} m={m} s={sign}: {a}");
                }
            }
        }
    }

    #[test]
    fn printed_examples() {
        assert_eq!(sigma_w1_closed_form(2, 1, -1).unwrap().to_string(), "1/4*pi");
        let e = sigma_w1_closed_form(6, 1, 1).unwrap();
        assert!(e.symbols().contains(&ConstantSymbol::Sigma0));
    }

    #[test]
    fn rewrites_hold() {
        for (idx, rhs) in sigma_basis_w1() {
            let lhs = ConstantExpr::symbol(ConstantSymbol::Sigma(idx.clone()));
            let d = eval_constant(&expand_w1(&lhs.sub(&rhs)).unwrap(), 40).unwrap();
            assert!(d.abs() < Float::with_val(200, 1e-38), "{idx}");
        }
    }

    #[test]
    fn low_cyclotomy_reduces_to_table3_basis() {
        let basis = table3_w1_basis();
        for t in [(1, 0, 1), (1, 0, -1), (2, 1, 1), (2, 1, -1)] {
            let mut e = expand_w1(&ConstantExpr::symbol(ConstantSymbol::Sigma(SumIndex::from_signed(&[t])))).unwrap();
            for (_, b) in &basis {
                e = e.sub(b);
            }
            let syms = e.symbols();
            assert!(syms.iter().all(|s| matches!(s, ConstantSymbol::Sigma0 | ConstantSymbol::Ln(2) | ConstantSymbol::Pi)));
        }
    }
}
