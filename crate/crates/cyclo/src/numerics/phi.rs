//! `φ_k(l,N) = ∫_0^1 x^{N+l}/Φ_k(x) dx` and its `+` form.

use super::{bits, integrate};
use crate::cyclopoly::{cyclotomic, IntPolynomial};
use crate::{Error, Result};
use rug::{Float, Integer, Rational};

/// `x^m ± 1 = Φ_k · Q`: `m = k/2` with `+` for even `k`, else `x^k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Telescoper {
    pub shift: u64,
    /// `+1` for `φ(N+m) + φ(N)`, `-1` for the difference
    pub sign: i32,
    pub q: IntPolynomial,
}

impl Telescoper {
    pub fn new(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("cyclotomy k must be >= 1".into()));
        }
        let (m, sign) = if k.is_multiple_of(2) { (k / 2, 1) } else { (k, -1) };
        let mut c = vec![Integer::new(); m as usize + 1];
        c[0] = Integer::from(sign);
        c[m as usize] = Integer::from(1);
        let (q, r) = IntPolynomial::from_coeffs(c).divrem_monic(&*cyclotomic(k)?);
        debug_assert!(r.is_zero());
        Ok(Telescoper { shift: m, sign, q })
    }

    /// Right-hand side `∫ x^{M} Q(x) dx = Σ q_j/(M+j+1)` at `M = N + l`.
    pub fn rhs(&self, m: u64) -> Rational {
        let mut acc = Rational::new();
        for (j, qj) in self.q.coeffs().iter().enumerate() {
            acc += Rational::from((qj.clone(), Integer::from(m + j as u64 + 1)));
        }
        acc
    }
}

/// The recurrences as printed for `k <= 12`: shift, sign and right-hand side at `M = N + l`.
pub fn printed_recurrence(k: u64, m: u64) -> Option<(u64, i32, Rational)> {
    let q = |a: i64, b: i64, c: i64, d: i64| {
        // a(M)+b over (M+c)(M+d)
        let m = m as i64;
        Rational::from((a * m + b, (m + c) * (m + d)))
    };
    let inv = |c: i64| Rational::from((1, m as i64 + c));
    Some(match k {
        1 => (1, -1, inv(1)),
        2 => (1, 1, inv(1)),
        3 => (3, -1, -q(0, 1, 1, 2)),
        4 => (2, 1, inv(1)),
        5 => (5, -1, -q(0, 1, 1, 2)),
        6 => (3, 1, q(2, 3, 1, 2)),
        7 => (7, -1, -q(0, 1, 1, 2)),
        8 => (4, -1, inv(1)),
        9 => (9, -1, -q(0, 3, 1, 4)),
        10 => (5, 1, q(3, 2, 1, 2)),
        11 => (11, -1, q(0, 1, 1, 2)),
        12 => (6, 1, q(3, 2, 1, 2)),
        _ => return None,
    })
}

/// Initial value `∫ x^ν / Φ_k` through digamma values at rational points.
pub fn phi_initial_digamma(k: u64, nu: u64, prec: u32) -> Result<Float> {
    if k < 2 {
        return Err(Error::Domain("φ_1 has no finite initial value".into()));
    }
    let t = Telescoper::new(k)?;
    let psi = |num: u64, den: u64| Float::with_val(prec, Rational::from((num, den))).digamma();
    let mut acc = Float::with_val(prec, 0);
    for (j, qj) in t.q.coeffs().iter().enumerate() {
        if *qj == 0 {
            continue;
        }
        let a = nu + j as u64 + 1;
        let term = if t.sign > 0 {
            // ∫ x^{a-1}/(1+x^m) = [ψ((a+m)/2m) - ψ(a/2m)]/(2m)
            let m = t.shift;
            (psi(a + m, 2 * m) - psi(a, 2 * m)) / (2 * m)
        } else {
            // Σ q_j = 0, so -Σ q_j ∫ x^{a-1}/(1-x^k) = Σ q_j ψ(a/k)/k
            psi(a, k) / k
        };
        acc += term * qj;
    }
    Ok(acc)
}

/// Initial value by tanh-sinh quadrature of the defining integral.
pub fn phi_initial_quadrature(k: u64, nu: u64, digits: u32) -> Result<Float> {
    if k < 2 {
        return Err(Error::Domain("φ_1 has no finite initial value".into()));
    }
    let poly = cyclotomic(k)?;
    integrate(
        |t, _| {
            let mut v = Float::with_val(t.prec(), 0);
            for c in poly.coeffs().iter().rev() {
                v *= t;
                v += c;
            }
            Float::with_val(t.prec(), t.pow_ref_u(nu)) / v
        },
        digits,
    )
}

trait PowU {
    fn pow_ref_u(&self, n: u64) -> Float;
}

impl PowU for Float {
    fn pow_ref_u(&self, n: u64) -> Float {
        use rug::ops::Pow;
        Float::with_val(self.prec(), self).pow(n as u32)
    }
}

/// `φ_k(l,N)`, or `φ_k(l,N)_+ = φ_k(l,N) - φ_k(l,0)` when `plus` is set.
/// For `k = 1` only the `+` form exists and equals `S_1(N+l)`.
pub fn phi(k: u64, l: u64, n: u64, digits: u32, plus: bool) -> Result<Float> {
    let mut v = phi_sequence(k, l, n, digits, plus)?;
    Ok(v.swap_remove(n as usize))
}

/// `φ_k(l,N)` for `N = 0..=n`, one recurrence run.
pub fn phi_sequence(k: u64, l: u64, n: u64, digits: u32, plus: bool) -> Result<Vec<Float>> {
    let prec = bits(digits + 15);
    let out = bits(digits);
    if k == 1 {
        if !plus {
            return Err(Error::Divergent("φ_1 needs the + regularization".into()));
        }
        let mut s = Float::with_val(prec, 0);
        let mut v = Vec::with_capacity(n as usize + 1);
        for i in 1..=n + l {
            if i > l {
                v.push(Float::with_val(out, &s));
            }
            s += Float::with_val(prec, 1) / i;
        }
        v.push(Float::with_val(out, s));
        return Ok(v);
    }
    let poly = cyclotomic(k)?;
    let d = poly.degree().expect("nonzero") as u64;
    let init = |nu: u64| -> Result<Float> {
        if k <= 6 {
            phi_initial_digamma(k, nu, prec)
        } else {
            phi_initial_quadrature(k, nu, digits + 15).map(|v| Float::with_val(prec, v))
        }
    };
    let m_top = n + l;
    let mut vals: Vec<Float> = Vec::with_capacity(m_top as usize + 1);
    for nu in 0..d.min(m_top + 1) {
        vals.push(init(nu)?);
    }
    // Σ_j c_j φ(M+j) = 1/(M+1) with monic Φ_k
    let c = poly.coeffs();
    while (vals.len() as u64) <= m_top {
        let m = vals.len() as u64 - d;
        let mut v = Float::with_val(prec, 1) / (m + 1);
        for j in 0..d as usize {
            v -= Float::with_val(prec, &vals[m as usize + j] * &c[j]);
        }
        vals.push(v);
    }
    let base = if plus { vals[l as usize].clone() } else { Float::with_val(prec, 0) };
    Ok(vals[l as usize..].iter().map(|v| Float::with_val(out, v - &base)).collect())
}

/// `φ_6(l,3N)` from its finite-sum form.
pub fn phi6_explicit(l: u64, n: u64, digits: u32) -> Result<Float> {
    let prec = bits(digits + 10);
    let mut s = phi_initial_digamma(6, l, prec)?;
    for i in 1..=n as i64 {
        let l = l as i64;
        let t = Rational::from((2 * (3 * i + l) - 3, (3 * i + l - 2) * (3 * i + l - 1)));
        if i % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    if n % 2 == 1 {
        s = -s;
    }
    Ok(Float::with_val(bits(digits), s))
}

/// `φ_5(l,5N)_+` as a telescoped finite sum, exact.
pub fn phi5_plus_explicit(l: u64, n: u64) -> Rational {
    let mut s = Rational::new();
    for i in 1..=n as i64 {
        let l = l as i64;
        s -= Rational::from((1, (5 * i + l - 4) * (5 * i + l - 3)));
    }
    s
}

/// `φ_2(l,N) = (-1)^{N+l} [S_{-1}(N+l) + ln 2]`.
pub fn phi2_closed(l: u64, n: u64, digits: u32) -> Float {
    let prec = bits(digits + 10);
    let mut s = super::ln2(prec);
    for i in 1..=n + l {
        let t = Float::with_val(prec, 1) / i;
        if i % 2 == 1 {
            s -= t;
        } else {
            s += t;
        }
    }
    if (n + l) % 2 == 1 {
        s = -s;
    }
    Float::with_val(bits(digits), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::pi;

    #[test]
    fn telescopers() {
        let t = Telescoper::new(10).unwrap();
        assert_eq!((t.shift, t.sign), (5, 1));
        assert_eq!(t.q, IntPolynomial::from_i64(&[1, 1]));
        let t = Telescoper::new(9).unwrap();
        assert_eq!(t.q, IntPolynomial::from_i64(&[-1, 0, 0, 1]));
    }

    #[test]
    fn initial_values_agree() {
        for k in 2..=12 {
            for nu in 0..3 {
                let a = phi_initial_digamma(k, nu, 140).unwrap();
                let b = phi_initial_quadrature(k, nu, 35).unwrap();
                assert!((a - b).abs() < 1e-33, "k={k} nu={nu}");
            }
        }
    }

    #[test]
    fn quarter_pi() {
        let v = phi(4, 0, 0, 30, false).unwrap();
        assert!((v - pi(120) / 4u32).abs() < 1e-29);
        assert!(matches!(phi(1, 0, 3, 20, false), Err(Error::Divergent(_))));
    }
}
