//! Symbolic constants and polynomials over ℚ in them.

use crate::cyclopoly::factorize;
use crate::sums::SumIndex;
use crate::{Error, Result};
use rug::{Integer, Rational};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    Re,
    Im,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstantSymbol {
    /// `σ_idx = lim_{N→∞} S_idx(N)`
    Sigma(SumIndex),
    /// Formal `Σ 1/k`.
    Sigma0,
    Zeta(u32),
    /// `ln p`, `p` prime.
    Ln(u64),
    /// `ln(a + b√d)`
    LnSurd { a: Rational, b: Rational, d: u64 },
    Pi,
    /// `√d`, `d` squarefree.
    Sqrt(u64),
    /// `√(a + b√d)`
    SqrtSurd { a: Rational, b: Rational, d: u64 },
    Catalan,
    EulerGamma,
    /// `ψ^{(n)}(p/q)`, `0 < p < q`, coprime.
    Polygamma { n: u32, p: u64, q: u64 },
    DirichletBeta(u32),
    /// `Ti_l(1)`
    Ti(u32),
    /// `Li_k(1/2)`
    LiHalf(u32),
    /// `Re` or `Im` of `Li_w(e_l^k)`.
    LiRoot { weight: u32, l: u64, k: u64, part: Part },
    /// `Re` or `Im` of `χ_ν(e^{iπ p/q})`.
    Chi { nu: u32, p: i64, q: u64, part: Part },
    /// `Cl_n(π p/q)`
    Clausen { n: u32, p: i64, q: u64 },
    /// `cot^{(n)}(π p/q)`, an algebraic number.
    CotDerivative { n: u32, p: u64, q: u64 },
    /// Nielsen `S_{1,2}(x)`.
    NielsenS12 { x: Rational },
}

impl ConstantSymbol {
    pub fn polygamma(n: u32, x: &Rational) -> Result<Self> {
        if *x <= 0 || *x >= 1 {
            return Err(Error::Domain(format!("polygamma argument {x} outside (0,1)")));
        }
        let p = x.numer().to_u64().ok_or_else(|| Error::Domain("argument too large".into()))?;
        let q = x.denom().to_u64().ok_or_else(|| Error::Domain("argument too large".into()))?;
        Ok(ConstantSymbol::Polygamma { n, p, q })
    }

    /// Nominal weight (`π`, `ln`, `γ`, `σ_0` have weight 1).
    pub fn weight(&self) -> u32 {
        use ConstantSymbol::*;
        match self {
            Sigma(i) => i.weight(),
            Sigma0 | Ln(_) | LnSurd { .. } | Pi | EulerGamma => 1,
            Zeta(k) | DirichletBeta(k) | Ti(k) | LiHalf(k) => *k,
            Sqrt(_) | SqrtSurd { .. } | CotDerivative { .. } => 0,
            Catalan => 2,
            Polygamma { n, .. } => n + 1,
            LiRoot { weight, .. } => *weight,
            Chi { nu, .. } => *nu,
            Clausen { n, .. } => *n,
            NielsenS12 { .. } => 3,
        }
    }
}

fn part_str(p: Part) -> &'static str {
    match p {
        Part::Re => "re",
        Part::Im => "im",
    }
}

impl fmt::Display for ConstantSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConstantSymbol::*;
        match self {
            Sigma(i) => write!(f, "sigma{}", &i.to_string()[1..]),
            Sigma0 => write!(f, "sigma0"),
            Zeta(k) => write!(f, "zeta({k})"),
            Ln(p) => write!(f, "ln({p})"),
            LnSurd { a, b, d } => write!(f, "ln({})", surd_str(a, b, *d)),
            Pi => write!(f, "pi"),
            Sqrt(d) => write!(f, "sqrt({d})"),
            SqrtSurd { a, b, d } => write!(f, "sqrt({})", surd_str(a, b, *d)),
            Catalan => write!(f, "catalan"),
            EulerGamma => write!(f, "gamma"),
            Polygamma { n, p, q } => write!(f, "psi({n},{p}/{q})"),
            DirichletBeta(l) => write!(f, "beta({l})"),
            Ti(l) => write!(f, "ti({l})"),
            LiHalf(k) => write!(f, "li_half({k})"),
            LiRoot { weight, l, k, part } => write!(f, "li_root({weight},{l},{k},{})", part_str(*part)),
            Chi { nu, p, q, part } => write!(f, "chi({nu},{p}/{q},{})", part_str(*part)),
            Clausen { n, p, q } => write!(f, "cl({n},{p}/{q})"),
            CotDerivative { n, p, q } => write!(f, "cotd({n},{p}/{q})"),
            NielsenS12 { x } => write!(f, "s12({x})"),
        }
    }
}

fn surd_str(a: &Rational, b: &Rational, d: u64) -> String {
    let sign = if *b < 0 { "-" } else { "+" };
    let babs = Rational::from(b.abs_ref());
    if *a == 0 {
        format!("{}{}*sqrt({d})", if *b < 0 { "-" } else { "" }, babs)
    } else if babs == 1 {
        format!("{a}{sign}sqrt({d})")
    } else {
        format!("{a}{sign}{babs}*sqrt({d})")
    }
}

/// Product of symbol powers, sorted by symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Vec<(ConstantSymbol, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: &ConstantSymbol) -> bool {
        self.0.iter().any(|(t, _)| t == s)
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(|(s, e)| s.weight() as i64 * *e as i64).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial over ℚ in constant symbols; a zero coefficient is never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConstantExpr(pub BTreeMap<Monomial, Rational>);

impl ConstantExpr {
    pub fn zero() -> Self {
        ConstantExpr(BTreeMap::new())
    }

    pub fn rational(q: impl Into<Rational>) -> Self {
        let mut e = Self::zero();
        e.add_term(Monomial::one(), q.into());
        e
    }

    pub fn symbol(s: ConstantSymbol) -> Self {
        Self::symbol_pow(s, 1)
    }

    pub fn symbol_pow(s: ConstantSymbol, e: i32) -> Self {
        let mut out = Self::rational(1);
        let m = Self::power_of(s, e);
        out = out.mul(&m);
        out
    }

    /// `s^e`, with `√d` powers folded into rationals.
    fn power_of(s: ConstantSymbol, e: i32) -> Self {
        if e == 0 {
            return Self::rational(1);
        }
        if let ConstantSymbol::Sqrt(d) = s {
            let half = e.div_euclid(2);
            let rest = e.rem_euclid(2);
            let q = Rational::from(d).pow_int(half);
            let mut m = BTreeMap::new();
            let mono = if rest == 1 { Monomial(vec![(ConstantSymbol::Sqrt(d), 1)]) } else { Monomial::one() };
            m.insert(mono, q);
            return ConstantExpr(m);
        }
        let mut m = BTreeMap::new();
        m.insert(Monomial(vec![(s, e)]), Rational::from(1));
        ConstantExpr(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c == 0 {
            return;
        }
        let entry = self.0.entry(m.clone()).or_default();
        *entry += c;
        if *entry == 0 {
            self.0.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    pub fn add(&self, o: &ConstantExpr) -> ConstantExpr {
        let mut r = self.clone();
        for (m, c) in &o.0 {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &ConstantExpr) -> ConstantExpr {
        self.add(&o.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, q: &Rational) -> ConstantExpr {
        let mut r = Self::zero();
        for (m, c) in &self.0 {
            r.add_term(m.clone(), Rational::from(c * q));
        }
        r
    }

    pub fn mul(&self, o: &ConstantExpr) -> ConstantExpr {
        let mut r = Self::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                let (m, q) = mul_monomials(m1, m2);
                r = r.add(&q.scale(&Rational::from(c1 * c2)).mul_monomial(&m));
            }
        }
        r
    }

    fn mul_monomial(&self, m: &Monomial) -> ConstantExpr {
        let mut r = Self::zero();
        for (m1, c) in &self.0 {
            let mut v: BTreeMap<ConstantSymbol, i32> = m1.0.iter().cloned().collect();
            for (s, e) in &m.0 {
                *v.entry(s.clone()).or_default() += e;
            }
            let mono = Monomial(v.into_iter().filter(|(_, e)| *e != 0).collect());
            r.add_term(mono, c.clone());
        }
        r
    }

    pub fn pow(&self, n: u32) -> ConstantExpr {
        (0..n).fold(Self::rational(1), |acc, _| acc.mul(self))
    }

    /// Inverse of a single-term expression.
    pub fn recip(&self) -> Result<ConstantExpr> {
        if self.0.len() != 1 {
            return Err(Error::Unsupported("only monomials can be inverted".into()));
        }
        let (m, c) = self.0.iter().next().unwrap();
        let mut r = Self::rational(Rational::from(1) / c.clone());
        for (s, e) in &m.0 {
            r = r.mul(&Self::power_of(s.clone(), -e));
        }
        Ok(r)
    }

    /// Rational value if the expression has no symbols.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(Rational::new()),
            1 => self.0.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn symbols(&self) -> Vec<ConstantSymbol> {
        let mut v: Vec<_> = self.0.keys().flat_map(|m| m.0.iter().map(|(s, _)| s.clone())).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Replace every occurrence of `s` by `by`; needs nonnegative powers of `s`.
    pub fn substitute(&self, s: &ConstantSymbol, by: &ConstantExpr) -> Result<ConstantExpr> {
        let mut r = Self::zero();
        for (m, c) in &self.0 {
            let mut rest = Vec::new();
            let mut power = 0;
            for (t, e) in &m.0 {
                if t == s {
                    power = *e;
                } else {
                    rest.push((t.clone(), *e));
                }
            }
            if power < 0 {
                return Err(Error::Unsupported(format!("negative power of {s} in substitution")));
            }
            let base = Self::rational(c.clone()).mul_monomial(&Monomial(rest));
            r = r.add(&base.mul(&by.pow(power as u32)));
        }
        Ok(r)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|(m, c)| {
                    serde_json::json!({
                        "monomial": m.to_string(),
                        "numerator": c.numer().to_string(),
                        "denominator": c.denom().to_string(),
                    })
                })
                .collect(),
        )
    }
}

fn mul_monomials(a: &Monomial, b: &Monomial) -> (Monomial, ConstantExpr) {
    let mut v: BTreeMap<ConstantSymbol, i32> = a.0.iter().cloned().collect();
    for (s, e) in &b.0 {
        *v.entry(s.clone()).or_default() += e;
    }
    let mut coef = ConstantExpr::rational(1);
    let mut keep = Vec::new();
    for (s, e) in v {
        if e == 0 {
            continue;
        }
        if matches!(s, ConstantSymbol::Sqrt(_)) && !(0..2).contains(&e) {
            coef = coef.mul(&ConstantExpr::power_of(s, e));
        } else {
            keep.push((s, e));
        }
    }
    (Monomial(keep), coef)
}

trait PowInt {
    fn pow_int(self, e: i32) -> Rational;
}

impl PowInt for Rational {
    fn pow_int(self, e: i32) -> Rational {
        use rug::ops::Pow;
        if e >= 0 {
            self.pow(e as u32)
        } else {
            Rational::from(1) / self.pow((-e) as u32)
        }
    }
}

impl From<ConstantSymbol> for ConstantExpr {
    fn from(s: ConstantSymbol) -> Self {
        ConstantExpr::symbol(s)
    }
}

impl fmt::Display for ConstantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.0.iter().enumerate() {
            let neg = *c < 0;
            let a = Rational::from(c.abs_ref());
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

/// `ln n` as a combination of `ln p`.
pub fn ln_integer(n: u64) -> ConstantExpr {
    let mut e = ConstantExpr::zero();
    for (p, k) in factorize(n) {
        e.add_term(Monomial(vec![(ConstantSymbol::Ln(p), 1)]), Rational::from(k));
    }
    e
}

/// `√n` as `c √d` with `d` squarefree.
pub fn sqrt_integer(n: u64) -> ConstantExpr {
    let mut out = 1u64;
    let mut d = 1u64;
    for (p, k) in factorize(n) {
        out *= p.pow(k / 2);
        if k % 2 == 1 {
            d *= p;
        }
    }
    let e = ConstantExpr::rational(out);
    if d == 1 {
        e
    } else {
        e.mul(&ConstantExpr::symbol(ConstantSymbol::Sqrt(d)))
    }
}

/// Reads `a + b√d` off an expression, if it has that shape.
fn as_surd(e: &ConstantExpr) -> Option<(Rational, Rational, u64)> {
    let mut a = Rational::new();
    let mut b = Rational::new();
    let mut d = None;
    for (m, c) in e.terms() {
        if m.is_one() {
            a = c.clone();
        } else if let [(ConstantSymbol::Sqrt(s), 1)] = m.0.as_slice() {
            if d.is_some() {
                return None;
            }
            d = Some(*s);
            b = c.clone();
        } else {
            return None;
        }
    }
    d.map(|d| (a, b, d))
}

// ---- parser ----

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at offset {} in constant expression", self.i)))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn expr(&mut self) -> Result<ConstantExpr> {
        let mut acc = if self.eat(b'-') { self.term()?.scale(&Rational::from(-1)) } else { self.term()? };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ConstantExpr> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat(b'/') {
                acc = acc.mul(&self.power()?.recip()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<ConstantExpr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            let n = n.to_u32().ok_or_else(|| Error::Parse("exponent too large".into()))?;
            let p = base.pow(n);
            return if neg { p.recip() } else { Ok(p) };
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<Integer> {
        self.ws();
        let st = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if st == self.i {
            return self.err("expected a number");
        }
        Ok(std::str::from_utf8(&self.s[st..self.i]).unwrap().parse::<Integer>().unwrap())
    }

    fn ident(&mut self) -> String {
        self.ws();
        let st = self.i;
        while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
            self.i += 1;
        }
        String::from_utf8_lossy(&self.s[st..self.i]).into_owned()
    }

    fn args(&mut self) -> Result<Vec<String>> {
        self.expect(b'(')?;
        let st = self.i;
        let mut depth = 1;
        while self.i < self.s.len() {
            match self.s[self.i] {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                _ => {}
            }
            self.i += 1;
        }
        if depth != 0 {
            return self.err("unbalanced parentheses");
        }
        let inner = String::from_utf8_lossy(&self.s[st..self.i]).into_owned();
        self.i += 1;
        let mut out = Vec::new();
        let mut cur = String::new();
        let mut d = 0;
        for ch in inner.chars() {
            match ch {
                '(' | '{' | '[' => d += 1,
                ')' | '}' | ']' => d -= 1,
                _ => {}
            }
            if ch == ',' && d == 0 {
                out.push(cur.trim().to_string());
                cur.clear();
            } else {
                cur.push(ch);
            }
        }
        out.push(cur.trim().to_string());
        Ok(out)
    }

    fn atom(&mut self) -> Result<ConstantExpr> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(ConstantExpr::rational(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                self.function(&name)
            }
            _ => self.err("unexpected input"),
        }
    }

    fn function(&mut self, name: &str) -> Result<ConstantExpr> {
        use ConstantSymbol as S;
        let sym = |s: S| Ok(ConstantExpr::symbol(s));
        match name {
            "pi" => return sym(S::Pi),
            "catalan" => return sym(S::Catalan),
            "gamma" => return sym(S::EulerGamma),
            "sigma0" => return sym(S::Sigma0),
            _ => {}
        }
        if name == "sigma" || name == "S" {
            self.ws();
            let st = self.i;
            if self.peek() != Some(b'[') {
                return self.err("expected '[' after sigma");
            }
            while self.i < self.s.len() && self.s[self.i] != b']' {
                self.i += 1;
            }
            self.i += 1;
            let body = String::from_utf8_lossy(&self.s[st..self.i]).into_owned();
            let idx: SumIndex = format!("S{body}").parse()?;
            return sym(S::Sigma(idx));
        }
        let a = self.args()?;
        let sub = |s: &str| -> Result<ConstantExpr> { s.parse() };
        let num = |s: &str| -> Result<u64> { s.parse::<u64>().map_err(|_| Error::Parse(format!("expected integer, got {s:?}"))) };
        let rat = |s: &str| -> Result<Rational> {
            sub(s)?.as_rational().ok_or_else(|| Error::Parse(format!("expected a rational, got {s:?}")))
        };
        let part = |s: &str| match s {
            "re" => Ok(Part::Re),
            "im" => Ok(Part::Im),
            _ => Err(Error::Parse(format!("expected re or im, got {s:?}"))),
        };
        let frac = |s: &str| -> Result<(i64, u64)> {
            let q = rat(s)?;
            Ok((q.numer().to_i64().unwrap_or(0), q.denom().to_u64().unwrap_or(1)))
        };
        let arity = |k: usize| -> Result<()> {
            if a.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!("{name} takes {k} arguments")))
            }
        };
        match name {
            "ln" | "log" => {
                arity(1)?;
                let e = sub(&a[0])?;
                if let Some(q) = e.as_rational() {
                    if q <= 0 {
                        return Err(Error::Domain("ln of a non-positive number".into()));
                    }
                    let n = q.numer().to_u64().ok_or_else(|| Error::Parse("ln argument too large".into()))?;
                    let d = q.denom().to_u64().unwrap();
                    return Ok(ln_integer(n).sub(&ln_integer(d)));
                }
                let (x, y, d) = as_surd(&e).ok_or_else(|| Error::Unsupported("ln of a non-quadratic argument".into()))?;
                sym(S::LnSurd { a: x, b: y, d })
            }
            "sqrt" => {
                arity(1)?;
                let e = sub(&a[0])?;
                if let Some(q) = e.as_rational() {
                    if q < 0 {
                        return Err(Error::Domain("sqrt of a negative number".into()));
                    }
                    let n = q.numer().to_u64().unwrap_or(0);
                    let d = q.denom().to_u64().unwrap();
                    return Ok(sqrt_integer(n * d).scale(&Rational::from((1, d))));
                }
                let (x, y, d) = as_surd(&e).ok_or_else(|| Error::Unsupported("sqrt of a non-quadratic argument".into()))?;
                sym(S::SqrtSurd { a: x, b: y, d })
            }
            "zeta" => {
                arity(1)?;
                sym(S::Zeta(num(&a[0])? as u32))
            }
            "psi" => {
                arity(2)?;
                let n = num(&a[0])? as u32;
                let x = rat(&a[1])?;
                sym(S::polygamma(n, &x)?)
            }
            "beta" => {
                arity(1)?;
                sym(S::DirichletBeta(num(&a[0])? as u32))
            }
            "ti" => {
                arity(1)?;
                sym(S::Ti(num(&a[0])? as u32))
            }
            "li_half" => {
                arity(1)?;
                sym(S::LiHalf(num(&a[0])? as u32))
            }
            "li_root" => {
                arity(4)?;
                sym(S::LiRoot { weight: num(&a[0])? as u32, l: num(&a[1])?, k: num(&a[2])?, part: part(&a[3])? })
            }
            "chi" => {
                arity(3)?;
                let (p, q) = frac(&a[1])?;
                sym(S::Chi { nu: num(&a[0])? as u32, p, q, part: part(&a[2])? })
            }
            "cl" => {
                arity(2)?;
                let (p, q) = frac(&a[1])?;
                sym(S::Clausen { n: num(&a[0])? as u32, p, q })
            }
            "cotd" => {
                arity(2)?;
                let (p, q) = frac(&a[1])?;
                sym(S::CotDerivative { n: num(&a[0])? as u32, p: p as u64, q })
            }
            "s12" => {
                arity(1)?;
                sym(S::NielsenS12 { x: rat(&a[0])? })
            }
            _ => Err(Error::Parse(format!("unknown constant {name:?}"))),
        }
    }
}

impl FromStr for ConstantExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), i: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_fold() {
        let e: ConstantExpr = "sqrt(3)*sqrt(3) + ln(12) - 2*ln(2)".parse().unwrap();
        assert_eq!(e.to_string(), "3 + ln(3)");
        let e: ConstantExpr = "1/sqrt(5)".parse().unwrap();
        assert_eq!(e.to_string(), "1/5*sqrt(5)");
        let e: ConstantExpr = "sigma[{2,1,-1}] - pi/4".parse().unwrap();
        assert_eq!(e.symbols().len(), 2);
        let e: ConstantExpr = "ln(sqrt(5)-1)".parse().unwrap();
        assert_eq!(e.to_string(), "ln(-1+sqrt(5))");
    }
}
