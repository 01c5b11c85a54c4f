//! Minimal complex arithmetic over `rug::Float`.

use super::pi;
use rug::Float;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex { re: Float::with_val(prec, 0), im: Float::with_val(prec, 0) }
    }

    pub fn real(re: Float) -> Self {
        let im = Float::with_val(re.prec(), 0);
        Complex { re, im }
    }

    /// `e^{2πi p/q}`
    pub fn root_of_unity(p: i64, q: u64, prec: u32) -> Self {
        let ang = Float::with_val(prec, pi(prec) * 2u32) * p / q;
        let (s, c) = ang.sin_cos(Float::new(prec));
        Complex { re: c, im: s }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Float {
        Float::with_val(self.prec(), self.re.square_ref()) + Float::with_val(self.prec(), self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: &Float) -> Self {
        Complex { re: Float::with_val(self.prec(), &self.re * s), im: Float::with_val(self.prec(), &self.im * s) }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Complex { re: Float::with_val(self.prec(), &self.re / &n), im: -Float::with_val(self.prec(), &self.im / &n) }
    }

    /// Principal branch.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let arg = Float::with_val(p, self.im.atan2_ref(&self.re));
        Complex { re: self.abs().ln(), im: arg }
    }

    pub fn div(&self, o: &Complex) -> Self {
        self * &o.recip()
    }

    pub fn is_real_positive_beyond_one(&self) -> bool {
        self.im.is_zero() && self.re > 1
    }

    /// `r e^{iθ}`
    pub fn from_polar(r: &Float, theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(theta.prec()));
        Complex { re: Float::with_val(r.prec(), &c * r), im: Float::with_val(r.prec(), &s * r) }
    }

    /// Principal `l`-th root.
    pub fn nth_root(&self, l: u32) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.abs().root(l));
        let theta = Float::with_val(p, self.im.atan2_ref(&self.re)) / l;
        Complex::from_polar(&r, &theta)
    }

    pub fn pow_u(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Complex::real(Float::with_val(self.prec(), 1));
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        let p = self.prec();
        Complex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        let p = self.prec();
        Complex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Complex { re, im }
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re, im: -self.im }
    }
}
