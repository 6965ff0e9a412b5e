//! Multiprecision complex floats and numeric polynomials / rational functions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use rug::float::Round;
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExactPoly, ExactRatFunc, GaussRat};
use crate::error::{Error, Result};

pub const MIN_PRECISION: u32 = 64;
pub const DEFAULT_PRECISION: u32 = 128;

/// A complex number with both parts stored as MPFR floats of a common precision.
///
/// Binary operations run at the larger of the two operand precisions.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    re: Float,
    im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        let prec = re.prec().max(im.prec()).max(MIN_PRECISION);
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex::from_f64(0.0, 0.0, prec)
    }

    pub fn one(prec: u32) -> Self {
        BigComplex::from_f64(1.0, 0.0, prec)
    }

    pub fn i(prec: u32) -> Self {
        BigComplex::from_f64(0.0, 1.0, prec)
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec().max(MIN_PRECISION);
        BigComplex::new(re, Float::new(prec))
    }

    pub fn from_gauss(g: &GaussRat, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex { re: Float::with_val(prec, g.re()), im: Float::with_val(prec, g.im()) }
    }

    pub fn from_complex64(z: Complex64, prec: u32) -> Self {
        BigComplex::from_f64(z.re, z.im, prec)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        BigComplex { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square())
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return BigComplex::zero(p);
        }
        let r = self.abs();
        // w = sqrt((r + a)/2) + i sign(b) sqrt((r - a)/2), computed without cancellation.
        if self.re.is_sign_positive() {
            let x = Float::with_val(p, Float::with_val(p, &r + &self.re) / 2u32).sqrt();
            let y = Float::with_val(p, &self.im / Float::with_val(p, &x * 2u32));
            BigComplex { re: x, im: y }
        } else {
            let mut y = Float::with_val(p, Float::with_val(p, &r - &self.re) / 2u32).sqrt();
            if self.im.is_sign_negative() {
                y = -y;
            }
            let x = Float::with_val(p, &self.im / Float::with_val(p, &y * 2u32));
            BigComplex { re: x, im: y }
        }
    }

    /// The principal `n`-th root via polar form.
    pub fn root(&self, n: u32) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return BigComplex::zero(p);
        }
        let r = self.abs().root(n);
        let t = Float::with_val(p, self.arg() / n);
        BigComplex { re: Float::with_val(p, &r * t.clone().cos()), im: Float::with_val(p, &r * t.sin()) }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = BigComplex::one(self.prec());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.prec();
        let n = self.norm_sqr();
        Some(BigComplex {
            re: Float::with_val(p, &self.re / &n),
            im: Float::with_val(p, -Float::with_val(p, &self.im / &n)),
        })
    }

    pub fn scale_f(&self, s: &Float) -> Self {
        let p = self.prec().max(s.prec());
        BigComplex { re: Float::with_val(p, &self.re * s), im: Float::with_val(p, &self.im * s) }
    }

    /// `|self - other|` as an f64.
    pub fn dist(&self, other: &BigComplex) -> f64 {
        (self - other).abs_f64()
    }

    /// Real numbers `2^k` at a given precision; a helper for the radical closed forms.
    pub fn real_pow(base: u32, exp_num: i32, exp_den: i32, prec: u32) -> Float {
        let b = Float::with_val(prec, base);
        let e = Float::with_val(prec, exp_num) / exp_den;
        Float::with_val(prec, b.pow(e))
    }
}

fn common_prec(a: &BigComplex, b: &BigComplex) -> u32 {
    a.prec().max(b.prec())
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &'a BigComplex) -> BigComplex {
        let p = common_prec(self, rhs);
        BigComplex { re: Float::with_val(p, &self.re + &rhs.re), im: Float::with_val(p, &self.im + &rhs.im) }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &'a BigComplex) -> BigComplex {
        let p = common_prec(self, rhs);
        BigComplex { re: Float::with_val(p, &self.re - &rhs.re), im: Float::with_val(p, &self.im - &rhs.im) }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &'a BigComplex) -> BigComplex {
        let p = common_prec(self, rhs);
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        BigComplex { re: Float::with_val(p, ac - bd), im: Float::with_val(p, ad + bc) }
    }
}

impl<'a> Div<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &'a BigComplex) -> BigComplex {
        self * &rhs.inv().expect("complex division by zero")
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        let p = self.prec();
        BigComplex { re: Float::with_val(p, -&self.re), im: Float::with_val(p, -&self.im) }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex {
                $tr::$m(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: &'a BigComplex) -> BigComplex {
                $tr::$m(&self, rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -&self
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Enough decimal digits to round-trip the binary precision.
        let digits = (self.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
        let show = |x: &Float| x.to_string_radix_round(10, Some(digits), Round::Nearest);
        write!(f, "({},{})@{}", show(&self.re), show(&self.im), self.prec())
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BigComplex {
    type Err = Error;

    /// Parses `(re,im)@bits`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `(re,im)@bits`, got `{s}`"));
        let (body, bits) = s.trim().rsplit_once('@').ok_or_else(bad)?;
        let prec: u32 = bits.parse().map_err(|_| bad())?;
        if prec < MIN_PRECISION {
            return Err(Error::Parse(format!("precision {prec} is below {MIN_PRECISION} bits")));
        }
        let inner = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(bad)?;
        let (re, im) = inner.split_once(',').ok_or_else(bad)?;
        let parse = |t: &str| {
            Float::parse(t.trim()).map(|v| Float::with_val(prec, v)).map_err(|_| bad())
        };
        Ok(BigComplex { re: parse(re)?, im: parse(im)? })
    }
}

impl Serialize for BigComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BigComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A polynomial with multiprecision complex coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct NumPoly {
    coeffs: Vec<BigComplex>,
}

impl NumPoly {
    pub fn new(mut coeffs: Vec<BigComplex>) -> Self {
        while coeffs.last().is_some_and(BigComplex::is_zero) {
            coeffs.pop();
        }
        NumPoly { coeffs }
    }

    pub fn from_exact(p: &ExactPoly, prec: u32) -> Self {
        NumPoly::new(p.coeffs().iter().map(|c| BigComplex::from_gauss(c, prec)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[BigComplex], prec: u32) -> Self {
        let mut c = vec![BigComplex::one(prec)];
        for r in roots {
            let mut next = vec![BigComplex::zero(prec); c.len() + 1];
            for (k, a) in c.iter().enumerate() {
                next[k + 1] = &next[k + 1] + a;
                next[k] = &next[k] - &(a * r);
            }
            c = next;
        }
        NumPoly::new(c)
    }

    pub fn coeffs(&self) -> &[BigComplex] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn prec(&self) -> u32 {
        self.coeffs.iter().map(BigComplex::prec).max().unwrap_or(MIN_PRECISION)
    }

    pub fn eval(&self, z: &BigComplex) -> BigComplex {
        let mut acc = BigComplex::zero(self.prec().max(z.prec()));
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn derivative(&self) -> NumPoly {
        NumPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale_f(&Float::with_val(c.prec(), k as u32)))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &NumPoly) -> NumPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return NumPoly::new(vec![]);
        }
        let p = self.prec().max(rhs.prec());
        let mut v = vec![BigComplex::zero(p); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        NumPoly::new(v)
    }

    pub fn add(&self, rhs: &NumPoly) -> NumPoly {
        let p = self.prec().max(rhs.prec());
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigComplex::zero(p);
        NumPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + rhs.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigComplex) -> NumPoly {
        NumPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(BigComplex::abs_f64).fold(0.0, f64::max)
    }

    pub fn to_complex64(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(BigComplex::to_complex64).collect()
    }
}

/// A rational function with multiprecision complex coefficients.
#[derive(Clone, Debug)]
pub struct NumRatFunc {
    pub num: NumPoly,
    pub den: NumPoly,
}

impl NumRatFunc {
    pub fn from_exact(f: &ExactRatFunc, prec: u32) -> Self {
        NumRatFunc { num: NumPoly::from_exact(f.num(), prec), den: NumPoly::from_exact(f.den(), prec) }
    }

    pub fn eval(&self, z: &BigComplex) -> Option<BigComplex> {
        let d = self.den.eval(z);
        d.inv().map(|di| &self.num.eval(z) * &di)
    }

    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// `self(inner(z))`, homogenised so no division is needed.
    pub fn compose(&self, inner: &NumRatFunc) -> NumRatFunc {
        let n = self.degree();
        let p = self.num.prec().max(inner.num.prec());
        let mut ppow = vec![NumPoly::new(vec![BigComplex::one(p)])];
        let mut qpow = ppow.clone();
        for k in 1..=n {
            ppow.push(ppow[k - 1].mul(&inner.num));
            qpow.push(qpow[k - 1].mul(&inner.den));
        }
        let homog = |f: &NumPoly| {
            f.coeffs.iter().enumerate().fold(NumPoly::new(vec![]), |acc, (k, c)| {
                acc.add(&ppow[k].mul(&qpow[n - k]).scale(c))
            })
        };
        NumRatFunc { num: homog(&self.num), den: homog(&self.den) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_branches() {
        let m1 = BigComplex::from_f64(-1.0, 0.0, 128);
        let r = m1.sqrt();
        assert!(r.dist(&BigComplex::i(128)) < 1e-35);
        let z = BigComplex::from_f64(-3.0, -4.0, 128);
        assert!(z.sqrt().dist(&BigComplex::from_f64(1.0, -2.0, 128)) < 1e-35);
    }

    #[test]
    fn precision_is_kept() {
        let a = BigComplex::from_f64(1.0, 2.0, 256);
        let b = BigComplex::from_f64(3.0, 4.0, 128);
        assert_eq!((&a * &b).prec(), 256);
        assert_eq!(BigComplex::from_f64(1.0, 0.0, 10).prec(), MIN_PRECISION);
    }

    #[test]
    fn string_round_trip() {
        let third = Float::with_val(128, 1) / 3u32;
        let z = BigComplex::new(third.clone(), -third);
        let s = z.to_string();
        assert!(s.ends_with("@128"));
        let back: BigComplex = s.parse().unwrap();
        assert_eq!(back, z);
        assert!("(1,2)".parse::<BigComplex>().is_err());
        assert!("(1,2)@32".parse::<BigComplex>().is_err());
    }

    #[test]
    fn cube_root() {
        let z = BigComplex::from_f64(0.0, 8.0, 128);
        let r = z.root(3);
        assert!(r.powi(3).dist(&z) < 1e-34);
    }
}
