//! Gaussian rationals, the scalar field `Q(i)` used by every exact computation.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use rug::{Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

fn nearest(r: &Rational) -> f64 {
    rug::Float::with_val(53, r).to_f64()
}

/// An element `re + im*i` of `Q(i)`.
///
/// Both parts are stored as reduced big rationals, so derived equality is
/// exact equality of the field elements.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    re: Rational,
    im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::default()
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn i() -> Self {
        GaussRat::new(Rational::new(), Rational::from(1))
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(Rational::from(n), Rational::new())
    }

    /// `num/den` as a real Gaussian rational. Panics on a zero denominator.
    pub fn from_frac(num: i64, den: i64) -> Self {
        GaussRat::new(Rational::from((num, den)), Rational::new())
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussRat::new(Rational::from(re), Rational::from(im))
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.cmp0().is_eq() && self.im.cmp0().is_eq()
    }

    pub fn is_one(&self) -> bool {
        self.im.cmp0().is_eq() && self.re == 1
    }

    pub fn is_real(&self) -> bool {
        self.im.cmp0().is_eq()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), Rational::from(-&self.im))
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat::new(
            Rational::from(&self.re / &n),
            -Rational::from(&self.im / &n),
        ))
    }

    pub fn checked_div(&self, rhs: &GaussRat) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = GaussRat::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact square root in `Q(i)` if one exists.
    ///
    /// Returns the root with positive real part, or positive imaginary part
    /// when the real part vanishes.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussRat::zero());
        }
        // |z| must be rational, then re(w)^2 = (|z| + a)/2, im(w)^2 = (|z| - a)/2.
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let x2 = Rational::from(&modulus + &self.re) / 2u32;
        let y2 = Rational::from(&modulus - &self.re) / 2u32;
        let x = rational_sqrt(&x2)?;
        let mut y = rational_sqrt(&y2)?;
        if self.im.cmp0().is_lt() {
            y = -y;
        }
        let w = GaussRat::new(x, y);
        debug_assert!(&(&w * &w) == self);
        Some(w)
    }

    /// Both parts rounded to the nearest double.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (nearest(&self.re), nearest(&self.im))
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        let (re, im) = self.to_f64_pair();
        num_complex::Complex64::new(re, im)
    }

    /// Real-valued element from a rational.
    pub fn from_rational(r: Rational) -> Self {
        GaussRat::new(r, Rational::new())
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> Integer {
        Integer::from(self.re.denom()).lcm(self.im.denom())
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.cmp0().is_lt() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    if !n.is_perfect_square() || !d.is_perfect_square() {
        return None;
    }
    Some(Rational::from((n.clone().sqrt(), d.clone().sqrt())))
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a GaussRat> for &'a GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &'a GaussRat) -> GaussRat {
                let f: fn(&GaussRat, &GaussRat) -> GaussRat = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                $tr::$method(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &'a GaussRat) -> GaussRat {
                $tr::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussRat::new(
    Rational::from(&a.re + &b.re),
    Rational::from(&a.im + &b.im)
));
forward_binop!(Sub, sub, |a, b| GaussRat::new(
    Rational::from(&a.re - &b.re),
    Rational::from(&a.im - &b.im)
));
forward_binop!(Mul, mul, |a, b| {
    if a.is_real() && b.is_real() {
        return GaussRat::from_rational(Rational::from(&a.re * &b.re));
    }
    let re = Rational::from(&a.re * &b.re) - Rational::from(&a.im * &b.im);
    let im = Rational::from(&a.re * &b.im) + Rational::from(&a.im * &b.re);
    GaussRat::new(re, im)
});
forward_binop!(Div, div, |a, b| {
    a.checked_div(b).expect("division of a Gaussian rational by zero")
});

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re, -self.im)
    }
}

impl<'a> Neg for &'a GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(Rational::from(-&self.re), Rational::from(-&self.im))
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, rhs: &GaussRat) {
        *self = &*self * rhs;
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl From<Rational> for GaussRat {
    fn from(r: Rational) -> Self {
        GaussRat::from_rational(r)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        if !self.im.cmp0().is_eq() {
            if self.im.cmp0().is_lt() {
                write!(f, "-{}*i", Rational::from(-&self.im))?;
            } else {
                write!(f, "+{}*i", self.im)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses an exact real number: an integer, `p/q`, or a finite decimal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (neg, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        let ok = |t: &str| t.chars().all(|c| c.is_ascii_digit());
        if !ok(int_digits) || !ok(frac_part) || (int_digits.is_empty() && frac_part.is_empty()) {
            return Err(Error::Parse(format!("bad decimal `{s}`")));
        }
        let digits = format!("{int_digits}{frac_part}");
        let n = Integer::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|e| Error::Parse(e.to_string()))?;
        let d = Integer::from(Integer::u_pow_u(10, frac_part.len() as u32));
        let r = Rational::from((n, d));
        return Ok(if neg { -r } else { r });
    }
    Rational::from_str(s).map_err(|e| Error::Parse(format!("`{s}`: {e}")))
}

impl FromStr for GaussRat {
    type Err = Error;

    /// Accepts `a`, `a/b`, `a/b+c/d*i`, `a-c*i`, `c*i`, `i`, `-i`, with
    /// decimal literals allowed for each part.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty Gaussian rational".into()));
        }
        if !t.ends_with('i') {
            return Ok(GaussRat::from_rational(parse_rational(&t)?));
        }
        // Split at the last sign that is not the leading one and not part of an exponent.
        let body = &t[..t.len() - 1];
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re_str, im_str) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im_str = im_str.strip_suffix('*').unwrap_or(im_str);
        let im = match im_str {
            "" | "+" => Rational::from(1),
            "-" => Rational::from(-1),
            other => parse_rational(other)?,
        };
        Ok(GaussRat::new(parse_rational(re_str)?, im))
    }
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_forms() {
        let g: GaussRat = "1/2+3/4*i".parse().unwrap();
        assert_eq!(g, GaussRat::from_parts((1, 2), (3, 4)));
        assert_eq!("-i".parse::<GaussRat>().unwrap(), -GaussRat::i());
        assert_eq!("2*i".parse::<GaussRat>().unwrap(), GaussRat::from_parts((0, 1), (2, 1)));
        assert_eq!("0.25-0.5*i".parse::<GaussRat>().unwrap(), GaussRat::from_parts((1, 4), (-1, 2)));
        assert_eq!("-3/6".parse::<GaussRat>().unwrap(), GaussRat::from_frac(-1, 2));
        assert!("1/0".parse::<GaussRat>().is_err());
        assert!("abc".parse::<GaussRat>().is_err());
    }

    #[test]
    fn conversion_rounds_to_nearest() {
        for d in ["0.9", "0.1", "-0.7", "1.3157", "2/3"] {
            let g: GaussRat = d.parse().unwrap();
            let want: f64 = if d == "2/3" { 2.0 / 3.0 } else { d.parse().unwrap() };
            assert_eq!(g.to_complex64().re, want, "{d}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(GaussRat::from_parts((1, 2), (-3, 4)).to_string(), "1/2-3/4*i");
        assert_eq!(GaussRat::from_int(5).to_string(), "5");
    }

    #[test]
    fn exact_sqrt() {
        // 1 - 16 (i/3)^2 = 25/9
        let c = GaussRat::from_parts((0, 1), (1, 3));
        let disc = GaussRat::one() - &(GaussRat::from_int(16) * &(&c * &c));
        assert_eq!(disc.sqrt().unwrap(), GaussRat::from_frac(5, 3));
        assert_eq!(GaussRat::from_parts((0, 1), (2, 1)).sqrt().unwrap(), GaussRat::from_parts((1, 1), (1, 1)));
        assert!(GaussRat::from_int(2).sqrt().is_none());
        assert_eq!(GaussRat::from_int(-4).sqrt().unwrap(), GaussRat::from_parts((0, 1), (2, 1)));
    }

    fn small() -> impl Strategy<Value = GaussRat> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| GaussRat::from_parts((a, b), (c, d)))
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(g in small()) {
            prop_assert_eq!(g.to_string().parse::<GaussRat>().unwrap(), g);
        }

        #[test]
        fn inverse(g in small()) {
            prop_assume!(!g.is_zero());
            prop_assert!((&g * &g.inv().unwrap()).is_one());
        }
    }
}
