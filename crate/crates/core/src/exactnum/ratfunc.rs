//! Rational functions over `Q(i)` in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{ExactPoly, GaussRat};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRatFunc", into = "RawRatFunc")]
pub struct ExactRatFunc {
    num: ExactPoly,
    den: ExactPoly,
}

#[derive(Serialize, Deserialize)]
struct RawRatFunc {
    num: ExactPoly,
    den: ExactPoly,
}

impl TryFrom<RawRatFunc> for ExactRatFunc {
    type Error = Error;
    fn try_from(r: RawRatFunc) -> Result<Self> {
        ExactRatFunc::new(r.num, r.den)
    }
}

impl From<ExactRatFunc> for RawRatFunc {
    fn from(f: ExactRatFunc) -> Self {
        RawRatFunc { num: f.num, den: f.den }
    }
}

impl ExactRatFunc {
    pub fn new(num: ExactPoly, den: ExactPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(ExactRatFunc::zero());
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.div_exact(&g)?, den.div_exact(&g)?);
        let lc = d.lead().inv().expect("nonzero denominator");
        n = n.scale(&lc);
        d = d.scale(&lc);
        Ok(ExactRatFunc { num: n, den: d })
    }

    pub fn from_poly(p: ExactPoly) -> Self {
        ExactRatFunc { num: p, den: ExactPoly::one() }
    }

    pub fn zero() -> Self {
        ExactRatFunc::from_poly(ExactPoly::zero())
    }

    pub fn one() -> Self {
        ExactRatFunc::from_poly(ExactPoly::one())
    }

    pub fn x() -> Self {
        ExactRatFunc::from_poly(ExactPoly::x())
    }

    pub fn constant(c: GaussRat) -> Self {
        ExactRatFunc::from_poly(ExactPoly::constant(c))
    }

    pub fn num(&self) -> &ExactPoly {
        &self.num
    }

    pub fn den(&self) -> &ExactPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Degree as a map of the sphere: `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    /// `deg den - deg num`; the order of vanishing at infinity.
    pub fn order_at_infinity(&self) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        self.den.deg0() as i64 - self.num.deg0() as i64
    }

    pub fn inv(&self) -> Result<Self> {
        ExactRatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        ExactRatFunc::new(self.num.scale(c), self.den.clone()).expect("denominator unchanged")
    }

    pub fn pow(&self, n: u32) -> Self {
        ExactRatFunc::new(self.num.pow(n), self.den.pow(n)).expect("nonzero denominator")
    }

    /// Value at a finite point; `None` at a pole.
    pub fn eval(&self, z: &GaussRat) -> Option<GaussRat> {
        self.num.eval(z).checked_div(&self.den.eval(z))
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        ExactRatFunc::new(n, self.den.pow(2)).expect("nonzero denominator")
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &ExactRatFunc) -> Self {
        let n = self.degree();
        let (p, q) = (&inner.num, &inner.den);
        // Homogenise: F(P/Q) = sum f_k P^k Q^{n-k} / sum g_k P^k Q^{n-k}.
        let mut ppow = vec![ExactPoly::one()];
        let mut qpow = vec![ExactPoly::one()];
        for k in 1..=n {
            ppow.push(&ppow[k - 1] * p);
            qpow.push(&qpow[k - 1] * q);
        }
        let homog = |f: &ExactPoly| {
            f.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .fold(ExactPoly::zero(), |acc, (k, c)| {
                    &acc + &(&ppow[k] * &qpow[n - k]).scale(c)
                })
        };
        ExactRatFunc::new(homog(&self.num), homog(&self.den))
            .expect("composition of a nonconstant map stays defined")
    }

    pub fn compose_poly(&self, inner: &ExactPoly) -> Self {
        self.compose(&ExactRatFunc::from_poly(inner.clone()))
    }

    /// Substitutes `z -> z^2`.
    pub fn compose_square(&self) -> Self {
        ExactRatFunc::new(self.num.compose_square(), self.den.compose_square())
            .expect("nonzero denominator")
    }

    pub fn conj(&self) -> Self {
        ExactRatFunc { num: self.num.conj(), den: self.den.conj() }
    }
}

impl<'a> Add<&'a ExactRatFunc> for &'a ExactRatFunc {
    type Output = ExactRatFunc;
    fn add(self, rhs: &'a ExactRatFunc) -> ExactRatFunc {
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        ExactRatFunc::new(n, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a ExactRatFunc> for &'a ExactRatFunc {
    type Output = ExactRatFunc;
    fn sub(self, rhs: &'a ExactRatFunc) -> ExactRatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ExactRatFunc> for &'a ExactRatFunc {
    type Output = ExactRatFunc;
    fn mul(self, rhs: &'a ExactRatFunc) -> ExactRatFunc {
        ExactRatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<'a> Div<&'a ExactRatFunc> for &'a ExactRatFunc {
    type Output = ExactRatFunc;
    /// Panics when dividing by the zero function; use [`ExactRatFunc::inv`] to handle it.
    fn div(self, rhs: &'a ExactRatFunc) -> ExactRatFunc {
        self * &rhs.inv().expect("division by the zero rational function")
    }
}

impl Neg for &ExactRatFunc {
    type Output = ExactRatFunc;
    fn neg(self) -> ExactRatFunc {
        ExactRatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl From<ExactPoly> for ExactRatFunc {
    fn from(p: ExactPoly) -> Self {
        ExactRatFunc::from_poly(p)
    }
}

impl fmt::Display for ExactRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ExactRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactRatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ExactPoly {
        ExactPoly::from_ints(c)
    }

    #[test]
    fn reduces_to_lowest_terms() {
        let f = ExactRatFunc::new(p(&[-2, 0, 2]), p(&[2, 2])).unwrap();
        assert_eq!(f.num(), &p(&[-1, 1]));
        assert_eq!(f.den(), &ExactPoly::one());
    }

    #[test]
    fn mobius_compose_inverse() {
        // phi(z) = z/(z-1) is an involution
        let phi = ExactRatFunc::new(p(&[0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(phi.compose(&phi), ExactRatFunc::x());
    }

    #[test]
    fn zero_denominator() {
        assert_eq!(ExactRatFunc::new(p(&[1]), ExactPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn json_round_trip() {
        let f = ExactRatFunc::new(p(&[1, 0, 3]), p(&[0, 0, 1, 5])).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<ExactRatFunc>(&s).unwrap(), f);
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dz 1/z = -1/z^2
        let f = ExactRatFunc::x().inv().unwrap();
        assert_eq!(f.derivative(), ExactRatFunc::new(p(&[-1]), p(&[0, 0, 1])).unwrap());
    }
}
