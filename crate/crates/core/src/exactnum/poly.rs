//! Dense univariate polynomials over `Q(i)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;
use serde::{Deserialize, Serialize};

use super::GaussRat;
use crate::error::{Error, Result};

/// A polynomial `c0 + c1 z + ... + cn z^n`, coefficients lowest degree first.
///
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExactPoly {
    coeffs: Vec<GaussRat>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(GaussRat::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn zero() -> Self {
        ExactPoly::default()
    }

    pub fn one() -> Self {
        ExactPoly::constant(GaussRat::one())
    }

    /// The monomial `z`.
    pub fn x() -> Self {
        ExactPoly::new(vec![GaussRat::zero(), GaussRat::one()])
    }

    pub fn constant(c: GaussRat) -> Self {
        ExactPoly::new(vec![c])
    }

    /// `z - r`.
    pub fn linear_root(r: &GaussRat) -> Self {
        ExactPoly::new(vec![-r, GaussRat::one()])
    }

    pub fn monomial(c: GaussRat, n: usize) -> Self {
        let mut v = vec![GaussRat::zero(); n + 1];
        v[n] = c;
        ExactPoly::new(v)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        ExactPoly::new(c.iter().map(|&n| GaussRat::from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussRat {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0; convenient for bookkeeping.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> GaussRat {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        ExactPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Monic associate; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(inv) => self.scale(&inv),
            None => ExactPoly::zero(),
        }
    }

    pub fn conj(&self) -> Self {
        ExactPoly::new(self.coeffs.iter().map(GaussRat::conj).collect())
    }

    pub fn eval(&self, z: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        ExactPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussRat::from_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ExactPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(z))`, evaluated by Horner's rule.
    pub fn compose(&self, inner: &ExactPoly) -> Self {
        let mut acc = ExactPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &ExactPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &ExactPoly) -> Result<(ExactPoly, ExactPoly)> {
        let dl = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.lead().inv().ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if self.coeffs.len() <= dl {
            return Ok((ExactPoly::zero(), self.clone()));
        }
        let mut quot = vec![GaussRat::zero(); self.coeffs.len() - dl];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dl] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    rem[k + j] -= &t;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dl);
        Ok((ExactPoly::new(quot), ExactPoly::new(rem)))
    }

    pub fn rem(&self, d: &ExactPoly) -> Result<ExactPoly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &ExactPoly) -> Result<ExactPoly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Domain("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &ExactPoly) -> ExactPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &ExactPoly) -> (ExactPoly, ExactPoly, ExactPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (ExactPoly::one(), ExactPoly::zero());
        let (mut t0, mut t1) = (ExactPoly::zero(), ExactPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().inv() {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    /// Inverse of `self` modulo `m`, if `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &ExactPoly) -> Option<ExactPoly> {
        let (g, s, _) = self.ext_gcd(m);
        if g.degree() == Some(0) {
            s.rem(m).ok()
        } else {
            None
        }
    }

    /// Squarefree decomposition (Yun): pairs `(s_k, k)` with `self = lead * prod s_k^k`,
    /// each `s_k` monic, squarefree, pairwise coprime. Constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(ExactPoly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = fp.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), k));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// Squarefree part: product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> ExactPoly {
        self.squarefree_decomposition()
            .into_iter()
            .fold(ExactPoly::one(), |acc, (s, _)| &acc * &s)
    }

    /// Multiset of root multiplicities, e.g. `[2, 3, 3]` for `(z-a)^2 (z^2+1)^3`.
    pub fn root_multiplicities(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for (s, k) in self.squarefree_decomposition() {
            v.extend(std::iter::repeat(k).take(s.deg0()));
        }
        v.sort_unstable();
        v
    }

    /// Order of vanishing at `z = r`.
    pub fn order_at(&self, r: &GaussRat) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = ExactPoly::linear_root(r);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, rem) = p.div_rem(&lin).expect("nonzero divisor");
            if !rem.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }

    /// Resultant by the Euclidean remainder sequence over the field `Q(i)`.
    pub fn resultant(&self, other: &ExactPoly) -> GaussRat {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return GaussRat::zero();
        };
        if n == 0 {
            return other.lead().pow(m as u32);
        }
        if m == 0 {
            return self.lead().pow(n as u32);
        }
        let r = self.rem(other).expect("nonzero divisor");
        let Some(k) = r.degree() else {
            return GaussRat::zero();
        };
        // Res(A,B) = (-1)^{mn} b^{m-k} Res(B, A mod B)
        let mut v = other.lead().pow((m - k) as u32) * other.resultant(&r);
        if (m * n) % 2 == 1 {
            v = -v;
        }
        v
    }

    /// `disc(p) = (-1)^{n(n-1)/2} Res(p, p') / lead(p)`.
    pub fn discriminant(&self) -> Result<GaussRat> {
        let n = match self.degree() {
            Some(n) if n >= 2 => n,
            got => return Err(Error::DegreeTooLow { min: 2, got }),
        };
        let res = self.resultant(&self.derivative());
        let mut d = &res / &self.lead();
        if (n * (n - 1) / 2) % 2 == 1 {
            d = -d;
        }
        Ok(d)
    }

    /// True when all coefficients are real integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real() && *c.re().denom() == 1)
    }

    /// Coefficients as `i128` when the polynomial is integral and they fit.
    pub fn to_i128(&self) -> Option<Vec<i128>> {
        if !self.is_integral() {
            return None;
        }
        self.coeffs.iter().map(|c| c.re().numer().to_i128()).collect()
    }

    /// Odd/even parts: `self(z) = even(z^2) + z * odd(z^2)`.
    pub fn even_odd_split(&self) -> (ExactPoly, ExactPoly) {
        let even = self.coeffs.iter().step_by(2).cloned().collect();
        let odd = self.coeffs.iter().skip(1).step_by(2).cloned().collect();
        (ExactPoly::new(even), ExactPoly::new(odd))
    }

    /// Substitutes `z -> z^2`.
    pub fn compose_square(&self) -> ExactPoly {
        let mut v = Vec::with_capacity(self.coeffs.len() * 2);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                v.push(GaussRat::zero());
            }
            v.push(c.clone());
        }
        ExactPoly::new(v)
    }

    pub fn to_rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs
            .iter()
            .map(|c| c.is_real().then(|| c.re().clone()))
            .collect()
    }
}

impl<'a> Add<&'a ExactPoly> for &'a ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &'a ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a ExactPoly> for &'a ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &'a ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a ExactPoly> for &'a ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &'a ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut v = vec![GaussRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        ExactPoly::new(v)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: ExactPoly) -> ExactPoly {
        &self + &rhs
    }
}

impl Sub for ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: ExactPoly) -> ExactPoly {
        &self - &rhs
    }
}

impl Mul for ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: ExactPoly) -> ExactPoly {
        &self * &rhs
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative_real = c.is_real() && c.re().cmp0().is_lt();
            let c = if negative_real { -c } else { c.clone() };
            match (first, negative_real) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            match (k, c.is_one(), c.is_real()) {
                (0, _, _) => write!(f, "{c}")?,
                (_, true, _) => {}
                (_, _, true) => write!(f, "{c}*")?,
                _ => write!(f, "({c})*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly({self})")
    }
}
