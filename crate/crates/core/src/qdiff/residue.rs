use std::fmt;

use num_complex::Complex64;

use super::{Point, QuadDiff};
use crate::exactnum::{ExactPoly, GaussRat};
use crate::error::{Error, Result};

/// Residue `a` at a double pole, kept as the exact square `A = a^2` where
/// `R ~ A / (z - p)^2`. The residue equals the q-length of a closed
/// trajectory around the pole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub squared: GaussRat,
}

impl Residue {
    /// Exact value when `A` is a square in `Q(i)` with a positive real root.
    pub fn exact(&self) -> Option<GaussRat> {
        self.squared.sqrt().filter(|r| r.is_real() && r.re().cmp0().is_gt())
    }

    /// Principal square root of `A`.
    pub fn value(&self) -> Complex64 {
        self.squared.to_complex64().sqrt()
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "sqrt({})", self.squared),
        }
    }
}

/// Residue of `q` at a double pole `p`.
pub fn residue_at(q: &QuadDiff, p: &Point) -> Result<Residue> {
    let (num, den) = (q.r().num(), q.r().den());
    match p {
        Point::Infinity => {
            // R ~ A / z^2 as z -> inf, i.e. deg den = deg num + 2.
            if q.order_at_infinity() != -2 {
                return Err(Error::NotDoublePole(p.to_string()));
            }
            Ok(Residue { squared: &num.lead() / &den.lead() })
        }
        Point::Finite(z) => {
            if q.order_at(p) != -2 {
                return Err(Error::NotDoublePole(p.to_string()));
            }
            let lin2 = ExactPoly::linear_root(z).pow(2);
            let rest = den.div_exact(&lin2)?;
            Ok(Residue { squared: &num.eval(z) / &rest.eval(z) })
        }
    }
}

/// Common squared residue at every root of a squarefree denominator factor.
///
/// With `den = H S^2`, the squared residue at a root `r` of `S` is
/// `N(r) / (H(r) S'(r)^2)`; it is computed modulo `S` and must reduce to a
/// constant for the residues to agree across the roots.
pub fn residue_on_factor(q: &QuadDiff, s: &ExactPoly) -> Result<Residue> {
    let s = s.monic();
    let (num, den) = (q.r().num(), q.r().den());
    let s2 = s.pow(2);
    let h = den.div_exact(&s2)?;
    if !h.gcd(&s).is_constant() || !num.gcd(&s).is_constant() {
        return Err(Error::NotDoublePole(format!("roots of {s}")));
    }
    let sp = s.derivative();
    let m = (&h * &sp.pow(2)).rem(&s)?;
    let inv = m.inverse_mod(&s).ok_or_else(|| Error::NotDoublePole(format!("roots of {s}")))?;
    let a = (&num.rem(&s)? * &inv).rem(&s)?;
    if !a.is_constant() {
        return Err(Error::Domain(format!("residues differ across the roots of {s}")));
    }
    Ok(Residue { squared: a.coeff(0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ExactRatFunc;
    use crate::qdiff::{family, pullback, q0, StrebelParams};

    #[test]
    fn family_residues_are_one() {
        let l = GaussRat::from_parts((2, 3), (5, 7));
        let q = family(&StrebelParams::new(l, GaussRat::from_int(3)).unwrap()).unwrap();
        for p in q.poles().to_vec() {
            assert_eq!(residue_at(&q, &p).unwrap().exact(), Some(GaussRat::one()), "pole {p}");
        }
    }

    #[test]
    fn q0_residue() {
        assert_eq!(residue_at(&q0(), &Point::int(1)).unwrap().exact(), Some(GaussRat::one()));
        assert!(residue_at(&q0(), &Point::int(0)).is_err());
    }

    #[test]
    fn quartic_pullback_residues() {
        let f = ExactRatFunc::from_poly(ExactPoly::monomial(GaussRat::one(), 4));
        let p = pullback(&f, &q0());
        for z in [GaussRat::i(), -GaussRat::i(), GaussRat::one(), GaussRat::from_int(-1)] {
            assert_eq!(residue_at(&p, &Point::Finite(z)).unwrap().exact(), Some(GaussRat::one()));
        }
        // every double pole factor at once
        for s in p.double_pole_factors() {
            assert_eq!(residue_on_factor(&p, &s).unwrap().exact(), Some(GaussRat::one()));
        }
    }
}
