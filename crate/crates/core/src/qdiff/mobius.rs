use std::fmt;

use serde::{Deserialize, Serialize};

use super::{pullback, Point, QuadDiff, StrebelParams};
use crate::exactnum::{BigComplex, ExactPoly, ExactRatFunc, GaussRat};
use crate::error::{Error, Result};

/// `z -> (a z + b) / (c z + d)` with `ad - bc != 0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MobiusMap {
    pub a: GaussRat,
    pub b: GaussRat,
    pub c: GaussRat,
    pub d: GaussRat,
}

impl MobiusMap {
    pub fn new(a: GaussRat, b: GaussRat, c: GaussRat, d: GaussRat) -> Result<Self> {
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(Error::Degenerate("Möbius map with zero determinant".into()));
        }
        Ok(MobiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        MobiusMap { a: GaussRat::one(), b: GaussRat::zero(), c: GaussRat::zero(), d: GaussRat::one() }
    }

    pub fn apply(&self, p: &Point) -> Point {
        match p {
            Point::Infinity if self.c.is_zero() => Point::Infinity,
            Point::Infinity => Point::Finite(&self.a / &self.c),
            Point::Finite(z) => {
                let den = &(&self.c * z) + &self.d;
                match den.inv() {
                    None => Point::Infinity,
                    Some(inv) => Point::Finite(&(&(&self.a * z) + &self.b) * &inv),
                }
            }
        }
    }

    pub fn inverse(&self) -> Self {
        MobiusMap { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// `self o other`.
    pub fn compose(&self, other: &MobiusMap) -> Self {
        MobiusMap {
            a: &(&self.a * &other.a) + &(&self.b * &other.c),
            b: &(&self.a * &other.b) + &(&self.b * &other.d),
            c: &(&self.c * &other.a) + &(&self.d * &other.c),
            d: &(&self.c * &other.b) + &(&self.d * &other.d),
        }
    }

    pub fn to_ratfunc(&self) -> ExactRatFunc {
        ExactRatFunc::new(
            ExactPoly::new(vec![self.b.clone(), self.a.clone()]),
            ExactPoly::new(vec![self.d.clone(), self.c.clone()]),
        )
        .expect("nonzero determinant")
    }

    /// The map sending `p1, p2, p3` to `0, 1, inf`.
    pub fn to_zero_one_infinity(p1: &Point, p2: &Point, p3: &Point) -> Result<Self> {
        if p1 == p2 || p2 == p3 || p1 == p3 {
            return Err(Error::CoincidentPoles);
        }
        let one = GaussRat::one();
        let zero = GaussRat::zero();
        let m = match (p1, p2, p3) {
            (Point::Finite(a), Point::Finite(b), Point::Finite(c)) => {
                let (k1, k2) = (b - c, b - a);
                MobiusMap::new(k1.clone(), -&(a * &k1), k2.clone(), -&(c * &k2))?
            }
            (Point::Finite(a), Point::Finite(b), Point::Infinity) => {
                MobiusMap::new(one, -a, zero, b - a)?
            }
            (Point::Infinity, Point::Finite(b), Point::Finite(c)) => {
                MobiusMap::new(zero, b - c, one, -c)?
            }
            (Point::Finite(a), Point::Infinity, Point::Finite(c)) => {
                MobiusMap::new(one.clone(), -a, one, -c)?
            }
            _ => unreachable!("at most one point is infinite"),
        };
        Ok(m)
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}*z + {}) / ({}*z + {})", self.a, self.b, self.c, self.d)
    }
}

impl MobiusMap {
    /// Pullback of `q` by this map; marked poles move to their preimages.
    pub fn apply_to(&self, q: &QuadDiff) -> QuadDiff {
        let inv = self.inverse();
        let poles = q.poles().iter().map(|p| inv.apply(p)).collect();
        pullback(&self.to_ratfunc(), q).with_poles(poles)
    }
}

/// Sends the first three chosen poles to `0, 1, inf`; the fourth lands at the
/// cross-ratio `lambda`. Returns the map, the transported differential and `lambda`.
pub fn normalize_poles(q: &QuadDiff, poles: &[Point; 4]) -> Result<(MobiusMap, QuadDiff, GaussRat)> {
    let m = MobiusMap::to_zero_one_infinity(&poles[0], &poles[1], &poles[2])?;
    let lambda = match m.apply(&poles[3]) {
        Point::Finite(l) if !l.is_zero() && !l.is_one() => l,
        _ => return Err(Error::CoincidentPoles),
    };
    let moved = m.inverse().apply_to(q).with_poles(vec![
        Point::int(0),
        Point::int(1),
        Point::Finite(lambda.clone()),
        Point::Infinity,
    ]);
    Ok((m, moved, lambda))
}

/// Reads `(lambda, mu)` off a differential already normalised to poles
/// `0, 1, lambda, inf`, up to an overall constant. `None` if it is not in the family.
pub fn family_params_of(q: &QuadDiff, lambda: &GaussRat) -> Option<(StrebelParams, GaussRat)> {
    let num = q.r().num();
    if num.degree() != Some(4) || q.r().den() != &super::family_denominator(lambda) {
        return None;
    }
    let scale = num.lead();
    let monic = num.monic();
    let two = GaussRat::from_int(2);
    let mu = &monic.coeff(3) + &(&two * &(lambda + &GaussRat::one()));
    if monic != super::family_numerator(lambda, &mu) {
        return None;
    }
    Some((StrebelParams::new(lambda.clone(), mu).ok()?, scale))
}

/// `m(z) = (z - p1)(p2 - p3) / ((z - p3)(p2 - p1))` at `z = p4`; `None` encodes infinity.
pub fn cross_ratio_numeric(p: [&BigComplex; 3], z: Option<&BigComplex>) -> Option<BigComplex> {
    let (p1, p2, p3) = (p[0], p[1], p[2]);
    let k = &(p2 - p3) / &(p2 - p1);
    match z {
        None => Some(k),
        Some(z) => {
            let den = z - p3;
            den.inv().map(|inv| &(&(z - p1) * &k) * &inv)
        }
    }
}

/// Numeric normalisation of a four-pole differential with residues all equal.
#[derive(Clone, Debug)]
pub struct NumericNormalization {
    pub lambda: BigComplex,
    pub mu: BigComplex,
    pub zeros: Vec<BigComplex>,
    /// `|prod w_k - lambda^2|`: must vanish for a family member.
    pub product_defect: f64,
}

/// Normalises numerically given poles (finite) and all four zeros counted with
/// multiplicity (`None` for a zero at infinity).
///
/// `mu = 2(lambda + 1) - sum w_k` where `w_k` are the transported zeros.
pub fn normalize_poles_numeric(poles: [&BigComplex; 4], zeros: &[Option<BigComplex>]) -> Result<NumericNormalization> {
    let lambda = cross_ratio_numeric([poles[0], poles[1], poles[2]], Some(poles[3])).ok_or(Error::CoincidentPoles)?;
    if zeros.len() != 4 {
        return Err(Error::Domain(format!("expected four zeros, got {}", zeros.len())));
    }
    let w: Vec<BigComplex> = zeros
        .iter()
        .map(|z| cross_ratio_numeric([poles[0], poles[1], poles[2]], z.as_ref()).ok_or(Error::CoincidentPoles))
        .collect::<Result<_>>()?;
    let prec = lambda.prec();
    let two = BigComplex::from_f64(2.0, 0.0, prec);
    let sum = w.iter().fold(BigComplex::zero(prec), |a, b| &a + b);
    let mu = &(&two * &(&lambda + &BigComplex::one(prec))) - &sum;
    let prod = w.iter().fold(BigComplex::one(prec), |a, b| &a * b);
    let product_defect = (&prod - &(&lambda * &lambda)).abs_f64();
    Ok(NumericNormalization { lambda, mu, zeros: w, product_defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdiff::{family, residue_at};

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    #[test]
    fn three_point_map() {
        let pts = [Point::Finite(GaussRat::i()), Point::int(2), Point::int(-3)];
        let m = MobiusMap::to_zero_one_infinity(&pts[0], &pts[1], &pts[2]).unwrap();
        assert_eq!(m.apply(&pts[0]), Point::int(0));
        assert_eq!(m.apply(&pts[1]), Point::int(1));
        assert_eq!(m.apply(&pts[2]), Point::Infinity);
        assert_eq!(m.compose(&m.inverse()).apply(&Point::int(5)), Point::int(5));
        assert_eq!(
            MobiusMap::to_zero_one_infinity(&pts[0], &pts[0], &pts[1]),
            Err(Error::CoincidentPoles)
        );
    }

    #[test]
    fn identity_is_neutral() {
        let q = family(&StrebelParams::new(g(3), g(1)).unwrap()).unwrap();
        assert_eq!(MobiusMap::identity().apply_to(&q).r(), q.r());
    }

    #[test]
    fn residues_survive_coordinate_change() {
        let q = family(&StrebelParams::new(GaussRat::from_parts((1, 3), (1, 1)), g(2)).unwrap()).unwrap();
        let m = MobiusMap::new(g(2), GaussRat::i(), g(1), g(3)).unwrap();
        let moved = m.apply_to(&q);
        let inv = m.inverse();
        for p in q.poles() {
            let r0 = residue_at(&q, p).unwrap();
            let r1 = residue_at(&moved, &inv.apply(p)).unwrap();
            assert_eq!(r0, r1, "pole {p}");
        }
    }

    #[test]
    fn normalisation_round_trip() {
        let l = GaussRat::from_parts((2, 1), (1, 1));
        let mu = GaussRat::from_parts((1, 2), (-1, 1));
        let q = family(&StrebelParams::new(l.clone(), mu.clone()).unwrap()).unwrap();
        // reorder so that the fourth pole is 1: lambda becomes 1/lambda... verify via family_params_of
        let poles = [Point::int(0), Point::Finite(l.clone()), Point::Infinity, Point::int(1)];
        let (_, moved, lam) = normalize_poles(&q, &poles).unwrap();
        assert_eq!(lam, l.inv().unwrap());
        let (params, _) = family_params_of(&moved, &lam).unwrap();
        assert_eq!(params.lambda, lam);
        // mu(1/lambda) = mu / lambda
        assert_eq!(params.mu, &mu / &l);
    }
}
