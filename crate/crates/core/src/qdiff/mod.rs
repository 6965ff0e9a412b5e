//! Quadratic differentials `q = -(1/4 pi^2) R(z) dz^2` on the sphere.
//!
//! Only `R` is stored; the constant prefactor is a fixed convention so every
//! exact identity lives in `Q(i)`.

mod divisor;
mod mobius;
mod residue;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::Rational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactnum::{roots_exact, ExactPoly, ExactRatFunc, GaussRat, Scalar};
use crate::error::{Error, Result};

pub use divisor::{divisor_of, divisor_from_data, Divisor, DivisorEntry, Location};
pub use mobius::{
    cross_ratio_numeric, family_params_of, normalize_poles, normalize_poles_numeric, MobiusMap,
    NumericNormalization,
};
pub use residue::{residue_at, residue_on_factor, Residue};

/// A point of the Riemann sphere with exact finite coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Point {
    Finite(GaussRat),
    Infinity,
}

impl Point {
    pub fn finite(g: GaussRat) -> Self {
        Point::Finite(g)
    }

    pub fn int(n: i64) -> Self {
        Point::Finite(GaussRat::from_int(n))
    }

    pub fn as_finite(&self) -> Option<&GaussRat> {
        match self {
            Point::Finite(g) => Some(g),
            Point::Infinity => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(g) => write!(f, "{g}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Point {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Point::Infinity),
            t => Ok(Point::Finite(t.parse()?)),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The two parameters of the four-pole family.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StrebelParams {
    pub lambda: GaussRat,
    pub mu: GaussRat,
}

impl StrebelParams {
    pub fn new(lambda: GaussRat, mu: GaussRat) -> Result<Self> {
        if lambda.is_zero() || lambda.is_one() {
            return Err(Error::DegenerateLambda);
        }
        Ok(StrebelParams { lambda, mu })
    }
}

/// A quadratic differential `-(1/4 pi^2) R dz^2`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuadDiff {
    #[serde(rename = "R")]
    r: ExactRatFunc,
    poles: Vec<Point>,
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    params: Option<StrebelParams>,
}

impl QuadDiff {
    pub fn new(r: ExactRatFunc, poles: Vec<Point>) -> Self {
        QuadDiff { r, poles, params: None }
    }

    pub fn r(&self) -> &ExactRatFunc {
        &self.r
    }

    /// The marked double poles, in their chosen order.
    pub fn poles(&self) -> &[Point] {
        &self.poles
    }

    pub fn params(&self) -> Option<&StrebelParams> {
        self.params.as_ref()
    }

    pub fn with_poles(mut self, poles: Vec<Point>) -> Self {
        self.poles = poles;
        self
    }

    /// `c * q`; residues scale by `sqrt(c)`.
    pub fn scale(&self, c: &GaussRat) -> Self {
        QuadDiff { r: self.r.scale(c), poles: self.poles.clone(), params: None }
    }

    /// Order of `q` at infinity: `deg den - deg num - 4`.
    pub fn order_at_infinity(&self) -> i64 {
        self.r.order_at_infinity() - 4
    }

    /// Order of `q` at a point (negative for poles).
    pub fn order_at(&self, p: &Point) -> i64 {
        match p {
            Point::Infinity => self.order_at_infinity(),
            Point::Finite(z) => self.r.num().order_at(z) as i64 - self.r.den().order_at(z) as i64,
        }
    }

    /// Squarefree factors of the denominator carrying double poles.
    pub fn double_pole_factors(&self) -> Vec<ExactPoly> {
        self.r
            .den()
            .squarefree_decomposition()
            .into_iter()
            .filter(|(_, k)| *k == 2)
            .map(|(s, _)| s)
            .collect()
    }

    /// Zero multiplicities at finite points, from the numerator.
    pub fn finite_zero_multiplicities(&self) -> Vec<usize> {
        self.r.num().root_multiplicities()
    }
}

/// `z^4 + (mu-2(l+1)) z^3 + (2(l^2+l+1) - mu(l+1)) z^2 + (l mu - 2l(l+1)) z + l^2`.
pub fn family_numerator(lambda: &GaussRat, mu: &GaussRat) -> ExactPoly {
    let one = GaussRat::one();
    let two = GaussRat::from_int(2);
    let l1 = lambda + &one;
    let c3 = mu - &(&two * &l1);
    let c2 = &(&two * &(&(lambda * lambda) + &l1)) - &(mu * &l1);
    let c1 = &(lambda * mu) - &(&(&two * lambda) * &l1);
    let c0 = lambda * lambda;
    ExactPoly::new(vec![c0, c1, c2, c3, one])
}

/// `z^2 (z-1)^2 (z-l)^2`.
pub fn family_denominator(lambda: &GaussRat) -> ExactPoly {
    let z = ExactPoly::x();
    let zm1 = ExactPoly::linear_root(&GaussRat::one());
    let zml = ExactPoly::linear_root(lambda);
    (&(&z * &zm1) * &zml).pow(2)
}

/// The differential with double poles at `0, 1, lambda, inf`, residue 1 at each.
pub fn family(params: &StrebelParams) -> Result<QuadDiff> {
    let StrebelParams { lambda, mu } = params;
    if lambda.is_zero() || lambda.is_one() {
        return Err(Error::DegenerateLambda);
    }
    let r = ExactRatFunc::new(family_numerator(lambda, mu), family_denominator(lambda))?;
    Ok(QuadDiff {
        r,
        poles: vec![Point::int(0), Point::int(1), Point::Finite(lambda.clone()), Point::Infinity],
        params: Some(params.clone()),
    })
}

/// The same family assembled from its partial-fraction form, as an independent check.
pub fn family_from_partial_fractions(lambda: &GaussRat, mu: &GaussRat) -> Result<ExactRatFunc> {
    let z = ExactRatFunc::x();
    let c = |g: &GaussRat| ExactRatFunc::constant(g.clone());
    let zm1 = &z - &c(&GaussRat::one());
    let zml = &z - &c(lambda);
    let inv2 = |f: &ExactRatFunc| f.pow(2).inv();
    let tail = &(&c(mu) - &z.scale(&GaussRat::from_int(2))) / &(&(&z * &zm1) * &zml);
    Ok(&(&(&inv2(&z)? + &inv2(&zm1)?) + &inv2(&zml)?) + &tail)
}

/// Zero partition of a four-pole differential.
#[derive(Clone, Debug, PartialEq)]
pub enum ZeroClass {
    DoubleDouble([Scalar; 2]),
    FourSimple([Scalar; 4]),
    /// Any other multiplicity pattern; never produced by the residue-(1,1,1,1) family.
    Other(Vec<(Scalar, usize)>),
}

impl ZeroClass {
    pub fn tag(&self) -> &'static str {
        match self {
            ZeroClass::DoubleDouble(_) => "2+2",
            ZeroClass::FourSimple(_) => "1+1+1+1",
            ZeroClass::Other(_) => "other",
        }
    }

    pub fn zeros(&self) -> Vec<(Scalar, usize)> {
        match self {
            ZeroClass::DoubleDouble(z) => z.iter().map(|x| (x.clone(), 2)).collect(),
            ZeroClass::FourSimple(z) => z.iter().map(|x| (x.clone(), 1)).collect(),
            ZeroClass::Other(v) => v.clone(),
        }
    }
}

/// Roots of a squarefree factor: exact when linear, or quadratic with a square
/// discriminant in `Q(i)`; numeric otherwise.
fn factor_roots(s: &ExactPoly, prec: u32) -> Result<Vec<Scalar>> {
    let s = s.monic();
    match s.degree() {
        Some(1) => return Ok(vec![Scalar::Exact(-s.coeff(0))]),
        Some(2) => {
            let (b, c) = (s.coeff(1), s.coeff(0));
            let disc = &(&b * &b) - &(&GaussRat::from_int(4) * &c);
            if let Some(sq) = disc.sqrt() {
                let half = GaussRat::from_frac(1, 2);
                let r1 = &(&(-&b) + &sq) * &half;
                let r2 = &(&(-&b) - &sq) * &half;
                return Ok(vec![Scalar::Exact(r1), Scalar::Exact(r2)]);
            }
        }
        _ => {}
    }
    Ok(roots_exact(&s, prec)?.into_iter().map(Scalar::Numeric).collect())
}

/// Zero partition of the differential's finite zeros (the family has none at infinity).
pub fn classify_zeros(q: &QuadDiff) -> Result<ZeroClass> {
    classify_numerator(q.r().num(), crate::exactnum::DEFAULT_PRECISION)
}

pub fn classify_numerator(num: &ExactPoly, prec: u32) -> Result<ZeroClass> {
    let mut zeros = Vec::new();
    for (s, k) in num.squarefree_decomposition() {
        for z in factor_roots(&s, prec)? {
            zeros.push((z, k));
        }
    }
    let mults: Vec<usize> = zeros.iter().map(|(_, k)| *k).collect();
    Ok(match mults.as_slice() {
        [2, 2] => {
            let mut it = zeros.into_iter().map(|(z, _)| z);
            ZeroClass::DoubleDouble([it.next().unwrap(), it.next().unwrap()])
        }
        [1, 1, 1, 1] => {
            let v: Vec<Scalar> = zeros.into_iter().map(|(z, _)| z).collect();
            ZeroClass::FourSimple(v.try_into().expect("four zeros"))
        }
        _ => ZeroClass::Other(zeros),
    })
}

/// `l^2 (l-1)^2 (mu-2+2l)^2 (mu-2-2l)^2 (mu+2-2l)^2`.
pub fn discriminant_closed_form(lambda: &GaussRat, mu: &GaussRat) -> GaussRat {
    let two = GaussRat::from_int(2);
    let one = GaussRat::one();
    let tl = &two * lambda;
    let factors = [
        lambda.clone(),
        lambda - &one,
        &(mu - &two) + &tl,
        &(mu - &two) - &tl,
        &(mu + &two) - &tl,
    ];
    factors.iter().fold(GaussRat::one(), |acc, f| &acc * &(f * f))
}

/// Grid abscissae for the discriminant check: 21 values of `lambda` avoiding
/// 0 and 1, and 21 of `mu`. The identity has degree at most 12 in `lambda`
/// and 6 in `mu`, so agreement on this grid proves it.
pub fn discriminant_grid() -> Vec<(GaussRat, GaussRat)> {
    let lambdas: Vec<i64> = (-5..=-1).chain(2..=17).collect();
    let mus: Vec<i64> = (-10..=10).collect();
    lambdas
        .iter()
        .flat_map(|&l| mus.iter().map(move |&m| (GaussRat::from_int(l), GaussRat::from_int(m))))
        .collect()
}

/// Outcome of the grid verification.
#[derive(Clone, Debug)]
pub struct GridReport {
    pub points: usize,
    pub mismatches: Vec<(GaussRat, GaussRat)>,
    /// Grid points where the discriminant vanishes and the numerator has a double zero pair.
    pub double_zero_points: usize,
    /// Points where `classify_zeros` disagrees with the vanishing of the discriminant.
    pub classification_mismatches: usize,
}

pub fn discriminant_identity_report() -> GridReport {
    let grid = discriminant_grid();
    let results: Vec<_> = grid
        .par_iter()
        .map(|(l, m)| {
            let num = family_numerator(l, m);
            let lhs = num.discriminant().expect("quartic");
            let rhs = discriminant_closed_form(l, m);
            let class = classify_numerator(&num, 64).map(|c| c.tag());
            let vanishing = lhs.is_zero();
            let agree = match class {
                Ok("2+2") => vanishing,
                Ok("1+1+1+1") => !vanishing,
                _ => false,
            };
            (l.clone(), m.clone(), lhs == rhs, vanishing, agree)
        })
        .collect();
    GridReport {
        points: results.len(),
        mismatches: results.iter().filter(|r| !r.2).map(|r| (r.0.clone(), r.1.clone())).collect(),
        double_zero_points: results.iter().filter(|r| r.3).count(),
        classification_mismatches: results.iter().filter(|r| !r.4).count(),
    }
}

/// True iff the discriminant identity holds at every grid point.
pub fn discriminant_identity_check() -> bool {
    discriminant_identity_report().mismatches.is_empty()
}

/// The value of `mu` giving two double zeros for real `lambda`.
pub fn mu_double_zero(lambda: &Rational) -> Result<Rational> {
    if lambda.cmp0().is_eq() || *lambda == 1 {
        return Err(Error::DegenerateLambda);
    }
    let two = Rational::from(2);
    Ok(if lambda.cmp0().is_lt() {
        Rational::from(lambda * &two) + 2u32
    } else if *lambda < 1 {
        two - Rational::from(lambda * 2u32)
    } else {
        Rational::from(lambda * &two) - 2u32
    })
}

/// Exact variant taking a Gaussian rational, which must be real.
pub fn mu_double_zero_gauss(lambda: &GaussRat) -> Result<GaussRat> {
    if !lambda.is_real() {
        return Err(Error::Domain(format!("lambda = {lambda} is not real")));
    }
    Ok(GaussRat::from_rational(mu_double_zero(lambda.re())?))
}

/// Floating-point variant for real `lambda`.
pub fn mu_double_zero_f64(lambda: f64) -> Result<f64> {
    if !lambda.is_finite() {
        return Err(Error::Domain("lambda is not finite".into()));
    }
    if lambda == 0.0 || lambda == 1.0 {
        return Err(Error::DegenerateLambda);
    }
    Ok(if lambda < 0.0 {
        2.0 * lambda + 2.0
    } else if lambda < 1.0 {
        2.0 - 2.0 * lambda
    } else {
        2.0 * lambda - 2.0
    })
}

/// `(f^* q)`: `R_new = (R o f) (f')^2`.
pub fn pullback(f: &ExactRatFunc, q: &QuadDiff) -> QuadDiff {
    let fp = f.derivative();
    let r = &q.r.compose(f) * &fp.pow(2);
    QuadDiff { r, poles: Vec::new(), params: None }
}

/// The building block `R = 1/(z(z-1))`, i.e. `q = dz^2 / (4 pi^2 z (1-z))`.
pub fn q0_prime() -> QuadDiff {
    let den = &ExactPoly::x() * &ExactPoly::linear_root(&GaussRat::one());
    QuadDiff::new(ExactRatFunc::new(ExactPoly::one(), den).expect("nonzero"), vec![Point::Infinity])
}

/// `R = 1/(z(z-1)^2)`: simple poles at 0 and infinity, double pole at 1.
pub fn q0() -> QuadDiff {
    let den = &ExactPoly::x() * &ExactPoly::linear_root(&GaussRat::one()).pow(2);
    QuadDiff::new(ExactRatFunc::new(ExactPoly::one(), den).expect("nonzero"), vec![Point::int(1)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn q(l: GaussRat, m: GaussRat) -> QuadDiff {
        family(&StrebelParams::new(l, m).unwrap()).unwrap()
    }

    #[test]
    fn numerator_matches_partial_fractions() {
        for (l, m) in [(g(2), g(6)), (GaussRat::from_parts((1, 2), (3, 1)), g(-1)), (g(-3), GaussRat::i())] {
            let expanded = ExactRatFunc::new(family_numerator(&l, &m), family_denominator(&l)).unwrap();
            assert_eq!(expanded, family_from_partial_fractions(&l, &m).unwrap());
        }
    }

    #[test]
    fn double_zero_instances() {
        let d = q(g(2), g(6));
        assert_eq!(d.r().num(), &ExactPoly::from_ints(&[-2, 0, 1]).pow(2));
        match classify_zeros(&d).unwrap() {
            ZeroClass::DoubleDouble([a, b]) => {
                let s = 2f64.sqrt();
                let (x, y) = (a.to_complex64().re, b.to_complex64().re);
                assert!(((x - s).abs() < 1e-30 && (y + s).abs() < 1e-30) || ((x + s).abs() < 1e-30 && (y - s).abs() < 1e-30));
            }
            other => panic!("{other:?}"),
        }
        let half = GaussRat::from_frac(1, 2);
        let h = q(half.clone(), g(1));
        let expected = ExactPoly::new(vec![half.clone(), g(-1), g(1)]).pow(2);
        assert_eq!(h.r().num(), &expected);
        let zs = classify_zeros(&h).unwrap();
        let ZeroClass::DoubleDouble([Scalar::Exact(a), Scalar::Exact(b)]) = zs else { panic!("{zs:?}") };
        let (p, m) = (GaussRat::from_parts((1, 2), (1, 2)), GaussRat::from_parts((1, 2), (-1, 2)));
        assert!((a == p && b == m) || (a == m && b == p));
    }

    #[test]
    fn four_simple_zero_instance() {
        let f = q(g(2), g(0));
        assert_eq!(f.r().num().discriminant().unwrap(), g(2304));
        assert!(matches!(classify_zeros(&f).unwrap(), ZeroClass::FourSimple(_)));
    }

    #[test]
    fn degenerate_lambda() {
        assert_eq!(StrebelParams::new(g(1), g(0)), Err(Error::DegenerateLambda));
        assert!(mu_double_zero(&Rational::from(0)).is_err());
        assert!(mu_double_zero_gauss(&GaussRat::i()).is_err());
    }

    #[test]
    fn closed_form_discriminant_points() {
        assert_eq!(discriminant_closed_form(&g(2), &g(3)), g(900));
        assert_eq!(family_numerator(&g(2), &g(3)).discriminant().unwrap(), g(900));
        assert!(discriminant_closed_form(&g(-1), &g(0)).is_zero());
    }

    #[test]
    fn mu_piecewise() {
        assert_eq!(mu_double_zero(&Rational::from((1, 2))).unwrap(), 1);
        assert_eq!(mu_double_zero(&Rational::from((4, 5))).unwrap(), Rational::from((2, 5)));
        assert_eq!(mu_double_zero(&Rational::from(-1)).unwrap(), 0);
        assert_eq!(mu_double_zero(&Rational::from(3)).unwrap(), 4);
    }

    #[test]
    fn mu_symmetries() {
        for (n, d) in [(-7, 3), (-1, 2), (1, 5), (2, 3), (3, 4), (5, 2), (9, 1), (-4, 1)] {
            let l = Rational::from((n, d));
            let one_minus = Rational::from(1 - &l);
            let inv = Rational::from(l.recip_ref());
            let m = mu_double_zero(&l).unwrap();
            assert_eq!(mu_double_zero(&one_minus).unwrap(), Rational::from(2 - &m));
            assert_eq!(mu_double_zero(&inv).unwrap(), Rational::from(&m / &l));
        }
    }

    #[test]
    fn json_schema_round_trip() {
        let d = q(GaussRat::from_parts((1, 2), (3, 4)), g(2));
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"lambda\"") && s.contains("\"R\"") && s.contains("\"poles\""));
        assert_eq!(serde_json::from_str::<QuadDiff>(&s).unwrap(), d);
    }

    #[test]
    fn pullback_identity() {
        assert_eq!(pullback(&ExactRatFunc::x(), &q0()).r(), q0().r());
    }

    #[test]
    fn q0_is_pullback_of_q0_prime() {
        let phi = ExactRatFunc::new(ExactPoly::x(), ExactPoly::linear_root(&GaussRat::one())).unwrap();
        assert_eq!(pullback(&phi, &q0_prime()).r(), q0().r());
    }

    #[test]
    fn pullback_functorial() {
        let sq = ExactRatFunc::from_poly(ExactPoly::monomial(GaussRat::one(), 2));
        let once = pullback(&sq, &pullback(&sq, &q0()));
        let composed = pullback(&sq.compose(&sq), &q0());
        assert_eq!(once.r(), composed.r());
    }

    #[test]
    fn orders_follow_ramification() {
        // x^4 over the double pole at 1: unramified, so order stays -2
        let f = ExactRatFunc::from_poly(ExactPoly::monomial(GaussRat::one(), 4));
        let p = pullback(&f, &q0());
        assert_eq!(p.order_at(&Point::Finite(GaussRat::i())), -2);
        // over the simple pole at 0 with e = 4: (-1 + 2) * 4 - 2 = 2
        assert_eq!(p.order_at(&Point::int(0)), 2);
        assert_eq!(p.order_at_infinity(), 2);
    }
}
