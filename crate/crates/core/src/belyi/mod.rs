//! Rational maps of the sphere as branched covers: ramification passports,
//! the Belyi test, a catalog of explicit maps, even decompositions
//! `f = g(x^2)` and the minimal degree of a Belyi map for a cone-angle triple.

mod example43;

use std::fmt;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    roots_clustered, BigComplex, ExactPoly, ExactRatFunc, GaussRat, NumPoly, NumRatFunc, Scalar,
};
use crate::qdiff::{cross_ratio_numeric, q0, q0_prime, QuadDiff};

pub use example43::{example43_solve, example43_polynomial, Example43Root, LambdaMu, EXAMPLE43_PRECISION};

/// A nonconstant rational map, exact over `Q(i)` or with multiprecision coefficients.
#[derive(Clone, Debug)]
pub enum RationalMap {
    Exact(ExactRatFunc),
    Numeric(NumRatFunc),
}

impl RationalMap {
    pub fn exact(f: ExactRatFunc) -> Result<Self> {
        if f.num().deg0() == 0 && f.den().deg0() == 0 {
            return Err(Error::Domain("constant map".into()));
        }
        Ok(RationalMap::Exact(f))
    }

    pub fn degree(&self) -> usize {
        match self {
            RationalMap::Exact(f) => f.degree(),
            RationalMap::Numeric(f) => f.degree(),
        }
    }

    pub fn as_exact(&self) -> Option<&ExactRatFunc> {
        match self {
            RationalMap::Exact(f) => Some(f),
            RationalMap::Numeric(_) => None,
        }
    }

    pub fn to_numeric(&self, prec: u32) -> NumRatFunc {
        match self {
            RationalMap::Exact(f) => NumRatFunc::from_exact(f, prec),
            RationalMap::Numeric(f) => f.clone(),
        }
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalMap::Exact(g) => write!(f, "{g}"),
            RationalMap::Numeric(g) => write!(f, "<numeric map of degree {}>", g.degree()),
        }
    }
}

/// Local degrees of all preimages of `0`, `1` and `inf`, each sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Passport {
    pub over0: Vec<usize>,
    pub over1: Vec<usize>,
    pub over_inf: Vec<usize>,
}

impl Passport {
    pub fn new(mut over0: Vec<usize>, mut over1: Vec<usize>, mut over_inf: Vec<usize>) -> Self {
        over0.sort_unstable();
        over1.sort_unstable();
        over_inf.sort_unstable();
        Passport { over0, over1, over_inf }
    }

    /// `sum (e - 1)` over the three fibres.
    pub fn ramification(&self) -> usize {
        [&self.over0, &self.over1, &self.over_inf].iter().flat_map(|v| v.iter()).map(|e| e - 1).sum()
    }
}

impl fmt::Display for Passport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({})/({})/({})", part(&self.over0), part(&self.over1), part(&self.over_inf))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PassportReport {
    pub degree: usize,
    pub passport: Passport,
    /// Ramification `sum (e - 1)` at critical points outside the three fibres.
    pub ramification_elsewhere: usize,
    pub is_belyi: bool,
}

/// Multiplicity of `x = inf` in the fibre over `0`, `1` or `inf` given the
/// exact degrees of the numerator and denominator of `f - v`.
fn infinity_share(deg_num: usize, deg_den: usize, degree: usize, fiber_is_inf: bool) -> usize {
    if fiber_is_inf {
        deg_num.saturating_sub(deg_den)
    } else if deg_den > deg_num {
        // f(inf) = v exactly when the shifted numerator drops below the denominator
        degree - deg_num
    } else {
        0
    }
}

fn exact_passport(f: &ExactRatFunc) -> Passport {
    let d = f.degree();
    let (num, den) = (f.num(), f.den());
    let shifted = num - den;
    let fibre = |p: &ExactPoly, q_deg: usize, at_inf: bool| {
        let mut v = if p.is_zero() { Vec::new() } else { p.root_multiplicities() };
        let share = if at_inf {
            infinity_share(num.deg0(), den.deg0(), d, true)
        } else {
            infinity_share(p.deg0(), q_deg, d, false)
        };
        if share > 0 {
            v.push(share);
        }
        v
    };
    Passport::new(fibre(num, den.deg0(), false), fibre(&shifted, den.deg0(), false), fibre(den, 0, true))
}

const NUMERIC_PASSPORT_MIN_PRECISION: u32 = 128;

fn numeric_passport(f: &NumRatFunc, prec: u32) -> Result<Passport> {
    let prec = prec.max(NUMERIC_PASSPORT_MIN_PRECISION);
    let tol = 2f64.powi(-(prec as i32) / 6);
    let d = f.degree();
    let fibre = |p: &NumPoly| -> Result<Vec<usize>> {
        let roots = roots_clustered(p, prec, tol)?;
        let mut v: Vec<usize> = roots.iter().map(|(_, k)| *k).collect();
        let finite: usize = v.iter().sum();
        if finite < d {
            v.push(d - finite);
        }
        Ok(v)
    };
    let minus_one = BigComplex::from_f64(-1.0, 0.0, prec);
    let shifted = f.num.add(&f.den.scale(&minus_one));
    Ok(Passport::new(fibre(&f.num)?, fibre(&shifted)?, fibre(&f.den)?))
}

/// Passport of `f` and whether it is a Belyi map.
///
/// Exact maps use squarefree decompositions of the numerator, the denominator
/// and `num - den`. Numeric maps cluster roots at `prec` bits (at least 128).
pub fn passport(f: &RationalMap, prec: u32) -> Result<PassportReport> {
    let degree = f.degree();
    if degree == 0 {
        return Err(Error::Domain("constant map".into()));
    }
    let passport = match f {
        RationalMap::Exact(g) => exact_passport(g),
        RationalMap::Numeric(g) => numeric_passport(g, prec)?,
    };
    for v in [&passport.over0, &passport.over1, &passport.over_inf] {
        let s: usize = v.iter().sum();
        if s != degree {
            return Err(Error::Verification(format!("fibre {v:?} does not sum to degree {degree}")));
        }
    }
    let total = 2 * degree - 2;
    let ramification_elsewhere = total
        .checked_sub(passport.ramification())
        .ok_or_else(|| Error::Verification(format!("ramification exceeds 2d - 2 = {total}")))?;
    Ok(PassportReport { degree, passport, ramification_elsewhere, is_belyi: ramification_elsewhere == 0 })
}

/// Names accepted by [`catalog`].
pub const CATALOG_MAPS: &[&str] = &["case1", "case1-coordinate", "phi", "deg8", "deg12theta"];

/// Names accepted by [`catalog_differential`].
pub const CATALOG_DIFFERENTIALS: &[&str] = &["q0", "q0p"];

fn g(n: i64) -> GaussRat {
    GaussRat::from_int(n)
}

fn poly(c: &[i64]) -> ExactPoly {
    ExactPoly::from_ints(c)
}

/// `x^4`.
pub fn quartic_map() -> ExactRatFunc {
    ExactRatFunc::from_poly(ExactPoly::monomial(GaussRat::one(), 4))
}

/// `z / (z - 1)`, which carries `q0'` to `q0`.
pub fn phi_map() -> ExactRatFunc {
    ExactRatFunc::new(poly(&[0, 1]), poly(&[-1, 1])).expect("nonzero denominator")
}

/// `(1 - (1 - i) x) / (-1 + (1 + i) x)`: moves the poles of the quartic
/// pullback `1, i, -1, -i` to `0, 1, 1/2, inf`.
pub fn case1_coordinate_map() -> ExactRatFunc {
    let i = GaussRat::i();
    let num = ExactPoly::new(vec![g(1), -&(&g(1) - &i)]);
    let den = ExactPoly::new(vec![g(-1), &g(1) + &i]);
    ExactRatFunc::new(num, den).expect("nonzero denominator")
}

/// `-(x - 1)^2 (9x^2 + 14x + 9)^3 / (2^12 x^3 (x + 1)^2)`.
pub fn deg8_map() -> ExactRatFunc {
    let num = (&poly(&[-1, 1]).pow(2) * &poly(&[9, 14, 9]).pow(3)).scale(&GaussRat::from_int(-1));
    let den = (&ExactPoly::monomial(GaussRat::one(), 3) * &poly(&[1, 1]).pow(2)).scale(&GaussRat::from_int(4096));
    ExactRatFunc::new(num, den).expect("nonzero denominator")
}

/// `S = -64 x^3 (x^3 - 1)^3 / (8x^3 + 1)^3`.
pub fn theta_quotient() -> ExactRatFunc {
    let num = (&ExactPoly::monomial(GaussRat::one(), 3) * &poly(&[-1, 0, 0, 1]).pow(3)).scale(&g(-64));
    ExactRatFunc::new(num, poly(&[1, 0, 0, 8]).pow(3)).expect("nonzero denominator")
}

/// The degree-12 map with `f / (f - 1) = S`, i.e. `f = S / (S - 1)`.
///
/// `S = inf` (the triple points of `8x^3 + 1`) is then the fibre over `1`
/// and `1 - S = (8x^6 + 20x^3 - 1)^2 / (8x^3 + 1)^3` gives six double points over `inf`.
/// Solving `f / (1 + f) = S` instead yields `-f`, which is ramified over `-1`.
pub fn deg12_theta_map() -> ExactRatFunc {
    let s = theta_quotient();
    &s / &(&s - &ExactRatFunc::one())
}

pub fn catalog(name: &str) -> Result<RationalMap> {
    let f = match name {
        "case1" => quartic_map(),
        "case1-coordinate" => case1_coordinate_map(),
        "phi" => phi_map(),
        "deg8" => deg8_map(),
        "deg12theta" => deg12_theta_map(),
        _ => return Err(Error::UnknownMap(name.to_string())),
    };
    RationalMap::exact(f)
}

pub fn catalog_differential(name: &str) -> Result<QuadDiff> {
    match name {
        "q0" => Ok(q0()),
        "q0p" => Ok(q0_prime()),
        _ => Err(Error::UnknownMap(name.to_string())),
    }
}

/// The square-curve map `x^2 (x - 1)^2 / c^2` with its normalised `(lambda, mu)`.
#[derive(Clone, Debug)]
pub struct Case2 {
    pub map: RationalMap,
    /// Principal `sqrt(1 - 16 c^2)`.
    pub root: Scalar,
    pub lambda: Scalar,
    pub mu: Scalar,
}

fn principal_sqrt(z: &GaussRat) -> Option<GaussRat> {
    z.sqrt().map(|w| if w.re().cmp0().is_lt() || (w.re().cmp0().is_eq() && w.im().cmp0().is_lt()) { -&w } else { w })
}

/// `lambda = (1 + r) / (2 r)` with `r = sqrt(1 - 16 c^2)` and `mu = 2 - 2 lambda`.
///
/// Stays exact when `c` is exact and `1 - 16 c^2` is a square in `Q(i)`.
pub fn case2(c: &Scalar, prec: u32) -> Result<Case2> {
    match c {
        Scalar::Exact(c) => {
            if c.is_zero() {
                return Err(Error::Domain("c must be nonzero".into()));
            }
            let c2 = c * c;
            let disc = &g(1) - &(&g(16) * &c2);
            if disc.is_zero() {
                return Err(Error::DegenerateLambda);
            }
            let num = poly(&[0, 0, 1, -2, 1]);
            let map = ExactRatFunc::new(num, ExactPoly::constant(c2)).expect("nonzero denominator");
            match principal_sqrt(&disc) {
                Some(r) => {
                    let lambda = &(&g(1) + &r) / &(&g(2) * &r);
                    let mu = &g(2) - &(&g(2) * &lambda);
                    Ok(Case2 {
                        map: RationalMap::exact(map)?,
                        root: Scalar::Exact(r),
                        lambda: Scalar::Exact(lambda),
                        mu: Scalar::Exact(mu),
                    })
                }
                None => {
                    let (r, lambda, mu) = case2_numeric_values(&BigComplex::from_gauss(c, prec))?;
                    Ok(Case2 {
                        map: RationalMap::exact(map)?,
                        root: Scalar::Numeric(r),
                        lambda: Scalar::Numeric(lambda),
                        mu: Scalar::Numeric(mu),
                    })
                }
            }
        }
        Scalar::Numeric(c) => {
            if c.is_zero() {
                return Err(Error::Domain("c must be nonzero".into()));
            }
            let p = c.prec();
            let c2 = c * c;
            let inv = c2.inv().ok_or(Error::DivisionByZero)?;
            let num = NumPoly::from_exact(&poly(&[0, 0, 1, -2, 1]), p).scale(&inv);
            let den = NumPoly::new(vec![BigComplex::one(p)]);
            let (r, lambda, mu) = case2_numeric_values(c)?;
            Ok(Case2 {
                map: RationalMap::Numeric(NumRatFunc { num, den }),
                root: Scalar::Numeric(r),
                lambda: Scalar::Numeric(lambda),
                mu: Scalar::Numeric(mu),
            })
        }
    }
}

fn case2_numeric_values(c: &BigComplex) -> Result<(BigComplex, BigComplex, BigComplex)> {
    let p = c.prec();
    let one = BigComplex::one(p);
    let two = BigComplex::from_f64(2.0, 0.0, p);
    let disc = &one - &(&BigComplex::from_f64(16.0, 0.0, p) * &(c * c));
    if disc.abs_f64() < 2f64.powi(-(p as i32) / 2) {
        return Err(Error::DegenerateLambda);
    }
    let r = disc.sqrt();
    let lambda = &(&one + &r) * &(&two * &r).inv().ok_or(Error::DegenerateLambda)?;
    let mu = &two - &(&two * &lambda);
    Ok((r, lambda, mu))
}

/// `c^2 = lambda (lambda - 1) / (4 (2 lambda - 1)^2)`, the inverse relation.
pub fn case2_c_squared(lambda: &GaussRat) -> Result<GaussRat> {
    let t = &(&g(2) * lambda) - &g(1);
    let den = &g(4) * &(&t * &t);
    (lambda * &(lambda - &g(1))).checked_div(&den).ok_or(Error::DegenerateLambda)
}

/// Poles of the case-2 pullback ordered so that they go to `0, 1, inf, lambda`,
/// and `lambda` recomputed from them as a cross-ratio.
pub fn case2_pole_lambda(c: &BigComplex) -> Result<BigComplex> {
    let p = c.prec();
    let one = BigComplex::one(p);
    let four = BigComplex::from_f64(4.0, 0.0, p);
    let half = BigComplex::from_f64(0.5, 0.0, p);
    let s = (&one + &(&four * c)).sqrt();
    let mut t = (&one - &(&four * c)).sqrt();
    let (r, _, _) = case2_numeric_values(c)?;
    // keep s t on the principal branch of sqrt(1 - 16 c^2)
    if (&s * &t).dist(&r) > (&s * &(-&t)).dist(&r) {
        t = -&t;
    }
    let p0 = &(&one + &s) * &half;
    let p1 = &(&one - &s) * &half;
    let pinf = &(&one + &t) * &half;
    let pl = &(&one - &t) * &half;
    cross_ratio_numeric([&p0, &p1, &pinf], Some(&pl)).ok_or(Error::CoincidentPoles)
}

/// `g(x^2)`.
pub fn compose_square(g: &RationalMap) -> RationalMap {
    match g {
        RationalMap::Exact(f) => RationalMap::Exact(f.compose_square()),
        RationalMap::Numeric(f) => {
            let p = f.num.prec();
            let sq = NumRatFunc {
                num: NumPoly::new(vec![BigComplex::zero(p), BigComplex::zero(p), BigComplex::one(p)]),
                den: NumPoly::new(vec![BigComplex::one(p)]),
            };
            RationalMap::Numeric(f.compose(&sq))
        }
    }
}

/// `g` with `f = g(x^2)`, when `f(x) = f(-x)` identically.
pub fn is_even(f: &ExactRatFunc) -> Option<ExactRatFunc> {
    let (ne, no) = f.num().even_odd_split();
    let (de, d_odd) = f.den().even_odd_split();
    // den is monic and coprime to num, so evenness forces both parts to be even
    if !no.is_zero() || !d_odd.is_zero() {
        return None;
    }
    ExactRatFunc::new(ne, de).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinDegreeResult {
    pub d: u64,
    pub min_degree: u64,
    pub parity_case: Parity,
}

/// Least degree of a Belyi map realising cone angles `2 pi (a, b, c)`:
/// `2d` for even `d` and `4d` for odd `d`, `d` the common denominator.
pub fn min_degree(a: &Rational, b: &Rational, c: &Rational) -> Result<MinDegreeResult> {
    if [a, b, c].iter().any(|x| x.cmp0().is_le()) {
        return Err(Error::Domain("a, b, c must be positive".into()));
    }
    let sum = Rational::from(a + b) + c;
    if sum != 1 {
        return Err(Error::Domain(format!("a + b + c = {sum}, expected 1")));
    }
    let d = Integer::from(a.denom().lcm_ref(b.denom())).lcm(c.denom());
    let scaled: Vec<Integer> = [a, b, c].iter().map(|x| Integer::from(x.numer() * Integer::from(&d / x.denom()))).collect();
    let common = Integer::from(scaled[0].gcd_ref(&scaled[1])).gcd(&scaled[2]);
    assert_eq!(common, 1, "gcd(da, db, dc) must be 1 when da + db + dc = d with d minimal");
    let d = d.to_u64().ok_or_else(|| Error::Domain("denominator too large".into()))?;
    let (min_degree, parity_case) = if d % 2 == 0 { (2 * d, Parity::Even) } else { (4 * d, Parity::Odd) };
    Ok(MinDegreeResult { d, min_degree, parity_case })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdiff::{pullback, residue_on_factor};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn report(name: &str) -> PassportReport {
        passport(&catalog(name).unwrap(), 128).unwrap()
    }

    #[test]
    fn quartic_passport() {
        let r = report("case1");
        assert_eq!(r.passport, Passport::new(vec![4], vec![1, 1, 1, 1], vec![4]));
        assert!(r.is_belyi);
    }

    #[test]
    fn deg8_passport_and_shift() {
        let r = report("deg8");
        assert_eq!(r.passport, Passport::new(vec![2, 3, 3], vec![2, 2, 2, 2], vec![2, 3, 3]));
        assert!(r.is_belyi);
        let f = deg8_map();
        let shifted = &f - &ExactRatFunc::one();
        let expect = ExactRatFunc::new(
            poly(&[27, 36, 2, 36, 27]).pow(2).scale(&g(-1)),
            (&ExactPoly::monomial(GaussRat::one(), 3) * &poly(&[1, 1]).pow(2)).scale(&g(4096)),
        )
        .unwrap();
        assert_eq!(shifted, expect);
    }

    #[test]
    fn deg8_pullback_and_residues() {
        let q = pullback(&deg8_map(), &q0());
        let expect_num = (&ExactPoly::x() * &poly(&[9, 14, 9])).scale(&g(-4096));
        let r = q.r();
        let den = poly(&[27, 36, 2, 36, 27]).pow(2);
        let expect = ExactRatFunc::new(expect_num, den).unwrap();
        assert_eq!(r, &expect);
        let s = poly(&[27, 36, 2, 36, 27]);
        assert_eq!(residue_on_factor(&q, &s).unwrap().exact(), Some(g(2)));
        let q1 = q.scale(&GaussRat::from_frac(1, 4));
        assert_eq!(residue_on_factor(&q1, &s).unwrap().exact(), Some(g(1)));
    }

    #[test]
    fn theta_passport() {
        let r = report("deg12theta");
        assert_eq!(r.passport, Passport::new(vec![3; 4], vec![3; 4], vec![2; 6]));
        assert!(r.is_belyi);
        assert_eq!(r.degree, 12);
        let s = theta_quotient();
        let one_minus = &ExactRatFunc::one() - &s;
        let sq = poly(&[-1, 0, 0, 20, 0, 0, 8]).pow(2);
        assert_eq!(one_minus, ExactRatFunc::new(sq, poly(&[1, 0, 0, 8]).pow(3)).unwrap());
        // the other sign convention: S / (1 - S) = -f is not ramified over 1
        let other = &s / &one_minus;
        assert_eq!(other, -&deg12_theta_map());
        let r = passport(&RationalMap::Exact(other.clone()), 128).unwrap();
        assert_eq!(r.passport.over1, vec![1; 12]);
        let flipped = passport(&RationalMap::Exact(-&other), 128).unwrap();
        assert_eq!(flipped.passport.over1, vec![3; 4]);
    }

    #[test]
    fn phi_carries_q0_prime() {
        assert_eq!(pullback(&phi_map(), &q0_prime()).r(), q0().r());
        assert!(report("phi").is_belyi);
        assert!(matches!(catalog("nope"), Err(Error::UnknownMap(_))));
    }

    #[test]
    fn case1_coordinates() {
        let q = pullback(&case1_coordinate_map(), &pullback(&quartic_map(), &q0()));
        let num = q.r().num().monic();
        let quarter = GaussRat::from_frac(1, 4);
        assert_eq!(num, ExactPoly::new(vec![quarter, g(-1), g(2), g(-2), g(1)]));
        assert_eq!(q.r().den().root_multiplicities(), vec![2, 2, 2]);
    }

    #[test]
    fn case2_exact_at_i_over_3() {
        let c = GaussRat::from_parts((0, 1), (1, 3));
        let r = case2(&Scalar::Exact(c.clone()), 128).unwrap();
        assert_eq!(r.root, Scalar::Exact(GaussRat::from_frac(5, 3)));
        assert_eq!(r.lambda, Scalar::Exact(GaussRat::from_frac(4, 5)));
        assert_eq!(r.mu, Scalar::Exact(GaussRat::from_frac(2, 5)));
        let q = pullback(r.map.as_exact().unwrap(), &q0());
        let c2 = &c * &c;
        let x2x = poly(&[0, -1, 1]);
        let expect = ExactRatFunc::new(
            poly(&[-1, 2]).pow(2).scale(&(&g(4) * &c2)),
            &(&x2x - &ExactPoly::constant(c.clone())).pow(2) * &(&x2x + &ExactPoly::constant(c.clone())).pow(2),
        )
        .unwrap();
        assert_eq!(q.r(), &expect);
        let lam = case2_pole_lambda(&BigComplex::from_gauss(&c, 128)).unwrap();
        assert!(lam.dist(&BigComplex::from_gauss(&GaussRat::from_frac(4, 5), 128)) < 1e-30);
    }

    #[test]
    fn case2_inverse_relation() {
        let c2 = case2_c_squared(&g(2)).unwrap();
        assert_eq!(c2, GaussRat::from_frac(1, 18));
        let disc = &g(1) - &(&g(16) * &c2);
        let r = principal_sqrt(&disc).unwrap();
        assert_eq!(r, GaussRat::from_frac(1, 3));
        assert_eq!(&(&g(1) + &r) / &(&g(2) * &r), g(2));
        assert!(matches!(case2(&Scalar::Exact(GaussRat::from_frac(1, 4)), 128), Err(Error::DegenerateLambda)));
    }

    #[test]
    fn case2_numeric_branch() {
        let c = BigComplex::from_f64(0.1, 0.2, 128);
        let r = case2(&Scalar::Numeric(c.clone()), 128).unwrap();
        let l = case2_pole_lambda(&c).unwrap();
        assert!(l.dist(&r.lambda.to_big(128)) < 1e-30);
        let mu = r.mu.to_complex64();
        assert!((mu - (2.0 - 2.0 * r.lambda.to_complex64())).norm() < 1e-14);
    }

    #[test]
    fn even_decomposition() {
        let h = RationalMap::Exact(ExactRatFunc::from_poly(poly(&[1, 1])));
        assert_eq!(compose_square(&h).as_exact().unwrap(), &ExactRatFunc::from_poly(poly(&[1, 0, 1])));
        assert_eq!(is_even(&quartic_map()), Some(ExactRatFunc::from_poly(poly(&[0, 0, 1]))));
        assert_eq!(is_even(&deg8_map()), None);
        let t = deg12_theta_map();
        assert!(is_even(&t).is_none());
    }

    /// Fibre over `v` of `g(x^2)` found by brute force: all preimages of
    /// `v` under `g`, then square roots, with multiplicities by clustering.
    fn brute_fibre(f: &ExactRatFunc, v: Option<i64>) -> Vec<usize> {
        let d = f.degree();
        let p = match v {
            None => f.den().clone(),
            Some(v) => f.num() - &f.den().scale(&g(v)),
        };
        let c: Vec<Complex64> = p.coeffs().iter().map(GaussRat::to_complex64).collect();
        let mut out = Vec::new();
        let mut count = 0;
        if p.deg0() > 0 {
            let roots = crate::exactnum::roots_f64(&c).unwrap();
            let mut used = vec![false; roots.len()];
            for i in 0..roots.len() {
                if used[i] {
                    continue;
                }
                let mut k = 0;
                for j in i..roots.len() {
                    if !used[j] && (roots[i] - roots[j]).norm() < 1e-3 {
                        used[j] = true;
                        k += 1;
                    }
                }
                out.push(k);
                count += k;
            }
        }
        if count < d {
            out.push(d - count);
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn square_composition_matches_brute_force() {
        let maps = [
            ExactRatFunc::new(poly(&[-1, 0, 1]), poly(&[0, 1])).unwrap(),
            ExactRatFunc::new(poly(&[2, -3, 1]), poly(&[5, 0, 1])).unwrap(),
            ExactRatFunc::from_poly(poly(&[0, 3, 0, -1])),
        ];
        for h in maps {
            let f = h.compose_square();
            let exact = exact_passport(&f);
            assert_eq!(exact.over0, brute_fibre(&f, Some(0)));
            assert_eq!(exact.over1, brute_fibre(&f, Some(1)));
            assert_eq!(exact.over_inf, brute_fibre(&f, None));
            // every preimage off {0, inf} splits in two with the same degree,
            // those at 0 or inf double
            let base = exact_passport(&h);
            let at_zero = usize::from(h.eval(&g(0)) == Some(g(1)));
            let at_inf = usize::from(h.num().deg0() == h.den().deg0() && h.num().lead().is_one());
            assert_eq!(exact.over1.len(), 2 * base.over1.len() - at_zero - at_inf);
        }
    }

    #[test]
    fn riemann_hurwitz_on_catalog() {
        for name in CATALOG_MAPS {
            let r = report(name);
            assert_eq!(r.passport.ramification() + r.ramification_elsewhere, 2 * r.degree - 2, "{name}");
        }
        // a non-Belyi map: critical values of x^3 - 3x are +-2
        let f = RationalMap::Exact(ExactRatFunc::from_poly(poly(&[0, -3, 0, 1])));
        let r = passport(&f, 128).unwrap();
        assert!(!r.is_belyi);
        assert_eq!(r.ramification_elsewhere, 2);
    }

    #[test]
    fn numeric_passport_agrees_on_deg8() {
        let f = RationalMap::Numeric(NumRatFunc::from_exact(&deg8_map(), 192));
        let r = passport(&f, 192).unwrap();
        assert_eq!(r.passport, report("deg8").passport);
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn min_degree_triples() {
        let triples = [(q(1, 2), q(1, 4), q(1, 4)), (q(1, 3), q(1, 3), q(1, 3)), (q(1, 3), q(1, 6), q(1, 2)), (q(1, 3), q(1, 2), q(1, 6)), (q(2, 3), q(1, 6), q(1, 6))];
        let degs: Vec<u64> = triples.iter().map(|(a, b, c)| min_degree(a, b, c).unwrap().min_degree).collect();
        assert_eq!(degs, vec![8, 12, 12, 12, 12]);
        let r = min_degree(&q(1, 5), &q(2, 5), &q(2, 5)).unwrap();
        assert_eq!((r.d, r.min_degree, r.parity_case), (5, 20, Parity::Odd));
        assert!(min_degree(&q(1, 2), &q(1, 2), &q(1, 2)).is_err());
        assert!(min_degree(&q(-1, 2), &q(1, 2), &q(1, 1)).is_err());
    }

    /// Smallest `d` with `d a, d b, d c` all integers, by scanning.
    fn scan_denominator(a: &Rational, b: &Rational, c: &Rational) -> u64 {
        (1u64..).find(|&d| [a, b, c].iter().all(|x| Rational::from(*x * d).denom() == &1)).unwrap()
    }

    #[test]
    fn parity_law_up_to_24() {
        for d in 1..=24i64 {
            for i in 1..d {
                for j in 1..d - i {
                    let k = d - i - j;
                    let (a, b, c) = (q(i, d), q(j, d), q(k, d));
                    let r = min_degree(&a, &b, &c).unwrap();
                    assert_eq!(r.d, scan_denominator(&a, &b, &c));
                    assert_eq!(r.d % 2 == 1, r.parity_case == Parity::Odd);
                    assert_eq!(r.min_degree == 4 * r.d, r.d % 2 == 1);
                    assert_eq!(r.min_degree == 2 * r.d, r.d % 2 == 0);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn square_composition_doubles_degree(c in proptest::collection::vec(-5i64..5, 2..4), dc in 1i64..4) {
            let num = poly(&c);
            prop_assume!(num.deg0() > 0);
            let h = ExactRatFunc::new(num, poly(&[dc, 0, 1])).unwrap();
            let f = h.compose_square();
            prop_assert_eq!(f.degree(), 2 * h.degree());
            prop_assert_eq!(is_even(&f), Some(h));
        }
    }
}
