//! The degree-12 Belyi maps built as `g((a3 y + a1) / (y + 1))` with `y = x^2`,
//! where `g` has degree 6 and branch data `(1,2,3), (1,2,3), (3,3)`.

use num_complex::Complex64;
use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use super::{passport, Passport, RationalMap};
use crate::error::{Error, Result};
use crate::exactnum::{roots_clustered, BigComplex, ExactPoly, NumPoly, NumRatFunc};
use crate::qdiff::normalize_poles_numeric;

pub const EXAMPLE43_PRECISION: u32 = 192;

/// Residual bound for the algebraic identities.
const IDENTITY_TOLERANCE: f64 = 1e-40;
/// Pointwise agreement of the expanded composition with direct evaluation.
const COMPOSITION_TOLERANCE: f64 = 1e-30;

/// `P(t) = t^6 + 6t^5 + 15t^4 + 36t^3 + 15t^2 + 6t + 1`, whose roots are the
/// admissible values of `a5`.
pub fn example43_polynomial() -> ExactPoly {
    ExactPoly::from_ints(&[1, 6, 15, 36, 15, 6, 1])
}

/// One normalisation of the pullback differential: the poles taken in
/// `ordering` go to `0, 1, inf, lambda`.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaMu {
    pub ordering: [usize; 4],
    #[serde(serialize_with = "ser_c64")]
    pub lambda: Complex64,
    #[serde(serialize_with = "ser_c64")]
    pub mu: Complex64,
    pub product_defect: f64,
}

fn ser_c64<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

#[derive(Clone, Debug)]
pub struct Example43Root {
    pub index: usize,
    pub a5: BigComplex,
    /// `a1, a2, a3, a4`.
    pub a: [BigComplex; 4],
    pub g: NumRatFunc,
    /// `g(M(x^2)) / g(1)`, so that the fibre over `1` holds the double poles.
    pub f: NumRatFunc,
    pub p_residual: f64,
    /// Relative coefficient gap between `N'D - ND'` and `x^2 (x - a2)(x - a4) h(x)`.
    pub derivative_residual: f64,
    /// `|g(1) - g(a5)|`.
    pub value_gap: f64,
    pub composition_residual: f64,
    pub passport: Passport,
    /// Double poles of `f^* q0`: the fibre over `1`.
    pub poles: Vec<BigComplex>,
    /// Simple zeros of `f^* q0`: triple points over `0` and `inf`.
    pub zeros: Vec<BigComplex>,
    /// The distinct cross-ratio normalisations of the pullback.
    pub normalizations: Vec<LambdaMu>,
}

impl Example43Root {
    /// Normalisation whose `lambda` is nearest to `target`.
    pub fn closest(&self, target: Complex64) -> &LambdaMu {
        self.normalizations
            .iter()
            .min_by(|a, b| (a.lambda - target).norm().total_cmp(&(b.lambda - target).norm()))
            .expect("at least one normalisation")
    }
}

fn c(re: f64, prec: u32) -> BigComplex {
    BigComplex::from_f64(re, 0.0, prec)
}

/// The three representative roots from their radical expressions.
pub fn representative_roots(prec: u32) -> [BigComplex; 3] {
    let cube = BigComplex::from_real(Float::with_val(prec, 2u32).cbrt());
    let r3 = BigComplex::from_real(Float::with_val(prec, 3u32).sqrt());
    let i = BigComplex::i(prec);
    let half = c(0.5, prec);
    let two = c(2.0, prec);
    let w = &(&cube * &r3) * &i;
    let complex_root = |w: &BigComplex| {
        let inner = &(&two - &cube) - w;
        let disc = &(&inner * &inner) - &c(4.0, prec);
        &half * &(&(&(&cube - &two) + w) - &disc.sqrt())
    };
    let t0 = complex_root(&w);
    let t2 = complex_root(&-&w);
    let t1 = &(&c(-1.0, prec) - &cube) - &(&cube * &(&BigComplex::one(prec) + &(&cube * &cube)).sqrt());
    [t0, t1, t2]
}

fn eval_int_poly(coeffs: &[i64], t: &BigComplex) -> BigComplex {
    coeffs.iter().rev().fold(BigComplex::zero(t.prec()), |acc, &k| &(&acc * t) + &c(k as f64, t.prec()))
}

/// `a1..a4` as polynomials in `a5`.
pub fn coefficients_from_a5(a5: &BigComplex) -> [BigComplex; 4] {
    let prec = a5.prec();
    let div = |p: BigComplex, d: u32| p.scale_f(&(Float::with_val(prec, 1u32) / d));
    let a1 = div(eval_int_poly(&[1, 10, 35, 15, 6, 1], a5), 2);
    let a2 = div(eval_int_poly(&[7, 16, 35, 15, 6, 1], a5), 4);
    let a3 = div(eval_int_poly(&[21, 45, 166, 70, 29, 5], a5), 16);
    let a4 = div(eval_int_poly(&[0, 3, -61, -25, -11, -2], a5), 20);
    [-&a1, a2, a3, a4]
}

fn linear(r: &BigComplex) -> NumPoly {
    NumPoly::new(vec![-r, BigComplex::one(r.prec())])
}

fn product(factors: &[&BigComplex]) -> NumPoly {
    let prec = factors.first().map_or(64, |f| f.prec());
    factors.iter().fold(NumPoly::new(vec![BigComplex::one(prec)]), |acc, r| acc.mul(&linear(r)))
}

fn relative_gap(a: &NumPoly, b: &NumPoly) -> f64 {
    let n = a.coeffs().len().max(b.coeffs().len());
    let z = BigComplex::zero(a.prec());
    let gap = (0..n)
        .map(|k| a.coeffs().get(k).unwrap_or(&z).dist(b.coeffs().get(k).unwrap_or(&z)))
        .fold(0.0, f64::max);
    gap / b.max_abs_coeff().max(f64::MIN_POSITIVE)
}

fn solve_root(index: usize, a5: BigComplex) -> Result<Example43Root> {
    let prec = a5.prec();
    let p_residual = NumPoly::from_exact(&example43_polynomial(), prec).eval(&a5).abs_f64();
    let a = coefficients_from_a5(&a5);
    let [a1, a2, a3, a4] = &a;
    let zero = BigComplex::zero(prec);
    let one = BigComplex::one(prec);

    let num = product(&[&zero, &zero, &zero, a1, a2, a2]);
    let den = product(&[a3, a4, a4]);
    let g = NumRatFunc { num: num.clone(), den: den.clone() };

    // g' = x^2 (x - a2) h / ((x - a3)^2 (x - a4)^3) with h = 3 (x - 1)^2 (x - a5)^2
    let wronskian = num.derivative().mul(&den).add(&num.mul(&den.derivative()).scale(&c(-1.0, prec)));
    let expected = product(&[&zero, &zero, a2, a4, &one, &one, &a5, &a5]).scale(&c(3.0, prec));
    let derivative_residual = relative_gap(&wronskian, &expected);

    let g1 = g.eval(&one).ok_or_else(|| Error::Verification("g has a pole at 1".into()))?;
    let ga5 = g.eval(&a5).ok_or_else(|| Error::Verification("g has a pole at a5".into()))?;
    let value_gap = g1.dist(&ga5);

    // f(x) = g(M(x^2)) with M(y) = (a3 y + a1) / (y + 1)
    let inner = NumRatFunc {
        num: NumPoly::new(vec![a1.clone(), zero.clone(), a3.clone()]),
        den: NumPoly::new(vec![one.clone(), zero.clone(), one.clone()]),
    };
    let composed = g.compose(&inner);
    let mut composition_residual: f64 = 0.0;
    for (re, im) in [(0.3, 0.7), (-1.1, 0.2), (2.5, -0.4), (0.05, -1.9)] {
        let x = BigComplex::from_f64(re, im, prec);
        let direct = g.eval(&inner.eval(&x).expect("sample avoids x^2 = -1")).expect("sample avoids poles");
        let expanded = composed.eval(&x).expect("sample avoids poles");
        composition_residual = composition_residual.max(direct.dist(&expanded) / direct.abs_f64().max(1.0));
    }
    let g1_inv = g1.inv().ok_or_else(|| Error::Verification("g(1) = 0".into()))?;
    let f = NumRatFunc { num: composed.num.scale(&g1_inv), den: composed.den.clone() };

    let report = passport(&RationalMap::Numeric(f.clone()), prec)?;

    let tol = 2f64.powi(-(prec as i32) / 6);
    let shifted = f.num.add(&f.den.scale(&c(-1.0, prec)));
    let poles: Vec<BigComplex> = roots_clustered(&shifted, prec, tol)?.into_iter().map(|(r, _)| r).collect();
    let zeros: Vec<BigComplex> = roots_clustered(&f.num, prec, tol)?
        .into_iter()
        .chain(roots_clustered(&f.den, prec, tol)?)
        .filter(|(_, k)| *k == 3)
        .map(|(r, _)| r)
        .collect();
    if poles.len() != 4 || zeros.len() != 4 {
        return Err(Error::Verification(format!(
            "expected four poles and four zeros, found {} and {}",
            poles.len(),
            zeros.len()
        )));
    }
    let normalizations = normalisations(&poles, &zeros)?;

    let root = Example43Root {
        index,
        a5,
        a,
        g,
        f,
        p_residual,
        derivative_residual,
        value_gap,
        composition_residual,
        passport: report.passport,
        poles,
        zeros,
        normalizations,
    };
    check(&root)?;
    Ok(root)
}

fn normalisations(poles: &[BigComplex], zeros: &[BigComplex]) -> Result<Vec<LambdaMu>> {
    let zs: Vec<Option<BigComplex>> = zeros.iter().cloned().map(Some).collect();
    let mut out: Vec<LambdaMu> = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                if a == b || b == c || a == c {
                    continue;
                }
                let d = 6 - a - b - c;
                // poles[a] -> 0, poles[b] -> 1, poles[c] -> inf, poles[d] -> lambda
                let n = normalize_poles_numeric([&poles[a], &poles[b], &poles[c], &poles[d]], &zs)?;
                let lambda = n.lambda.to_complex64();
                if out.iter().any(|o| (o.lambda - lambda).norm() < 1e-20) {
                    continue;
                }
                out.push(LambdaMu { ordering: [a, b, c, d], lambda, mu: n.mu.to_complex64(), product_defect: n.product_defect });
            }
        }
    }
    Ok(out)
}

fn check(r: &Example43Root) -> Result<()> {
    let want = Passport::new(vec![3, 3, 2, 2, 2], vec![3, 3, 3, 3], vec![3, 3, 2, 2, 2]);
    let mut failures = Vec::new();
    if r.p_residual > IDENTITY_TOLERANCE {
        failures.push(format!("P(a5) = {:e}", r.p_residual));
    }
    if r.derivative_residual > IDENTITY_TOLERANCE {
        failures.push(format!("derivative identity residual {:e}", r.derivative_residual));
    }
    if r.value_gap > IDENTITY_TOLERANCE {
        failures.push(format!("|g(1) - g(a5)| = {:e}", r.value_gap));
    }
    if r.composition_residual > COMPOSITION_TOLERANCE {
        failures.push(format!("composition residual {:e}", r.composition_residual));
    }
    if r.passport != want {
        failures.push(format!("passport {} instead of {want}", r.passport));
    }
    if let Some(bad) = r.normalizations.iter().find(|n| n.product_defect > 1e-20) {
        failures.push(format!("normalised zeros off the family by {:e}", bad.product_defect));
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Error::Verification(format!("root t{}: {}", r.index, failures.join("; "))))
    }
}

/// Builds and verifies the map for each representative root `t0, t1, t2`.
pub fn example43_solve(prec: u32) -> Result<Vec<Example43Root>> {
    let prec = prec.max(EXAMPLE43_PRECISION);
    representative_roots(prec)
        .into_par_iter()
        .enumerate()
        .map(|(k, t)| solve_root(k, t))
        .collect()
}
