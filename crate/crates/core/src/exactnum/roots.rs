//! Simultaneous polynomial root finding (Aberth–Ehrlich) with Newton polish.

use num_complex::Complex64;
use rug::Float;

use super::{BigComplex, ExactPoly, NumPoly};
use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 2000;
const GUARD_BITS: u32 = 32;

/// Roots of an exact polynomial with their multiplicities.
///
/// The polynomial is split by exact squarefree decomposition first, so only
/// simple roots are ever located numerically.
pub fn roots_with_multiplicity(p: &ExactPoly, prec: u32) -> Result<Vec<(BigComplex, usize)>> {
    match p.degree() {
        None | Some(0) => return Err(Error::DegreeTooLow { min: 1, got: p.degree() }),
        _ => {}
    }
    let mut out = Vec::new();
    for (part, k) in p.squarefree_decomposition() {
        for r in roots_numeric(&NumPoly::from_exact(&part, prec + GUARD_BITS), prec)? {
            out.push((r, k));
        }
    }
    Ok(out)
}

/// All roots of an exact polynomial, repeated according to multiplicity.
pub fn roots_exact(p: &ExactPoly, prec: u32) -> Result<Vec<BigComplex>> {
    Ok(roots_with_multiplicity(p, prec)?
        .into_iter()
        .flat_map(|(r, k)| std::iter::repeat(r).take(k))
        .collect())
}

/// Roots of a numeric polynomial, assumed squarefree, at `prec` bits.
///
/// Each returned root `r` satisfies the backward-error bound
/// `|p(r)| <= 2^(8 - prec) * sum |c_i| |r|^i`.
pub fn roots_numeric(p: &NumPoly, prec: u32) -> Result<Vec<BigComplex>> {
    let n = match p.degree() {
        None | Some(0) => return Err(Error::DegreeTooLow { min: 1, got: p.degree() }),
        Some(n) => n,
    };
    let work = prec + GUARD_BITS;
    let c: Vec<BigComplex> = p.coeffs().iter().map(|c| c.with_prec(work)).collect();
    let poly = NumPoly::new(c);
    let dpoly = poly.derivative();
    let tol = Float::with_val(work, Float::i_exp(1, -(work as i32) + 8)).to_f64().max(f64::MIN_POSITIVE);
    let (mut z, iterations, max_step) = aberth(&poly, &dpoly, n, work, tol);
    // Two Newton sweeps to settle the last bits.
    for r in z.iter_mut() {
        for _ in 0..2 {
            let dv = dpoly.eval(r);
            if let Some(di) = dv.inv() {
                *r = &*r - &(&poly.eval(r) * &di);
            }
        }
    }
    let ok = z.iter().all(|r| backward_error_ok(&poly, r, prec));
    if !ok {
        return Err(Error::NoConvergence {
            iterations,
            max_step,
            best: z.iter().map(BigComplex::to_complex64).collect(),
        });
    }
    Ok(z.into_iter().map(|r| r.with_prec(prec)).collect())
}

fn aberth(poly: &NumPoly, dpoly: &NumPoly, n: usize, work: u32, tol: f64) -> (Vec<BigComplex>, usize, f64) {
    let mut z = initial_guesses(poly, work);
    let mut max_step = f64::INFINITY;
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        max_step = 0.0;
        for k in 0..n {
            let pv = poly.eval(&z[k]);
            if pv.is_zero() {
                continue;
            }
            let dv = dpoly.eval(&z[k]);
            let w = match dv.inv() {
                Some(di) => &pv * &di,
                None => continue,
            };
            let mut s = BigComplex::zero(work);
            for j in 0..n {
                if j != k {
                    if let Some(inv) = (&z[k] - &z[j]).inv() {
                        s = &s + &inv;
                    }
                }
            }
            let denom = &BigComplex::one(work) - &(&w * &s);
            let step = match denom.inv() {
                Some(di) => &w * &di,
                None => w,
            };
            let scale = z[k].abs_f64().max(1.0);
            max_step = max_step.max(step.abs_f64() / scale);
            z[k] = &z[k] - &step;
        }
        if max_step < tol {
            break;
        }
    }
    (z, iterations, max_step)
}

/// Newton on `p^(m-1)`, where a root of multiplicity `m` is simple.
fn polish_multiple(p: &NumPoly, mut z: BigComplex, m: usize) -> BigComplex {
    let mut d = p.clone();
    for _ in 1..m {
        d = d.derivative();
    }
    let dd = d.derivative();
    for _ in 0..8 {
        let step = match dd.eval(&z).inv() {
            Some(inv) => &d.eval(&z) * &inv,
            None => break,
        };
        z = &z - &step;
        if step.abs_f64() <= z.abs_f64().max(1.0) * 2f64.powi(-(z.prec() as i32)) {
            break;
        }
    }
    z
}

/// Distinct roots of a numeric polynomial that may have repeated roots, with
/// multiplicities read off by clustering.
///
/// Leading coefficients below `2^(-prec/2)` times the largest one are treated
/// as zero. Approximations closer than `tol` are merged; each cluster is
/// replaced by its centroid and polished by Newton on the derivative in which
/// it becomes a simple root.
/// Clusters that come within `100 * tol` of each other make the split
/// ambiguous and yield [`Error::NumericAmbiguity`].
pub fn roots_clustered(p: &NumPoly, prec: u32, tol: f64) -> Result<Vec<(BigComplex, usize)>> {
    let work = prec + GUARD_BITS;
    let cut = p.max_abs_coeff() * 2f64.powi(-(prec as i32) / 2);
    let mut c: Vec<BigComplex> = p.coeffs().iter().map(|c| c.with_prec(work)).collect();
    while c.last().is_some_and(|x| x.abs_f64() <= cut) {
        c.pop();
    }
    let poly = NumPoly::new(c);
    let n = match poly.degree() {
        None => return Err(Error::DegreeTooLow { min: 0, got: None }),
        Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    let dpoly = poly.derivative();
    // cluster members only need to settle well inside `tol`; polishing does the rest
    let step_tol = (tol * 1e-6).max(2f64.powi(-(work as i32) + 8));
    let (z, _, _) = aberth(&poly, &dpoly, n, work, step_tol);

    let mut cluster: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while c[r] != r {
            r = c[r];
        }
        c[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if z[i].dist(&z[j]) < tol {
                let (a, b) = (find(&mut cluster, i), find(&mut cluster, j));
                cluster[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut cluster, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    let out: Vec<(BigComplex, usize)> = groups
        .into_iter()
        .map(|(_, g)| {
            let sum = g.iter().fold(BigComplex::zero(work), |acc, &i| &acc + &z[i]);
            let k = Float::with_val(work, g.len() as u32);
            let centre = BigComplex::new(Float::with_val(work, sum.re() / &k), Float::with_val(work, sum.im() / &k));
            (polish_multiple(&poly, centre, g.len()).with_prec(prec), g.len())
        })
        .collect();
    let mut separation = f64::INFINITY;
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            separation = separation.min(out[i].0.dist(&out[j].0));
        }
    }
    if separation < 100.0 * tol {
        return Err(Error::NumericAmbiguity { separation, tolerance: tol });
    }
    Ok(out)
}

fn backward_error_ok(p: &NumPoly, r: &BigComplex, prec: u32) -> bool {
    let rabs = r.abs_f64();
    let scale: f64 = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c.abs_f64() * rabs.powi(i as i32))
        .sum();
    let bound = scale * 2f64.powi(8 - prec as i32);
    p.eval(r).abs_f64() <= bound
}

/// Points on a circle about the root centroid, radius from the constant term.
fn initial_guesses(p: &NumPoly, prec: u32) -> Vec<BigComplex> {
    let c = p.coeffs();
    let n = c.len() - 1;
    let lead = c[n].to_complex64();
    let centre = if n > 0 { -c[n - 1].to_complex64() / (lead * n as f64) } else { Complex64::new(0.0, 0.0) };
    // radius: geometric mean of root distances from the centroid via the shifted constant term
    let shifted = p.eval(&BigComplex::from_complex64(centre, prec)).to_complex64();
    let mut radius = (shifted / lead).norm().powf(1.0 / n as f64);
    if !radius.is_finite() || radius < 1e-3 {
        radius = 1.0;
    }
    (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            BigComplex::from_complex64(centre + Complex64::from_polar(radius, theta), prec)
        })
        .collect()
}

/// Double-precision Aberth iteration for quick work on small polynomials.
///
/// Coefficients are lowest degree first; the leading one must be nonzero.
pub fn roots_f64(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 || coeffs[n] == Complex64::new(0.0, 0.0) {
        return Err(Error::DegreeTooLow { min: 1, got: Some(n) });
    }
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    let deval = |z: Complex64| {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, c)| acc * z + c * k as f64)
    };
    let centre = -coeffs[n - 1] / (coeffs[n] * n as f64);
    let mut radius = (eval(centre) / coeffs[n]).norm().powf(1.0 / n as f64);
    if !radius.is_finite() || radius < 1e-3 {
        radius = 1.0;
    }
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| centre + Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut max_step = f64::INFINITY;
    for it in 0..500 {
        max_step = 0.0;
        for k in 0..n {
            let pv = eval(z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let w = pv / deval(z[k]);
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = w / (1.0 - w * s);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            return Ok(z);
        }
        if it > 100 && max_step < 1e-12 {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence { iterations: 500, max_step, best: z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussRat;

    fn p(c: &[i64]) -> ExactPoly {
        ExactPoly::from_ints(c)
    }

    #[test]
    fn i_and_minus_i() {
        let r = roots_exact(&p(&[1, 0, 1]), 128).unwrap();
        let i = BigComplex::i(128);
        let mi = -&i;
        assert!(r.iter().any(|z| z.dist(&i) < 1e-35));
        assert!(r.iter().any(|z| z.dist(&mi) < 1e-35));
    }

    #[test]
    fn multiplicities_come_from_exact_split() {
        // (z-1)^3 (z+2)
        let f = &p(&[-1, 1]).pow(3) * &p(&[2, 1]);
        let r = roots_with_multiplicity(&f, 128).unwrap();
        assert_eq!(r.len(), 2);
        let one = r.iter().find(|(z, _)| z.dist(&BigComplex::one(128)) < 1e-30).unwrap();
        assert_eq!(one.1, 3);
    }

    #[test]
    fn reconstruction_matches_coefficients() {
        let f = p(&[27, 36, 2, 36, 27]);
        let roots = roots_exact(&f, 128).unwrap();
        let rebuilt = NumPoly::from_roots(&roots, 128).scale(&BigComplex::from_f64(27.0, 0.0, 128));
        for (a, b) in rebuilt.coeffs().iter().zip(f.coeffs()) {
            assert!(a.dist(&BigComplex::from_gauss(b, 128)) < 2f64.powi(16 - 128) * 100.0);
        }
    }

    #[test]
    fn gaussian_coefficients() {
        // (z - (1+i)/2)(z - (1-i)/2) = z^2 - z + 1/2
        let f = ExactPoly::new(vec![GaussRat::from_frac(1, 2), GaussRat::from_int(-1), GaussRat::one()]);
        let r = roots_exact(&f, 128).unwrap();
        let target = BigComplex::from_f64(0.5, 0.5, 128);
        assert!(r.iter().any(|z| z.dist(&target) < 1e-35));
    }

    #[test]
    fn clustering_recovers_multiplicities() {
        // (z - i)^3 (z + 2)^2 (z - 1/3)
        let f = &(&ExactPoly::linear_root(&GaussRat::i()).pow(3) * &p(&[2, 1]).pow(2))
            * &ExactPoly::linear_root(&GaussRat::from_frac(1, 3));
        let mut r = roots_clustered(&NumPoly::from_exact(&f, 192), 192, 1e-12).unwrap();
        r.sort_by_key(|(_, k)| *k);
        assert_eq!(r.iter().map(|(_, k)| *k).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(r[2].0.dist(&BigComplex::i(192)) < 1e-40);
        assert!(r[1].0.dist(&BigComplex::from_f64(-2.0, 0.0, 192)) < 1e-40);
    }

    #[test]
    fn f64_quartic() {
        let c: Vec<Complex64> = [27.0, 36.0, 2.0, 36.0, 27.0].iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let r = roots_f64(&c).unwrap();
        for z in r {
            let v = c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, k| acc * z + k);
            assert!(v.norm() < 1e-10);
        }
    }
}
