//! Irreducibility over `Q` for small integer polynomials by bounded search.

use super::ExactPoly;
use crate::error::{Error, Result};

/// Largest degree the bounded search handles.
pub const MAX_DEGREE: usize = 6;

/// True iff `p` has no nontrivial factorisation over `Q`.
///
/// `p` must have real integer coefficients. Linear factors are ruled out by the
/// rational root test; factors of degree 2 and 3 by exhaustive search over
/// integer coefficients within the Mignotte bound.
pub fn irreducible_over_q(p: &ExactPoly) -> Result<bool> {
    let deg = p.degree().ok_or(Error::DegreeTooLow { min: 1, got: None })?;
    if deg > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(deg));
    }
    let coeffs = p
        .to_i128()
        .ok_or_else(|| Error::Domain("irreducibility test needs integer coefficients".into()))?;
    let f = primitive(&coeffs);
    if deg == 0 {
        return Ok(false);
    }
    if deg == 1 {
        return Ok(true);
    }
    if f[0] == 0 {
        return Ok(false);
    }
    let norm2 = (f.iter().map(|&c| (c as f64).powi(2)).sum::<f64>()).sqrt().ceil() as i128;
    for k in 1..=deg / 2 {
        if has_factor_of_degree(&f, k, norm2) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn primitive(c: &[i128]) -> Vec<i128> {
    let g = c.iter().fold(0, |g, &x| gcd(g, x));
    let sign = if c.last().copied().unwrap_or(1) < 0 { -1 } else { 1 };
    c.iter().map(|&x| sign * x / g.max(1)).collect()
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).collect()
}

fn binom(n: usize, k: usize) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Exact division test in `Z[x]`; valid because both operands are primitive.
fn divides(g: &[i128], f: &[i128]) -> bool {
    let mut r = f.to_vec();
    let k = g.len() - 1;
    let lg = g[k];
    for top in (k..r.len()).rev() {
        if r[top] % lg != 0 {
            return false;
        }
        let q = r[top] / lg;
        if q != 0 {
            for (j, &gj) in g.iter().enumerate() {
                r[top - k + j] -= q * gj;
            }
        }
    }
    r.iter().all(|&x| x == 0)
}

fn has_factor_of_degree(f: &[i128], k: usize, norm2: i128) -> bool {
    let n = f.len() - 1;
    let leads = divisors(f[n]);
    let consts: Vec<i128> = divisors(f[0]).into_iter().flat_map(|d| [d, -d]).collect();
    let bound = |i: usize| binom(k, i) * norm2;
    let mut g = vec![0i128; k + 1];
    for &lead in &leads {
        g[k] = lead;
        for &c in &consts {
            g[0] = c;
            if search_middle(f, &mut g, 1, &bound) {
                return true;
            }
        }
    }
    false
}

fn search_middle(f: &[i128], g: &mut Vec<i128>, i: usize, bound: &dyn Fn(usize) -> i128) -> bool {
    let k = g.len() - 1;
    if i == k {
        return divides(g, f);
    }
    let b = bound(i);
    for v in -b..=b {
        g[i] = v;
        if search_middle(f, g, i + 1, bound) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ExactPoly {
        ExactPoly::from_ints(c)
    }

    #[test]
    fn quadratics() {
        assert!(irreducible_over_q(&p(&[1, 0, 1])).unwrap());
        assert!(!irreducible_over_q(&p(&[-1, 0, 1])).unwrap());
    }

    #[test]
    fn products_are_caught() {
        // (t^2+1)(t^4+1): no rational roots, quadratic factor
        let f = &p(&[1, 0, 1]) * &p(&[1, 0, 0, 0, 1]);
        assert!(!irreducible_over_q(&f).unwrap());
        // (2t^3 + t + 5)(t^3 - 3t^2 + 7)
        let g = &p(&[5, 1, 0, 2]) * &p(&[7, 0, -3, 1]);
        assert!(!irreducible_over_q(&g).unwrap());
    }

    #[test]
    fn cyclotomic_is_irreducible() {
        assert!(irreducible_over_q(&p(&[1, 1, 1, 1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn degree_cap() {
        assert_eq!(irreducible_over_q(&p(&[1, 0, 0, 0, 0, 0, 0, 1])), Err(Error::UnsupportedDegree(7)));
    }
}
