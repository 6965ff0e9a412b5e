//! Period integrals, the Strebel condition as a root-finding problem, and trajectories.
//!
//! The period form is `w dz` with `w = sqrt(-R) / (2 pi)`, so the `q`-length of a
//! horizontal arc is `int w dz` and every period of a Strebel differential is real.

mod quad;
mod solve;
mod trace;

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{roots_numeric, roots_with_multiplicity, BigComplex, NumPoly};
use crate::qdiff::QuadDiff;

pub use quad::{integrate, Integral, Path, Piece};
pub use solve::{edge_lengths, find_mu, find_mu_from, strebel_residual, SolveOptions};
pub use trace::{trace_trajectory, Termination, TraceOptions, TrajectoryTrace};

/// Default absolute tolerance on periods.
pub const DEFAULT_TOLERANCE: f64 = 1e-11;
/// Zeros closer than this (relative to their size) are reported as one double zero.
const MERGE: f64 = 1e-7;

/// A quadratic differential `-(1/4 pi^2) R dz^2` evaluated in double precision, with its
/// finite zeros and poles located at working precision.
#[derive(Clone, Debug)]
pub struct NumDiff {
    lead: C,
    zeros: Vec<(C, usize)>,
    poles: Vec<(C, usize)>,
}

fn factored(roots: &[(C, usize)], z: C) -> C {
    roots.iter().fold(C::new(1.0, 0.0), |acc, (r, m)| acc * (z - r).powi(*m as i32))
}

fn merge_close(mut roots: Vec<(C, usize)>) -> Vec<(C, usize)> {
    let mut out: Vec<(C, usize)> = Vec::new();
    roots.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    for (z, m) in roots {
        match out.iter_mut().find(|(w, _)| (*w - z).norm() <= MERGE * (1.0 + z.norm())) {
            Some((w, k)) => {
                *w = (*w * *k as f64 + z * m as f64) / (*k + m) as f64;
                *k += m;
            }
            None => out.push((z, m)),
        }
    }
    sort_lex(&mut out);
    out
}

fn sort_lex(v: &mut [(C, usize)]) {
    v.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
}

impl NumDiff {
    /// Zeros and poles come from an exact square-free factorisation.
    pub fn from_quad(q: &QuadDiff, prec: u32) -> Result<Self> {
        let lead = |p: &crate::exactnum::ExactPoly| BigComplex::from_gauss(&p.lead(), prec).to_complex64();
        let locate = |p: &crate::exactnum::ExactPoly| -> Result<Vec<(C, usize)>> {
            if p.deg0() == 0 {
                return Ok(Vec::new());
            }
            let mut v: Vec<(C, usize)> =
                roots_with_multiplicity(p, prec)?.into_iter().map(|(z, m)| (z.to_complex64(), m)).collect();
            sort_lex(&mut v);
            Ok(v)
        };
        Ok(NumDiff {
            lead: lead(q.r().num()) / lead(q.r().den()),
            zeros: locate(q.r().num())?,
            poles: locate(q.r().den())?,
        })
    }

    /// The family member at numeric `(lambda, mu)`.
    pub fn family(lambda: C, mu: C, prec: u32) -> Result<Self> {
        if lambda.norm() < 1e-12 || (lambda - 1.0).norm() < 1e-12 {
            return Err(Error::DegenerateLambda);
        }
        if !(lambda.is_finite() && mu.is_finite()) {
            return Err(Error::Domain("parameters must be finite".into()));
        }
        let big = |z: C| BigComplex::from_complex64(z, prec);
        let (l, m) = (big(lambda), big(mu));
        let one = BigComplex::one(prec);
        let two = big(C::new(2.0, 0.0));
        let l1 = &l + &one;
        let ll = &l * &l;
        let coeffs = vec![
            ll.clone(),
            &(&l * &m) - &(&(&two * &l) * &l1),
            &(&two * &(&ll + &l1)) - &(&m * &l1),
            &m - &(&two * &l1),
            one,
        ];
        let poly = NumPoly::new(coeffs);
        let zeros = merge_close(roots_numeric(&poly, prec)?.iter().map(|z| (z.to_complex64(), 1)).collect());
        let mut poles: Vec<(C, usize)> = [C::new(0.0, 0.0), C::new(1.0, 0.0), lambda].iter().map(|&p| (p, 2)).collect();
        sort_lex(&mut poles);
        Ok(NumDiff { lead: C::new(1.0, 0.0), zeros, poles })
    }

    pub fn r(&self, z: C) -> C {
        self.lead * factored(&self.zeros, z) / factored(&self.poles, z)
    }

    /// Principal value of `sqrt(-R(z)) / (2 pi)`.
    pub fn w(&self, z: C) -> C {
        (-self.r(z)).sqrt() / (2.0 * PI)
    }

    /// Finite zeros of `R` with multiplicities, sorted by `(Re, Im)`.
    pub fn zeros(&self) -> &[(C, usize)] {
        &self.zeros
    }

    /// Finite poles of `R` with orders, sorted by `(Re, Im)`.
    pub fn poles(&self) -> &[(C, usize)] {
        &self.poles
    }

    /// Zeros (positive order) and simple poles (order -1): where trajectories can end.
    pub fn critical_points(&self) -> Vec<(C, i32)> {
        self.zeros
            .iter()
            .map(|&(z, m)| (z, m as i32))
            .chain(self.poles.iter().filter(|(_, m)| *m % 2 == 1).map(|&(p, m)| (p, -(m as i32))))
            .collect()
    }

    /// Guard radius for pole detours: a twentieth of the smallest distance between poles.
    pub fn guard_radius(&self) -> f64 {
        let mut gap = f64::INFINITY;
        for (i, a) in self.poles.iter().enumerate() {
            for b in &self.poles[i + 1..] {
                gap = gap.min((a.0 - b.0).norm());
            }
        }
        if gap.is_finite() {
            0.05 * gap
        } else {
            0.05
        }
    }

    /// Period of `w dz` along the straight path (with pole detours) from `a` to `b`.
    pub fn period(&self, a: C, b: C, tol: f64) -> Result<(C, Path)> {
        let poles: Vec<C> = self.poles.iter().map(|p| p.0).collect();
        let path = Path::straight(a, b, &poles, self.guard_radius())?;
        let v = integrate(self, &path, tol, 0)?;
        Ok((v.value, path))
    }
}

/// One tracked period.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodEntry {
    /// Indices into the zero list.
    pub pair: (usize, usize),
    pub path: String,
    pub re: f64,
    pub im: f64,
}

impl PeriodEntry {
    pub fn value(&self) -> C {
        C::new(self.re, self.im)
    }
}

/// Zeros, periods between them, and the imaginary-part residual.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodReport {
    /// `(re, im, multiplicity)` for each distinct zero.
    pub zeros: Vec<(f64, f64, usize)>,
    pub periods: Vec<PeriodEntry>,
    pub residual: f64,
    pub edge_lengths: Option<[f64; 3]>,
}

impl PeriodReport {
    /// Fills in the edge lengths when `q` has four simple zeros and residual below `tol`.
    pub fn attach_edge_lengths(&mut self, q: &NumDiff, tol: f64) -> Result<()> {
        self.edge_lengths = Some(solve::edge_lengths_of(q, tol)?);
        Ok(())
    }
}

/// Index pairs tracked for `n` distinct zeros: every pair through the first zero.
pub(crate) fn tracked_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|j| (0, j)).collect()
}

/// Periods along straight paths from the first zero to each other zero.
pub fn periods(q: &NumDiff, tol: f64) -> Result<PeriodReport> {
    let zs = q.zeros();
    if zs.len() < 2 {
        return Err(Error::Degenerate(format!("{} distinct zeros; periods need at least two", zs.len())));
    }
    let mut out = Vec::new();
    for (i, j) in tracked_pairs(zs.len()) {
        let (v, path) = q.period(zs[i].0, zs[j].0, tol)?;
        out.push(PeriodEntry { pair: (i, j), path: path.to_string(), re: v.re, im: v.im });
    }
    let residual = out.iter().map(|p| p.im.abs()).fold(0.0, f64::max);
    Ok(PeriodReport {
        zeros: zs.iter().map(|(z, m)| (z.re, z.im, *m)).collect(),
        periods: out,
        residual,
        edge_lengths: None,
    })
}

/// Distance from `p mod 1` to `1/2`. Periods between the two double zeros of a real-`lambda`
/// Strebel differential are `1/2 + s` or `1/2 - s` modulo the unit residues.
pub fn offset_from_half(p: f64) -> f64 {
    (p.rem_euclid(1.0) - 0.5).abs()
}

/// `s` for real `lambda`, read off the period between the two double zeros at `mu = 2 - 2 lambda`.
pub fn arc_length_numeric(lambda: f64, prec: u32) -> Result<f64> {
    arc_length_formula(lambda)?;
    let q = NumDiff::family(C::new(lambda, 0.0), C::new(2.0 - 2.0 * lambda, 0.0), prec)?;
    let r = periods(&q, 1e-14)?;
    Ok(offset_from_half(r.periods[0].re))
}

/// `s = arcsin(2 lambda - 1) / pi`, the length offset in the real two-double-zero case.
pub fn arc_length_formula(lambda: f64) -> Result<f64> {
    if !(0.5..1.0).contains(&lambda) {
        return Err(Error::Domain(format!("lambda = {lambda} outside [1/2, 1)")));
    }
    Ok((2.0 * lambda - 1.0).asin() / PI)
}

#[cfg(test)]
mod tests;
