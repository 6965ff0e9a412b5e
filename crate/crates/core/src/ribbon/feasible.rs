//! Edge lengths realising prescribed face perimeters: exact elimination over
//! `Q` followed by strict Fourier–Motzkin on the positivity constraints.

use std::fmt;

use rug::Rational;
use serde::Serialize;

use super::RibbonGraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FeasibilityStatus {
    Infeasible,
    Unique,
    Family { dim: usize },
}

/// Solutions are `particular + Σ t_k directions[k]` with every length positive.
#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityResult {
    pub status: FeasibilityStatus,
    pub particular: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
    /// A strictly positive solution when one exists.
    pub interior_point: Option<Vec<Rational>>,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        self.status != FeasibilityStatus::Infeasible
    }

    /// Edge lengths at parameter `t`.
    pub fn lengths_at(&self, t: &[Rational]) -> Vec<Rational> {
        let mut l = self.particular.clone();
        for (dir, tk) in self.directions.iter().zip(t) {
            for (x, d) in l.iter_mut().zip(dir) {
                *x += Rational::from(d * tk);
            }
        }
        l
    }

    /// Edges whose lengths agree on the whole solution set, as classes of edge indices.
    pub fn forced_equal_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for e in 0..self.particular.len() {
            let same = |f: usize| {
                self.particular[e] == self.particular[f] && self.directions.iter().all(|d| d[e] == d[f])
            };
            match classes.iter_mut().find(|c| same(c[0])) {
                Some(c) => c.push(e),
                None => classes.push(vec![e]),
            }
        }
        classes
    }
}

impl fmt::Display for FeasibilityResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match self.status {
            FeasibilityStatus::Infeasible => write!(f, "infeasible"),
            FeasibilityStatus::Unique => write!(f, "unique: ({})", show(&self.particular)),
            FeasibilityStatus::Family { dim } => {
                write!(f, "family of dimension {dim}: ({})", show(&self.particular))?;
                for (k, d) in self.directions.iter().enumerate() {
                    write!(f, " + t{k}*({})", show(d))?;
                }
                Ok(())
            }
        }
    }
}

/// Reduced row echelon form in place; returns the pivot column of each nonzero row.
fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| m[r][col].cmp0().is_ne()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::from(m[row][col].recip_ref());
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && m[r][col].cmp0().is_ne() {
                let factor = m[r][col].clone();
                for c in 0..m[r].len() {
                    let delta = Rational::from(&factor * &m[row][c]);
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Strict inequality `coeffs · t + constant > 0`.
#[derive(Clone, Debug, PartialEq)]
struct Strict {
    coeffs: Vec<Rational>,
    constant: Rational,
}

fn eval_rest(c: &Strict, t: &[Rational]) -> Rational {
    c.coeffs.iter().zip(t).fold(c.constant.clone(), |acc, (a, x)| acc + Rational::from(a * x))
}

/// Eliminates the last variable.
fn eliminate(system: &[Strict]) -> Vec<Strict> {
    let k = system[0].coeffs.len() - 1;
    let (mut lower, mut upper, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for c in system {
        match c.coeffs[k].cmp0() {
            std::cmp::Ordering::Greater => lower.push(c),
            std::cmp::Ordering::Less => upper.push(c),
            std::cmp::Ordering::Equal => out.push(Strict { coeffs: c.coeffs[..k].to_vec(), constant: c.constant.clone() }),
        }
    }
    for l in &lower {
        for u in &upper {
            let (wl, wu) = (Rational::from(-&u.coeffs[k]), l.coeffs[k].clone());
            let coeffs = (0..k).map(|j| Rational::from(&wl * &l.coeffs[j]) + Rational::from(&wu * &u.coeffs[j])).collect();
            let constant = Rational::from(&wl * &l.constant) + Rational::from(&wu * &u.constant);
            let c = Strict { coeffs, constant };
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

/// A point strictly satisfying `system`, or `None` if it is empty.
fn strict_point(system: Vec<Strict>, dim: usize) -> Option<Vec<Rational>> {
    let mut stages = vec![system];
    for _ in 0..dim {
        let next = eliminate(stages.last().unwrap());
        stages.push(next);
    }
    if stages[dim].iter().any(|c| c.constant.cmp0().is_le()) {
        return None;
    }
    let mut t: Vec<Rational> = Vec::with_capacity(dim);
    for j in 0..dim {
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for c in &stages[dim - 1 - j] {
            let a = &c.coeffs[j];
            if a.cmp0().is_eq() {
                continue;
            }
            let bound = Rational::from(-eval_rest(&Strict { coeffs: c.coeffs[..j].to_vec(), constant: c.constant.clone() }, &t) / a);
            if a.cmp0().is_gt() {
                lo = Some(lo.map_or(bound.clone(), |x| x.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |x| x.min(bound)));
            }
        }
        t.push(match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / 2u32,
            (Some(l), None) => l + 1u32,
            (None, Some(h)) => h - 1u32,
            (None, None) => Rational::new(),
        });
    }
    Some(t)
}

/// Solves "perimeter of face i = residues[i]" for positive edge lengths.
pub fn metric_feasible(g: &RibbonGraph, residues: &[Rational]) -> Result<FeasibilityResult> {
    if residues.len() != g.face_count() {
        return Err(Error::Domain(format!("{} residues for {} faces", residues.len(), g.face_count())));
    }
    let e = g.edge_count();
    let mut m: Vec<Vec<Rational>> = g
        .face_edge_incidence()
        .into_iter()
        .zip(residues)
        .map(|(row, r)| row.into_iter().map(Rational::from).chain([r.clone()]).collect())
        .collect();
    let pivots = rref(&mut m, e);
    let infeasible = FeasibilityResult {
        status: FeasibilityStatus::Infeasible,
        particular: Vec::new(),
        directions: Vec::new(),
        interior_point: None,
    };
    if m[pivots.len()..].iter().any(|row| row[e].cmp0().is_ne()) {
        return Ok(infeasible);
    }
    let mut particular = vec![Rational::new(); e];
    for (row, &p) in pivots.iter().enumerate() {
        particular[p] = m[row][e].clone();
    }
    let free: Vec<usize> = (0..e).filter(|c| !pivots.contains(c)).collect();
    let directions: Vec<Vec<Rational>> = free
        .iter()
        .map(|&j| {
            let mut d = vec![Rational::new(); e];
            d[j] = Rational::from(1);
            for (row, &p) in pivots.iter().enumerate() {
                d[p] = Rational::from(-&m[row][j]);
            }
            d
        })
        .collect();
    let dim = directions.len();
    let system = (0..e)
        .map(|edge| Strict {
            coeffs: directions.iter().map(|d| d[edge].clone()).collect(),
            constant: particular[edge].clone(),
        })
        .collect();
    let Some(t) = strict_point(system, dim) else {
        return Ok(FeasibilityResult { particular, directions, ..infeasible });
    };
    let mut result = FeasibilityResult {
        status: if dim == 0 { FeasibilityStatus::Unique } else { FeasibilityStatus::Family { dim } },
        particular,
        directions,
        interior_point: None,
    };
    result.interior_point = Some(result.lengths_at(&t));
    Ok(result)
}

/// Whether `lengths` is a positive solution for `residues`.
pub fn satisfies(g: &RibbonGraph, residues: &[Rational], lengths: &[Rational]) -> bool {
    lengths.len() == g.edge_count()
        && lengths.iter().all(|x| x.cmp0().is_gt())
        && g.with_lengths(lengths.to_vec()).ok().and_then(|h| h.boundary_lengths()).as_deref() == Some(residues)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(n: usize) -> Vec<Rational> {
        vec![Rational::from(1); n]
    }

    #[test]
    fn theta_three_edges_unique() {
        let g = RibbonGraph::from_cycles(&[vec![0, 2, 4], vec![1, 5, 3]], &[[0, 1], [2, 3], [4, 5]], None).unwrap();
        let r = metric_feasible(&g, &ones(3)).unwrap();
        assert_eq!(r.status, FeasibilityStatus::Unique);
        assert_eq!(r.particular, vec![Rational::from((1, 2)); 3]);
        let skew = [Rational::from(1), Rational::from(1), Rational::from(3)];
        assert_eq!(metric_feasible(&g, &skew).unwrap().status, FeasibilityStatus::Infeasible);
    }

    #[test]
    fn strict_bounds_exclude_boundary() {
        // t > 0 and 1 - t > 0 and t - 1 > 0 is empty; dropping the last leaves t = 1/2.
        let c = |a: i64, b: i64| Strict { coeffs: vec![Rational::from(a)], constant: Rational::from(b) };
        assert!(strict_point(vec![c(1, 0), c(-1, 1), c(1, -1)], 1).is_none());
        assert_eq!(strict_point(vec![c(1, 0), c(-1, 1)], 1).unwrap(), vec![Rational::from((1, 2))]);
    }
}
