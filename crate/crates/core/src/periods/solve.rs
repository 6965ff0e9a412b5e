use num_complex::Complex64 as C;

use super::trace::critical_edges;
use super::{periods, tracked_pairs, NumDiff, Termination, TraceOptions, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::exactnum::DEFAULT_PRECISION;
use crate::qdiff::mu_double_zero_f64;

/// Controls for the shooting solver.
#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Target for the largest imaginary part of a tracked period.
    pub tol: f64,
    pub prec: u32,
    pub max_newton: usize,
    /// Budget of continuation steps in `lambda`, successful or not.
    pub max_steps: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: DEFAULT_TOLERANCE, prec: DEFAULT_PRECISION, max_newton: 40, max_steps: 32 }
    }
}

fn quad_tol(tol: f64) -> f64 {
    (tol * 1e-2).max(1e-14)
}

/// Largest `|Im|` over the tracked periods of the family member `(lambda, mu)`.
pub fn strebel_residual(lambda: C, mu: C, prec: u32) -> Result<f64> {
    let q = NumDiff::family(lambda, mu, prec)?;
    Ok(periods(&q, quad_tol(DEFAULT_TOLERANCE))?.residual)
}

/// Zeros in a fixed labelling and the periods from the first one to the others,
/// signs and labels carried by continuity from a reference state.
#[derive(Clone, Debug)]
struct State {
    zeros: [C; 4],
    values: [C; 3],
}

impl State {
    fn defect(&self) -> [f64; 3] {
        self.values.map(|v| v.im)
    }

    fn size(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|k| p.contains(&k)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn evaluate(lambda: C, mu: C, reference: Option<&State>, opts: &SolveOptions) -> Result<State> {
    let q = NumDiff::family(lambda, mu, opts.prec)?;
    let flat: Vec<C> = q.zeros().iter().flat_map(|&(z, m)| std::iter::repeat(z).take(m)).collect();
    let mut zeros: [C; 4] = flat.try_into().map_err(|_| Error::Degenerate("expected four zeros".into()))?;
    if let Some(r) = reference {
        let cost = |p: &[usize; 4]| (0..4).map(|k| (zeros[p[k]] - r.zeros[k]).norm()).sum::<f64>();
        let best = permutations4().into_iter().min_by(|a, b| cost(a).total_cmp(&cost(b))).expect("nonempty");
        zeros = best.map(|k| zeros[k]);
    }
    let tol = quad_tol(opts.tol);
    let mut values = [C::new(0.0, 0.0); 3];
    for (k, (i, j)) in tracked_pairs(4).into_iter().enumerate() {
        let (a, b) = (zeros[i], zeros[j]);
        let mut v = if (a - b).norm() == 0.0 { C::new(0.0, 0.0) } else { q.period(a, b, tol)?.0 };
        let flip = match reference {
            Some(r) => (v + r.values[k]).norm() < (v - r.values[k]).norm(),
            None => v.re < 0.0,
        };
        if flip {
            v = -v;
        }
        values[k] = v;
    }
    Ok(State { zeros, values })
}

/// Gauss–Newton on `mu -> (Im P_1, Im P_2, Im P_3)` with a finite-difference Jacobian.
fn newton(lambda: C, seed: C, reference: Option<&State>, opts: &SolveOptions) -> Result<(C, State)> {
    let mut mu = seed;
    let mut s = evaluate(lambda, mu, reference, opts)?;
    for _ in 0..opts.max_newton {
        if s.size() < opts.tol {
            return Ok((mu, s));
        }
        let g = s.defect();
        let h = 1e-7 * (1.0 + mu.norm());
        let sr = evaluate(lambda, mu + h, Some(&s), opts)?.defect();
        let si = evaluate(lambda, mu + C::new(0.0, h), Some(&s), opts)?.defect();
        let jr: Vec<f64> = (0..3).map(|k| (sr[k] - g[k]) / h).collect();
        let ji: Vec<f64> = (0..3).map(|k| (si[k] - g[k]) / h).collect();
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let (a11, a12, a22) = (dot(&jr, &jr), dot(&jr, &ji), dot(&ji, &ji));
        let (b1, b2) = (-dot(&jr, &g), -dot(&ji, &g));
        let det = a11 * a22 - a12 * a12;
        if !det.is_finite() || det.abs() <= 1e-300 {
            return Err(Error::NewtonDivergence(format!("singular Jacobian at mu = {mu}")));
        }
        let step = C::new((b1 * a22 - b2 * a12) / det, (a11 * b2 - a12 * b1) / det);
        let norm = |d: [f64; 3]| d.iter().map(|x| x * x).sum::<f64>();
        let mut t = 1.0;
        loop {
            let cand = mu + step * t;
            if let Ok(next) = evaluate(lambda, cand, Some(&s), opts) {
                if norm(next.defect()) < norm(g) {
                    mu = cand;
                    s = next;
                    break;
                }
            }
            t *= 0.5;
            if t < 1e-4 {
                return Err(Error::NewtonDivergence(format!(
                    "no descent from mu = {mu} (residual {:.3e})",
                    s.size()
                )));
            }
        }
    }
    if s.size() < opts.tol {
        Ok((mu, s))
    } else {
        Err(Error::NewtonDivergence(format!("residual {:.3e} after {} steps", s.size(), opts.max_newton)))
    }
}

/// Newton iteration from an explicit seed.
pub fn find_mu_from(lambda: C, seed: C, opts: &SolveOptions) -> Result<C> {
    Ok(newton(lambda, seed, None, opts)?.0)
}

fn real_anchor(lambda: C) -> f64 {
    let a = lambda.re;
    if a.abs() < 0.05 || (a - 1.0).abs() < 0.05 {
        0.5
    } else {
        a
    }
}

/// The `mu` making every tracked period real. Real `lambda` starts from the closed form;
/// otherwise the closed form at a real anchor is continued along a straight path in `lambda`.
pub fn find_mu(lambda: C, opts: &SolveOptions) -> Result<C> {
    if lambda.norm() < 1e-12 || (lambda - 1.0).norm() < 1e-12 {
        return Err(Error::DegenerateLambda);
    }
    if lambda.im == 0.0 {
        return find_mu_from(lambda, C::new(mu_double_zero_f64(lambda.re)?, 0.0), opts);
    }
    let anchor = C::new(real_anchor(lambda), 0.0);
    let at = |t: f64| anchor + (lambda - anchor) * t;
    let mut mu = C::new(mu_double_zero_f64(anchor.re)?, 0.0);
    let mut state: Option<State> = None;
    let mut prev: Option<(f64, C)> = None;
    let (mut t, mut dt) = (0.0f64, 0.125f64);
    for _ in 0..opts.max_steps {
        let tn = (t + dt).min(1.0);
        let guess = match prev {
            Some((tp, mp)) => mu + (mu - mp) * ((tn - t) / (t - tp)),
            None => mu,
        };
        match newton(at(tn), guess, state.as_ref(), opts) {
            Ok((m, s)) => {
                prev = Some((t, mu));
                (t, mu, state) = (tn, m, Some(s));
                if t >= 1.0 {
                    return Ok(mu);
                }
                dt *= 1.5;
            }
            Err(_) => dt *= 0.5,
        }
    }
    Err(Error::NewtonDivergence(format!(
        "continuation stalled at t = {t:.4} after {} steps (mu = {mu})",
        opts.max_steps
    )))
}

/// Lengths of the three edge classes of the critical graph, measured along the critical
/// trajectories leaving the first zero and ordered by the zero each one reaches.
pub fn edge_lengths(lambda: C, mu: C, tol: f64, prec: u32) -> Result<[f64; 3]> {
    edge_lengths_of(&NumDiff::family(lambda, mu, prec)?, tol)
}

pub(crate) fn edge_lengths_of(q: &NumDiff, tol: f64) -> Result<[f64; 3]> {
    if q.zeros().len() != 4 {
        return Err(Error::Degenerate(
            "edge lengths need four simple zeros; repeated zeros use the arcsin parametrisation".into(),
        ));
    }
    let report = periods(q, quad_tol(tol))?;
    if report.residual >= tol {
        return Err(Error::Domain(format!("not Strebel: residual {:.3e} >= {tol:.1e}", report.residual)));
    }
    let zeros = q.zeros();
    let mut out = [f64::NAN; 3];
    for edge in critical_edges(q, zeros[0].0, 1, &TraceOptions::default())? {
        let Termination::Critical { re, im, order: 1 } = edge.end else {
            return Err(Error::Verification(format!("critical trajectory ended with {:?}", edge.end)));
        };
        let j = zeros.iter().position(|(z, _)| *z == C::new(re, im)).expect("a listed zero");
        if j == 0 || !out[j - 1].is_nan() {
            return Err(Error::Verification("critical graph is not K4".into()));
        }
        out[j - 1] = edge.length;
    }
    Ok(out)
}
