use num_complex::Complex64 as C;
use serde::Serialize;

use super::quad::Branch;
use super::NumDiff;
use crate::error::{Error, Result};
use crate::svg::Canvas;

/// Step control for trajectory integration.
#[derive(Clone, Copy, Debug)]
pub struct TraceOptions {
    /// Local error per step.
    pub tol: f64,
    /// Closure distance; directions must also agree to `1 - closure`.
    pub closure: f64,
    /// Distance at which a critical point counts as reached.
    pub guard: f64,
    pub max_steps: usize,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions { tol: 1e-13, closure: 1e-9, guard: 1e-7, max_steps: 1_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Termination {
    Closed,
    /// Reached a zero (`order > 0`) or simple pole (`order = -1`).
    Critical { re: f64, im: f64, order: i32 },
    Budget,
    Underflow,
}

/// A horizontal trajectory through `start`, parametrised by `q`-length.
#[derive(Clone, Debug)]
pub struct TrajectoryTrace {
    pub start: C,
    pub points: Vec<C>,
    pub arc_length: f64,
    pub closed: bool,
    /// How each traced direction ended: one entry if closed, else backward then forward.
    pub ends: Vec<Termination>,
    /// Largest `|arg(w dz)|` over the polyline chords.
    pub horizontal_defect: f64,
}

impl TrajectoryTrace {
    /// Plot of the trajectory with critical points as dots and double poles as rings.
    pub fn to_svg(&self, q: &NumDiff) -> String {
        let mut pts: Vec<(f64, f64)> = self.points.iter().map(|z| (z.re, z.im)).collect();
        let crit = q.critical_points();
        pts.extend(crit.iter().map(|(z, _)| (z.re, z.im)));
        let mut canvas = Canvas::fit(pts);
        let line: Vec<(f64, f64)> = self.points.iter().map(|z| (z.re, z.im)).collect();
        canvas.polyline(&line, "black");
        for (z, order) in crit {
            canvas.dot((z.re, z.im), 5.0, if order > 0 { "red" } else { "blue" });
        }
        for (p, m) in q.poles() {
            if *m == 2 {
                canvas.ring((p.re, p.im), 7.0, "green");
            }
        }
        canvas.finish()
    }
}

const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

/// Point on a trajectory together with the branch of `w` there.
#[derive(Clone, Copy, Debug)]
struct Node {
    z: C,
    w: C,
}

/// One Dormand–Prince step; `None` if the branch could not be followed.
fn rk_step(q: &NumDiff, at: Node, h: f64) -> Option<(Node, f64)> {
    let mut k = [C::new(0.0, 0.0); 7];
    let field = |z: C| -> Option<(C, C)> {
        let mut b = Branch::new(Some(at.w));
        let ok = b.follow(q.w(z));
        let w = b.last()?;
        (ok && w.norm() > 0.0 && w.is_finite()).then(|| (1.0 / w, w))
    };
    k[0] = 1.0 / at.w;
    let mut last_w = at.w;
    for s in 0..6 {
        let mut z = at.z;
        for (j, kj) in k.iter().enumerate().take(s + 1) {
            z += *kj * (h * A[s][j]);
        }
        let (v, w) = field(z)?;
        k[s + 1] = v;
        last_w = w;
    }
    let z5 = at.z + k[..6].iter().zip(&A[5]).map(|(kj, a)| *kj * (h * a)).sum::<C>();
    let z4 = at.z + k.iter().zip(&B4).map(|(kj, b)| *kj * (h * b)).sum::<C>();
    Some((Node { z: z5, w: last_w }, (z5 - z4).norm()))
}

/// Where a traced direction stopped.
#[derive(Clone, Debug)]
struct Leg {
    points: Vec<C>,
    length: f64,
    end: Termination,
}

fn nearest_critical(crit: &[(C, i32)], z: C, skip: Option<C>) -> Option<(C, i32, f64)> {
    crit.iter()
        .filter(|(c, _)| skip.map_or(true, |s| (s - *c).norm() > 0.0))
        .map(|&(c, m)| (c, m, (z - c).norm()))
        .min_by(|a, b| a.2.total_cmp(&b.2))
}

/// `q`-length of the radial segment from a critical point of order `m` to `z`.
fn tail_length(q: &NumDiff, c: C, m: i32, z: C) -> f64 {
    let d = (z - c).norm();
    if d == 0.0 {
        return 0.0;
    }
    let e = m as f64 / 2.0 + 1.0;
    let a = (q.r(z) / (z - c).powf(m as f64)).norm();
    a.sqrt() / (2.0 * std::f64::consts::PI) * d.powf(e) / e
}

/// Integrates from `start` (branch `w0`) until closure, a critical point, or the budget.
/// `origin` is a critical point the leg starts beside and should not stop at immediately.
fn run(q: &NumDiff, start: C, w0: C, origin: Option<C>, close: bool, opts: &TraceOptions) -> Leg {
    let crit = q.critical_points();
    let v0 = 1.0 / w0;
    let section = |z: C| ((z - start) * v0.conj()).re;
    let mut node = Node { z: start, w: w0 };
    let mut points = vec![start];
    let mut s = 0.0;
    let mut h = 1e-3 / (1.0 + v0.norm());
    let mut left_start = false;
    let mut left_origin = origin.is_none();
    for _ in 0..opts.max_steps {
        let near = nearest_critical(&crit, node.z, if left_origin { None } else { origin });
        if let Some((c, m, d)) = near {
            if d < opts.guard {
                let length = s + tail_length(q, c, m, node.z);
                return Leg { points, length, end: Termination::Critical { re: c.re, im: c.im, order: m } };
            }
            h = h.min(0.25 * d * node.w.norm());
        }
        if h < 1e-18 * (1.0 + s) {
            return Leg { points, length: s, end: Termination::Underflow };
        }
        let Some((next, err)) = rk_step(q, node, h) else {
            h *= 0.25;
            continue;
        };
        let scale = opts.tol * (1.0 + node.z.norm());
        if err > scale {
            h *= (0.9 * (scale / err).powf(0.2)).max(0.1);
            continue;
        }
        if close && left_start && section(node.z) < 0.0 && section(next.z) >= 0.0 {
            if let Some(tau) = crossing(q, node, h, &section) {
                let (end, _) = rk_step(q, node, tau).expect("substep of an accepted step");
                let cosine = ((1.0 / end.w) * v0.conj()).re / ((1.0 / end.w).norm() * v0.norm());
                if (end.z - start).norm() < opts.closure && cosine > 1.0 - opts.closure {
                    points.push(start);
                    return Leg { points, length: s + tau, end: Termination::Closed };
                }
            }
        }
        s += h;
        node = next;
        points.push(node.z);
        if !left_start && (node.z - start).norm() > 1e3 * opts.closure.max(opts.guard) {
            left_start = true;
        }
        if let (false, Some(o)) = (left_origin, origin) {
            left_origin = (node.z - o).norm() > 4.0 * opts.guard;
        }
        let grow = if err > 0.0 { (0.9 * (scale / err).powf(0.2)).min(4.0) } else { 4.0 };
        h *= grow;
    }
    Leg { points, length: s, end: Termination::Budget }
}

/// Step size `tau` in `(0, h]` where the section function vanishes, by secant iteration.
fn crossing(q: &NumDiff, node: Node, h: f64, section: &dyn Fn(C) -> f64) -> Option<f64> {
    let (mut t0, mut g0) = (0.0, section(node.z));
    let (mut t1, mut g1) = (h, section(rk_step(q, node, h)?.0.z));
    for _ in 0..60 {
        if g1 == g0 {
            break;
        }
        let t2 = (t1 - g1 * (t1 - t0) / (g1 - g0)).clamp(0.0, h);
        let g2 = section(rk_step(q, node, t2)?.0.z);
        (t0, g0, t1, g1) = (t1, g1, t2, g2);
        if (t1 - t0).abs() <= 1e-16 * (1.0 + h) || g1 == 0.0 {
            break;
        }
    }
    Some(t1)
}

fn defect(q: &NumDiff, pts: &[C]) -> f64 {
    pts.windows(2)
        .filter(|p| p[0] != p[1])
        .map(|p| {
            let m = 0.5 * (p[0] + p[1]);
            let v = q.w(m) * (p[1] - p[0]);
            (v.im / v.norm()).abs().min(1.0)
        })
        .fold(0.0, f64::max)
}

/// Traces the horizontal trajectory through `z0`, first forward (along `1/w(z0)` for the
/// principal branch) and, if that does not close, backward too.
pub fn trace_trajectory(q: &NumDiff, z0: C, opts: &TraceOptions) -> Result<TrajectoryTrace> {
    let w0 = q.w(z0);
    if !w0.is_finite() || w0.norm() == 0.0 {
        return Err(Error::Domain(format!("start {z0} is a zero or pole")));
    }
    let fwd = run(q, z0, w0, None, true, opts);
    if fwd.end == Termination::Closed {
        let horizontal_defect = defect(q, &fwd.points);
        return Ok(TrajectoryTrace {
            start: z0,
            points: fwd.points,
            arc_length: fwd.length,
            closed: true,
            ends: vec![Termination::Closed],
            horizontal_defect,
        });
    }
    let back = run(q, z0, -w0, None, false, opts);
    let mut points: Vec<C> = back.points.into_iter().rev().collect();
    points.extend(fwd.points.into_iter().skip(1));
    let horizontal_defect = defect(q, &points);
    Ok(TrajectoryTrace {
        start: z0,
        points,
        arc_length: back.length + fwd.length,
        closed: false,
        ends: vec![back.end, fwd.end],
        horizontal_defect,
    })
}

/// A critical trajectory leaving a zero.
#[derive(Clone, Debug)]
pub(crate) struct CriticalEdge {
    pub length: f64,
    pub end: Termination,
}

/// The `m + 2` critical trajectories leaving the zero `z0` of order `m`.
pub(crate) fn critical_edges(q: &NumDiff, z0: C, m: usize, opts: &TraceOptions) -> Result<Vec<CriticalEdge>> {
    let m = m as i32;
    let delta = 4.0 * opts.guard;
    let probe = z0 + delta;
    let a = q.r(probe) / (probe - z0).powi(m);
    // Horizontal directions solve (-a) e^{i (m + 2) theta} > 0.
    let base = -(-a).arg() / (m + 2) as f64;
    let mut out = Vec::new();
    for k in 0..(m + 2) {
        let theta = base + 2.0 * std::f64::consts::PI * k as f64 / (m + 2) as f64;
        let dir = C::from_polar(1.0, theta);
        let start = z0 + dir * delta;
        let mut w = q.w(start);
        if (w * dir).re < 0.0 {
            w = -w;
        }
        let head = tail_length(q, z0, m, start);
        let leg = run(q, start, w, Some(z0), false, opts);
        out.push(CriticalEdge { length: head + leg.length, end: leg.end });
    }
    Ok(out)
}
