use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64 as C;

use super::NumDiff;
use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 40;
const LOW: usize = 10;
const HIGH: usize = 20;

/// Gauss–Legendre nodes and weights on `[0, 1]`.
#[derive(Debug)]
struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn gauss_legendre(n: usize) -> Rule {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for k in 0..n {
        let mut x = (PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push((1.0 - x) / 2.0);
        weights.push(1.0 / ((1.0 - x * x) * dp * dp));
    }
    Rule { nodes, weights }
}

fn rules() -> &'static (Rule, Rule) {
    static RULES: OnceLock<(Rule, Rule)> = OnceLock::new();
    RULES.get_or_init(|| (gauss_legendre(LOW), gauss_legendre(HIGH)))
}

/// One piece of an integration path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Piece {
    Line { from: C, to: C },
    /// Circular arc `center + radius * e^{i(start + sweep * u)}`.
    Arc { center: C, radius: f64, start: f64, sweep: f64 },
}

impl Piece {
    fn point(&self, u: f64) -> C {
        self.point_split(u, 1.0 - u)
    }

    /// Point at parameter `u`, given `v = 1 - u` separately so the far end stays accurate.
    fn point_split(&self, u: f64, v: f64) -> C {
        match *self {
            Piece::Line { from, to } if u <= 0.5 => from + (to - from) * u,
            Piece::Line { from, to } => to + (from - to) * v,
            Piece::Arc { center, radius, start, sweep } => center + C::from_polar(radius, start + sweep * u),
        }
    }

    fn velocity(&self, u: f64) -> C {
        match *self {
            Piece::Line { from, to } => to - from,
            Piece::Arc { radius, start, sweep, .. } => C::i() * sweep * C::from_polar(radius, start + sweep * u),
        }
    }

    pub fn start(&self) -> C {
        self.point(0.0)
    }

    pub fn end(&self) -> C {
        self.point(1.0)
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Line { from, to } => write!(f, "line({:.6}{:+.6}i -> {:.6}{:+.6}i)", from.re, from.im, to.re, to.im),
            Piece::Arc { center, radius, sweep, .. } => {
                write!(f, "arc({:.6}{:+.6}i, r={:.4}, sweep={:+.4})", center.re, center.im, radius, sweep)
            }
        }
    }
}

/// A piecewise path whose first and last points may be zeros of `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub pieces: Vec<Piece>,
    /// Whether the path starts (resp. ends) at a zero, where the integrand vanishes like a root.
    pub singular_ends: (bool, bool),
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pieces.iter().map(Piece::to_string).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Path {
    /// Straight segment from `a` to `b`, detouring around every pole that comes within
    /// `guard` along circular arcs on the side away from the pole.
    pub fn straight(a: C, b: C, poles: &[C], guard: f64) -> Result<Path> {
        let d = b - a;
        let len2 = d.norm_sqr();
        let mut hits = Vec::new();
        for &p in poles {
            let dist_a = (a - p).norm();
            let dist_b = (b - p).norm();
            if dist_a < guard || dist_b < guard {
                return Err(Error::PathCollision { distance: dist_a.min(dist_b) });
            }
            if len2 == 0.0 {
                continue;
            }
            let t = ((p - a) * d.conj()).re / len2;
            if !(0.0..=1.0).contains(&t) {
                continue;
            }
            let foot = a + d * t;
            let off = (p - foot).norm();
            if off >= guard {
                continue;
            }
            let half = (guard * guard - off * off).sqrt() / len2.sqrt();
            hits.push((t - half, t + half, p));
        }
        hits.sort_by(|x, y| x.0.total_cmp(&y.0));

        let mut pieces = Vec::new();
        let mut cur = a;
        for (t0, t1, p) in hits {
            let entry = a + d * t0;
            let exit = a + d * t1;
            pieces.push(Piece::Line { from: cur, to: entry });
            let start = (entry - p).arg();
            let mut sweep = (exit - p).arg() - start;
            while sweep <= -PI {
                sweep += 2.0 * PI;
            }
            while sweep > PI {
                sweep -= 2.0 * PI;
            }
            // Pass on the side away from the pole; a pole on the line is kept on the left.
            let side = (d.conj() * (p - a)).im;
            if side >= 0.0 && sweep < 0.0 {
                sweep += 2.0 * PI;
            } else if side < 0.0 && sweep > 0.0 {
                sweep -= 2.0 * PI;
            }
            pieces.push(Piece::Arc { center: p, radius: guard, start, sweep });
            cur = exit;
        }
        pieces.push(Piece::Line { from: cur, to: b });
        Ok(Path { pieces, singular_ends: (true, true) })
    }

    /// Polyline through `points`.
    pub fn polyline(points: &[C], singular_ends: (bool, bool)) -> Path {
        let pieces = points.windows(2).map(|w| Piece::Line { from: w[0], to: w[1] }).collect();
        Path { pieces, singular_ends }
    }

    pub fn start(&self) -> C {
        self.pieces[0].start()
    }

    pub fn end(&self) -> C {
        self.pieces[self.pieces.len() - 1].end()
    }
}

/// Reparametrisation that flattens root singularities at the piece ends:
/// returns `phi(u)`, `1 - phi(u)` and `phi'(u)`.
fn warp(u: f64, ends: (bool, bool)) -> (f64, f64, f64) {
    let v = 1.0 - u;
    match ends {
        (true, true) => (u * u * (3.0 - 2.0 * u), v * v * (1.0 + 2.0 * u), 6.0 * u * v),
        (true, false) => (u * u, v * (1.0 + u), 2.0 * u),
        (false, true) => (u * (1.0 + v), v * v, 2.0 * v),
        (false, false) => (u, v, 1.0),
    }
}

/// Continuation of the square root along a path: picks the sign nearest the last value
/// and reports whether the step rotated too far to be trusted.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Branch {
    last: Option<C>,
}

impl Branch {
    pub(crate) fn new(last: Option<C>) -> Self {
        Branch { last }
    }

    pub(crate) fn last(&self) -> Option<C> {
        self.last
    }

    /// Aligns `w` with the running branch; `false` if the jump is ambiguous.
    pub(crate) fn follow(&mut self, mut w: C) -> bool {
        let mut ok = true;
        if let Some(p) = self.last {
            if (w - p).norm_sqr() > (w + p).norm_sqr() {
                w = -w;
            }
            let scale = w.norm() * p.norm();
            if scale > 0.0 && (w * p.conj()).re < 0.7 * scale {
                ok = false;
            }
        }
        self.last = Some(w);
        ok
    }
}

/// Result of integrating `w dz` with `w = sqrt(-R)/(2 pi)` along a path.
#[derive(Clone, Copy, Debug)]
pub struct Integral {
    pub value: C,
    pub panels: usize,
}

/// Adaptive Gauss–Legendre integration of the period form along `path`.
/// `refine` forces every piece to start from `2^refine` panels.
pub fn integrate(q: &NumDiff, path: &Path, tol: f64, refine: u32) -> Result<Integral> {
    let (lo, hi) = rules();
    let mut branch = Branch::default();
    let mut total = C::new(0.0, 0.0);
    let mut panels = 0;
    let n = path.pieces.len();
    for (k, piece) in path.pieces.iter().enumerate() {
        let ends = (k == 0 && path.singular_ends.0, k + 1 == n && path.singular_ends.1);
        let f = |u: f64| {
            let (s, t, ds) = warp(u, ends);
            (q.w(piece.point_split(s, t)), piece.velocity(s) * ds)
        };
        let parts = 1usize << refine;
        let mut stack: Vec<(f64, f64, u32)> =
            (0..parts).rev().map(|j| (j as f64 / parts as f64, (j + 1) as f64 / parts as f64, refine)).collect();
        while let Some((a, b, depth)) = stack.pop() {
            let saved = branch;
            let mut samples: Vec<(f64, usize, f64)> = Vec::with_capacity(LOW + HIGH + 1);
            samples.extend(lo.nodes.iter().zip(&lo.weights).map(|(x, w)| (a + (b - a) * x, 0, *w)));
            samples.extend(hi.nodes.iter().zip(&hi.weights).map(|(x, w)| (a + (b - a) * x, 1, *w)));
            samples.push((b, 2, 0.0));
            samples.sort_by(|x, y| x.0.total_cmp(&y.0));
            let mut sums = [C::new(0.0, 0.0); 2];
            let mut ok = true;
            for &(u, which, weight) in &samples {
                let (w, dz) = f(u);
                if !w.is_finite() {
                    return Err(Error::Quadrature(format!("integrand not finite at {}", piece.point(u))));
                }
                ok &= branch.follow(w);
                let w = branch.last().unwrap_or(w);
                if which < 2 {
                    sums[which] += w * dz * weight;
                }
            }
            let (coarse, fine) = (sums[0] * (b - a), sums[1] * (b - a));
            if ok && (fine - coarse).norm() <= tol * (b - a) {
                total += fine;
                panels += 1;
            } else if depth >= MAX_DEPTH {
                return Err(Error::Quadrature(format!("no convergence on {piece} near u = {a:.3e}")));
            } else {
                branch = saved;
                let m = 0.5 * (a + b);
                stack.push((m, b, depth + 1));
                stack.push((a, m, depth + 1));
            }
        }
    }
    Ok(Integral { value: total, panels })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_on_polynomials() {
        let r = gauss_legendre(10);
        let s: f64 = r.weights.iter().sum();
        assert!((s - 1.0).abs() < 1e-14);
        let m: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(19)).sum();
        assert!((m - 1.0 / 20.0).abs() < 1e-14);
    }

    #[test]
    fn detour_avoids_pole() {
        let p = Path::straight(C::new(-1.0, 0.01), C::new(1.0, 0.01), &[C::new(0.0, 0.0)], 0.1).unwrap();
        assert_eq!(p.pieces.len(), 3);
        if let Piece::Arc { sweep, .. } = p.pieces[1] {
            assert!(sweep < 0.0, "pole below the line, arc should bulge upward: {sweep}");
        }
        for k in 0..=100 {
            let z = p.pieces[1].point(k as f64 / 100.0);
            assert!((z.norm() - 0.1).abs() < 1e-12 && z.im > 0.0);
        }
        assert!((p.end() - C::new(1.0, 0.01)).norm() < 1e-15);
        assert!(Path::straight(C::new(0.01, 0.0), C::new(1.0, 0.0), &[C::new(0.0, 0.0)], 0.1).is_err());
    }
}
