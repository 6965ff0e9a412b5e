//! Planar drawings of the catalog graphs, transcribed as coordinates. The
//! rotation at each vertex is read off from the drawing by sorting the
//! outgoing directions counterclockwise.

use std::f64::consts::PI;

use rug::Rational;

use super::dessin::{Dessin, Segment};
use super::RibbonGraph;

pub type Pt = (f64, f64);

/// Vertex colour in a drawing; `None` for an uncoloured ribbon-graph vertex.
pub type Colour = Option<bool>;

pub const BLACK: Colour = Some(true);
pub const WHITE: Colour = Some(false);

const SAMPLES: usize = 480;
const ON_CURVE: f64 = 0.06;

/// Vertices and curves; curves are split into edges at the vertices they pass through.
#[derive(Clone, Debug, Default)]
pub struct Drawing {
    pub vertices: Vec<(Pt, Colour)>,
    pub curves: Vec<Vec<Pt>>,
}

/// One edge of a drawing: endpoint vertices and the outgoing angle at each end.
#[derive(Clone, Debug)]
pub struct DrawnEdge {
    pub ends: [usize; 2],
    pub angles: [f64; 2],
    pub points: Vec<Pt>,
}

pub fn line(p: Pt, q: Pt) -> Vec<Pt> {
    (0..=SAMPLES)
        .map(|k| {
            let t = k as f64 / SAMPLES as f64;
            (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1))
        })
        .collect()
}

/// Elliptic arc starting at `start`, which sits at angle `from` (degrees).
pub fn arc(start: Pt, from: f64, to: f64, rx: f64, ry: f64) -> Vec<Pt> {
    let (a, b) = (from.to_radians(), to.to_radians());
    let centre = (start.0 - rx * a.cos(), start.1 - ry * a.sin());
    (0..=SAMPLES)
        .map(|k| {
            let t = a + (b - a) * k as f64 / SAMPLES as f64;
            (centre.0 + rx * t.cos(), centre.1 + ry * t.sin())
        })
        .collect()
}

/// Closed ellipse, rotated by `rotate` degrees about its centre.
pub fn ellipse(centre: Pt, rx: f64, ry: f64, rotate: f64) -> Vec<Pt> {
    let (s, c) = rotate.to_radians().sin_cos();
    (0..=SAMPLES)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / SAMPLES as f64;
            let (x, y) = (rx * t.cos(), ry * t.sin());
            (centre.0 + c * x - s * y, centre.1 + s * x + c * y)
        })
        .collect()
}

fn dist(p: Pt, q: Pt) -> f64 {
    (p.0 - q.0).hypot(p.1 - q.1)
}

impl Drawing {
    pub fn vertex(&mut self, p: Pt, c: Colour) -> &mut Self {
        self.vertices.push((p, c));
        self
    }

    pub fn curve(&mut self, c: Vec<Pt>) -> &mut Self {
        self.curves.push(c);
        self
    }

    /// Splits the curves at vertices. Panics if a curve ends away from a vertex.
    pub fn edges(&self) -> Vec<DrawnEdge> {
        let mut out = Vec::new();
        for curve in &self.curves {
            let closed = dist(curve[0], curve[curve.len() - 1]) < 1e-9;
            let m = if closed { curve.len() - 1 } else { curve.len() };
            let mut hits: Vec<(usize, usize)> = self
                .vertices
                .iter()
                .enumerate()
                .filter_map(|(v, (p, _))| {
                    if !closed {
                        for end in [0, m - 1] {
                            if dist(*p, curve[end]) < ON_CURVE {
                                return Some((end, v));
                            }
                        }
                    }
                    let (i, d) = (0..m)
                        .map(|i| (i, dist(*p, curve[i])))
                        .min_by(|a, b| a.1.total_cmp(&b.1))?;
                    (d < ON_CURVE).then_some((i, v))
                })
                .collect();
            hits.sort_unstable();
            if !closed {
                assert!(
                    hits.first().map(|h| h.0) == Some(0) && hits.last().map(|h| h.0) == Some(m - 1),
                    "open curve must start and end at vertices"
                );
            }
            let pieces = if closed { hits.len() } else { hits.len() - 1 };
            for k in 0..pieces {
                let (i0, v0) = hits[k];
                let (mut i1, v1) = hits[(k + 1) % hits.len()];
                if i1 <= i0 {
                    i1 += m;
                }
                let points: Vec<Pt> = (i0..=i1).map(|i| curve[i % m]).collect();
                let step = (points.len() / 5).max(1);
                let angle = |from: Pt, to: Pt| (to.1 - from.1).atan2(to.0 - from.0);
                let (p0, p1) = (self.vertices[v0].0, self.vertices[v1].0);
                out.push(DrawnEdge {
                    ends: [v0, v1],
                    angles: [angle(p0, points[step]), angle(p1, points[points.len() - 1 - step])],
                    points,
                });
            }
        }
        out
    }

    /// Counterclockwise cycles of half-edges `2e` (start of edge `e`) and
    /// `2e + 1` (end), one per vertex.
    fn rotations(&self, edges: &[DrawnEdge]) -> Vec<Vec<usize>> {
        let mut at: Vec<Vec<(f64, usize)>> = vec![Vec::new(); self.vertices.len()];
        for (e, edge) in edges.iter().enumerate() {
            for end in 0..2 {
                at[edge.ends[end]].push((edge.angles[end], 2 * e + end));
            }
        }
        at.into_iter()
            .filter(|a| !a.is_empty())
            .map(|mut a| {
                a.sort_by(|x, y| x.0.total_cmp(&y.0));
                a.into_iter().map(|(_, h)| h).collect()
            })
            .collect()
    }

    /// Ribbon graph of the drawing, every drawn edge of length `edge_length`.
    pub fn ribbon_graph(&self, edge_length: Option<&Rational>) -> RibbonGraph {
        let edges = self.edges();
        let pairs: Vec<[usize; 2]> = (0..edges.len()).map(|e| [2 * e, 2 * e + 1]).collect();
        let lengths = edge_length.map(|l| vec![l.clone(); edges.len()]);
        RibbonGraph::from_cycles(&self.rotations(&edges), &pairs, lengths).expect("drawing is a connected map")
    }

    /// Dessin with one dart per drawn edge. Panics on an edge joining equal colours.
    pub fn dessin(&self, segment: Segment) -> Dessin {
        let edges = self.edges();
        let mut black = Vec::new();
        let mut white = Vec::new();
        for cycle in self.rotations(&edges) {
            let v = edges[cycle[0] / 2].ends[cycle[0] % 2];
            let darts: Vec<usize> = cycle.iter().map(|h| h / 2).collect();
            match self.vertices[v].1 {
                Some(true) => black.push(darts),
                Some(false) => white.push(darts),
                None => panic!("uncoloured vertex in a dessin drawing"),
            }
        }
        for e in &edges {
            assert_ne!(self.vertices[e.ends[0]].1, self.vertices[e.ends[1]].1, "edge joins equal colours");
        }
        Dessin::from_cycles(edges.len(), &black, &white, segment).expect("drawing is a connected dessin")
    }
}

fn straight(d: &mut Drawing, segments: &[(Pt, Pt)]) {
    for &(p, q) in segments {
        d.curve(line(p, q));
    }
}

/// Two vertices joined by four parallel edges.
pub fn two_double_zeros() -> Drawing {
    let mut d = Drawing::default();
    d.vertex((-2.0, 0.0), None).vertex((2.0, 0.0), None);
    d.curve(arc((2.0, 0.0), 20.0, 160.0, 2.13, 0.5))
        .curve(arc((-2.0, 0.0), 200.0, 340.0, 2.13, 0.5))
        .curve(arc((2.0, 0.0), 40.0, 140.0, 2.61, 2.5))
        .curve(arc((-2.0, 0.0), 220.0, 320.0, 2.61, 2.5));
    d
}

/// The complete graph on four vertices drawn with one vertex inside.
pub fn four_simple_zeros() -> Drawing {
    let mut d = Drawing::default();
    let (c, s, r, l) = ((0.0, 0.3), (0.0, -1.0), (1.0, 1.0), (-1.0, 1.0));
    for p in [c, s, r, l] {
        d.vertex(p, None);
    }
    straight(&mut d, &[(c, r), (c, s), (c, l), (r, s), (s, l), (l, r)]);
    d
}

/// Two lenses joined by two parallel edges.
pub fn fake_graph() -> Drawing {
    let mut d = Drawing::default();
    for p in [(1.0, 0.0), (-1.0, 0.0), (1.0, 1.0), (-1.0, 1.0)] {
        d.vertex(p, None);
    }
    d.curve(arc((1.0, 0.0), 20.0, 160.0, 1.06, 0.25))
        .curve(arc((-1.0, 0.0), 200.0, 340.0, 1.06, 0.25))
        .curve(arc((1.0, 1.0), 20.0, 160.0, 1.06, 0.25))
        .curve(arc((-1.0, 1.0), 200.0, 340.0, 1.06, 0.25));
    straight(&mut d, &[((-1.0, 1.0), (-1.0, 0.0)), ((1.0, 1.0), (1.0, 0.0))]);
    d
}

/// The three candidate critical graphs of the degree-12 pullbacks, drawn as
/// subdivided K4s (black over 0, white over ∞), numbered 1 to 3.
pub fn critical_graph_candidate(k: usize) -> Drawing {
    let mut d = Drawing::default();
    let (x0, whites, blacks): (f64, Vec<Pt>, Vec<Pt>) = match k {
        1 => (
            -3.0,
            vec![(-4.0, 1.0), (-2.0, 1.0), (-3.0, -0.5), (-10.0 / 3.0, -1.0 / 3.0), (-8.0 / 3.0, 1.0 / 3.0)],
            vec![(-3.0, 0.0), (-3.0, 1.0), (-3.0, -1.0), (-11.0 / 3.0, 1.0 / 3.0), (-7.0 / 3.0, 2.0 / 3.0)],
        ),
        2 => (
            0.0,
            vec![(-1.0, 1.0), (1.0, 1.0), (0.0, -0.5), (1.0 / 3.0, -1.0 / 3.0), (-1.0 / 3.0, 1.0 / 3.0)],
            vec![(0.0, 0.0), (0.0, 1.0), (0.0, -1.0), (2.0 / 3.0, 1.0 / 3.0), (-2.0 / 3.0, 2.0 / 3.0)],
        ),
        3 => (
            3.0,
            vec![(2.0, 1.0), (4.0, 1.0), (3.0, 1.0), (3.0, -0.25), (3.0, -0.75)],
            vec![(3.0, 0.0), (3.0, -1.0), (3.0, -0.5), (2.5, 1.0), (3.5, 1.0)],
        ),
        _ => panic!("candidates are numbered 1 to 3"),
    };
    whites.into_iter().for_each(|p| {
        d.vertex(p, WHITE);
    });
    blacks.into_iter().for_each(|p| {
        d.vertex(p, BLACK);
    });
    let (c, s, r, l) = ((x0, 0.0), (x0, -1.0), (x0 + 1.0, 1.0), (x0 - 1.0, 1.0));
    straight(&mut d, &[(c, r), (c, l), (c, s), (r, l), (l, s), (s, r)]);
    d
}

/// The three `[0,1]` dessins of degree-6 maps with passport (1,2,3)/(3,3)/(1,2,3),
/// numbered 1 to 3. Filled points lie over 1 and hollow points over 0.
pub fn sextic_dessin(k: usize) -> Drawing {
    let mut d = Drawing::default();
    let over0 = BLACK;
    let over1 = WHITE;
    match k {
        1 => {
            d.vertex((-5.0, 1.0), over1).vertex((-5.0, -1.0), over1);
            d.vertex((-5.0, 0.0), over0).vertex((-4.3, -1.0), over0).vertex((-5.7, 0.0), over0);
            straight(&mut d, &[((-5.0, 0.0), (-5.0, 1.0)), ((-5.0, 0.0), (-5.0, -1.0)), ((-5.0, -1.0), (-4.3, -1.0))]);
            d.curve(arc((-5.0, 1.0), 90.0, 270.0, 0.7, 1.0)).curve(arc((-5.0, 0.0), -90.0, 90.0, 0.3, 0.5));
        }
        2 => {
            d.vertex((0.0, 1.0), over1).vertex((0.0, -1.0), over1);
            d.vertex((0.0, 0.0), over0).vertex((0.7, -1.0), over0).vertex((-0.7, 0.0), over0);
            straight(
                &mut d,
                &[((0.0, 0.0), (0.0, 1.0)), ((0.0, 0.0), (0.0, -1.0)), ((0.0, -1.0), (0.7, -1.0)), ((0.0, -1.0), (-0.7, 0.0))],
            );
            d.curve(ellipse((-0.35, 0.5), 0.15, 0.57, 145.0));
        }
        3 => {
            d.vertex((5.0, 1.0), over1).vertex((5.0, -1.0), over1);
            d.vertex((5.0, 0.0), over0).vertex((5.3, -0.5), over0).vertex((5.0, 1.5), over0);
            straight(&mut d, &[((5.0, 0.0), (5.0, 1.0)), ((5.0, 0.0), (5.0, -1.0)), ((5.0, -1.0), (5.3, -0.5))]);
            d.curve(ellipse((5.0, 1.25), 0.7, 0.25, 0.0)).curve(arc((5.0, -1.0), -90.0, 90.0, 0.6, 0.5));
        }
        _ => panic!("dessins are numbered 1 to 3"),
    }
    d
}

/// The second sextic dessin redrawn over the negative axis: hollow points
/// over 0 (black) joined to the face centres over ∞ (white).
pub fn sextic_dessin_two_negative_axis() -> Drawing {
    let mut d = Drawing::default();
    for p in [(-0.7, 0.0), (0.4, 0.0), (0.0, -1.6)] {
        d.vertex(p, BLACK);
    }
    for p in [(-0.35, 0.5), (0.0, -2.0), (-0.1, 0.0)] {
        d.vertex(p, WHITE);
    }
    straight(&mut d, &[((-0.7, 0.0), (0.4, 0.0)), ((-0.7, 0.0), (-0.35, 0.5)), ((0.0, -1.6), (0.0, -2.0))]);
    d.curve(arc((0.0, -2.0), -90.0, 45.0, 0.6, 1.2)).curve(arc((-0.7, 0.0), 150.0, 270.0, 0.8, 1.35));
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drawings_split_into_expected_edges() {
        assert_eq!(two_double_zeros().edges().len(), 4);
        assert_eq!(four_simple_zeros().edges().len(), 6);
        assert_eq!(fake_graph().edges().len(), 6);
        for k in 1..=3 {
            assert_eq!(critical_graph_candidate(k).edges().len(), 12);
            assert_eq!(sextic_dessin(k).edges().len(), 6);
        }
        assert_eq!(sextic_dessin_two_negative_axis().edges().len(), 6);
    }
}
