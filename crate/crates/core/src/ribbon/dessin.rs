//! Dessins as permutation pairs on darts, the colour change between the
//! segments `[0,1]` and `[∞,0]`, branched double covers and the dessins
//! realising a metric on the complete graph K4.

use std::fmt;

use rug::{Integer, Rational};
use serde::Serialize;

use super::perm::{self, Perm};
use super::RibbonGraph;
use crate::belyi::{min_degree, MinDegreeResult, Passport};
use crate::error::{Error, Result};

/// Which segment of the real line the edges of a dessin cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Segment {
    /// Edges over `[0,1]`: black over 0, white over 1, faces over ∞.
    ZeroOne,
    /// Edges over the negative axis `[∞,0]`: black over 0, white over ∞, faces over 1.
    InfZero,
}

/// Darts `0..n` with counterclockwise rotations `sigma0` at black and
/// `sigma1` at white vertices. Faces are the cycles of `sigma0 ∘ sigma1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dessin {
    sigma0: Perm,
    sigma1: Perm,
    segment: Segment,
}

impl Dessin {
    pub fn new(sigma0: Perm, sigma1: Perm, segment: Segment) -> Result<Self> {
        let n = sigma0.len();
        if n == 0 || sigma1.len() != n || !perm::is_permutation(&sigma0) || !perm::is_permutation(&sigma1) {
            return Err(Error::MalformedGraph("dessin needs two permutations of the same darts".into()));
        }
        if !perm::is_transitive(n, &[&sigma0, &sigma1]) {
            return Err(Error::MalformedGraph("dessin is not connected".into()));
        }
        let d = Dessin { sigma0, sigma1, segment };
        let (b, w, f) = d.cycle_types();
        assert!(
            b.iter().sum::<usize>() == n && w.iter().sum::<usize>() == n && f.iter().sum::<usize>() == n,
            "cycle types must each sum to the degree"
        );
        Ok(d)
    }

    pub fn from_cycles(n: usize, black: &[Vec<usize>], white: &[Vec<usize>], segment: Segment) -> Result<Self> {
        Self::new(perm::from_cycles(n, black)?, perm::from_cycles(n, white)?, segment)
    }

    pub fn degree(&self) -> usize {
        self.sigma0.len()
    }
    pub fn sigma0(&self) -> &[usize] {
        &self.sigma0
    }
    pub fn sigma1(&self) -> &[usize] {
        &self.sigma1
    }
    pub fn segment(&self) -> Segment {
        self.segment
    }

    pub fn face_permutation(&self) -> Perm {
        perm::compose(&self.sigma0, &self.sigma1)
    }

    /// Cycle types of black vertices, white vertices and faces.
    pub fn cycle_types(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        (perm::cycle_type(&self.sigma0), perm::cycle_type(&self.sigma1), perm::cycle_type(&self.face_permutation()))
    }

    /// Ramification over 0, 1 and ∞ of the Belyi map the dessin draws.
    pub fn passport(&self) -> Passport {
        let (b, w, f) = self.cycle_types();
        match self.segment {
            Segment::ZeroOne => Passport::new(b, w, f),
            Segment::InfZero => Passport::new(b, f, w),
        }
    }

    pub fn genus(&self) -> usize {
        let (b, w, f) = self.cycle_types();
        let chi = (b.len() + w.len() + f.len()) as i64 - self.degree() as i64;
        ((2 - chi) / 2) as usize
    }

    /// The same cover drawn over the negative axis: black vertices keep their
    /// rotation and the old face centres become the white vertices.
    pub fn negative_axis(&self) -> Result<Dessin> {
        if self.segment != Segment::ZeroOne {
            return Err(Error::Domain("dessin is already drawn over the negative axis".into()));
        }
        let white = perm::compose(&perm::inverse(&self.sigma0), &perm::inverse(&self.sigma1));
        Dessin::new(self.sigma0.clone(), white, Segment::InfZero)
    }

    /// Colour- and orientation-preserving isomorphism.
    pub fn is_isomorphic(&self, other: &Dessin) -> bool {
        self.segment == other.segment
            && self.degree() == other.degree()
            && self.cycle_types() == other.cycle_types()
            && (0..self.degree()).any(|t| {
                perm::conjugating_map(&[(&self.sigma0, &other.sigma0), (&self.sigma1, &other.sigma1)], 0, t).is_some()
            })
    }

    /// The pullback under a degree-two map branched exactly at the black
    /// vertex through dart `black` and the white vertex through dart `white`.
    pub fn branched_double_cover(&self, black: usize, white: usize) -> Result<Dessin> {
        let n = self.degree();
        let (bi, wi) = (perm::cycle_index(&self.sigma0), perm::cycle_index(&self.sigma1));
        // unknowns: v0[0..n] then v1[0..n]; each row is (coefficients, rhs)
        let mut rows: Vec<(Vec<bool>, bool)> = Vec::new();
        for c in perm::cycles(&self.sigma0) {
            let mut r = vec![false; 2 * n];
            c.iter().for_each(|&x| r[x] = true);
            rows.push((r, bi[c[0]] == bi[black]));
        }
        for c in perm::cycles(&self.sigma1) {
            let mut r = vec![false; 2 * n];
            c.iter().for_each(|&x| r[n + x] = true);
            rows.push((r, wi[c[0]] == wi[white]));
        }
        for c in perm::cycles(&self.face_permutation()) {
            let mut r = vec![false; 2 * n];
            for &x in &c {
                r[n + x] ^= true;
                r[self.sigma1[x]] ^= true;
            }
            rows.push((r, false));
        }
        let v = solve_gf2(rows, 2 * n)
            .ok_or_else(|| Error::Domain("no double cover with that branching".into()))?;
        let lift = |p: &[usize], offset: usize| -> Perm {
            (0..2 * n)
                .map(|x| {
                    let (t, s) = (x % n, x / n);
                    p[t] + n * (s ^ usize::from(v[offset + t]))
                })
                .collect()
        };
        Dessin::new(lift(&self.sigma0, 0), lift(&self.sigma1, n), self.segment)
    }

    /// The underlying map with every dart an edge, black ends at half-edge
    /// `2d` and white ends at `2d + 1`.
    pub fn to_ribbon_graph(&self, dart_length: Option<&Rational>) -> RibbonGraph {
        let n = self.degree();
        let mut sigma = vec![0; 2 * n];
        let mut alpha = vec![0; 2 * n];
        for d in 0..n {
            sigma[2 * d] = 2 * self.sigma0[d];
            sigma[2 * d + 1] = 2 * self.sigma1[d] + 1;
            alpha[2 * d] = 2 * d + 1;
            alpha[2 * d + 1] = 2 * d;
        }
        let lengths = dart_length.map(|l| vec![l.clone(); n]);
        RibbonGraph::build(sigma, alpha, lengths).expect("a dessin is a valid ribbon graph")
    }

    /// The metric critical graph: darts of equal length, each face of
    /// perimeter one, degree-two vertices erased.
    pub fn metric_graph(&self) -> Result<RibbonGraph> {
        let face_sizes = perm::cycle_type(&self.face_permutation());
        if face_sizes.first() != face_sizes.last() {
            return Err(Error::Domain(format!("faces of unequal size {face_sizes:?}")));
        }
        let len = Rational::from((1, 2 * face_sizes[0] as u32));
        Ok(self.to_ribbon_graph(Some(&len)).smooth_degree_two())
    }
}

impl fmt::Display for Dessin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {} genus {} passport {}", self.degree(), self.genus(), self.passport())
    }
}

fn solve_gf2(mut rows: Vec<(Vec<bool>, bool)>, cols: usize) -> Option<Vec<bool>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[c]) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0[c] {
                row.0.iter_mut().zip(&pivot.0).for_each(|(x, y)| *x ^= y);
                row.1 ^= pivot.1;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row.1) {
        return None;
    }
    let mut x = vec![false; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i].1;
    }
    Some(x)
}

/// Counterclockwise neighbour order at each vertex of a planar K4.
pub const K4_ROTATION: [[usize; 3]; 4] = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]];

/// K4 edges as vertex pairs; edges `k` and `5 - k` are opposite.
pub const K4_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index into `(a, b, c)` of the length carried by each K4 edge.
pub const K4_EDGE_CLASS: [usize; 6] = [0, 1, 2, 2, 1, 0];

/// The planar K4 with opposite edges of lengths `a`, `b`, `c`.
pub fn k4_graph(lengths: Option<[&Rational; 3]>) -> RibbonGraph {
    let half = |v: usize, u: usize| {
        let e = K4_EDGES.iter().position(|&(x, y)| (x, y) == (v.min(u), v.max(u))).unwrap();
        2 * e + usize::from(v > u)
    };
    let rotations: Vec<Vec<usize>> =
        (0..4).map(|v| K4_ROTATION[v].iter().map(|&u| half(v, u)).collect()).collect();
    let pairs: Vec<[usize; 2]> = (0..6).map(|e| [2 * e, 2 * e + 1]).collect();
    let lengths = lengths.map(|l| K4_EDGE_CLASS.iter().map(|&k| l[k].clone()).collect());
    RibbonGraph::from_cycles(&rotations, &pairs, lengths).expect("K4 is a valid ribbon graph")
}

#[derive(Clone, Debug)]
pub struct MetricDessin {
    pub dessin: Dessin,
    pub min_degree: MinDegreeResult,
}

/// Subdivides each K4 edge of length `p` into `d·p` segments (`2d·p` when
/// `d` is odd) with alternating colours, `d` the common denominator.
pub fn dessin_from_metric(a: &Rational, b: &Rational, c: &Rational) -> Result<MetricDessin> {
    let md = min_degree(a, b, c)?;
    let d = Integer::from(md.d);
    let counts: Vec<usize> = [a, b, c]
        .iter()
        .map(|p| {
            let k = Rational::from(*p * &d);
            k.numer().to_usize().expect("positive segment count")
        })
        .collect();
    let odd = md.d % 2 == 1;
    let segments: Vec<usize> =
        K4_EDGE_CLASS.iter().map(|&k| if odd { 2 * counts[k] } else { counts[k] }).collect();
    // colour of each K4 vertex: true for black
    let colour: [bool; 4] = if odd {
        [true; 4]
    } else {
        let even_class = (0..3).find(|&k| counts[k] % 2 == 0).expect("one class has even count");
        let (i, j) = K4_EDGES[K4_EDGE_CLASS.iter().position(|&k| k == even_class).unwrap()];
        let mut col = [false; 4];
        col[i] = true;
        col[j] = true;
        col
    };
    // darts of edge e are numbered from its first endpoint
    let offsets: Vec<usize> = segments.iter().scan(0, |acc, &k| Some(std::mem::replace(acc, *acc + k))).collect();
    let n: usize = segments.iter().sum();
    let mut black: Vec<Vec<usize>> = Vec::new();
    let mut white: Vec<Vec<usize>> = Vec::new();
    for v in 0..4 {
        let cycle: Vec<usize> = K4_ROTATION[v]
            .iter()
            .map(|&u| {
                let e = K4_EDGES.iter().position(|&(x, y)| (x, y) == (v.min(u), v.max(u))).unwrap();
                if v < u { offsets[e] } else { offsets[e] + segments[e] - 1 }
            })
            .collect();
        if colour[v] { black.push(cycle) } else { white.push(cycle) }
    }
    for (e, &(i, _)) in K4_EDGES.iter().enumerate() {
        for m in 1..segments[e] {
            let point_black = colour[i] ^ (m % 2 == 1);
            let pair = vec![offsets[e] + m - 1, offsets[e] + m];
            if point_black { black.push(pair) } else { white.push(pair) }
        }
    }
    let dessin = Dessin::from_cycles(n, &black, &white, Segment::InfZero)?;
    if dessin.genus() != 0 || dessin.degree() as u64 != md.min_degree {
        return Err(Error::Verification(format!("subdivided K4 gave {dessin}, expected degree {}", md.min_degree)));
    }
    Ok(MetricDessin { dessin, min_degree: md })
}

/// Passport `(1,2,3)/(3,3)/(1,2,3)` over 0, 1, ∞ of the degree-6 maps whose
/// even pullbacks give the four-zero critical graphs.
pub fn sextic_passport() -> Passport {
    Passport::new(vec![1, 2, 3], vec![3, 3], vec![1, 2, 3])
}

/// Critical graph of `g(M(x²))` from the `[0,1]` dessin of a degree-6 map
/// `g`: redraw over the negative axis, lift through the double cover
/// branched at the simple zero and the simple pole, and erase the
/// degree-two vertices.
pub fn dual_graph_correspondence(d: &Dessin) -> Result<RibbonGraph> {
    if d.segment() != Segment::ZeroOne || d.passport() != sextic_passport() {
        return Err(Error::Domain(format!("unsupported dessin: {d}")));
    }
    let neg = d.negative_axis()?;
    let simple_zero = (0..6).find(|&x| neg.sigma0()[x] == x).expect("passport has a simple zero");
    let simple_pole = (0..6).find(|&x| neg.sigma1()[x] == x).expect("passport has a simple pole");
    let cover = neg.branched_double_cover(simple_zero, simple_pole)?;
    let expected = Passport::new(vec![2, 2, 2, 3, 3], vec![3, 3, 3, 3], vec![2, 2, 2, 3, 3]);
    if cover.passport() != expected || cover.genus() != 0 {
        return Err(Error::Verification(format!("double cover has {cover}")));
    }
    cover.metric_graph()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belyi::{catalog, passport};

    fn q(p: i64, r: i64) -> Rational {
        Rational::from((p, r))
    }

    #[test]
    fn k4_is_planar() {
        let g = k4_graph(None);
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count(), g.genus()), (4, 6, 4, 0));
        assert!(!g.has_loop());
    }

    #[test]
    fn negative_axis_of_square() {
        // z^2: one black vertex of degree 2, two white leaves
        let d = Dessin::from_cycles(2, &[vec![0, 1]], &[vec![0], vec![1]], Segment::ZeroOne).unwrap();
        let n = d.negative_axis().unwrap();
        assert_eq!(n.passport(), d.passport());
        assert_eq!(n.cycle_types().1, vec![2]);
    }

    #[test]
    fn metric_dessins_match_catalog() {
        let deg8 = dessin_from_metric(&q(1, 2), &q(1, 4), &q(1, 4)).unwrap();
        assert_eq!(deg8.dessin.degree(), 8);
        let p8 = passport(&catalog("deg8").unwrap(), 128).unwrap().passport;
        assert_eq!(deg8.dessin.passport(), p8);

        let theta = dessin_from_metric(&q(1, 3), &q(1, 3), &q(1, 3)).unwrap();
        assert_eq!(theta.dessin.degree(), 12);
        let p12 = passport(&catalog("deg12theta").unwrap(), 128).unwrap().passport;
        assert_eq!(theta.dessin.passport(), p12);
    }

    #[test]
    fn metric_dessin_recovers_lengths() {
        for (a, b, c) in [(q(1, 2), q(1, 4), q(1, 4)), (q(1, 3), q(1, 6), q(1, 2)), (q(2, 5), q(1, 5), q(2, 5))] {
            let md = dessin_from_metric(&a, &b, &c).unwrap();
            let g = md.dessin.metric_graph().unwrap();
            assert!(g.is_isomorphic(&k4_graph(Some([&a, &b, &c])), true), "{a} {b} {c}");
        }
    }

    #[test]
    fn degree_matches_min_degree() {
        for d in 2..=12i64 {
            for x in 1..d {
                for y in 1..d - x {
                    let (a, b, c) = (q(x, d), q(y, d), q(d - x - y, d));
                    let md = dessin_from_metric(&a, &b, &c).unwrap();
                    assert_eq!(md.dessin.degree() as u64, md.min_degree.min_degree);
                    assert_eq!(md.dessin.genus(), 0);
                }
            }
        }
    }

    #[test]
    fn unsupported_dessin() {
        let d = Dessin::from_cycles(2, &[vec![0, 1]], &[vec![0], vec![1]], Segment::ZeroOne).unwrap();
        assert!(matches!(dual_graph_correspondence(&d), Err(Error::Domain(_))));
    }
}
