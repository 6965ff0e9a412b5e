use std::collections::BTreeMap;
use std::fmt;

use rug::Rational;
use serde::{Deserialize, Serialize};

use super::perm::{self, Perm};
use crate::error::{Error, Result};
use crate::exactnum::parse_rational;

/// A connected ribbon graph on half-edges `0..2E`: `sigma` rotates
/// counterclockwise around vertices, `alpha` swaps the ends of each edge and
/// faces are the cycles of `sigma ∘ alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct RibbonGraph {
    sigma: Perm,
    alpha: Perm,
    lengths: Option<Vec<Rational>>,
    vertices: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
    faces: Vec<Vec<usize>>,
    vertex_of: Vec<usize>,
    edge_of: Vec<usize>,
    face_of: Vec<usize>,
    genus: usize,
}

impl RibbonGraph {
    /// Validates the permutations and computes vertices, edges, faces and
    /// genus. Edges are numbered by their smaller half-edge and `lengths`, if
    /// given, follows that numbering.
    pub fn build(sigma: Perm, alpha: Perm, lengths: Option<Vec<Rational>>) -> Result<Self> {
        let n = sigma.len();
        if alpha.len() != n {
            return Err(Error::MalformedGraph(format!("sigma has {n} points, alpha {}", alpha.len())));
        }
        if n == 0 {
            return Err(Error::MalformedGraph("no half-edges".into()));
        }
        if !perm::is_permutation(&sigma) || !perm::is_permutation(&alpha) {
            return Err(Error::MalformedGraph("sigma and alpha must be permutations".into()));
        }
        for h in 0..n {
            if alpha[h] == h {
                return Err(Error::MalformedGraph(format!("alpha fixes half-edge {h}")));
            }
            if alpha[alpha[h]] != h {
                return Err(Error::MalformedGraph(format!("alpha is not an involution at {h}")));
            }
        }
        if !perm::is_transitive(n, &[&sigma, &alpha]) {
            return Err(Error::MalformedGraph("graph is not connected".into()));
        }
        let phi = perm::compose(&sigma, &alpha);
        let vertices = perm::cycles(&sigma);
        let edges: Vec<[usize; 2]> = perm::cycles(&alpha).iter().map(|c| [c[0], c[1]]).collect();
        let faces = perm::cycles(&phi);
        if let Some(l) = &lengths {
            if l.len() != edges.len() {
                return Err(Error::MalformedGraph(format!("{} lengths for {} edges", l.len(), edges.len())));
            }
            if l.iter().any(|x| x.cmp0().is_le()) {
                return Err(Error::MalformedGraph("edge lengths must be positive".into()));
            }
        }
        let chi = vertices.len() as i64 - edges.len() as i64 + faces.len() as i64;
        let genus = ((2 - chi) / 2) as usize;
        Ok(RibbonGraph {
            vertex_of: perm::cycle_index(&sigma),
            edge_of: perm::cycle_index(&alpha),
            face_of: perm::cycle_index(&phi),
            sigma,
            alpha,
            lengths,
            vertices,
            edges,
            faces,
            genus,
        })
    }

    /// Builds from the rotation of each vertex (half-edge cycles) and the edge pairs.
    pub fn from_cycles(rotations: &[Vec<usize>], pairs: &[[usize; 2]], lengths: Option<Vec<Rational>>) -> Result<Self> {
        let n = 2 * pairs.len();
        let sigma = perm::from_cycles(n, rotations)?;
        let alpha = perm::from_cycles(n, &pairs.iter().map(|p| p.to_vec()).collect::<Vec<_>>())?;
        Self::build(sigma, alpha, lengths)
    }

    pub fn with_lengths(&self, lengths: Vec<Rational>) -> Result<Self> {
        Self::build(self.sigma.clone(), self.alpha.clone(), Some(lengths))
    }

    pub fn without_lengths(&self) -> Self {
        RibbonGraph { lengths: None, ..self.clone() }
    }

    pub fn half_edge_count(&self) -> usize {
        self.sigma.len()
    }
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
    pub fn genus(&self) -> usize {
        self.genus
    }
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }
    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }
    pub fn lengths(&self) -> Option<&[Rational]> {
        self.lengths.as_deref()
    }
    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }
    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }
    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }
    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_of[h]
    }
    pub fn face_of(&self, h: usize) -> usize {
        self.face_of[h]
    }

    /// Sorted vertex degrees.
    pub fn degrees(&self) -> Vec<usize> {
        perm::cycle_type(&self.sigma)
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|[a, b]| self.vertex_of[*a] == self.vertex_of[*b])
    }

    /// `incidence[f][e]`: how many sides of edge `e` lie on face `f` (0, 1 or 2).
    pub fn face_edge_incidence(&self) -> Vec<Vec<u32>> {
        let mut m = vec![vec![0; self.edge_count()]; self.face_count()];
        for h in 0..self.half_edge_count() {
            m[self.face_of[h]][self.edge_of[h]] += 1;
        }
        m
    }

    /// Perimeter of each face; an edge with the face on both sides counts twice.
    pub fn boundary_lengths(&self) -> Option<Vec<Rational>> {
        let l = self.lengths.as_ref()?;
        Some(
            self.faces
                .iter()
                .map(|f| f.iter().fold(Rational::new(), |acc, &h| acc + &l[self.edge_of[h]]))
                .collect(),
        )
    }

    /// Same graph with the opposite orientation.
    pub fn mirror(&self) -> Self {
        Self::build(perm::inverse(&self.sigma), self.alpha.clone(), self.lengths.clone())
            .expect("mirror of a valid graph is valid")
    }

    /// Orientation-preserving isomorphism sending half-edge `from` to `to`, if
    /// one exists, as the image vector of every half-edge.
    pub fn isomorphism_from(&self, other: &RibbonGraph, from: usize, to: usize, respect_lengths: bool) -> Option<Perm> {
        let n = self.half_edge_count();
        if other.half_edge_count() != n {
            return None;
        }
        let map = perm::conjugating_map(&[(&self.sigma, &other.sigma), (&self.alpha, &other.alpha)], from, to)?;
        if respect_lengths {
            match (&self.lengths, &other.lengths) {
                (Some(a), Some(b)) => {
                    if (0..n).any(|h| a[self.edge_of[h]] != b[other.edge_of[map[h]]]) {
                        return None;
                    }
                }
                (None, None) => {}
                _ => return None,
            }
        }
        Some(map)
    }

    /// Orientation-preserving isomorphism, optionally matching edge lengths.
    pub fn isomorphism(&self, other: &RibbonGraph, respect_lengths: bool) -> Option<Perm> {
        if self.degrees() != other.degrees() || self.face_count() != other.face_count() {
            return None;
        }
        (0..other.half_edge_count()).find_map(|t| self.isomorphism_from(other, 0, t, respect_lengths))
    }

    pub fn is_isomorphic(&self, other: &RibbonGraph, respect_lengths: bool) -> bool {
        self.isomorphism(other, respect_lengths).is_some()
    }

    /// Erases every vertex of degree two, merging its two edges and adding
    /// their lengths. A component that is a bare circle keeps one vertex.
    pub fn smooth_degree_two(&self) -> Self {
        let mut g = self.clone();
        loop {
            let Some(v) = g.vertices.iter().find(|c| c.len() == 2 && g.alpha[c[0]] != c[1]) else {
                return g;
            };
            let (h1, h2) = (v[0], v[1]);
            let (a, b) = (g.alpha[h1], g.alpha[h2]);
            let n = g.half_edge_count();
            let keep: Vec<usize> = (0..n).filter(|&h| h != h1 && h != h2).collect();
            let mut new_index = vec![usize::MAX; n];
            for (i, &h) in keep.iter().enumerate() {
                new_index[h] = i;
            }
            let sigma = keep.iter().map(|&h| new_index[g.sigma[h]]).collect();
            let alpha: Perm = keep
                .iter()
                .map(|&h| match h {
                    h if h == a => new_index[b],
                    h if h == b => new_index[a],
                    h => new_index[g.alpha[h]],
                })
                .collect();
            let lengths = g.lengths.as_ref().map(|l| {
                let merged = Rational::from(&l[g.edge_of[h1]] + &l[g.edge_of[h2]]);
                perm::cycles(&alpha)
                    .iter()
                    .map(|c| {
                        let old = keep[c[0]];
                        if old == a || old == b {
                            merged.clone()
                        } else {
                            l[g.edge_of[old]].clone()
                        }
                    })
                    .collect()
            });
            g = Self::build(sigma, alpha, lengths).expect("smoothing preserves validity");
        }
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            sigma: self.vertices.clone(),
            alpha: self.edges.clone(),
            lengths: self.lengths.as_ref().map(|l| {
                self.edges.iter().zip(l).map(|(e, x)| (e[0].to_string(), x.to_string())).collect()
            }),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let n = 2 * j.alpha.len();
        let sigma = perm::from_cycles(n, &j.sigma)?;
        let alpha = perm::from_cycles(n, &j.alpha.iter().map(|p| p.to_vec()).collect::<Vec<_>>())?;
        let lengths = match &j.lengths {
            None => None,
            Some(map) => {
                let edges: Vec<[usize; 2]> = perm::cycles(&alpha).iter().map(|c| [c[0], c[1]]).collect();
                let mut out = Vec::with_capacity(edges.len());
                for e in &edges {
                    let v = map
                        .get(&e[0].to_string())
                        .or_else(|| map.get(&e[1].to_string()))
                        .ok_or_else(|| Error::MalformedGraph(format!("no length for edge {:?}", e)))?;
                    out.push(parse_rational(v)?);
                }
                if map.len() != edges.len() {
                    return Err(Error::MalformedGraph("lengths keyed by unknown half-edges".into()));
                }
                Some(out)
            }
        };
        Self::build(sigma, alpha, lengths)
    }
}

impl fmt::Display for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V={} E={} F={} genus {}",
            self.vertex_count(),
            self.edge_count(),
            self.face_count(),
            self.genus
        )?;
        if let Some(b) = self.boundary_lengths() {
            let b: Vec<String> = b.iter().map(ToString::to_string).collect();
            write!(f, " boundary ({})", b.join(", "))?;
        }
        Ok(())
    }
}

/// Serialized form: vertex rotations as cycles, edges as half-edge pairs and
/// lengths keyed by the smaller half-edge of each edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub sigma: Vec<Vec<usize>>,
    pub alpha: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<BTreeMap<String, String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> RibbonGraph {
        RibbonGraph::from_cycles(&[vec![0, 2, 4], vec![1, 5, 3]], &[[0, 1], [2, 3], [4, 5]], None).unwrap()
    }

    #[test]
    fn theta_counts() {
        let g = theta();
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count(), g.genus()), (2, 3, 3, 0));
        assert!(!g.has_loop());
    }

    #[test]
    fn malformed() {
        assert!(matches!(RibbonGraph::build(vec![0], vec![0], None), Err(Error::MalformedGraph(_))));
        let disconnected = RibbonGraph::build(vec![1, 0, 3, 2], vec![1, 0, 3, 2], None);
        assert!(matches!(disconnected, Err(Error::MalformedGraph(_))));
        assert!(RibbonGraph::build(vec![0, 1, 2], vec![1, 2, 0], None).is_err());
    }

    #[test]
    fn one_vertex_torus() {
        let g = RibbonGraph::from_cycles(&[vec![0, 2, 1, 3]], &[[0, 1], [2, 3]], None).unwrap();
        assert_eq!(g.genus(), 1);
        assert_eq!(g.face_count(), 1);
    }

    #[test]
    fn smoothing_merges_lengths() {
        let l = |p, q| Rational::from((p, q));
        let g = RibbonGraph::from_cycles(
            &[vec![0, 2, 4], vec![1, 6], vec![7, 5, 3]],
            &[[0, 1], [2, 3], [4, 5], [6, 7]],
            Some(vec![l(1, 6), l(1, 3), l(1, 2), l(1, 6)]),
        )
        .unwrap();
        let s = g.smooth_degree_two();
        assert_eq!(s.vertex_count(), 2);
        let mut lens: Vec<Rational> = s.lengths().unwrap().to_vec();
        lens.sort();
        assert_eq!(lens, vec![l(1, 3), l(1, 3), l(1, 2)]);
    }

    #[test]
    fn json_round_trip() {
        let g = theta().with_lengths(vec![Rational::from((1, 2)), Rational::from((1, 3)), Rational::from((1, 6))]).unwrap();
        let s = serde_json::to_string(&g.to_json()).unwrap();
        let back: GraphJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g.to_json());
        assert_eq!(RibbonGraph::from_json(&back).unwrap(), g);
    }

    #[test]
    fn isomorphism_relabelled() {
        let g = theta();
        let h = RibbonGraph::from_cycles(&[vec![5, 3, 1], vec![4, 0, 2]], &[[5, 4], [3, 2], [1, 0]], None).unwrap();
        assert!(g.is_isomorphic(&h, false));
        assert!(g.is_isomorphic(&g.mirror(), false));
    }
}
