//! Orientation-preserving automorphisms of ribbon graphs.

use std::collections::BTreeSet;

use serde::Serialize;

use super::perm::{self, Perm};
use super::RibbonGraph;

/// Every half-edge permutation commuting with sigma and alpha, optionally
/// also preserving edge lengths. Sorted, identity first.
pub fn all_automorphisms(g: &RibbonGraph, respect_lengths: bool) -> Vec<Perm> {
    let mut out: Vec<Perm> =
        (0..g.half_edge_count()).filter_map(|t| g.isomorphism_from(g, 0, t, respect_lengths)).collect();
    out.sort();
    out
}

/// A small generating set, chosen greedily in sorted order.
pub fn generators(elements: &[Perm]) -> Vec<Perm> {
    let Some(first) = elements.first() else {
        return Vec::new();
    };
    let n = first.len();
    let mut span: BTreeSet<Perm> = BTreeSet::from([perm::identity(n)]);
    let mut gens = Vec::new();
    for x in elements {
        if span.contains(x) {
            continue;
        }
        gens.push(x.clone());
        let mut frontier: Vec<Perm> = span.iter().cloned().collect();
        while let Some(y) = frontier.pop() {
            for g in &gens {
                let z = perm::compose(g, &y);
                if span.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
    }
    gens
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismReport {
    pub order: usize,
    pub generators: Vec<Perm>,
    /// Automorphisms sending every face to itself.
    pub face_fixing_order: usize,
    /// Automorphisms that also preserve edge lengths, when lengths are set.
    pub length_preserving_order: Option<usize>,
}

pub fn automorphisms(g: &RibbonGraph) -> AutomorphismReport {
    let all = all_automorphisms(g, false);
    let face_fixing = all.iter().filter(|a| (0..a.len()).all(|h| g.face_of(a[h]) == g.face_of(h))).count();
    AutomorphismReport {
        order: all.len(),
        generators: generators(&all),
        face_fixing_order: face_fixing,
        length_preserving_order: g.lengths().map(|_| all_automorphisms(g, true).len()),
    }
}

/// How automorphisms act on abstract edge labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelAction {
    /// Automorphisms carrying label classes onto label classes.
    pub compatible: usize,
    /// Those acting trivially on the labels.
    pub kernel: usize,
    /// Distinct induced permutations of the labels (`perm[l]` is the image of label `l`).
    pub permutations: Vec<Vec<usize>>,
}

impl LabelAction {
    /// Order of the group induced on the labels.
    pub fn order(&self) -> usize {
        self.permutations.len()
    }
}

/// The action on labels `labels[e] ∈ 0..k` of automorphisms that may permute
/// faces and labels but respect the partition of edges into label classes.
pub fn label_action(g: &RibbonGraph, labels: &[usize]) -> LabelAction {
    let k = labels.iter().max().map_or(0, |m| m + 1);
    let mut perms = BTreeSet::new();
    let (mut compatible, mut kernel) = (0, 0);
    for a in all_automorphisms(g, false) {
        let mut image = vec![usize::MAX; k];
        let ok = g.edges().iter().enumerate().all(|(e, [h, _])| {
            let (from, to) = (labels[e], labels[g.edge_of(a[*h])]);
            if image[from] == usize::MAX {
                image[from] = to;
            }
            image[from] == to
        });
        if ok && perm::is_permutation(&image) {
            compatible += 1;
            if image.iter().enumerate().all(|(i, &x)| i == x) {
                kernel += 1;
            }
            perms.insert(image);
        }
    }
    LabelAction { compatible, kernel, permutations: perms.into_iter().collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over all bijections of the half-edges.
    fn brute(g: &RibbonGraph) -> usize {
        let n = g.half_edge_count();
        let mut p: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            let commutes = (0..n).all(|h| p[g.sigma()[h]] == g.sigma()[p[h]] && p[g.alpha()[h]] == g.alpha()[p[h]]);
            let lengths_ok = g.lengths().map_or(true, |l| (0..n).all(|h| l[g.edge_of(h)] == l[g.edge_of(p[h])]));
            if commutes && lengths_ok {
                count += 1;
            }
            // next permutation in lexicographic order
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
                return count;
            };
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
            p.swap(i, j);
            p[i + 1..].reverse();
        }
    }

    #[test]
    fn theta_order_six() {
        let g = RibbonGraph::from_cycles(&[vec![0, 2, 4], vec![1, 5, 3]], &[[0, 1], [2, 3], [4, 5]], None).unwrap();
        let r = automorphisms(&g);
        assert_eq!(r.order, 6);
        assert_eq!(brute(&g), 6);
        assert_eq!(r.face_fixing_order, 1);
        assert!(r.generators.len() <= 2);
    }

    #[test]
    fn generators_span() {
        let g = RibbonGraph::from_cycles(&[vec![0, 2, 4], vec![1, 5, 3]], &[[0, 1], [2, 3], [4, 5]], None).unwrap();
        let all = all_automorphisms(&g, false);
        let gens = generators(&all);
        let mut span = BTreeSet::from([perm::identity(6)]);
        let mut frontier = vec![perm::identity(6)];
        while let Some(y) = frontier.pop() {
            for x in &gens {
                let z = perm::compose(x, &y);
                if span.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
        assert_eq!(span.into_iter().collect::<Vec<_>>(), all);
    }

    #[test]
    fn parallel_edges_against_brute_force() {
        let g = crate::ribbon::figures::two_double_zeros().ribbon_graph(None);
        assert_eq!(all_automorphisms(&g, false).len(), brute(&g));
        let lengths = [(1, 10), (9, 10), (3, 10), (7, 10)].map(rug::Rational::from).to_vec();
        let g = g.with_lengths(lengths).unwrap();
        assert_eq!(brute(&g), 1);
        assert_eq!(all_automorphisms(&g, true).len(), 1);
    }
}
