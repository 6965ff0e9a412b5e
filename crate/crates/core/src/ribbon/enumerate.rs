//! Exhaustive enumeration of ribbon graphs with prescribed vertex degrees.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::perm::Perm;
use super::RibbonGraph;
use crate::error::{Error, Result};

/// Largest number of half-edges accepted by [`enumerate`].
pub const MAX_HALF_EDGES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub genus: usize,
    pub faces: usize,
    pub loopless: bool,
}

/// Relabelling of the half-edges in breadth-first order from `start`,
/// encoded as the images of sigma and alpha.
fn code_from(g: &RibbonGraph, start: usize) -> Vec<usize> {
    let n = g.half_edge_count();
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    label[start] = 0;
    order.push(start);
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for y in [g.sigma()[x], g.alpha()[x]] {
            if label[y] == usize::MAX {
                label[y] = order.len();
                order.push(y);
            }
        }
        i += 1;
    }
    order.iter().flat_map(|&x| [label[g.sigma()[x]], label[g.alpha()[x]]]).collect()
}

/// Orientation-preserving isomorphism invariant that separates classes.
pub fn canonical_code(g: &RibbonGraph) -> Vec<usize> {
    (0..g.half_edge_count()).map(|s| code_from(g, s)).min().unwrap_or_default()
}

/// Rotation with consecutive blocks `[0..d0), [d0..d0+d1), ...`.
pub fn block_rotation(degrees: &[usize]) -> Perm {
    let mut sigma = Vec::new();
    let mut base = 0;
    for &d in degrees {
        sigma.extend((0..d).map(|k| base + (k + 1) % d));
        base += d;
    }
    sigma
}

/// Every fixed-point-free involution on `0..n`.
pub fn perfect_matchings(n: usize) -> Vec<Perm> {
    fn go(alpha: &mut Perm, out: &mut Vec<Perm>) {
        let Some(i) = alpha.iter().position(|&x| x == usize::MAX) else {
            out.push(alpha.clone());
            return;
        };
        for j in i + 1..alpha.len() {
            if alpha[j] == usize::MAX {
                alpha[i] = j;
                alpha[j] = i;
                go(alpha, out);
                alpha[i] = usize::MAX;
                alpha[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    if n % 2 == 0 {
        go(&mut vec![usize::MAX; n], &mut out);
    }
    out
}

/// Connected ribbon graphs with the given vertex degrees, genus and number of
/// faces, one per orientation-preserving isomorphism class, in canonical order.
pub fn enumerate(degrees: &[usize], opts: &EnumerateOptions) -> Result<Vec<RibbonGraph>> {
    let n: usize = degrees.iter().sum();
    if n > MAX_HALF_EDGES {
        return Err(Error::TooLarge { half_edges: n, cap: MAX_HALF_EDGES });
    }
    if n % 2 == 1 || degrees.contains(&0) {
        return Ok(Vec::new());
    }
    let sigma = block_rotation(degrees);
    let codes: BTreeSet<Vec<usize>> = perfect_matchings(n)
        .into_par_iter()
        .filter_map(|alpha| {
            let g = RibbonGraph::build(sigma.clone(), alpha, None).ok()?;
            let keep = g.genus() == opts.genus && g.face_count() == opts.faces && !(opts.loopless && g.has_loop());
            keep.then(|| canonical_code(&g))
        })
        .collect();
    Ok(codes.into_iter().map(|c| from_code(&c)).collect())
}

fn from_code(code: &[usize]) -> RibbonGraph {
    let sigma = code.iter().step_by(2).copied().collect();
    let alpha = code.iter().skip(1).step_by(2).copied().collect();
    RibbonGraph::build(sigma, alpha, None).expect("codes come from valid graphs")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matchings_count() {
        assert_eq!(perfect_matchings(6).len(), 15);
        assert_eq!(perfect_matchings(12).len(), 10395);
    }

    #[test]
    fn code_round_trips() {
        let g = RibbonGraph::from_cycles(&[vec![0, 2, 4], vec![1, 5, 3]], &[[0, 1], [2, 3], [4, 5]], None).unwrap();
        let h = from_code(&canonical_code(&g));
        assert!(g.is_isomorphic(&h, false));
        assert_eq!(canonical_code(&h), canonical_code(&g));
    }

    #[test]
    fn refuses_large() {
        let opts = EnumerateOptions { genus: 0, faces: 2, loopless: false };
        assert_eq!(enumerate(&[7, 7], &opts), Err(Error::TooLarge { half_edges: 14, cap: 12 }));
    }
}
