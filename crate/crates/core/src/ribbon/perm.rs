//! Permutations of `0..n` stored as image vectors.

use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// `i -> a[b[i]]`: apply `b` first.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Cycles, each starting at its least element, ordered by that element.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        out.push(cycle);
    }
    out
}

/// Sorted cycle lengths.
pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = cycles(p).iter().map(Vec::len).collect();
    t.sort_unstable();
    t
}

/// Index of the cycle containing each point.
pub fn cycle_index(p: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; p.len()];
    for (k, c) in cycles(p).iter().enumerate() {
        for &x in c {
            idx[x] = k;
        }
    }
    idx
}

pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
    let mut p = vec![usize::MAX; n];
    for c in cycles {
        for (k, &x) in c.iter().enumerate() {
            if x >= n || p[x] != usize::MAX {
                return Err(Error::MalformedGraph(format!("point {x} repeated or out of range in cycles")));
            }
            p[x] = c[(k + 1) % c.len()];
        }
    }
    if let Some(x) = p.iter().position(|&y| y == usize::MAX) {
        return Err(Error::MalformedGraph(format!("point {x} missing from cycles")));
    }
    Ok(p)
}

/// Whether the group generated by `gens` acts transitively on `0..n`.
pub fn is_transitive(n: usize, gens: &[&[usize]]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g[x];
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// The bijection `m` with `m[g[x]] = h[m[x]]` for each paired generator and
/// `m[from] = to`, if it exists. The generators must act transitively.
pub fn conjugating_map(gens: &[(&[usize], &[usize])], from: usize, to: usize) -> Option<Perm> {
    let n = gens.first()?.0.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[from] = to;
    used[to] = true;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        for (g, h) in gens {
            let (y, y2) = (g[x], h[map[x]]);
            if map[y] == usize::MAX {
                if used[y2] {
                    return None;
                }
                map[y] = y2;
                used[y2] = true;
                stack.push(y);
            } else if map[y] != y2 {
                return None;
            }
        }
    }
    map.iter().all(|&y| y != usize::MAX).then_some(map)
}
