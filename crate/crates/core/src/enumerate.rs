//! Isomorphism classes of small graphs, by vertex augmentation and a
//! canonical adjacency bitmask.

use std::collections::BTreeSet;

use crate::graph::{Graph, V};

/// Largest order supported (the upper triangle must fit in a `u64`).
pub const MAX_ORDER: usize = 11;

fn bit(i: usize, j: usize) -> u64 {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    1 << (b * (b - 1) / 2 + a)
}

fn adj(mask: u64, n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for b in 1..n {
        for a in 0..b {
            if mask & bit(a, b) != 0 {
                out[a] |= 1 << b;
                out[b] |= 1 << a;
            }
        }
    }
    out
}

/// Minimum relabelled mask over orderings that sort vertices by
/// (degree, sorted neighbour degrees).
pub fn canonical(mask: u64, n: usize) -> u64 {
    let a = adj(mask, n);
    let deg: Vec<u32> = a.iter().map(|x| x.count_ones()).collect();
    let inv: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n).filter(|&u| a[v] >> u & 1 == 1).map(|u| deg[u]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| inv[x].cmp(&inv[y]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    fn rec(cells: &mut [Vec<usize>], ci: usize, perm: &mut Vec<usize>, a: &[u32], best: &mut u64) {
        if ci == cells.len() {
            // perm[new position] = old vertex
            let mut m = 0u64;
            for j in 1..perm.len() {
                for i in 0..j {
                    if a[perm[i]] >> perm[j] & 1 == 1 {
                        m |= bit(i, j);
                    }
                }
            }
            *best = (*best).min(m);
            return;
        }
        let k = cells[ci].len();
        permute(cells, ci, 0, k, perm, a, best);
    }
    fn permute(cells: &mut [Vec<usize>], ci: usize, i: usize, k: usize, perm: &mut Vec<usize>, a: &[u32], best: &mut u64) {
        if i == k {
            rec(cells, ci + 1, perm, a, best);
            return;
        }
        for j in i..k {
            cells[ci].swap(i, j);
            perm.push(cells[ci][i]);
            permute(cells, ci, i + 1, k, perm, a, best);
            perm.pop();
            cells[ci].swap(i, j);
        }
    }
    rec(&mut cells, 0, &mut perm, &a, &mut best);
    best
}

pub fn mask_to_graph(mask: u64, n: usize) -> Graph {
    let mut g = Graph::with_vertices(0..n as V);
    for b in 1..n {
        for a in 0..b {
            if mask & bit(a, b) != 0 {
                g.add_edge(a as V, b as V);
            }
        }
    }
    g
}

/// Canonical masks of all graphs on exactly `n` vertices.
pub fn graph_masks(n: usize) -> BTreeSet<u64> {
    assert!(n <= MAX_ORDER, "order {n} exceeds {MAX_ORDER}");
    let mut level: BTreeSet<u64> = BTreeSet::from([0]);
    for k in 2..=n {
        let mut next = BTreeSet::new();
        for &m in &level {
            for s in 0u64..1 << (k - 1) {
                let mut x = m;
                for i in 0..k - 1 {
                    if s >> i & 1 == 1 {
                        x |= bit(i, k - 1);
                    }
                }
                next.insert(canonical(x, k));
            }
        }
        level = next;
    }
    if n == 0 {
        return BTreeSet::new();
    }
    level
}

/// One representative of each isomorphism class on exactly `n` vertices `0..n`.
pub fn graphs(n: usize) -> Vec<Graph> {
    graph_masks(n).into_iter().map(|m| mask_to_graph(m, n)).collect()
}

/// Representatives of all graphs on 1 to `n` vertices.
pub fn graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(graphs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| graph_masks(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn canonical_is_invariant() {
        // a path labelled two ways
        let p1 = bit(0, 1) | bit(1, 2) | bit(2, 3);
        let p2 = bit(2, 0) | bit(0, 3) | bit(3, 1);
        assert_eq!(canonical(p1, 4), canonical(p2, 4));
        let star = bit(0, 1) | bit(0, 2) | bit(0, 3);
        assert_ne!(canonical(p1, 4), canonical(star, 4));
    }
}
