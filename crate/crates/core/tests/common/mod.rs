//! Brute-force oracles sharing no code with the library searches.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use surfminor::{Graph, VSet, V};

pub fn adjacency(g: &Graph) -> BTreeMap<V, Vec<V>> {
    g.vertices().map(|v| (v, g.neighbors(v).collect())).collect()
}

/// Faces of a rotation system, counted by walking every dart once.
pub fn count_faces(rot: &BTreeMap<V, Vec<V>>) -> usize {
    let mut seen: BTreeSet<(V, V)> = BTreeSet::new();
    let mut faces = 0;
    for (&u, ns) in rot {
        for &v in ns {
            if seen.contains(&(u, v)) {
                continue;
            }
            faces += 1;
            let (mut a, mut b) = (u, v);
            while seen.insert((a, b)) {
                let r = &rot[&b];
                let i = r.iter().position(|&x| x == a).unwrap();
                let c = r[(i + 1) % r.len()];
                a = b;
                b = c;
            }
        }
    }
    faces
}

/// Genus of a graph under a rotation system.
pub fn rotation_genus(g: &Graph, rot: &BTreeMap<V, Vec<V>>) -> i64 {
    let isolated = g.vertices().filter(|&v| g.degree(v) == 0).count();
    let (n, m, f) = (g.n() as i64, g.m() as i64, (count_faces(rot) + isolated) as i64);
    let c = g.components().len() as i64;
    (2 * c - n + m - f) / 2
}

fn cyclic_orders(ns: &[V]) -> Vec<Vec<V>> {
    if ns.len() <= 2 {
        return vec![ns.to_vec()];
    }
    // fix the first neighbour, permute the rest
    let mut out = Vec::new();
    let rest = ns[1..].to_vec();
    permutations(&rest, &mut Vec::new(), &mut vec![false; rest.len()], &mut |p| {
        let mut o = vec![ns[0]];
        o.extend(p);
        out.push(o);
    });
    out
}

fn permutations(xs: &[V], cur: &mut Vec<V>, used: &mut Vec<bool>, f: &mut dyn FnMut(&[V])) {
    if cur.len() == xs.len() {
        f(cur);
        return;
    }
    for i in 0..xs.len() {
        if !used[i] {
            used[i] = true;
            cur.push(xs[i]);
            permutations(xs, cur, used, f);
            cur.pop();
            used[i] = false;
        }
    }
}

/// Minimum genus over every rotation system (connected graphs only; the
/// product of (deg − 1)! must stay small).
pub fn brute_genus(g: &Graph) -> usize {
    let verts: Vec<V> = g.vertices().collect();
    let choices: Vec<Vec<Vec<V>>> = verts.iter().map(|&v| cyclic_orders(&g.neighbors(v).collect::<Vec<_>>())).collect();
    let total: u128 = choices.iter().map(|c| c.len() as u128).product();
    assert!(total <= 5_000_000, "too many rotation systems: {total}");
    let mut idx = vec![0usize; verts.len()];
    let mut best = i64::MAX;
    loop {
        let rot: BTreeMap<V, Vec<V>> = verts.iter().enumerate().map(|(i, &v)| (v, choices[i][idx[i]].clone())).collect();
        best = best.min(rotation_genus(g, &rot));
        let mut i = 0;
        while i < idx.len() {
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == idx.len() {
            break;
        }
    }
    best as usize
}

/// Internally disjoint paths realising `pairs` between fixed branch
/// vertices, interiors drawn from vertices outside `branch`.
fn route(g: &Graph, branch: &VSet, pairs: &[(V, V)], used: &mut VSet) -> bool {
    let Some((&(a, b), rest)) = pairs.split_first() else { return true };
    let mut stack: Vec<(V, Vec<V>)> = vec![(a, vec![a])];
    let mut found = Vec::new();
    while let Some((x, path)) = stack.pop() {
        for y in g.neighbors(x) {
            if y == b {
                found.push(path[1..].to_vec());
            } else if !branch.contains(&y) && !used.contains(&y) && !path.contains(&y) {
                let mut p = path.clone();
                p.push(y);
                stack.push((y, p));
            }
        }
    }
    found.sort();
    found.dedup();
    for interior in found {
        used.extend(&interior);
        if route(g, branch, rest, used) {
            return true;
        }
        for v in &interior {
            used.remove(v);
        }
    }
    false
}

fn subsets(xs: &[V], k: usize) -> Vec<Vec<V>> {
    if k == 0 {
        return vec![vec![]];
    }
    if xs.len() < k {
        return vec![];
    }
    let mut out = subsets(&xs[1..], k);
    for mut s in subsets(&xs[1..], k - 1) {
        s.insert(0, xs[0]);
        out.push(s);
    }
    out
}

/// Does `g` contain a subdivision of K5 or K33? Exhaustive over branch sets.
pub fn has_kuratowski_subdivision(g: &Graph) -> bool {
    let verts: Vec<V> = g.vertices().collect();
    for b in subsets(&verts, 5) {
        if b.iter().any(|&v| g.degree(v) < 4) {
            continue;
        }
        let pairs: Vec<(V, V)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).map(|(i, j)| (b[i], b[j])).collect();
        if route(g, &b.iter().copied().collect(), &pairs, &mut VSet::new()) {
            return true;
        }
    }
    for b in subsets(&verts, 6) {
        if b.iter().any(|&v| g.degree(v) < 3) {
            continue;
        }
        for side in subsets(&b[1..], 2) {
            let left: Vec<V> = std::iter::once(b[0]).chain(side.iter().copied()).collect();
            let right: Vec<V> = b.iter().copied().filter(|v| !left.contains(v)).collect();
            let pairs: Vec<(V, V)> = left.iter().flat_map(|&x| right.iter().map(move |&y| (x, y))).collect();
            if route(g, &b.iter().copied().collect(), &pairs, &mut VSet::new()) {
                return true;
            }
        }
    }
    false
}

/// Minor test by enumerating every assignment of host vertices to pattern
/// vertices (or to nothing).
pub fn partition_minor(g: &Graph, h: &Graph) -> bool {
    let gv: Vec<V> = g.vertices().collect();
    let hv: Vec<V> = h.vertices().collect();
    if hv.len() > gv.len() || h.m() > g.m() {
        return false;
    }
    let k = hv.len();
    let mut assign = vec![0usize; gv.len()]; // 0 = unused, i + 1 = pattern vertex i
    loop {
        if check_assignment(g, h, &gv, &hv, &assign) {
            return true;
        }
        let mut i = 0;
        while i < assign.len() {
            assign[i] += 1;
            if assign[i] <= k {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
        if i == assign.len() {
            return false;
        }
    }
}

fn check_assignment(g: &Graph, h: &Graph, gv: &[V], hv: &[V], assign: &[usize]) -> bool {
    let k = hv.len();
    let mut sets: Vec<VSet> = vec![VSet::new(); k];
    for (i, &a) in assign.iter().enumerate() {
        if a > 0 {
            sets[a - 1].insert(gv[i]);
        }
    }
    if sets.iter().any(|s| s.is_empty() || !g.induced(s).is_connected()) {
        return false;
    }
    for (x, y) in h.edges() {
        let (i, j) = (hv.iter().position(|&v| v == x).unwrap(), hv.iter().position(|&v| v == y).unwrap());
        if !sets[i].iter().any(|&a| g.neighbors(a).any(|b| sets[j].contains(&b))) {
            return false;
        }
    }
    true
}

/// Every simple a–b path (a ∈ `a`, b ∈ `b`) as a vertex list.
pub fn all_paths(g: &Graph, a: &VSet, b: &VSet) -> Vec<Vec<V>> {
    let mut out = Vec::new();
    for &s in a {
        let mut stack = vec![vec![s]];
        while let Some(p) = stack.pop() {
            let x = *p.last().unwrap();
            if b.contains(&x) {
                out.push(p.clone());
            }
            for y in g.neighbors(x) {
                if !p.contains(&y) {
                    let mut q = p.clone();
                    q.push(y);
                    stack.push(q);
                }
            }
        }
    }
    out
}

pub fn random_graph(rng: &mut impl Rng, n: u32, p: f64) -> Graph {
    let mut g = Graph::with_vertices(0..n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn random_tree(rng: &mut impl Rng, n: u32) -> Graph {
    let mut g = Graph::with_vertices(0..n);
    for v in 1..n {
        g.add_edge(rng.gen_range(0..v), v);
    }
    g
}
