//! Planarity by path addition (Demoucron–Malgrange–Pertuiset) on each block,
//! with Kuratowski subgraphs extracted by edge deletion.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{concat_rotations, Rotation};
use crate::connectivity::blocks;
use crate::graph::{edge, Edge, Graph, VSet, V};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K33. For K33 the first three branch vertices form
/// one side. `paths` holds one branch-to-branch path per pattern edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch: Vec<V>,
    pub paths: Vec<Vec<V>>,
}

impl KuratowskiWitness {
    pub fn vertices(&self) -> VSet {
        self.paths.iter().flatten().copied().chain(self.branch.iter().copied()).collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut es: Vec<Edge> = self.paths.iter().flat_map(|p| p.windows(2).map(|w| edge(w[0], w[1]))).collect();
        es.sort_unstable();
        es
    }

    pub fn subgraph(&self) -> Graph {
        let mut g = Graph::from_edges(&self.edges());
        for &b in &self.branch {
            g.add_vertex(b);
        }
        g
    }

    /// Degree of `v` in the subdivision (0 if absent).
    pub fn degree_of(&self, v: V) -> usize {
        self.subgraph().degree(v)
    }

    /// Independent check that the witness is a K5/K33 subdivision inside `g`.
    pub fn check(&self, g: &Graph) -> Result<(), String> {
        let (nb, pairs): (usize, Vec<(usize, usize)>) = match self.kind {
            KuratowskiKind::K5 => (5, (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect()),
            KuratowskiKind::K33 => (6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect()),
        };
        if self.branch.len() != nb {
            return Err(format!("expected {nb} branch vertices"));
        }
        let bset: VSet = self.branch.iter().copied().collect();
        if bset.len() != nb {
            return Err("repeated branch vertex".into());
        }
        if self.paths.len() != pairs.len() {
            return Err(format!("expected {} paths", pairs.len()));
        }
        let mut want: Vec<Edge> = pairs.iter().map(|&(i, j)| edge(self.branch[i], self.branch[j])).collect();
        let mut got: Vec<Edge> = Vec::new();
        let mut interior = VSet::new();
        for p in &self.paths {
            if p.len() < 2 {
                return Err("path too short".into());
            }
            got.push(edge(p[0], *p.last().unwrap()));
            for w in p.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("non-edge {}-{}", w[0], w[1]));
                }
            }
            for &x in &p[1..p.len() - 1] {
                if bset.contains(&x) || !interior.insert(x) {
                    return Err(format!("paths meet at {x}"));
                }
            }
        }
        want.sort_unstable();
        got.sort_unstable();
        if want != got {
            return Err("paths do not join the required branch pairs".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar(Rotation),
    NonPlanar(KuratowskiWitness),
}

/// Dense 2-connected block embedder. Returns the faces of a plane embedding.
fn embed_block(n: usize, nbrs: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let m: usize = nbrs.iter().map(|v| v.len()).sum::<usize>() / 2;
    if n >= 3 && m > 3 * n - 6 {
        return None;
    }
    let cyc = find_cycle(n, nbrs);
    let mut in_h = vec![false; n];
    let mut used: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    for i in 0..cyc.len() {
        let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
        in_h[a] = true;
        used.insert((a.min(b), a.max(b)), ());
    }
    let mut rev = cyc.clone();
    rev.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cyc, rev];
    let mut embedded = used.len();

    while embedded < m {
        // Fragments: (attachments, a path to embed once chosen).
        let mut frags: Vec<(Vec<usize>, Fragment)> = Vec::new();
        for u in 0..n {
            if !in_h[u] {
                continue;
            }
            for &v in &nbrs[u] {
                if u < v && in_h[v] && !used.contains_key(&(u, v)) {
                    frags.push((vec![u, v], Fragment::Chord(u, v)));
                }
            }
        }
        let mut comp = vec![usize::MAX; n];
        for s in 0..n {
            if in_h[s] || comp[s] != usize::MAX {
                continue;
            }
            let cid = frags.len();
            let mut att = Vec::new();
            let mut q = VecDeque::from([s]);
            comp[s] = cid;
            while let Some(x) = q.pop_front() {
                for &y in &nbrs[x] {
                    if in_h[y] {
                        if !att.contains(&y) {
                            att.push(y);
                        }
                    } else if comp[y] == usize::MAX {
                        comp[y] = cid;
                        q.push_back(y);
                    }
                }
            }
            att.sort_unstable();
            frags.push((att, Fragment::Component(cid)));
        }
        let mut choice: Option<(usize, usize)> = None;
        let mut fallback: Option<(usize, usize)> = None;
        for (fi, (att, _)) in frags.iter().enumerate() {
            let adm: Vec<usize> =
                (0..faces.len()).filter(|&f| att.iter().all(|a| faces[f].contains(a))).collect();
            if adm.is_empty() {
                return None;
            }
            if adm.len() == 1 {
                choice = Some((fi, adm[0]));
                break;
            }
            if fallback.is_none() {
                fallback = Some((fi, adm[0]));
            }
        }
        let (fi, f) = choice.or(fallback).unwrap();
        let path: Vec<usize> = match frags[fi].1 {
            Fragment::Chord(u, v) => vec![u, v],
            Fragment::Component(cid) => {
                let a = frags[fi].0[0];
                path_through(nbrs, &in_h, &comp, cid, a)
            }
        };
        for w in path.windows(2) {
            used.insert((w[0].min(w[1]), w[0].max(w[1])), ());
            embedded += 1;
        }
        for &x in &path {
            in_h[x] = true;
        }
        let face = faces.swap_remove(f);
        let (fa, fb) = split_face(&face, &path);
        faces.push(fa);
        faces.push(fb);
    }
    Some(faces)
}

enum Fragment {
    Chord(usize, usize),
    Component(usize),
}

fn find_cycle(n: usize, nbrs: &[Vec<usize>]) -> Vec<usize> {
    // DFS until a back edge closes a cycle; blocks with >= 3 vertices have one.
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i < nbrs[v].len() {
            let u = nbrs[v][*i];
            *i += 1;
            if depth[u] == usize::MAX {
                depth[u] = depth[v] + 1;
                parent[u] = v;
                stack.push((u, 0));
            } else if u != parent[v] && depth[u] < depth[v] {
                let mut cyc = vec![v];
                let mut c = v;
                while c != u {
                    c = parent[c];
                    cyc.push(c);
                }
                cyc.reverse();
                return cyc;
            }
        } else {
            stack.pop();
        }
    }
    unreachable!("2-connected block without a cycle")
}

fn path_through(nbrs: &[Vec<usize>], in_h: &[bool], comp: &[usize], cid: usize, a: usize) -> Vec<usize> {
    let n = nbrs.len();
    let mut prev = vec![usize::MAX; n];
    let mut q = VecDeque::new();
    for &y in &nbrs[a] {
        if !in_h[y] && comp[y] == cid && prev[y] == usize::MAX {
            prev[y] = a;
            q.push_back(y);
        }
    }
    while let Some(x) = q.pop_front() {
        for &y in &nbrs[x] {
            if in_h[y] && y != a {
                let mut p = vec![y, x];
                let mut c = x;
                while prev[c] != a {
                    c = prev[c];
                    p.push(c);
                }
                p.push(a);
                p.reverse();
                return p;
            }
            if !in_h[y] && comp[y] == cid && prev[y] == usize::MAX {
                prev[y] = x;
                q.push_back(y);
            }
        }
    }
    unreachable!("fragment with a single attachment in a 2-connected block")
}

/// Splits the oriented face cycle by a path between two of its vertices.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().unwrap();
    let k = face.len();
    let ia = face.iter().position(|&x| x == a).unwrap();
    let ib = face.iter().position(|&x| x == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let mut f1 = Vec::new();
    let mut i = ia;
    loop {
        f1.push(face[i]);
        if i == ib {
            break;
        }
        i = (i + 1) % k;
    }
    f1.extend(inner.iter().rev());
    let mut f2 = Vec::new();
    let mut i = ib;
    loop {
        f2.push(face[i]);
        if i == ia {
            break;
        }
        i = (i + 1) % k;
    }
    f2.extend(inner.iter());
    (f1, f2)
}

fn faces_to_rotation(verts: &[V], nbrs: &[Vec<usize>], faces: &[Vec<usize>]) -> Rotation {
    let n = verts.len();
    let mut succ: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
    for f in faces {
        let k = f.len();
        for i in 0..k {
            let (p, c, x) = (f[(i + k - 1) % k], f[i], f[(i + 1) % k]);
            succ[c].insert(p, x);
        }
    }
    let mut rotation = BTreeMap::new();
    for v in 0..n {
        let mut order = Vec::with_capacity(nbrs[v].len());
        if let Some(&start) = nbrs[v].iter().min() {
            let mut c = start;
            loop {
                order.push(verts[c]);
                c = succ[v][&c];
                if c == start {
                    break;
                }
            }
        }
        rotation.insert(verts[v], order);
    }
    Rotation { rotation }
}

/// Planar rotation of one block, or `None` if the block is not planar.
fn block_rotation(g: &Graph, es: &[Edge]) -> Option<Rotation> {
    let bg = Graph::from_edges(es);
    if es.len() == 1 {
        let (u, v) = es[0];
        return Some(Rotation { rotation: [(u, vec![v]), (v, vec![u])].into() });
    }
    let _ = g;
    let verts: Vec<V> = bg.vertices().collect();
    let idx: BTreeMap<V, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let nbrs: Vec<Vec<usize>> = verts.iter().map(|&v| bg.neighbors(v).map(|u| idx[&u]).collect()).collect();
    let faces = embed_block(verts.len(), &nbrs)?;
    Some(faces_to_rotation(&verts, &nbrs, &faces))
}

fn planar_rotation(g: &Graph) -> Option<Rotation> {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return None;
    }
    let bc = blocks(g);
    let mut parts = Vec::with_capacity(bc.blocks.len() + 1);
    for b in &bc.blocks {
        parts.push(block_rotation(g, &b.edges)?);
    }
    parts.push(Rotation { rotation: bc.isolated.iter().map(|&v| (v, Vec::new())).collect() });
    Some(concat_rotations(parts.iter()))
}

pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return false;
    }
    blocks(g).blocks.iter().all(|b| {
        let bg = Graph::from_edges(&b.edges);
        if b.edges.len() < 9 || bg.n() < 5 {
            return true;
        }
        block_rotation(&bg, &b.edges).is_some()
    })
}

/// An edge-minimal non-planar subgraph, or `None` when `g` is planar.
pub fn kuratowski_subgraph(g: &Graph) -> Option<Graph> {
    let bc = blocks(g);
    let bad = bc.blocks.iter().find(|b| !is_planar(&Graph::from_edges(&b.edges)))?;
    let mut h = Graph::from_edges(&bad.edges);
    for (u, v) in bad.edges.clone() {
        h.remove_edge(u, v);
        if is_planar(&h) {
            h.add_edge(u, v);
        }
    }
    let iso: Vec<V> = h.vertices().filter(|&v| h.degree(v) == 0).collect();
    for v in iso {
        h.remove_vertex(v);
    }
    Some(h)
}

fn witness_from_subdivision(k: &Graph) -> KuratowskiWitness {
    let branch: Vec<V> = k.vertices().filter(|&v| k.degree(v) >= 3).collect();
    let mut paths = Vec::new();
    let bset: VSet = branch.iter().copied().collect();
    for &b in &branch {
        for first in k.neighbors(b) {
            let mut p = vec![b, first];
            let (mut prev, mut cur) = (b, first);
            while !bset.contains(&cur) {
                let nxt = k.neighbors(cur).find(|&x| x != prev).unwrap();
                prev = cur;
                cur = nxt;
                p.push(cur);
            }
            if b < cur || (b == cur) {
                paths.push(p);
            }
        }
    }
    paths.sort();
    if branch.len() == 5 {
        return KuratowskiWitness { kind: KuratowskiKind::K5, branch, paths };
    }
    let mut side_a: Vec<V> = vec![branch[0]];
    let mut side_b: Vec<V> = Vec::new();
    for &p in &branch[1..] {
        let joined = paths.iter().any(|q| {
            let (s, t) = (q[0], *q.last().unwrap());
            (s == branch[0] && t == p) || (t == branch[0] && s == p)
        });
        if joined {
            side_b.push(p);
        } else {
            side_a.push(p);
        }
    }
    side_a.extend(side_b);
    KuratowskiWitness { kind: KuratowskiKind::K33, branch: side_a, paths }
}

/// Either a planar rotation or a Kuratowski subdivision witness.
pub fn planarity(g: &Graph) -> Planarity {
    if let Some(r) = planar_rotation(g) {
        return Planarity::Planar(r);
    }
    let k = kuratowski_subgraph(g).expect("non-planar graph without a non-planar block");
    let w = witness_from_subdivision(&k);
    debug_assert!(w.check(g).is_ok(), "extracted witness fails verification");
    Planarity::NonPlanar(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::genus_of;
    use crate::graph::named;

    fn witness(g: &Graph) -> KuratowskiWitness {
        match planarity(g) {
            Planarity::NonPlanar(w) => {
                w.check(g).unwrap();
                w
            }
            Planarity::Planar(_) => panic!("expected a witness"),
        }
    }

    #[test]
    fn planar_rotations_have_genus_zero() {
        for g in [named::complete(4), named::wheel(6), named::circular_ladder(5), named::path(4), named::cycle(7)] {
            match planarity(&g) {
                Planarity::Planar(r) => assert_eq!(genus_of(&g, &r).unwrap(), 0),
                Planarity::NonPlanar(_) => panic!("planar graph rejected"),
            }
        }
        let two = named::copies(&named::complete(4), 3);
        assert!(is_planar(&two));
    }

    #[test]
    fn kuratowski_kinds() {
        assert_eq!(witness(&named::complete(5)).kind, KuratowskiKind::K5);
        assert_eq!(witness(&named::complete_bipartite(3, 3)).kind, KuratowskiKind::K33);
        let p = witness(&named::petersen());
        assert_eq!(p.kind, KuratowskiKind::K33);
        assert!(witness(&named::complete(6)).check(&named::complete(6)).is_ok());
    }
}
