//! Menger path packing, block structure and connecting forests.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{edge, Edge, Graph, VSet, V};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Disjointness {
    /// No two paths share a vertex.
    Full,
    /// Paths may share end vertices only.
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub paths: Vec<Vec<V>>,
    pub disjointness: Disjointness,
}

impl PathSystem {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Checks simplicity, host edges and the declared disjointness.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        for p in &self.paths {
            if p.is_empty() {
                return Err("empty path".into());
            }
            let set: VSet = p.iter().copied().collect();
            if set.len() != p.len() {
                return Err(format!("path {p:?} repeats a vertex"));
            }
            if !g.has_vertex(p[0]) {
                return Err(format!("path {p:?} leaves the graph"));
            }
            for w in p.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("path {p:?} uses non-edge {}-{}", w[0], w[1]));
                }
            }
        }
        for (i, p) in self.paths.iter().enumerate() {
            for q in &self.paths[i + 1..] {
                let (pi, qi) = match self.disjointness {
                    Disjointness::Full => (&p[..], &q[..]),
                    Disjointness::Internal => (interior(p), interior(q)),
                };
                let ps: VSet = pi.iter().copied().collect();
                if qi.iter().any(|v| ps.contains(v)) {
                    return Err(format!("paths {p:?} and {q:?} intersect"));
                }
                if self.disjointness == Disjointness::Internal {
                    let pall: VSet = p.iter().copied().collect();
                    let qall: VSet = q.iter().copied().collect();
                    if pi.iter().any(|v| qall.contains(v)) || qi.iter().any(|v| pall.contains(v)) {
                        return Err(format!("paths {p:?} and {q:?} meet internally"));
                    }
                }
            }
        }
        Ok(())
    }
}

fn interior(p: &[V]) -> &[V] {
    if p.len() <= 2 {
        &[]
    } else {
        &p[1..p.len() - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Menger {
    pub paths: PathSystem,
    pub separator: VSet,
}

const INF: i32 = i32::MAX / 4;

struct FlowNet {
    to: Vec<usize>,
    cap: Vec<i32>,
    head: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet { to: Vec::new(), cap: Vec::new(), head: vec![Vec::new(); n] }
    }

    fn add(&mut self, a: usize, b: usize, c: i32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut pre = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &e in &self.head[x] {
                let y = self.to[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    pre[y] = e;
                    if y == t {
                        let mut c = t;
                        while c != s {
                            let e = pre[c];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            c = self.to[e ^ 1];
                        }
                        return true;
                    }
                    q.push_back(y);
                }
            }
        }
        false
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &e in &self.head[x] {
                let y = self.to[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        seen
    }
}

/// Maximum family of disjoint `a`–`b` paths together with a separator of the
/// same size. With `internal_only`, paths may share their ends; this mode
/// requires `a` and `b` disjoint and non-adjacent.
pub fn max_disjoint_paths(g: &Graph, a: &VSet, b: &VSet, internal_only: bool) -> Result<Menger> {
    if a.is_empty() || b.is_empty() {
        return invalid("both terminal sets must be nonempty");
    }
    if a.iter().chain(b.iter()).any(|v| !g.has_vertex(*v)) {
        return invalid("terminal vertex not in graph");
    }
    if internal_only {
        if a.intersection(b).next().is_some() {
            return invalid("internal mode needs disjoint terminal sets");
        }
        for &x in a {
            if g.neighbors(x).any(|y| b.contains(&y)) {
                return invalid("internal mode needs non-adjacent terminal sets");
            }
        }
    }
    let verts: Vec<V> = g.vertices().collect();
    let idx: BTreeMap<V, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let (s, t) = (2 * n, 2 * n + 1);
    let mut net = FlowNet::new(2 * n + 2);
    for (i, v) in verts.iter().enumerate() {
        let term = a.contains(v) || b.contains(v);
        net.add(2 * i, 2 * i + 1, if internal_only && term { INF } else { 1 });
    }
    for (u, v) in g.edges() {
        let (iu, iv) = (idx[&u], idx[&v]);
        for (x, y, ix, iy) in [(u, v, iu, iv), (v, u, iv, iu)] {
            if internal_only && (a.contains(&y) || b.contains(&x)) {
                continue;
            }
            net.add(2 * ix + 1, 2 * iy, INF);
        }
    }
    for v in a {
        net.add(s, 2 * idx[v], INF);
    }
    for v in b {
        net.add(2 * idx[v] + 1, t, INF);
    }
    while net.augment(s, t) {}

    let reach = net.reachable(s);
    let separator: VSet = (0..n).filter(|&i| reach[2 * i] && !reach[2 * i + 1]).map(|i| verts[i]).collect();

    // Flow decomposition: forward arcs carry flow where the residual twin is positive.
    let mut flow: Vec<i32> = (0..net.to.len()).map(|e| if e % 2 == 0 { net.cap[e ^ 1] } else { 0 }).collect();
    let mut paths = Vec::new();
    loop {
        let mut x = s;
        let mut walk: Vec<V> = Vec::new();
        let mut ok = false;
        loop {
            let e = match net.head[x].iter().copied().find(|&e| e % 2 == 0 && flow[e] > 0) {
                Some(e) => e,
                None => break,
            };
            flow[e] -= 1;
            x = net.to[e];
            if x == t {
                ok = true;
                break;
            }
            let v = verts[x / 2];
            if walk.last() != Some(&v) {
                if let Some(p) = walk.iter().position(|&w| w == v) {
                    walk.truncate(p + 1);
                } else {
                    walk.push(v);
                }
            }
        }
        if !ok {
            break;
        }
        let j = walk.iter().position(|v| b.contains(v)).unwrap();
        walk.truncate(j + 1);
        let i = walk.iter().rposition(|v| a.contains(v)).unwrap();
        paths.push(walk[i..].to_vec());
    }
    paths.sort();
    let disjointness = if internal_only { Disjointness::Internal } else { Disjointness::Full };
    Ok(Menger { paths: PathSystem { paths, disjointness }, separator })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: VSet,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCut {
    /// Maximal 2-connected pieces and bridges, each with at least one edge.
    pub blocks: Vec<Block>,
    pub cut_vertices: VSet,
    pub isolated: VSet,
}

/// Biconnected components via an iterative Hopcroft–Tarjan traversal.
pub fn blocks(g: &Graph) -> BlockCut {
    let verts: Vec<V> = g.vertices().collect();
    let idx: BTreeMap<V, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let nbrs: Vec<Vec<usize>> = verts.iter().map(|&v| g.neighbors(v).map(|u| idx[&u]).collect()).collect();
    let n = verts.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut estack: Vec<(usize, usize)> = Vec::new();
    let mut out: Vec<Block> = Vec::new();
    let mut cuts = VSet::new();
    let mut isolated = VSet::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if nbrs[root].is_empty() {
            isolated.insert(verts[root]);
            disc[root] = time;
            time += 1;
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, p, ref mut i)) = stack.last_mut() {
            if *i < nbrs[v].len() {
                let u = nbrs[v][*i];
                *i += 1;
                if disc[u] == usize::MAX {
                    estack.push((v, u));
                    disc[u] = time;
                    low[u] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((u, v, 0));
                } else if u != p && disc[u] < disc[v] {
                    estack.push((v, u));
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if p != usize::MAX {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        if p != root {
                            cuts.insert(verts[p]);
                        }
                        let mut es = Vec::new();
                        let mut vs = VSet::new();
                        while let Some((x, y)) = estack.pop() {
                            es.push(edge(verts[x], verts[y]));
                            vs.insert(verts[x]);
                            vs.insert(verts[y]);
                            if (x, y) == (p, v) {
                                break;
                            }
                        }
                        es.sort_unstable();
                        out.push(Block { vertices: vs, edges: es });
                    }
                }
            }
        }
        if root_children > 1 {
            cuts.insert(verts[root]);
        }
    }
    out.sort_by(|a, b| a.edges.cmp(&b.edges));
    BlockCut { blocks: out, cut_vertices: cuts, isolated }
}

/// An inclusion-minimal forest joining every pair of `s`-vertices that share a
/// component of `g`.
pub fn minimal_connecting_forest(g: &Graph, s: &VSet) -> Result<Vec<Edge>> {
    if let Some(v) = s.iter().find(|v| !g.has_vertex(**v)) {
        return invalid(format!("vertex {v} not in graph"));
    }
    let mut out = Vec::new();
    for comp in g.components() {
        let terms: VSet = comp.intersection(s).copied().collect();
        if terms.len() < 2 {
            continue;
        }
        let root = *terms.iter().next().unwrap();
        let mut parent: BTreeMap<V, V> = BTreeMap::new();
        parent.insert(root, root);
        let mut q = VecDeque::from([root]);
        while let Some(v) = q.pop_front() {
            for u in g.neighbors(v) {
                if !parent.contains_key(&u) {
                    parent.insert(u, v);
                    q.push_back(u);
                }
            }
        }
        let mut keep: VSet = VSet::new();
        for &t in &terms {
            let mut c = t;
            while keep.insert(c) && c != root {
                c = parent[&c];
            }
        }
        for &v in &keep {
            if v != root {
                out.push(edge(v, parent[&v]));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}
