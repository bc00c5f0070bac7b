//! Finite simple undirected graphs over integer ids, plus the surgery
//! operations (identification, cones, contraction) the rest of the crate uses.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{invalid, Result};

pub type V = u32;
pub type VSet = BTreeSet<V>;

/// An undirected edge with `e.0 < e.1`.
pub type Edge = (V, V);

#[inline]
pub fn edge(u: V, v: V) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BTreeMap<V, VSet>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn from_edges(edges: &[(V, V)]) -> Self {
        let mut g = Graph::new();
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn with_vertices(vs: impl IntoIterator<Item = V>) -> Self {
        let mut g = Graph::new();
        for v in vs {
            g.add_vertex(v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: V) {
        self.adj.entry(v).or_default();
    }

    /// Adds `uv`; returns false for loops and for edges already present.
    pub fn add_edge(&mut self, u: V, v: V) -> bool {
        if u == v {
            self.add_vertex(u);
            return false;
        }
        let fresh = self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
        fresh
    }

    pub fn remove_edge(&mut self, u: V, v: V) -> bool {
        let had = self.adj.get_mut(&u).map_or(false, |s| s.remove(&v));
        if had {
            self.adj.get_mut(&v).unwrap().remove(&u);
        }
        had
    }

    pub fn remove_vertex(&mut self, v: V) -> bool {
        match self.adj.remove(&v) {
            Some(nbrs) => {
                for u in nbrs {
                    self.adj.get_mut(&u).unwrap().remove(&v);
                }
                true
            }
            None => false,
        }
    }

    pub fn has_vertex(&self, v: V) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: V, v: V) -> bool {
        self.adj.get(&u).map_or(false, |s| s.contains(&v))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = V> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VSet {
        self.adj.keys().copied().collect()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m());
        for (&u, nb) in &self.adj {
            for &v in nb.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn neighbors(&self, v: V) -> impl Iterator<Item = V> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn nbr_set(&self, v: V) -> &VSet {
        static EMPTY: VSet = BTreeSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }

    pub fn degree(&self, v: V) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn max_vertex(&self) -> Option<V> {
        self.adj.keys().next_back().copied()
    }

    /// Smallest id strictly above every existing id.
    pub fn fresh_id(&self) -> V {
        self.max_vertex().map_or(0, |m| m + 1)
    }

    pub fn induced(&self, keep: &VSet) -> Graph {
        let mut g = Graph::new();
        for &v in keep {
            if let Some(nb) = self.adj.get(&v) {
                g.add_vertex(v);
                for &u in nb {
                    if keep.contains(&u) {
                        g.add_edge(v, u);
                    }
                }
            }
        }
        g
    }

    pub fn without_vertices(&self, drop: &VSet) -> Graph {
        let mut g = self.clone();
        for &v in drop {
            g.remove_vertex(v);
        }
        g
    }

    pub fn without_edges(&self, drop: &[Edge]) -> Graph {
        let mut g = self.clone();
        for &(u, v) in drop {
            g.remove_edge(u, v);
        }
        g
    }

    /// Subgraph with the given edges and their endpoints.
    pub fn edge_subgraph(edges: &[Edge]) -> Graph {
        Graph::from_edges(edges)
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices().all(|v| other.has_vertex(v))
            && self.edges().iter().all(|&(u, v)| other.has_edge(u, v))
    }

    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        for v in other.vertices() {
            g.add_vertex(v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u, v);
        }
        g
    }

    /// Renames vertices through `f`, which must be injective on the vertex set.
    pub fn relabel(&self, f: impl Fn(V) -> V) -> Graph {
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_vertex(f(v));
        }
        for (u, v) in self.edges() {
            g.add_edge(f(u), f(v));
        }
        g
    }

    /// Disjoint union; `other` is shifted above every id of `self`.
    /// Returns the union and the shift applied.
    pub fn disjoint_union(&self, other: &Graph) -> (Graph, V) {
        let off = self.fresh_id();
        let g = self.union(&other.relabel(|v| v + off));
        (g, off)
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VSet> {
        let mut seen = VSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = VSet::new();
            let mut q = VecDeque::from([s]);
            seen.insert(s);
            while let Some(v) = q.pop_front() {
                comp.insert(v);
                for u in self.neighbors(v) {
                    if seen.insert(u) {
                        q.push_back(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// |E| - |V| + #components.
    pub fn cycle_rank(&self) -> usize {
        self.m() + self.components().len() - self.n()
    }

    pub fn is_forest(&self) -> bool {
        self.cycle_rank() == 0
    }

    /// Shortest path from `s` to any vertex of `targets`, avoiding `blocked`
    /// (endpoints may not be blocked). Ties resolve toward smaller ids.
    pub fn shortest_path_to(&self, s: V, targets: &VSet, blocked: &VSet) -> Option<Vec<V>> {
        if !self.has_vertex(s) || blocked.contains(&s) {
            return None;
        }
        if targets.contains(&s) {
            return Some(vec![s]);
        }
        let mut prev: BTreeMap<V, V> = BTreeMap::new();
        let mut q = VecDeque::from([s]);
        prev.insert(s, s);
        while let Some(v) = q.pop_front() {
            for u in self.neighbors(v) {
                if blocked.contains(&u) || prev.contains_key(&u) {
                    continue;
                }
                prev.insert(u, v);
                if targets.contains(&u) {
                    let mut path = vec![u];
                    let mut c = u;
                    while c != s {
                        c = prev[&c];
                        path.push(c);
                    }
                    path.reverse();
                    return Some(path);
                }
                q.push_back(u);
            }
        }
        None
    }

    /// A spanning forest chosen by BFS from each component's smallest vertex.
    pub fn spanning_forest(&self) -> Vec<Edge> {
        let mut seen = VSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if !seen.insert(s) {
                continue;
            }
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for u in self.neighbors(v) {
                    if seen.insert(u) {
                        out.push(edge(v, u));
                        q.push_back(u);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// A shortest cycle through the whole graph, if any.
    pub fn shortest_cycle(&self) -> Option<Vec<V>> {
        let mut best: Option<Vec<V>> = None;
        for s in self.vertices() {
            if let Some(c) = self.shortest_cycle_through(s) {
                if best.as_ref().map_or(true, |b| c.len() < b.len()) {
                    best = Some(c);
                }
            }
        }
        best
    }

    /// A shortest cycle containing `s`, as a vertex sequence starting at `s`.
    pub fn shortest_cycle_through(&self, s: V) -> Option<Vec<V>> {
        let nb: Vec<V> = self.neighbors(s).collect();
        let mut best: Option<Vec<V>> = None;
        for (i, &a) in nb.iter().enumerate() {
            let targets: VSet = nb[i + 1..].iter().copied().collect();
            if targets.is_empty() {
                break;
            }
            let blocked: VSet = [s].into();
            if let Some(p) = self.shortest_path_to(a, &targets, &blocked) {
                if best.as_ref().map_or(true, |b| p.len() + 1 < b.len()) {
                    let mut c = vec![s];
                    c.extend(p);
                    best = Some(c);
                }
            }
        }
        best
    }
}

/// A graph together with a distinguished set of marked vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MarkedGraph {
    pub graph: Graph,
    pub marked: VSet,
}

impl MarkedGraph {
    pub fn new(graph: Graph, marked: VSet) -> Result<Self> {
        if let Some(v) = marked.iter().find(|v| !graph.has_vertex(**v)) {
            return invalid(format!("marked vertex {v} is not a vertex"));
        }
        Ok(MarkedGraph { graph, marked })
    }

    pub fn unmarked(graph: Graph) -> Self {
        MarkedGraph { graph, marked: VSet::new() }
    }

    pub fn is_marked(&self, v: V) -> bool {
        self.marked.contains(&v)
    }

    pub fn without_vertices(&self, drop: &VSet) -> MarkedGraph {
        MarkedGraph {
            graph: self.graph.without_vertices(drop),
            marked: self.marked.difference(drop).copied().collect(),
        }
    }

    pub fn induced(&self, keep: &VSet) -> MarkedGraph {
        let graph = self.graph.induced(keep);
        let marked = self.marked.iter().copied().filter(|v| graph.has_vertex(*v)).collect();
        MarkedGraph { graph, marked }
    }
}

/// Identifies `w` into `v`: edges at `w` move to `v`, loops and parallels vanish.
pub fn identify_vertices(g: &Graph, v: V, w: V) -> Result<Graph> {
    if !g.has_vertex(v) || !g.has_vertex(w) {
        return invalid(format!("unknown vertex in identification ({v}, {w})"));
    }
    if v == w {
        return invalid("cannot identify a vertex with itself");
    }
    let mut h = g.clone();
    let nbrs: Vec<V> = g.neighbors(w).collect();
    h.remove_vertex(w);
    for u in nbrs {
        h.add_edge(v, u);
    }
    Ok(h)
}

/// Adds a fresh vertex joined to exactly `u_set`. The new id is `g.fresh_id()`.
pub fn cone(g: &Graph, u_set: &VSet) -> Result<(Graph, V)> {
    if let Some(u) = u_set.iter().find(|u| !g.has_vertex(**u)) {
        return invalid(format!("cone base vertex {u} is not a vertex"));
    }
    let c = g.fresh_id();
    let mut h = g.clone();
    h.add_vertex(c);
    for &u in u_set {
        h.add_edge(c, u);
    }
    Ok((h, c))
}

/// Quotient by the components of `(V, f)`. Each class is named after its
/// smallest member; the returned map sends every vertex to its class name.
pub fn contract_with_map(g: &Graph, f: &[Edge]) -> Result<(Graph, BTreeMap<V, V>)> {
    for &(u, v) in f {
        if !g.has_edge(u, v) {
            return invalid(format!("edge {u}-{v} is not in the graph"));
        }
    }
    let fg = Graph::from_edges(f);
    let mut rep: BTreeMap<V, V> = g.vertices().map(|v| (v, v)).collect();
    for comp in fg.components() {
        let r = *comp.iter().next().unwrap();
        for v in comp {
            rep.insert(v, r);
        }
    }
    let mut h = Graph::new();
    for v in g.vertices() {
        h.add_vertex(rep[&v]);
    }
    for (u, v) in g.edges() {
        h.add_edge(rep[&u], rep[&v]);
    }
    Ok((h, rep))
}

pub fn contract(g: &Graph, f: &[Edge]) -> Result<Graph> {
    contract_with_map(g, f).map(|(h, _)| h)
}

/// Standard small graphs used across the crate and its tests.
pub mod named {
    use super::*;

    pub fn complete(n: u32) -> Graph {
        let mut g = Graph::with_vertices(0..n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// K_{a,b} with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: u32, b: u32) -> Graph {
        let mut g = Graph::with_vertices(0..a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: u32) -> Graph {
        let mut g = Graph::with_vertices(0..n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: u32) -> Graph {
        let mut g = path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// Hub `0`, rim `1..=m` in cyclic order.
    pub fn wheel(m: u32) -> Graph {
        let mut g = Graph::new();
        for i in 0..m {
            g.add_edge(1 + i, 1 + (i + 1) % m);
            g.add_edge(0, 1 + i);
        }
        g
    }

    /// Outer cycle `0..m`, inner cycle `m..2m`, rungs `i -- m+i`.
    pub fn circular_ladder(m: u32) -> Graph {
        let mut g = Graph::new();
        for i in 0..m {
            g.add_edge(i, (i + 1) % m);
            g.add_edge(m + i, m + (i + 1) % m);
            g.add_edge(i, m + i);
        }
        g
    }

    pub fn star(m: u32) -> Graph {
        let mut g = Graph::with_vertices([0]);
        for i in 1..=m {
            g.add_edge(0, i);
        }
        g
    }

    pub fn petersen() -> Graph {
        let mut g = Graph::new();
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// `n` disjoint copies of `h`, copy `j` shifted by `j * (max id + 1)`.
    pub fn copies(h: &Graph, n: u32) -> Graph {
        let w = h.fresh_id();
        let mut g = Graph::new();
        for j in 0..n {
            g = g.union(&h.relabel(|v| v + j * w));
        }
        g
    }

    /// `n` copies of `h` glued at `hub`; copy `j` sends `v != hub` to `v + j * (max id + 1)`.
    pub fn bouquet(h: &Graph, hub: V, n: u32) -> Graph {
        let w = h.fresh_id();
        let mut g = Graph::with_vertices([hub]);
        for j in 0..n {
            g = g.union(&h.relabel(|v| if v == hub { hub } else { v + j * w }));
        }
        g
    }
}
