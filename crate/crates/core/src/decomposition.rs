//! Finitary decompositions into planar pieces: verification, the genus bound
//! obtained by re-identifying pieces, the constructive decomposition of an
//! embedded graph, and planarization by contraction.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::connectivity::{blocks, minimal_connecting_forest};
use crate::embedding::{is_planar, min_genus, trace_faces, GenusOutcome, Rotation};
use crate::error::{invalid, Error, Result};
use crate::graph::{contract, Edge, Graph, VSet, V};
use crate::limits::{Deadline, Ticker};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub vertices: Vec<V>,
    pub edges: Vec<Edge>,
}

impl Piece {
    pub fn of(g: &Graph) -> Piece {
        Piece { vertices: g.vertices().collect(), edges: g.edges() }
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::with_vertices(self.vertices.iter().copied());
        for &(u, v) in &self.edges {
            g.add_edge(u, v);
        }
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overlap {
    pub pieces: (usize, usize),
    pub vertices: Vec<V>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
    /// The refined core; pairwise overlaps of pieces lie inside it.
    #[serde(default)]
    pub core: Option<Piece>,
    #[serde(default)]
    pub overlaps: Vec<Overlap>,
}

impl Decomposition {
    pub fn from_pieces(pieces: Vec<Graph>, core: Option<Graph>) -> Decomposition {
        let pieces: Vec<Piece> = pieces.iter().map(Piece::of).collect();
        let overlaps = overlaps_of(&pieces);
        Decomposition { pieces, core: core.as_ref().map(Piece::of), overlaps }
    }
}

fn overlaps_of(pieces: &[Piece]) -> Vec<Overlap> {
    let sets: Vec<VSet> = pieces.iter().map(|p| p.vertices.iter().copied().collect()).collect();
    let mut out = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let common: Vec<V> = sets[i].intersection(&sets[j]).copied().collect();
            if !common.is_empty() {
                out.push(Overlap { pieces: (i, j), vertices: common });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub ok: bool,
    pub max_overlap: usize,
    pub violations: Vec<String>,
}

/// Checks coverage, that pieces are planar subgraphs of `g`, overlap sizes
/// against `cap`, and that overlaps lie in the recorded core.
pub fn verify_decomposition(g: &Graph, d: &Decomposition, cap: Option<usize>) -> DecompositionReport {
    let mut violations = Vec::new();
    let graphs: Vec<Graph> = d.pieces.iter().map(Piece::graph).collect();
    let mut seen_v = VSet::new();
    let mut seen_e: BTreeSet<Edge> = BTreeSet::new();
    for (i, p) in graphs.iter().enumerate() {
        if !p.is_subgraph_of(g) {
            violations.push(format!("host: piece {i} is not a subgraph of the graph"));
        }
        if !is_planar(p) {
            violations.push(format!("planarity: piece {i} is not planar"));
        }
        seen_v.extend(p.vertices());
        seen_e.extend(p.edges());
    }
    for v in g.vertices().filter(|v| !seen_v.contains(v)) {
        violations.push(format!("coverage: vertex {v} is in no piece"));
    }
    for e in g.edges().into_iter().filter(|e| !seen_e.contains(e)) {
        violations.push(format!("coverage: edge {}-{} is in no piece", e.0, e.1));
    }
    let overlaps = overlaps_of(&d.pieces);
    let max_overlap = overlaps.iter().map(|o| o.vertices.len()).max().unwrap_or(0);
    if let Some(c) = cap {
        for o in overlaps.iter().filter(|o| o.vertices.len() > c) {
            violations.push(format!("overlap: pieces {} and {} share {} vertices (cap {c})", o.pieces.0, o.pieces.1, o.vertices.len()));
        }
    }
    if !d.overlaps.is_empty() && d.overlaps != overlaps {
        violations.push("overlap: recorded overlaps do not match the pieces".into());
    }
    if let Some(core) = &d.core {
        let cv: VSet = core.vertices.iter().copied().collect();
        for o in &overlaps {
            if let Some(v) = o.vertices.iter().find(|v| !cv.contains(v)) {
                violations.push(format!("core: vertex {v} shared by pieces {} and {} is outside the core", o.pieces.0, o.pieces.1));
            }
        }
    }
    DecompositionReport { ok: violations.is_empty(), max_overlap, violations }
}

fn genus_within(g: &Graph, budget: usize, deadline: Deadline) -> Result<(usize, Rotation)> {
    match min_genus(g, budget, deadline) {
        GenusOutcome::Exact { genus, rotation } => Ok((genus, rotation)),
        GenusOutcome::ExceedsBudget { lower_bound } => Err(Error::BudgetExhausted(format!("genus is at least {lower_bound}"))),
        GenusOutcome::Unknown { lower_bound, .. } => {
            Err(Error::BudgetExhausted(format!("genus search timed out (lower bound {lower_bound})")))
        }
    }
}

/// Σ genus(piece) + Σ over vertices of (number of pieces containing it − 1).
pub fn genus_bound(d: &Decomposition, budget: usize, deadline: Deadline) -> Result<usize> {
    let mut total = 0;
    let mut mult: BTreeMap<V, usize> = BTreeMap::new();
    for p in &d.pieces {
        let g = p.graph();
        if !is_planar(&g) {
            total += genus_within(&g, budget, deadline)?.0;
        }
        for &v in &p.vertices {
            *mult.entry(v).or_default() += 1;
        }
    }
    Ok(total + mult.values().map(|&k| k - 1).sum::<usize>())
}

/// An edge-minimal subgraph with the same genus as `g` (greedy deletion in
/// edge order, starting from the nonplanar blocks).
pub fn genus_core(g: &Graph, genus: usize, deadline: Deadline) -> Result<Graph> {
    if genus == 0 {
        return Ok(Graph::new());
    }
    let mut edges: Vec<Edge> = Vec::new();
    for b in blocks(g).blocks {
        if !is_planar(&Graph::from_edges(&b.edges)) {
            edges.extend(b.edges);
        }
    }
    edges.sort_unstable();
    let mut i = 0;
    while i < edges.len() {
        let mut rest = edges.clone();
        rest.remove(i);
        // an undecided deletion keeps the edge; the core stays valid either way
        if matches!(min_genus(&Graph::from_edges(&rest), genus - 1, deadline), GenusOutcome::ExceedsBudget { .. }) {
            edges = rest;
        } else {
            i += 1;
        }
    }
    Ok(Graph::from_edges(&edges))
}

/// `G − sub` with every vertex of `sub` split into its sectors: the runs of
/// the rotation at `v` strictly between consecutive `sub`-edges.
struct Split {
    graph: Graph,
    /// sector id → (vertex of g, `sub`-neighbour opening the sector)
    sector: BTreeMap<V, (V, V)>,
    /// sector id → face index of `sub` under the restricted rotation
    face: BTreeMap<V, usize>,
}

impl Split {
    fn new(g: &Graph, rot: &Rotation, sub: &Graph) -> Result<Split> {
        let rs = rot.restrict(sub);
        let faces = trace_faces(sub, &rs)?;
        let mut face_of_dart: BTreeMap<(V, V), usize> = BTreeMap::new();
        for (i, f) in faces.faces.iter().enumerate() {
            for &d in f {
                face_of_dart.insert(d, i);
            }
        }
        let mut next_id = g.fresh_id();
        let mut ids: BTreeMap<(V, V), V> = BTreeMap::new();
        let mut sector = BTreeMap::new();
        let mut face = BTreeMap::new();
        // endpoint image of the dart v→w for w not a sub-neighbour
        let mut image: BTreeMap<(V, V), V> = BTreeMap::new();
        for v in sub.vertices() {
            let r = &rot.rotation[&v];
            let k = r.len();
            let Some(start) = r.iter().position(|&u| sub.has_edge(v, u)) else { continue };
            let mut open = r[start];
            for step in 1..=k {
                let w = r[(start + step) % k];
                if sub.has_edge(v, w) {
                    open = w;
                    continue;
                }
                let id = *ids.entry((v, open)).or_insert_with(|| {
                    let id = next_id;
                    next_id += 1;
                    id
                });
                sector.insert(id, (v, open));
                face.insert(id, face_of_dart[&(open, v)]);
                image.insert((v, w), id);
            }
        }
        let mut graph = Graph::new();
        for v in g.vertices().filter(|&v| !sub.has_vertex(v)) {
            graph.add_vertex(v);
        }
        for (x, y) in g.edges() {
            if sub.has_edge(x, y) {
                continue;
            }
            let a = image.get(&(x, y)).copied().unwrap_or(x);
            let b = image.get(&(y, x)).copied().unwrap_or(y);
            graph.add_edge(a, b);
        }
        Ok(Split { graph, sector, face })
    }

    fn orig(&self, v: V) -> V {
        self.sector.get(&v).map_or(v, |s| s.0)
    }

    fn image(&self, vs: &VSet) -> Graph {
        let mut out = Graph::new();
        for &v in vs {
            out.add_vertex(self.orig(v));
            for u in self.graph.neighbors(v) {
                out.add_edge(self.orig(v), self.orig(u));
            }
        }
        out
    }
}

/// The `sub`-sector of `rot` at `v` containing the slot of `w`.
fn enclosing_sector(rot: &Rotation, sub: &Graph, v: V, w: V) -> Option<(V, V)> {
    let r = &rot.rotation[&v];
    let i = r.iter().position(|&x| x == w)?;
    (0..r.len()).map(|s| r[(i + r.len() - s) % r.len()]).find(|&u| sub.has_edge(v, u)).map(|u| (v, u))
}

fn decompose_component(g: &Graph, budget: usize, deadline: Deadline) -> Result<(Vec<Graph>, Graph)> {
    let (genus, rot) = genus_within(g, budget, deadline)?;
    if genus == 0 {
        return Ok((vec![g.clone()], Graph::new()));
    }
    let mut h = genus_core(g, genus, deadline)?;
    for (u, v) in minimal_connecting_forest(g, &h.vertex_set())? {
        h.add_edge(u, v);
    }
    let first = Split::new(g, &rot, &h)?;
    let sectors: VSet = first.sector.keys().copied().collect();
    let mut h2 = h.clone();
    for (a, b) in minimal_connecting_forest(&first.graph, &sectors)? {
        h2.add_edge(first.orig(a), first.orig(b));
    }
    let second = Split::new(g, &rot, &h2)?;
    let mut pieces = Vec::new();
    for comp in second.graph.components() {
        let faces: BTreeSet<usize> = comp.iter().filter_map(|v| second.face.get(v)).copied().collect();
        assert!(faces.len() <= 1, "component of the split graph meets {} faces", faces.len());
        let mut outer: BTreeSet<(V, V)> = BTreeSet::new();
        for s in comp.iter().filter_map(|v| second.sector.get(v)) {
            if h.has_vertex(s.0) {
                outer.extend(enclosing_sector(&rot, &h, s.0, s.1));
            }
        }
        assert!(outer.len() <= 2, "component holds {} boundary vertices of the first refinement", outer.len());
        let piece = second.image(&comp);
        assert!(is_planar(&piece), "identified piece is not planar");
        pieces.push(piece);
    }
    for (u, v) in h2.edges() {
        pieces.push(Graph::from_edges(&[(u, v)]));
    }
    Ok((pieces, h2))
}

/// Decomposition into planar pieces following the embedded construction:
/// genus core, sectors at its vertices, refinement forests, and one piece per
/// component of each face plus the core's edges. Disconnected graphs are
/// handled per component.
pub fn decompose(g: &Graph, budget: usize, deadline: Deadline) -> Result<Decomposition> {
    let mut pieces = Vec::new();
    let mut core = Graph::new();
    for comp in g.components() {
        let gc = g.induced(&comp);
        let (p, h) = decompose_component(&gc, budget, deadline)?;
        pieces.extend(p);
        core = core.union(&h);
    }
    Ok(Decomposition::from_pieces(pieces, if core.is_empty() { None } else { Some(core) }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Planarization {
    Found { edges: Vec<Edge> },
    /// `exhaustive` is true when every edge set of size at most k was tried.
    NotFoundWithinK { exhaustive: bool },
}

fn has_cycle(edges: &[Edge]) -> bool {
    let mut parent: BTreeMap<V, V> = BTreeMap::new();
    fn find(p: &mut BTreeMap<V, V>, x: V) -> V {
        let mut r = x;
        while let Some(&q) = p.get(&r) {
            if q == r {
                break;
            }
            r = q;
        }
        p.insert(x, r);
        r
    }
    for &(u, v) in edges {
        parent.entry(u).or_insert(u);
        parent.entry(v).or_insert(v);
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return true;
        }
        parent.insert(a, b);
    }
    false
}

fn binom(m: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i as u128 + 1))
}

/// At most `k` edges whose contraction leaves a planar graph. Tries the
/// forest joining multi-piece vertices of a decomposition first, then every
/// acyclic edge set of size ≤ k when there are at most `max_sets` of them.
pub fn contraction_planarize(g: &Graph, k: usize, budget: usize, max_sets: u128, deadline: Deadline) -> Result<Planarization> {
    if is_planar(g) {
        return Ok(Planarization::Found { edges: Vec::new() });
    }
    if let Ok(d) = decompose(g, budget, deadline) {
        let mut count: BTreeMap<V, usize> = BTreeMap::new();
        for p in &d.pieces {
            for &v in &p.vertices {
                *count.entry(v).or_default() += 1;
            }
        }
        let s: VSet = count.into_iter().filter(|&(_, c)| c > 1).map(|(v, _)| v).collect();
        let f = minimal_connecting_forest(g, &s)?;
        if f.len() <= k && is_planar(&contract(g, &f)?) {
            return Ok(Planarization::Found { edges: f });
        }
    }
    let edges = g.edges();
    let m = edges.len();
    let total: u128 = (1..=k.min(m)).map(|j| binom(m, j)).sum();
    if total > max_sets {
        return Ok(Planarization::NotFoundWithinK { exhaustive: false });
    }
    let mut ticker = Ticker::new(deadline);
    for size in 1..=k.min(m) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if ticker.tick() {
                return Ok(Planarization::NotFoundWithinK { exhaustive: false });
            }
            let f: Vec<Edge> = idx.iter().map(|&i| edges[i]).collect();
            if !has_cycle(&f) && is_planar(&contract(g, &f)?) {
                return Ok(Planarization::Found { edges: f });
            }
            // next combination
            let mut j = size;
            while j > 0 && idx[j - 1] == m - size + j - 1 {
                j -= 1;
            }
            if j == 0 {
                break;
            }
            idx[j - 1] += 1;
            for t in j..size {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    Ok(Planarization::NotFoundWithinK { exhaustive: true })
}

/// Pieces as a decomposition of an explicit list, for user-supplied input.
pub fn decomposition_of(pieces: &[Graph]) -> Result<Decomposition> {
    if pieces.is_empty() {
        return invalid("a decomposition needs at least one piece");
    }
    Ok(Decomposition::from_pieces(pieces.to_vec(), None))
}
