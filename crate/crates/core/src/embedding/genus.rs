//! Minimum orientable genus by branch-and-bound over rotation systems.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::planarity::is_planar;
use super::{concat_rotations, planarity, Planarity, Rotation};
use crate::connectivity::blocks;
use crate::graph::{Graph, V};
use crate::limits::{Deadline, Ticker};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GenusOutcome {
    Exact { genus: usize, rotation: Rotation },
    /// Exhaustive search showed the genus is at least `lower_bound` > budget.
    ExceedsBudget { lower_bound: usize },
    /// Timed out; `lower_bound` is still certified, `upper` is the best rotation seen.
    Unknown { lower_bound: usize, upper: Option<(usize, Rotation)> },
}

impl GenusOutcome {
    pub fn genus(&self) -> Option<usize> {
        match self {
            GenusOutcome::Exact { genus, .. } => Some(*genus),
            _ => None,
        }
    }

    pub fn rotation(&self) -> Option<&Rotation> {
        match self {
            GenusOutcome::Exact { rotation, .. } => Some(rotation),
            _ => None,
        }
    }

    pub fn lower_bound(&self) -> usize {
        match self {
            GenusOutcome::Exact { genus, .. } => *genus,
            GenusOutcome::ExceedsBudget { lower_bound } | GenusOutcome::Unknown { lower_bound, .. } => *lower_bound,
        }
    }
}

/// Euler and girth lower bound for a connected graph with at least one cycle.
fn euler_lower_bound(nv: usize, ne: usize, girth: usize) -> usize {
    let fmax = (2 * ne) / girth.max(3);
    let twice = 2 + ne as i64 - nv as i64 - fmax as i64;
    if twice <= 0 {
        0
    } else {
        ((twice + 1) / 2) as usize
    }
}

fn girth(g: &Graph) -> usize {
    g.shortest_cycle().map_or(usize::MAX, |c| c.len())
}

enum Lift {
    Leaf { leaf: V, at: V },
    Suppressed { w: V, a: V, b: V },
}

/// Removes leaves and suppresses degree-2 vertices with non-adjacent
/// neighbours. Genus is unchanged; the log undoes the reduction on rotations.
fn reduce(g: &Graph) -> (Graph, Vec<Lift>) {
    let mut h = g.clone();
    let mut log = Vec::new();
    loop {
        let mut changed = false;
        let vs: Vec<V> = h.vertices().collect();
        for v in vs {
            if !h.has_vertex(v) {
                continue;
            }
            match h.degree(v) {
                1 => {
                    let at = h.neighbors(v).next().unwrap();
                    h.remove_vertex(v);
                    log.push(Lift::Leaf { leaf: v, at });
                    changed = true;
                }
                2 => {
                    let ab: Vec<V> = h.neighbors(v).collect();
                    let (a, b) = (ab[0], ab[1]);
                    if !h.has_edge(a, b) {
                        h.remove_vertex(v);
                        h.add_edge(a, b);
                        log.push(Lift::Suppressed { w: v, a, b });
                        changed = true;
                    }
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    (h, log)
}

fn lift(mut rot: Rotation, log: &[Lift]) -> Rotation {
    for step in log.iter().rev() {
        match *step {
            Lift::Leaf { leaf, at } => {
                rot.rotation.entry(at).or_default().push(leaf);
                rot.rotation.insert(leaf, vec![at]);
            }
            Lift::Suppressed { w, a, b } => {
                for (x, y) in [(a, b), (b, a)] {
                    let r = rot.rotation.get_mut(&x).unwrap();
                    let i = r.iter().position(|&z| z == y).unwrap();
                    r[i] = w;
                }
                rot.rotation.insert(w, vec![a, b]);
            }
        }
    }
    rot
}

enum Kernel {
    Exact(usize, Rotation),
    Exceeds(usize),
    Timeout(usize),
}

/// Edge-insertion search: grows a connected embedded subgraph one edge at a
/// time. An edge joining two corners of one face splits it; joining corners of
/// different faces adds a handle, so the handle count is the genus.
struct Grow<'a> {
    edges: &'a [(usize, usize)],
    done: Vec<bool>,
    present: Vec<bool>,
    rot: Vec<Vec<usize>>,
    handles: usize,
    budget: usize,
    ticker: Ticker,
}

impl<'a> Grow<'a> {
    /// Face id of every corner: `faces[v][i]` is the face of the corner after `rot[v][i]`.
    fn corner_faces(&self) -> Vec<Vec<usize>> {
        let n = self.rot.len();
        let mut face: Vec<Vec<usize>> = self.rot.iter().map(|r| vec![usize::MAX; r.len()]).collect();
        let mut nf = 0;
        for v in 0..n {
            for i in 0..self.rot[v].len() {
                if face[v][i] != usize::MAX {
                    continue;
                }
                let (mut x, mut k) = (v, i);
                while face[x][k] == usize::MAX {
                    face[x][k] = nf;
                    let r = &self.rot[x];
                    let w = r[(k + 1) % r.len()];
                    k = self.rot[w].iter().position(|&y| y == x).unwrap();
                    x = w;
                }
                nf += 1;
            }
        }
        face
    }

    fn run(&mut self) -> bool {
        if self.ticker.tick() {
            return false;
        }
        let faces = self.corner_faces();
        let r = self.budget - self.handles;
        // (options, edge, closing)
        let mut pick: Option<(usize, usize, bool)> = None;
        for (ei, &(u, v)) in self.edges.iter().enumerate() {
            if self.done[ei] || !(self.present[u] || self.present[v]) {
                continue;
            }
            let opts = if self.present[u] && self.present[v] {
                let (fu, fv) = (&faces[u], &faces[v]);
                let same: usize = fu.iter().map(|f| fv.iter().filter(|g| *g == f).count()).sum();
                if r == 0 {
                    if same == 0 {
                        return false;
                    }
                    same
                } else {
                    fu.len() * fv.len()
                }
            } else {
                let a = if self.present[u] { u } else { v };
                self.rot[a].len().max(1)
            };
            let closing = self.present[u] && self.present[v];
            if pick.map_or(true, |(o, _, _)| opts < o) {
                pick = Some((opts, ei, closing));
            }
        }
        let Some((_, ei, closing)) = pick else {
            return true;
        };
        let (u, v) = self.edges[ei];
        self.done[ei] = true;
        if closing {
            let (fu, fv) = (faces[u].clone(), faces[v].clone());
            for i in 0..fu.len() {
                for j in 0..fv.len() {
                    let handle = fu[i] != fv[j];
                    if handle && self.handles == self.budget {
                        continue;
                    }
                    self.rot[u].insert(i + 1, v);
                    self.rot[v].insert(j + 1, u);
                    self.handles += handle as usize;
                    if self.run() {
                        return true;
                    }
                    self.handles -= handle as usize;
                    self.rot[u].remove(i + 1);
                    self.rot[v].remove(j + 1);
                }
            }
        } else {
            let (a, b) = if self.present[u] { (u, v) } else { (v, u) };
            self.present[b] = true;
            self.rot[b].push(a);
            let len = self.rot[a].len();
            for i in 0..len.max(1) {
                let at = if len == 0 { 0 } else { i + 1 };
                self.rot[a].insert(at, b);
                if self.run() {
                    return true;
                }
                self.rot[a].remove(at);
            }
            self.rot[b].pop();
            self.present[b] = false;
        }
        self.done[ei] = false;
        false
    }
}

/// Exact search on a connected graph by iterative deepening on the genus.
fn kernel(g: &Graph, budget: usize, lb: usize, deadline: Deadline) -> Kernel {
    let verts: Vec<V> = g.vertices().collect();
    let idx: BTreeMap<V, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (idx[&u], idx[&v])).collect();
    let start = (0..verts.len()).max_by_key(|&v| (g.degree(verts[v]), std::cmp::Reverse(v))).unwrap();
    let ticker = Ticker::new(deadline);
    let mut s = Grow {
        edges: &edges,
        done: vec![false; edges.len()],
        present: vec![false; verts.len()],
        rot: vec![Vec::new(); verts.len()],
        handles: 0,
        budget: lb,
        ticker,
    };
    s.present[start] = true;
    for b in lb..=budget {
        s.budget = b;
        if s.run() {
            let rotation = Rotation {
                rotation: s.rot.iter().enumerate().map(|(v, r)| (verts[v], r.iter().map(|&u| verts[u]).collect())).collect(),
            };
            return Kernel::Exact(s.handles, rotation);
        }
        if s.ticker.tripped() {
            return Kernel::Timeout(b);
        }
    }
    Kernel::Exceeds(budget + 1)
}

/// Certified lower bound for one block (0 iff planar).
fn block_lower_bound(b: &Graph) -> usize {
    if is_planar(b) {
        return 0;
    }
    euler_lower_bound(b.n(), b.m(), girth(b)).max(1)
}

/// Minimum genus and a witnessing rotation, or a certified lower bound above
/// `budget`. Works block by block; the genus of a graph is the sum over its blocks.
pub fn min_genus(g: &Graph, budget: usize, deadline: Deadline) -> GenusOutcome {
    let bc = blocks(g);
    let bgs: Vec<Graph> = bc.blocks.iter().map(|b| Graph::from_edges(&b.edges)).collect();
    let lbs: Vec<usize> = bgs.iter().map(block_lower_bound).collect();
    let total_lb: usize = lbs.iter().sum();
    if total_lb > budget {
        return GenusOutcome::ExceedsBudget { lower_bound: total_lb };
    }
    let mut parts: Vec<Rotation> = Vec::with_capacity(bgs.len() + 1);
    let mut done = 0usize;
    for (i, b) in bgs.iter().enumerate() {
        let later: usize = lbs[i + 1..].iter().sum();
        if lbs[i] == 0 {
            match planarity(b) {
                Planarity::Planar(r) => parts.push(r),
                Planarity::NonPlanar(_) => unreachable!("block planarity disagrees"),
            }
            continue;
        }
        let remaining = budget - done - later;
        let (h, log) = reduce(b);
        let hb = if h.m() > 0 { euler_lower_bound(h.n(), h.m(), girth(&h)).max(lbs[i]) } else { lbs[i] };
        if hb > remaining {
            return GenusOutcome::ExceedsBudget { lower_bound: done + hb + later };
        }
        match kernel(&h, remaining, hb, deadline) {
            Kernel::Exact(gb, r) => {
                done += gb;
                parts.push(lift(r, &log));
            }
            Kernel::Exceeds(l) => return GenusOutcome::ExceedsBudget { lower_bound: done + l + later },
            Kernel::Timeout(l) => return GenusOutcome::Unknown { lower_bound: done + l + later, upper: None },
        }
    }
    parts.push(Rotation { rotation: bc.isolated.iter().map(|&v| (v, Vec::new())).collect() });
    let rotation = concat_rotations(parts.iter());
    debug_assert_eq!(super::genus_of(g, &rotation).ok(), Some(done));
    GenusOutcome::Exact { genus: done, rotation }
}

/// Genus as the sum of separately computed per-block minimum genera, with the
/// block rotations glued at cut vertices.
pub fn genus_additivity(g: &Graph, budget: usize, deadline: Deadline) -> GenusOutcome {
    let bc = blocks(g);
    let mut total = 0usize;
    let mut parts = Vec::new();
    for b in &bc.blocks {
        let bg = Graph::from_edges(&b.edges);
        match min_genus(&bg, budget.saturating_sub(total), deadline) {
            GenusOutcome::Exact { genus, rotation } => {
                total += genus;
                parts.push(rotation);
            }
            GenusOutcome::ExceedsBudget { lower_bound } => {
                return GenusOutcome::ExceedsBudget { lower_bound: total + lower_bound }
            }
            GenusOutcome::Unknown { lower_bound, .. } => {
                return GenusOutcome::Unknown { lower_bound: total + lower_bound, upper: None }
            }
        }
    }
    parts.push(Rotation { rotation: bc.isolated.iter().map(|&v| (v, Vec::new())).collect() });
    GenusOutcome::Exact { genus: total, rotation: concat_rotations(parts.iter()) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::genus_of;
    use crate::graph::named;

    fn exact(g: &Graph, budget: usize) -> usize {
        let out = min_genus(g, budget, Deadline::none());
        let r = out.rotation().expect("exact outcome").clone();
        let k = out.genus().unwrap();
        assert_eq!(genus_of(g, &r).unwrap(), k);
        k
    }

    #[test]
    fn small_complete_graphs() {
        assert_eq!(exact(&named::complete(4), 3), 0);
        assert_eq!(exact(&named::complete(5), 3), 1);
        assert_eq!(exact(&named::complete_bipartite(3, 3), 3), 1);
        assert_eq!(exact(&named::complete(6), 3), 1);
        assert_eq!(exact(&named::complete(7), 3), 1);
        assert_eq!(exact(&named::petersen(), 3), 1);
        assert_eq!(exact(&named::complete_bipartite(3, 4), 3), 1);
        assert_eq!(exact(&named::complete_bipartite(4, 4), 3), 1);
    }

    #[test]
    fn budget_exceeded_is_certified() {
        assert_eq!(min_genus(&named::complete(5), 0, Deadline::none()), GenusOutcome::ExceedsBudget { lower_bound: 1 });
        let two = named::copies(&named::complete(5), 2);
        assert_eq!(min_genus(&two, 1, Deadline::none()).lower_bound(), 2);
        assert_eq!(exact(&two, 2), 2);
    }

    #[test]
    fn reductions_lift_back() {
        let mut g = named::complete(5);
        g.remove_edge(0, 1);
        g.add_edge(0, 7);
        g.add_edge(7, 1);
        g.add_edge(3, 9);
        assert_eq!(exact(&g, 2), 1);
    }
}
