//! Witness-or-flaw engines for almost-forests (by deletion and by
//! contraction), almost-outerplanar and almost-planar graphs, and the
//! classifier that turns vertex flaws into Σ witnesses.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::connectivity::minimal_connecting_forest;
use crate::decomposition::{decompose, Decomposition};
use crate::embedding::{is_planar, kuratowski_subgraph, min_genus, GenusOutcome, Rotation};
use crate::error::{invalid, Error, Result};
use crate::graph::{cone, contract, edge, named, Edge, Graph, MarkedGraph, VSet, V};
use crate::limits::{Deadline, Search};
use crate::minors::{find_minor, pack_bouquet, pack_disjoint, verify_model, MinorModel};
use crate::outerplanar::{su_obstruction, SuOutcome};
use crate::patterns::{convert_to_sigma, sigma, AuxKind, PatternId};
use crate::structures::{star_comb, two_star_search, CombKind, CombStructure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "set", rename_all = "snake_case")]
pub enum Flaw {
    Edges(Vec<Edge>),
    Vertices(Vec<V>),
    Contraction(Vec<Edge>),
}

impl Flaw {
    pub fn len(&self) -> usize {
        match self {
            Flaw::Edges(e) | Flaw::Contraction(e) => e.len(),
            Flaw::Vertices(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DichotomyOutcome {
    Witness { pattern: PatternId, model: MinorModel },
    Flaw { flaw: Flaw },
    BudgetExhausted { reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    ForestDel,
    ForestCon,
    Outerplanar,
    PlanarV,
}

impl Engine {
    pub fn run(self, g: &Graph, n: u32, k: usize, deadline: Deadline) -> Result<DichotomyOutcome> {
        match self {
            Engine::ForestDel => forest_edge_dichotomy(g, n, k, deadline),
            Engine::ForestCon => forest_contract_dichotomy(g, n, k, deadline),
            Engine::Outerplanar => almost_outerplanar_dichotomy(g, n, k, deadline),
            Engine::PlanarV => planar_vertex_flaws(g, n, k, deadline),
        }
    }

    fn patterns(self, n: u32) -> Vec<PatternId> {
        let aux = |ks: &[AuxKind]| ks.iter().map(|&a| PatternId::aux(a, n)).collect();
        match self {
            Engine::ForestDel => aux(&[AuxKind::OmegaK3, AuxKind::VeeK3, AuxKind::K2w]),
            Engine::ForestCon => aux(&[AuxKind::OmegaK3, AuxKind::VeeK3]),
            Engine::Outerplanar => {
                aux(&[AuxKind::OmegaK4, AuxKind::OmegaK23, AuxKind::VeeK4, AuxKind::G1, AuxKind::G2, AuxKind::K2w])
            }
            Engine::PlanarV => vec![PatternId::sigma(1, n), PatternId::sigma(2, n)],
        }
    }

    /// Re-checks a witness model, or applies a flaw and re-tests the base class.
    pub fn verify(self, g: &Graph, n: u32, k: usize, out: &DichotomyOutcome) -> std::result::Result<(), String> {
        match out {
            DichotomyOutcome::Witness { pattern, model } => {
                if !self.patterns(n).contains(pattern) {
                    return Err(format!("{pattern} is not a witness of this engine at level {n}"));
                }
                let p = pattern.build().map_err(|e| e.to_string())?;
                let rep = verify_model(g, &p.graph, model);
                if rep.ok {
                    Ok(())
                } else {
                    Err(rep.violations.join("; "))
                }
            }
            DichotomyOutcome::Flaw { flaw } => {
                if flaw.len() > k {
                    return Err(format!("flaw of size {} exceeds {k}", flaw.len()));
                }
                let ok = match (self, flaw) {
                    (Engine::ForestDel, Flaw::Edges(f)) => {
                        f.iter().all(|e| g.has_edge(e.0, e.1)) && g.without_edges(f).is_forest()
                    }
                    (Engine::ForestCon, Flaw::Contraction(f)) => contract(g, f).map(|h| h.is_forest()).unwrap_or(false),
                    (Engine::Outerplanar, Flaw::Edges(f)) => {
                        f.iter().all(|e| g.has_edge(e.0, e.1)) && is_outerplanar(&g.without_edges(f))
                    }
                    (Engine::PlanarV, Flaw::Vertices(w)) => is_planar(&g.without_vertices(&w.iter().copied().collect())),
                    _ => return Err("flaw kind does not match the engine".into()),
                };
                if ok {
                    Ok(())
                } else {
                    Err("base-class test fails after applying the flaw".into())
                }
            }
            DichotomyOutcome::BudgetExhausted { .. } => Ok(()),
        }
    }
}

pub fn is_outerplanar(g: &Graph) -> bool {
    let (c, _) = cone(g, &g.vertex_set()).expect("all vertices exist");
    is_planar(&c)
}

fn witness(g: &Graph, pattern: PatternId, sets: BTreeMap<V, VSet>) -> Result<DichotomyOutcome> {
    let p = pattern.build()?;
    let model = MinorModel::from_branch_sets(g, &p.graph, sets);
    let rep = verify_model(g, &p.graph, &model);
    if !rep.ok {
        return Err(Error::Precondition(format!("{pattern} witness: {}", rep.violations.join("; "))));
    }
    Ok(DichotomyOutcome::Witness { pattern, model })
}

fn exhausted(reason: impl Into<String>) -> DichotomyOutcome {
    DichotomyOutcome::BudgetExhausted { reason: reason.into() }
}

/// Branch sets for copy `j` of a pattern built by gluing copies of a base
/// with `w = base.fresh_id()`; `hub` keeps its id.
fn merged(models: &[MinorModel], w: V, hub: Option<V>) -> BTreeMap<V, VSet> {
    let mut sets: BTreeMap<V, VSet> = BTreeMap::new();
    for (j, m) in models.iter().enumerate() {
        for (&v, b) in &m.branch_sets {
            let t = if Some(v) == hub { v } else { v + j as V * w };
            sets.entry(t).or_default().extend(b.iter().copied());
        }
    }
    sets
}

/// Splits a path of at least two vertices into two nonempty consecutive halves.
fn halves(p: &[V]) -> (VSet, VSet) {
    let mid = p.len() / 2;
    (p[..mid].iter().copied().collect(), p[mid..].iter().copied().collect())
}

/// Greedy vertex-disjoint shortest cycles.
fn disjoint_cycles(g: &Graph) -> Vec<Vec<V>> {
    let mut h = g.clone();
    let mut out = Vec::new();
    while let Some(c) = h.shortest_cycle() {
        h = h.without_vertices(&c.iter().copied().collect());
        out.push(c);
    }
    out
}

/// Greedy cycles through `v` pairwise meeting only in `v`, each starting at `v`.
fn cycles_through(g: &Graph, v: V) -> Vec<Vec<V>> {
    let mut h = g.clone();
    let mut out = Vec::new();
    while let Some(mut c) = h.shortest_cycle_through(v) {
        let i = c.iter().position(|&x| x == v).unwrap();
        c.rotate_left(i);
        h = h.without_vertices(&c[1..].iter().copied().collect());
        out.push(c);
    }
    out
}

fn omega_k3(g: &Graph, n: u32) -> Result<Option<DichotomyOutcome>> {
    let cycles = disjoint_cycles(g);
    if cycles.len() < n as usize {
        return Ok(None);
    }
    let mut sets = BTreeMap::new();
    for (j, c) in cycles.iter().take(n as usize).enumerate() {
        let j = j as V * 3;
        sets.insert(j, VSet::from([c[0]]));
        let (a, b) = halves(&c[1..]);
        sets.insert(j + 1, a);
        sets.insert(j + 2, b);
    }
    witness(g, PatternId::aux(AuxKind::OmegaK3, n), sets).map(Some)
}

fn vee_k3(g: &Graph, n: u32) -> Result<Option<DichotomyOutcome>> {
    for v in g.vertices() {
        if g.degree(v) < 2 * n as usize {
            continue;
        }
        let cycles = cycles_through(g, v);
        if cycles.len() >= n as usize {
            let mut sets = BTreeMap::from([(0, VSet::from([v]))]);
            for (j, c) in cycles.iter().take(n as usize).enumerate() {
                let (a, b) = halves(&c[1..]);
                sets.insert(1 + 3 * j as V, a);
                sets.insert(2 + 3 * j as V, b);
            }
            return witness(g, PatternId::aux(AuxKind::VeeK3, n), sets).map(Some);
        }
    }
    Ok(None)
}

/// K_{2,n} from a star or comb on the neighbours of `v` in `g − v`.
fn k2n_at(g: &Graph, v: V, n: u32, deadline: Deadline) -> Result<Option<DichotomyOutcome>> {
    let h = g.without_vertices(&VSet::from([v]));
    let nv: VSet = g.neighbors(v).collect();
    for comp in h.components() {
        let u: VSet = comp.intersection(&nv).copied().collect();
        if u.len() < n as usize {
            continue;
        }
        let hc = h.induced(&comp);
        let s: CombStructure = match star_comb(&hc, &u, n as usize, deadline) {
            Ok(s) => s,
            Err(Error::BudgetExhausted(_)) => continue,
            Err(e) => return Err(e),
        };
        let mut sets = BTreeMap::from([(0, VSet::from([v]))]);
        match s.kind {
            CombKind::Star => {
                sets.insert(1, VSet::from([s.designated[0]]));
                for (i, leg) in s.paths.iter().enumerate() {
                    sets.insert(2 + i as V, leg[1..].iter().copied().collect());
                }
            }
            _ => {
                let teeth: Vec<&Vec<V>> = s.paths.iter().filter(|t| t.len() > 1).collect();
                if teeth.len() < n as usize {
                    continue;
                }
                let mut hub: VSet = s.spines[0].iter().copied().collect();
                for (i, t) in teeth.iter().take(n as usize).enumerate() {
                    hub.extend(&t[..t.len() - 1]);
                    sets.insert(2 + i as V, VSet::from([*t.last().unwrap()]));
                }
                sets.insert(1, hub);
            }
        }
        return witness(g, PatternId::aux(AuxKind::K2w, n), sets).map(Some);
    }
    Ok(None)
}

fn exact_packing(g: &Graph, pattern: PatternId, base: &Graph, n: u32, deadline: Deadline) -> Result<Option<DichotomyOutcome>> {
    let p = pack_disjoint(g, base, n as usize, deadline)?;
    if p.models.len() >= n as usize {
        return witness(g, pattern, merged(&p.models[..n as usize], base.fresh_id(), None)).map(Some);
    }
    Ok(None)
}

fn exact_bouquet(
    g: &Graph,
    pattern: PatternId,
    base: &Graph,
    hub: V,
    n: u32,
    centers: Option<&VSet>,
    deadline: Deadline,
) -> Result<Option<DichotomyOutcome>> {
    if let Search::Found(b) = pack_bouquet(g, base, hub, n as usize, centers, deadline)? {
        return witness(g, pattern, merged(&b.models, base.fresh_id(), Some(hub))).map(Some);
    }
    Ok(None)
}

fn exact_minor(g: &Graph, pattern: PatternId, deadline: Deadline) -> Result<Option<DichotomyOutcome>> {
    let p = pattern.build()?;
    Ok(find_minor(g, &p.graph, deadline)?.found().map(|model| DichotomyOutcome::Witness { pattern, model }))
}

fn check_level(n: u32) -> Result<()> {
    if n == 0 {
        return invalid("level must be at least 1");
    }
    Ok(())
}

/// n·K3, bouquet of n triangles or K_{2,n}; or at most `k` edges whose
/// deletion leaves a forest (exactly when the cycle rank is at most `k`).
pub fn forest_edge_dichotomy(g: &Graph, n: u32, k: usize, deadline: Deadline) -> Result<DichotomyOutcome> {
    check_level(n)?;
    if g.cycle_rank() <= k {
        let forest: VSet2 = g.spanning_forest().into_iter().collect();
        let f: Vec<Edge> = g.edges().into_iter().filter(|e| !forest.contains(e)).collect();
        return Ok(DichotomyOutcome::Flaw { flaw: Flaw::Edges(f) });
    }
    if let Some(w) = omega_k3(g, n)? {
        return Ok(w);
    }
    if let Some(w) = vee_k3(g, n)? {
        return Ok(w);
    }
    for v in g.vertices() {
        if g.degree(v) >= n as usize {
            if let Some(w) = k2n_at(g, v, n, deadline)? {
                return Ok(w);
            }
        }
    }
    let k3 = named::complete(3);
    if let Some(w) = exact_packing(g, PatternId::aux(AuxKind::OmegaK3, n), &k3, n, deadline)? {
        return Ok(w);
    }
    if let Some(w) = exact_bouquet(g, PatternId::aux(AuxKind::VeeK3, n), &k3, 0, n, None, deadline)? {
        return Ok(w);
    }
    if let Some(w) = exact_minor(g, PatternId::aux(AuxKind::K2w, n), deadline)? {
        return Ok(w);
    }
    Ok(exhausted(format!("cycle rank {} exceeds {k} but no level-{n} witness was found", g.cycle_rank())))
}

type VSet2 = std::collections::BTreeSet<Edge>;

/// Greedy feedback vertex set: highest-degree vertex of a shortest cycle, then pruned.
fn feedback_vertices(g: &Graph) -> Vec<V> {
    let mut h = g.clone();
    let mut w = Vec::new();
    while let Some(c) = h.shortest_cycle() {
        let x = *c.iter().max_by_key(|&&x| (h.degree(x), std::cmp::Reverse(x))).unwrap();
        h.remove_vertex(x);
        w.push(x);
    }
    let mut i = w.len();
    while i > 0 {
        i -= 1;
        let rest: VSet = w.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        if g.without_vertices(&rest).is_forest() {
            w.remove(i);
        }
    }
    w.sort_unstable();
    w
}

/// n·K3 or a bouquet of n triangles; or at most `k` edges whose contraction
/// leaves a forest, built from a tree through a feedback vertex set and the
/// dominating sets of the components hanging off it.
pub fn forest_contract_dichotomy(g: &Graph, n: u32, k: usize, deadline: Deadline) -> Result<DichotomyOutcome> {
    check_level(n)?;
    if g.is_forest() {
        return Ok(DichotomyOutcome::Flaw { flaw: Flaw::Contraction(Vec::new()) });
    }
    if let Some(w) = omega_k3(g, n)? {
        return Ok(w);
    }
    let w = feedback_vertices(g);
    let wset: VSet = w.iter().copied().collect();
    let mut fset: Vec<Edge> = Vec::new();
    let mut feasible = true;
    for comp in g.components() {
        let wc: VSet = comp.intersection(&wset).copied().collect();
        if wc.is_empty() {
            continue;
        }
        let gc = g.induced(&comp);
        let tree = minimal_connecting_forest(&gc, &wc)?;
        let mut tv = wc.clone();
        for &(a, b) in &tree {
            tv.insert(a);
            tv.insert(b);
        }
        fset.extend(&tree);
        let rest = gc.without_vertices(&tv);
        let attach = |x: V| -> Vec<V> { gc.neighbors(x).filter(|t| tv.contains(t)).collect() };
        let heavy: Vec<VSet> =
            rest.components().into_iter().filter(|c| c.iter().map(|&x| attach(x).len()).sum::<usize>() >= 2).collect();
        // n components with two attachments at distinct vertices give the bouquet directly
        let mut cyc: Vec<Vec<V>> = Vec::new();
        for c in &heavy {
            let ends: Vec<V> = c.iter().copied().filter(|&x| !attach(x).is_empty()).collect();
            if ends.len() >= 2 {
                let p = rest.induced(c).shortest_path_to(ends[0], &VSet::from([ends[1]]), &VSet::new()).unwrap();
                cyc.push(p);
            }
        }
        if cyc.len() >= n as usize {
            let mut sets = BTreeMap::from([(0, tv.clone())]);
            for (j, p) in cyc.iter().take(n as usize).enumerate() {
                let (a, b) = halves(p);
                sets.insert(1 + 3 * j as V, a);
                sets.insert(2 + 3 * j as V, b);
            }
            return witness(g, PatternId::aux(AuxKind::VeeK3, n), sets);
        }
        for c in &heavy {
            let ci = rest.induced(c);
            let ui: VSet = c.iter().copied().filter(|&x| !attach(x).is_empty()).collect();
            match two_star_search(&ci, &ui, 2 * n as usize, k, deadline) {
                Ok(s) if s.kind == CombKind::DominatingSet => {
                    // contract a tree of C + v through the dominating set, v standing for the contracted tree
                    let v = g.fresh_id();
                    let mut gi = ci.clone();
                    for &x in &ui {
                        gi.add_edge(v, x);
                    }
                    let mut terms: VSet = s.dominating.iter().copied().collect();
                    terms.insert(v);
                    for (a, b) in minimal_connecting_forest(&gi, &terms)? {
                        if a == v || b == v {
                            let x = if a == v { b } else { a };
                            fset.push(edge(x, attach(x)[0]));
                        } else {
                            fset.push((a, b));
                        }
                    }
                }
                Ok(s) if s.kind == CombKind::TwoStar => {
                    let mut hub = tv.clone();
                    hub.extend(&s.paths[0]);
                    let mut sets = BTreeMap::from([(0, hub)]);
                    for (j, leg) in s.paths[1..].iter().take(n as usize).enumerate() {
                        let (a, b) = halves(&leg[1..]);
                        sets.insert(1 + 3 * j as V, a);
                        sets.insert(2 + 3 * j as V, b);
                    }
                    if s.paths.len() > n as usize {
                        return witness(g, PatternId::aux(AuxKind::VeeK3, n), sets);
                    }
                    feasible = false;
                }
                Ok(s) => {
                    // comb: consecutive teeth pairs close disjoint cycles through the tree
                    let spine = &s.spines[0];
                    let pos: BTreeMap<V, usize> = spine.iter().enumerate().map(|(i, &x)| (x, i)).collect();
                    let mut teeth = s.paths.clone();
                    teeth.sort_by_key(|t| pos[&t[0]]);
                    let mut sets = BTreeMap::from([(0, tv.clone())]);
                    for (j, pair) in teeth.chunks(2).take(n as usize).enumerate() {
                        if pair.len() < 2 {
                            break;
                        }
                        let (ta, tb) = (&pair[0], &pair[1]);
                        let mut p: Vec<V> = ta.iter().rev().copied().collect();
                        p.extend(&spine[pos[&ta[0]] + 1..pos[&tb[0]]]);
                        p.extend(tb);
                        let (a, b) = halves(&p);
                        sets.insert(1 + 3 * j as V, a);
                        sets.insert(2 + 3 * j as V, b);
                    }
                    if sets.len() == 1 + 2 * n as usize {
                        return witness(g, PatternId::aux(AuxKind::VeeK3, n), sets);
                    }
                    feasible = false;
                }
                Err(Error::BudgetExhausted(_)) => feasible = false,
                Err(e) => return Err(e),
            }
        }
    }
    fset.sort_unstable();
    fset.dedup();
    if feasible && fset.len() <= k && contract(g, &fset)?.is_forest() {
        return Ok(DichotomyOutcome::Flaw { flaw: Flaw::Contraction(fset) });
    }
    let k3 = named::complete(3);
    if let Some(w) = exact_packing(g, PatternId::aux(AuxKind::OmegaK3, n), &k3, n, deadline)? {
        return Ok(w);
    }
    if let Some(w) = exact_bouquet(g, PatternId::aux(AuxKind::VeeK3, n), &k3, 0, n, None, deadline)? {
        return Ok(w);
    }
    Ok(exhausted(format!("no contraction set of size {k} and no level-{n} witness found")))
}

/// Greedily deletes elements hit by Kuratowski subgraphs of the test graph
/// until `ok` holds, then drops every element not needed.
fn greedy_flaw<T: Copy + Ord>(
    g: &Graph,
    ok: impl Fn(&Graph) -> bool,
    apply: impl Fn(&Graph, &[T]) -> Graph,
    pick: impl Fn(&Graph) -> T,
) -> Vec<T> {
    let mut f: Vec<T> = Vec::new();
    let mut h = g.clone();
    while !ok(&h) {
        f.push(pick(&h));
        h = apply(g, &f);
    }
    let mut i = f.len();
    while i > 0 {
        i -= 1;
        let rest: Vec<T> = f.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        if ok(&apply(g, &rest)) {
            f.remove(i);
        }
    }
    f.sort_unstable();
    f
}

fn cone_obstruction(h: &Graph) -> (Graph, V) {
    let (c, z) = cone(h, &h.vertex_set()).expect("all vertices exist");
    (kuratowski_subgraph(&c).expect("cone is not planar"), z)
}

/// n·K4, n·K_{2,3}, bouquets of K4 or K_{2,3} (at a degree-3 or degree-2
/// vertex), or K_{2,n}; or at most `k` edges whose deletion leaves an
/// outerplanar graph.
pub fn almost_outerplanar_dichotomy(g: &Graph, n: u32, k: usize, deadline: Deadline) -> Result<DichotomyOutcome> {
    check_level(n)?;
    let f = greedy_flaw(
        g,
        is_outerplanar,
        |g, f: &[Edge]| g.without_edges(f),
        |h| {
            let (kw, z) = cone_obstruction(h);
            kw.edges().into_iter().find(|e| e.0 != z && e.1 != z).unwrap()
        },
    );
    if f.len() <= k {
        return Ok(DichotomyOutcome::Flaw { flaw: Flaw::Edges(f) });
    }
    let k4 = named::complete(4);
    let k23 = named::complete_bipartite(2, 3);
    if let Some(w) = exact_packing(g, PatternId::aux(AuxKind::OmegaK4, n), &k4, n, deadline)? {
        return Ok(w);
    }
    if let Some(w) = exact_packing(g, PatternId::aux(AuxKind::OmegaK23, n), &k23, n, deadline)? {
        return Ok(w);
    }
    let wv = greedy_flaw(
        g,
        is_outerplanar,
        |g, w: &[V]| g.without_vertices(&w.iter().copied().collect()),
        |h| {
            let (kw, z) = cone_obstruction(h);
            kw.vertices().filter(|&x| x != z).max_by_key(|&x| (h.degree(x), std::cmp::Reverse(x))).unwrap()
        },
    );
    let bouquets = [(AuxKind::VeeK4, &k4, 0), (AuxKind::G1, &k23, 0), (AuxKind::G2, &k23, 2)];
    for &v in &wv {
        let others: VSet = wv.iter().copied().filter(|&x| x != v).collect();
        let gv = g.without_vertices(&others);
        for (kind, base, hub) in bouquets {
            if let Some(w) = exact_bouquet(&gv, PatternId::aux(kind, n), base, hub, n, Some(&VSet::from([v])), deadline)? {
                return Ok(restate(g, w));
            }
        }
        if let Some(w) = k2n_at(&gv, v, n, deadline)? {
            return Ok(restate(g, w));
        }
    }
    for (kind, base, hub) in bouquets {
        if let Some(w) = exact_bouquet(g, PatternId::aux(kind, n), base, hub, n, None, deadline)? {
            return Ok(w);
        }
    }
    if let Some(w) = exact_minor(g, PatternId::aux(AuxKind::K2w, n), deadline)? {
        return Ok(w);
    }
    Ok(exhausted(format!("no edge set of size {k} and no level-{n} witness found")))
}

/// A model found in a subgraph, with edges re-chosen in the full graph.
fn restate(g: &Graph, out: DichotomyOutcome) -> DichotomyOutcome {
    match out {
        DichotomyOutcome::Witness { pattern, model } => {
            let p = pattern.build().expect("pattern built before");
            DichotomyOutcome::Witness { pattern, model: MinorModel::from_branch_sets(g, &p.graph, model.branch_sets) }
        }
        other => other,
    }
}

fn binom(m: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i as u128 + 1))
}

/// Smallest vertex set (up to `k`) whose deletion leaves a planar graph:
/// exhaustive when there are at most `limit` candidate sets, else greedy.
pub fn planarizing_vertices(g: &Graph, k: usize, limit: u128) -> (Option<Vec<V>>, bool) {
    let verts: Vec<V> = g.vertices().collect();
    let m = verts.len();
    let total: u128 = (0..=k.min(m)).map(|j| binom(m, j)).sum();
    if total <= limit {
        for size in 0..=k.min(m) {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let s: VSet = idx.iter().map(|&i| verts[i]).collect();
                if is_planar(&g.without_vertices(&s)) {
                    return (Some(s.into_iter().collect()), true);
                }
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
        return (None, true);
    }
    let w = greedy_flaw(
        g,
        is_planar,
        |g, w: &[V]| g.without_vertices(&w.iter().copied().collect()),
        |h| {
            let kw = kuratowski_subgraph(h).expect("not planar");
            kw.vertices().filter(|&x| kw.degree(x) >= 3).max_by_key(|&x| (h.degree(x), std::cmp::Reverse(x))).unwrap()
        },
    );
    (if w.len() <= k { Some(w) } else { None }, false)
}

/// n·K5 or n·K33; or at most `k` vertices whose deletion leaves a planar graph.
pub fn planar_vertex_flaws(g: &Graph, n: u32, k: usize, deadline: Deadline) -> Result<DichotomyOutcome> {
    check_level(n)?;
    if let (Some(w), _) = planarizing_vertices(g, k, 200_000) {
        return Ok(DichotomyOutcome::Flaw { flaw: Flaw::Vertices(w) });
    }
    for i in [1u8, 2] {
        let base = sigma(i, 1)?;
        if let Some(w) = exact_packing(g, PatternId::sigma(i, n), &base, n, deadline)? {
            return Ok(w);
        }
    }
    Ok(exhausted(format!("no planarizing set of size {k} and no {n} disjoint K5 or K33 minors found")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaWitness {
    pub pattern: PatternId,
    pub model: MinorModel,
    /// How the witness was obtained.
    pub via: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "certificate", rename_all = "snake_case")]
pub enum Certificate {
    Genus { genus: usize, rotation: Rotation },
    /// The graph with all flaw vertices but `vertex` removed has genus at most `genus`.
    FlawVertex { vertex: V, genus: usize, rotation: Rotation },
    Decomposition { decomposition: Decomposition },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub flaw: Option<Vec<V>>,
    pub witnesses: Vec<SigmaWitness>,
    pub certificates: Vec<Certificate>,
    pub exhausted: Vec<String>,
}

/// Σ witnesses for `g` at level `n`: packings, then per vertex `v` of a
/// planarizing set the obstruction of `(g − others − v, N(v))` converted to a
/// Σ model, then a direct search for each Σᵢ(n). On the embeddable side the
/// report carries genus and decomposition certificates.
pub fn classify(g: &Graph, n: u32, k: usize, budget: usize, deadline: Deadline) -> Result<ClassifyReport> {
    check_level(n)?;
    let mut rep = ClassifyReport::default();
    if is_planar(g) {
        rep.flaw = Some(Vec::new());
        rep.certificates.push(Certificate::Decomposition { decomposition: Decomposition::from_pieces(vec![g.clone()], None) });
        return Ok(rep);
    }
    match planar_vertex_flaws(g, n, k, deadline)? {
        DichotomyOutcome::Witness { pattern, model } => {
            rep.witnesses.push(SigmaWitness { pattern, model, via: "disjoint packing".into() });
        }
        DichotomyOutcome::Flaw { flaw: Flaw::Vertices(w) } => {
            for &v in &w {
                let others: VSet = w.iter().copied().filter(|&x| x != v).collect();
                let g1 = g.without_vertices(&others);
                let mut base = g1.clone();
                base.remove_vertex(v);
                let h = MarkedGraph::new(base, g1.nbr_set(v).clone())?;
                match su_obstruction(&h, budget, n, deadline) {
                    Ok(SuOutcome::Witness { pattern, model }) => {
                        let conv = convert_to_sigma(&g1, v, &pattern, &model)?;
                        let sp = PatternId::sigma(conv.sigma, conv.level);
                        let sg = sigma(conv.sigma, conv.level)?;
                        let model = MinorModel::from_branch_sets(g, &sg, conv.model.branch_sets);
                        rep.witnesses.push(SigmaWitness { pattern: sp, model, via: format!("{pattern} at vertex {v}") });
                    }
                    Ok(SuOutcome::Embeddable { genus, cone_vertex, rotation }) => {
                        let rotation = Rotation {
                            rotation: rotation
                                .rotation
                                .into_iter()
                                .map(|(x, r)| {
                                    let f = |y: V| if y == cone_vertex { v } else { y };
                                    (f(x), r.into_iter().map(f).collect())
                                })
                                .collect(),
                        };
                        rep.certificates.push(Certificate::FlawVertex { vertex: v, genus, rotation });
                    }
                    Err(Error::BudgetExhausted(r)) => rep.exhausted.push(format!("vertex {v}: {r}")),
                    Err(e) => return Err(e),
                }
            }
            rep.flaw = Some(w);
        }
        DichotomyOutcome::Flaw { .. } => unreachable!("vertex engine returns vertex flaws"),
        DichotomyOutcome::BudgetExhausted { reason } => rep.exhausted.push(reason),
    }
    for i in 1..=8u8 {
        if rep.witnesses.iter().any(|w| w.pattern.index == i) {
            continue;
        }
        let sg = sigma(i, n)?;
        match find_minor(g, &sg, deadline)? {
            Search::Found(model) => rep.witnesses.push(SigmaWitness { pattern: PatternId::sigma(i, n), model, via: "direct search".into() }),
            Search::Absent => {}
            Search::Timeout => rep.exhausted.push(format!("direct search for {} timed out", PatternId::sigma(i, n))),
        }
    }
    rep.witnesses.sort_by_key(|w| w.pattern);
    if rep.witnesses.is_empty() {
        match min_genus(g, budget, deadline) {
            GenusOutcome::Exact { genus, rotation } => rep.certificates.push(Certificate::Genus { genus, rotation }),
            other => rep.exhausted.push(format!("genus: lower bound {}", other.lower_bound())),
        }
        match decompose(g, budget, deadline) {
            Ok(d) => rep.certificates.push(Certificate::Decomposition { decomposition: d }),
            Err(Error::BudgetExhausted(r)) => rep.exhausted.push(format!("decomposition: {r}")),
            Err(e) => return Err(e),
        }
    }
    Ok(rep)
}

/// Re-verifies every witness of a classification against its Σ pattern.
pub fn verify_report(g: &Graph, rep: &ClassifyReport) -> std::result::Result<(), String> {
    for w in &rep.witnesses {
        let p = w.pattern.build().map_err(|e| e.to_string())?;
        let r = verify_model(g, &p.graph, &w.model);
        if !r.ok {
            return Err(format!("{}: {}", w.pattern, r.violations.join("; ")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::aux_pattern;

    fn run(e: Engine, g: &Graph, n: u32, k: usize) -> DichotomyOutcome {
        let out = e.run(g, n, k, Deadline::none()).unwrap();
        e.verify(g, n, k, &out).unwrap();
        out
    }

    fn pattern_of(o: &DichotomyOutcome) -> Option<PatternId> {
        match o {
            DichotomyOutcome::Witness { pattern, .. } => Some(*pattern),
            _ => None,
        }
    }

    #[test]
    fn forest_edge() {
        let t = named::path(6);
        assert_eq!(run(Engine::ForestDel, &t, 2, 0), DichotomyOutcome::Flaw { flaw: Flaw::Edges(vec![]) });
        let tri = named::copies(&named::complete(3), 4);
        assert_eq!(pattern_of(&run(Engine::ForestDel, &tri, 4, 3)), Some(PatternId::aux(AuxKind::OmegaK3, 4)));
        let k = named::complete_bipartite(2, 8);
        let out = run(Engine::ForestDel, &k, 5, 2);
        assert_eq!(pattern_of(&out), Some(PatternId::aux(AuxKind::K2w, 5)));
        assert!(find_minor(&k, &named::complete_bipartite(2, 5), Deadline::none()).unwrap().is_found());
        let b = aux_pattern(AuxKind::VeeK3, 4).unwrap().graph;
        assert_eq!(pattern_of(&run(Engine::ForestDel, &b, 4, 1)), Some(PatternId::aux(AuxKind::VeeK3, 4)));
    }

    #[test]
    fn forest_contract() {
        let k = named::complete_bipartite(2, 6);
        match run(Engine::ForestCon, &k, 3, 2) {
            DichotomyOutcome::Flaw { flaw } => assert_eq!(flaw.len(), 2),
            other => panic!("{other:?}"),
        }
        // one contraction cannot do it
        for e in k.edges() {
            assert!(!contract(&k, &[e]).unwrap().is_forest());
        }
        let b = aux_pattern(AuxKind::VeeK3, 4).unwrap().graph;
        assert_eq!(pattern_of(&run(Engine::ForestCon, &b, 4, 2)), Some(PatternId::aux(AuxKind::VeeK3, 4)));
        let tri = named::copies(&named::complete(3), 3);
        assert_eq!(pattern_of(&run(Engine::ForestCon, &tri, 3, 2)), Some(PatternId::aux(AuxKind::OmegaK3, 3)));
        assert!(matches!(run(Engine::ForestCon, &tri, 4, 3), DichotomyOutcome::Flaw { .. }));
    }

    #[test]
    fn outerplanar_engine() {
        let c = named::cycle(7);
        assert_eq!(run(Engine::Outerplanar, &c, 2, 0), DichotomyOutcome::Flaw { flaw: Flaw::Edges(vec![]) });
        let k4s = named::copies(&named::complete(4), 3);
        assert_eq!(pattern_of(&run(Engine::Outerplanar, &k4s, 3, 1)), Some(PatternId::aux(AuxKind::OmegaK4, 3)));
        for kind in [AuxKind::G1, AuxKind::G2, AuxKind::VeeK4] {
            let g = aux_pattern(kind, 3).unwrap().graph;
            assert_eq!(pattern_of(&run(Engine::Outerplanar, &g, 3, 1)), Some(PatternId::aux(kind, 3)), "{kind:?}");
        }
    }

    #[test]
    fn planar_vertices() {
        let w = named::wheel(6);
        assert_eq!(run(Engine::PlanarV, &w, 2, 0), DichotomyOutcome::Flaw { flaw: Flaw::Vertices(vec![]) });
        let k5s = sigma(1, 3).unwrap();
        assert_eq!(pattern_of(&run(Engine::PlanarV, &k5s, 3, 2)), Some(PatternId::sigma(1, 3)));
        let k6 = named::complete(6);
        match run(Engine::PlanarV, &k6, 2, 2) {
            DichotomyOutcome::Flaw { flaw } => assert_eq!(flaw.len(), 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(run(Engine::PlanarV, &k6, 2, 1), DichotomyOutcome::BudgetExhausted { .. }));
    }

    #[test]
    fn classify_examples() {
        let g = sigma(3, 3).unwrap();
        let rep = classify(&g, 3, 2, 0, Deadline::none()).unwrap();
        verify_report(&g, &rep).unwrap();
        assert!(rep.witnesses.iter().any(|w| w.pattern == PatternId::sigma(3, 3) && w.via != "direct search"), "{rep:?}");
        let u5 = crate::patterns::u_pattern(5, false, 3).unwrap();
        let (c, _) = crate::patterns::marked_cone(&u5);
        let rep = classify(&c, 3, 2, 0, Deadline::none()).unwrap();
        assert!(rep.witnesses.iter().any(|w| w.pattern == PatternId::sigma(8, 3)));
        let rep = classify(&named::wheel(5), 2, 1, 0, Deadline::none()).unwrap();
        assert!(rep.witnesses.is_empty() && rep.certificates.len() == 1);
    }
}
