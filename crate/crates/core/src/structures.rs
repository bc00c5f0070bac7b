//! Finite star-comb searches: stars and combs, 2-stars and dominating sets,
//! and double-stars, fans and ladders in 2-connected graphs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::connectivity::{blocks, max_disjoint_paths, minimal_connecting_forest};
use crate::error::{invalid, Error, Result};
use crate::graph::{edge, Edge, Graph, VSet, V};
use crate::limits::{Deadline, Search, Ticker};
use crate::minors::{find_minor, MinorModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombKind {
    Star,
    Comb,
    TwoStar,
    DoubleStar,
    Ladder,
    Fan,
    DominatingSet,
}

/// A level-`n` structure. `designated` holds centres (star, 2-star), the two
/// hubs (double-star) or the apex (fan); `spines` the spine (comb, fan) or the
/// two rails (ladder); `paths` the teeth, legs, rungs or apex paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombStructure {
    pub kind: CombKind,
    pub level: usize,
    #[serde(default)]
    pub designated: Vec<V>,
    #[serde(default)]
    pub spines: Vec<Vec<V>>,
    #[serde(default)]
    pub paths: Vec<Vec<V>>,
    #[serde(default)]
    pub dominating: Vec<V>,
}

impl CombStructure {
    fn new(kind: CombKind, level: usize) -> Self {
        CombStructure { kind, level, designated: Vec::new(), spines: Vec::new(), paths: Vec::new(), dominating: Vec::new() }
    }

    pub fn vertices(&self) -> VSet {
        let mut s: VSet = self.designated.iter().copied().collect();
        s.extend(self.spines.iter().flatten());
        s.extend(self.paths.iter().flatten());
        s.extend(&self.dominating);
        s
    }
}

fn check_path(g: &Graph, p: &[V]) -> std::result::Result<(), String> {
    if p.is_empty() {
        return Err("empty path".into());
    }
    if p.iter().collect::<BTreeSet<_>>().len() != p.len() {
        return Err(format!("{p:?} repeats a vertex"));
    }
    if !g.has_vertex(p[0]) {
        return Err(format!("{} is not a vertex", p[0]));
    }
    if let Some(w) = p.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        return Err(format!("{}-{} is not an edge", w[0], w[1]));
    }
    Ok(())
}

fn pairwise_disjoint(parts: &[&[V]]) -> bool {
    let mut seen = VSet::new();
    parts.iter().all(|p| p.iter().all(|&v| seen.insert(v)))
}

/// Checks the defining properties of `s` in `g` with marked set `u`.
pub fn verify_structure(g: &Graph, u: &VSet, s: &CombStructure) -> std::result::Result<(), String> {
    let n = s.level;
    for p in s.spines.iter().chain(&s.paths) {
        check_path(g, p)?;
    }
    let interior = |p: &[V]| -> Vec<V> { if p.len() > 2 { p[1..p.len() - 1].to_vec() } else { Vec::new() } };
    let marked_count = s.vertices().intersection(u).count();
    match s.kind {
        CombKind::Star | CombKind::TwoStar => {
            let [c] = s.designated[..] else { return Err("star needs one centre".into()) };
            let min_len = if s.kind == CombKind::Star { 2 } else { 3 };
            if s.paths.len() < n {
                return Err(format!("{} legs, level {n}", s.paths.len()));
            }
            for p in &s.paths {
                if p[0] != c || p.len() < min_len || !u.contains(p.last().unwrap()) {
                    return Err(format!("bad leg {p:?}"));
                }
            }
            let tails: Vec<&[V]> = s.paths.iter().map(|p| &p[1..]).collect();
            if !pairwise_disjoint(&tails) {
                return Err("legs meet outside the centre".into());
            }
        }
        CombKind::Comb => {
            let [spine] = &s.spines[..] else { return Err("comb needs one spine".into()) };
            let sp: VSet = spine.iter().copied().collect();
            if s.paths.len() < n {
                return Err(format!("{} teeth, level {n}", s.paths.len()));
            }
            for t in &s.paths {
                if !sp.contains(&t[0]) || t[1..].iter().any(|v| sp.contains(v)) || !u.contains(t.last().unwrap()) {
                    return Err(format!("bad tooth {t:?}"));
                }
            }
            let parts: Vec<&[V]> = s.paths.iter().map(|p| &p[..]).collect();
            if !pairwise_disjoint(&parts) {
                return Err("teeth are not disjoint".into());
            }
        }
        CombKind::DoubleStar => {
            let [a, b] = s.designated[..] else { return Err("double-star needs two hubs".into()) };
            if s.paths.len() < n {
                return Err(format!("{} paths, level {n}", s.paths.len()));
            }
            for p in &s.paths {
                if p[0] != a || *p.last().unwrap() != b || p.len() < 3 || !interior(p).iter().any(|v| u.contains(v)) {
                    return Err(format!("bad path {p:?}"));
                }
            }
            let ins: Vec<Vec<V>> = s.paths.iter().map(|p| interior(p)).collect();
            let parts: Vec<&[V]> = ins.iter().map(|p| &p[..]).collect();
            if !pairwise_disjoint(&parts) {
                return Err("paths are not internally disjoint".into());
            }
        }
        CombKind::Fan => {
            let [d] = s.designated[..] else { return Err("fan needs one apex".into()) };
            let [r] = &s.spines[..] else { return Err("fan needs one spine".into()) };
            let rs: VSet = r.iter().copied().collect();
            if rs.contains(&d) || s.paths.len() < n || marked_count < n {
                return Err("fan too small or apex on spine".into());
            }
            for p in &s.paths {
                if p[0] != d || p.len() < 2 || !rs.contains(p.last().unwrap()) || p[..p.len() - 1].iter().any(|v| rs.contains(v)) {
                    return Err(format!("bad apex path {p:?}"));
                }
            }
            let tails: Vec<&[V]> = s.paths.iter().map(|p| &p[1..]).collect();
            if !pairwise_disjoint(&tails) {
                return Err("apex paths meet outside the apex".into());
            }
        }
        CombKind::Ladder => {
            let [r, l] = &s.spines[..] else { return Err("ladder needs two rails".into()) };
            if !pairwise_disjoint(&[r, l]) {
                return Err("rails meet".into());
            }
            let (rs, ls): (VSet, VSet) = (r.iter().copied().collect(), l.iter().copied().collect());
            if s.paths.len() < n || marked_count < n {
                return Err("ladder too small".into());
            }
            for p in &s.paths {
                let inner = &p[1..p.len() - 1];
                if p.len() < 2 || !rs.contains(&p[0]) || !ls.contains(p.last().unwrap()) || inner.iter().any(|v| rs.contains(v) || ls.contains(v)) {
                    return Err(format!("bad rung {p:?}"));
                }
            }
            let parts: Vec<&[V]> = s.paths.iter().map(|p| &p[..]).collect();
            if !pairwise_disjoint(&parts) {
                return Err("rungs are not disjoint".into());
            }
        }
        CombKind::DominatingSet => {
            if s.dominating.len() > n {
                return Err(format!("dominating set of size {} exceeds {n}", s.dominating.len()));
            }
            let mut cl: VSet = s.dominating.iter().copied().collect();
            for &d in &s.dominating {
                if !g.has_vertex(d) {
                    return Err(format!("{d} is not a vertex"));
                }
                cl.extend(g.neighbors(d));
            }
            if let Some(x) = u.iter().find(|x| !cl.contains(x)) {
                return Err(format!("{x} is not dominated"));
            }
        }
    }
    Ok(())
}

fn checked(g: &Graph, u: &VSet, s: CombStructure) -> Result<CombStructure> {
    verify_structure(g, u, &s).map_err(|e| Error::Precondition(format!("constructed {:?} fails verification: {e}", s.kind)))?;
    Ok(s)
}

/// Depth-first spanning tree of the component of `root`: parent links and
/// children in visiting order.
fn dfs_tree(g: &Graph, root: V) -> (BTreeMap<V, V>, BTreeMap<V, Vec<V>>, Vec<V>) {
    let mut parent = BTreeMap::from([(root, root)]);
    let mut children: BTreeMap<V, Vec<V>> = BTreeMap::new();
    let mut order = vec![root];
    let mut stack: Vec<(V, Vec<V>)> = vec![(root, g.neighbors(root).collect())];
    while let Some((v, rest)) = stack.last_mut() {
        let v = *v;
        match rest.pop() {
            Some(w) if !parent.contains_key(&w) => {
                parent.insert(w, v);
                children.entry(v).or_default().push(w);
                order.push(w);
                let nb: Vec<V> = g.neighbors(w).collect();
                stack.push((w, nb.into_iter().rev().collect()));
            }
            Some(_) => {}
            None => {
                stack.pop();
            }
        }
    }
    (parent, children, order)
}

/// Largest comb whose spine descends the rooted tree from some vertex.
fn tree_comb(children: &BTreeMap<V, Vec<V>>, order: &[V], u: &VSet) -> Option<(Vec<V>, Vec<Vec<V>>)> {
    let kids = |v: V| children.get(&v).map_or(&[][..], |c| &c[..]);
    let mut cnt: BTreeMap<V, usize> = BTreeMap::new();
    for &v in order.iter().rev() {
        let c = usize::from(u.contains(&v)) + kids(v).iter().map(|c| cnt[c]).sum::<usize>();
        cnt.insert(v, c);
    }
    // best[v] = (teeth, next spine vertex)
    let mut best: BTreeMap<V, (usize, Option<V>)> = BTreeMap::new();
    for &v in order.iter().rev() {
        let live: Vec<V> = kids(v).iter().copied().filter(|c| cnt[c] > 0).collect();
        let here = u.contains(&v);
        let mut b = (usize::from(here || !live.is_empty()), None);
        for &c in &live {
            let side = here || live.iter().any(|&o| o != c);
            let t = best[&c].0 + usize::from(side);
            if t >= b.0 {
                b = (t, Some(c));
            }
        }
        best.insert(v, b);
    }
    let (&start, _) = best.iter().max_by_key(|(v, b)| (b.0, std::cmp::Reverse(**v)))?;
    let down = |mut x: V| -> Vec<V> {
        let mut p = vec![x];
        while !u.contains(&x) {
            x = *kids(x).iter().find(|c| cnt[c] > 0).unwrap();
            p.push(x);
        }
        p
    };
    let mut spine = Vec::new();
    let mut teeth = Vec::new();
    let mut v = start;
    loop {
        spine.push(v);
        let next = best[&v].1;
        if u.contains(&v) {
            teeth.push(vec![v]);
        } else if let Some(&c) = kids(v).iter().find(|&&c| cnt[&c] > 0 && Some(c) != next) {
            let mut t = vec![v];
            t.extend(down(c));
            teeth.push(t);
        }
        match next {
            Some(c) => v = c,
            None => break,
        }
    }
    Some((spine, teeth))
}

fn best_comb(g: &Graph, u: &VSet, ticker: &mut Ticker) -> Option<(Vec<V>, Vec<Vec<V>>)> {
    let mut best: Option<(Vec<V>, Vec<Vec<V>>)> = None;
    for r in g.vertices() {
        if ticker.tick() {
            break;
        }
        let (_, children, order) = dfs_tree(g, r);
        if let Some(c) = tree_comb(&children, &order, u) {
            if best.as_ref().map_or(true, |b| c.1.len() > b.1.len()) {
                best = Some(c);
            }
        }
    }
    best
}

fn truncate_at(p: &[V], stop: &VSet) -> Vec<V> {
    let i = p.iter().position(|v| stop.contains(v)).unwrap_or(p.len() - 1);
    p[..=i].to_vec()
}

/// Up to `n` legs from `c` to `targets`, disjoint apart from `c`.
fn star_at(g: &Graph, c: V, targets: &VSet, n: usize) -> Result<Option<Vec<Vec<V>>>> {
    let h = g.without_vertices(&VSet::from([c]));
    let srcs: VSet = g.neighbors(c).collect();
    let tg: VSet = targets.iter().copied().filter(|&t| t != c && h.has_vertex(t)).collect();
    if srcs.len() < n || tg.len() < n {
        return Ok(None);
    }
    let m = max_disjoint_paths(&h, &srcs, &tg, false)?;
    if m.paths.len() < n {
        return Ok(None);
    }
    Ok(Some(
        m.paths.paths.iter().take(n).map(|p| std::iter::once(c).chain(truncate_at(p, &tg)).collect()).collect(),
    ))
}

fn require_connected(g: &Graph, u: &VSet) -> Result<()> {
    if !g.is_connected() {
        return invalid("graph must be connected");
    }
    if let Some(x) = u.iter().find(|x| !g.has_vertex(**x)) {
        return invalid(format!("marked vertex {x} not in graph"));
    }
    Ok(())
}

/// A level-`n` star (legs to `u`) or comb (teeth ending in `u`) in connected `g`.
/// A miss is reported as budget-exhausted; it cannot happen on trees with
/// `|u| ≥ n²` for `n ≤ 6`.
pub fn star_comb(g: &Graph, u: &VSet, n: usize, deadline: Deadline) -> Result<CombStructure> {
    require_connected(g, u)?;
    if n == 0 {
        return invalid("level must be at least 1");
    }
    let mut ticker = Ticker::new(deadline);
    for c in g.vertices() {
        if let Some(paths) = star_at(g, c, u, n)? {
            let mut s = CombStructure::new(CombKind::Star, n);
            s.designated = vec![c];
            s.paths = paths;
            return checked(g, u, s);
        }
        if ticker.tick() {
            return Err(Error::BudgetExhausted("star search timed out".into()));
        }
    }
    if let Some((spine, mut teeth)) = best_comb(g, u, &mut ticker) {
        if teeth.len() >= n {
            teeth.truncate(n);
            let mut s = CombStructure::new(CombKind::Comb, n);
            s.spines = vec![spine];
            s.paths = teeth;
            return checked(g, u, s);
        }
    }
    Err(Error::BudgetExhausted(format!("no level-{n} star or comb found")))
}

/// Dominating set from the U-dominant vertices (at least `n` marked
/// neighbours) plus the undominated rest, or a greedy cover if smaller.
fn dominating_set(g: &Graph, u: &VSet, n: usize) -> Vec<V> {
    let closed = |v: V| -> VSet { g.neighbors(v).chain(std::iter::once(v)).collect() };
    let dom: VSet = g.vertices().filter(|&v| g.neighbors(v).filter(|x| u.contains(x)).count() >= n).collect();
    let mut covered = VSet::new();
    for &d in &dom {
        covered.extend(closed(d));
    }
    let mut proof: Vec<V> = dom.iter().copied().collect();
    proof.extend(u.iter().copied().filter(|x| !covered.contains(x)));
    let mut greedy = Vec::new();
    let mut left: VSet = u.clone();
    while !left.is_empty() {
        let v = g.vertices().max_by_key(|&v| (closed(v).intersection(&left).count(), std::cmp::Reverse(v))).unwrap();
        left = left.difference(&closed(v)).copied().collect();
        greedy.push(v);
    }
    greedy.sort_unstable();
    proof.sort_unstable();
    if greedy.len() < proof.len() {
        greedy
    } else {
        proof
    }
}

/// A set of at most `d` vertices dominating `u`, a level-`n` 2-star with
/// leaves in `u`, or a level-`n` comb.
pub fn two_star_search(g: &Graph, u: &VSet, n: usize, d: usize, deadline: Deadline) -> Result<CombStructure> {
    require_connected(g, u)?;
    if n == 0 {
        return invalid("level must be at least 1");
    }
    let ds = dominating_set(g, u, n);
    if ds.len() <= d {
        let mut s = CombStructure::new(CombKind::DominatingSet, d);
        s.dominating = ds;
        return checked(g, u, s);
    }
    let mut ticker = Ticker::new(deadline);
    for c in g.vertices() {
        // leaves off the closed neighbourhood give legs of length at least 2
        let mut far = u.clone();
        far.remove(&c);
        for w in g.neighbors(c) {
            far.remove(&w);
        }
        if let Some(paths) = star_at(g, c, &far, n)? {
            let mut s = CombStructure::new(CombKind::TwoStar, n);
            s.designated = vec![c];
            s.paths = paths;
            return checked(g, u, s);
        }
        if ticker.tick() {
            return Err(Error::BudgetExhausted("2-star search timed out".into()));
        }
    }
    if let Some((spine, mut teeth)) = best_comb(g, u, &mut ticker) {
        if teeth.len() >= n {
            teeth.truncate(n);
            let mut s = CombStructure::new(CombKind::Comb, n);
            s.spines = vec![spine];
            s.paths = teeth;
            return checked(g, u, s);
        }
    }
    Err(Error::BudgetExhausted(format!("no dominating set of size {d}, 2-star or comb of level {n} found")))
}

fn is_two_connected(g: &Graph) -> bool {
    let bc = blocks(g);
    g.n() >= 3 && bc.blocks.len() == 1 && bc.isolated.is_empty() && bc.blocks[0].vertices.len() == g.n()
}

/// Path from `c` through a marked vertex of `branch` to `a`, with interior in `branch`.
fn ear(g: &Graph, branch: &VSet, c: V, a: V, u: &VSet) -> Result<Option<Vec<V>>> {
    let mut keep = branch.clone();
    keep.insert(c);
    keep.insert(a);
    let mut h = g.induced(&keep);
    h.remove_edge(c, a);
    for &x in branch.iter().filter(|x| u.contains(x)) {
        let hx = h.without_vertices(&VSet::from([x]));
        let srcs: VSet = h.neighbors(x).collect();
        if srcs.len() < 2 {
            continue;
        }
        let ends = VSet::from([c, a]);
        let m = max_disjoint_paths(&hx, &srcs, &ends, false)?;
        if m.paths.len() < 2 {
            continue;
        }
        let p: Vec<Vec<V>> = m.paths.paths.iter().map(|p| truncate_at(p, &ends)).collect();
        let (to_c, to_a) = if *p[0].last().unwrap() == c { (&p[0], &p[1]) } else { (&p[1], &p[0]) };
        let mut out: Vec<V> = to_c.iter().rev().copied().collect();
        out.push(x);
        out.extend(to_a);
        return Ok(Some(out));
    }
    Ok(None)
}

fn double_star(g: &Graph, u: &VSet, n: usize, ticker: &mut Ticker) -> Result<Option<CombStructure>> {
    for r in g.vertices().take(3) {
        let (parent, children, order) = dfs_tree(g, r);
        let mut subtree: BTreeMap<V, VSet> = BTreeMap::new();
        for &v in order.iter().rev() {
            let mut s = VSet::from([v]);
            for c in children.get(&v).into_iter().flatten() {
                s.extend(&subtree[c]);
            }
            subtree.insert(v, s);
        }
        for &c in &order[1..] {
            let mut ancestors = Vec::new();
            let mut x = c;
            while x != r {
                x = parent[&x];
                ancestors.push(x);
            }
            let branches: Vec<&VSet> =
                children.get(&c).into_iter().flatten().map(|k| &subtree[k]).filter(|b| b.iter().any(|x| u.contains(x))).collect();
            if branches.len() < n {
                continue;
            }
            for &a in &ancestors {
                if ticker.tick() {
                    return Err(Error::BudgetExhausted("double-star search timed out".into()));
                }
                let mut ears = Vec::new();
                for b in &branches {
                    if let Some(e) = ear(g, b, c, a, u)? {
                        ears.push(e);
                        if ears.len() == n {
                            break;
                        }
                    }
                }
                if ears.len() == n {
                    let mut s = CombStructure::new(CombKind::DoubleStar, n);
                    s.designated = vec![c, a];
                    s.paths = ears;
                    return Ok(Some(s));
                }
            }
        }
    }
    Ok(None)
}

fn fan(g: &Graph, u: &VSet, n: usize, ticker: &mut Ticker) -> Result<Option<CombStructure>> {
    for d in g.vertices() {
        if g.degree(d) < n {
            continue;
        }
        let h = g.without_vertices(&VSet::from([d]));
        let Some((spine, _)) = best_comb(&h, u, ticker) else { continue };
        let rs: VSet = spine.iter().copied().collect();
        let srcs: VSet = g.neighbors(d).collect();
        let m = max_disjoint_paths(&h, &srcs, &rs, false)?;
        if m.paths.len() < n {
            continue;
        }
        let mut s = CombStructure::new(CombKind::Fan, n);
        s.designated = vec![d];
        s.spines = vec![spine];
        s.paths = m.paths.paths.iter().map(|p| std::iter::once(d).chain(truncate_at(p, &rs)).collect()).collect();
        if verify_structure(g, u, &s).is_ok() {
            return Ok(Some(s));
        }
        if ticker.tick() {
            return Err(Error::BudgetExhausted("fan search timed out".into()));
        }
    }
    Ok(None)
}

/// Host paths realising each pattern edge, for a minor model of a pattern of
/// maximum degree 3; the branch vertex of `p` is the median of its attachment points.
pub fn subdivision_from_model(g: &Graph, h: &Graph, m: &MinorModel) -> Result<BTreeMap<Edge, Vec<V>>> {
    if h.vertices().any(|p| h.degree(p) > 3) {
        return invalid("subdivisions are extracted only for patterns of maximum degree 3");
    }
    let mut centre: BTreeMap<V, V> = BTreeMap::new();
    let mut legs: BTreeMap<(V, V), Vec<V>> = BTreeMap::new();
    for p in h.vertices() {
        let b = &m.branch_sets[&p];
        let att: Vec<(V, V)> = h
            .neighbors(p)
            .map(|q| {
                let (x, y) = m.edges[&edge(p, q)];
                (q, if b.contains(&x) { x } else { y })
            })
            .collect();
        let pts: VSet = att.iter().map(|a| a.1).collect();
        let tree = Graph::from_edges(&minimal_connecting_forest(&g.induced(b), &pts)?);
        let path = |s: V, t: V| -> Vec<V> {
            if s == t {
                return vec![s];
            }
            tree.shortest_path_to(s, &VSet::from([t]), &VSet::new()).expect("branch tree is connected")
        };
        let c = match att.len() {
            0 => *b.iter().next().unwrap(),
            1 | 2 => att[0].1,
            _ => {
                let (x, y, z) = (att[0].1, att[1].1, att[2].1);
                let pxy: VSet = path(x, y).into_iter().collect();
                let pyz: VSet = path(y, z).into_iter().collect();
                *path(x, z).iter().find(|v| pxy.contains(v) && pyz.contains(v)).unwrap()
            }
        };
        centre.insert(p, c);
        for (q, x) in att {
            legs.insert((p, q), path(c, x));
        }
    }
    let mut out = BTreeMap::new();
    for (p, q) in h.edges() {
        let mut route = legs[&(p, q)].clone();
        route.extend(legs[&(q, p)].iter().rev());
        out.insert((p, q), route);
    }
    Ok(out)
}

/// Ladder with `n` rungs: rails 0..n and n..2n, rung i joins i and n + i.
fn ladder_graph(n: u32) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(i);
        g.add_edge(i, n + i);
        if i + 1 < n {
            g.add_edge(i, i + 1);
            g.add_edge(n + i, n + i + 1);
        }
    }
    g
}

fn ladder(g: &Graph, u: &VSet, n: usize, deadline: Deadline) -> Result<Option<CombStructure>> {
    let k = n as u32;
    let lg = ladder_graph(k);
    let m = match find_minor(g, &lg, deadline)? {
        Search::Found(m) => m,
        Search::Absent => return Ok(None),
        Search::Timeout => return Err(Error::BudgetExhausted("ladder search timed out".into())),
    };
    let routes = subdivision_from_model(g, &lg, &m)?;
    let rail = |off: u32| -> Vec<V> {
        if k == 1 {
            let rung = &routes[&(0, 1)];
            return vec![if off == 0 { rung[0] } else { *rung.last().unwrap() }];
        }
        let mut r = vec![routes[&(off, off + 1)][0]];
        for i in off..off + k - 1 {
            r.extend(&routes[&(i, i + 1)][1..]);
        }
        r
    };
    let mut s = CombStructure::new(CombKind::Ladder, n);
    s.spines = vec![rail(0), rail(k)];
    s.paths = (0..k).map(|i| routes[&(i, k + i)].clone()).collect();
    Ok(if verify_structure(g, u, &s).is_ok() { Some(s) } else { None })
}

/// Level-`n` double-star, fan or ladder in a 2-connected graph, tried in that order.
pub fn two_connected_structures(g: &Graph, u: &VSet, n: usize, deadline: Deadline) -> Result<CombStructure> {
    if !is_two_connected(g) {
        return invalid("graph must be 2-connected");
    }
    if n == 0 {
        return invalid("level must be at least 1");
    }
    if let Some(x) = u.iter().find(|x| !g.has_vertex(**x)) {
        return invalid(format!("marked vertex {x} not in graph"));
    }
    let mut ticker = Ticker::new(deadline);
    if let Some(s) = double_star(g, u, n, &mut ticker)? {
        return checked(g, u, s);
    }
    if let Some(s) = fan(g, u, n, &mut ticker)? {
        return checked(g, u, s);
    }
    if let Some(s) = ladder(g, u, n, deadline)? {
        return checked(g, u, s);
    }
    Err(Error::BudgetExhausted(format!("no level-{n} double-star, fan or ladder found")))
}
