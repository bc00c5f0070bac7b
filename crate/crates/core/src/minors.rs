//! Minor models: verification, backtracking search, disjoint and bouquet packings.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bits::{Bits, MAX_BITS};
use crate::error::{Error, Result};
use crate::graph::{edge, named, Edge, Graph, MarkedGraph, VSet, V};
use crate::limits::{Deadline, Search, Ticker};

/// Branch sets indexed by pattern vertex and one host edge per pattern edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RawModel", try_from = "RawModel")]
pub struct MinorModel {
    pub branch_sets: BTreeMap<V, VSet>,
    pub edges: BTreeMap<Edge, Edge>,
}

#[derive(Serialize, Deserialize)]
struct RawModel {
    branch_sets: BTreeMap<String, Vec<V>>,
    edges: BTreeMap<String, [V; 2]>,
}

impl From<MinorModel> for RawModel {
    fn from(m: MinorModel) -> Self {
        RawModel {
            branch_sets: m.branch_sets.into_iter().map(|(p, b)| (p.to_string(), b.into_iter().collect())).collect(),
            edges: m.edges.into_iter().map(|((u, v), (a, b))| (format!("{u}-{v}"), [a, b])).collect(),
        }
    }
}

impl TryFrom<RawModel> for MinorModel {
    type Error = String;

    fn try_from(r: RawModel) -> std::result::Result<Self, String> {
        let mut m = MinorModel::default();
        for (k, b) in r.branch_sets {
            let p: V = k.parse().map_err(|_| format!("bad pattern vertex {k:?}"))?;
            m.branch_sets.insert(p, b.into_iter().collect());
        }
        for (k, [a, b]) in r.edges {
            let (u, v) = k.split_once('-').ok_or_else(|| format!("bad edge key {k:?}"))?;
            let u: V = u.trim().parse().map_err(|_| format!("bad edge key {k:?}"))?;
            let v: V = v.trim().parse().map_err(|_| format!("bad edge key {k:?}"))?;
            m.edges.insert(edge(u, v), (a, b));
        }
        Ok(m)
    }
}

impl MinorModel {
    /// All host vertices used by branch sets.
    pub fn support(&self) -> VSet {
        self.branch_sets.values().flatten().copied().collect()
    }

    /// Pattern vertex whose branch set holds host vertex `x`.
    pub fn owner(&self, x: V) -> Option<V> {
        self.branch_sets.iter().find(|(_, b)| b.contains(&x)).map(|(&p, _)| p)
    }

    /// Model of `h` in `f` from `self` (h in g) and `outer` (g in f).
    pub fn compose(&self, outer: &MinorModel) -> MinorModel {
        let lift = |b: &VSet| -> VSet { b.iter().flat_map(|x| outer.branch_sets.get(x).into_iter().flatten().copied()).collect() };
        let mut m = MinorModel::default();
        for (&p, b) in &self.branch_sets {
            m.branch_sets.insert(p, lift(b));
        }
        for (&pe, &(a, b)) in &self.edges {
            if let Some(&e) = outer.edges.get(&edge(a, b)) {
                m.edges.insert(pe, e);
            }
        }
        m
    }

    /// Renames pattern vertices.
    pub fn relabel_pattern(&self, f: impl Fn(V) -> V) -> MinorModel {
        MinorModel {
            branch_sets: self.branch_sets.iter().map(|(&p, b)| (f(p), b.clone())).collect(),
            edges: self.edges.iter().map(|(&(u, v), &e)| (edge(f(u), f(v)), e)).collect(),
        }
    }

    /// Builds a model from branch sets alone, choosing the smallest connecting edge per pattern edge.
    pub fn from_branch_sets(g: &Graph, h: &Graph, branch_sets: BTreeMap<V, VSet>) -> MinorModel {
        let mut edges = BTreeMap::new();
        for (u, v) in h.edges() {
            let (Some(bu), Some(bv)) = (branch_sets.get(&u), branch_sets.get(&v)) else { continue };
            'found: for &a in bu {
                for b in g.neighbors(a) {
                    if bv.contains(&b) {
                        let (x, y) = if u < v { (a, b) } else { (b, a) };
                        edges.insert((u, v), (x, y));
                        break 'found;
                    }
                }
            }
        }
        MinorModel { branch_sets, edges }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

impl ModelReport {
    fn from(violations: Vec<String>) -> Self {
        ModelReport { ok: violations.is_empty(), violations }
    }
}

/// Checks every model invariant of `m` as a model of `h` in `g`.
pub fn verify_model(g: &Graph, h: &Graph, m: &MinorModel) -> ModelReport {
    ModelReport::from(model_violations(g, h, m))
}

fn model_violations(g: &Graph, h: &Graph, m: &MinorModel) -> Vec<String> {
    let mut bad = Vec::new();
    for p in h.vertices() {
        match m.branch_sets.get(&p) {
            None => bad.push(format!("coverage: no branch set for {p}")),
            Some(b) if b.is_empty() => bad.push(format!("coverage: empty branch set for {p}")),
            Some(_) => {}
        }
    }
    let mut owner: BTreeMap<V, V> = BTreeMap::new();
    for (&p, b) in &m.branch_sets {
        if !h.has_vertex(p) {
            bad.push(format!("coverage: {p} is not a pattern vertex"));
        }
        for &x in b {
            if !g.has_vertex(x) {
                bad.push(format!("host: {x} is not a host vertex"));
            }
            if let Some(q) = owner.insert(x, p) {
                bad.push(format!("disjointness: {x} in branch sets of {q} and {p}"));
            }
        }
        if let Some(&s) = b.iter().next() {
            let mut seen = VSet::from([s]);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if !g.has_vertex(x) {
                    continue;
                }
                for y in g.neighbors(x) {
                    if b.contains(&y) && seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            if seen.len() != b.len() {
                bad.push(format!("connectivity: branch set of {p} is not connected"));
            }
        }
    }
    for (u, v) in h.edges() {
        match m.edges.get(&(u, v)) {
            None => bad.push(format!("edge: no host edge for {u}-{v}")),
            Some(&(a, b)) => {
                let bu = m.branch_sets.get(&u);
                let bv = m.branch_sets.get(&v);
                let inside = |s: Option<&VSet>, x: V| s.is_some_and(|s| s.contains(&x));
                let joins = (inside(bu, a) && inside(bv, b)) || (inside(bu, b) && inside(bv, a));
                if !g.has_edge(a, b) {
                    bad.push(format!("edge: {a}-{b} is not a host edge"));
                } else if !joins {
                    bad.push(format!("edge: {a}-{b} does not join the branch sets of {u} and {v}"));
                }
            }
        }
    }
    for &(u, v) in m.edges.keys() {
        if !h.has_edge(u, v) {
            bad.push(format!("edge: {u}-{v} is not a pattern edge"));
        }
    }
    bad
}

/// As [`verify_model`], plus every marked pattern vertex has a marked host vertex in its branch set.
pub fn verify_marked_model(g: &MarkedGraph, h: &MarkedGraph, m: &MinorModel) -> ModelReport {
    let mut bad = model_violations(&g.graph, &h.graph, m);
    for &p in &h.marked {
        let ok = m.branch_sets.get(&p).is_some_and(|b| b.iter().any(|x| g.marked.contains(x)));
        if !ok {
            bad.push(format!("marking: branch set of marked {p} has no marked host vertex"));
        }
    }
    ModelReport::from(bad)
}

/// Extra constraints for [`find_minor_with`].
#[derive(Clone, Debug, Default)]
pub struct MinorQuery {
    /// Marked pattern vertices and the marked host vertices they must reach.
    pub marks: Option<(VSet, VSet)>,
    /// Host vertex that must lie in the branch set of one of the given pattern vertices.
    pub pins: Vec<(V, VSet)>,
    /// Pattern vertices with prescribed branch sets.
    pub fixed: BTreeMap<V, VSet>,
    /// Host vertices no branch set may use.
    pub avoid: VSet,
}

struct Kernel<'a> {
    hadj: Vec<Bits>,
    pnb: &'a [Vec<usize>],
    order: Vec<usize>,
    pos: Vec<usize>,
    pmarked: Vec<bool>,
    hmarked: Bits,
    // pinned host vertex, allowed pattern vertices, position of the last allowed one
    pins: Vec<(usize, Vec<bool>, usize)>,
    fixed: Vec<Option<Bits>>,
    branch: Vec<Bits>,
    free: Bits,
    ticker: Ticker,
}

impl<'a> Kernel<'a> {
    fn nbhd(&self, s: Bits) -> Bits {
        let mut out = Bits::EMPTY;
        for x in s.iter() {
            out = out.or(self.hadj[x]);
        }
        out.minus(s)
    }

    fn unplaced_nbrs(&self, p: usize, i: usize) -> usize {
        self.pnb[p].iter().filter(|&&q| self.pos[q] > i).count()
    }

    /// Host vertices that branch set of the pattern vertex at step `i` may not use.
    fn banned_for(&self, p: usize) -> Bits {
        let mut ban = Bits::EMPTY;
        for (x, allowed, _) in &self.pins {
            if !allowed[p] {
                ban.insert(*x);
            }
        }
        ban
    }

    fn acceptable(&self, i: usize, p: usize, s: Bits) -> bool {
        if self.pmarked[p] && !s.intersects(self.hmarked) {
            return false;
        }
        for (x, _, last) in &self.pins {
            if *last == i && self.free.contains(*x) && !s.contains(*x) {
                return false;
            }
        }
        let ns = self.nbhd(s);
        for &q in &self.pnb[p] {
            if self.pos[q] < i && !ns.intersects(self.branch[q]) {
                return false;
            }
        }
        let free_after = self.free.minus(s);
        if ns.and(free_after).count() < self.unplaced_nbrs(p, i) {
            return false;
        }
        for &q in &self.pnb[p] {
            if self.pos[q] < i {
                let need = self.unplaced_nbrs(q, i);
                if need > 0 && self.nbhd(self.branch[q]).and(free_after).count() < need {
                    return false;
                }
            }
        }
        true
    }

    fn place(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        if self.ticker.tick() {
            return false;
        }
        let p = self.order[i];
        if let Some(s) = self.fixed[p] {
            if !s.minus(self.free).is_empty() || !self.acceptable(i, p, s) {
                return false;
            }
            return self.commit(i, p, s);
        }
        let rest = self.order.len() - i - 1;
        let nfree = self.free.count();
        if nfree < rest + 1 {
            return false;
        }
        let max_size = nfree - rest;
        let avail = self.free.minus(self.banned_for(p));
        let anchor = self.pnb[p]
            .iter()
            .filter(|&&q| self.pos[q] < i)
            .map(|&q| self.nbhd(self.branch[q]).and(avail))
            .min_by_key(|b| b.count());
        let roots = anchor.unwrap_or(avail);
        let mut excluded = Bits::EMPTY;
        for r in roots.iter() {
            let s = Bits::single(r);
            let allowed = avail.minus(excluded);
            if self.extend(i, p, s, self.hadj[r].and(allowed), allowed, Bits::EMPTY, max_size) {
                return true;
            }
            if self.ticker.tripped() {
                return false;
            }
            excluded.insert(r);
        }
        false
    }

    fn commit(&mut self, i: usize, p: usize, s: Bits) -> bool {
        self.branch[p] = s;
        let saved = self.free;
        self.free = self.free.minus(s);
        let ok = self.place(i + 1);
        if !ok {
            self.free = saved;
            self.branch[p] = Bits::EMPTY;
        }
        ok
    }

    /// Visits every connected set containing `s` inside `allowed`, each once.
    #[allow(clippy::too_many_arguments)]
    fn extend(&mut self, i: usize, p: usize, s: Bits, frontier: Bits, allowed: Bits, banned: Bits, max_size: usize) -> bool {
        if self.ticker.tick() {
            return false;
        }
        if self.acceptable(i, p, s) && self.commit(i, p, s) {
            return true;
        }
        if s.count() >= max_size {
            return false;
        }
        let mut banned = banned;
        for w in frontier.minus(banned).iter() {
            let s2 = {
                let mut t = s;
                t.insert(w);
                t
            };
            let f2 = frontier.or(self.hadj[w]).and(allowed).minus(s2);
            if self.extend(i, p, s2, f2, allowed, banned, max_size) {
                return true;
            }
            if self.ticker.tripped() {
                return false;
            }
            banned.insert(w);
        }
        false
    }
}

/// Pattern order: highest degree first, then vertices with most already-ordered neighbours.
fn pattern_order(pnb: &[Vec<usize>], fixed: &[Option<Bits>]) -> Vec<usize> {
    let k = pnb.len();
    let mut done = vec![false; k];
    let mut seen = vec![0usize; k];
    let mut order = Vec::with_capacity(k);
    for _ in 0..k {
        let p = (0..k)
            .filter(|&p| !done[p])
            .max_by(|&a, &b| {
                let ka = (fixed[a].is_some(), seen[a] > 0 || order.is_empty(), seen[a], pnb[a].len());
                let kb = (fixed[b].is_some(), seen[b] > 0 || order.is_empty(), seen[b], pnb[b].len());
                ka.cmp(&kb).then(b.cmp(&a))
            })
            .unwrap();
        done[p] = true;
        order.push(p);
        for &q in &pnb[p] {
            seen[q] += 1;
        }
    }
    order
}

/// General minor search honouring the constraints in `q`.
pub fn find_minor_with(g: &Graph, h: &Graph, q: &MinorQuery, deadline: Deadline) -> Result<Search<MinorModel>> {
    let hv: Vec<V> = g.vertices().collect();
    if hv.len() > MAX_BITS {
        return Err(Error::Precondition(format!("minor search supports hosts up to {MAX_BITS} vertices")));
    }
    let hidx: BTreeMap<V, usize> = hv.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let pv: Vec<V> = h.vertices().collect();
    let pidx: BTreeMap<V, usize> = pv.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    if pv.is_empty() {
        return Ok(Search::Found(MinorModel::default()));
    }
    if pv.len() > hv.len() || h.m() > g.m() {
        return Ok(Search::Absent);
    }
    let to_bits = |s: &VSet| -> Result<Bits> {
        let mut b = Bits::EMPTY;
        for x in s {
            match hidx.get(x) {
                Some(&i) => b.insert(i),
                None => return Err(Error::InvalidArgument(format!("{x} is not a host vertex"))),
            }
        }
        Ok(b)
    };
    let hadj: Vec<Bits> = hv.iter().map(|&v| {
        let mut b = Bits::EMPTY;
        for u in g.neighbors(v) {
            b.insert(hidx[&u]);
        }
        b
    }).collect();
    let pnb: Vec<Vec<usize>> = pv.iter().map(|&v| h.neighbors(v).map(|u| pidx[&u]).collect()).collect();
    let mut fixed = vec![None; pv.len()];
    for (p, s) in &q.fixed {
        let Some(&i) = pidx.get(p) else {
            return Err(Error::InvalidArgument(format!("{p} is not a pattern vertex")));
        };
        fixed[i] = Some(to_bits(s)?);
    }
    let (pmarked, hmarked) = match &q.marks {
        Some((pm, hm)) => (pv.iter().map(|v| pm.contains(v)).collect(), to_bits(hm)?),
        None => (vec![false; pv.len()], Bits::EMPTY),
    };
    let order = pattern_order(&pnb, &fixed);
    let mut pos = vec![0; pv.len()];
    for (i, &p) in order.iter().enumerate() {
        pos[p] = i;
    }
    let mut pins = Vec::new();
    for (x, allowed) in &q.pins {
        let Some(&xi) = hidx.get(x) else {
            return Err(Error::InvalidArgument(format!("pinned {x} is not a host vertex")));
        };
        let mask: Vec<bool> = pv.iter().map(|v| allowed.contains(v)).collect();
        let last = (0..pv.len()).filter(|&p| mask[p]).map(|p| pos[p]).max();
        match last {
            Some(l) => pins.push((xi, mask, l)),
            None => return Ok(Search::Absent),
        }
    }
    let free = Bits::full(hv.len()).minus(to_bits(&q.avoid)?);
    let mut k = Kernel {
        hadj,
        pnb: &pnb,
        order,
        pos,
        pmarked,
        hmarked,
        pins,
        fixed,
        branch: vec![Bits::EMPTY; pv.len()],
        free,
        ticker: Ticker::new(deadline),
    };
    if k.place(0) {
        let bs: BTreeMap<V, VSet> = (0..pv.len()).map(|p| (pv[p], k.branch[p].iter().map(|i| hv[i]).collect())).collect();
        return Ok(Search::Found(MinorModel::from_branch_sets(g, h, bs)));
    }
    Ok(if k.ticker.tripped() { Search::Timeout } else { Search::Absent })
}

pub fn find_minor(g: &Graph, h: &Graph, deadline: Deadline) -> Result<Search<MinorModel>> {
    find_minor_with(g, h, &MinorQuery::default(), deadline)
}

pub fn find_marked_minor(g: &MarkedGraph, h: &MarkedGraph, deadline: Deadline) -> Result<Search<MinorModel>> {
    let q = MinorQuery { marks: Some((h.marked.clone(), g.marked.clone())), ..Default::default() };
    find_minor_with(&g.graph, &h.graph, &q, deadline)
}

/// Splits a model of `n` shifted copies of `h` (as built by `named::copies` or
/// `named::bouquet`) into one model per copy.
fn split_copies(h: &Graph, m: &MinorModel, n: u32, hub: Option<V>) -> Vec<MinorModel> {
    let w = h.fresh_id();
    (0..n)
        .map(|j| {
            let f = |v: V| if Some(v) == hub { v } else { v + j * w };
            MinorModel {
                branch_sets: h.vertices().map(|v| (v, m.branch_sets[&f(v)].clone())).collect(),
                edges: h.edges().into_iter().map(|(u, v)| ((u, v), m.edges[&edge(f(u), f(v))])).collect(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packing {
    pub models: Vec<MinorModel>,
    /// True when fewer than the requested number is certified to be the maximum.
    pub exhaustive: bool,
    pub timed_out: bool,
}

/// Greedy disjoint packing, then one exact query for `n` disjoint copies on failure.
pub fn pack_disjoint(g: &Graph, h: &Graph, n: usize, deadline: Deadline) -> Result<Packing> {
    if n == 0 {
        return Err(Error::InvalidArgument("packing size must be at least 1".into()));
    }
    let mut models = Vec::new();
    let mut used = VSet::new();
    while models.len() < n {
        let q = MinorQuery { avoid: used.clone(), ..Default::default() };
        match find_minor_with(g, h, &q, deadline)? {
            Search::Found(m) => {
                used.extend(m.support());
                models.push(m);
            }
            Search::Absent => break,
            Search::Timeout => return Ok(Packing { models, exhaustive: false, timed_out: true }),
        }
    }
    if models.len() == n {
        return Ok(Packing { models, exhaustive: true, timed_out: false });
    }
    let nh = named::copies(h, n as u32);
    match find_minor(g, &nh, deadline)? {
        Search::Found(m) => Ok(Packing { models: split_copies(h, &m, n as u32, None), exhaustive: true, timed_out: false }),
        Search::Absent => Ok(Packing { models, exhaustive: true, timed_out: false }),
        Search::Timeout => Ok(Packing { models, exhaustive: false, timed_out: true }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bouquet {
    pub center: V,
    pub models: Vec<MinorModel>,
}

/// Searches `n` models of `h` whose supports pairwise meet exactly in one host
/// vertex `c`, with `{c}` the branch set of `hub` in each. `centers` limits the
/// candidate host vertices (all vertices when `None`).
pub fn pack_bouquet(
    g: &Graph,
    h: &Graph,
    hub: V,
    n: usize,
    centers: Option<&VSet>,
    deadline: Deadline,
) -> Result<Search<Bouquet>> {
    if n == 0 || !h.has_vertex(hub) {
        return Err(Error::InvalidArgument("bouquet needs n >= 1 and a pattern hub vertex".into()));
    }
    let b = named::bouquet(h, hub, n as u32);
    let mut cands: Vec<V> = match centers {
        Some(c) => c.iter().copied().filter(|&v| g.has_vertex(v)).collect(),
        None => g.vertices().collect(),
    };
    cands.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut timed_out = false;
    for c in cands {
        if g.degree(c) < n * h.degree(hub) {
            continue;
        }
        let q = MinorQuery { fixed: BTreeMap::from([(hub, VSet::from([c]))]), ..Default::default() };
        match find_minor_with(g, &b, &q, deadline)? {
            Search::Found(m) => return Ok(Search::Found(Bouquet { center: c, models: split_copies(h, &m, n as u32, Some(hub)) })),
            Search::Absent => {}
            Search::Timeout => {
                timed_out = true;
                break;
            }
        }
    }
    Ok(if timed_out { Search::Timeout } else { Search::Absent })
}
