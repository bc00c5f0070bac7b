//! Relative outerplanarity through the U-cone, Θ witnesses, the bounded-genus
//! analog of Σ_U, critical vertices, and the star searches built on Menger.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::connectivity::{max_disjoint_paths, Disjointness, PathSystem};
use crate::embedding::{min_genus, planarity, GenusOutcome, KuratowskiKind, KuratowskiWitness, Planarity, Rotation};
use crate::error::{invalid, Error, Result};
use crate::graph::{cone, Graph, MarkedGraph, VSet, V};
use crate::limits::{Deadline, Search};
use crate::minors::{find_marked_minor, find_minor_with, verify_marked_model, MinorModel, MinorQuery};
use crate::patterns::{theta, u_hub, u_pattern, PatternId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaWitness {
    pub index: u8,
    pub model: MinorModel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Outerplanarity {
    /// Planar rotation of the cone; the cone vertex is `cone_vertex`.
    Outerplanar { cone_vertex: V, rotation: Rotation },
    Theta(ThetaWitness),
}

/// Decides whether the cone over `u` is planar; otherwise returns a Θ model.
pub fn is_u_outerplanar(g: &Graph, u: &VSet) -> Result<Outerplanarity> {
    if let Planarity::NonPlanar(w) = planarity(g) {
        return Err(Error::NonPlanar(Box::new(w)));
    }
    let (c, z) = cone(g, u)?;
    match planarity(&c) {
        Planarity::Planar(rotation) => Ok(Outerplanarity::Outerplanar { cone_vertex: z, rotation }),
        Planarity::NonPlanar(k) => {
            let mg = MarkedGraph::new(g.clone(), u.clone())?;
            Ok(Outerplanarity::Theta(extract_theta(&mg, &k, z)?))
        }
    }
}

/// Builds a Θ model in `g` from a Kuratowski subdivision `k` of the cone over
/// the marked set that passes through the cone vertex `cone_v`.
pub fn extract_theta(g: &MarkedGraph, k: &KuratowskiWitness, cone_v: V) -> Result<ThetaWitness> {
    let (c, z) = cone(&g.graph, &g.marked)?;
    if z != cone_v {
        return invalid(format!("cone vertex of this marked graph is {z}, not {cone_v}"));
    }
    if let Err(e) = k.check(&c) {
        return invalid(format!("witness does not verify in the cone: {e}"));
    }
    let on_branch = k.branch.contains(&cone_v);
    let on_path = k.paths.iter().any(|p| p[1..p.len() - 1].contains(&cone_v));
    if !on_branch && !on_path {
        return invalid("cone vertex is not on the Kuratowski subdivision");
    }
    // pattern vertex for each branch vertex of k other than the cone vertex
    let mut role: BTreeMap<V, V> = BTreeMap::new();
    let index: u8;
    match (k.kind, on_branch) {
        (KuratowskiKind::K5, true) => {
            index = 1;
            for (i, &b) in k.branch.iter().filter(|&&b| b != cone_v).enumerate() {
                role.insert(b, i as V);
            }
        }
        (KuratowskiKind::K5, false) => {
            index = 2;
            let p = k.paths.iter().find(|p| p.contains(&cone_v)).unwrap();
            let (a, b) = (p[0], *p.last().unwrap());
            role.insert(a, 0);
            role.insert(b, 1);
            for (i, &x) in k.branch.iter().filter(|&&x| x != a && x != b).enumerate() {
                role.insert(x, 2 + i as V);
            }
        }
        (KuratowskiKind::K33, true) => {
            index = 3;
            let side_a: Vec<V> = k.branch[..3].to_vec();
            let (own, other) = if side_a.contains(&cone_v) { (&k.branch[..3], &k.branch[3..]) } else { (&k.branch[3..], &k.branch[..3]) };
            for (i, &x) in own.iter().filter(|&&x| x != cone_v).enumerate() {
                role.insert(x, i as V);
            }
            for (i, &x) in other.iter().enumerate() {
                role.insert(x, 2 + i as V);
            }
        }
        (KuratowskiKind::K33, false) => {
            index = 4;
            let p = k.paths.iter().find(|p| p.contains(&cone_v)).unwrap();
            let (a, b) = (p[0], *p.last().unwrap());
            let (a_side, b_side) = if k.branch[..3].contains(&a) { (&k.branch[..3], &k.branch[3..]) } else { (&k.branch[3..], &k.branch[..3]) };
            role.insert(a, 0);
            role.insert(b, 1);
            for (x, r) in a_side.iter().filter(|&&x| x != a).zip([2, 3]) {
                role.insert(*x, r);
            }
            for (x, r) in b_side.iter().filter(|&&x| x != b).zip([4, 5]) {
                role.insert(*x, r);
            }
        }
    }
    let mut sets: BTreeMap<V, VSet> = role.iter().map(|(&b, &r)| (r, VSet::from([b]))).collect();
    for p in &k.paths {
        let (s, t) = (p[0], *p.last().unwrap());
        if let Some(i) = p.iter().position(|&x| x == cone_v) {
            // split at the cone vertex: each side joins its own end
            for &x in &p[..i] {
                if let Some(&r) = role.get(&s) {
                    sets.get_mut(&r).unwrap().insert(x);
                }
            }
            for &x in &p[i + 1..] {
                if let Some(&r) = role.get(&t) {
                    sets.get_mut(&r).unwrap().insert(x);
                }
            }
        } else {
            let r = role[&s.min(t)];
            sets.get_mut(&r).unwrap().extend(p[1..p.len() - 1].iter().copied());
        }
    }
    let th = theta(index)?;
    let model = MinorModel::from_branch_sets(&g.graph, &th.graph, sets);
    let rep = verify_marked_model(g, &th, &model);
    if !rep.ok {
        return Err(Error::Precondition(format!("theta{index} extraction failed: {}", rep.violations.join("; "))));
    }
    Ok(ThetaWitness { index, model })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeGenus {
    pub gamma_cone: usize,
    pub gamma_base: usize,
    pub critical: Vec<V>,
}

fn exact_genus(g: &Graph, budget: usize, deadline: Deadline, what: &str) -> Result<usize> {
    match min_genus(g, budget, deadline) {
        GenusOutcome::Exact { genus, .. } => Ok(genus),
        GenusOutcome::ExceedsBudget { lower_bound } => {
            Err(Error::BudgetExhausted(format!("genus of {what} is at least {lower_bound}")))
        }
        GenusOutcome::Unknown { lower_bound, .. } => {
            Err(Error::BudgetExhausted(format!("genus search for {what} timed out (lower bound {lower_bound})")))
        }
    }
}

/// γ of the cone, γ of the graph, and the vertices `x` with
/// γ(C_U(G)) > γ(G) and γ(C_U(G − x)) ≤ γ(G − x).
pub fn relative_genus(g: &Graph, u: &VSet, budget: usize, deadline: Deadline) -> Result<RelativeGenus> {
    let (c, _) = cone(g, u)?;
    let gamma_cone = exact_genus(&c, budget, deadline, "the cone")?;
    let gamma_base = exact_genus(g, budget, deadline, "the graph")?;
    let mut critical = Vec::new();
    if gamma_cone > gamma_base {
        for x in g.vertices() {
            let gx = g.without_vertices(&VSet::from([x]));
            let mut ux = u.clone();
            ux.remove(&x);
            let (cx, _) = cone(&gx, &ux)?;
            let base = exact_genus(&gx, budget, deadline, "a vertex-deleted graph")?;
            let top = exact_genus(&cx, budget, deadline, "a vertex-deleted cone")?;
            if top <= base {
                critical.push(x);
            }
        }
    }
    Ok(RelativeGenus { gamma_cone, gamma_base, critical })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum UStar {
    /// `n` disjoint paths from distinct neighbours of `x` to marked vertices.
    Star { paths: PathSystem },
    /// Fewer than `n` such paths exist; the separator has the size of the maximum family.
    Separator { separator: VSet, paths: PathSystem },
}

/// Level-`n` U-star centred at `x`, or a Menger separator between N(x) and the marked set.
pub fn u_star_search(g: &MarkedGraph, x: V, n: usize) -> Result<UStar> {
    if !g.graph.has_vertex(x) {
        return invalid(format!("{x} is not a vertex"));
    }
    let h = g.graph.without_vertices(&VSet::from([x]));
    let nx: VSet = g.graph.nbr_set(x).clone();
    let targets: VSet = g.marked.iter().copied().filter(|&v| v != x).collect();
    if nx.is_empty() || targets.is_empty() {
        return Ok(UStar::Separator { separator: VSet::new(), paths: PathSystem { paths: Vec::new(), disjointness: Disjointness::Full } });
    }
    let m = max_disjoint_paths(&h, &nx, &targets, false)?;
    if m.paths.len() >= n {
        let mut paths = m.paths;
        paths.paths.truncate(n);
        Ok(UStar::Star { paths })
    } else {
        Ok(UStar::Separator { separator: m.separator, paths: m.paths })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum DoubleStar {
    Model { model: MinorModel },
    /// Separator between maximal stars at `x` and `y`.
    Separator { separator: VSet },
    Timeout,
}

/// Marked U₅(n) model with `x` and `y` in the two hub branch sets, or the
/// separator between maximal U-stars at `x` and `y`.
pub fn double_star_search(g: &MarkedGraph, x: V, y: V, n: u32, deadline: Deadline) -> Result<DoubleStar> {
    if x == y {
        return invalid("double star needs two distinct vertices");
    }
    if !g.graph.has_vertex(x) || !g.graph.has_vertex(y) {
        return invalid("double star centres must be vertices");
    }
    let pat = u_pattern(5, false, n)?;
    let q = MinorQuery {
        marks: Some((pat.marked.clone(), g.marked.clone())),
        pins: vec![(x, VSet::from([0])), (y, VSet::from([1]))],
        ..Default::default()
    };
    match find_minor_with(&g.graph, &pat.graph, &q, deadline)? {
        Search::Found(model) => {
            let rep = verify_marked_model(g, &pat, &model);
            if !rep.ok {
                return Err(Error::Precondition(format!("double star model: {}", rep.violations.join("; "))));
            }
            Ok(DoubleStar::Model { model })
        }
        Search::Timeout => Ok(DoubleStar::Timeout),
        Search::Absent => {
            let star_set = |c: V| -> Result<VSet> {
                let mut s = VSet::from([c]);
                match u_star_search(g, c, usize::MAX)? {
                    UStar::Star { paths } | UStar::Separator { paths, .. } => s.extend(paths.paths.into_iter().flatten()),
                }
                Ok(s)
            };
            let tx = star_set(x)?;
            let ty = star_set(y)?;
            let m = max_disjoint_paths(&g.graph, &tx, &ty, false)?;
            Ok(DoubleStar::Separator { separator: m.separator })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SuOutcome {
    Witness { pattern: PatternId, model: MinorModel },
    /// The cone over the marked set embeds with genus within budget.
    Embeddable { genus: usize, cone_vertex: V, rotation: Rotation },
}

/// Is the cone over the marks within `budget`? `None` on timeout.
fn in_sigma_u(g: &MarkedGraph, budget: usize, deadline: Deadline) -> Result<Option<bool>> {
    let (c, _) = cone(&g.graph, &g.marked)?;
    Ok(match min_genus(&c, budget, deadline) {
        GenusOutcome::Exact { .. } => Some(true),
        GenusOutcome::ExceedsBudget { .. } => Some(false),
        GenusOutcome::Unknown { .. } => None,
    })
}

/// Vertices whose deletion brings the cone within budget (the host itself is assumed outside).
pub fn critical_vertices(g: &MarkedGraph, budget: usize, deadline: Deadline) -> Result<Vec<V>> {
    let mut out = Vec::new();
    for x in g.graph.vertices() {
        let gx = g.without_vertices(&VSet::from([x]));
        match in_sigma_u(&gx, budget, deadline)? {
            Some(true) => out.push(x),
            Some(false) => {}
            None => return Err(Error::BudgetExhausted("genus search timed out".into())),
        }
    }
    Ok(out)
}

fn find_theta(g: &MarkedGraph, deadline: Deadline) -> Result<Option<(u8, MinorModel)>> {
    for i in 1..=4u8 {
        let t = theta(i)?;
        match find_marked_minor(g, &t, deadline)? {
            Search::Found(m) => return Ok(Some((i, m))),
            Search::Absent => {}
            Search::Timeout => return Err(Error::BudgetExhausted("theta search timed out".into())),
        }
    }
    Ok(None)
}

/// Joins per-copy Θ models into one model of the `n`-copy pattern; copy `j`
/// sends Θ vertex `v` to `v + j * w` except the hub, whose sets are merged.
fn merge_copies(copies: &[MinorModel], w: V, hub: Option<V>) -> BTreeMap<V, VSet> {
    let mut sets: BTreeMap<V, VSet> = BTreeMap::new();
    for (j, m) in copies.iter().enumerate() {
        for (&v, b) in &m.branch_sets {
            let t = if Some(v) == hub { v } else { v + j as V * w };
            sets.entry(t).or_default().extend(b.iter().copied());
        }
    }
    sets
}

fn finish(g: &MarkedGraph, pattern: PatternId, sets: BTreeMap<V, VSet>) -> Result<SuOutcome> {
    let p = pattern.build()?;
    let model = MinorModel::from_branch_sets(&g.graph, &p.graph, sets);
    let rep = verify_marked_model(g, &p, &model);
    if !rep.ok {
        return Err(Error::Precondition(format!("{pattern} witness: {}", rep.violations.join("; "))));
    }
    Ok(SuOutcome::Witness { pattern, model })
}

/// Greedy bouquet of Θᵢ models through `x`, with `x` in the hub branch set each time.
fn theta_bouquet(g: &MarkedGraph, x: V, i: u8, primed: bool, n: u32, deadline: Deadline) -> Result<Option<Vec<MinorModel>>> {
    let hub = u_hub(i, primed)?;
    let t = theta(i)?;
    if t.marked.contains(&hub) == primed {
        return Ok(None);
    }
    let mut used = VSet::new();
    let mut copies = Vec::new();
    while copies.len() < n as usize {
        let q = MinorQuery {
            marks: Some((t.marked.clone(), g.marked.clone())),
            pins: vec![(x, VSet::from([hub]))],
            avoid: used.clone(),
            ..Default::default()
        };
        match find_minor_with(&g.graph, &t.graph, &q, deadline)? {
            Search::Found(m) => {
                used.extend(m.support().into_iter().filter(|&v| v != x));
                copies.push(m);
            }
            Search::Absent => return Ok(None),
            Search::Timeout => return Err(Error::BudgetExhausted("bouquet search timed out".into())),
        }
    }
    Ok(Some(copies))
}

/// Level-`n` witness that the cone over the marks has genus above `budget`,
/// following the Θ packing, critical-vertex bouquet and double-star steps;
/// or an embedding of the cone when it is within budget.
pub fn su_obstruction(g: &MarkedGraph, budget: usize, n: u32, deadline: Deadline) -> Result<SuOutcome> {
    if n == 0 {
        return invalid("level must be at least 1");
    }
    let (c, z) = cone(&g.graph, &g.marked)?;
    match min_genus(&c, budget, deadline) {
        GenusOutcome::Exact { genus, rotation } => return Ok(SuOutcome::Embeddable { genus, cone_vertex: z, rotation }),
        GenusOutcome::ExceedsBudget { .. } => {}
        GenusOutcome::Unknown { .. } => return Err(Error::BudgetExhausted("cone genus search timed out".into())),
    }
    // disjoint Θ models, deleting each support
    let mut found: BTreeMap<u8, Vec<MinorModel>> = BTreeMap::new();
    let mut rest = g.clone();
    while let Some((i, m)) = find_theta(&rest, deadline)? {
        rest = rest.without_vertices(&m.support());
        let list = found.entry(i).or_default();
        list.push(m);
        if list.len() == n as usize {
            let w = theta(i)?.graph.fresh_id();
            return finish(g, PatternId::omega_theta(i, n), merge_copies(list, w, None));
        }
    }
    let crit = critical_vertices(g, budget, deadline)?;
    for &x in &crit {
        for (i, primed) in [(1, false), (2, false), (2, true), (3, false), (3, true), (4, false), (4, true)] {
            if let Some(copies) = theta_bouquet(g, x, i, primed, n, deadline)? {
                let w = theta(i)?.graph.fresh_id();
                let id = if primed { PatternId::uprime(i, n) } else { PatternId::u(i, n) };
                return finish(g, id, merge_copies(&copies, w, Some(u_hub(i, primed)?)));
            }
        }
    }
    for (a, &x) in crit.iter().enumerate() {
        for &y in &crit[a + 1..] {
            match double_star_search(g, x, y, n, deadline)? {
                DoubleStar::Model { model } => return finish(g, PatternId::u(5, n), model.branch_sets),
                DoubleStar::Timeout => return Err(Error::BudgetExhausted("double star search timed out".into())),
                DoubleStar::Separator { .. } => {}
            }
        }
    }
    Err(Error::BudgetExhausted(format!("no level-{n} witness found; host may be too small for this level")))
}
