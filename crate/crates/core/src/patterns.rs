//! Obstruction catalog: Θ, U, U′, Σ and auxiliary patterns at an explicit
//! truncation level, and the conversion of cone witnesses into Σ models.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::embedding::{planarity, KuratowskiKind, Planarity};
use crate::error::{invalid, Error, Result};
use crate::graph::{cone, named, Graph, MarkedGraph, VSet, V};
use crate::limits::{Deadline, Search};
use crate::minors::{find_minor, verify_marked_model, verify_model, MinorModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuxKind {
    OmegaK3,
    VeeK3,
    K2w,
    OmegaK4,
    VeeK4,
    OmegaK23,
    G1,
    G2,
}

impl AuxKind {
    pub const ALL: [AuxKind; 8] =
        [AuxKind::OmegaK3, AuxKind::VeeK3, AuxKind::K2w, AuxKind::OmegaK4, AuxKind::VeeK4, AuxKind::OmegaK23, AuxKind::G1, AuxKind::G2];

    fn name(self) -> &'static str {
        match self {
            AuxKind::OmegaK3 => "omegaK3",
            AuxKind::VeeK3 => "veeK3",
            AuxKind::K2w => "K2w",
            AuxKind::OmegaK4 => "omegaK4",
            AuxKind::VeeK4 => "veeK4",
            AuxKind::OmegaK23 => "omegaK23",
            AuxKind::G1 => "G1",
            AuxKind::G2 => "G2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Theta,
    U,
    Uprime,
    Sigma,
    /// Disjoint copies of a Θ pattern.
    OmegaTheta,
    Aux(AuxKind),
}

/// A catalog entry. `index` is unused for auxiliary patterns and `level` for Θ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PatternId {
    pub family: Family,
    pub index: u8,
    pub level: Option<u32>,
}

impl PatternId {
    pub fn theta(i: u8) -> Self {
        PatternId { family: Family::Theta, index: i, level: None }
    }
    pub fn u(i: u8, n: u32) -> Self {
        PatternId { family: Family::U, index: i, level: Some(n) }
    }
    pub fn uprime(i: u8, n: u32) -> Self {
        PatternId { family: Family::Uprime, index: i, level: Some(n) }
    }
    pub fn sigma(i: u8, n: u32) -> Self {
        PatternId { family: Family::Sigma, index: i, level: Some(n) }
    }
    pub fn omega_theta(i: u8, n: u32) -> Self {
        PatternId { family: Family::OmegaTheta, index: i, level: Some(n) }
    }
    pub fn aux(kind: AuxKind, n: u32) -> Self {
        PatternId { family: Family::Aux(kind), index: 0, level: Some(n) }
    }

    fn check(&self) -> Result<()> {
        let ok = match self.family {
            Family::Theta => (1..=4).contains(&self.index),
            Family::U => (1..=5).contains(&self.index),
            Family::Uprime => (2..=4).contains(&self.index),
            Family::Sigma => (1..=8).contains(&self.index),
            Family::OmegaTheta => (1..=4).contains(&self.index),
            Family::Aux(_) => true,
        };
        if !ok {
            return invalid(format!("index out of range in {self}"));
        }
        match (self.family, self.level) {
            (Family::Theta, _) => Ok(()),
            (_, Some(n)) if n >= 1 => Ok(()),
            _ => invalid(format!("{self} needs a level n >= 1")),
        }
    }

    /// The pattern as a marked graph (auxiliary and Σ patterns are unmarked).
    pub fn build(&self) -> Result<MarkedGraph> {
        self.check()?;
        let n = self.level.unwrap_or(1);
        match self.family {
            Family::Theta => theta(self.index),
            Family::U => u_pattern(self.index, false, n),
            Family::Uprime => u_pattern(self.index, true, n),
            Family::Sigma => Ok(MarkedGraph::unmarked(sigma(self.index, n)?)),
            Family::OmegaTheta => omega_theta(self.index, n),
            Family::Aux(k) => aux_pattern(k, n),
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lvl = self.level.map_or(String::new(), |n| format!("({n})"));
        match self.family {
            Family::Theta => write!(f, "theta{}", self.index),
            Family::U => write!(f, "U{}{lvl}", self.index),
            Family::Uprime => write!(f, "U'{}{lvl}", self.index),
            Family::Sigma => write!(f, "sigma{}{lvl}", self.index),
            Family::OmegaTheta => write!(f, "wtheta{}{lvl}", self.index),
            Family::Aux(k) => write!(f, "{}{lvl}", k.name()),
        }
    }
}

impl FromStr for PatternId {
    type Err = Error;

    /// Accepts the `Display` forms, e.g. `theta2`, `U'3(4)`, `sigma5(2)`, `veeK3(3)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, level) = match s.find('(') {
            Some(i) => {
                let inner = s[i + 1..].strip_suffix(')').ok_or_else(|| Error::InvalidArgument(format!("bad pattern {s:?}")))?;
                let n: u32 = inner.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad level in {s:?}")))?;
                (&s[..i], Some(n))
            }
            None => (s, None),
        };
        for k in AuxKind::ALL {
            if head == k.name() {
                let id = PatternId { family: Family::Aux(k), index: 0, level };
                id.check()?;
                return Ok(id);
            }
        }
        let prefixes: [(&str, Family); 5] = [
            ("theta", Family::Theta),
            ("wtheta", Family::OmegaTheta),
            ("sigma", Family::Sigma),
            ("U'", Family::Uprime),
            ("U", Family::U),
        ];
        for (p, fam) in prefixes {
            if let Some(rest) = head.strip_prefix(p) {
                if let Ok(i) = rest.parse::<u8>() {
                    let id = PatternId { family: fam, index: i, level };
                    id.check()?;
                    return Ok(id);
                }
            }
        }
        invalid(format!("unknown pattern {s:?}"))
    }
}

/// Copies of `base` glued along `shared`; copy `j` moves every other vertex by `j * (max id + 1)`.
pub fn amalgam(base: &Graph, shared: &[V], n: u32) -> Graph {
    let w = base.fresh_id();
    let mut g = Graph::with_vertices(shared.iter().copied());
    for j in 0..n {
        g = g.union(&base.relabel(|v| if shared.contains(&v) { v } else { v + j * w }));
    }
    g
}

fn amalgam_marked(base: &MarkedGraph, hub: V, n: u32) -> MarkedGraph {
    let w = base.graph.fresh_id();
    let graph = amalgam(&base.graph, &[hub], n);
    let marked = (0..n)
        .flat_map(|j| base.marked.iter().map(move |&v| if v == hub { v } else { v + j * w }))
        .collect();
    MarkedGraph { graph, marked }
}

/// Σ₁..Σ₈ truncated at level `n`.
pub fn sigma(i: u8, n: u32) -> Result<Graph> {
    if n == 0 {
        return invalid("level must be at least 1");
    }
    let k5 = named::complete(5);
    let k33 = named::complete_bipartite(3, 3);
    Ok(match i {
        1 => amalgam(&k5, &[], n),
        2 => amalgam(&k33, &[], n),
        3 => amalgam(&k5, &[0], n),
        4 => amalgam(&k33, &[0], n),
        5 => amalgam(&k5, &[0, 1], n),
        6 => amalgam(&k33, &[0, 3], n),
        7 => amalgam(&k33, &[0, 1], n),
        8 => named::complete_bipartite(3, n),
        _ => return invalid(format!("sigma index {i} out of range 1..8")),
    })
}

/// Θ₁ = K4 all marked; Θ₂ = K5 minus 01 with 0, 1 marked; Θ₃ = K_{2,3}
/// (sides {0,1} and {2,3,4}) with the 3-side marked; Θ₄ = K33 minus 01 with
/// sides {0,2,3} and {1,4,5} and 0, 1 marked.
pub fn theta(i: u8) -> Result<MarkedGraph> {
    let (g, marked): (Graph, Vec<V>) = match i {
        1 => (named::complete(4), vec![0, 1, 2, 3]),
        2 => {
            let mut g = named::complete(5);
            g.remove_edge(0, 1);
            (g, vec![0, 1])
        }
        3 => (named::complete_bipartite(2, 3), vec![2, 3, 4]),
        4 => {
            let mut g = Graph::new();
            for a in [0, 2, 3] {
                for b in [1, 4, 5] {
                    g.add_edge(a, b);
                }
            }
            g.remove_edge(0, 1);
            (g, vec![0, 1])
        }
        _ => return invalid(format!("theta index {i} out of range 1..4")),
    };
    MarkedGraph::new(g, marked.into_iter().collect())
}

/// Vertex of Θᵢ shared by the copies of Uᵢ (marked) or U′ᵢ (unmarked).
pub fn u_hub(i: u8, primed: bool) -> Result<V> {
    match (i, primed) {
        (1, false) | (2, false) | (4, false) | (3, true) => Ok(0),
        (3, false) | (2, true) | (4, true) => Ok(2),
        (5, _) => Ok(0),
        _ => invalid(format!("no pattern U{}{i}", if primed { "'" } else { "" })),
    }
}

/// Uᵢ(n) / U′ᵢ(n): `n` copies of Θᵢ sharing one marked / unmarked vertex;
/// U₅(n) = K_{2,n} with the n-side marked.
pub fn u_pattern(i: u8, primed: bool, n: u32) -> Result<MarkedGraph> {
    if n == 0 {
        return invalid("level must be at least 1");
    }
    if i == 5 {
        let g = named::complete_bipartite(2, n);
        return MarkedGraph::new(g, (2..n + 2).collect());
    }
    if primed && !(2..=4).contains(&i) {
        return invalid(format!("U'{i} does not exist"));
    }
    let hub = u_hub(i, primed)?;
    Ok(amalgam_marked(&theta(i)?, hub, n))
}

/// ω·Θᵢ truncated: `n` disjoint copies of Θᵢ.
pub fn omega_theta(i: u8, n: u32) -> Result<MarkedGraph> {
    let t = theta(i)?;
    let w = t.graph.fresh_id();
    Ok(MarkedGraph {
        graph: amalgam(&t.graph, &[], n),
        marked: (0..n).flat_map(|j| t.marked.iter().map(move |&v| v + j * w)).collect(),
    })
}

/// Auxiliary dichotomy patterns at level `n` (all unmarked).
pub fn aux_pattern(kind: AuxKind, n: u32) -> Result<MarkedGraph> {
    if n == 0 {
        return invalid("level must be at least 1");
    }
    let k3 = named::complete(3);
    let k4 = named::complete(4);
    let k23 = named::complete_bipartite(2, 3);
    let g = match kind {
        AuxKind::OmegaK3 => amalgam(&k3, &[], n),
        AuxKind::VeeK3 => amalgam(&k3, &[0], n),
        AuxKind::K2w => named::complete_bipartite(2, n),
        AuxKind::OmegaK4 => amalgam(&k4, &[], n),
        AuxKind::VeeK4 => amalgam(&k4, &[0], n),
        AuxKind::OmegaK23 => amalgam(&k23, &[], n),
        AuxKind::G1 => amalgam(&k23, &[0], n),
        AuxKind::G2 => amalgam(&k23, &[2], n),
    };
    Ok(MarkedGraph::unmarked(g))
}

/// Cone over the marked set; the cone vertex is `fresh_id()` of the pattern.
pub fn marked_cone(m: &MarkedGraph) -> (Graph, V) {
    cone(&m.graph, &m.marked).expect("marked vertices belong to the graph")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Term {
    X(V),
    Cone,
}

/// Σ index, Σ level, whether the cone is isomorphic to Σ, and the branch set
/// recipe for every Σ vertex.
struct Recipe {
    sigma: u8,
    level: u32,
    iso: bool,
    sets: BTreeMap<V, Vec<Term>>,
}

fn recipe(x: &PatternId) -> Result<Recipe> {
    x.check()?;
    let n = x.level.ok_or_else(|| Error::InvalidArgument("conversion needs a level".into()))?;
    let tw = |i: u8| -> Result<V> { Ok(theta(i)?.graph.fresh_id()) };
    // copy j of a Θ-based pattern, vertex v; `hub` stays fixed
    let xv = |hub: Option<V>, w: V, j: u32, v: V| -> Term { Term::X(if Some(v) == hub { v } else { v + j * w }) };
    let mut sets: BTreeMap<V, Vec<Term>> = BTreeMap::new();
    let mut add = |s: V, t: Term| {
        let e = sets.entry(s).or_default();
        if !e.contains(&t) {
            e.push(t);
        }
    };
    let (sig, level, iso);
    match (x.family, x.index) {
        (Family::U, 5) => {
            sig = 8;
            level = n;
            iso = true;
            add(0, Term::X(0));
            add(1, Term::X(1));
            add(2, Term::Cone);
            for i in 0..n {
                add(3 + i, Term::X(2 + i));
            }
        }
        (fam @ (Family::U | Family::Uprime | Family::OmegaTheta), i) => {
            let w = tw(i)?;
            let hub = match fam {
                Family::U => Some(u_hub(i, false)?),
                Family::Uprime => Some(u_hub(i, true)?),
                _ => None,
            };
            // Σ-vertex -> Θ-vertex per copy, plus vertices mapped to the shared part
            let (s, ws, shared_cone, per_copy, first_copy, iso_row): (u8, V, Vec<(V, Vec<Term>)>, Vec<(V, V)>, u32, bool) =
                match (fam, i) {
                    (Family::U, 1) => (5, 5, vec![(0, vec![Term::X(0)]), (1, vec![Term::Cone])], vec![(2, 1), (3, 2), (4, 3)], 0, true),
                    (Family::U, 2) => (3, 5, vec![(0, vec![Term::X(0), Term::Cone])], vec![(1, 1), (2, 2), (3, 3), (4, 4)], 0, false),
                    (Family::Uprime, 2) => (
                        6,
                        6,
                        vec![(0, vec![Term::X(2)]), (3, vec![Term::Cone, Term::X(0)])],
                        vec![(1, 0), (2, 1), (4, 3), (5, 4)],
                        1,
                        false,
                    ),
                    (Family::U, 3) => {
                        (6, 6, vec![(0, vec![Term::X(2)]), (3, vec![Term::Cone])], vec![(1, 3), (2, 4), (4, 0), (5, 1)], 0, true)
                    }
                    (Family::Uprime, 3) => {
                        (7, 6, vec![(0, vec![Term::X(0)]), (1, vec![Term::Cone])], vec![(2, 1), (3, 2), (4, 3), (5, 4)], 0, true)
                    }
                    (Family::U, 4) => (
                        4,
                        6,
                        vec![(0, vec![Term::X(0), Term::Cone])],
                        vec![(1, 2), (2, 3), (3, 1), (4, 4), (5, 5)],
                        0,
                        false,
                    ),
                    (Family::Uprime, 4) => (
                        6,
                        6,
                        vec![(0, vec![Term::X(2)]), (3, {
                            let mut t = vec![Term::Cone];
                            t.extend((0..n).map(|j| xv(hub, w, j, 1)));
                            t
                        })],
                        vec![(1, 0), (2, 3), (4, 4), (5, 5)],
                        0,
                        false,
                    ),
                    (Family::OmegaTheta, 1) => (3, 5, vec![(0, vec![Term::Cone])], vec![(1, 0), (2, 1), (3, 2), (4, 3)], 0, true),
                    (Family::OmegaTheta, 2) => (
                        3,
                        5,
                        vec![(0, {
                            let mut t = vec![Term::Cone];
                            t.extend((0..n).map(|j| xv(hub, w, j, 0)));
                            t
                        })],
                        vec![(1, 1), (2, 2), (3, 3), (4, 4)],
                        0,
                        false,
                    ),
                    (Family::OmegaTheta, 3) => {
                        (4, 6, vec![(0, vec![Term::Cone])], vec![(1, 0), (2, 1), (3, 2), (4, 3), (5, 4)], 0, true)
                    }
                    (Family::OmegaTheta, 4) => (
                        4,
                        6,
                        vec![(0, {
                            let mut t = vec![Term::Cone];
                            t.extend((0..n).map(|j| xv(hub, w, j, 0)));
                            t
                        })],
                        vec![(1, 2), (2, 3), (3, 1), (4, 4), (5, 5)],
                        0,
                        false,
                    ),
                    _ => return invalid(format!("{x} has no conversion")),
                };
            if n <= first_copy {
                return invalid(format!("{x} is too small to convert"));
            }
            sig = s;
            level = n - first_copy;
            iso = iso_row;
            for (sv, terms) in shared_cone {
                for t in terms {
                    add(sv, t);
                }
            }
            for j in first_copy..n {
                let k = j - first_copy;
                for &(sv, tv) in &per_copy {
                    let target = if sv_is_shared(s, sv) { sv } else { sv + k * ws };
                    add(target, xv(hub, w, j, tv));
                }
            }
        }
        _ => return invalid(format!("{x} has no conversion")),
    }
    Ok(Recipe { sigma: sig, level, iso, sets })
}

fn sv_is_shared(sigma: u8, v: V) -> bool {
    match sigma {
        3 | 4 => v == 0,
        5 | 7 => v <= 1,
        6 => v == 0 || v == 3,
        _ => false,
    }
}

/// Result of converting a cone witness into a Σ model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conversion {
    pub sigma: u8,
    pub level: u32,
    pub model: MinorModel,
    /// The recipe maps cone vertices one-to-one onto Σ vertices and edges.
    pub isomorphism: bool,
}

/// Turns a marked model of the pattern `x` in `g - cone_v` (marks = N(cone_v))
/// into a model of the corresponding Σ pattern in `g`.
pub fn convert_to_sigma(g: &Graph, cone_v: V, x: &PatternId, model: &MinorModel) -> Result<Conversion> {
    if !g.has_vertex(cone_v) {
        return invalid(format!("cone vertex {cone_v} is not in the graph"));
    }
    let xp = x.build()?;
    let mut base = g.clone();
    base.remove_vertex(cone_v);
    let host = MarkedGraph::new(base, g.nbr_set(cone_v).clone())?;
    let rep = verify_marked_model(&host, &xp, model);
    if !rep.ok {
        return invalid(format!("input model is not a marked model of {x}: {}", rep.violations.join("; ")));
    }
    let r = recipe(x)?;
    let sg = sigma(r.sigma, r.level)?;
    let mut bs: BTreeMap<V, VSet> = BTreeMap::new();
    for (&sv, terms) in &r.sets {
        let mut set = VSet::new();
        for t in terms {
            match *t {
                Term::Cone => {
                    set.insert(cone_v);
                }
                Term::X(v) => set.extend(model.branch_sets.get(&v).into_iter().flatten().copied()),
            }
        }
        bs.insert(sv, set);
    }
    let m = MinorModel::from_branch_sets(g, &sg, bs);
    let rep = verify_model(g, &sg, &m);
    if !rep.ok {
        return Err(Error::Precondition(format!("conversion of {x} failed: {}", rep.violations.join("; "))));
    }
    let isomorphism = r.iso && m.branch_sets.values().all(|b| b.len() == 1) && m.support().len() == g.n() && sg.m() == g.m();
    Ok(Conversion { sigma: r.sigma, level: r.level, model: m, isomorphism })
}

/// The twelve conversion rows as pattern ids at level `n`.
pub fn conversion_rows(n: u32) -> Vec<PatternId> {
    vec![
        PatternId::u(1, n),
        PatternId::u(2, n),
        PatternId::uprime(2, n),
        PatternId::u(3, n),
        PatternId::uprime(3, n),
        PatternId::u(4, n),
        PatternId::uprime(4, n),
        PatternId::u(5, n),
        PatternId::omega_theta(1, n),
        PatternId::omega_theta(2, n),
        PatternId::omega_theta(3, n),
        PatternId::omega_theta(4, n),
    ]
}

/// Row of the table that a pattern should land in: (Σ index, isomorphic).
pub fn expected_row(x: &PatternId) -> Option<(u8, bool)> {
    Some(match (x.family, x.index) {
        (Family::U, 1) => (5, true),
        (Family::U, 2) => (3, false),
        (Family::Uprime, 2) => (6, false),
        (Family::U, 3) => (6, true),
        (Family::Uprime, 3) => (7, true),
        (Family::U, 4) => (4, false),
        (Family::Uprime, 4) => (6, false),
        (Family::U, 5) => (8, true),
        (Family::OmegaTheta, 1) => (3, true),
        (Family::OmegaTheta, 2) => (3, false),
        (Family::OmegaTheta, 3) => (4, true),
        (Family::OmegaTheta, 4) => (4, false),
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub pattern: String,
    pub sigma: u8,
    pub level: u32,
    pub isomorphism: bool,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub minor: u8,
    pub host: u8,
    /// "absent", "present" or "timeout"
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub level: u32,
    pub invariants: Vec<String>,
    pub rows: Vec<RowReport>,
    pub incomparability: Vec<PairReport>,
    pub ok: bool,
}

fn pattern_invariants(n: u32) -> Vec<String> {
    let mut bad = Vec::new();
    for i in 1..=4u8 {
        let t = theta(i).expect("theta index in range");
        let (c, _) = marked_cone(&t);
        let want = if i <= 2 { KuratowskiKind::K5 } else { KuratowskiKind::K33 };
        match planarity(&c) {
            Planarity::NonPlanar(w) if w.kind == want => {}
            _ => bad.push(format!("cone of theta{i} lacks a {want:?} subdivision")),
        }
        if !crate::embedding::is_planar(&t.graph) {
            bad.push(format!("theta{i} is not planar"));
        }
    }
    for i in 1..=8u8 {
        let (a, b) = (sigma(i, n).unwrap(), sigma(i, n + 1).unwrap());
        if !a.is_subgraph_of(&b) {
            bad.push(format!("sigma{i}({n}) is not contained in sigma{i}({})", n + 1));
        }
    }
    bad
}

/// Checks pattern invariants and the twelve conversion rows at level `n`.
/// With `pairs`, also runs the pairwise minor tests among Σᵢ(2).
pub fn verify_catalog(n: u32, pairs: bool, deadline: Deadline) -> Result<CatalogReport> {
    if n < 2 {
        return invalid("catalog check needs level n >= 2");
    }
    let invariants = pattern_invariants(n);
    let mut rows = Vec::new();
    for x in conversion_rows(n) {
        let xp = x.build()?;
        let (c, z) = marked_cone(&xp);
        let ident = MinorModel::from_branch_sets(&xp.graph, &xp.graph, xp.graph.vertices().map(|v| (v, VSet::from([v]))).collect());
        let (want, want_iso) = expected_row(&x).expect("conversion row");
        let row = match convert_to_sigma(&c, z, &x, &ident) {
            Ok(conv) => {
                let sg = sigma(conv.sigma, conv.level)?;
                let verified = verify_model(&c, &sg, &conv.model).ok;
                let ok = verified && conv.sigma == want && conv.isomorphism == want_iso;
                RowReport {
                    pattern: x.to_string(),
                    sigma: conv.sigma,
                    level: conv.level,
                    isomorphism: conv.isomorphism,
                    ok,
                    detail: if ok { String::new() } else { "conversion does not match the table".into() },
                }
            }
            Err(e) => RowReport { pattern: x.to_string(), sigma: want, level: n, isomorphism: false, ok: false, detail: e.to_string() },
        };
        rows.push(row);
    }
    let mut incomparability = Vec::new();
    if pairs {
        for i in 1..=8u8 {
            for j in 1..=8u8 {
                if i == j {
                    continue;
                }
                let outcome = match find_minor(&sigma(j, 2)?, &sigma(i, 2)?, deadline)? {
                    Search::Found(_) => "present",
                    Search::Absent => "absent",
                    Search::Timeout => "timeout",
                };
                incomparability.push(PairReport { minor: i, host: j, outcome: outcome.into() });
            }
        }
    }
    let ok = invariants.is_empty() && rows.iter().all(|r| r.ok);
    Ok(CatalogReport { level: n, invariants, rows, incomparability, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let s = sigma(8, 5).unwrap();
        assert_eq!((s.n(), s.m()), (8, 15));
        assert_eq!(sigma(3, 1).unwrap(), named::complete(5));
        let s = sigma(5, 2).unwrap();
        assert_eq!((s.n(), s.m()), (8, 19));
        let s = sigma(7, 3).unwrap();
        assert_eq!((s.n(), s.m()), (14, 27));
    }

    #[test]
    fn ids_round_trip() {
        for s in ["theta2", "U'3(4)", "sigma5(2)", "veeK3(3)", "wtheta4(2)", "U5(3)"] {
            assert_eq!(s.parse::<PatternId>().unwrap().to_string(), s);
        }
        assert!("U'1(2)".parse::<PatternId>().is_err());
        assert!("sigma9(2)".parse::<PatternId>().is_err());
        assert!(u_pattern(1, true, 2).is_err());
    }

    #[test]
    fn catalog_rows_pass() {
        for n in [2, 3] {
            let r = verify_catalog(n, false, Deadline::none()).unwrap();
            assert!(r.ok, "{r:#?}");
        }
    }
}
