//! Rotation systems, face tracing and Euler genus.

mod genus;
mod merge;
mod planarity;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Graph, VSet, V};

pub use genus::{genus_additivity, min_genus, GenusOutcome};
pub use merge::handle_merge;
pub use planarity::{is_planar, kuratowski_subgraph, planarity, KuratowskiKind, KuratowskiWitness, Planarity};

/// Cyclic neighbour order at every vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rotation {
    #[serde(deserialize_with = "vertex_keys")]
    pub rotation: BTreeMap<V, Vec<V>>,
}

/// Map keys arrive as strings when the map sits inside a tagged enum.
fn vertex_keys<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<V, Vec<V>>, D::Error> {
    let raw: BTreeMap<String, Vec<V>> = BTreeMap::deserialize(d)?;
    raw.into_iter()
        .map(|(k, v)| k.parse::<V>().map(|k| (k, v)).map_err(|_| serde::de::Error::custom(format!("bad vertex key {k:?}"))))
        .collect()
}

/// Closed facial walks as sequences of darts `(tail, head)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Vec<(V, V)>>,
}

impl FaceSet {
    /// Faces as vertex walks (the tail of each dart).
    pub fn vertex_walks(&self) -> Vec<Vec<V>> {
        self.faces.iter().map(|f| f.iter().map(|d| d.0).collect()).collect()
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

impl Rotation {
    pub fn new() -> Self {
        Rotation::default()
    }

    /// The graph whose adjacency the rotation lists.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new();
        for (&v, nb) in &self.rotation {
            g.add_vertex(v);
            for &u in nb {
                g.add_edge(v, u);
            }
        }
        g
    }

    /// Neighbour following `u` around `v`.
    pub fn succ(&self, v: V, u: V) -> Option<V> {
        let r = self.rotation.get(&v)?;
        let i = r.iter().position(|&x| x == u)?;
        Some(r[(i + 1) % r.len()])
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        for v in g.vertices() {
            let r = match self.rotation.get(&v) {
                Some(r) => r,
                None => return invalid(format!("no rotation at vertex {v}")),
            };
            let set: VSet = r.iter().copied().collect();
            if set.len() != r.len() || &set != g.nbr_set(v) {
                return invalid(format!("rotation at {v} is not a cyclic order of its neighbours"));
            }
        }
        if let Some(v) = self.rotation.keys().find(|v| !g.has_vertex(**v)) {
            return invalid(format!("rotation mentions unknown vertex {v}"));
        }
        Ok(())
    }

    /// Same rotation with every cycle reversed (the mirror embedding).
    pub fn mirrored(&self) -> Rotation {
        let rotation = self
            .rotation
            .iter()
            .map(|(&v, r)| {
                let mut r2 = r.clone();
                if r2.len() > 1 {
                    r2[1..].reverse();
                }
                (v, r2)
            })
            .collect();
        Rotation { rotation }
    }

    pub fn restrict(&self, h: &Graph) -> Rotation {
        let rotation = h
            .vertices()
            .map(|v| {
                let r = self.rotation.get(&v).map_or(Vec::new(), |r| r.iter().copied().filter(|&u| h.has_edge(v, u)).collect());
                (v, r)
            })
            .collect();
        Rotation { rotation }
    }
}

/// Facial walks of the orientable embedding given by `rot`: the dart `(u, v)`
/// is followed by `(v, succ_v(u))`.
pub fn trace_faces(g: &Graph, rot: &Rotation) -> Result<FaceSet> {
    rot.check(g)?;
    let pos: BTreeMap<V, BTreeMap<V, usize>> =
        rot.rotation.iter().map(|(&v, r)| (v, r.iter().enumerate().map(|(i, &u)| (u, i)).collect())).collect();
    let mut used: BTreeSet<(V, V)> = BTreeSet::new();
    let mut faces = Vec::new();
    for (u, v) in g.edges() {
        for start in [(u, v), (v, u)] {
            if used.contains(&start) {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            loop {
                used.insert(d);
                face.push(d);
                let (a, b) = d;
                let r = &rot.rotation[&b];
                let nxt = r[(pos[&b][&a] + 1) % r.len()];
                d = (b, nxt);
                if d == start {
                    break;
                }
            }
            faces.push(face);
        }
    }
    Ok(FaceSet { faces })
}

/// Sum over components of (2 - V + E - F) / 2; edgeless components count one face.
pub fn genus_of(g: &Graph, rot: &Rotation) -> Result<usize> {
    let faces = trace_faces(g, rot)?;
    let comps = g.components();
    let mut comp_of: BTreeMap<V, usize> = BTreeMap::new();
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of.insert(v, i);
        }
    }
    let mut f = vec![0i64; comps.len()];
    for face in &faces.faces {
        f[comp_of[&face[0].0]] += 1;
    }
    let mut total = 0i64;
    for (i, c) in comps.iter().enumerate() {
        let nv = c.len() as i64;
        let ne = c.iter().map(|&v| g.degree(v)).sum::<usize>() as i64 / 2;
        let nf = if ne == 0 { 1 } else { f[i] };
        let twice = 2 - nv + ne - nf;
        if twice < 0 || twice % 2 != 0 {
            return invalid(format!("Euler count is not a genus ({twice}/2)"));
        }
        total += twice / 2;
    }
    Ok(total as usize)
}

/// Combines rotations of edge-disjoint graphs that meet only in cut vertices by
/// concatenating the cyclic orders at shared vertices.
pub fn concat_rotations<'a>(parts: impl IntoIterator<Item = &'a Rotation>) -> Rotation {
    let mut out: BTreeMap<V, Vec<V>> = BTreeMap::new();
    for r in parts {
        for (&v, nb) in &r.rotation {
            out.entry(v).or_default().extend(nb.iter().copied());
        }
    }
    Rotation { rotation: out }
}
