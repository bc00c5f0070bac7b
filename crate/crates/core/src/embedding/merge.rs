//! Identifying vertices of two embedded graphs by splicing rotations.

use std::collections::BTreeMap;

use super::{genus_of, trace_faces, Rotation};
use crate::error::{invalid, Error, Result};
use crate::graph::{VSet, V};

fn remove_nb(rot: &mut Rotation, v: V, u: V) {
    if let Some(r) = rot.rotation.get_mut(&v) {
        r.retain(|&x| x != u);
    }
}

/// Identifies `y` into `x` in a single rotation system. Adds at most one handle.
fn identify(rot: &mut Rotation, x: V, y: V) -> Result<()> {
    // loop and parallel edges go first; deleting edges never raises genus
    remove_nb(rot, x, y);
    remove_nb(rot, y, x);
    let nx: VSet = rot.rotation[&x].iter().copied().collect();
    let common: Vec<V> = rot.rotation[&y].iter().copied().filter(|z| nx.contains(z)).collect();
    for z in common {
        remove_nb(rot, y, z);
        remove_nb(rot, z, y);
    }
    let ry = rot.rotation.remove(&y).unwrap_or_default();
    for &z in &ry {
        for w in rot.rotation.get_mut(&z).unwrap().iter_mut() {
            if *w == y {
                *w = x;
            }
        }
    }
    if ry.is_empty() {
        return Ok(());
    }
    let rx = rot.rotation[&x].clone();
    if rx.is_empty() {
        rot.rotation.insert(x, ry);
        return Ok(());
    }
    // choose a corner at x and one at y on a common face when possible
    let mut tmp = rot.clone();
    tmp.rotation.insert(y, ry.clone());
    for &z in &ry {
        for w in tmp.rotation.get_mut(&z).unwrap().iter_mut() {
            if *w == x {
                *w = y;
            }
        }
    }
    // z's that were neighbours of y now point at x in `rot`; in `tmp` they point back at y
    let g = tmp.graph();
    let faces = trace_faces(&g, &tmp)?;
    let mut face_of: BTreeMap<(V, V), usize> = BTreeMap::new();
    for (i, f) in faces.faces.iter().enumerate() {
        for &d in f {
            face_of.insert(d, i);
        }
    }
    let mut pick = (0usize, 0usize);
    'outer: for i in 0..rx.len() {
        let fx = face_of[&(rx[i], x)];
        for j in 0..ry.len() {
            if face_of[&(ry[j], y)] == fx {
                pick = (i, j);
                break 'outer;
            }
        }
    }
    let (i, j) = pick;
    let mut merged = Vec::with_capacity(rx.len() + ry.len());
    merged.extend_from_slice(&rx[..=i]);
    for k in 1..=ry.len() {
        merged.push(ry[(j + k) % ry.len()]);
    }
    merged.extend_from_slice(&rx[i + 1..]);
    rot.rotation.insert(x, merged);
    Ok(())
}

/// Disjoint union of two embedded graphs with each pair `(a, b)` identified
/// (`b` merged into `a`). Returns the rotation and the bound
/// `genus(A) + genus(B) + #pairs`, which the traced genus never exceeds.
pub fn handle_merge(rot_a: &Rotation, rot_b: &Rotation, pairs: &[(V, V)]) -> Result<(Rotation, usize)> {
    let ga = rot_a.graph();
    let gb = rot_b.graph();
    if ga.vertices().any(|v| gb.has_vertex(v)) {
        return invalid("rotations to merge must use disjoint vertex ids");
    }
    let mut xs = VSet::new();
    let mut ys = VSet::new();
    for &(x, y) in pairs {
        if !ga.has_vertex(x) || !gb.has_vertex(y) {
            return invalid(format!("pair ({x}, {y}) does not join the first graph to the second"));
        }
        if !xs.insert(x) || !ys.insert(y) {
            return invalid(format!("vertex repeated in pair ({x}, {y})"));
        }
    }
    let bound = genus_of(&ga, rot_a)? + genus_of(&gb, rot_b)? + pairs.len();
    let mut rot = Rotation { rotation: rot_a.rotation.clone() };
    rot.rotation.extend(rot_b.rotation.iter().map(|(&v, r)| (v, r.clone())));
    for &(x, y) in pairs {
        identify(&mut rot, x, y)?;
    }
    let g = rot.graph();
    let got = genus_of(&g, &rot)?;
    if got > bound {
        return Err(Error::Precondition(format!("merged genus {got} exceeds declared bound {bound}")));
    }
    Ok((rot, bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{planarity, Planarity};
    use crate::graph::{named, Graph};

    fn planar_rot(g: &Graph) -> Rotation {
        match planarity(g) {
            Planarity::Planar(r) => r,
            Planarity::NonPlanar(_) => panic!("not planar"),
        }
    }

    #[test]
    fn two_k4_one_identification() {
        let a = planar_rot(&named::complete(4));
        let b = planar_rot(&named::complete(4).relabel(|v| v + 10));
        let (r, bound) = handle_merge(&a, &b, &[(0, 10)]).unwrap();
        assert_eq!(bound, 1);
        assert!(genus_of(&r.graph(), &r).unwrap() <= 1);
        let (r, bound) = handle_merge(&a, &b, &[(0, 10), (1, 11), (2, 12)]).unwrap();
        assert_eq!(bound, 3);
        let g = r.graph();
        assert_eq!(g.n(), 5);
        assert!(genus_of(&g, &r).unwrap() <= 3);
    }

    #[test]
    fn triangles_bouquet() {
        let a = planar_rot(&named::cycle(3));
        let b = planar_rot(&named::cycle(3).relabel(|v| v + 3));
        let (r, bound) = handle_merge(&a, &b, &[(0, 3)]).unwrap();
        assert_eq!(bound, 1);
        assert_eq!(genus_of(&r.graph(), &r).unwrap(), 0);
    }

    #[test]
    fn rejects_bad_pairs() {
        let a = planar_rot(&named::cycle(3));
        assert!(handle_merge(&a, &a, &[(0, 1)]).is_err());
        let b = planar_rot(&named::cycle(3).relabel(|v| v + 3));
        assert!(handle_merge(&a, &b, &[(0, 3), (1, 3)]).is_err());
        assert!(handle_merge(&a, &b, &[(3, 0)]).is_err());
    }
}
