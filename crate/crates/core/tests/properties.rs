mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use surfminor::connectivity::max_disjoint_paths;
use surfminor::decomposition::{contraction_planarize, decompose, genus_bound, verify_decomposition, Planarization};
use surfminor::dichotomy::{DichotomyOutcome, Engine};
use surfminor::embedding::{genus_of, handle_merge, is_planar, min_genus, trace_faces, GenusOutcome, Rotation};
use surfminor::enumerate::canonical;
use surfminor::graph::{cone, contract, contract_with_map, edge, identify_vertices, named, Edge};
use surfminor::io::{parse_graph, to_edge_list, to_json};
use surfminor::minors::{find_marked_minor, find_minor, pack_disjoint, verify_model};
use surfminor::outerplanar::{is_u_outerplanar, u_star_search, Outerplanarity, UStar};
use surfminor::patterns::{sigma, theta};
use surfminor::structures::{star_comb, verify_structure};
use surfminor::{Deadline, Graph, MarkedGraph, Search, VSet, V};

fn graph_strategy(max_n: u32) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = (n * (n - 1) / 2) as usize;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::with_vertices(0..n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v);
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

fn mask_of(g: &Graph) -> (u64, usize) {
    let idx: BTreeMap<V, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut m = 0u64;
    for (u, v) in g.edges() {
        let (a, b) = (idx[&u], idx[&v]);
        let (a, b) = (a.min(b), a.max(b));
        m |= 1 << (b * (b - 1) / 2 + a);
    }
    (m, g.n())
}

fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let (ma, na) = mask_of(a);
    let (mb, nb) = mask_of(b);
    na == nb && canonical(ma, na) == canonical(mb, nb)
}

fn genus(g: &Graph) -> usize {
    match min_genus(g, 6, Deadline::none()) {
        GenusOutcome::Exact { genus, .. } => genus,
        other => panic!("{other:?}"),
    }
}

fn subset(g: &Graph, bits: &[bool]) -> VSet {
    g.vertices().zip(bits.iter().cycle()).filter(|(_, &b)| b).map(|(v, _)| v).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotients_compose(g in graph_strategy(8), pick in proptest::collection::vec(0u8..3, 28)) {
        let es = g.edges();
        let f1: Vec<Edge> = es.iter().zip(&pick).filter(|(_, &p)| p == 1).map(|(&e, _)| e).collect();
        let f2: Vec<Edge> = es.iter().zip(&pick).filter(|(_, &p)| p == 2).map(|(&e, _)| e).collect();
        let (h, map) = contract_with_map(&g, &f1).unwrap();
        let image: Vec<Edge> = f2.iter().map(|&(a, b)| (map[&a], map[&b])).filter(|(a, b)| a != b).map(|(a, b)| edge(a, b)).collect();
        let both: Vec<Edge> = f1.iter().chain(&f2).copied().collect();
        prop_assert!(isomorphic(&contract(&h, &image).unwrap(), &contract(&g, &both).unwrap()));
    }

    #[test]
    fn identification_costs_at_most_a_handle(g in graph_strategy(7), a in 0u32..7, b in 0u32..7) {
        prop_assume!(a != b && g.has_vertex(a) && g.has_vertex(b));
        let h = identify_vertices(&g, a, b).unwrap();
        prop_assert_eq!(h.n(), g.n() - 1);
        prop_assert!(genus(&h) <= genus(&g) + 1);
    }

    #[test]
    fn cone_restricts_to_base(g in graph_strategy(9), bits in proptest::collection::vec(any::<bool>(), 9)) {
        let u = subset(&g, &bits);
        let (c, z) = cone(&g, &u).unwrap();
        prop_assert_eq!(c.without_vertices(&VSet::from([z])), g);
        prop_assert_eq!(c.nbr_set(z), &u);
    }

    #[test]
    fn faces_use_each_dart_once(g in graph_strategy(9), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let rot = Rotation {
            rotation: g.vertices().map(|v| {
                let mut ns: Vec<V> = g.neighbors(v).collect();
                ns.shuffle(&mut rng);
                (v, ns)
            }).collect(),
        };
        let faces = trace_faces(&g, &rot).unwrap();
        let mut darts: Vec<(V, V)> = faces.faces.iter().flatten().copied().collect();
        darts.sort_unstable();
        let n = darts.len();
        darts.dedup();
        prop_assert_eq!(darts.len(), n);
        prop_assert_eq!(n, 2 * g.m());
        let gm = genus_of(&g, &rot).unwrap() as i64;
        prop_assert_eq!(gm, common::rotation_genus(&g, &rot.rotation));
    }

    #[test]
    fn genus_is_monotone(g in graph_strategy(6), drop in proptest::collection::vec(any::<bool>(), 15)) {
        let es = g.edges();
        let gone: Vec<Edge> = es.iter().zip(&drop).filter(|(_, &d)| d).map(|(&e, _)| e).collect();
        prop_assert!(genus(&g.without_edges(&gone)) <= genus(&g));
    }

    #[test]
    fn merged_rotations_respect_bound(a in graph_strategy(6), b in graph_strategy(6), k in 1usize..3) {
        let b = b.relabel(|v| v + 100);
        let rot = |g: &Graph| match min_genus(g, 6, Deadline::none()) { GenusOutcome::Exact { rotation, .. } => rotation, o => panic!("{o:?}") };
        let pairs: Vec<(V, V)> = a.vertices().zip(b.vertices()).take(k).collect();
        let (r, bound) = handle_merge(&rot(&a), &rot(&b), &pairs).unwrap();
        let merged = r.graph();
        prop_assert!(genus_of(&merged, &r).unwrap() <= bound);
    }

    #[test]
    fn found_models_verify(g in graph_strategy(8), h in graph_strategy(4)) {
        if let Search::Found(m) = find_minor(&g, &h, Deadline::none()).unwrap() {
            prop_assert!(verify_model(&g, &h, &m).ok);
        }
    }

    #[test]
    fn outerplanarity_total_and_exclusive(g in graph_strategy(8), bits in proptest::collection::vec(any::<bool>(), 8)) {
        prop_assume!(is_planar(&g));
        let u = subset(&g, &bits);
        let mg = MarkedGraph::new(g.clone(), u.clone()).unwrap();
        let any_theta = (1..=4u8).any(|i| find_marked_minor(&mg, &theta(i).unwrap(), Deadline::none()).unwrap().is_found());
        match is_u_outerplanar(&g, &u).unwrap() {
            Outerplanarity::Outerplanar { cone_vertex, rotation } => {
                let (c, z) = cone(&g, &u).unwrap();
                prop_assert_eq!(z, cone_vertex);
                prop_assert_eq!(genus_of(&c, &rotation).unwrap(), 0);
                prop_assert!(!any_theta);
            }
            Outerplanarity::Theta(t) => {
                prop_assert!(surfminor::minors::verify_marked_model(&mg, &theta(t.index).unwrap(), &t.model).ok);
                prop_assert!(any_theta);
            }
        }
    }

    #[test]
    fn u_star_duality(g in graph_strategy(10), bits in proptest::collection::vec(any::<bool>(), 10), x in 0u32..10, n in 1usize..5) {
        prop_assume!(g.has_vertex(x));
        let u = subset(&g, &bits);
        let mg = MarkedGraph::new(g.clone(), u.clone()).unwrap();
        match u_star_search(&mg, x, n).unwrap() {
            UStar::Star { paths } => {
                prop_assert_eq!(paths.len(), n);
                paths.check(&g.without_vertices(&VSet::from([x]))).unwrap();
            }
            UStar::Separator { separator, paths } => {
                prop_assert!(paths.len() < n);
                prop_assert_eq!(separator.len(), paths.len());
                let h = g.without_vertices(&VSet::from([x]));
                let targets: VSet = u.iter().copied().filter(|&v| v != x).collect();
                for p in common::all_paths(&h, g.nbr_set(x), &targets) {
                    prop_assert!(p.iter().any(|v| separator.contains(v)));
                }
            }
        }
    }

    #[test]
    fn menger_duality(g in graph_strategy(8), a in proptest::collection::vec(any::<bool>(), 8), b in proptest::collection::vec(any::<bool>(), 8)) {
        let (sa, sb) = (subset(&g, &a), subset(&g, &b));
        prop_assume!(!sa.is_empty() && !sb.is_empty());
        let m = max_disjoint_paths(&g, &sa, &sb, false).unwrap();
        prop_assert_eq!(m.paths.len(), m.separator.len());
        for p in common::all_paths(&g, &sa, &sb) {
            prop_assert!(p.iter().any(|v| m.separator.contains(v)));
        }
    }

    #[test]
    fn dichotomy_outcomes_verify(g in graph_strategy(7), n in 1u32..3, k in 0usize..4) {
        for e in [Engine::ForestDel, Engine::ForestCon, Engine::Outerplanar, Engine::PlanarV] {
            let out = e.run(&g, n, k, Deadline::secs(10.0)).unwrap();
            prop_assert!(e.verify(&g, n, k, &out).is_ok(), "{:?}: {:?}", e, e.verify(&g, n, k, &out));
            if e == Engine::ForestDel {
                prop_assert_eq!(matches!(out, DichotomyOutcome::Flaw { .. }), g.cycle_rank() <= k);
            }
        }
    }

    #[test]
    fn star_comb_on_trees(seed in any::<u64>(), n in 1usize..5, extra in 0u32..20) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let size = (n * n) as u32 + extra + 1;
        let t = common::random_tree(&mut rng, size);
        let mut verts: Vec<V> = t.vertices().collect();
        let mut u = VSet::new();
        while u.len() < n * n {
            let i = rng.gen_range(0..verts.len());
            u.insert(verts.swap_remove(i));
        }
        let s = star_comb(&t, &u, n, Deadline::none()).unwrap();
        prop_assert!(verify_structure(&t, &u, &s).is_ok());
    }

    #[test]
    fn text_and_json_round_trip(g in graph_strategy(9), bits in proptest::collection::vec(any::<bool>(), 9)) {
        let mg = MarkedGraph::new(g.clone(), subset(&g, &bits)).unwrap();
        prop_assert_eq!(&parse_graph(&to_edge_list(&mg)).unwrap().graph, &mg);
        let j = to_json(&mg);
        prop_assert_eq!(to_json(&parse_graph(&j).unwrap().graph), j);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decompositions_verify(g in graph_strategy(7), tail in graph_strategy(5)) {
        // glue a random graph onto K5 or K33 at one vertex
        for core in [named::complete(5), named::complete_bipartite(3, 3)] {
            let mut h = core.union(&tail.relabel(|v| v + 10));
            h.add_edge(0, 10);
            let h = h.union(&g.relabel(|v| v + 20));
            let Ok(d) = decompose(&h, 3, Deadline::secs(20.0)) else { continue };
            let cap = d.core.as_ref().map(|c| c.vertices.len());
            let rep = verify_decomposition(&h, &d, cap);
            prop_assert!(rep.ok, "{:?}", rep.violations);
            prop_assert!(genus_bound(&d, 3, Deadline::none()).unwrap() >= genus(&h));
        }
    }

    #[test]
    fn contraction_planarization_verifies(g in graph_strategy(7), k in 0usize..3) {
        if let Planarization::Found { edges } = contraction_planarize(&g, k, 3, 10_000, Deadline::none()).unwrap() {
            prop_assert!(edges.len() <= k);
            prop_assert!(is_planar(&contract(&g, &edges).unwrap()));
        }
    }
}

#[test]
fn minor_relation_composes() {
    let h = named::complete(4);
    let g = named::wheel(6);
    let f = named::complete(7);
    let m1 = find_minor(&g, &h, Deadline::none()).unwrap().found().unwrap();
    let m2 = find_minor(&f, &g, Deadline::none()).unwrap().found().unwrap();
    assert!(verify_model(&f, &h, &m1.compose(&m2)).ok);
    let p = named::petersen();
    let m3 = find_minor(&p, &named::complete_bipartite(3, 3), Deadline::none()).unwrap().found().unwrap();
    let big = sigma(4, 2).unwrap();
    if let Search::Found(m4) = find_minor(&big, &p, Deadline::secs(30.0)).unwrap() {
        assert!(verify_model(&big, &named::complete_bipartite(3, 3), &m3.compose(&m4)).ok);
    }
}

#[test]
fn identity_packings() {
    let catalog = [named::complete(3), named::complete(4), named::complete(5), named::complete_bipartite(3, 3), named::complete_bipartite(2, 3)];
    for h in &catalog {
        for n in 1..=3u32 {
            let g = named::copies(h, n);
            let p = pack_disjoint(&g, h, n as usize, Deadline::none()).unwrap();
            assert_eq!(p.models.len(), n as usize);
            for m in &p.models {
                assert!(verify_model(&g, h, m).ok);
            }
        }
    }
    for i in 1..=4u8 {
        let t = theta(i).unwrap().graph;
        let g = named::copies(&t, 2);
        assert_eq!(pack_disjoint(&g, &t, 2, Deadline::none()).unwrap().models.len(), 2);
    }
}

#[test]
fn sigma_levels_nest() {
    for i in 1..=8u8 {
        for n in 1..=3 {
            assert!(sigma(i, n).unwrap().is_subgraph_of(&sigma(i, n + 1).unwrap()), "sigma{i}({n})");
        }
    }
}

#[test]
fn sigma_genus_grows() {
    for i in 1..=4u8 {
        assert!(matches!(min_genus(&sigma(i, 2).unwrap(), 4, Deadline::secs(60.0)), GenusOutcome::Exact { genus, .. } if genus >= 2), "sigma{i}(2)");
    }
    let k3n: Vec<usize> = (3..=5).map(|n| genus(&named::complete_bipartite(3, n))).collect();
    assert_eq!(k3n, vec![1, 1, 1]);
    // bipartite Euler bound: 2 - 2g = 10 - 21 + f with f <= 10
    assert_eq!(genus(&named::complete_bipartite(3, 7)), 2);
}
