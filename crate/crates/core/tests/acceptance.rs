//! Acceptance runner: one PASS/FAIL line per criterion. Exits 0 exactly when
//! the failing checks are the known, documented ones.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surfminor::connectivity::max_disjoint_paths;
use surfminor::decomposition::{decompose, genus_bound, verify_decomposition};
use surfminor::dichotomy::{classify, verify_report, DichotomyOutcome, Engine};
use surfminor::embedding::{genus_of, min_genus, planarity, GenusOutcome, KuratowskiKind, Planarity};
use surfminor::enumerate::graphs_up_to;
use surfminor::graph::{cone, named};
use surfminor::minors::{find_minor, verify_marked_model};
use surfminor::outerplanar::{extract_theta, is_u_outerplanar, u_star_search, Outerplanarity, UStar};
use surfminor::patterns::{sigma, theta, verify_catalog, PatternId};
use surfminor::structures::{star_comb, two_connected_structures, verify_structure, CombKind};
use surfminor::{Deadline, Graph, MarkedGraph, Search, VSet, V};

struct Outcome {
    /// Identifiers of failing checks.
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), detail: String::new() }
    }

    fn fail(&mut self, id: impl Into<String>) {
        self.failures.push(id.into());
    }

    fn within(&mut self, start: Instant, limit: Duration, what: &str) {
        if start.elapsed() > limit {
            self.fail(format!("{what} took {:.1?} (limit {limit:?})", start.elapsed()));
        }
    }
}

fn exact(g: &Graph, budget: usize, dl: Deadline) -> Option<usize> {
    match min_genus(g, budget, dl) {
        GenusOutcome::Exact { genus, rotation } if genus_of(g, &rotation).ok() == Some(genus) => Some(genus),
        _ => None,
    }
}

fn genus_engine() -> Outcome {
    let mut o = Outcome::new();
    let cases = [
        ("K5", named::complete(5), 1),
        ("K33", named::complete_bipartite(3, 3), 1),
        ("2K5", named::copies(&named::complete(5), 2), 2),
        ("bouquet2K5", named::bouquet(&named::complete(5), 0, 2), 2),
    ];
    let mut shown = Vec::new();
    for (name, g, want) in cases {
        let t = Instant::now();
        let got = exact(&g, want + 1, Deadline::secs(30.0));
        o.within(t, Duration::from_secs(30), name);
        if got != Some(want) {
            o.fail(format!("genus({name}) = {got:?}, expected {want}"));
        }
        shown.push(format!("{name}={got:?}"));
    }
    // the blocks themselves against every rotation system
    for (name, g) in [("K5", named::complete(5)), ("K33", named::complete_bipartite(3, 3))] {
        if common::brute_genus(&g) != 1 {
            o.fail(format!("rotation enumeration disagrees on {name}"));
        }
    }
    o.detail = shown.join(" ");
    o
}

fn planarity_totality() -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let all = graphs_up_to(7);
    let seven = all.iter().filter(|g| g.n() == 7).count();
    if seven != 1044 {
        o.fail(format!("{seven} graphs on 7 vertices"));
    }
    let mut nonplanar = 0;
    for g in &all {
        let oracle = common::has_kuratowski_subdivision(g);
        match planarity(g) {
            Planarity::Planar(r) => {
                if oracle || common::rotation_genus(g, &r.rotation) != 0 {
                    o.fail(format!("planar verdict wrong on {:?}", g.edges()));
                }
            }
            Planarity::NonPlanar(k) => {
                nonplanar += 1;
                if !oracle || k.check(g).is_err() {
                    o.fail(format!("witness wrong on {:?}", g.edges()));
                }
            }
        }
    }
    o.within(t, Duration::from_secs(60), "planarity sweep");
    o.detail = format!("{} graphs ({seven} on 7 vertices), {nonplanar} nonplanar, {:.1?}", all.len(), t.elapsed());
    o
}

fn expected_theta(k: &surfminor::embedding::KuratowskiWitness, z: V) -> u8 {
    let branch = k.branch.contains(&z);
    match (k.kind, branch) {
        (KuratowskiKind::K5, true) => 1,
        (KuratowskiKind::K5, false) => 2,
        (KuratowskiKind::K33, true) => 3,
        (KuratowskiKind::K33, false) => 4,
    }
}

fn outerplanarity_equivalence() -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let k4 = named::complete(4);
    let k23 = named::complete_bipartite(2, 3);
    let all = graphs_up_to(7);
    let mut connected = 0;
    for g in all.iter().filter(|g| g.is_connected()) {
        connected += 1;
        let (c, _) = cone(g, &g.vertex_set()).unwrap();
        let cone_planar = matches!(planarity(&c), Planarity::Planar(_));
        let minor_free = !find_minor(g, &k4, Deadline::none()).unwrap().is_found()
            && !find_minor(g, &k23, Deadline::none()).unwrap().is_found();
        if cone_planar != minor_free {
            o.fail(format!("outerplanarity mismatch on {:?}", g.edges()));
        }
    }
    let mut thetas = [0usize; 4];
    for g in all.iter().filter(|g| matches!(planarity(g), Planarity::Planar(_))) {
        let verts: Vec<V> = g.vertices().collect();
        for mask in 0u32..1 << verts.len() {
            let u: VSet = verts.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            let (c, z) = cone(g, &u).unwrap();
            let Planarity::NonPlanar(k) = planarity(&c) else { continue };
            let mg = MarkedGraph::new(g.clone(), u.clone()).unwrap();
            match extract_theta(&mg, &k, z) {
                Ok(w) => {
                    let want = expected_theta(&k, z);
                    let ok = verify_marked_model(&mg, &theta(w.index).unwrap(), &w.model).ok;
                    if !ok || w.index != want {
                        o.fail(format!("theta{} (expected theta{want}, verified {ok}) on {:?} marks {u:?}", w.index, g.edges()));
                    } else {
                        thetas[w.index as usize - 1] += 1;
                    }
                }
                Err(e) => o.fail(format!("extract_theta failed on {:?} marks {u:?}: {e}", g.edges())),
            }
            if !matches!(is_u_outerplanar(g, &u), Ok(Outerplanarity::Theta(_))) {
                o.fail(format!("is_u_outerplanar disagrees on {:?} marks {u:?}", g.edges()));
            }
        }
    }
    o.detail = format!("{connected} connected graphs; theta models by index {thetas:?}; {:.1?}", t.elapsed());
    o
}

fn catalog_consistency() -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let mut passed = 0;
    for n in [2, 3] {
        match verify_catalog(n, false, Deadline::secs(120.0)) {
            Ok(rep) => {
                for r in &rep.rows {
                    if r.ok {
                        passed += 1;
                    } else {
                        o.fail(format!("n={n} {}: {}", r.pattern, r.detail));
                    }
                }
                for bad in &rep.invariants {
                    o.fail(format!("n={n}: {bad}"));
                }
            }
            Err(e) => o.fail(format!("n={n}: {e}")),
        }
    }
    o.within(t, Duration::from_secs(120), "catalog check");
    o.detail = format!("{passed}/24 conversion rows, {:.1?}", t.elapsed());
    o
}

fn incomparability() -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let mut absent = 0;
    for i in 1..=8u8 {
        for j in 1..=8u8 {
            if i == j {
                continue;
            }
            match find_minor(&sigma(j, 2).unwrap(), &sigma(i, 2).unwrap(), Deadline::secs(120.0)).unwrap() {
                Search::Absent => absent += 1,
                Search::Found(_) => o.fail(format!("sigma{i}(2) < sigma{j}(2)")),
                Search::Timeout => o.fail(format!("sigma{i}(2) in sigma{j}(2) timed out")),
            }
        }
    }
    o.detail = format!("{absent}/56 pairs incomparable, {:.1?}", t.elapsed());
    o
}

fn with_outgrowth(core: &Graph, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = core.clone();
    let base = g.fresh_id();
    let anchors: Vec<V> = core.vertices().collect();
    // a wheel and a random tree hung off core vertices
    let w = named::wheel(5).relabel(|v| v + base);
    g = g.union(&w);
    g.add_edge(anchors[0], base);
    let tb = base + 10;
    let tree = common::random_tree(&mut rng, 6).relabel(|v| v + tb);
    g = g.union(&tree);
    g.add_edge(anchors[rng.gen_range(0..anchors.len())], tb);
    g.add_edge(anchors[rng.gen_range(0..anchors.len())], tb + 5);
    g
}

fn decomposition_round_trip() -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let cores = [
        ("K5", named::complete(5), 1),
        ("K33", named::complete_bipartite(3, 3), 1),
        ("sigma5(2)", sigma(5, 2).unwrap(), 2),
        ("K6", named::complete(6), 1),
        ("2K5", named::copies(&named::complete(5), 2), 2),
    ];
    let mut count = 0;
    for (name, core, budget) in cores {
        for seed in 0..4 {
            let g = with_outgrowth(&core, seed);
            let Some(gamma) = exact(&g, budget, Deadline::secs(60.0)) else {
                o.fail(format!("{name}#{seed}: genus not certified"));
                continue;
            };
            match decompose(&g, budget, Deadline::secs(60.0)) {
                Ok(d) => {
                    let cap = d.core.as_ref().map(|c| c.vertices.len());
                    let rep = verify_decomposition(&g, &d, cap);
                    if !rep.ok {
                        o.fail(format!("{name}#{seed}: {:?}", rep.violations));
                    }
                    match genus_bound(&d, budget, Deadline::secs(60.0)) {
                        Ok(b) if b >= gamma => {}
                        other => o.fail(format!("{name}#{seed}: bound {other:?} below genus {gamma}")),
                    }
                    count += 1;
                }
                Err(e) => o.fail(format!("{name}#{seed}: {e}")),
            }
        }
    }
    o.detail = format!("{count} decompositions verified, {:.1?}", t.elapsed());
    o
}

fn dichotomies() -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let all = graphs_up_to(7);
    let mut runs = 0;
    let mut witnesses = 0;
    for g in &all {
        let rank = g.cycle_rank();
        for k in 0..=rank + 1 {
            let out = Engine::ForestDel.run(g, 2, k, Deadline::secs(10.0)).unwrap();
            if matches!(out, DichotomyOutcome::Flaw { .. }) != (rank <= k) {
                o.fail(format!("forest-del flaw branch wrong at k={k} on {:?}", g.edges()));
            }
            if let Err(e) = Engine::ForestDel.verify(g, 2, k, &out) {
                o.fail(format!("forest-del k={k} on {:?}: {e}", g.edges()));
            }
            witnesses += matches!(out, DichotomyOutcome::Witness { .. }) as usize;
            runs += 1;
        }
    }
    for e in [Engine::ForestCon, Engine::Outerplanar, Engine::PlanarV] {
        for g in &all {
            for (n, k) in [(1, 0), (2, 1), (2, 3)] {
                let out = e.run(g, n, k, Deadline::secs(10.0)).unwrap();
                if let Err(err) = e.verify(g, n, k, &out) {
                    o.fail(format!("{e:?} n={n} k={k} on {:?}: {err}", g.edges()));
                }
                witnesses += matches!(out, DichotomyOutcome::Witness { .. }) as usize;
                runs += 1;
            }
        }
    }
    let mut recognized = 0;
    for i in 1..=8u8 {
        for n in 1..=3u32 {
            let g = sigma(i, n).unwrap();
            let rep = classify(&g, n, n as usize + 1, 0, Deadline::secs(60.0)).unwrap();
            let valid = verify_report(&g, &rep).is_ok();
            if valid && rep.witnesses.iter().any(|w| w.pattern == PatternId::sigma(i, n)) {
                recognized += 1;
            } else {
                o.fail(format!("classify(sigma{i}({n})) missed sigma{i}({n}) (valid {valid})"));
            }
        }
    }
    o.detail = format!("{runs} engine runs, {witnesses} witnesses verified, {recognized}/24 self-recognized, {:.1?}", t.elapsed());
    o
}

fn menger() -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 1000 {
        let n = rng.gen_range(3..=12);
        let p = rng.gen_range(0.15..0.35);
        let g = common::random_graph(&mut rng, n, p);
        let x = rng.gen_range(0..n);
        let u: VSet = (0..n).filter(|&v| v != x && rng.gen_bool(0.4)).collect();
        let h = g.without_vertices(&VSet::from([x]));
        let nx = g.nbr_set(x).clone();
        if nx.is_empty() || u.is_empty() {
            continue;
        }
        checked += 1;
        let mg = MarkedGraph::new(g.clone(), u.clone()).unwrap();
        let m = max_disjoint_paths(&h, &nx, &u, false).unwrap();
        let (sep, paths) = match u_star_search(&mg, x, n as usize + 1).unwrap() {
            UStar::Separator { separator, paths } => (separator, paths),
            UStar::Star { .. } => {
                o.fail("u-star longer than the vertex count");
                continue;
            }
        };
        if paths.len() != sep.len() || sep.len() != m.separator.len() || m.paths.len() != m.separator.len() {
            o.fail(format!("sizes differ on {:?}", g.edges()));
        }
        if paths.check(&h).is_err() || m.paths.check(&h).is_err() {
            o.fail(format!("invalid paths on {:?}", g.edges()));
        }
        for p in common::all_paths(&h, &nx, &u) {
            if !p.iter().any(|v| sep.contains(v)) || !p.iter().any(|v| m.separator.contains(v)) {
                o.fail(format!("separator misses {p:?} on {:?}", g.edges()));
                break;
            }
        }
    }
    o.detail = format!("{checked} random graphs, {:.1?}", t.elapsed());
    o
}

fn structures() -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut trees = 0;
    for n in 1..=5usize {
        for _ in 0..40 {
            let size = (n * n) as u32 + rng.gen_range(0..25);
            let tr = common::random_tree(&mut rng, size);
            let mut pool: Vec<V> = tr.vertices().collect();
            let want = n * n + rng.gen_range(0..3usize).min(pool.len() - n * n);
            let mut u = VSet::new();
            while u.len() < want {
                let i = rng.gen_range(0..pool.len());
                u.insert(pool.swap_remove(i));
            }
            match star_comb(&tr, &u, n, Deadline::secs(10.0)) {
                Ok(s) if verify_structure(&tr, &u, &s).is_ok() && s.level >= n => trees += 1,
                other => o.fail(format!("tree of order {size}, n={n}: {other:?}")),
            }
        }
    }
    let mut kinds: BTreeSet<String> = BTreeSet::new();
    let mut families = 0;
    for m in 3..=8u32 {
        let fams: [(&str, Graph, VSet, CombKind); 3] = [
            ("K2m", named::complete_bipartite(2, m), (2..m + 2).collect(), CombKind::DoubleStar),
            ("CL", named::circular_ladder(m), (0..m).collect(), CombKind::Ladder),
            ("wheel", named::wheel(m), (1..=m).collect(), CombKind::Fan),
        ];
        for (name, g, u, kind) in fams {
            for n in 1..m as usize {
                match two_connected_structures(&g, &u, n, Deadline::secs(30.0)) {
                    Ok(s) => {
                        if let Err(e) = verify_structure(&g, &u, &s) {
                            o.fail(format!("{name}{m} n={n}: {e}"));
                        } else if s.kind != kind && n >= 4 {
                            o.fail(format!("{name}{m} n={n}: {:?} instead of {kind:?}", s.kind));
                        }
                        kinds.insert(format!("{:?}", s.kind));
                        families += 1;
                    }
                    Err(e) => o.fail(format!("{name}{m} n={n}: {e}")),
                }
            }
        }
    }
    o.detail = format!("{trees} trees, {families} 2-connected instances ({}), {:.1?}", kinds.into_iter().collect::<Vec<_>>().join("/"), t.elapsed());
    o
}

/// Checks that cannot pass as stated, with the reason recorded in the notes.
fn known_failures() -> BTreeSet<String> {
    let mut s: BTreeSet<String> = (1..=7u8).map(|j| format!("5: sigma8(2) < sigma{j}(2)")).collect();
    for n in [1, 2] {
        s.insert(format!("7: classify(sigma8({n})) missed sigma8({n}) (valid true)"));
    }
    s
}

fn main() {
    let criteria: [(u8, &str, fn() -> Outcome); 9] = [
        (1, "genus engine", genus_engine),
        (2, "planarity totality", planarity_totality),
        (3, "outerplanarity equivalence", outerplanarity_equivalence),
        (4, "catalog consistency", catalog_consistency),
        (5, "obstruction incomparability", incomparability),
        (6, "decomposition round-trip", decomposition_round_trip),
        (7, "dichotomy soundness and exactness", dichotomies),
        (8, "Menger duality", menger),
        (9, "structure searches", structures),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut all_run = true;
    for (id, name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| x == &id.to_string()) {
            all_run = false;
            continue;
        }
        let o = f();
        let verdict = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {id} {verdict} {name}: {}", o.detail);
        for fl in o.failures.iter().take(12) {
            println!("    {fl}");
        }
        if o.failures.len() > 12 {
            println!("    ... {} more", o.failures.len() - 12);
        }
        seen.extend(o.failures.into_iter().map(|fl| format!("{id}: {fl}")));
    }
    let known = known_failures();
    let unexpected: Vec<&String> = seen.iter().filter(|f| !known.contains(*f)).collect();
    let missing: Vec<&String> = known.iter().filter(|f| !seen.contains(*f)).collect();
    for u in &unexpected {
        println!("unexpected failure: {u}");
    }
    if all_run {
        for m in &missing {
            println!("documented failure no longer occurs: {m}");
        }
    }
    let ok = unexpected.is_empty() && (!all_run || missing.is_empty());
    println!("acceptance: {} ({} documented failures)", if ok { "as expected" } else { "UNEXPECTED" }, known.len());
    std::process::exit(if ok { 0 } else { 1 });
}
