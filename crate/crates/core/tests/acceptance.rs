//! One line per acceptance criterion. Runs without the test harness so the
//! lines always print; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unbent::approx;
use unbent::collections::{
    counterexample_conditions, find_balanced_coloring, is_balanced, schnyder_collection, UnbentCollection,
};
use unbent::cubic;
use unbent::flow::solve_min_cost;
use unbent::{generators, oracle, ortho, EdgeColoring2, PlaneGraph};

const LIMIT_1: Duration = Duration::from_secs(60);
const LIMIT_2: Duration = Duration::from_secs(10);
const LIMIT_3: Duration = Duration::from_secs(600);
const LIMIT_4: Duration = Duration::from_secs(60);

const SCHNYDER_GRAPHS: u64 = 200;
const STAR_GRAPHS: u64 = 1000;
const REROUTE_CASES: u64 = 500;
const CUBIC_ORACLE_GRAPHS: u64 = 24;
const CUBIC_ORACLE_MAX_EDGES: usize = 18;
const CUBIC_MAX_VERTICES: usize = 40;
const CORPUS_SEEDS: u64 = 40;

/// Every collection built along the way, for the drawing check.
struct Produced {
    items: Vec<(String, PlaneGraph, UnbentCollection)>,
}

impl Produced {
    fn add(&mut self, label: impl Into<String>, g: &PlaneGraph, c: &UnbentCollection) {
        self.items.push((label.into(), g.clone(), c.clone()));
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if took > limit {
        o.pass = false;
        o.detail.push_str(&format!("; over the {}s limit", limit.as_secs()));
    }
    o.detail.push_str(&format!(" ({:.2}s)", took.as_secs_f64()));
    o
}

/// Fixtures plus seeded random plane 4-graphs.
fn corpus() -> Vec<(String, PlaneGraph)> {
    let mut out = generators::fixtures();
    for seed in 0..CORPUS_SEEDS {
        let n = 4 + (seed as usize % 9);
        out.push((format!("random-{seed}-{n}"), generators::random_plane_4graph(seed, n).unwrap()));
    }
    out
}

fn k4_values(p: &mut Produced) -> Outcome {
    let g = generators::k4();
    let tbn = oracle::exact_tbn(&g, 3).unwrap();
    let un = oracle::exact_un(&g, 3).unwrap();
    for (name, c) in [("tbn", &tbn.collection), ("un", &un.collection)] {
        if let Some(c) = c {
            p.add(format!("K4 {name}"), &g, c);
        }
    }
    outcome(tbn.value == 12 && un.value == Some(2), format!("tbn(K4) = {}, un(K4) = {:?}", tbn.value, un.value))
}

fn single_drawing() -> Outcome {
    let cases = [("C4", generators::cycle(4).unwrap(), 0), ("K3", generators::cycle(3).unwrap(), 1), ("K4", generators::k4(), 4)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, g, want) in cases {
        let flow = ortho::min_bend_representation(&g).bend_count();
        let exhaustive = oracle::exhaustive_min_bends(&g, 2);
        pass &= flow == want && exhaustive == Some(want);
        parts.push(format!("{name}: flow {flow}, enumeration {exhaustive:?}"));
    }
    outcome(pass, parts.join(", "))
}

/// Period-two coloring of `F_8` whose classes can each be kept straight.
fn f8_coloring(k: usize) -> Vec<u8> {
    (0..4 * k)
        .map(|e| {
            let first = if e < k {
                e % 2 == 0
            } else if e < 2 * k {
                (e - k) % 2 == 1
            } else {
                (e - 2 * k).is_multiple_of(4) || (e - 2 * k) % 4 == 3
            };
            if first {
                1
            } else {
                2
            }
        })
        .collect()
}

fn flowers(p: &mut Produced) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let f3 = generators::flower(3).unwrap();
    let un3 = oracle::exact_un(&f3, 3).unwrap();
    let coloring3 = find_balanced_coloring(&f3).unwrap();
    if let Some(c) = &un3.collection {
        p.add("F3 un", &f3, c);
    }
    pass &= un3.value == Some(3) && coloring3.is_none();
    parts.push(format!("un(F3) = {:?}, balanced coloring {}", un3.value, if coloring3.is_some() { "found" } else { "absent" }));
    for k in [4, 5] {
        let g = generators::flower(k).unwrap();
        let un = oracle::exact_un(&g, 3).unwrap();
        let condition = counterexample_conditions(&g);
        if let Some(c) = &un.collection {
            p.add(format!("F{k} un"), &g, c);
        }
        pass &= un.value == Some(3);
        parts.push(format!("un(F{k}) = {:?} (condition {condition:?})", un.value));
    }
    let f8 = generators::flower(8).unwrap();
    let coloring = EdgeColoring2::new(f8_coloring(8)).unwrap();
    let witness = is_balanced(&f8, &coloring).is_some();
    let collection = UnbentCollection::from_classes(&f8, &[coloring.class(1), coloring.class(2)]);
    let certified = match &collection {
        Some(c) => {
            p.add("F8 size 2", &f8, c);
            c.verify(&f8).is_ok() && c.size() == 2
        }
        None => false,
    };
    pass &= certified;
    parts.push(format!("un(F8) <= 2: explicit size-2 collection {certified}, balanced witness {witness}"));
    outcome(pass, parts.join("; "))
}

fn counterexamples(p: &mut Produced) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, g) in [("K5-e", generators::k5_minus_edge()), ("octahedron-e", generators::octahedron_minus_edge())] {
        let un = oracle::exact_un(&g, 3).unwrap();
        if let Some(c) = &un.collection {
            p.add(format!("{name} un"), &g, c);
        }
        pass &= un.value == Some(3);
        parts.push(format!("un({name}) = {:?}", un.value));
    }
    outcome(pass, parts.join(", "))
}

fn schnyder(p: &mut Produced) -> Outcome {
    let mut failures = Vec::new();
    for seed in 0..SCHNYDER_GRAPHS {
        let n = 3 + (seed as usize % 28);
        let g = generators::random_plane_4graph(seed, n).unwrap();
        let c = schnyder_collection(&g);
        if c.size() > 3 || c.verify(&g).is_err() {
            failures.push(seed);
        }
        p.add(format!("schnyder {seed}"), &g, &c);
    }
    outcome(failures.is_empty(), format!("{} graphs, failures at seeds {failures:?}", SCHNYDER_GRAPHS))
}

/// Random simple graph of maximum degree four, not necessarily planar.
fn random_degree4(seed: u64) -> (usize, Vec<[usize; 2]>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..40);
    let mut degree = vec![0; n];
    let mut edges: Vec<[usize; 2]> = Vec::new();
    for _ in 0..rng.gen_range(0..3 * n) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let e = [u.min(v), u.max(v)];
        if u != v && degree[u] < 4 && degree[v] < 4 && !edges.contains(&e) {
            degree[u] += 1;
            degree[v] += 1;
            edges.push(e);
        }
    }
    (n, edges)
}

fn star_forests() -> Outcome {
    let mut failures = Vec::new();
    for seed in 0..STAR_GRAPHS {
        let (n, edges) = if seed % 2 == 0 {
            random_degree4(seed)
        } else {
            let g = generators::random_plane_4graph(seed, 3 + seed as usize % 30).unwrap();
            (g.vertex_count(), g.edges().to_vec())
        };
        let ok = approx::star_forest_partition_of(n, &edges)
            .is_ok_and(|p| p.class_count() <= 4 && approx::verify_star_forests(n, &edges, &p).is_ok());
        if !ok {
            failures.push(seed);
        }
    }
    outcome(failures.is_empty(), format!("{STAR_GRAPHS} graphs, failures at seeds {failures:?}"))
}

fn reroute() -> Outcome {
    let mut failures = Vec::new();
    let mut moved = 0;
    for case in 0..REROUTE_CASES {
        let mut rng = ChaCha8Rng::seed_from_u64(case);
        let g = generators::random_plane_4graph(case, rng.gen_range(3..25)).unwrap();
        let net = ortho::build_network(&g);
        let mut flow = solve_min_cost(&net).unwrap().unwrap();
        approx::cancel_opposite_bends(&g, &net, &mut flow);
        // favor bent edges so most cases move flow
        let bent: Vec<usize> = (0..g.edge_count()).filter(|&e| approx::edge_flow(&g, &flow, e) > 0).collect();
        let e1 = if !bent.is_empty() && rng.gen_bool(0.8) {
            bent[rng.gen_range(0..bent.len())]
        } else {
            rng.gen_range(0..g.edge_count())
        };
        let mut v = g.edge(e1)[rng.gen_range(0..2)];
        if g.degree(v) < 2 {
            v = g.other_endpoint(e1, v);
        }
        if g.degree(v) < 2 {
            continue;
        }
        let x = approx::edge_flow(&g, &flow, e1);
        if x > 0 {
            moved += 1;
        }
        let Ok(after) = approx::reroute_around_vertex(&g, &net, &flow, v, e1) else {
            failures.push(case);
            continue;
        };
        let mut ok = after.is_feasible_for(&net) && approx::edge_flow(&g, &after, e1) == 0;
        for d in 0..2 * g.edge_count() {
            let e = d / 2;
            let a = ortho::crossing_arc(&g, d);
            if e == e1 {
                continue;
            }
            ok &= if g.rotation(v).contains(&e) {
                after.values[a] <= flow.values[a] + x
            } else {
                after.values[a] == flow.values[a]
            };
            ok &= after.values[ortho::corner_arc(d)] == flow.values[ortho::corner_arc(d)];
        }
        if !ok {
            failures.push(case);
        }
    }
    outcome(failures.is_empty(), format!("{REROUTE_CASES} cases ({moved} with flow to move), failures {failures:?}"))
}

fn approx_bounds(p: &mut Produced) -> Outcome {
    let mut over_6b = Vec::new();
    let mut over_3tbn = Vec::new();
    let mut compared = 0;
    for (name, g) in corpus() {
        let b = ortho::min_bend_representation(&g).bend_count();
        let c = approx::approx3_collection(&g).unwrap();
        if c.total_bends() > 6 * b || c.verify(&g).is_err() {
            over_6b.push(name.clone());
        }
        if g.edge_count() <= oracle::TBN_LIMIT_3 {
            compared += 1;
            let tbn = oracle::exact_tbn(&g, 3).unwrap();
            if c.total_bends() > 3 * tbn.value {
                over_3tbn.push(name.clone());
            }
            if let Some(t) = &tbn.collection {
                p.add(format!("{name} tbn"), &g, t);
            }
        }
        p.add(format!("{name} approx"), &g, &c);
    }
    outcome(
        over_6b.is_empty() && over_3tbn.is_empty(),
        format!("over 6b: {over_6b:?}; over 3 tbn: {over_3tbn:?} ({compared} graphs compared with the oracle)"),
    )
}

fn cubic_graphs() -> Vec<(String, PlaneGraph)> {
    let mut out = vec![("prism".to_string(), generators::prism()), ("cube".to_string(), generators::cube())];
    let mut seed = 0;
    while out.len() < 2 + CUBIC_ORACLE_GRAPHS as usize {
        let g = if seed % 2 == 0 {
            generators::random_triconnected_cubic(seed, 5 + (seed as usize / 2) % 3).unwrap()
        } else {
            generators::random_truncated_cubic(seed, 4 + (seed as usize / 2) % 2, 1 + (seed as usize / 2) % 2).unwrap()
        };
        if g.edge_count() <= CUBIC_ORACLE_MAX_EDGES {
            out.push((format!("cubic-{seed}-n{}", g.vertex_count()), g));
        }
        seed += 1;
    }
    out
}

fn cubic_tightness(p: &mut Produced) -> Outcome {
    let mut rows = Vec::new();
    let (mut all_equal, mut collection_optimal, mut q_equal) = (0, 0, 0);
    let graphs = cubic_graphs();
    for (name, g) in &graphs {
        let q = cubic::q_lower_bound(g).unwrap();
        let c = cubic::cubic_collection(g).unwrap();
        let tbn = oracle::exact_tbn(g, 2).unwrap().value;
        let total = c.total_bends();
        if c.verify(g).is_err() {
            rows.push(format!("{name}: invalid collection"));
        }
        collection_optimal += usize::from(total == tbn);
        q_equal += usize::from(q == tbn);
        all_equal += usize::from(total == q && q == tbn);
        if total != q || q != tbn {
            rows.push(format!("{name}: total {total}, q {q}, tbn {tbn}"));
        }
        if name == "cube" && !(total == 8 && tbn == 8) {
            rows.push(format!("cube: expected 8, total {total}, tbn {tbn}"));
        }
        p.add(format!("{name} cubic"), g, &c);
    }
    let mut invalid = Vec::new();
    let mut checked = 0;
    for seed in 0..40u64 {
        let primal = 4 + (seed as usize % 19);
        let g = generators::random_triconnected_cubic(1000 + seed, primal).unwrap();
        if g.vertex_count() > CUBIC_MAX_VERTICES {
            continue;
        }
        checked += 1;
        let a = cubic::analyze(&g).unwrap();
        let placement = cubic::place_dummies(&g).unwrap();
        let problems = cubic::placement_problems(&a, &placement);
        let drawn = cubic::draw_placement(&g, &placement).and_then(|c| c.verify(&g).map(|_| c).map_err(unbent::Error::Infeasible));
        match drawn {
            Ok(c) if problems.is_empty() => p.add(format!("cubic-large-{seed}"), &g, &c),
            _ => invalid.push(seed),
        }
    }
    let n = graphs.len();
    outcome(
        all_equal == n && invalid.is_empty(),
        format!(
            "total = q = tbn on {all_equal}/{n}; total = tbn on {collection_optimal}/{n}; q = tbn on {q_equal}/{n}; \
             placements valid on {}/{checked} graphs up to n = {CUBIC_MAX_VERTICES}; mismatches: [{}]",
            checked - invalid.len(),
            rows.join("; ")
        ),
    )
}

fn characterization() -> Outcome {
    let mut disagreements = Vec::new();
    let mut compared = 0;
    for (name, g) in corpus() {
        if g.edge_count() > 20 {
            continue;
        }
        compared += 1;
        let balanced = find_balanced_coloring(&g).unwrap().is_some();
        let un = oracle::exact_un(&g, 2).unwrap().value;
        if balanced != un.is_some() {
            disagreements.push(format!("{name} (balanced {balanced}, un {un:?})"));
        }
    }
    outcome(disagreements.is_empty(), format!("{compared} graphs, disagreements {disagreements:?}"))
}

fn drawings(p: &Produced) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for (label, g, c) in &p.items {
        for (i, d) in c.drawings.iter().enumerate() {
            count += 1;
            let svg = ortho::render_svg(&d.drawing, &d.straight);
            let valid = ortho::validate_drawing(g, &d.representation, &d.drawing).is_ok();
            if !valid || !svg.starts_with("<svg") {
                failures.push(format!("{label} drawing {i}"));
            }
        }
    }
    outcome(failures.is_empty(), format!("{count} drawings from {} collections, failures {failures:?}", p.items.len()))
}

fn main() {
    let mut produced = Produced { items: Vec::new() };
    let p = &mut produced;
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    let mut report = |i: usize, o: Outcome| {
        println!("criterion {i:>2}: {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((i, o));
    };
    report(1, timed(LIMIT_1, || k4_values(p)));
    report(2, timed(LIMIT_2, single_drawing));
    report(3, timed(LIMIT_3, || flowers(p)));
    report(4, timed(LIMIT_4, || counterexamples(p)));
    report(5, timed(Duration::MAX, || schnyder(p)));
    report(6, timed(Duration::MAX, star_forests));
    report(7, timed(Duration::MAX, reroute));
    report(8, timed(Duration::MAX, || approx_bounds(p)));
    report(9, timed(Duration::MAX, || cubic_tightness(p)));
    report(10, timed(Duration::MAX, characterization));
    report(11, timed(Duration::MAX, || drawings(p)));
    let failed: Vec<usize> = results.iter().filter(|(_, o)| !o.pass).map(|&(i, _)| i).collect();
    println!("{} of {} criteria pass", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
