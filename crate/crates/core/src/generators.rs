//! Fixture graphs and seeded random generators.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Dsu, PlaneGraph, Side, VertexId};

fn on_circle(count: usize, radius: f64, phase: f64) -> impl Iterator<Item = (f64, f64)> {
    (0..count).map(move |i| {
        let a = 2.0 * PI * (i as f64 + phase) / count as f64;
        (radius * a.cos(), radius * a.sin())
    })
}

/// Flower graph `F_k`: inner cycle `v_0..v_{k-1}` (ids `0..k`), outer cycle
/// `v'_0..v'_{k-1}` (ids `k..2k`), and petal edges `{v_i, v'_i}`,
/// `{v_i, v'_{i+1}}`. The petals point outward and the external face is the
/// one bounded by the outer cycle.
pub fn flower(k: usize) -> Result<PlaneGraph> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("flower needs k >= 3, got {k}")));
    }
    let mut points: Vec<_> = on_circle(k, 1.0, 0.0).collect();
    points.extend(on_circle(k, 3.0, -0.5));
    let mut edges = Vec::with_capacity(4 * k);
    for i in 0..k {
        edges.push([i, (i + 1) % k]);
    }
    for i in 0..k {
        edges.push([k + i, k + (i + 1) % k]);
    }
    for i in 0..k {
        edges.push([i, k + i]);
        edges.push([i, k + (i + 1) % k]);
    }
    PlaneGraph::from_points(&points, edges)
}

pub fn cycle(len: usize) -> Result<PlaneGraph> {
    if len < 3 {
        return Err(Error::InvalidArgument("cycle needs at least 3 vertices".into()));
    }
    let points: Vec<_> = on_circle(len, 1.0, 0.0).collect();
    PlaneGraph::from_points(&points, (0..len).map(|i| [i, (i + 1) % len]).collect())
}

pub fn path(len: usize) -> Result<PlaneGraph> {
    let points: Vec<_> = (0..len).map(|i| (i as f64, 0.0)).collect();
    PlaneGraph::from_points(&points, (1..len).map(|i| [i - 1, i]).collect())
}

/// `K_4` drawn as a triangle with a central vertex.
pub fn k4() -> PlaneGraph {
    let pts = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.5), (2.0, 1.2)];
    PlaneGraph::from_points(&pts, vec![[0, 1], [1, 2], [2, 0], [0, 3], [1, 3], [2, 3]]).unwrap()
}

/// `K_5` minus the edge `{0, 1}`: vertex 0 inside triangle 2-3-4, vertex 1
/// outside. Every face is a triangle.
pub fn k5_minus_edge() -> PlaneGraph {
    let pts = [(0.0, 0.3), (0.0, -4.0), (-2.0, 1.5), (2.0, 1.5), (0.0, -1.5)];
    let edges = vec![[0, 2], [0, 3], [0, 4], [2, 3], [3, 4], [4, 2], [1, 2], [1, 3], [1, 4]];
    PlaneGraph::from_points(&pts, edges).unwrap()
}

pub fn octahedron() -> PlaneGraph {
    flower(3).unwrap()
}

/// Octahedron minus an edge with the merged quadrilateral as external face.
pub fn octahedron_minus_edge() -> PlaneGraph {
    let oct = octahedron();
    // drop one outer-triangle edge; the outer face and its neighbour merge
    let removed = 3;
    remove_edge(&oct, removed, None)
}

/// Triangular prism: outer triangle 0-1-2, inner triangle 3-4-5.
pub fn prism() -> PlaneGraph {
    let mut pts: Vec<_> = on_circle(3, 3.0, 0.25).collect();
    pts.extend(on_circle(3, 1.0, 0.25));
    let edges = vec![[0, 1], [1, 2], [2, 0], [3, 4], [4, 5], [5, 3], [0, 3], [1, 4], [2, 5]];
    PlaneGraph::from_points(&pts, edges).unwrap()
}

/// Cube graph `Q_3`: outer square 0-3, inner square 4-7.
pub fn cube() -> PlaneGraph {
    let mut pts: Vec<_> = on_circle(4, 3.0, 0.5).collect();
    pts.extend(on_circle(4, 1.0, 0.5));
    let mut edges = Vec::new();
    for i in 0..4 {
        edges.push([i, (i + 1) % 4]);
    }
    for i in 0..4 {
        edges.push([4 + i, 4 + (i + 1) % 4]);
    }
    for i in 0..4 {
        edges.push([i, 4 + i]);
    }
    PlaneGraph::from_points(&pts, edges).unwrap()
}

/// Removes edge `e`, renumbering later edges down by one. The external face is
/// taken from `external`, or else from the face that absorbed the old one.
pub fn remove_edge(g: &PlaneGraph, e: usize, external: Option<(usize, Side)>) -> PlaneGraph {
    let renumber = |x: usize| if x > e { x - 1 } else { x };
    let edges: Vec<_> = g.edges().iter().enumerate().filter(|&(i, _)| i != e).map(|(_, &uv)| uv).collect();
    let rotation: Vec<Vec<usize>> = g
        .rotations()
        .iter()
        .map(|rot| rot.iter().filter(|&&x| x != e).map(|&x| renumber(x)).collect())
        .collect();
    let external = external.or_else(|| {
        g.face(g.external_face())
            .boundary
            .iter()
            .find(|&&d| d / 2 != e)
            .map(|&d| (renumber(d / 2), if d % 2 == 0 { Side::Left } else { Side::Right }))
    });
    PlaneGraph::new(g.vertex_count(), edges, rotation, external).expect("edge removal keeps a valid graph")
}

/// Named fixture graphs.
pub fn fixtures() -> Vec<(String, PlaneGraph)> {
    let mut out = vec![
        ("K3".to_string(), cycle(3).unwrap()),
        ("C4".to_string(), cycle(4).unwrap()),
        ("P3".to_string(), path(3).unwrap()),
        ("K4".to_string(), k4()),
        ("K5-e".to_string(), k5_minus_edge()),
        ("octahedron-e".to_string(), octahedron_minus_edge()),
        ("prism".to_string(), prism()),
        ("cube".to_string(), cube()),
    ];
    for k in 3..=8 {
        out.push((format!("F{k}"), flower(k).unwrap()));
    }
    out
}

fn orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Proper crossing of segments `ab` and `cd` (shared endpoints excluded by the caller).
fn segments_cross(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    let d1 = orient(a, b, c);
    let d2 = orient(a, b, d);
    let d3 = orient(c, d, a);
    let d4 = orient(c, d, b);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0)
}

/// Random connected plane graph of maximum degree four on `n` vertices,
/// deterministic in `seed`. Points sorted by angle around the origin give a
/// simple polygon; random non-crossing chords are added under the degree cap,
/// and a few polygon edges are dropped where that keeps the graph connected.
pub fn random_plane_4graph(seed: u64, n: usize) -> Result<PlaneGraph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("random_plane_4graph needs n >= 3, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut polar: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let a = 2.0 * PI * (i as f64 + rng.gen_range(0.1..0.9)) / n as f64;
            (a, rng.gen_range(1.0..10.0))
        })
        .collect();
    polar.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let points: Vec<(f64, f64)> = polar.iter().map(|&(a, r)| (r * a.cos(), r * a.sin())).collect();
    let mut edges: Vec<[VertexId; 2]> = (0..n).map(|i| [i, (i + 1) % n]).collect();
    let mut degree = vec![2usize; n];
    let mut candidates: Vec<[usize; 2]> = Vec::new();
    for u in 0..n {
        for v in u + 2..n {
            if !(u == 0 && v == n - 1) {
                candidates.push([u, v]);
            }
        }
    }
    candidates.shuffle(&mut rng);
    let budget = rng.gen_range(0..=n);
    let mut added = 0;
    for [u, v] in candidates {
        if added >= budget {
            break;
        }
        if degree[u] >= 4 || degree[v] >= 4 {
            continue;
        }
        let crosses = edges.iter().any(|&[a, b]| {
            a != u && a != v && b != u && b != v && segments_cross(points[u], points[v], points[a], points[b])
        });
        // chord must also avoid passing through other points
        let through = (0..n).any(|w| {
            w != u && w != v && orient(points[u], points[v], points[w]).abs() < 1e-9 && {
                let (p, q, r) = (points[u], points[v], points[w]);
                r.0 >= p.0.min(q.0) && r.0 <= p.0.max(q.0) && r.1 >= p.1.min(q.1) && r.1 <= p.1.max(q.1)
            }
        });
        if crosses || through {
            continue;
        }
        edges.push([u, v]);
        degree[u] += 1;
        degree[v] += 1;
        added += 1;
    }
    let drops = rng.gen_range(0..=n / 3);
    for _ in 0..drops {
        let i = rng.gen_range(0..edges.len());
        let mut dsu = Dsu::new(n);
        for (j, &[a, b]) in edges.iter().enumerate() {
            if j != i {
                dsu.union(a, b);
            }
        }
        let root = dsu.find(0);
        if (0..n).all(|v| dsu.find(v) == root) {
            edges.swap_remove(i);
        }
    }
    PlaneGraph::from_points(&points, edges)
}

/// Plane dual of `g`: one vertex per face, one edge per edge of `g` (same ids).
/// Requires the dual to be simple.
pub fn dual(g: &PlaneGraph, external_vertex: usize) -> Result<PlaneGraph> {
    let edges: Vec<[usize; 2]> = (0..g.edge_count())
        .map(|e| {
            let (l, r) = g.edge_faces(e);
            [l, r]
        })
        .collect();
    let rotation: Vec<Vec<usize>> = g.faces().iter().map(|f| f.boundary.iter().map(|&d| d / 2).collect()).collect();
    let d = PlaneGraph::new(g.face_count(), edges, rotation, None)?;
    // the dual face around primal vertex v is traced by darts of edges around v
    let e = g.rotation(external_vertex)[0];
    let side = if d.face_of_dart(2 * e) == face_around(&d, g, external_vertex) { Side::Left } else { Side::Right };
    d.with_external((e, side))
}

fn face_around(d: &PlaneGraph, g: &PlaneGraph, v: usize) -> usize {
    let mut edges: Vec<_> = g.rotation(v).to_vec();
    edges.sort();
    for f in d.faces() {
        let mut fe: Vec<_> = f.boundary.iter().map(|&x| x / 2).collect();
        fe.sort();
        if fe == edges {
            return f.id;
        }
    }
    unreachable!("every primal vertex bounds a dual face")
}

/// Random maximal plane graph on `n >= 4` vertices: a large outer triangle and
/// `n - 3` random interior points, triangulated greedily by increasing length.
pub fn random_triangulation(seed: u64, n: usize) -> Result<PlaneGraph> {
    if n < 4 {
        return Err(Error::InvalidArgument("triangulation needs n >= 4".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<(f64, f64)> = on_circle(3, 100.0, 0.25).collect();
    while points.len() < n {
        let p = (rng.gen_range(-40.0..40.0), rng.gen_range(-40.0..40.0));
        if points.iter().all(|q| (q.0 - p.0).hypot(q.1 - p.1) > 1.0) {
            points.push(p);
        }
    }
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push([u, v]);
        }
    }
    let len = |[u, v]: [usize; 2]| (points[u].0 - points[v].0).hypot(points[u].1 - points[v].1);
    pairs.sort_by(|a, b| len(*a).partial_cmp(&len(*b)).unwrap());
    let mut edges: Vec<[usize; 2]> = Vec::new();
    for [u, v] in pairs {
        let ok = edges.iter().all(|&[a, b]| {
            a == u || a == v || b == u || b == v || !segments_cross(points[u], points[v], points[a], points[b])
        });
        if ok {
            edges.push([u, v]);
        }
    }
    if edges.len() != 3 * n - 6 {
        return Err(Error::InvalidArgument("degenerate point set".into()));
    }
    PlaneGraph::from_points_capped(&points, edges, usize::MAX)
}

/// Random plane triconnected cubic graph with `2 * primal_n - 4` vertices: the
/// dual of a random triangulation, with a seeded choice of external face.
pub fn random_triconnected_cubic(seed: u64, primal_n: usize) -> Result<PlaneGraph> {
    let mut attempt = 0u64;
    loop {
        match random_triangulation(seed.wrapping_mul(7919).wrapping_add(attempt), primal_n) {
            Ok(t) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
                let v = rng.gen_range(0..t.vertex_count());
                return dual(&t, v);
            }
            Err(_) if attempt < 16 => attempt += 1,
            Err(e) => return Err(e),
        }
    }
}

/// Replaces the degree-3 vertex `v` by a triangle, one corner per incident
/// edge. Edge ids and the external face are kept.
pub fn truncate_vertex(g: &PlaneGraph, v: VertexId) -> Result<PlaneGraph> {
    let rot = g.rotation(v).to_vec();
    if rot.len() != 3 {
        return Err(Error::InvalidArgument(format!("vertex {v} does not have degree 3")));
    }
    let n = g.vertex_count();
    let corners = [v, n, n + 1];
    let mut edges = g.edges().to_vec();
    for (i, &e) in rot.iter().enumerate() {
        for end in edges[e].iter_mut().filter(|x| **x == v) {
            *end = corners[i];
        }
    }
    let m = edges.len();
    // triangle edge i joins corner i to corner i + 1
    for i in 0..3 {
        edges.push([corners[i], corners[(i + 1) % 3]]);
    }
    let mut rotation = g.rotations().to_vec();
    rotation.resize(n + 2, Vec::new());
    for i in 0..3 {
        rotation[corners[i]] = vec![rot[i], m + i, m + (i + 2) % 3];
    }
    PlaneGraph::new(n + 2, edges, rotation, g.external_side())
}

/// Random plane triconnected cubic graph with nested triangles: a random
/// cubic graph with `truncations` randomly chosen vertices truncated in turn.
pub fn random_truncated_cubic(seed: u64, primal_n: usize, truncations: usize) -> Result<PlaneGraph> {
    let mut g = random_triconnected_cubic(seed, primal_n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x7c));
    for _ in 0..truncations {
        let v = rng.gen_range(0..g.vertex_count());
        g = truncate_vertex(&g, v)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flower_counts() {
        let f3 = flower(3).unwrap();
        assert_eq!((f3.vertex_count(), f3.edge_count(), f3.face_count()), (6, 12, 8));
        let f8 = flower(8).unwrap();
        assert_eq!((f8.vertex_count(), f8.edge_count()), (16, 32));
        assert_eq!(f8.face(f8.external_face()).degree(), 8);
        assert!(flower(2).is_err());
    }

    #[test]
    fn flowers_are_four_regular() {
        for k in 3..=10 {
            let f = flower(k).unwrap();
            assert!((0..f.vertex_count()).all(|v| f.degree(v) == 4));
            let triangles = f.faces().iter().filter(|x| x.degree() == 3).count();
            assert_eq!(triangles, if k == 3 { 8 } else { 2 * k });
        }
    }

    #[test]
    fn fixture_sizes() {
        let k5e = k5_minus_edge();
        assert_eq!((k5e.vertex_count(), k5e.edge_count(), k5e.max_degree()), (5, 9, 4));
        let oe = octahedron_minus_edge();
        assert_eq!((oe.vertex_count(), oe.edge_count()), (6, 11));
        assert_eq!(oe.face(oe.external_face()).degree(), 4);
        let q = cube();
        assert_eq!((q.vertex_count(), q.edge_count()), (8, 12));
        assert!(q.faces().iter().all(|f| f.degree() == 4));
        let p = prism();
        assert_eq!(p.face(p.external_face()).degree(), 3);
    }

    #[test]
    fn random_graph_is_deterministic() {
        let a = random_plane_4graph(1, 8).unwrap();
        let b = random_plane_4graph(1, 8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_cubic_is_cubic() {
        for seed in 0..10 {
            let g = random_triconnected_cubic(seed, 8).unwrap();
            assert_eq!(g.vertex_count(), 12);
            assert!((0..g.vertex_count()).all(|v| g.degree(v) == 3));
        }
    }

    #[test]
    fn truncating_k4_gives_a_prism() {
        let g = truncate_vertex(&k4(), 0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 9));
        let mut degrees: Vec<usize> = g.faces().iter().map(|f| f.degree()).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![3, 3, 4, 4, 4]);
        let t = random_truncated_cubic(3, 6, 4).unwrap();
        assert_eq!(t.vertex_count(), 16);
        assert!((0..t.vertex_count()).all(|v| t.degree(v) == 3));
    }

    #[test]
    fn dual_of_octahedron_is_cube() {
        let d = dual(&octahedron(), 0).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count()), (8, 12));
        assert!(d.faces().iter().all(|f| f.degree() == 4));
    }
}
