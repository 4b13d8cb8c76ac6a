//! Collections with at most six times the minimum bends of one drawing: four
//! star forests, each kept straight by moving bends around the leaf end of
//! every bent edge.

use crate::collections::{CollectionDrawing, UnbentCollection};
use crate::error::{Error, Result};
use crate::flow::{Flow, FlowNetwork};
use crate::graph::{EdgeId, PlaneGraph, VertexId};
use crate::ortho;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarForestPartition {
    /// Color of every edge, in `0..4`.
    pub colors: Vec<u8>,
    /// Center endpoint of every edge.
    pub centers: Vec<VertexId>,
}

impl StarForestPartition {
    pub fn class(&self, c: u8) -> Vec<EdgeId> {
        (0..self.colors.len()).filter(|&e| self.colors[e] == c).collect()
    }

    pub fn class_count(&self) -> usize {
        self.colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
    }

    /// The endpoint of `e` that is not its center.
    pub fn leaf(&self, edges: &[[VertexId; 2]], e: EdgeId) -> VertexId {
        let [u, v] = edges[e];
        if self.centers[e] == u {
            v
        } else {
            u
        }
    }
}

/// Checks that every class is a star forest with the designated centers:
/// the non-center end of every edge has no other edge of its color.
pub fn verify_star_forests(n: usize, edges: &[[VertexId; 2]], p: &StarForestPartition) -> std::result::Result<(), String> {
    if p.colors.len() != edges.len() || p.centers.len() != edges.len() {
        return Err("partition does not list every edge".into());
    }
    let mut degree = vec![[0usize; 4]; n];
    for (e, &[u, v]) in edges.iter().enumerate() {
        let c = p.colors[e] as usize;
        if c >= 4 {
            return Err(format!("edge {e} has color {c}"));
        }
        degree[u][c] += 1;
        degree[v][c] += 1;
    }
    for (e, &[u, v]) in edges.iter().enumerate() {
        if p.centers[e] != u && p.centers[e] != v {
            return Err(format!("center of edge {e} is not an endpoint"));
        }
        let leaf = p.leaf(edges, e);
        if degree[leaf][p.colors[e] as usize] != 1 {
            return Err(format!("leaf {leaf} of edge {e} has other edges of color {}", p.colors[e]));
        }
    }
    Ok(())
}

pub fn star_forest_partition(g: &PlaneGraph) -> Result<StarForestPartition> {
    star_forest_partition_of(g.vertex_count(), g.edges())
}

/// At most four star forests covering a graph of maximum degree four.
///
/// Odd vertices are joined to an extra vertex and closed trails orient the
/// edges so that in- and out-degrees are at most two. Splitting every vertex
/// into an out-copy and an in-copy gives a bipartite graph of maximum degree
/// two, whose 2-edge-coloring leaves disjoint paths and cycles in each color.
/// Those are cut into stars of one or two edges with alternating colors.
pub fn star_forest_partition_of(n: usize, edges: &[[VertexId; 2]]) -> Result<StarForestPartition> {
    let mut degree = vec![0usize; n];
    for &[u, v] in edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    if let Some(v) = (0..n).find(|&v| degree[v] > 4) {
        return Err(Error::DegreeExceeded { vertex: v, degree: degree[v] });
    }
    let m = edges.len();
    let mut all = edges.to_vec();
    for v in (0..n).filter(|&v| degree[v] % 2 == 1) {
        all.push([v, n]);
    }
    let heads = orient_by_trails(n + 1, &all);
    // bipartite split: directed u -> w joins out(u) with in(w); the extra
    // vertex may have any degree, so its edges stay out
    let side = bipartite_two_coloring(n, edges, &heads[..m]);
    let mut colors = vec![0u8; m];
    let mut centers = vec![0usize; m];
    for matching in 0..2u8 {
        let class: Vec<EdgeId> = (0..m).filter(|&e| side[e] == matching).collect();
        for piece in linear_pieces(n, edges, &class) {
            for (star, center, parity) in cut_into_stars(edges, &piece) {
                for e in star {
                    colors[e] = 2 * matching + parity;
                    centers[e] = center;
                }
            }
        }
    }
    let mut p = StarForestPartition { colors, centers };
    merge_classes(n, edges, &mut p);
    debug_assert_eq!(verify_star_forests(n, edges, &p), Ok(()));
    Ok(p)
}

/// Merges classes whose union is still a star forest and renumbers the
/// remaining ones from 0.
fn merge_classes(n: usize, edges: &[[VertexId; 2]], p: &mut StarForestPartition) {
    for c in 1..4u8 {
        for target in 0..c {
            let union: Vec<EdgeId> = (0..edges.len()).filter(|&e| p.colors[e] == c || p.colors[e] == target).collect();
            if union.iter().all(|&e| p.colors[e] == c) || union.iter().all(|&e| p.colors[e] == target) {
                continue;
            }
            if let Some(centers) = star_centers(n, edges, &union) {
                for (&e, center) in union.iter().zip(centers) {
                    p.colors[e] = target;
                    p.centers[e] = center;
                }
                break;
            }
        }
    }
    let mut used: Vec<u8> = p.colors.clone();
    used.sort_unstable();
    used.dedup();
    for c in p.colors.iter_mut() {
        *c = used.iter().position(|u| u == c).unwrap() as u8;
    }
}

/// Centers making `class` a star forest, if there are any: a vertex with
/// two or more class edges is their center, and a lone edge keeps its
/// smaller endpoint.
fn star_centers(n: usize, edges: &[[VertexId; 2]], class: &[EdgeId]) -> Option<Vec<VertexId>> {
    let mut degree = vec![0usize; n];
    for &e in class {
        let [u, v] = edges[e];
        degree[u] += 1;
        degree[v] += 1;
    }
    class
        .iter()
        .map(|&e| {
            let [u, v] = edges[e];
            match (degree[u], degree[v]) {
                (1, 1) => Some(u.min(v)),
                (_, 1) => Some(u),
                (1, _) => Some(v),
                _ => None,
            }
        })
        .collect()
}

/// Head of every edge after orienting along closed trails of a graph whose
/// degrees are all even.
fn orient_by_trails(n: usize, edges: &[[VertexId; 2]]) -> Vec<VertexId> {
    let mut adj = vec![Vec::new(); n];
    for (e, &[u, v]) in edges.iter().enumerate() {
        adj[u].push(e);
        adj[v].push(e);
    }
    let mut used = vec![false; edges.len()];
    let mut next = vec![0usize; n];
    let mut heads = vec![0; edges.len()];
    for start in 0..edges.len() {
        if used[start] {
            continue;
        }
        let mut at = edges[start][0];
        // even degrees: a walk on unused edges only stops where it began
        loop {
            while next[at] < adj[at].len() && used[adj[at][next[at]]] {
                next[at] += 1;
            }
            let Some(&e) = adj[at].get(next[at]) else { break };
            used[e] = true;
            let [u, v] = edges[e];
            let to = if u == at { v } else { u };
            heads[e] = to;
            at = to;
        }
    }
    heads
}

/// Proper 2-coloring of the out/in split, which has maximum degree two and
/// only even cycles.
fn bipartite_two_coloring(n: usize, edges: &[[VertexId; 2]], heads: &[VertexId]) -> Vec<u8> {
    // node 2v is the out-copy of v, node 2v + 1 its in-copy
    let ends: Vec<[usize; 2]> = edges
        .iter()
        .zip(heads)
        .map(|(&[u, v], &h)| {
            let t = if h == v { u } else { v };
            [2 * t, 2 * h + 1]
        })
        .collect();
    let mut adj = vec![Vec::new(); 2 * n];
    for (e, &[a, b]) in ends.iter().enumerate() {
        adj[a].push(e);
        adj[b].push(e);
    }
    let mut color = vec![u8::MAX; edges.len()];
    // paths first from an end, then the remaining cycles
    let starts: Vec<usize> = (0..2 * n).filter(|&x| adj[x].len() == 1).chain(0..2 * n).collect();
    for s in starts {
        let Some(&first) = adj[s].iter().find(|&&e| color[e] == u8::MAX) else { continue };
        let (mut at, mut e, mut c) = (s, first, 0u8);
        loop {
            color[e] = c;
            at = if ends[e][0] == at { ends[e][1] } else { ends[e][0] };
            match adj[at].iter().find(|&&x| color[x] == u8::MAX) {
                Some(&x) => {
                    e = x;
                    c ^= 1;
                }
                None => break,
            }
        }
    }
    color
}

/// A path or cycle of a class with maximum degree two, as vertices and edges
/// in walk order.
struct Piece {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    closed: bool,
}

fn linear_pieces(n: usize, edges: &[[VertexId; 2]], class: &[EdgeId]) -> Vec<Piece> {
    let mut adj = vec![Vec::new(); n];
    for &e in class {
        let [u, v] = edges[e];
        adj[u].push(e);
        adj[v].push(e);
    }
    let mut used = vec![false; edges.len()];
    let mut pieces = Vec::new();
    let starts: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 1).chain(0..n).collect();
    for s in starts {
        let Some(&first) = adj[s].iter().find(|&&e| !used[e]) else { continue };
        let mut piece = Piece { vertices: vec![s], edges: Vec::new(), closed: false };
        let (mut at, mut e) = (s, first);
        loop {
            used[e] = true;
            piece.edges.push(e);
            let [u, v] = edges[e];
            at = if u == at { v } else { u };
            match adj[at].iter().find(|&&x| !used[x]) {
                Some(&x) => {
                    piece.vertices.push(at);
                    e = x;
                }
                None => {
                    piece.closed = at == s;
                    if !piece.closed {
                        piece.vertices.push(at);
                    }
                    break;
                }
            }
        }
        pieces.push(piece);
    }
    pieces
}

/// Consecutive stars of one or two edges with alternating parity; a cycle
/// gets an even number of stars so the parities also alternate across the
/// closing vertex.
fn cut_into_stars(edges: &[[VertexId; 2]], piece: &Piece) -> Vec<(Vec<EdgeId>, VertexId, u8)> {
    let len = piece.edges.len();
    let mut stars = len.div_ceil(2);
    if piece.closed && stars % 2 == 1 {
        stars += 1;
    }
    // the first `len - stars` stars take two edges
    let doubles = len - stars;
    let mut out = Vec::with_capacity(stars);
    let mut i = 0;
    for s in 0..stars {
        let parity = (s % 2) as u8;
        if s < doubles {
            out.push((vec![piece.edges[i], piece.edges[i + 1]], piece.vertices[i + 1], parity));
            i += 2;
        } else {
            let [u, v] = edges[piece.edges[i]];
            out.push((vec![piece.edges[i]], u.min(v), parity));
            i += 1;
        }
    }
    out
}

/// Cancels flow running both ways across an edge, so at most one of its bend
/// arcs is used.
pub fn cancel_opposite_bends(g: &PlaneGraph, net: &FlowNetwork, flow: &mut Flow) {
    for e in 0..g.edge_count() {
        let (a, b) = (ortho::crossing_arc(g, 2 * e), ortho::crossing_arc(g, 2 * e + 1));
        let both = flow.values[a].min(flow.values[b]);
        flow.values[a] -= both;
        flow.values[b] -= both;
    }
    flow.cost = flow.recompute_cost(net);
}

/// Moves all bends of `e1` to the other edges around `v`: the flow across
/// `e1` goes around `v` the other way, cancelling against flow in the
/// opposite direction where there is some. Expects at most one bend arc of
/// each edge at `v` to carry flow.
pub fn reroute_around_vertex(g: &PlaneGraph, net: &FlowNetwork, flow: &Flow, v: VertexId, e1: EdgeId) -> Result<Flow> {
    let rot = g.rotation(v);
    let d = rot.len();
    let Some(j) = rot.iter().position(|&e| e == e1) else {
        return Err(Error::InvalidArgument(format!("edge {e1} is not incident to vertex {v}")));
    };
    if d < 2 {
        return Err(Error::InvalidArgument(format!("vertex {v} has degree {d}")));
    }
    let mut out = flow.clone();
    let out_dart = |k: usize| g.out_dart(rot[k % d], v);
    // with F_k the face of the corner from rot[k] to rot[k + 1]: out_dart(k)
    // crosses from F_k to F_{k-1} and its twin from F_{k-1} to F_k
    let forward = ortho::crossing_arc(g, out_dart(j));
    let backward = ortho::crossing_arc(g, PlaneGraph::twin(out_dart(j)));
    for (arc, leaving) in [(forward, true), (backward, false)] {
        let x = out.values[arc];
        if x == 0 {
            continue;
        }
        out.values[arc] = 0;
        for step in 1..d {
            // F_j -> F_{j+1} -> ... -> F_{j-1}, or the reverse walk
            let dart = if leaving {
                PlaneGraph::twin(out_dart(j + step))
            } else {
                out_dart(j + d - step)
            };
            let a = ortho::crossing_arc(g, dart);
            let opposite = ortho::crossing_arc(g, PlaneGraph::twin(dart));
            let cancel = x.min(out.values[opposite]);
            out.values[opposite] -= cancel;
            out.values[a] += x - cancel;
        }
    }
    out.cost = out.recompute_cost(net);
    Ok(out)
}

/// Bends of edge `e` under `flow`.
pub fn edge_flow(g: &PlaneGraph, flow: &Flow, e: EdgeId) -> i64 {
    flow.values[ortho::crossing_arc(g, 2 * e)] + flow.values[ortho::crossing_arc(g, 2 * e + 1)]
}

/// One drawing per star forest, each derived from one min-bend flow; a
/// single drawing when that flow has no bend.
pub fn approx3_collection(g: &PlaneGraph) -> Result<UnbentCollection> {
    let net = ortho::build_network(g);
    let mut base = crate::flow::solve_min_cost(&net)?.expect("the drawing network is always feasible");
    cancel_opposite_bends(g, &net, &mut base);
    if base.cost == 0 {
        let rep = ortho::flow_to_representation(g, &net, &base);
        let all: Vec<EdgeId> = (0..g.edge_count()).collect();
        let drawing = CollectionDrawing::new(g, rep, all);
        return Ok(UnbentCollection { drawings: vec![drawing], coverage: vec![0; g.edge_count()] });
    }
    let stars = star_forest_partition(g)?;
    let mut drawings = Vec::new();
    let mut coverage = vec![usize::MAX; g.edge_count()];
    for c in 0..4u8 {
        let class = stars.class(c);
        if class.is_empty() {
            continue;
        }
        let mut flow = base.clone();
        for &e in &class {
            if edge_flow(g, &flow, e) > 0 {
                flow = reroute_around_vertex(g, &net, &flow, stars.leaf(g.edges(), e), e)?;
            }
        }
        if !flow.is_feasible_for(&net) {
            return Err(Error::Infeasible(format!("rerouted flow for color {c} is infeasible")));
        }
        let rep = ortho::flow_to_representation(g, &net, &flow);
        if let Some(&e) = class.iter().find(|&&e| !rep.is_straight(e)) {
            return Err(Error::Infeasible(format!("edge {e} of color {c} is still bent")));
        }
        for &e in &class {
            coverage[e] = drawings.len();
        }
        drawings.push(CollectionDrawing::new(g, rep, class));
    }
    Ok(UnbentCollection { drawings, coverage })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn check(n: usize, edges: &[[VertexId; 2]]) -> StarForestPartition {
        let p = star_forest_partition_of(n, edges).unwrap();
        verify_star_forests(n, edges, &p).unwrap();
        assert!(p.class_count() <= 4);
        p
    }

    #[test]
    fn small_star_forests() {
        let star = check(5, &[[0, 1], [0, 2], [0, 3], [0, 4]]);
        assert_eq!(star.class_count(), 1);
        let c5: Vec<[usize; 2]> = (0..5).map(|i| [i, (i + 1) % 5]).collect();
        assert_eq!(check(5, &c5).class_count(), 2);
        let f3 = generators::flower(3).unwrap();
        check(f3.vertex_count(), f3.edges());
        assert!(matches!(
            star_forest_partition_of(6, &[[0, 1], [0, 2], [0, 3], [0, 4], [0, 5]]),
            Err(Error::DegreeExceeded { vertex: 0, degree: 5 })
        ));
    }

    #[test]
    fn verifier_rejects_paths() {
        let edges = [[0, 1], [1, 2], [2, 3]];
        let p = StarForestPartition { colors: vec![0, 0, 0], centers: vec![1, 1, 2] };
        assert!(verify_star_forests(4, &edges, &p).is_err());
    }

    #[test]
    fn rerouting_straightens_one_edge() {
        let g = generators::k4();
        let net = ortho::build_network(&g);
        let mut flow = crate::flow::solve_min_cost(&net).unwrap().unwrap();
        cancel_opposite_bends(&g, &net, &mut flow);
        let e = (0..g.edge_count()).find(|&e| edge_flow(&g, &flow, e) > 0).unwrap();
        let v = g.edge(e)[1];
        let after = reroute_around_vertex(&g, &net, &flow, v, e).unwrap();
        assert!(after.is_feasible_for(&net));
        assert_eq!(edge_flow(&g, &after, e), 0);
        assert!(after.cost - flow.cost <= 2 * edge_flow(&g, &flow, e));
        assert!(reroute_around_vertex(&g, &net, &flow, g.edge(e)[0], (e + 1) % 6).is_err() || g.edge((e + 1) % 6).contains(&g.edge(e)[0]));
    }

    #[test]
    fn collections_within_six_b() {
        let c4 = generators::cycle(4).unwrap();
        let c = approx3_collection(&c4).unwrap();
        assert_eq!((c.size(), c.total_bends()), (1, 0));
        for g in [generators::k4(), generators::octahedron(), generators::cube(), generators::k5_minus_edge()] {
            let c = approx3_collection(&g).unwrap();
            c.verify(&g).unwrap();
            let b = ortho::min_bend_representation(&g).bend_count();
            assert!(c.size() <= 4);
            assert!(c.total_bends() <= 6 * b, "{} > 6 * {b}", c.total_bends());
        }
    }
}
