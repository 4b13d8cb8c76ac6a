//! Three forests from a Schnyder wood of a triangulation containing the graph.
//!
//! Every face (the external one included) is filled with a ring: for a face
//! walk `c_0 .. c_{k-1}`, new vertices `w_i` adjacent to `c_i`, `c_{i+1}` and
//! `w_{i+1}`, plus a hub adjacent to every `w_i`. The result is a simple
//! maximal plane graph whose outer triangle consists of new vertices only, so
//! every original edge is an inner edge.

use std::collections::HashSet;

use super::UnbentCollection;
use crate::graph::{EdgeId, PlaneGraph};

struct Triangulation {
    adj: Vec<Vec<usize>>,
    outer: [usize; 3],
}

fn triangulate(g: &PlaneGraph) -> Triangulation {
    let mut adj: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| g.neighbors(v).collect()).collect();
    let add = |adj: &mut Vec<Vec<usize>>, a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    let mut outer = [0; 3];
    for face in g.faces() {
        let walk: Vec<usize> = face.boundary.iter().map(|&d| g.tail(d)).collect();
        let k = walk.len();
        let first = adj.len();
        for _ in 0..=k {
            adj.push(Vec::new());
        }
        let hub = first + k;
        for i in 0..k {
            let w = first + i;
            let w_next = first + (i + 1) % k;
            add(&mut adj, w, walk[i]);
            add(&mut adj, w, walk[(i + 1) % k]);
            add(&mut adj, w, w_next);
            add(&mut adj, w, hub);
        }
        if face.is_external {
            outer = [hub, first, first + 1];
        }
    }
    Triangulation { adj, outer }
}

/// Canonical ordering by repeatedly peeling a chord-free outer vertex.
fn canonical_order(t: &Triangulation) -> Vec<usize> {
    let n = t.adj.len();
    let [a1, a2, an] = t.outer;
    let mut removed = vec![false; n];
    let mut on_outer = vec![false; n];
    for v in t.outer {
        on_outer[v] = true;
    }
    let mut peeled = Vec::with_capacity(n);
    let mut candidate = Some(an);
    while peeled.len() + 2 < n {
        let v = candidate.take().unwrap_or_else(|| {
            (0..n)
                .find(|&v| {
                    on_outer[v]
                        && !removed[v]
                        && v != a1
                        && v != a2
                        && t.adj[v].iter().filter(|&&w| !removed[w] && on_outer[w]).count() == 2
                })
                .expect("a triangulated disk always has a chord-free outer vertex")
        });
        removed[v] = true;
        peeled.push(v);
        for &w in &t.adj[v] {
            if !removed[w] {
                on_outer[w] = true;
            }
        }
    }
    let mut order = vec![a1, a2];
    order.extend(peeled.into_iter().rev());
    order
}

/// Schnyder trees of the ring triangulation restricted to the edges of `g`.
pub fn schnyder_forests(g: &PlaneGraph) -> [Vec<EdgeId>; 3] {
    let all: Vec<EdgeId> = (0..g.edge_count()).collect();
    if g.is_forest(&all) {
        return [all, Vec::new(), Vec::new()];
    }
    let t = triangulate(g);
    let order = canonical_order(&t);
    let mut tree_of = std::collections::HashMap::new();
    let mut contour = vec![order[0], order[1]];
    for &v in &order[2..] {
        let positions: Vec<usize> =
            (0..contour.len()).filter(|&i| t.adj[v].contains(&contour[i])).collect();
        let (p, q) = (positions[0], *positions.last().unwrap());
        debug_assert!(contour[p..=q].iter().all(|c| t.adj[v].contains(c)), "neighbors on the contour are contiguous");
        tree_of.insert((v.min(contour[p]), v.max(contour[p])), 0);
        tree_of.insert((v.min(contour[q]), v.max(contour[q])), 1);
        for &c in &contour[p + 1..q] {
            tree_of.insert((v.min(c), v.max(c)), 2);
        }
        contour.splice(p + 1..q, [v]);
    }
    let mut forests: [Vec<EdgeId>; 3] = Default::default();
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        let tree = *tree_of.get(&(u.min(v), u.max(v))).expect("every inner edge joins a Schnyder tree");
        forests[tree].push(e);
    }
    debug_assert!(forests.iter().all(|f| g.is_forest(f)));
    forests
}

/// A collection of at most three drawings, one per Schnyder forest.
pub fn schnyder_collection(g: &PlaneGraph) -> UnbentCollection {
    let forests = schnyder_forests(g);
    let seen: HashSet<EdgeId> = forests.iter().flatten().copied().collect();
    debug_assert_eq!(seen.len(), g.edge_count());
    UnbentCollection::from_classes(g, &forests).expect("forests are always drawable straight")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn forests_partition_fixtures() {
        for (name, g) in generators::fixtures() {
            let forests = schnyder_forests(&g);
            assert!(forests.iter().all(|f| g.is_forest(f)), "{name}");
            assert_eq!(forests.iter().map(Vec::len).sum::<usize>(), g.edge_count(), "{name}");
        }
    }

    #[test]
    fn collections_verify() {
        for g in [generators::k4(), generators::flower(3).unwrap(), generators::path(4).unwrap()] {
            let c = schnyder_collection(&g);
            c.verify(&g).unwrap();
            assert!(c.size() <= 3);
        }
        assert_eq!(schnyder_collection(&generators::path(4).unwrap()).size(), 1);
    }
}
