//! Splitting a graph with `m <= 2n - 2` at its 1- and 2-edge cuts and keeping
//! the dense pieces, each completed with gadget copies at its cut stubs.

use crate::error::{Error, Result};
use crate::generators;
use crate::graph::{Dsu, EdgeId, PlaneGraph, Side, VertexId};

/// Gadget: octahedron minus an edge, with a triangle external face touching
/// the attachment vertex. It has `2|V| - 1` edges and the attachment vertex
/// has degree 3.
pub fn gadget_h() -> (PlaneGraph, VertexId) {
    let base = generators::octahedron_minus_edge();
    let attach = (0..base.vertex_count()).find(|&v| base.degree(v) == 3).unwrap();
    let triangle = base
        .faces()
        .iter()
        .find(|f| f.degree() == 3 && f.boundary.iter().any(|&d| base.tail(d) == attach))
        .unwrap()
        .id;
    let h = base.with_external(base.face_side(triangle).unwrap()).unwrap();
    (h, attach)
}

/// A dense piece: the completed member graph and the original vertex of each
/// of its first `piece.len()` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMember {
    pub graph: PlaneGraph,
    pub piece: Vec<VertexId>,
}

fn bridges(n: usize, edges: &[[VertexId; 2]], alive: &[bool]) -> Vec<bool> {
    let m = edges.len();
    let mut adj = vec![Vec::new(); n];
    for (e, &[u, v]) in edges.iter().enumerate() {
        if alive[e] {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }
    let mut is_bridge = vec![false; m];
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS: (vertex, parent edge, next index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (u, pe, ref mut i)) = stack.last_mut() {
            if *i < adj[u].len() {
                let (w, e) = adj[u][*i];
                *i += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        is_bridge[pe] = true;
                    }
                }
            }
        }
    }
    is_bridge
}

/// Edges lying in some cut of at most two edges.
pub fn small_cut_edges(g: &PlaneGraph) -> Vec<bool> {
    let m = g.edge_count();
    let mut alive = vec![true; m];
    let mut cut = bridges(g.vertex_count(), g.edges(), &alive);
    for f in 0..m {
        if cut[f] {
            continue;
        }
        alive[f] = false;
        for (e, b) in bridges(g.vertex_count(), g.edges(), &alive).into_iter().enumerate() {
            if b && e != f {
                cut[e] = true;
                cut[f] = true;
            }
        }
        alive[f] = true;
    }
    cut
}

pub fn decompose_dense(g: &PlaneGraph) -> Result<Vec<DenseMember>> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if m + 2 > 2 * n {
        return Err(Error::DensityTooHigh { edges: m, limit: (2 * n).saturating_sub(2) });
    }
    let cut = small_cut_edges(g);
    let mut pieces = Dsu::new(n);
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        if !cut[e] {
            pieces.union(u, v);
        }
    }
    let (h, attach) = gadget_h();
    let mut members = Vec::new();
    let mut roots: Vec<usize> = (0..n).map(|v| pieces.find(v)).collect();
    roots.sort_unstable();
    roots.dedup();
    for root in roots {
        let piece: Vec<VertexId> = (0..n).filter(|&v| pieces.find(v) == root).collect();
        let inner: Vec<EdgeId> = (0..m)
            .filter(|&e| !cut[e] && pieces.find(g.edge(e)[0]) == root)
            .collect();
        if inner.len() + 1 < 2 * piece.len() {
            continue;
        }
        members.push(build_member(g, &piece, &cut, &mut pieces, &h, attach)?);
    }
    Ok(members)
}

fn build_member(
    g: &PlaneGraph,
    piece: &[VertexId],
    cut: &[bool],
    pieces: &mut Dsu,
    h: &PlaneGraph,
    attach: VertexId,
) -> Result<DenseMember> {
    let root = pieces.find(piece[0]);
    let mut id = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in piece.iter().enumerate() {
        id[v] = i;
    }
    let mut edges: Vec<[VertexId; 2]> = Vec::new();
    let mut new_edge = vec![usize::MAX; g.edge_count()];
    let mut stubs = Vec::new();
    let mut n = piece.len();
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        let (iu, iv) = (pieces.find(u) == root, pieces.find(v) == root);
        if iu && iv && !cut[e] {
            new_edge[e] = edges.len();
            edges.push([id[u], id[v]]);
        } else if iu || iv {
            // a cut edge leaving the piece becomes a stub to a new leaf
            let leaf = n;
            n += 1;
            new_edge[e] = edges.len();
            edges.push(if iu { [id[u], leaf] } else { [leaf, id[v]] });
            stubs.push((e, leaf));
        }
    }
    let mut rotation: Vec<Vec<EdgeId>> = piece
        .iter()
        .map(|&v| g.rotation(v).iter().filter(|&&e| new_edge[e] != usize::MAX).map(|&e| new_edge[e]).collect())
        .collect();
    rotation.resize(n, Vec::new());
    // the stub sits in the corner of the gadget's external face at `attach`
    let corner = h
        .face(h.external_face())
        .boundary
        .iter()
        .copied()
        .find(|&d| h.head(d) == attach)
        .unwrap();
    let after = h.next_in_face(corner) / 2;
    for &(e, leaf) in &stubs {
        let mut vmap = vec![usize::MAX; h.vertex_count()];
        vmap[attach] = leaf;
        let mut next = n;
        for v in 0..h.vertex_count() {
            if v != attach {
                vmap[v] = next;
                next += 1;
            }
        }
        let base = edges.len();
        for &[a, b] in h.edges() {
            edges.push([vmap[a], vmap[b]]);
        }
        rotation.resize(next, Vec::new());
        for v in 0..h.vertex_count() {
            let rot: Vec<EdgeId> = h.rotation(v).iter().map(|&x| base + x).collect();
            if v == attach {
                let i = h.rotation_index(after, v);
                let mut r = rot.clone();
                r.insert(i + 1, new_edge[e]);
                rotation[leaf] = r;
            } else {
                rotation[vmap[v]] = rot;
            }
        }
        n = next;
    }
    // external face: a member dart whose original face is glued to the
    // original external face across edges outside the member
    let mut glue = Dsu::new(g.face_count());
    for e in 0..g.edge_count() {
        if new_edge[e] == usize::MAX {
            let (a, b) = g.edge_faces(e);
            glue.union(a, b);
        }
    }
    let target = glue.find(g.external_face());
    let external = (0..2 * g.edge_count())
        .find(|&d| new_edge[d / 2] != usize::MAX && glue.find(g.face_of_dart(d)) == target)
        .map(|d| (new_edge[d / 2], if d % 2 == 0 { Side::Left } else { Side::Right }));
    let graph = PlaneGraph::new(n, edges, rotation, external)?;
    Ok(DenseMember { graph, piece: piece.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gadget_shape() {
        let (h, attach) = gadget_h();
        assert_eq!(h.edge_count() + 1, 2 * h.vertex_count());
        assert_eq!(h.degree(attach), 3);
        assert_eq!(h.face(h.external_face()).degree(), 3);
    }

    #[test]
    fn sparse_graphs_have_no_members() {
        let c = generators::cycle(6).unwrap();
        assert!(decompose_dense(&c).unwrap().is_empty());
        assert!(matches!(decompose_dense(&generators::flower(3).unwrap()), Err(Error::DensityTooHigh { .. })));
    }
}
