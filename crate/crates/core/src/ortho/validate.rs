use std::collections::HashMap;

use thiserror::Error;

use super::{Drawing, OrthogonalRepresentation, Turn};
use crate::graph::PlaneGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error("edge {0}: polyline does not join its endpoints")]
    Endpoints(usize),
    #[error("edge {0}: segment is not axis-parallel")]
    NotAxisParallel(usize),
    #[error("edge {0}: zero-length segment")]
    ZeroLength(usize),
    #[error("edges {0} and {1} intersect away from a shared endpoint")]
    Crossing(usize, usize),
    #[error("two points share position {0:?}")]
    Collision((i64, i64)),
    #[error("vertex {0}: rotation differs from the embedding")]
    Rotation(usize),
    #[error("edge {0}: bends differ from the representation")]
    Bends(usize),
    #[error("dart {0}: angle differs from the representation")]
    Angle(usize),
}

fn direction(a: (i64, i64), b: (i64, i64)) -> usize {
    match ((b.0 - a.0).signum(), (b.1 - a.1).signum()) {
        (1, 0) => 0,
        (0, 1) => 1,
        (-1, 0) => 2,
        _ => 3,
    }
}

/// A point of a drawing: a vertex or the `i`-th bend of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Vertex(usize),
    Bend(usize, usize),
}

struct Segment {
    edge: usize,
    a: (i64, i64),
    b: (i64, i64),
    na: Node,
    nb: Node,
}

fn on_segment(p: (i64, i64), s: &Segment) -> bool {
    let (lx, hx) = (s.a.0.min(s.b.0), s.a.0.max(s.b.0));
    let (ly, hy) = (s.a.1.min(s.b.1), s.a.1.max(s.b.1));
    lx <= p.0 && p.0 <= hx && ly <= p.1 && p.1 <= hy
}

/// Intersection of two axis-parallel segments: none, a single point, or an
/// overlap of positive length (reported as `None` inside `Some`).
fn meet(s: &Segment, t: &Segment) -> Option<Option<(i64, i64)>> {
    let sh = s.a.1 == s.b.1;
    let th = t.a.1 == t.b.1;
    if sh == th {
        let collinear = if sh { s.a.1 == t.a.1 } else { s.a.0 == t.a.0 };
        if !collinear {
            return None;
        }
        let key = |p: (i64, i64)| if sh { p.0 } else { p.1 };
        let lo = key(s.a).min(key(s.b)).max(key(t.a).min(key(t.b)));
        let hi = key(s.a).max(key(s.b)).min(key(t.a).max(key(t.b)));
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => None,
            std::cmp::Ordering::Equal => Some(Some(if sh { (lo, s.a.1) } else { (s.a.0, lo) })),
            std::cmp::Ordering::Less => Some(None),
        };
    }
    let (h, v) = if sh { (s, t) } else { (t, s) };
    let p = (v.a.0, h.a.1);
    if on_segment(p, h) && on_segment(p, v) {
        Some(Some(p))
    } else {
        None
    }
}

/// Checks that `drawing` is a planar orthogonal drawing of `g` realizing
/// `rep`: axis-parallel segments, no crossings or overlaps, the input
/// rotation at every vertex, and the representation's bends and angles.
pub fn validate_drawing(g: &PlaneGraph, rep: &OrthogonalRepresentation, drawing: &Drawing) -> Result<(), DrawingError> {
    let mut segments = Vec::new();
    let mut position: HashMap<(i64, i64), Node> = HashMap::new();
    for (v, &p) in drawing.vertices.iter().enumerate() {
        if position.insert(p, Node::Vertex(v)).is_some() {
            return Err(DrawingError::Collision(p));
        }
    }
    for (e, poly) in drawing.edges.iter().enumerate() {
        let [u, v] = g.edge(e);
        if poly.len() < 2 || poly[0] != drawing.vertices[u] || *poly.last().unwrap() != drawing.vertices[v] {
            return Err(DrawingError::Endpoints(e));
        }
        let node = |i: usize| {
            if i == 0 {
                Node::Vertex(u)
            } else if i == poly.len() - 1 {
                Node::Vertex(v)
            } else {
                Node::Bend(e, i)
            }
        };
        for i in 1..poly.len() - 1 {
            if position.insert(poly[i], node(i)).is_some() {
                return Err(DrawingError::Collision(poly[i]));
            }
        }
        for i in 0..poly.len() - 1 {
            let (a, b) = (poly[i], poly[i + 1]);
            if a == b {
                return Err(DrawingError::ZeroLength(e));
            }
            if a.0 != b.0 && a.1 != b.1 {
                return Err(DrawingError::NotAxisParallel(e));
            }
            segments.push(Segment { edge: e, a, b, na: node(i), nb: node(i + 1) });
        }
    }
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            let (s, t) = (&segments[i], &segments[j]);
            match meet(s, t) {
                None => {}
                Some(None) => return Err(DrawingError::Crossing(s.edge, t.edge)),
                Some(Some(p)) => {
                    let at = |seg: &Segment| {
                        if p == seg.a {
                            Some(seg.na)
                        } else if p == seg.b {
                            Some(seg.nb)
                        } else {
                            None
                        }
                    };
                    match (at(s), at(t)) {
                        (Some(x), Some(y)) if x == y => {}
                        _ => return Err(DrawingError::Crossing(s.edge, t.edge)),
                    }
                }
            }
        }
    }

    // shape: first direction of every dart, turns along every edge
    let m = g.edge_count();
    let mut first = vec![0usize; 2 * m];
    for (e, poly) in drawing.edges.iter().enumerate() {
        let k = poly.len();
        first[2 * e] = direction(poly[0], poly[1]);
        first[2 * e + 1] = direction(poly[k - 1], poly[k - 2]);
        let turns: Vec<Turn> = (1..k - 1)
            .map(|i| {
                let a = direction(poly[i - 1], poly[i]);
                let b = direction(poly[i], poly[i + 1]);
                if (b + 4 - a) % 4 == 1 {
                    Turn::L
                } else {
                    Turn::R
                }
            })
            .collect();
        if (1..k - 1).any(|i| {
            let a = direction(poly[i - 1], poly[i]);
            let b = direction(poly[i], poly[i + 1]);
            (b + 4 - a).is_multiple_of(2)
        }) || turns != rep.bends[e]
        {
            return Err(DrawingError::Bends(e));
        }
    }
    for v in 0..g.vertex_count() {
        let rot = g.rotation(v);
        if rot.len() < 2 {
            continue;
        }
        // counter-clockwise order of directions must be a rotation of the input
        let dirs: Vec<usize> = rot.iter().map(|&e| first[g.out_dart(e, v)]).collect();
        let steps: usize = (0..dirs.len()).map(|i| (dirs[(i + 1) % dirs.len()] + 4 - dirs[i]) % 4).sum();
        if steps != 4 || dirs.iter().enumerate().any(|(i, a)| dirs[..i].contains(a)) {
            return Err(DrawingError::Rotation(v));
        }
    }
    for d in 0..2 * m {
        let next = g.next_in_face(d);
        let back = PlaneGraph::twin(d);
        let a = match (first[back] + 4 - first[next]) % 4 {
            0 => 4,
            x => x,
        };
        if a as u8 != rep.angles[d] {
            return Err(DrawingError::Angle(d));
        }
    }
    Ok(())
}
