//! Orthogonal representations from the angle/bend flow network, compaction
//! to the grid, drawing validation and SVG output.
//!
//! Network layout: node `v` for every vertex, node `n + f` for every face.
//! Arc `d` (for `d < 2m`) carries the angle, in right-angle units, of the
//! corner at the head of dart `d` inside the face left of `d`; it runs from the
//! face to the vertex with bounds `[1, 4]`. Arc `2m + d` moves one bend unit
//! across the edge of `d`, from the face left of `d` to the face on the other
//! side, at cost 1. A unit on that arc is a bend that is reflex in the
//! source face and convex in the target face.
//!
//! Demands are 4 at vertices, `4 - 2 deg(f)` at inner faces and
//! `-4 - 2 deg(f)` at the external face. Once the lower bound of every
//! corner arc is shipped, the residual demands are `4 - deg(v)` (free
//! angles), `4 - deg(f)` and `-4 - deg(f)`.

mod compact;
mod svg;
mod validate;

use std::fmt::{self, Write as _};

use crate::flow::{self, ArcTag, Flow, FlowNetwork};
use crate::graph::{Dart, EdgeId, PlaneGraph};

pub use compact::compact;
pub use svg::render_svg;
pub use validate::{validate_drawing, DrawingError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    L,
    R,
}

impl Turn {
    pub fn flip(self) -> Turn {
        match self {
            Turn::L => Turn::R,
            Turn::R => Turn::L,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Turn::L => 'L',
            Turn::R => 'R',
        }
    }
}

/// Angles and bends refining the embedding of a plane graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalRepresentation {
    /// Per dart `d`: angle of the corner at `head(d)` in the face left of `d`,
    /// between `next(d)` and the reverse of `d`.
    pub angles: Vec<u8>,
    /// Per edge: turns met when walking along dart `2e`.
    pub bends: Vec<Vec<Turn>>,
}

impl OrthogonalRepresentation {
    pub fn bend_count(&self) -> usize {
        self.bends.iter().map(Vec::len).sum()
    }

    pub fn edge_bends(&self, e: EdgeId) -> usize {
        self.bends[e].len()
    }

    pub fn is_straight(&self, e: EdgeId) -> bool {
        self.bends[e].is_empty()
    }

    /// Turns met when walking along dart `d`.
    pub fn bend_string(&self, d: Dart) -> Vec<Turn> {
        let s = &self.bends[d / 2];
        if d.is_multiple_of(2) {
            s.clone()
        } else {
            s.iter().rev().map(|t| t.flip()).collect()
        }
    }

    /// Checks vertex sums and the face-turning identity.
    pub fn validate(&self, g: &PlaneGraph) -> Result<(), String> {
        let m = g.edge_count();
        if self.angles.len() != 2 * m || self.bends.len() != m {
            return Err("representation size does not match the graph".into());
        }
        let mut around = vec![0u32; g.vertex_count()];
        for (d, &a) in self.angles.iter().enumerate() {
            if !(1..=4).contains(&a) {
                return Err(format!("dart {d} has angle {a}"));
            }
            around[g.head(d)] += a as u32;
        }
        for v in 0..g.vertex_count() {
            if g.degree(v) > 0 && around[v] != 4 {
                return Err(format!("angles around vertex {v} sum to {}", around[v]));
            }
        }
        for face in g.faces() {
            let mut total = 0i64;
            for &d in &face.boundary {
                total += 2 - self.angles[d] as i64;
                for t in self.bend_string(d) {
                    total += if t == Turn::L { 1 } else { -1 };
                }
            }
            let want = if face.is_external { -4 } else { 4 };
            if total != want {
                return Err(format!("face {} turns by {total}, expected {want}", face.id));
            }
        }
        Ok(())
    }

    /// Per-face corner listing used in goldens.
    pub fn dump(&self, g: &PlaneGraph) -> String {
        let mut out = String::new();
        for face in g.faces() {
            let tag = if face.is_external { " external" } else { "" };
            writeln!(out, "face {}{tag}", face.id).unwrap();
            for &d in &face.boundary {
                let bends: String = self.bend_string(d).iter().map(|t| t.as_char()).collect();
                let bends = if bends.is_empty() { "-".to_string() } else { bends };
                writeln!(
                    out,
                    "  {} -> {} edge {} bends {bends} angle {}",
                    g.tail(d),
                    g.head(d),
                    d / 2,
                    self.angles[d]
                )
                .unwrap();
            }
        }
        out
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Capacity standing in for "unbounded" on bend arcs.
pub fn unbounded_capacity(g: &PlaneGraph) -> i64 {
    let m = g.edge_count() as i64;
    let supply: i64 = g.faces().iter().map(|f| 4 + 2 * f.degree() as i64).sum();
    (4 * m + 16).max(supply + 1)
}

/// Index of the corner arc of dart `d`.
pub fn corner_arc(d: Dart) -> usize {
    d
}

/// Index of the bend arc leaving the face left of `d`.
pub fn crossing_arc(g: &PlaneGraph, d: Dart) -> usize {
    2 * g.edge_count() + d
}

pub fn build_network(g: &PlaneGraph) -> FlowNetwork {
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut net = FlowNetwork::new();
    for _ in 0..n {
        net.add_node(4);
    }
    for face in g.faces() {
        let deg = 2 * face.degree() as i64;
        net.add_node(if face.is_external { -4 - deg } else { 4 - deg });
    }
    if m == 0 {
        // a lone vertex: nothing to draw
        net.demands[0] = 0;
        let ext = n + g.external_face();
        net.demands[ext] = 0;
        return net;
    }
    for d in 0..2 * m {
        net.add_arc(n + g.face_of_dart(d), g.head(d), 1, 4, 0, ArcTag::Corner { dart: d });
    }
    let cap = unbounded_capacity(g);
    for d in 0..2 * m {
        let (f, h) = (g.face_of_dart(d), g.face_of_dart(PlaneGraph::twin(d)));
        net.add_arc(n + f, n + h, 0, cap, 1, ArcTag::Crossing { edge: d / 2, dart: d });
    }
    net
}

/// The drawing network with the bend arcs of every edge in `straight` removed
/// (their capacity is set to zero so arc indices stay aligned).
pub fn network_with_straight(g: &PlaneGraph, straight: &[EdgeId]) -> FlowNetwork {
    let mut net = build_network(g);
    for &e in straight {
        for d in [2 * e, 2 * e + 1] {
            let a = crossing_arc(g, d);
            net.arcs[a].capacity = 0;
        }
    }
    net
}

pub fn flow_to_representation(g: &PlaneGraph, net: &FlowNetwork, flow: &Flow) -> OrthogonalRepresentation {
    let m = g.edge_count();
    let mut angles = vec![0u8; 2 * m];
    let mut right = vec![0usize; m];
    let mut left = vec![0usize; m];
    for (arc, &x) in net.arcs.iter().zip(&flow.values) {
        match arc.tag {
            ArcTag::Corner { dart } => angles[dart] = x as u8,
            ArcTag::Crossing { edge, dart } => {
                // reflex in the face left of `dart`: a right turn along `dart`
                if dart % 2 == 0 {
                    right[edge] += x as usize;
                } else {
                    left[edge] += x as usize;
                }
            }
            ArcTag::Plain => {}
        }
    }
    let bends = (0..m)
        .map(|e| {
            let mut s = vec![Turn::R; right[e]];
            s.extend(std::iter::repeat_n(Turn::L, left[e]));
            s
        })
        .collect();
    OrthogonalRepresentation { angles, bends }
}

/// Min-cost flow of the drawing network with `straight` edges kept bend-free.
pub fn straight_flow(g: &PlaneGraph, straight: &[EdgeId]) -> Option<(FlowNetwork, Flow)> {
    let net = network_with_straight(g, straight);
    let flow = flow::solve_min_cost(&net).expect("drawing networks are balanced")?;
    Some((net, flow))
}

/// Minimum number of bends with `straight` edges kept bend-free.
pub fn straight_cost(g: &PlaneGraph, straight: &[EdgeId]) -> Option<i64> {
    straight_flow(g, straight).map(|(_, f)| f.cost)
}

pub fn min_bend_representation(g: &PlaneGraph) -> OrthogonalRepresentation {
    representation_with_straight(g, &[]).expect("the unconstrained network is always feasible")
}

pub fn representation_with_straight(g: &PlaneGraph, straight: &[EdgeId]) -> Option<OrthogonalRepresentation> {
    straight_flow(g, straight).map(|(net, flow)| flow_to_representation(g, &net, &flow))
}

/// A grid drawing: vertex positions and, per edge `[u, v]`, the polyline
/// from `u` to `v` including both endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    pub vertices: Vec<(i64, i64)>,
    pub edges: Vec<Vec<(i64, i64)>>,
}

impl Drawing {
    pub fn width(&self) -> i64 {
        self.points().map(|p| p.0).max().unwrap_or(0)
    }

    pub fn height(&self) -> i64 {
        self.points().map(|p| p.1).max().unwrap_or(0)
    }

    fn points(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.vertices.iter().copied().chain(self.edges.iter().flatten().copied())
    }

    pub fn bend_count(&self) -> usize {
        self.edges.iter().map(|p| p.len().saturating_sub(2)).sum()
    }
}
