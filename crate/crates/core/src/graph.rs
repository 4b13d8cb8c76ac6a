//! Plane graphs given by a rotation system.
//!
//! Edge `e = {u, v}` (stored as `[u, v]`) owns two darts: `2e` runs `u -> v`
//! and `2e + 1` runs `v -> u`. The rotation of a vertex lists its incident
//! edges in counter-clockwise order. Faces are traced with the face kept on
//! the left of every dart, so inner faces are walked counter-clockwise and the
//! external face clockwise.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;
pub type Dart = usize;

/// Side of an edge `[u, v]` relative to its canonical direction `u -> v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn dart(self, edge: EdgeId) -> Dart {
        match self {
            Side::Left => 2 * edge,
            Side::Right => 2 * edge + 1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Darts of the boundary walk, each with this face on its left.
    pub boundary: Vec<Dart>,
    pub is_external: bool,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }
}

/// A connected simple plane graph of maximum degree four.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    n: usize,
    edges: Vec<[VertexId; 2]>,
    rotation: Vec<Vec<EdgeId>>,
    /// Position of the dart's edge in the rotation of the dart's tail.
    rot_pos: Vec<usize>,
    faces: Vec<Face>,
    dart_face: Vec<FaceId>,
    external: FaceId,
    external_side: Option<(EdgeId, Side)>,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges == other.edges
            && self.rotation == other.rotation
            && self.external == other.external
    }
}

impl Eq for PlaneGraph {}

impl PlaneGraph {
    /// Builds and validates a plane graph. `external` names the external face by
    /// a side of an edge; `None` picks the first face of maximum degree.
    pub fn new(
        vertex_count: usize,
        edges: Vec<[VertexId; 2]>,
        rotation: Vec<Vec<EdgeId>>,
        external: Option<(EdgeId, Side)>,
    ) -> Result<Self> {
        Self::build(vertex_count, edges, rotation, external, 4)
    }

    fn build(
        vertex_count: usize,
        edges: Vec<[VertexId; 2]>,
        rotation: Vec<Vec<EdgeId>>,
        external: Option<(EdgeId, Side)>,
        max_degree: usize,
    ) -> Result<Self> {
        let n = vertex_count;
        if n == 0 {
            return Err(Error::InvalidArgument("graph has no vertices".into()));
        }
        if rotation.len() != n {
            return Err(Error::InconsistentRotation(format!(
                "{} rotation lists for {} vertices",
                rotation.len(),
                n
            )));
        }
        let mut seen = HashSet::new();
        for (e, &[u, v]) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("edge {e} has an endpoint out of range")));
            }
            if u == v {
                return Err(Error::NotSimple(format!("edge {e} is a self-loop")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::NotSimple(format!("edge {e} duplicates {{{u}, {v}}}")));
            }
        }
        let mut degree = vec![0usize; n];
        for &[u, v] in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        if let Some(v) = (0..n).find(|&v| degree[v] > max_degree) {
            return Err(Error::DegreeExceeded { vertex: v, degree: degree[v] });
        }
        let m = edges.len();
        let mut rot_pos = vec![usize::MAX; 2 * m];
        for (v, rot) in rotation.iter().enumerate() {
            if rot.len() != degree[v] {
                return Err(Error::InconsistentRotation(format!(
                    "rotation of vertex {v} lists {} edge-ends, expected {}",
                    rot.len(),
                    degree[v]
                )));
            }
            for (i, &e) in rot.iter().enumerate() {
                if e >= m {
                    return Err(Error::InconsistentRotation(format!(
                        "rotation of vertex {v} names unknown edge {e}"
                    )));
                }
                let d = if edges[e][0] == v {
                    2 * e
                } else if edges[e][1] == v {
                    2 * e + 1
                } else {
                    return Err(Error::InconsistentRotation(format!(
                        "rotation of vertex {v} names edge {e}, which is not incident to it"
                    )));
                };
                if rot_pos[d] != usize::MAX {
                    return Err(Error::InconsistentRotation(format!(
                        "rotation of vertex {v} lists edge {e} twice"
                    )));
                }
                rot_pos[d] = i;
            }
        }
        // connectivity
        let mut adj = vec![Vec::new(); n];
        for &[u, v] in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut visited = vec![false; n];
        let mut queue = VecDeque::from([0]);
        visited[0] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !visited[w] {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if visited.iter().any(|&x| !x) {
            return Err(Error::Disconnected);
        }

        let mut g = PlaneGraph {
            n,
            edges,
            rotation,
            rot_pos,
            faces: Vec::new(),
            dart_face: vec![usize::MAX; 2 * m],
            external: 0,
            external_side: external,
        };
        g.trace_faces();
        let f = g.faces.len();
        if n as isize - m as isize + f as isize != 2 {
            return Err(Error::InconsistentRotation(format!(
                "Euler check failed: n - m + f = {} - {} + {} != 2",
                n, m, f
            )));
        }
        g.external = match external {
            Some((e, side)) => {
                if e >= m {
                    return Err(Error::InvalidArgument(format!("external edge {e} does not exist")));
                }
                g.dart_face[side.dart(e)]
            }
            None => {
                let mut best = 0;
                for face in &g.faces {
                    if face.degree() > g.faces[best].degree() {
                        best = face.id;
                    }
                }
                best
            }
        };
        if g.external_side.is_none() && m > 0 {
            let d = g.faces[g.external].boundary[0];
            g.external_side = Some((d / 2, if d.is_multiple_of(2) { Side::Left } else { Side::Right }));
        }
        let ext = g.external;
        g.faces[ext].is_external = true;
        Ok(g)
    }

    fn trace_faces(&mut self) {
        let m = self.edges.len();
        if m == 0 {
            self.faces.push(Face { id: 0, boundary: Vec::new(), is_external: false });
            return;
        }
        for start in 0..2 * m {
            if self.dart_face[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut boundary = Vec::new();
            let mut d = start;
            loop {
                self.dart_face[d] = id;
                boundary.push(d);
                d = self.next_in_face(d);
                if d == start {
                    break;
                }
            }
            self.faces.push(Face { id, boundary, is_external: false });
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e]
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<EdgeId>] {
        &self.rotation
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn external_face(&self) -> FaceId {
        self.external
    }

    /// The edge side naming the external face, if the graph has edges.
    pub fn external_side(&self) -> Option<(EdgeId, Side)> {
        self.external_side
    }

    pub fn tail(&self, d: Dart) -> VertexId {
        self.edges[d / 2][d % 2]
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.edges[d / 2][1 - d % 2]
    }

    pub fn twin(d: Dart) -> Dart {
        d ^ 1
    }

    /// The dart of `e` leaving `v`.
    pub fn out_dart(&self, e: EdgeId, v: VertexId) -> Dart {
        if self.edges[e][0] == v {
            2 * e
        } else {
            debug_assert_eq!(self.edges[e][1], v);
            2 * e + 1
        }
    }

    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Successor of `d` on the face to its left: at the head, turn to the
    /// clockwise predecessor of the reverse dart.
    pub fn next_in_face(&self, d: Dart) -> Dart {
        let v = self.head(d);
        let rot = &self.rotation[v];
        let i = self.rot_pos[d ^ 1];
        let e = rot[(i + rot.len() - 1) % rot.len()];
        self.out_dart(e, v)
    }

    /// Index of `e` in the rotation of `v`.
    pub fn rotation_index(&self, e: EdgeId, v: VertexId) -> usize {
        self.rot_pos[self.out_dart(e, v)]
    }

    pub fn face_of_dart(&self, d: Dart) -> FaceId {
        self.dart_face[d]
    }

    /// The two faces incident to `e`: left and right of `u -> v`.
    pub fn edge_faces(&self, e: EdgeId) -> (FaceId, FaceId) {
        (self.dart_face[2 * e], self.dart_face[2 * e + 1])
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation[v].iter().map(move |&e| self.other_endpoint(e, v))
    }

    /// Sum of face degrees; equals `2m`.
    pub fn total_face_degree(&self) -> usize {
        self.faces.iter().map(Face::degree).sum()
    }

    /// The same graph and embedding with another external face.
    pub fn with_external(&self, side: (EdgeId, Side)) -> Result<PlaneGraph> {
        let cap = if self.max_degree() > 4 { usize::MAX } else { 4 };
        PlaneGraph::build(self.n, self.edges.clone(), self.rotation.clone(), Some(side), cap)
    }

    /// Edge side naming face `f`.
    pub fn face_side(&self, f: FaceId) -> Option<(EdgeId, Side)> {
        self.faces[f]
            .boundary
            .first()
            .map(|&d| (d / 2, if d % 2 == 0 { Side::Left } else { Side::Right }))
    }

    /// Builds a plane graph from straight-line coordinates; rotations are sorted
    /// counter-clockwise by angle and the external face is the one whose
    /// boundary walk has negative signed area.
    pub fn from_points(points: &[(f64, f64)], edges: Vec<[VertexId; 2]>) -> Result<PlaneGraph> {
        Self::from_points_capped(points, edges, 4)
    }

    pub(crate) fn from_points_capped(
        points: &[(f64, f64)],
        edges: Vec<[VertexId; 2]>,
        max_degree: usize,
    ) -> Result<PlaneGraph> {
        let n = points.len();
        let mut rotation = vec![Vec::new(); n];
        for (e, &[u, v]) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("edge {e} has an endpoint out of range")));
            }
            rotation[u].push(e);
            rotation[v].push(e);
        }
        for (v, rot) in rotation.iter_mut().enumerate() {
            let angle = |e: &EdgeId| {
                let w = if edges[*e][0] == v { edges[*e][1] } else { edges[*e][0] };
                (points[w].1 - points[v].1).atan2(points[w].0 - points[v].0)
            };
            rot.sort_by(|a, b| angle(a).partial_cmp(&angle(b)).unwrap());
        }
        let g = PlaneGraph::build(n, edges, rotation, None, max_degree)?;
        if g.edge_count() == 0 {
            return Ok(g);
        }
        let mut ext = None;
        for face in g.faces() {
            let area: f64 = face
                .boundary
                .iter()
                .map(|&d| {
                    let (a, b) = (points[g.tail(d)], points[g.head(d)]);
                    a.0 * b.1 - a.1 * b.0
                })
                .sum();
            if area < -1e-9 || (face.degree() == 2 && g.face_count() == 1) {
                ext = Some(face.id);
            }
        }
        match ext {
            Some(f) => g.with_external(g.face_side(f).unwrap()),
            None => Ok(g),
        }
    }

    /// Subgraph spanned by an edge subset is acyclic.
    pub fn is_forest(&self, edge_set: &[EdgeId]) -> bool {
        let mut dsu = Dsu::new(self.n);
        edge_set.iter().all(|&e| dsu.union(self.edges[e][0], self.edges[e][1]))
    }
}

/// Union-find with path halving.
#[derive(Debug, Clone)]
pub struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// An assignment of every edge to color 1 or 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring2 {
    colors: Vec<u8>,
}

impl EdgeColoring2 {
    pub fn new(colors: Vec<u8>) -> Result<Self> {
        if let Some(i) = colors.iter().position(|&c| c != 1 && c != 2) {
            return Err(Error::InvalidArgument(format!("edge {i} has color {}", colors[i])));
        }
        Ok(EdgeColoring2 { colors })
    }

    pub fn color(&self, e: EdgeId) -> u8 {
        self.colors[e]
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn class(&self, c: u8) -> Vec<EdgeId> {
        (0..self.colors.len()).filter(|&e| self.colors[e] == c).collect()
    }

    /// `color <edge-id> <1|2>` lines.
    pub fn to_text(&self) -> String {
        self.colors.iter().enumerate().map(|(e, c)| format!("color {e} {c}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> PlaneGraph {
        PlaneGraph::new(
            4,
            vec![[0, 1], [1, 2], [2, 3], [3, 0]],
            vec![vec![0, 3], vec![1, 0], vec![2, 1], vec![3, 2]],
            None,
        )
        .unwrap()
    }

    #[test]
    fn single_edge_has_one_face() {
        let g = PlaneGraph::new(2, vec![[0, 1]], vec![vec![0], vec![0]], None).unwrap();
        assert_eq!(g.face_count(), 1);
        assert_eq!(g.face(0).degree(), 2);
        assert!(g.face(0).is_external);
    }

    #[test]
    fn c4_has_two_square_faces() {
        let g = c4();
        assert_eq!(g.face_count(), 2);
        assert!(g.faces().iter().all(|f| f.degree() == 4));
    }

    #[test]
    fn k4_has_four_triangles() {
        let pts = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)];
        let g = PlaneGraph::from_points(&pts, vec![[0, 1], [1, 2], [2, 0], [0, 3], [1, 3], [2, 3]]).unwrap();
        assert_eq!(g.face_count(), 4);
        assert!(g.faces().iter().all(|f| f.degree() == 3));
        // outer triangle 0-1-2 is traversed clockwise
        let ext = g.face(g.external_face());
        let mut vs: Vec<_> = ext.boundary.iter().map(|&d| g.tail(d)).collect();
        vs.sort();
        assert_eq!(vs, vec![0, 1, 2]);
    }

    #[test]
    fn rejects_degree_five() {
        let edges: Vec<_> = (1..6).map(|v| [0, v]).collect();
        let mut rot = vec![(0..5).collect::<Vec<_>>()];
        rot.extend((0..5).map(|e| vec![e]));
        assert_eq!(
            PlaneGraph::new(6, edges, rot, None).unwrap_err(),
            Error::DegreeExceeded { vertex: 0, degree: 5 }
        );
    }

    #[test]
    fn rejects_missing_edge_end() {
        let err = PlaneGraph::new(
            4,
            vec![[0, 1], [1, 2], [2, 3], [3, 0]],
            vec![vec![0], vec![1, 0], vec![2, 1], vec![3, 2]],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InconsistentRotation(_)));
    }

    #[test]
    fn rejects_non_planar_rotation() {
        // K4 with one rotation flipped does not satisfy Euler's formula.
        let pts = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)];
        let g = PlaneGraph::from_points(&pts, vec![[0, 1], [1, 2], [2, 0], [0, 3], [1, 3], [2, 3]]).unwrap();
        let mut rot = g.rotations().to_vec();
        rot[3].swap(0, 1);
        let err = PlaneGraph::new(4, g.edges().to_vec(), rot, None).unwrap_err();
        assert!(matches!(err, Error::InconsistentRotation(_)));
    }

    #[test]
    fn rejects_disconnected() {
        let err = PlaneGraph::new(4, vec![[0, 1], [2, 3]], vec![vec![0], vec![0], vec![1], vec![1]], None)
            .unwrap_err();
        assert_eq!(err, Error::Disconnected);
    }

    #[test]
    fn external_side_selects_face() {
        let g = c4();
        let inner = g.with_external((0, Side::Left)).unwrap();
        let outer = g.with_external((0, Side::Right)).unwrap();
        assert_ne!(inner.external_face(), outer.external_face());
    }
}
