//! Balanced 2-edge-colorings, free-angle assignments and the small-instance
//! classifier for the unbent number.
//!
//! For a color `c`, the faces of `g` glued across edges of the other color
//! form the regions of the color-`c` subgraph. Every monochromatic cycle
//! encloses a union of inner regions, so all cycles enclose demand zero
//! exactly when every inner region does. With free angles assigned, an inner
//! region `R` has demand `assigned(R) + sum (4 - deg f)`, so it must receive
//! `need(R) = sum (deg f - 4)` free angles; the external region takes the
//! rest. Whether such an assignment exists is a transportation problem.

use std::collections::HashMap;

use super::forests::two_forest_partition;
use crate::error::{Error, Result};
use crate::flow::{self, ArcTag, FlowNetwork};
use crate::graph::{Dsu, EdgeColoring2, EdgeId, FaceId, PlaneGraph};
use crate::ortho;

/// Largest edge count accepted by exhaustive coloring search.
pub const UN_GUARD: usize = 26;

/// Per vertex, the faces receiving its `4 - deg(v)` free angles (a face may
/// appear more than once).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleAssignment {
    pub targets: Vec<Vec<FaceId>>,
}

impl AngleAssignment {
    pub fn empty(g: &PlaneGraph) -> Self {
        AngleAssignment { targets: vec![Vec::new(); g.vertex_count()] }
    }

    /// Each vertex assigns exactly its free angles, to incident faces only.
    pub fn is_valid(&self, g: &PlaneGraph) -> bool {
        self.targets.len() == g.vertex_count()
            && (0..g.vertex_count()).all(|v| {
                let incident: Vec<FaceId> =
                    g.rotation(v).iter().map(|&e| g.face_of_dart(g.out_dart(e, v))).collect();
                self.targets[v].len() == 4 - g.degree(v) && self.targets[v].iter().all(|f| incident.contains(f))
            })
    }
}

/// Demand of every face once the assigned free angles are added.
pub fn face_demands(g: &PlaneGraph, assignment: &AngleAssignment) -> Vec<i64> {
    let mut demand: Vec<i64> = g
        .faces()
        .iter()
        .map(|f| if f.is_external { -4 - f.degree() as i64 } else { 4 - f.degree() as i64 })
        .collect();
    for targets in &assignment.targets {
        for &f in targets {
            demand[f] += 1;
        }
    }
    demand
}

/// Region of every face when faces are glued across all edges outside
/// `kept`.
pub fn free_angle_regions(g: &PlaneGraph, kept: &[EdgeId]) -> Vec<usize> {
    let mut in_kept = vec![false; g.edge_count()];
    for &e in kept {
        in_kept[e] = true;
    }
    let mut dsu = Dsu::new(g.face_count());
    for e in 0..g.edge_count() {
        if !in_kept[e] {
            let (a, b) = g.edge_faces(e);
            dsu.union(a, b);
        }
    }
    (0..g.face_count()).map(|f| dsu.find(f)).collect()
}

/// A free-angle assignment under which every cycle of `kept` encloses faces
/// of total demand zero, if one exists.
pub fn balanced_assignment(g: &PlaneGraph, kept: &[EdgeId]) -> Option<AngleAssignment> {
    let region = free_angle_regions(g, kept);
    let ext = region[g.external_face()];
    let mut need: HashMap<usize, i64> = HashMap::new();
    for f in g.faces() {
        if region[f.id] != ext {
            *need.entry(region[f.id]).or_default() += f.degree() as i64 - 4;
        }
    }
    if need.values().any(|&x| x < 0) {
        return None;
    }
    let free: Vec<i64> = (0..g.vertex_count()).map(|v| 4 - g.degree(v) as i64).collect();
    let supply: i64 = free.iter().sum();
    let wanted: i64 = need.values().sum();
    if supply < wanted {
        return None;
    }
    // transportation: vertices -> regions they touch
    let mut net = FlowNetwork::new();
    let vertex_node: Vec<usize> = free.iter().map(|&x| net.add_node(-x)).collect();
    let mut region_node = HashMap::new();
    let mut regions: Vec<usize> = region.clone();
    regions.sort_unstable();
    regions.dedup();
    for &r in &regions {
        let demand = if r == ext { supply - wanted } else { need[&r] };
        region_node.insert(r, net.add_node(demand));
    }
    let mut arc_face = Vec::new();
    for v in 0..g.vertex_count() {
        if free[v] == 0 {
            continue;
        }
        let mut used = Vec::new();
        for &e in g.rotation(v) {
            let f = g.face_of_dart(g.out_dart(e, v));
            if used.contains(&region[f]) {
                continue;
            }
            used.push(region[f]);
            net.add_arc(vertex_node[v], region_node[&region[f]], 0, free[v], 0, ArcTag::Plain);
            arc_face.push((v, f));
        }
    }
    let flow = flow::solve_min_cost(&net).ok()??;
    let mut a = AngleAssignment::empty(g);
    for (&(v, f), &x) in arc_face.iter().zip(&flow.values) {
        a.targets[v].extend(std::iter::repeat_n(f, x as usize));
    }
    debug_assert!(a.is_valid(g) && region_sums_vanish(g, &region, ext, &a));
    Some(a)
}

fn region_sums_vanish(g: &PlaneGraph, region: &[usize], ext: usize, a: &AngleAssignment) -> bool {
    let demand = face_demands(g, a);
    let mut sums: HashMap<usize, i64> = HashMap::new();
    for f in 0..g.face_count() {
        if region[f] != ext {
            *sums.entry(region[f]).or_default() += demand[f];
        }
    }
    sums.values().all(|&s| s == 0)
}

/// Assignments for both colors certifying that a coloring is balanced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceWitness {
    pub assignments: [AngleAssignment; 2],
}

pub fn is_balanced(g: &PlaneGraph, coloring: &EdgeColoring2) -> Option<BalanceWitness> {
    let first = balanced_assignment(g, &coloring.class(1))?;
    let second = balanced_assignment(g, &coloring.class(2))?;
    Some(BalanceWitness { assignments: [first, second] })
}

/// First balanced coloring in lexicographic order (edge 0 gets color 1),
/// found by depth-first search that abandons a branch once a partial color
/// class is already unbalanced.
pub fn find_balanced_coloring(g: &PlaneGraph) -> Result<Option<(EdgeColoring2, BalanceWitness)>> {
    let m = g.edge_count();
    if m > UN_GUARD {
        return Err(Error::TooLarge(format!("{m} edges exceed the coloring guard of {UN_GUARD}")));
    }
    if m == 0 {
        return Ok(None);
    }
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut ok = |mask: u64| -> bool {
        *memo.entry(mask).or_insert_with(|| {
            let kept: Vec<EdgeId> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
            balanced_assignment(g, &kept).is_some()
        })
    };
    let mut choice = vec![0u8; m];
    if !search(0, [0, 0], &mut choice, &mut ok) {
        return Ok(None);
    }
    let coloring = EdgeColoring2::new(choice.iter().map(|&c| c + 1).collect()).unwrap();
    let witness = is_balanced(g, &coloring).expect("search only keeps balanced classes");
    Ok(Some((coloring, witness)))
}

fn search(e: usize, masks: [u64; 2], choice: &mut [u8], ok: &mut impl FnMut(u64) -> bool) -> bool {
    if e == choice.len() {
        return true;
    }
    let colors: &[usize] = if e == 0 { &[0] } else { &[0, 1] };
    for &c in colors {
        let mut next = masks;
        next[c] |= 1 << e;
        if ok(next[c]) {
            choice[e] = c as u8;
            if search(e + 1, next, choice, ok) {
                return true;
            }
        }
    }
    false
}

/// Which sufficient condition for needing three drawings holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Counterexample {
    /// `m = 2n - 1` and every inner face is a triangle.
    AllInnerTriangles,
    /// `m = 2n`, one inner face `f` is not a triangle, and `f` shares an edge
    /// with the external face or has degree at most 7.
    OneLargeInnerFace,
}

pub fn counterexample_conditions(g: &PlaneGraph) -> Option<Counterexample> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let ext = g.external_face();
    let non_triangles: Vec<FaceId> =
        g.faces().iter().filter(|f| !f.is_external && f.degree() != 3).map(|f| f.id).collect();
    if m + 1 == 2 * n && non_triangles.is_empty() {
        return Some(Counterexample::AllInnerTriangles);
    }
    if m == 2 * n && non_triangles.len() == 1 {
        let f = non_triangles[0];
        let touches = (0..m).any(|e| {
            let (a, b) = g.edge_faces(e);
            (a == f && b == ext) || (a == ext && b == f)
        });
        if touches || g.face(f).degree() <= 7 {
            return Some(Counterexample::OneLargeInnerFace);
        }
    }
    None
}

/// The unbent number of a small graph: 1 if one drawing can keep every edge
/// straight, 2 if a balanced coloring exists, 3 otherwise.
pub fn unbent_number_small(g: &PlaneGraph) -> Result<u8> {
    let all: Vec<EdgeId> = (0..g.edge_count()).collect();
    if ortho::straight_cost(g, &all).is_some() {
        return Ok(1);
    }
    if two_forest_partition(g).is_some() {
        return Ok(2);
    }
    if counterexample_conditions(g).is_some() {
        return Ok(3);
    }
    Ok(if find_balanced_coloring(g)?.is_some() { 2 } else { 3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    /// Simple cycles inside an edge class, as edge lists (small graphs only).
    fn cycles(g: &PlaneGraph, class: &[EdgeId]) -> Vec<Vec<EdgeId>> {
        let mut found = Vec::new();
        let k = class.len();
        for mask in 1u32..1 << k {
            let sub: Vec<EdgeId> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| class[i]).collect();
            let mut deg = vec![0; g.vertex_count()];
            for &e in &sub {
                let [u, v] = g.edge(e);
                deg[u] += 1;
                deg[v] += 1;
            }
            if deg.iter().any(|&d| d != 0 && d != 2) {
                continue;
            }
            // connected 2-regular
            let mut dsu = Dsu::new(g.vertex_count());
            let mut parts = deg.iter().filter(|&&d| d == 2).count();
            for &e in &sub {
                let [u, v] = g.edge(e);
                if dsu.union(u, v) {
                    parts -= 1;
                }
            }
            if parts == 1 {
                found.push(sub);
            }
        }
        found
    }

    /// Demand enclosed by a simple cycle: faces not glued to the external one.
    fn enclosed(g: &PlaneGraph, cycle: &[EdgeId], demand: &[i64]) -> i64 {
        let region = free_angle_regions(g, cycle);
        let ext = region[g.external_face()];
        (0..g.face_count()).filter(|&f| region[f] != ext).map(|f| demand[f]).sum()
    }

    #[test]
    fn demands_follow_degree() {
        let f = generators::flower(8).unwrap();
        let d = face_demands(&f, &AngleAssignment::empty(&f));
        for face in f.faces() {
            let want = if face.is_external { -4 - 8 } else if face.degree() == 3 { 1 } else { -4 };
            assert_eq!(d[face.id], want);
        }
    }

    #[test]
    fn witnesses_balance_every_cycle() {
        for (name, g) in generators::fixtures() {
            if g.edge_count() > 20 {
                continue;
            }
            if let Some((coloring, witness)) = find_balanced_coloring(&g).unwrap() {
                for (c, a) in [1u8, 2].iter().zip(&witness.assignments) {
                    assert!(a.is_valid(&g), "{name}");
                    let demand = face_demands(&g, a);
                    for cyc in cycles(&g, &coloring.class(*c)) {
                        assert_eq!(enclosed(&g, &cyc, &demand), 0, "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn forests_are_balanced() {
        let g = generators::k4();
        let [a, _] = two_forest_partition(&g).unwrap();
        let colors: Vec<u8> = (0..6).map(|e| if a.contains(&e) { 1 } else { 2 }).collect();
        assert!(is_balanced(&g, &EdgeColoring2::new(colors).unwrap()).is_some());
    }

    #[test]
    fn small_unbent_numbers() {
        assert_eq!(unbent_number_small(&generators::cycle(4).unwrap()).unwrap(), 1);
        assert_eq!(unbent_number_small(&generators::k4()).unwrap(), 2);
        assert_eq!(unbent_number_small(&generators::flower(3).unwrap()).unwrap(), 3);
        assert!(find_balanced_coloring(&generators::flower(3).unwrap()).unwrap().is_none());
    }

    #[test]
    fn counterexample_fixtures() {
        assert_eq!(counterexample_conditions(&generators::k5_minus_edge()), Some(Counterexample::AllInnerTriangles));
        assert_eq!(
            counterexample_conditions(&generators::flower(5).unwrap()),
            Some(Counterexample::OneLargeInnerFace)
        );
        assert_eq!(counterexample_conditions(&generators::flower(8).unwrap()), None);
        assert_eq!(counterexample_conditions(&generators::cycle(4).unwrap()), None);
    }
}
