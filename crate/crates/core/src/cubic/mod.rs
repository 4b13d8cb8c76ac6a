//! Plane triconnected cubic graphs: three-legged cycles, the demanding cycles
//! among them, and the bend count `q` of an optimal two-drawing collection.

mod placement;

use std::collections::HashSet;

pub use placement::{
    cubic_collection, draw_placement, is_bad, place_dummies, placement_problems, subdivide, zero_bend_feasible,
    DummyPlacement, PlacementMethod,
};

use crate::collections::small_cut_edges;
use crate::error::{Error, Result};
use crate::graph::{Dsu, EdgeId, FaceId, PlaneGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleInfo {
    /// Edges in walk order.
    pub edges: Vec<EdgeId>,
    /// `vertices[i]` is where `edges[i]` starts.
    pub vertices: Vec<VertexId>,
    /// Vertices of the cycle together with its interior, sorted.
    pub region: Vec<VertexId>,
    pub legs: Vec<EdgeId>,
    /// Paths between consecutive leg attachments, in walk order.
    pub contour_paths: Vec<Vec<EdgeId>>,
    pub leg_faces: Vec<FaceId>,
    pub demanding: bool,
    pub expensive: bool,
    pub short: bool,
    /// Indices into `contour_paths`.
    pub interesting: Vec<usize>,
}

impl CycleInfo {
    pub fn leg_count(&self) -> usize {
        self.legs.len()
    }

    /// `other` lies on or inside `self`.
    pub fn contains(&self, other: &CycleInfo) -> bool {
        other.vertices.iter().all(|v| self.region.binary_search(v).is_ok())
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn shares_edge(&self, other: &CycleInfo) -> bool {
        self.edges.iter().any(|&e| other.has_edge(e))
    }
}

/// Three-legged cycles with their classification and the sets entering `q`.
#[derive(Debug, Clone)]
pub struct CubicAnalysis {
    pub cycles: Vec<CycleInfo>,
    /// Edges of the external cycle.
    pub external: Vec<EdgeId>,
    /// Largest vertex-disjoint family of demanding cycles (indices).
    pub d: Vec<usize>,
    pub d_exp: Vec<usize>,
    pub d_ext: Vec<usize>,
    pub d_short: Vec<usize>,
}

impl CubicAnalysis {
    pub fn demanding(&self) -> Vec<usize> {
        (0..self.cycles.len()).filter(|&i| self.cycles[i].demanding).collect()
    }

    pub fn q(&self) -> usize {
        q_formula(self.d.len(), self.d_exp.len(), self.d_ext.len(), self.d_short.len())
    }

    /// Key-value lines with the set sizes and `q`.
    pub fn accounting(&self) -> String {
        format!(
            "three_legged {}\ndemanding {}\nD {}\nD_exp {}\nD_ext {}\nD_short {}\nq {}\n",
            self.cycles.len(),
            self.demanding().len(),
            self.d.len(),
            self.d_exp.len(),
            self.d_ext.len(),
            self.d_short.len(),
            self.q()
        )
    }
}

pub fn q_formula(d: usize, d_exp: usize, d_ext: usize, d_short: usize) -> usize {
    let credit = (2 * d_ext).saturating_sub(d_short).min(8);
    2 * d + d_exp + 8 - credit
}

pub fn check_cubic_triconnected(g: &PlaneGraph) -> Result<()> {
    if g.vertex_count() < 4 || (0..g.vertex_count()).any(|v| g.degree(v) != 3) {
        return Err(Error::NotCubic);
    }
    if small_cut_edges(g).into_iter().any(|c| c) {
        return Err(Error::NotTriconnected);
    }
    Ok(())
}

pub fn external_cycle(g: &PlaneGraph) -> Vec<EdgeId> {
    g.face(g.external_face()).boundary.iter().map(|&d| d / 2).collect()
}

/// All three-legged cycles, unclassified, from the 3-edge cuts of `g`.
pub fn three_legged_cycles(g: &PlaneGraph) -> Result<Vec<CycleInfo>> {
    check_cubic_triconnected(g)?;
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut seen = HashSet::new();
    let mut found = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let cut = [a, b, c];
                let mut dsu = Dsu::new(n);
                for (e, &[u, v]) in g.edges().iter().enumerate() {
                    if !cut.contains(&e) {
                        dsu.union(u, v);
                    }
                }
                let root = dsu.find(g.edge(a)[0]);
                let side: Vec<bool> = (0..n).map(|v| dsu.find(v) == root).collect();
                if cut.iter().any(|&e| side[g.edge(e)[0]] == side[g.edge(e)[1]]) {
                    continue;
                }
                let others: HashSet<usize> = (0..n).filter(|&v| !side[v]).map(|v| dsu.find(v)).collect();
                if others.len() != 1 {
                    continue;
                }
                let flipped: Vec<bool> = side.iter().map(|s| !s).collect();
                for inside in [side, flipped] {
                    if let Some(cycle) = boundary_cycle(g, &inside, cut) {
                        let mut key = cycle.edges.clone();
                        key.sort_unstable();
                        if seen.insert(key) {
                            found.push(cycle);
                        }
                    }
                }
            }
        }
    }
    found.sort_by(|x, y| x.region.len().cmp(&y.region.len()).then_with(|| x.edges.cmp(&y.edges)));
    Ok(found)
}

/// The cycle bounding the side `inside` of the cut `legs`, when the other
/// side lies outside it together with the external face.
fn boundary_cycle(g: &PlaneGraph, inside: &[bool], legs: [EdgeId; 3]) -> Option<CycleInfo> {
    let mut ends: Vec<VertexId> = legs.iter().flat_map(|&e| g.edge(e)).collect();
    ends.sort_unstable();
    ends.dedup();
    if ends.len() != 6 {
        return None;
    }
    let internal = |e: EdgeId| {
        let [u, v] = g.edge(e);
        inside[u] && inside[v]
    };
    let mut outer = vec![false; g.face_count()];
    for e in (0..g.edge_count()).filter(|&e| !internal(e)) {
        let (l, r) = g.edge_faces(e);
        outer[l] = true;
        outer[r] = true;
    }
    if !outer[g.external_face()] {
        return None;
    }
    let on_cycle: Vec<bool> = (0..g.edge_count())
        .map(|e| {
            let (l, r) = g.edge_faces(e);
            internal(e) && (outer[l] || outer[r])
        })
        .collect();
    let count = on_cycle.iter().filter(|&&c| c).count();
    let attach: Vec<VertexId> = legs.iter().map(|&e| if inside[g.edge(e)[0]] { g.edge(e)[0] } else { g.edge(e)[1] }).collect();
    let mut edges = Vec::new();
    let mut vertices = Vec::new();
    let (start, mut cur, mut prev) = (attach[0], attach[0], usize::MAX);
    loop {
        let step: Vec<EdgeId> = g.rotation(cur).iter().copied().filter(|&e| on_cycle[e]).collect();
        if step.len() != 2 {
            return None;
        }
        let e = if step[0] == prev { step[1] } else if prev == usize::MAX { step[0].min(step[1]) } else { step[0] };
        vertices.push(cur);
        edges.push(e);
        prev = e;
        cur = g.other_endpoint(e, cur);
        if cur == start || edges.len() > count {
            break;
        }
    }
    if cur != start || edges.len() != count {
        return None;
    }
    let split: Vec<usize> = (0..vertices.len()).filter(|&i| attach.contains(&vertices[i])).collect();
    if split.len() != 3 {
        return None;
    }
    let contour_paths = (0..3)
        .map(|k| {
            let (from, to) = (split[k], if k == 2 { split[0] + edges.len() } else { split[k + 1] });
            (from..to).map(|i| edges[i % edges.len()]).collect()
        })
        .collect();
    let leg_faces = (0..g.face_count())
        .filter(|&f| legs.iter().filter(|&&e| g.edge_faces(e).0 == f || g.edge_faces(e).1 == f).count() >= 2)
        .collect();
    Some(CycleInfo {
        edges,
        vertices,
        region: (0..inside.len()).filter(|&v| inside[v]).collect(),
        legs: legs.to_vec(),
        contour_paths,
        leg_faces,
        demanding: false,
        expensive: false,
        short: false,
        interesting: Vec::new(),
    })
}

/// Marks demanding cycles, innermost first: a cycle is demanding unless a
/// demanding cycle inside it shares one of its edges.
fn mark_demanding(cycles: &mut [CycleInfo]) {
    let mut order: Vec<usize> = (0..cycles.len()).collect();
    order.sort_by_key(|&i| cycles[i].region.len());
    for (k, &i) in order.iter().enumerate() {
        let covered = order[..k]
            .iter()
            .any(|&j| cycles[j].demanding && cycles[i].contains(&cycles[j]) && cycles[i].shares_edge(&cycles[j]));
        cycles[i].demanding = !covered;
    }
}

/// Non-demanding cycles strictly containing `cycles[i]` and sharing an edge
/// with it.
pub fn sharing_containers(cycles: &[CycleInfo], i: usize) -> Vec<usize> {
    (0..cycles.len())
        .filter(|&j| j != i && !cycles[j].demanding && cycles[j].contains(&cycles[i]) && cycles[j].shares_edge(&cycles[i]))
        .collect()
}

fn classify(cycles: &mut [CycleInfo], external: &[EdgeId]) {
    for i in 0..cycles.len() {
        if !cycles[i].demanding {
            continue;
        }
        let containers = sharing_containers(cycles, i);
        let c = &cycles[i];
        let interesting: Vec<usize> = (0..c.contour_paths.len())
            .filter(|&p| containers.iter().all(|&j| c.contour_paths[p].iter().all(|&e| cycles[j].has_edge(e))))
            .collect();
        let expensive = interesting.len() == 1 && c.contour_paths[interesting[0]].len() == 1 && {
            let e = c.contour_paths[interesting[0]][0];
            containers.iter().any(|&j| {
                cycles[j].has_edge(e)
                    && !(0..cycles.len()).any(|k| {
                        k != i && cycles[k].demanding && cycles[j].contains(&cycles[k]) && cycles[j].shares_edge(&cycles[k])
                    })
            })
        };
        let on_ext: Vec<EdgeId> = c.edges.iter().copied().filter(|e| external.contains(e)).collect();
        let short = on_ext.len() == 1
            && interesting.len() >= 2
            && interesting.iter().any(|&p| c.contour_paths[p] == on_ext);
        let c = &mut cycles[i];
        c.interesting = interesting;
        c.expensive = expensive;
        c.short = short;
    }
}

/// Three-legged cycles, demanding flags, classification and the sets `D`,
/// `D_exp`, `D_ext`, `D_short`.
pub fn analyze(g: &PlaneGraph) -> Result<CubicAnalysis> {
    let mut cycles = three_legged_cycles(g)?;
    let external = external_cycle(g);
    mark_demanding(&mut cycles);
    classify(&mut cycles, &external);
    let demanding: Vec<usize> = (0..cycles.len()).filter(|&i| cycles[i].demanding).collect();
    let f_ext = g.external_face();
    let sets = |d: &[usize]| {
        let pick = |p: &dyn Fn(&CycleInfo) -> bool| d.iter().copied().filter(|&i| p(&cycles[i])).collect::<Vec<_>>();
        (pick(&|c| c.expensive), pick(&|c| c.leg_faces.contains(&f_ext)), pick(&|c| c.short))
    };
    // among the largest disjoint families, the one with the smallest q
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    let mut chosen = Vec::new();
    disjoint_families(&cycles, &demanding, 0, &mut chosen, &mut |family| {
        let (e, x, s) = sets(family);
        let q = q_formula(family.len(), e.len(), x.len(), s.len());
        let better = match &best {
            None => true,
            Some((size, bq, _)) => family.len() > *size || (family.len() == *size && q < *bq),
        };
        if better {
            best = Some((family.len(), q, family.to_vec()));
        }
    });
    let d = best.map(|b| b.2).unwrap_or_default();
    let (d_exp, d_ext, d_short) = sets(&d);
    Ok(CubicAnalysis { cycles, external, d, d_exp, d_ext, d_short })
}

fn disjoint_families(
    cycles: &[CycleInfo],
    pool: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    visit(chosen);
    for k in from..pool.len() {
        let c = &cycles[pool[k]];
        if chosen.iter().all(|&j| cycles[j].vertices.iter().all(|v| !c.vertices.contains(v))) {
            chosen.push(pool[k]);
            disjoint_families(cycles, pool, k + 1, chosen, visit);
            chosen.pop();
        }
    }
}

pub fn demanding_cycles(g: &PlaneGraph) -> Result<Vec<CycleInfo>> {
    Ok(analyze(g)?.cycles.into_iter().filter(|c| c.demanding).collect())
}

pub fn q_lower_bound(g: &PlaneGraph) -> Result<usize> {
    Ok(analyze(g)?.q())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn input_checks() {
        assert!(matches!(three_legged_cycles(&generators::cycle(4).unwrap()), Err(Error::NotCubic)));
        assert!(three_legged_cycles(&generators::k4()).unwrap().is_empty());
    }

    #[test]
    fn cube_and_prism() {
        let cube = generators::cube();
        assert!(three_legged_cycles(&cube).unwrap().is_empty());
        assert_eq!(q_lower_bound(&cube).unwrap(), 8);
        let prism = generators::prism();
        let a = analyze(&prism).unwrap();
        // the outer triangle bounds the external face, so only the inner one has legs outside
        assert_eq!(a.cycles.len(), 1);
        let c = &a.cycles[0];
        assert_eq!(c.legs, vec![6, 7, 8]);
        assert_eq!(c.contour_paths.len(), 3);
        assert!(c.demanding);
        assert_eq!(a.d, vec![0]);
        assert_eq!(a.q(), 10);
    }

    #[test]
    fn q_formula_values() {
        assert_eq!(q_formula(4, 2, 3, 1), 13);
        assert_eq!(q_formula(0, 0, 0, 0), 8);
        assert_eq!(q_formula(5, 0, 5, 0), 10);
    }

    #[test]
    fn contour_paths_partition_the_cycle() {
        for seed in 0..10 {
            let g = generators::random_triconnected_cubic(seed, 8).unwrap();
            for c in three_legged_cycles(&g).unwrap() {
                let mut all: Vec<EdgeId> = c.contour_paths.concat();
                all.sort_unstable();
                let mut edges = c.edges.clone();
                edges.sort_unstable();
                assert_eq!(all, edges);
                assert_eq!(c.leg_count(), 3);
            }
        }
    }
}
