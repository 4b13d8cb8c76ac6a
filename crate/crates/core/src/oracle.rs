//! Exhaustive ground truth for small instances.
//!
//! `exact_un` and `exact_tbn` search over assignments of edges to drawings;
//! a class is feasible when the drawing network with its bend arcs removed
//! still has a flow. Both feasibility and cost only grow as a class grows, so
//! partial classes prune the search. Classes are opened in order, which
//! removes relabelings of the same partition.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::collections::UnbentCollection;
use crate::cubic;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, PlaneGraph};
use crate::ortho;

/// Edge-count guard for `exact_un`.
pub const UN_LIMIT: usize = 26;
/// Edge-count guard for `exact_tbn` with three drawings.
pub const TBN_LIMIT_3: usize = 14;
/// Edge-count guard for `exact_tbn` with two drawings.
pub const TBN_LIMIT_2: usize = 20;

#[derive(Debug, Clone)]
pub struct OracleResult<T> {
    pub value: T,
    /// Drawing index of every edge in the optimal assignment.
    pub assignment: Vec<usize>,
    pub collection: Option<UnbentCollection>,
    /// Search-tree nodes visited.
    pub search_space: u64,
    pub elapsed: Duration,
}

/// Memoized minimum cost of keeping an edge set straight.
struct StraightCosts<'a> {
    g: &'a PlaneGraph,
    memo: HashMap<u64, Option<i64>>,
}

impl<'a> StraightCosts<'a> {
    fn new(g: &'a PlaneGraph) -> Self {
        StraightCosts { g, memo: HashMap::new() }
    }

    fn cost(&mut self, mask: u64) -> Option<i64> {
        let g = self.g;
        *self.memo.entry(mask).or_insert_with(|| {
            let set: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| mask >> e & 1 == 1).collect();
            ortho::straight_cost(g, &set)
        })
    }
}

fn classes_of(assignment: &[usize]) -> Vec<Vec<EdgeId>> {
    let k = assignment.iter().max().map_or(0, |&c| c + 1);
    (0..k).map(|c| (0..assignment.len()).filter(|&e| assignment[e] == c).collect()).collect()
}

fn witness(g: &PlaneGraph, assignment: &[usize]) -> UnbentCollection {
    UnbentCollection::from_classes(g, &classes_of(assignment)).expect("oracle classes are feasible")
}

/// Smallest number of drawings, up to `k_max`, in which every edge is
/// straight somewhere; `None` if `k_max` drawings do not suffice.
pub fn exact_un(g: &PlaneGraph, k_max: usize) -> Result<OracleResult<Option<usize>>> {
    let m = g.edge_count();
    if m > UN_LIMIT {
        return Err(Error::TooLarge(format!("{m} edges exceed the oracle guard of {UN_LIMIT}")));
    }
    let start = Instant::now();
    let mut costs = StraightCosts::new(g);
    let mut nodes = 0u64;
    for k in 1..=k_max.max(1) {
        let mut assignment = vec![0usize; m];
        let mut masks = vec![0u64; k];
        if partition(0, 0, &mut masks, &mut assignment, &mut costs, &mut nodes) {
            return Ok(OracleResult {
                value: Some(k),
                collection: Some(witness(g, &assignment)),
                assignment,
                search_space: nodes,
                elapsed: start.elapsed(),
            });
        }
    }
    Ok(OracleResult { value: None, assignment: Vec::new(), collection: None, search_space: nodes, elapsed: start.elapsed() })
}

fn partition(
    e: usize,
    used: usize,
    masks: &mut [u64],
    assignment: &mut [usize],
    costs: &mut StraightCosts,
    nodes: &mut u64,
) -> bool {
    *nodes += 1;
    if e == assignment.len() {
        return true;
    }
    for c in 0..(used + 1).min(masks.len()) {
        masks[c] |= 1 << e;
        if costs.cost(masks[c]).is_some() {
            assignment[e] = c;
            if partition(e + 1, used.max(c + 1), masks, assignment, costs, nodes) {
                return true;
            }
        }
        masks[c] &= !(1 << e);
    }
    false
}

/// Minimum total bends over collections of at most `k_max` drawings.
pub fn exact_tbn(g: &PlaneGraph, k_max: usize) -> Result<OracleResult<usize>> {
    let m = g.edge_count();
    let limit = if k_max <= 2 { TBN_LIMIT_2 } else { TBN_LIMIT_3 };
    if m > limit {
        return Err(Error::TooLarge(format!("{m} edges exceed the oracle guard of {limit} for {k_max} drawings")));
    }
    let start = Instant::now();
    let mut search = TbnSearch {
        costs: StraightCosts::new(g),
        masks: vec![0; k_max.max(1)],
        assignment: vec![0; m],
        best: i64::MAX,
        best_assignment: Vec::new(),
        nodes: 0,
    };
    search.run(0, 0);
    let value = search.best as usize;
    let assignment = search.best_assignment;
    Ok(OracleResult {
        value,
        collection: Some(witness(g, &assignment)),
        assignment,
        search_space: search.nodes,
        elapsed: start.elapsed(),
    })
}

struct TbnSearch<'a> {
    costs: StraightCosts<'a>,
    masks: Vec<u64>,
    assignment: Vec<usize>,
    best: i64,
    best_assignment: Vec<usize>,
    nodes: u64,
}

impl TbnSearch<'_> {
    fn bound(&mut self, used: usize) -> Option<i64> {
        let mut total = 0;
        for c in 0..used {
            total += self.costs.cost(self.masks[c])?;
        }
        Some(total)
    }

    fn run(&mut self, e: usize, used: usize) {
        self.nodes += 1;
        if e == self.assignment.len() {
            let total = self.bound(used).unwrap_or(i64::MAX);
            if total < self.best {
                self.best = total;
                self.best_assignment = self.assignment.clone();
            }
            return;
        }
        for c in 0..(used + 1).min(self.masks.len()) {
            self.masks[c] |= 1 << e;
            let used_now = used.max(c + 1);
            if let Some(bound) = self.bound(used_now) {
                if bound < self.best {
                    self.assignment[e] = c;
                    self.run(e + 1, used_now);
                }
            }
            self.masks[c] &= !(1 << e);
        }
    }
}

/// Minimum bends of a single drawing by enumerating representations
/// directly: every angle split at every vertex and every net bend count in
/// `-bound..=bound` per edge. Independent of the flow network.
pub fn exhaustive_min_bends(g: &PlaneGraph, bound: i64) -> Option<usize> {
    let m = g.edge_count();
    // per vertex, the incoming darts whose corners sit at it
    let mut corners: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for d in 0..2 * m {
        corners[g.head(d)].push(d);
    }
    let mut angle_choices: Vec<Vec<Vec<u8>>> = Vec::new();
    for cs in &corners {
        let mut options = Vec::new();
        let k = cs.len() as u32;
        for code in 0..4u32.pow(k) {
            let split: Vec<u8> = (0..k).map(|i| (code / 4u32.pow(i) % 4 + 1) as u8).collect();
            if split.iter().map(|&a| a as u32).sum::<u32>() == 4 {
                options.push(split);
            }
        }
        angle_choices.push(options);
    }
    let mut angles = vec![0u8; 2 * m];
    let mut best: Option<usize> = None;
    let mut pick = vec![0usize; g.vertex_count()];
    loop {
        for (v, cs) in corners.iter().enumerate() {
            for (i, &d) in cs.iter().enumerate() {
                angles[d] = angle_choices[v][pick[v]][i];
            }
        }
        let base: Vec<i64> = g
            .faces()
            .iter()
            .map(|f| {
                let target = if f.is_external { -4 } else { 4 };
                target - f.boundary.iter().map(|&d| 2 - angles[d] as i64).sum::<i64>()
            })
            .collect();
        // bends must make up `base` in every face
        let mut bends = vec![-bound; m];
        loop {
            let mut ok = true;
            for f in g.faces() {
                let got: i64 = f.boundary.iter().map(|&d| if d % 2 == 0 { bends[d / 2] } else { -bends[d / 2] }).sum();
                if got != base[f.id] {
                    ok = false;
                    break;
                }
            }
            if ok {
                let total = bends.iter().map(|b| b.unsigned_abs() as usize).sum();
                best = Some(best.map_or(total, |b: usize| b.min(total)));
            }
            let mut i = 0;
            while i < m && bends[i] == bound {
                bends[i] = -bound;
                i += 1;
            }
            if i == m {
                break;
            }
            bends[i] += 1;
        }
        let mut v = 0;
        while v < pick.len() && pick[v] + 1 >= angle_choices[v].len().max(1) {
            pick[v] = 0;
            v += 1;
        }
        if v == pick.len() {
            break;
        }
        pick[v] += 1;
    }
    best
}

/// Fewest edges that must carry a dummy so that every three-legged cycle of a
/// triconnected cubic graph holds one.
pub fn min_dummy_hitting(g: &PlaneGraph) -> Result<usize> {
    let cycles = cubic::three_legged_cycles(g)?;
    let m = g.edge_count();
    if m > 60 {
        return Err(Error::TooLarge(format!("{m} edges exceed the hitting-set guard of 60")));
    }
    let sets: Vec<u64> = cycles.iter().map(|c| c.edges.iter().fold(0u64, |acc, &e| acc | 1 << e)).collect();
    for size in 0..=m {
        if hits(&sets, 0, size) {
            return Ok(size);
        }
    }
    Ok(m)
}

fn hits(sets: &[u64], chosen: u64, left: usize) -> bool {
    let Some(&open) = sets.iter().find(|&&s| s & chosen == 0) else {
        return true;
    };
    if left == 0 {
        return false;
    }
    // branch on the edges of the first unhit cycle
    (0..64).filter(|&e| open >> e & 1 == 1).any(|e| hits(sets, chosen | 1 << e, left - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn single_drawing_bends() {
        assert_eq!(exhaustive_min_bends(&generators::cycle(4).unwrap(), 2), Some(0));
        assert_eq!(exhaustive_min_bends(&generators::cycle(3).unwrap(), 2), Some(1));
        assert_eq!(exhaustive_min_bends(&generators::k4(), 2), Some(4));
    }

    #[test]
    fn small_values() {
        let c4 = generators::cycle(4).unwrap();
        assert_eq!(exact_un(&c4, 3).unwrap().value, Some(1));
        assert_eq!(exact_tbn(&c4, 3).unwrap().value, 0);
        let k4 = generators::k4();
        let un = exact_un(&k4, 3).unwrap();
        assert_eq!(un.value, Some(2));
        un.collection.unwrap().verify(&k4).unwrap();
        let tbn = exact_tbn(&k4, 3).unwrap();
        assert_eq!(tbn.value, 12);
        let c = tbn.collection.unwrap();
        c.verify(&k4).unwrap();
        assert_eq!(c.total_bends(), 12);
    }
}
