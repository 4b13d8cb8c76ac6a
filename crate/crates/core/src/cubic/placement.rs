//! Dummy vertices for two copies of a cubic graph, and the drawings obtained
//! from the subdivided copies.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use super::{analyze, sharing_containers, CubicAnalysis};
use crate::collections::{CollectionDrawing, UnbentCollection};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, PlaneGraph};
use crate::oracle;
use crate::ortho::{self, OrthogonalRepresentation, Turn};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlacementMethod {
    Strategy,
    Search,
    LocalSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DummyPlacement {
    /// Per copy, the number of dummies on each edge.
    pub copies: [BTreeMap<EdgeId, usize>; 2],
    pub method: PlacementMethod,
}

impl DummyPlacement {
    pub fn empty(method: PlacementMethod) -> Self {
        DummyPlacement { copies: [BTreeMap::new(), BTreeMap::new()], method }
    }

    pub fn add(&mut self, copy: usize, e: EdgeId, count: usize) {
        *self.copies[copy].entry(e).or_insert(0) += count;
    }

    pub fn total(&self) -> usize {
        self.copies.iter().flat_map(|c| c.values()).sum()
    }

    /// Dummies of `copy` on the given edges.
    pub fn on(&self, copy: usize, edges: &[EdgeId]) -> usize {
        edges.iter().map(|e| self.copies[copy].get(e).copied().unwrap_or(0)).sum()
    }

    pub fn disjoint(&self) -> bool {
        self.copies[0].keys().all(|e| !self.copies[1].contains_key(e))
    }

    /// Lines `dummy <copy> <edge> <count>`, copies numbered from 1.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (c, copy) in self.copies.iter().enumerate() {
            for (e, k) in copy {
                writeln!(out, "dummy {} {e} {k}", c + 1).unwrap();
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<DummyPlacement> {
        let mut p = DummyPlacement::empty(PlacementMethod::Strategy);
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: &str| Error::Parse { line: i + 1, message: message.into() };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "dummy" {
                return Err(bad("expected `dummy <copy> <edge> <count>`"));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad("not a number"));
            let copy = num(parts[1])?;
            if !(1..=2).contains(&copy) {
                return Err(bad("copy must be 1 or 2"));
            }
            p.add(copy - 1, num(parts[2])?, num(parts[3])?);
        }
        Ok(p)
    }
}

/// A cycle with `legs` legs is bad in `copy` when it carries fewer than
/// `4 - legs` dummies there.
pub fn is_bad(cycle: &[EdgeId], legs: usize, p: &DummyPlacement, copy: usize) -> bool {
    p.on(copy, cycle) + legs < 4
}

/// Everything wrong with a placement: bad cycles in either copy and edges
/// dummied in both.
pub fn placement_problems(a: &CubicAnalysis, p: &DummyPlacement) -> Vec<String> {
    let mut problems = Vec::new();
    for copy in 0..2 {
        if is_bad(&a.external, 0, p, copy) {
            problems.push(format!("external cycle is bad in copy {}", copy + 1));
        }
        for (i, c) in a.cycles.iter().enumerate() {
            if is_bad(&c.edges, 3, p, copy) {
                problems.push(format!("cycle {i} is bad in copy {}", copy + 1));
            }
        }
    }
    if let Some(e) = p.copies[0].keys().find(|e| p.copies[1].contains_key(e)) {
        problems.push(format!("edge {e} has dummies in both copies"));
    }
    problems
}

/// Dummies for both copies with no bad cycle and no edge dummied twice.
///
/// Every placement is read off two min-cost flows: edges are split into the
/// copy where they stay straight, and each copy bends only edges kept
/// straight by the other. The split starts from the demanding-cycle
/// strategy and is improved by single-edge moves; when that misses `q` on a
/// small graph the split is searched exhaustively.
pub fn place_dummies(g: &PlaneGraph) -> Result<DummyPlacement> {
    let a = analyze(g)?;
    let q = a.q();
    let mut colors = strategy(&a).map_or_else(|| vec![None; g.edge_count()], |p| seed_colors(g, &p));
    fill_colors(g, &mut colors);
    let mut colors: Vec<u8> = colors.into_iter().map(|c| c.unwrap_or(0)).collect();
    improve(g, &mut colors);
    let p = placement_from_colors(g, &colors, PlacementMethod::Strategy);
    if let Some(p) = &p {
        if p.total() == q {
            return Ok(p.clone());
        }
    }
    if g.edge_count() <= oracle::TBN_LIMIT_2 {
        log::warn!("dummy strategy missed q = {q}; searching all splits");
        let best = oracle::exact_tbn(g, 2)?;
        let colors: Vec<u8> = best.assignment.iter().map(|&c| c as u8).collect();
        return placement_from_colors(g, &colors, PlacementMethod::Search)
            .ok_or_else(|| Error::PlacementFailed("the optimal split has no drawing".into()));
    }
    log::warn!("dummy strategy missed q = {q}; keeping the locally optimal split");
    p.map(|mut p| {
        p.method = PlacementMethod::LocalSearch;
        p
    })
    .ok_or_else(|| Error::PlacementFailed("no split of the edges is drawable".into()))
}

/// Copy in which each edge stays straight, from a placement: an edge with
/// dummies in one copy is straight in the other.
fn seed_colors(g: &PlaneGraph, p: &DummyPlacement) -> Vec<Option<u8>> {
    (0..g.edge_count())
        .map(|e| {
            if p.copies[0].contains_key(&e) {
                Some(1)
            } else if p.copies[1].contains_key(&e) {
                Some(0)
            } else {
                None
            }
        })
        .collect()
}

fn split_cost(g: &PlaneGraph, colors: &[u8]) -> Option<i64> {
    let mut total = 0;
    for c in 0..2u8 {
        let class: Vec<EdgeId> = (0..colors.len()).filter(|&e| colors[e] == c).collect();
        total += ortho::straight_cost(g, &class)?;
    }
    Some(total)
}

/// Gives every open edge the copy that keeps the cost lowest so far.
fn fill_colors(g: &PlaneGraph, colors: &mut [Option<u8>]) {
    for e in 0..colors.len() {
        if colors[e].is_some() {
            continue;
        }
        let cost = |c: u8, colors: &mut [Option<u8>]| {
            colors[e] = Some(c);
            let fixed: Vec<u8> = colors.iter().map(|x| x.unwrap_or(2)).collect();
            split_cost(g, &fixed).unwrap_or(i64::MAX)
        };
        let (c0, c1) = (cost(0, colors), cost(1, colors));
        colors[e] = Some(if c1 < c0 { 1 } else { 0 });
    }
}

/// Single-edge moves while they lower the total.
fn improve(g: &PlaneGraph, colors: &mut [u8]) {
    let mut current = split_cost(g, colors).unwrap_or(i64::MAX);
    loop {
        let mut moved = false;
        for e in 0..colors.len() {
            colors[e] ^= 1;
            match split_cost(g, colors) {
                Some(c) if c < current => {
                    current = c;
                    moved = true;
                }
                _ => colors[e] ^= 1,
            }
        }
        if !moved {
            return;
        }
    }
}

/// Dummies are the bends of the cheapest drawing of each copy keeping its
/// color class straight.
fn placement_from_colors(g: &PlaneGraph, colors: &[u8], method: PlacementMethod) -> Option<DummyPlacement> {
    let mut p = DummyPlacement::empty(method);
    for c in 0..2u8 {
        let class: Vec<EdgeId> = (0..colors.len()).filter(|&e| colors[e] == c).collect();
        let rep = ortho::representation_with_straight(g, &class)?;
        for e in 0..g.edge_count() {
            if !rep.is_straight(e) {
                p.add(c as usize, e, rep.edge_bends(e));
            }
        }
    }
    Some(p)
}

fn strategy(a: &CubicAnalysis) -> Option<DummyPlacement> {
    let ext: HashSet<EdgeId> = a.external.iter().copied().collect();
    let ext_first = |edges: &mut Vec<EdgeId>| edges.sort_by_key(|e| !ext.contains(e));
    let mut fixed = DummyPlacement::empty(PlacementMethod::Strategy);
    let mut open: Vec<Vec<(EdgeId, EdgeId)>> = Vec::new();
    for &i in &a.d {
        let c = &a.cycles[i];
        let paths: Vec<&Vec<EdgeId>> = c.interesting.iter().map(|&p| &c.contour_paths[p]).collect();
        if c.expensive {
            let e1 = paths[0][0];
            let mut rest: Vec<EdgeId> = c.edges.iter().copied().filter(|&e| e != e1).collect();
            ext_first(&mut rest);
            let containers = sharing_containers(&a.cycles, i);
            let leg = c.legs.iter().copied().find(|&l| containers.iter().all(|&j| a.cycles[j].has_edge(l)))?;
            fixed.add(0, e1, 1);
            fixed.add(1, rest[0], 1);
            fixed.add(1, leg, 1);
        } else if let Some(p) = paths.iter().find(|p| p.len() >= 2) {
            let mut es = p.to_vec();
            ext_first(&mut es);
            fixed.add(0, es[0], 1);
            fixed.add(1, es[1], 1);
        } else {
            // every interesting path is a single edge: try them in pairs
            let singles: Vec<EdgeId> = paths.iter().map(|p| p[0]).collect();
            let mut pairs = Vec::new();
            for &x in &singles {
                for &y in c.edges.iter().filter(|&&y| y != x) {
                    pairs.push((x, y));
                }
            }
            pairs.sort_by_key(|&(x, y)| (!singles.contains(&y), !ext.contains(&x) as u8 + !ext.contains(&y) as u8));
            open.push(pairs);
        }
    }
    let mut pick = vec![0usize; open.len()];
    for _ in 0..10_000 {
        let mut p = fixed.clone();
        for (k, pairs) in open.iter().enumerate() {
            let (x, y) = *pairs.get(pick[k])?;
            p.add(0, x, 1);
            p.add(1, y, 1);
        }
        if top_up(&mut p, &a.external) && p.disjoint() && placement_problems(a, &p).is_empty() {
            return Some(p);
        }
        let mut k = 0;
        while k < open.len() && pick[k] + 1 >= open[k].len() {
            pick[k] = 0;
            k += 1;
        }
        if k == open.len() {
            return None;
        }
        pick[k] += 1;
    }
    None
}

/// Brings the external cycle of each copy up to four dummies, stacking them
/// on an external edge the copy already uses or else on a free one.
fn top_up(p: &mut DummyPlacement, external: &[EdgeId]) -> bool {
    for copy in 0..2 {
        let have = p.on(copy, external);
        if have >= 4 {
            continue;
        }
        let other = 1 - copy;
        let target = external
            .iter()
            .copied()
            .find(|e| p.copies[copy].contains_key(e))
            .or_else(|| external.iter().copied().find(|e| !p.copies[other].contains_key(e)));
        match target {
            Some(e) => p.add(copy, e, 4 - have),
            None => return false,
        }
    }
    true
}

/// Replaces every edge with `counts[e]` dummies by a path. Edge `e` keeps its
/// id as the first piece; the returned lists give each edge's pieces from
/// its first endpoint to its second.
pub fn subdivide(g: &PlaneGraph, counts: &BTreeMap<EdgeId, usize>) -> Result<(PlaneGraph, Vec<Vec<EdgeId>>)> {
    let mut edges = g.edges().to_vec();
    let mut rotation = g.rotations().to_vec();
    let mut n = g.vertex_count();
    let mut pieces: Vec<Vec<EdgeId>> = (0..g.edge_count()).map(|e| vec![e]).collect();
    for (&e, &k) in counts.iter().filter(|(_, &k)| k > 0) {
        let [u, v] = g.edge(e);
        let mut prev = u;
        for i in 0..=k {
            let next = if i == k { v } else { n + i };
            let id = if i == 0 { e } else { edges.len() };
            if i == 0 {
                edges[e] = [u, next];
            } else {
                edges.push([prev, next]);
                pieces[e].push(id);
            }
            if next != v {
                rotation.push(Vec::new());
                rotation[next].push(id);
            }
            if prev != u {
                rotation[prev].push(id);
            }
            prev = next;
        }
        let last = *pieces[e].last().unwrap();
        for x in rotation[v].iter_mut().filter(|x| **x == e) {
            *x = last;
        }
        n += k;
    }
    let sub = PlaneGraph::new(n, edges, rotation, g.external_side())?;
    Ok((sub, pieces))
}

/// Whether the copy of `g` with these dummies has a drawing without bends.
pub fn zero_bend_feasible(g: &PlaneGraph, counts: &BTreeMap<EdgeId, usize>) -> Result<bool> {
    let (sub, _) = subdivide(g, counts)?;
    let all: Vec<EdgeId> = (0..sub.edge_count()).collect();
    Ok(ortho::straight_cost(&sub, &all).is_some())
}

/// Representation of `g` read off a bend-free representation of a
/// subdivided copy: dummies with a right angle on the left become left turns.
fn lift(g: &PlaneGraph, sub_rep: &OrthogonalRepresentation, pieces: &[Vec<EdgeId>]) -> OrthogonalRepresentation {
    let m = g.edge_count();
    let mut angles = vec![0u8; 2 * m];
    let mut bends = vec![Vec::new(); m];
    for e in 0..m {
        let path = &pieces[e];
        angles[2 * e + 1] = sub_rep.angles[2 * e + 1];
        angles[2 * e] = sub_rep.angles[2 * path[path.len() - 1]];
        // each piece after the first starts where the previous one ended
        for &piece in &path[..path.len() - 1] {
            match sub_rep.angles[2 * piece] {
                1 => bends[e].push(Turn::L),
                3 => bends[e].push(Turn::R),
                _ => {}
            }
        }
    }
    OrthogonalRepresentation { angles, bends }
}

/// Draws both copies without bends and lifts the drawings back to `g`.
pub fn draw_placement(g: &PlaneGraph, p: &DummyPlacement) -> Result<UnbentCollection> {
    let mut drawings = Vec::new();
    for copy in &p.copies {
        let (sub, pieces) = subdivide(g, copy)?;
        let all: Vec<EdgeId> = (0..sub.edge_count()).collect();
        let sub_rep = ortho::representation_with_straight(&sub, &all)
            .ok_or_else(|| Error::PlacementFailed("a subdivided copy has no bend-free drawing".into()))?;
        let rep = lift(g, &sub_rep, &pieces);
        rep.validate(g).map_err(Error::PlacementFailed)?;
        let straight: Vec<EdgeId> = (0..g.edge_count()).filter(|e| !copy.contains_key(e)).collect();
        drawings.push(CollectionDrawing::new(g, rep, straight));
    }
    let coverage = (0..g.edge_count()).map(|e| if p.copies[0].contains_key(&e) { 1 } else { 0 }).collect();
    Ok(UnbentCollection { drawings, coverage })
}

pub fn cubic_collection(g: &PlaneGraph) -> Result<UnbentCollection> {
    draw_placement(g, &place_dummies(g)?)
}
