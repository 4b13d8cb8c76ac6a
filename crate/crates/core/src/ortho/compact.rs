//! Grid compaction: subdivide bends, refine every face into a rectangle,
//! then place each axis independently by longest-path layering.

use std::collections::VecDeque;

use super::{Drawing, OrthogonalRepresentation, Turn};
use crate::graph::{Dsu, PlaneGraph};

const E: usize = 0;

fn rot(d: usize, k: usize) -> usize {
    (d + k) % 4
}

/// Vertices with one optional neighbor per compass direction
/// (0 = east, 1 = north, 2 = west, 3 = south).
struct Grid {
    slots: Vec<[Option<usize>; 4]>,
}

impl Grid {
    fn add_vertex(&mut self) -> usize {
        self.slots.push([None; 4]);
        self.slots.len() - 1
    }

    fn link(&mut self, a: usize, dir: usize, b: usize) {
        assert!(self.slots[a][dir].is_none(), "slot {dir} of {a} already taken");
        assert!(self.slots[b][rot(dir, 2)].is_none(), "slot {} of {b} already taken", rot(dir, 2));
        self.slots[a][dir] = Some(b);
        self.slots[b][rot(dir, 2)] = Some(a);
    }

    /// Next dart on the face to the left of `(v, dir)`.
    fn next(&self, (v, dir): (usize, usize)) -> (usize, usize) {
        let w = self.slots[v][dir].unwrap();
        for k in [1, 0, 3, 2] {
            let out = rot(dir, k);
            if self.slots[w][out].is_some() {
                return (w, out);
            }
        }
        unreachable!()
    }

    fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen = vec![[false; 4]; self.slots.len()];
        let mut faces = Vec::new();
        for v in 0..self.slots.len() {
            for dir in 0..4 {
                if self.slots[v][dir].is_none() || seen[v][dir] {
                    continue;
                }
                let mut walk = Vec::new();
                let mut dart = (v, dir);
                while !seen[dart.0][dart.1] {
                    seen[dart.0][dart.1] = true;
                    walk.push(dart);
                    dart = self.next(dart);
                }
                faces.push(walk);
            }
        }
        faces
    }
}

/// Turn at the end of `walk[i]`: +1 left, 0 straight, -1 right, -2 U-turn.
fn turn(walk: &[(usize, usize)], i: usize) -> i32 {
    let a = walk[i].1;
    let b = walk[(i + 1) % walk.len()].1;
    match (b + 4 - a) % 4 {
        0 => 0,
        1 => 1,
        3 => -1,
        _ => -2,
    }
}

/// Direction in which each dart leaves its tail.
fn dart_directions(g: &PlaneGraph, rep: &OrthogonalRepresentation) -> Vec<usize> {
    let m = g.edge_count();
    let mut dir = vec![usize::MAX; 2 * m];
    let net_turn = |d: usize| -> usize {
        let s: i64 = rep.bend_string(d).iter().map(|t| if *t == Turn::L { 1 } else { -1 }).sum();
        s.rem_euclid(4) as usize
    };
    dir[0] = E;
    let mut queue = VecDeque::from([0usize]);
    while let Some(d) = queue.pop_front() {
        // the reverse dart leaves the head after the bends of `d`
        let back = PlaneGraph::twin(d);
        let back_dir = rot(dir[d], net_turn(d) + 2);
        // the corner of `d` at its head separates next(d) from `back`
        let nd = g.next_in_face(d);
        let nd_dir = rot(back_dir, 4 - rep.angles[d] as usize % 4);
        // `d` is next(p) for the dart p entering tail(d) right after it
        let succ = ccw_successor(g, d);
        let p = PlaneGraph::twin(succ);
        let succ_dir = rot(dir[d], rep.angles[p] as usize);
        for (x, value) in [(back, back_dir), (nd, nd_dir), (succ, succ_dir)] {
            if dir[x] == usize::MAX {
                dir[x] = value;
                queue.push_back(x);
            }
        }
    }
    dir
}

/// The out-dart following `d` counter-clockwise at `tail(d)`; its reverse
/// is the dart whose face successor is `d`.
fn ccw_successor(g: &PlaneGraph, d: usize) -> usize {
    let v = g.tail(d);
    let rot = g.rotation(v);
    let i = g.rotation_index(d / 2, v);
    g.out_dart(rot[(i + 1) % rot.len()], v)
}

pub fn compact(g: &PlaneGraph, rep: &OrthogonalRepresentation) -> Drawing {
    let n = g.vertex_count();
    let m = g.edge_count();
    if m == 0 {
        return Drawing { vertices: vec![(0, 0); n], edges: Vec::new() };
    }
    let dir = dart_directions(g, rep);
    let mut grid = Grid { slots: vec![[None; 4]; n] };
    let mut chains = Vec::with_capacity(m);
    for e in 0..m {
        let [u, v] = g.edge(e);
        let mut chain = vec![u];
        let mut heading = dir[2 * e];
        for t in &rep.bends[e] {
            let b = grid.add_vertex();
            grid.link(*chain.last().unwrap(), heading, b);
            chain.push(b);
            heading = if *t == Turn::L { rot(heading, 1) } else { rot(heading, 3) };
        }
        grid.link(*chain.last().unwrap(), heading, v);
        chain.push(v);
        chains.push(chain);
    }
    let real = grid.slots.len();

    enclose_external(&mut grid);
    while refine_once(&mut grid) {}

    let xs = layer(&grid, 0);
    let ys = layer(&grid, 1);
    let compress = |coords: &[i64]| -> Vec<i64> {
        let mut values: Vec<i64> = coords[..real].to_vec();
        values.sort_unstable();
        values.dedup();
        coords[..real].iter().map(|c| values.binary_search(c).unwrap() as i64).collect()
    };
    let (xs, ys) = (compress(&xs), compress(&ys));
    let at = |v: usize| (xs[v], ys[v]);
    Drawing {
        vertices: (0..n).map(at).collect(),
        edges: chains.iter().map(|c| c.iter().map(|&v| at(v)).collect()).collect(),
    }
}

fn enclose_external(grid: &mut Grid) {
    let faces = grid.faces();
    let ext = faces
        .iter()
        .find(|w| (0..w.len()).map(|i| turn(w, i)).sum::<i32>() == -4)
        .expect("one face turns by -4");
    let i = (0..ext.len()).find(|&i| turn(ext, i) < 0).unwrap();
    let r = grid.slots[ext[i].0][ext[i].1].unwrap();
    let out = ext[(i + 1) % ext.len()].1;
    let s = rot(out, 1);
    let [x, a, b, c, d] = [(); 5].map(|_| grid.add_vertex());
    grid.link(r, s, x);
    grid.link(x, rot(s, 1), a);
    grid.link(a, rot(s, 2), b);
    grid.link(b, rot(s, 3), c);
    grid.link(c, s, d);
    grid.link(d, rot(s, 1), x);
}

/// Splits one inner face at a reflex corner followed by two convex corners.
/// Returns false once every inner face is a rectangle.
fn refine_once(grid: &mut Grid) -> bool {
    for walk in grid.faces() {
        let len = walk.len();
        let turns: Vec<i32> = (0..len).map(|i| turn(&walk, i)).collect();
        if turns.iter().sum::<i32>() != 4 || turns.iter().all(|&t| t >= 0) {
            continue;
        }
        let next_nonzero = |i: usize| (1..=len).map(|k| (i + k) % len).find(|&j| turns[j] != 0).unwrap();
        for i in 0..len {
            if turns[i] >= 0 {
                continue;
            }
            let j1 = next_nonzero(i);
            let j2 = next_nonzero(j1);
            if turns[j1] != 1 || turns[j2] != 1 {
                continue;
            }
            let r = grid.slots[walk[i].0][walk[i].1].unwrap();
            let out = walk[(i + 1) % len].1;
            let (a, heading) = walk[(j2 + 1) % len];
            debug_assert_eq!(heading, rot(out, 2));
            let b = grid.slots[a][heading].unwrap();
            grid.slots[a][heading] = None;
            grid.slots[b][rot(heading, 2)] = None;
            let x = grid.add_vertex();
            grid.link(a, heading, x);
            grid.link(x, heading, b);
            grid.link(r, rot(out, 1), x);
            return true;
        }
        unreachable!("an inner face with a reflex corner has a reflex-convex-convex run");
    }
    false
}

/// Longest-path coordinates along one axis (0 = x, 1 = y).
fn layer(grid: &Grid, axis: usize) -> Vec<i64> {
    let count = grid.slots.len();
    let positive = axis; // east for x, north for y
    let along = 1 - axis; // directions that keep this coordinate fixed
    let mut dsu = Dsu::new(count);
    for v in 0..count {
        if let Some(w) = grid.slots[v][along] {
            dsu.union(v, w);
        }
    }
    let class: Vec<usize> = (0..count).map(|v| dsu.find(v)).collect();
    let mut succ = vec![Vec::new(); count];
    let mut indeg = vec![0usize; count];
    for v in 0..count {
        if let Some(w) = grid.slots[v][positive] {
            succ[class[v]].push(class[w]);
            indeg[class[w]] += 1;
        }
    }
    let mut level = vec![0i64; count];
    let mut queue: VecDeque<usize> = (0..count).filter(|&c| class[c] == c && indeg[c] == 0).collect();
    let mut done = 0;
    while let Some(c) = queue.pop_front() {
        done += 1;
        for &s in &succ[c] {
            level[s] = level[s].max(level[c] + 1);
            indeg[s] -= 1;
            if indeg[s] == 0 {
                queue.push_back(s);
            }
        }
    }
    debug_assert_eq!(done, (0..count).filter(|&c| class[c] == c).count(), "constraint graph has a cycle");
    (0..count).map(|v| level[class[v]]).collect()
}
