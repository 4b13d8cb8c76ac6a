use std::collections::VecDeque;

use crate::graph::{EdgeId, PlaneGraph};

/// Edges on the forest path between `a` and `b`, if they are connected.
fn forest_path(g: &PlaneGraph, forest: &[bool], a: usize, b: usize) -> Option<Vec<EdgeId>> {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        if forest[e] {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }
    let mut via = vec![None; n];
    let mut seen = vec![false; n];
    seen[a] = true;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            let mut path = Vec::new();
            let mut x = b;
            while let Some((p, e)) = via[x] {
                path.push(e);
                x = p;
            }
            return Some(path);
        }
        for &(w, e) in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                via[w] = Some((u, e));
                queue.push_back(w);
            }
        }
    }
    None
}

/// Partitions the edges into two forests when possible, by augmenting along
/// shortest exchange paths.
pub fn two_forest_partition(g: &PlaneGraph) -> Option<[Vec<EdgeId>; 2]> {
    let m = g.edge_count();
    if m + 2 > 2 * g.vertex_count() {
        return None;
    }
    // owner[e] = Some(i) when e sits in forest i
    let mut owner: Vec<Option<usize>> = vec![None; m];
    for start in 0..m {
        // BFS over edges; an edge in the queue needs a home outside its forest
        let mut parent: Vec<Option<(EdgeId, usize)>> = vec![None; m];
        let mut seen = vec![false; m];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut found = None;
        'search: while let Some(x) = queue.pop_front() {
            let [u, v] = g.edge(x);
            for i in 0..2 {
                if owner[x] == Some(i) {
                    continue;
                }
                let mask: Vec<bool> = owner.iter().map(|o| *o == Some(i)).collect();
                match forest_path(g, &mask, u, v) {
                    None => {
                        found = Some((x, i));
                        break 'search;
                    }
                    Some(cycle) => {
                        for y in cycle {
                            if !seen[y] {
                                seen[y] = true;
                                parent[y] = Some((x, i));
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        let (mut x, mut i) = found?;
        // x enters forest i; walk back: the edge that displaced x enters x's old forest
        loop {
            let previous = owner[x];
            owner[x] = Some(i);
            match parent[x] {
                None => break,
                Some((y, j)) => {
                    debug_assert_eq!(previous, Some(j));
                    x = y;
                    i = j;
                }
            }
        }
    }
    let class = |i| (0..m).filter(|&e| owner[e] == Some(i)).collect::<Vec<_>>();
    let result = [class(0), class(1)];
    debug_assert!(result.iter().all(|f| g.is_forest(f)));
    Some(result)
}
