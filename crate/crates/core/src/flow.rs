//! Min-cost flow with node demands and arc lower bounds.
//!
//! Demands follow the consumer convention: a node with demand `d` must see
//! `inflow - outflow = d`. Lower bounds are shipped up front and the
//! remaining problem is solved by successive shortest paths with Dijkstra on
//! reduced costs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeId};

pub type NodeId = usize;
pub type ArcId = usize;

/// Origin of an arc in a drawing network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcTag {
    Plain,
    /// Face-to-vertex arc for the corner at the head of `dart`, in the face
    /// left of `dart`.
    Corner { dart: Dart },
    /// Face-to-face arc crossing `edge` from the face left of `dart` to the
    /// face left of its twin.
    Crossing { edge: EdgeId, dart: Dart },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub tail: NodeId,
    pub head: NodeId,
    pub lower: i64,
    pub capacity: i64,
    pub cost: i64,
    pub tag: ArcTag,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowNetwork {
    pub demands: Vec<i64>,
    pub arcs: Vec<Arc>,
}

impl FlowNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, demand: i64) -> NodeId {
        self.demands.push(demand);
        self.demands.len() - 1
    }

    pub fn add_arc(&mut self, tail: NodeId, head: NodeId, lower: i64, capacity: i64, cost: i64, tag: ArcTag) -> ArcId {
        self.arcs.push(Arc { tail, head, lower, capacity, cost, tag });
        self.arcs.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.demands.len()
    }

    /// Total positive demand.
    pub fn total_demand(&self) -> i64 {
        self.demands.iter().filter(|&&d| d > 0).sum()
    }

    /// Removes the arcs matching `drop`, keeping the order of the rest.
    pub fn without_arcs(&self, mut drop: impl FnMut(&Arc) -> bool) -> FlowNetwork {
        FlowNetwork { demands: self.demands.clone(), arcs: self.arcs.iter().filter(|a| !drop(a)).cloned().collect() }
    }

    fn check(&self) -> Result<()> {
        let sum: i64 = self.demands.iter().sum();
        if sum != 0 {
            return Err(Error::MalformedNetwork(format!("demands sum to {sum}")));
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if a.tail >= self.demands.len() || a.head >= self.demands.len() {
                return Err(Error::MalformedNetwork(format!("arc {i} has an unknown endpoint")));
            }
            if a.lower < 0 || a.cost < 0 {
                return Err(Error::MalformedNetwork(format!("arc {i} has a negative lower bound or cost")));
            }
        }
        Ok(())
    }

    /// Line-oriented dump used by test goldens.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (v, d) in self.demands.iter().enumerate() {
            writeln!(out, "node {v} demand {d}").unwrap();
        }
        for (i, a) in self.arcs.iter().enumerate() {
            let tag = match a.tag {
                ArcTag::Plain => "plain".to_string(),
                ArcTag::Corner { dart } => format!("corner {dart}"),
                ArcTag::Crossing { edge, dart } => format!("cross {edge} {dart}"),
            };
            writeln!(out, "arc {i} {} -> {} [{}, {}] cost {} {tag}", a.tail, a.head, a.lower, a.capacity, a.cost).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub values: Vec<i64>,
    pub cost: i64,
}

impl Flow {
    /// Checks bounds and node balance against `net`.
    pub fn is_feasible_for(&self, net: &FlowNetwork) -> bool {
        if self.values.len() != net.arcs.len() {
            return false;
        }
        let mut balance = vec![0i64; net.node_count()];
        for (a, &x) in net.arcs.iter().zip(&self.values) {
            if x < a.lower || x > a.capacity {
                return false;
            }
            balance[a.head] += x;
            balance[a.tail] -= x;
        }
        balance == net.demands
    }

    pub fn recompute_cost(&self, net: &FlowNetwork) -> i64 {
        net.arcs.iter().zip(&self.values).map(|(a, &x)| a.cost * x).sum()
    }
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual { head: Vec::new(), cap: Vec::new(), cost: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn link(&mut self, u: usize, v: usize, cap: i64, cost: i64) -> usize {
        let e = self.head.len();
        self.head.extend([v, u]);
        self.cap.extend([cap, 0]);
        self.cost.extend([cost, -cost]);
        self.adj[u].push(e);
        self.adj[v].push(e + 1);
        e
    }
}

/// Minimum-cost feasible flow, or `Ok(None)` when no feasible flow exists.
pub fn solve_min_cost(net: &FlowNetwork) -> Result<Option<Flow>> {
    net.check()?;
    let n = net.node_count();
    let (source, sink) = (n, n + 1);
    let mut res = Residual::new(n + 2);
    let mut excess = net.demands.clone();
    let mut arc_edge = Vec::with_capacity(net.arcs.len());
    for a in &net.arcs {
        if a.lower > a.capacity {
            return Ok(None);
        }
        excess[a.head] -= a.lower;
        excess[a.tail] += a.lower;
        arc_edge.push(res.link(a.tail, a.head, a.capacity - a.lower, a.cost));
    }
    let mut need = 0;
    for (v, &d) in excess.iter().enumerate() {
        if d < 0 {
            res.link(source, v, -d, 0);
        } else if d > 0 {
            res.link(v, sink, d, 0);
            need += d;
        }
    }

    let total = n + 2;
    let mut potential = vec![0i64; total];
    let mut dist = vec![i64::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut shipped = 0;
    while shipped < need {
        dist.fill(i64::MAX);
        parent.fill(usize::MAX);
        dist[source] = 0;
        let mut heap = BinaryHeap::from([Reverse((0i64, source))]);
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &e in &res.adj[u] {
                if res.cap[e] == 0 {
                    continue;
                }
                let v = res.head[e];
                let nd = d + res.cost[e] + potential[u] - potential[v];
                if nd < dist[v] {
                    dist[v] = nd;
                    parent[v] = e;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        if dist[sink] == i64::MAX {
            return Ok(None);
        }
        for v in 0..total {
            if dist[v] != i64::MAX {
                potential[v] += dist[v];
            }
        }
        let mut push = need - shipped;
        let mut v = sink;
        while v != source {
            let e = parent[v];
            push = push.min(res.cap[e]);
            v = res.head[e ^ 1];
        }
        let mut v = sink;
        while v != source {
            let e = parent[v];
            res.cap[e] -= push;
            res.cap[e ^ 1] += push;
            v = res.head[e ^ 1];
        }
        shipped += push;
    }
    let values: Vec<i64> = net.arcs.iter().zip(&arc_edge).map(|(a, &e)| a.lower + res.cap[e ^ 1]).collect();
    let cost = net.arcs.iter().zip(&values).map(|(a, &x)| a.cost * x).sum();
    Ok(Some(Flow { values, cost }))
}

/// Whether any feasible flow exists.
pub fn check_feasible(net: &FlowNetwork) -> bool {
    matches!(solve_min_cost(net), Ok(Some(_)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(cap: i64) -> FlowNetwork {
        let mut net = FlowNetwork::new();
        let a = net.add_node(-1);
        let b = net.add_node(1);
        net.add_arc(a, b, 0, cap, 3, ArcTag::Plain);
        net
    }

    #[test]
    fn forced_single_arc() {
        let flow = solve_min_cost(&pair(1)).unwrap().unwrap();
        assert_eq!(flow.values, vec![1]);
        assert_eq!(flow.cost, 3);
    }

    #[test]
    fn zero_capacity_is_infeasible() {
        assert_eq!(solve_min_cost(&pair(0)).unwrap(), None);
        assert!(!check_feasible(&pair(0)));
    }

    #[test]
    fn unbalanced_demands_are_an_error() {
        let mut net = FlowNetwork::new();
        net.add_node(1);
        assert!(matches!(solve_min_cost(&net), Err(Error::MalformedNetwork(_))));
    }

    #[test]
    fn isolated_demand_node() {
        let mut net = FlowNetwork::new();
        let a = net.add_node(-2);
        let b = net.add_node(1);
        let c = net.add_node(1);
        net.add_arc(a, b, 0, 5, 1, ArcTag::Plain);
        assert!(!check_feasible(&net));
        net.add_arc(a, c, 0, 5, 1, ArcTag::Plain);
        assert!(check_feasible(&net));
    }

    #[test]
    fn lower_bounds_force_circulation() {
        // a cycle with a lower bound of 2 on one arc forces 2 units around it
        let mut net = FlowNetwork::new();
        let v: Vec<_> = (0..3).map(|_| net.add_node(0)).collect();
        net.add_arc(v[0], v[1], 2, 9, 1, ArcTag::Plain);
        net.add_arc(v[1], v[2], 0, 9, 1, ArcTag::Plain);
        net.add_arc(v[2], v[0], 0, 9, 1, ArcTag::Plain);
        let flow = solve_min_cost(&net).unwrap().unwrap();
        assert_eq!(flow.values, vec![2, 2, 2]);
        assert_eq!(flow.cost, 6);
        assert!(flow.is_feasible_for(&net));
    }

    #[test]
    fn picks_cheaper_route() {
        let mut net = FlowNetwork::new();
        let s = net.add_node(-3);
        let m = net.add_node(0);
        let t = net.add_node(3);
        net.add_arc(s, t, 0, 2, 5, ArcTag::Plain);
        net.add_arc(s, m, 0, 9, 1, ArcTag::Plain);
        net.add_arc(m, t, 0, 2, 1, ArcTag::Plain);
        let flow = solve_min_cost(&net).unwrap().unwrap();
        assert_eq!(flow.values, vec![1, 2, 2]);
        assert_eq!(flow.cost, 9);
    }

    #[test]
    fn dump_lists_nodes_and_arcs() {
        let text = pair(1).dump();
        assert_eq!(text, "node 0 demand -1\nnode 1 demand 1\narc 0 0 -> 1 [0, 1] cost 3 plain\n");
    }
}
