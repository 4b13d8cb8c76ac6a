use proptest::prelude::*;
use unbent::approx::{self, StarForestPartition};
use unbent::collections::schnyder_collection;
use unbent::flow::{solve_min_cost, ArcTag, Flow, FlowNetwork};
use unbent::{format, generators, ortho, PlaneGraph};

fn plane_graph() -> impl Strategy<Value = PlaneGraph> {
    (any::<u64>(), 3usize..18).prop_map(|(seed, n)| generators::random_plane_4graph(seed, n).unwrap())
}

/// Cheapest feasible flow by trying every value vector.
fn brute_force(net: &FlowNetwork, caps: &[i64]) -> Option<i64> {
    let mut values = vec![0i64; caps.len()];
    let mut best: Option<i64> = None;
    loop {
        let flow = Flow { values: values.clone(), cost: 0 };
        if flow.is_feasible_for(net) {
            let c = flow.recompute_cost(net);
            best = Some(best.map_or(c, |b| b.min(c)));
        }
        let mut i = 0;
        while i < values.len() && values[i] == caps[i] {
            values[i] = 0;
            i += 1;
        }
        if i == values.len() {
            return best;
        }
        values[i] += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_cost_matches_enumeration(
        arcs in prop::collection::vec((0usize..4, 0usize..4, 0i64..2, 1i64..4, 0i64..4), 1..6),
        supply in 0i64..3,
    ) {
        let mut net = FlowNetwork::new();
        let nodes: Vec<_> = (0..4).map(|i| net.add_node(match i { 0 => -supply, 3 => supply, _ => 0 })).collect();
        let mut caps = Vec::new();
        for &(t, h, lower, extra, cost) in &arcs {
            net.add_arc(nodes[t], nodes[h], lower, lower + extra, cost, ArcTag::Plain);
            caps.push(lower + extra);
        }
        let solved = solve_min_cost(&net).unwrap();
        let expected = brute_force(&net, &caps);
        prop_assert_eq!(solved.as_ref().map(|f| f.cost), expected);
        if let Some(f) = solved {
            prop_assert!(f.is_feasible_for(&net));
            prop_assert_eq!(f.cost, f.recompute_cost(&net));
        }
    }

    #[test]
    fn faces_follow_euler(g in plane_graph()) {
        let (n, m, f) = (g.vertex_count(), g.edge_count(), g.face_count());
        prop_assert_eq!(n + f, m + 2);
        prop_assert_eq!(g.total_face_degree(), 2 * m);
        prop_assert_eq!(g.faces().iter().filter(|f| f.is_external).count(), 1);
        prop_assert!(g.max_degree() <= 4);
    }

    #[test]
    fn text_format_round_trips(g in plane_graph()) {
        let back = format::parse(&format::serialize(&g)).unwrap();
        prop_assert_eq!(format::serialize(&back), format::serialize(&g));
    }

    #[test]
    fn min_bend_drawings_are_valid(g in plane_graph()) {
        let net = ortho::build_network(&g);
        let flow = solve_min_cost(&net).unwrap().unwrap();
        let rep = ortho::flow_to_representation(&g, &net, &flow);
        prop_assert_eq!(rep.validate(&g), Ok(()));
        prop_assert_eq!(rep.bend_count() as i64, flow.cost);
        let drawing = ortho::compact(&g, &rep);
        prop_assert!(ortho::validate_drawing(&g, &rep, &drawing).is_ok());
    }

    #[test]
    fn star_forests_hold(g in plane_graph()) {
        let p: StarForestPartition = approx::star_forest_partition(&g).unwrap();
        prop_assert!(p.class_count() <= 4);
        prop_assert_eq!(approx::verify_star_forests(g.vertex_count(), g.edges(), &p), Ok(()));
    }

    #[test]
    fn schnyder_collections_cover(g in plane_graph()) {
        let c = schnyder_collection(&g);
        prop_assert!(c.size() <= 3);
        prop_assert_eq!(c.verify(&g), Ok(()));
    }

    #[test]
    fn approx_within_six_b(g in plane_graph()) {
        let b = ortho::min_bend_representation(&g).bend_count();
        let c = approx::approx3_collection(&g).unwrap();
        prop_assert_eq!(c.verify(&g), Ok(()));
        prop_assert!(c.total_bends() <= 6 * b);
    }

    #[test]
    fn rerouting_keeps_the_rest(g in plane_graph(), pick in any::<prop::sample::Index>(), end in 0usize..2) {
        let net = ortho::build_network(&g);
        let mut flow = solve_min_cost(&net).unwrap().unwrap();
        approx::cancel_opposite_bends(&g, &net, &mut flow);
        let e1 = pick.index(g.edge_count());
        let v = g.edge(e1)[end];
        prop_assume!(g.degree(v) >= 2);
        let after = approx::reroute_around_vertex(&g, &net, &flow, v, e1).unwrap();
        prop_assert!(after.is_feasible_for(&net));
        prop_assert_eq!(approx::edge_flow(&g, &after, e1), 0);
        let x = approx::edge_flow(&g, &flow, e1);
        for e in 0..g.edge_count() {
            for d in [2 * e, 2 * e + 1] {
                let a = ortho::crossing_arc(&g, d);
                if g.rotation(v).contains(&e) && e != e1 {
                    prop_assert!(after.values[a] <= flow.values[a] + x);
                } else if e != e1 {
                    prop_assert_eq!(after.values[a], flow.values[a]);
                }
            }
        }
        for d in 0..2 * g.edge_count() {
            prop_assert_eq!(after.values[ortho::corner_arc(d)], flow.values[ortho::corner_arc(d)]);
        }
    }
}
