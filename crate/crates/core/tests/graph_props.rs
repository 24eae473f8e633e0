mod common;

use proptest::prelude::*;
use vcla_core::dimacs::{parse_dimacs_str, to_dimacs_string};
use vcla_core::{is_vertex_cover, uncovered_edges, CoverSet, Graph};

fn arb_graph() -> impl Strategy<Value = Graph> {
    (0usize..16).prop_flat_map(|n| {
        let pairs = if n < 2 {
            Just(Vec::new()).boxed()
        } else {
            prop::collection::vec((0..n, 0..n), 0..40)
                .prop_map(|raw| raw.into_iter().filter(|(u, v)| u != v).collect())
                .boxed()
        };
        pairs.prop_map(move |pairs| Graph::new(n, pairs).unwrap())
    })
}

fn arb_graph_and_cover() -> impl Strategy<Value = (Graph, CoverSet)> {
    arb_graph().prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), prop::collection::vec(any::<bool>(), n))
            .prop_map(|(g, mask)| (g, CoverSet::from_mask(&mask)))
    })
}

proptest! {
    #[test]
    fn adjacency_matches_edges(g in arb_graph()) {
        let degree_sum: usize = g.degrees().iter().sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            prop_assert!(u < v && v < g.vertex_count());
            prop_assert!(g.neighbors(u).contains(&(v, e)));
            prop_assert!(g.neighbors(v).contains(&(u, e)));
        }
        let mut seen = std::collections::HashSet::new();
        for &edge in g.edges() {
            prop_assert!(seen.insert(edge), "duplicate edge {:?}", edge);
        }
    }

    #[test]
    fn cover_iff_nothing_uncovered((g, c) in arb_graph_and_cover()) {
        prop_assert_eq!(is_vertex_cover(&g, &c), uncovered_edges(&g, &c).is_empty());
        let listed = uncovered_edges(&g, &c);
        prop_assert!(listed.windows(2).all(|w| w[0] < w[1]));
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let open = !c.contains(u) && !c.contains(v);
            prop_assert_eq!(open, listed.contains(&e));
        }
    }

    #[test]
    fn trivial_covers(g in arb_graph()) {
        prop_assert!(is_vertex_cover(&g, &CoverSet::all_vertices(&g)));
        prop_assert_eq!(is_vertex_cover(&g, &CoverSet::new()), g.edge_count() == 0);
    }

    #[test]
    fn adding_a_vertex_keeps_a_cover((g, c) in arb_graph_and_cover(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.vertex_count() > 0);
        if is_vertex_cover(&g, &c) {
            let mut bigger = c.clone();
            bigger.insert(pick.index(g.vertex_count()));
            prop_assert!(is_vertex_cover(&g, &bigger));
        }
    }

    #[test]
    fn dimacs_round_trip(g in arb_graph()) {
        let text = to_dimacs_string(&g);
        let back = parse_dimacs_str(&text).unwrap();
        prop_assert!(back.warnings.is_empty());
        prop_assert_eq!(back.graph.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.graph.edges(), g.edges());
    }
}
