mod common;

use common::{coloring, graph};
use proptest::prelude::*;
use ramsey_core::graph::io::{from_graph6, parse_coloring, parse_edge_list, to_coloring_text, to_edge_list, to_graph6};
use ramsey_core::graph::{edge_density, validate_mono_pair, Color, Graph, PairCheck, VertexSet};

proptest! {
    #[test]
    fn adjacency_is_symmetric_and_loop_free(g in graph(24)) {
        let mut pairs = 0;
        for u in 0..g.n() {
            prop_assert!(!g.has_edge(u, u));
            for v in 0..g.n() {
                prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
                if u < v && g.has_edge(u, v) {
                    pairs += 1;
                }
            }
        }
        prop_assert_eq!(g.edge_count(), pairs);
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * pairs);
    }

    #[test]
    fn graph6_round_trip(g in graph(70)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(g in graph(30)) {
        prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn coloring_classes_are_complementary(c in coloring(1, 20)) {
        let blue = c.monochromatic_subgraph(Color::Blue);
        let red = c.monochromatic_subgraph(Color::Red);
        let n = c.n();
        prop_assert_eq!(blue.edge_count() + red.edge_count(), n * (n - 1) / 2);
        for (u, v) in blue.edges() {
            prop_assert!(!red.has_edge(u, v));
        }
        prop_assert_eq!(parse_coloring(&to_coloring_text(&c)).unwrap(), c);
    }

    #[test]
    fn delete_then_induce_agree(g in graph(20), mask in any::<u32>()) {
        let u = VertexSet::from_iter(g.n(), (0..g.n()).filter(|v| mask >> v & 1 == 1));
        let (h, back) = g.delete_vertices(&u);
        prop_assert_eq!(h.n(), g.n() - u.len());
        for (a, b) in h.edges() {
            prop_assert!(g.has_edge(back[a], back[b]));
        }
        let rest = g.vertices().difference(&u);
        prop_assert_eq!(h.edge_count(), g.edges_within(&rest));
        let d = edge_density(&g, &rest).unwrap();
        prop_assert!(d <= num_rational::Ratio::from_integer(1));
    }

    #[test]
    fn join_counts(a in graph(8), b in graph(8)) {
        let j = a.join(&b);
        prop_assert_eq!(j.n(), a.n() + b.n());
        prop_assert_eq!(j.edge_count(), a.edge_count() + b.edge_count() + a.n() * b.n());
    }

    #[test]
    fn mono_pair_check_matches_brute_force(c in coloring(2, 10), xs in any::<u16>(), ys in any::<u16>()) {
        let n = c.n();
        let x = VertexSet::from_iter(n, (0..n).filter(|v| xs >> v & 1 == 1));
        let y = VertexSet::from_iter(n, (0..n).filter(|v| ys >> v & 1 == 1 && xs >> v & 1 == 0));
        prop_assume!(!x.is_empty());
        let mut colors = std::collections::BTreeSet::new();
        for u in x.iter() {
            for v in x.union(&y).iter() {
                if u != v {
                    colors.insert(c.color(u, v));
                }
            }
        }
        let got = validate_mono_pair(&c, &x, &y).unwrap();
        match colors.len() {
            0 => prop_assert_eq!(got, PairCheck::Vacuous),
            1 => prop_assert_eq!(got, PairCheck::Mono(*colors.iter().next().unwrap())),
            _ => prop_assert!(matches!(got, PairCheck::Violation(..))),
        }
    }
}

#[test]
fn overlapping_pair_is_rejected() {
    let c = ramsey_core::graph::TwoColoring::uniform(4, Color::Red);
    let x = VertexSet::from_iter(4, [0, 1]);
    assert!(validate_mono_pair(&c, &x, &x).is_err());
    assert!(validate_mono_pair(&c, &VertexSet::new(4), &x).is_err());
    assert_eq!(Graph::complete(4).edge_count(), 6);
}
