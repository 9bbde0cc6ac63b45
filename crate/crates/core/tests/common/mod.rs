#![allow(dead_code)]

use proptest::prelude::*;
use ramsey_core::graph::{Color, Graph, TwoColoring};

/// Graph on `n` vertices from one bit per unordered pair.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("in range")
}

pub fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |b| graph_from_bits(n, &b))
    })
}

/// Sparse graphs: each pair present with probability about `1/density`.
pub fn sparse_graph(max_n: usize, density: u32) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(0..density, n * (n - 1) / 2)
            .prop_map(move |b| graph_from_bits(n, &b.iter().map(|&x| x == 0).collect::<Vec<_>>()))
    })
}

pub fn coloring(min_n: usize, max_n: usize) -> impl Strategy<Value = TwoColoring> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |b| TwoColoring::from_blue_graph(&graph_from_bits(n, &b)))
    })
}

pub fn color() -> impl Strategy<Value = Color> {
    prop_oneof![Just(Color::Blue), Just(Color::Red)]
}
