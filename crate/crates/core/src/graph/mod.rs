//! Graphs, two-colorings of complete graphs, and monochromatic structures.

mod coloring;
pub mod io;
pub mod named;
mod set;
mod simple;

use thiserror::Error;

pub use coloring::{
    check_embedding, induced_coloring, monochromatic_subgraph, random_coloring, validate_mono_pair,
    Color, ColoredEdge, Embedding, MonoPair, PairCheck, TwoColoring,
};
pub use set::VertexSet;
pub use simple::{edge_density, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    Range { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Argument(String),
}

/// `max_degree`, `delete_vertices` and `join` as free functions.
pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

pub fn delete_vertices(g: &Graph, u: &VertexSet) -> (Graph, Vec<usize>) {
    g.delete_vertices(u)
}

pub fn join(g: &Graph, h: &Graph) -> Graph {
    g.join(h)
}
