use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{GraphError, VertexSet};

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![FixedBitSet::with_capacity(n); n],
            edge_count: 0,
        }
    }

    /// Builds from an edge list; duplicates are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::Range { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Ok(false);
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edge_count += 1;
        Ok(true)
    }

    pub(crate) fn from_adjacency(n: usize, adj: Vec<FixedBitSet>) -> Self {
        let twice: usize = adj.iter().map(|a| a.count_ones(..)).sum();
        Self {
            n,
            adj,
            edge_count: twice / 2,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("in range");
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("in range")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Self::from_edges(n, &edges).expect("in range")
    }

    /// `K_{1,q}` with center 0.
    pub fn star(q: usize) -> Self {
        let edges: Vec<_> = (1..=q).map(|i| (0, i)).collect();
        Self::from_edges(q + 1, &edges).expect("in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|v| self.adj[v].is_clear())
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn check_set(&self, u: &VertexSet) -> Result<(), GraphError> {
        match u.iter().find(|&v| v >= self.n) {
            Some(v) => Err(GraphError::Range { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    /// Number of edges with both ends in `u`.
    pub fn edges_within(&self, u: &VertexSet) -> usize {
        u.iter().map(|v| u.count_in(&self.adj[v])).sum::<usize>() / 2
    }

    /// Subgraph induced on `u`, relabeled to `0..|u|`, with the back-map to
    /// original labels.
    pub fn induced(&self, u: &VertexSet) -> (Graph, Vec<usize>) {
        let back: Vec<usize> = u.iter().filter(|&v| v < self.n).collect();
        let mut fwd = vec![usize::MAX; self.n];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let k = back.len();
        let mut adj = vec![FixedBitSet::with_capacity(k); k];
        for (i, &v) in back.iter().enumerate() {
            for w in self.adj[v].ones() {
                if fwd[w] != usize::MAX {
                    adj[i].insert(fwd[w]);
                }
            }
        }
        (Graph::from_adjacency(k, adj), back)
    }

    /// `g - u` with the back-map from new to original labels.
    pub fn delete_vertices(&self, u: &VertexSet) -> (Graph, Vec<usize>) {
        let keep = self.vertices().difference(u);
        self.induced(&keep)
    }

    /// The join `self + other`: `other`'s vertices are shifted by `self.n()`.
    pub fn join(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("in range");
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n).expect("in range");
        }
        for u in 0..self.n {
            for v in 0..other.n {
                g.add_edge(u, v + self.n).expect("in range");
            }
        }
        g
    }

    /// Disjoint union, `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges().chain(other.edges().map(|(u, v)| (u + self.n, v + self.n))) {
            g.add_edge(u, v).expect("in range");
        }
        g
    }

    /// Relabels by `perm[v]`; `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("permutation");
        }
        g
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Graph", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &self.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>())?;
        st.end()
    }
}

/// `e(U) / C(|U|, 2)`, and 0 when `|U| <= 1`.
pub fn edge_density(g: &Graph, u: &VertexSet) -> Result<Ratio<u64>, GraphError> {
    g.check_set(u)?;
    let k = u.len() as u64;
    if k <= 1 {
        return Ok(Ratio::from_integer(0));
    }
    Ok(Ratio::new(g.edges_within(u) as u64, k * (k - 1) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(edge_density(&k3, &k3.vertices()).unwrap(), Ratio::from_integer(1));
        assert_eq!(edge_density(&k3, &VertexSet::from_iter(3, [1])).unwrap(), Ratio::from_integer(0));
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(edge_density(&g, &g.vertices()).unwrap(), Ratio::new(1, 3));
        assert!(edge_density(&g, &VertexSet::from_iter(9, [8])).is_err());
    }

    #[test]
    fn join_examples() {
        assert_eq!(Graph::complete(1).join(&Graph::complete(1)), Graph::complete(2));
        let j = Graph::complete(2).join(&Graph::empty(2));
        assert_eq!(j.n(), 4);
        assert_eq!(j.edge_count(), 5);
        assert_eq!(Graph::star(9).max_degree(), 9);
    }

    #[test]
    fn delete_and_induce_keep_back_maps() {
        let g = Graph::cycle(5);
        let (h, back) = g.delete_vertices(&VertexSet::from_iter(5, [0]));
        assert_eq!(back, vec![1, 2, 3, 4]);
        assert_eq!(h, Graph::path(4));
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 3)]).is_err());
        let d = Graph::from_edges(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(d.edge_count(), 1);
    }
}
