use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use super::{Graph, GraphError, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Blue => "blue",
            Color::Red => "red",
        })
    }
}

/// Blue/red coloring of every edge of `K_n`.
///
/// Serializes as `{n, bits}` with the row-major pair bits of the text format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoColoring {
    n: usize,
    blue: Vec<FixedBitSet>,
    red: Vec<FixedBitSet>,
}

impl TwoColoring {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Color) -> Self {
        let mut blue = vec![FixedBitSet::with_capacity(n); n];
        let mut red = vec![FixedBitSet::with_capacity(n); n];
        for u in 0..n {
            for v in u + 1..n {
                let side = match f(u, v) {
                    Color::Blue => &mut blue,
                    Color::Red => &mut red,
                };
                side[u].insert(v);
                side[v].insert(u);
            }
        }
        Self { n, blue, red }
    }

    pub fn uniform(n: usize, color: Color) -> Self {
        Self::from_fn(n, |_, _| color)
    }

    /// Edges of `g` blue, non-edges red.
    pub fn from_blue_graph(g: &Graph) -> Self {
        Self::from_fn(g.n(), |u, v| if g.has_edge(u, v) { Color::Blue } else { Color::Red })
    }

    /// Bit `i` of `mask` colors the `i`-th pair in row-major order; 1 is blue.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut i = 0;
        Self::from_fn(n, |_, _| {
            let c = if mask >> i & 1 == 1 { Color::Blue } else { Color::Red };
            i += 1;
            c
        })
    }

    /// Red 5-cycle `0-1-2-3-4-0` with blue diagonals.
    pub fn pentagon() -> Self {
        Self::from_fn(5, |u, v| {
            if (v - u) % 5 == 1 || (v - u) % 5 == 4 {
                Color::Red
            } else {
                Color::Blue
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn color(&self, u: usize, v: usize) -> Color {
        debug_assert!(u != v && u < self.n && v < self.n);
        if self.blue[u].contains(v) {
            Color::Blue
        } else {
            Color::Red
        }
    }

    /// Neighbors of `v` joined to it in `color`.
    pub fn neighbors(&self, v: usize, color: Color) -> &FixedBitSet {
        match color {
            Color::Blue => &self.blue[v],
            Color::Red => &self.red[v],
        }
    }

    pub fn monochromatic_subgraph(&self, color: Color) -> Graph {
        let adj = match color {
            Color::Blue => self.blue.clone(),
            Color::Red => self.red.clone(),
        };
        Graph::from_adjacency(self.n, adj)
    }

    pub fn edge_count(&self, color: Color) -> usize {
        let side = match color {
            Color::Blue => &self.blue,
            Color::Red => &self.red,
        };
        side.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    /// Coloring induced on `u`, relabeled to `0..|u|`, with the back-map.
    pub fn induced(&self, u: &VertexSet) -> (TwoColoring, Vec<usize>) {
        let back: Vec<usize> = u.iter().filter(|&v| v < self.n).collect();
        let c = TwoColoring::from_fn(back.len(), |i, j| self.color(back[i], back[j]));
        (c, back)
    }

    /// Row-major bit string over pairs `i < j`, `1` = blue.
    pub fn to_bits(&self) -> String {
        let mut s = String::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for u in 0..self.n {
            for v in u + 1..self.n {
                s.push(if self.blue[u].contains(v) { '1' } else { '0' });
            }
        }
        s
    }
}

impl Serialize for TwoColoring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TwoColoring", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("bits", &self.to_bits())?;
        st.end()
    }
}

pub fn induced_coloring(c: &TwoColoring, u: &VertexSet) -> (TwoColoring, Vec<usize>) {
    c.induced(u)
}

pub fn monochromatic_subgraph(c: &TwoColoring, color: Color) -> Graph {
    c.monochromatic_subgraph(color)
}

/// Coloring with each edge blue independently with probability `blue_probability`,
/// drawn in row-major pair order from a ChaCha8 stream seeded by `seed`.
pub fn random_coloring(n: usize, blue_probability: f64, seed: u64) -> TwoColoring {
    let p = blue_probability.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    TwoColoring::from_fn(n, |_, _| if rng.gen_bool(p) { Color::Blue } else { Color::Red })
}

/// Ordered pair of disjoint sets, monochromatic in `color`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoPair {
    pub x: VertexSet,
    pub y: VertexSet,
    pub color: Color,
}

impl MonoPair {
    /// Whether this pair is monochromatic in its claimed color.
    pub fn validate(&self, c: &TwoColoring) -> bool {
        match validate_mono_pair(c, &self.x, &self.y) {
            Ok(PairCheck::Mono(col)) => col == self.color,
            Ok(PairCheck::Vacuous) => true,
            _ => false,
        }
    }
}

/// An edge and the color it carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredEdge {
    pub u: usize,
    pub v: usize,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PairCheck {
    Mono(Color),
    /// No edge touches `X` (a single vertex with empty `Y`).
    Vacuous,
    /// Two edges touching `X` with different colors.
    Violation(ColoredEdge, ColoredEdge),
}

/// Checks that every edge inside `X ∪ Y` with an end in `X` has one color.
pub fn validate_mono_pair(
    c: &TwoColoring,
    x: &VertexSet,
    y: &VertexSet,
) -> Result<PairCheck, GraphError> {
    if x.is_empty() {
        return Err(GraphError::Argument("X must be nonempty".into()));
    }
    if !x.is_disjoint(y) {
        return Err(GraphError::Argument("X and Y must be disjoint".into()));
    }
    for s in [x, y] {
        if let Some(v) = s.iter().find(|&v| v >= c.n()) {
            return Err(GraphError::Range { vertex: v, n: c.n() });
        }
    }
    let all = x.union(y);
    let mut first: Option<ColoredEdge> = None;
    for u in x.iter() {
        for v in all.iter() {
            if v == u || (x.contains(v) && v < u) {
                continue;
            }
            let e = ColoredEdge {
                u: u.min(v),
                v: u.max(v),
                color: c.color(u, v),
            };
            match first {
                None => first = Some(e),
                Some(f) if f.color != e.color => return Ok(PairCheck::Violation(f, e)),
                _ => {}
            }
        }
    }
    Ok(match first {
        Some(f) => PairCheck::Mono(f.color),
        None => PairCheck::Vacuous,
    })
}

/// Monochromatic copy of `pattern` in a host coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub pattern: Graph,
    /// `host_vertices[i]` is the image of pattern vertex `i`.
    pub host_vertices: Vec<usize>,
    pub color: Color,
}

/// Re-validates injectivity, range, and the color of every pattern edge.
pub fn check_embedding(c: &TwoColoring, e: &Embedding) -> bool {
    if e.host_vertices.len() != e.pattern.n() {
        return false;
    }
    let mut seen = FixedBitSet::with_capacity(c.n());
    for &h in &e.host_vertices {
        if h >= c.n() || seen.contains(h) {
            return false;
        }
        seen.insert(h);
    }
    e.pattern
        .edges()
        .all(|(u, v)| c.color(e.host_vertices[u], e.host_vertices[v]) == e.color)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_validation_examples() {
        let red = TwoColoring::uniform(3, Color::Red);
        let x = VertexSet::from_iter(3, [0]);
        let y = VertexSet::from_iter(3, [1, 2]);
        assert_eq!(validate_mono_pair(&red, &x, &y).unwrap(), PairCheck::Mono(Color::Red));
        let x2 = VertexSet::from_iter(3, [0, 1]);
        assert_eq!(
            validate_mono_pair(&red, &x2, &VertexSet::new(3)).unwrap(),
            PairCheck::Mono(Color::Red)
        );
        let mixed = TwoColoring::from_fn(3, |u, v| if (u, v) == (0, 1) { Color::Blue } else { Color::Red });
        match validate_mono_pair(&mixed, &x, &y).unwrap() {
            PairCheck::Violation(a, b) => {
                assert_eq!((a.u, a.v, a.color), (0, 1, Color::Blue));
                assert_eq!((b.u, b.v, b.color), (0, 2, Color::Red));
            }
            other => panic!("{other:?}"),
        }
        assert!(validate_mono_pair(&red, &VertexSet::new(3), &y).is_err());
        assert!(validate_mono_pair(&red, &x2, &VertexSet::from_iter(3, [1])).is_err());
    }

    #[test]
    fn y_edges_are_unconstrained() {
        // Edge {1, 2} inside Y is blue; the pair is still red.
        let c = TwoColoring::from_fn(3, |u, v| if (u, v) == (1, 2) { Color::Blue } else { Color::Red });
        let p = MonoPair {
            x: VertexSet::from_iter(3, [0]),
            y: VertexSet::from_iter(3, [1, 2]),
            color: Color::Red,
        };
        assert!(p.validate(&c));
    }

    #[test]
    fn color_classes_partition_pairs() {
        let c = random_coloring(12, 0.3, 7);
        assert_eq!(c.edge_count(Color::Blue) + c.edge_count(Color::Red), 66);
        assert_eq!(c, random_coloring(12, 0.3, 7));
        let p = TwoColoring::pentagon();
        assert_eq!(p.monochromatic_subgraph(Color::Red), Graph::cycle(5));
    }

    #[test]
    fn embedding_check() {
        let c = TwoColoring::uniform(4, Color::Red);
        let e = Embedding {
            pattern: Graph::complete(3),
            host_vertices: vec![3, 1, 0],
            color: Color::Red,
        };
        assert!(check_embedding(&c, &e));
        let bad = Embedding { host_vertices: vec![3, 3, 0], ..e.clone() };
        assert!(!check_embedding(&c, &bad));
        let blue = Embedding { color: Color::Blue, ..e };
        assert!(!check_embedding(&c, &blue));
    }
}
