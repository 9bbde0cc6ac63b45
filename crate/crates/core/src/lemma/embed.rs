use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::graph::{check_embedding, Color, Embedding, Graph, TwoColoring, VertexSet};

/// Default node-expansion cap for the backtracking embedder.
pub const DEFAULT_EMBED_CAP: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EmbedOutcome {
    Found(Embedding),
    /// The whole search space was explored: no copy exists.
    Exhausted { nodes: u64 },
    /// Node cap hit before the search finished.
    CapReached { nodes: u64 },
}

impl EmbedOutcome {
    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            EmbedOutcome::Found(e) => Some(e),
            _ => None,
        }
    }
}

/// Placement order: each next vertex has the most already-placed neighbors,
/// ties broken by higher degree, then lower index.
fn placement_order(p: &Graph) -> Vec<usize> {
    let n = p.n();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                (links[a], p.degree(a), std::cmp::Reverse(a)).cmp(&(links[b], p.degree(b), std::cmp::Reverse(b)))
            })
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for w in p.neighbors(v).ones() {
            links[w] += 1;
        }
    }
    order
}

struct Search<'a> {
    c: &'a TwoColoring,
    p: &'a Graph,
    color: Color,
    order: Vec<usize>,
    image: Vec<usize>,
    used: FixedBitSet,
    within: &'a FixedBitSet,
    within_degree: Vec<usize>,
    nodes: u64,
    cap: u64,
}

enum Step {
    Found,
    Dead,
    Cap,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            return Step::Found;
        }
        let v = self.order[depth];
        let mut cand = self.within.clone();
        cand.difference_with(&self.used);
        for w in self.p.neighbors(v).ones() {
            let img = self.image[w];
            if img != usize::MAX {
                cand.intersect_with(self.c.neighbors(img, self.color));
            }
        }
        let need = self.p.degree(v);
        for h in cand.ones() {
            if self.within_degree[h] < need {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.cap {
                return Step::Cap;
            }
            self.image[v] = h;
            self.used.insert(h);
            match self.run(depth + 1) {
                Step::Found => return Step::Found,
                Step::Cap => return Step::Cap,
                Step::Dead => {}
            }
            self.used.set(h, false);
            self.image[v] = usize::MAX;
        }
        Step::Dead
    }
}

/// Backtracking search for a copy of `pattern` in the `color` graph of `c`
/// restricted to `within`. Non-edges of the pattern are unconstrained.
pub fn greedy_embed(
    c: &TwoColoring,
    pattern: &Graph,
    color: Color,
    within: &VertexSet,
    cap: u64,
) -> EmbedOutcome {
    let mut bits = within.bits().clone();
    bits.grow(c.n());
    bits.set_range(c.n().., false);
    let within_degree: Vec<usize> = (0..c.n())
        .map(|h| c.neighbors(h, color).intersection_count(&bits))
        .collect();
    let mut s = Search {
        c,
        p: pattern,
        color,
        order: placement_order(pattern),
        image: vec![usize::MAX; pattern.n()],
        used: FixedBitSet::with_capacity(c.n()),
        within: &bits,
        within_degree,
        nodes: 0,
        cap,
    };
    match s.run(0) {
        Step::Found => {
            let e = Embedding {
                pattern: pattern.clone(),
                host_vertices: s.image,
                color,
            };
            debug_assert!(check_embedding(c, &e));
            EmbedOutcome::Found(e)
        }
        Step::Dead => EmbedOutcome::Exhausted { nodes: s.nodes },
        Step::Cap => EmbedOutcome::CapReached { nodes: s.nodes },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_examples() {
        let red3 = TwoColoring::uniform(3, Color::Red);
        match greedy_embed(&red3, &Graph::complete(1), Color::Blue, &VertexSet::from_iter(3, [2]), 10) {
            EmbedOutcome::Found(e) => assert_eq!(e.host_vertices, vec![2]),
            other => panic!("{other:?}"),
        }
        let found = greedy_embed(&red3, &Graph::complete(3), Color::Red, &VertexSet::full(3), 100);
        assert_eq!(found.embedding().unwrap().host_vertices, vec![0, 1, 2]);
        let pent = TwoColoring::pentagon();
        for color in [Color::Red, Color::Blue] {
            assert!(matches!(
                greedy_embed(&pent, &Graph::complete(3), color, &VertexSet::full(5), 1_000_000),
                EmbedOutcome::Exhausted { .. }
            ));
        }
        assert!(greedy_embed(&pent, &Graph::cycle(5), Color::Red, &VertexSet::full(5), 100)
            .embedding()
            .is_some());
    }

    #[test]
    fn cap_is_reported() {
        let c = TwoColoring::from_blue_graph(&Graph::cycle(12));
        // K_3 in a blue C_12: each placement of vertex 0 costs three nodes.
        let out = greedy_embed(&c, &Graph::complete(3), Color::Blue, &VertexSet::full(12), 3);
        assert!(matches!(out, EmbedOutcome::CapReached { nodes: 4 }));
    }

    #[test]
    fn respects_within() {
        let c = TwoColoring::uniform(6, Color::Blue);
        let within = VertexSet::from_iter(6, [1, 3, 5]);
        let e = greedy_embed(&c, &Graph::path(3), Color::Blue, &within, 100);
        let e = e.embedding().unwrap();
        assert!(e.host_vertices.iter().all(|h| within.contains(*h)));
        assert!(matches!(
            greedy_embed(&c, &Graph::path(4), Color::Blue, &within, 100),
            EmbedOutcome::Exhausted { .. }
        ));
    }
}
