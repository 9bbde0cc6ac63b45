//! Dense-or-sparse dichotomy: either a monochromatic copy of a bounded-degree
//! pattern, or a large set whose edge density in that color is small.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::embed::{greedy_embed, EmbedOutcome};
use super::{LemmaError, LemmaOptions};
use crate::bounds::decide;
use crate::bounds::Expr;
use crate::graph::{Color, Embedding, Graph, TwoColoring, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SparseOutcome {
    /// `d(S) = edges / pairs <= eps` in the dense color.
    Subset { s: VertexSet, edges: usize, pairs: usize },
    Embedding(Embedding),
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseSubsetResult {
    pub outcome: SparseOutcome,
    /// No copy of the pattern exists (proven by exhaustive search) and
    /// `N >= 2^{4 Delta log^2(1/eps)} n(pattern)`.
    pub hypotheses_hold: bool,
    /// `|S| >= 2^{-4 Delta log^2(1/eps)} N`, checked when the hypotheses hold.
    pub size_clause: Option<bool>,
}

pub(crate) fn eps_expr(eps: &BigRational) -> Expr {
    Expr::ratio(eps.numer().clone(), eps.denom().clone())
}

pub(crate) fn pairs(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// `edges / C(k, 2) <= eps`, with `k <= 1` always sparse.
pub(crate) fn density_at_most(edges: usize, k: usize, eps: &BigRational) -> bool {
    k <= 1 || BigRational::new(edges.into(), pairs(k).into()) <= *eps
}

fn degrees_within(c: &TwoColoring, s: &VertexSet, color: Color) -> Vec<usize> {
    (0..c.n())
        .map(|v| if s.contains(v) { s.count_in(c.neighbors(v, color)) } else { 0 })
        .collect()
}

/// Removes maximum-degree vertices (lowest index on ties) until the density
/// of `color` inside the set is at most `eps`.
pub(crate) fn peel_to_density(
    c: &TwoColoring,
    within: &VertexSet,
    color: Color,
    eps: &BigRational,
) -> (VertexSet, usize) {
    let mut s = within.clone();
    let mut deg = degrees_within(c, &s, color);
    let mut edges = deg.iter().sum::<usize>() / 2;
    while !density_at_most(edges, s.len(), eps) {
        let v = s
            .iter()
            .max_by(|&a, &b| deg[a].cmp(&deg[b]).then(b.cmp(&a)))
            .expect("nonempty");
        s.remove(v);
        edges -= deg[v];
        for w in c.neighbors(v, color).ones() {
            if s.contains(w) {
                deg[w] -= 1;
            }
        }
        deg[v] = 0;
    }
    (s, edges)
}

/// Dense-or-sparse split on all vertices of `c`.
pub fn find_sparse_subset(
    c: &TwoColoring,
    pattern: &Graph,
    eps: &BigRational,
    dense_color: Color,
    opts: &LemmaOptions,
) -> Result<SparseSubsetResult, LemmaError> {
    find_sparse_subset_within(c, &VertexSet::full(c.n()), pattern, eps, dense_color, opts)
}

pub fn find_sparse_subset_within(
    c: &TwoColoring,
    within: &VertexSet,
    pattern: &Graph,
    eps: &BigRational,
    dense_color: Color,
    opts: &LemmaOptions,
) -> Result<SparseSubsetResult, LemmaError> {
    if *eps <= BigRational::zero() || *eps > BigRational::new(1.into(), 8.into()) {
        return Err(LemmaError::Argument(format!("eps must lie in (0, 1/8], got {eps}")));
    }
    let n = within.len();
    let edges = within.iter().map(|v| within.count_in(c.neighbors(v, dense_color))).sum::<usize>() / 2;

    let search = if density_at_most(edges, n, eps) {
        None
    } else {
        Some(greedy_embed(c, pattern, dense_color, within, opts.embed_cap))
    };
    if let Some(EmbedOutcome::Found(e)) = search {
        return Ok(SparseSubsetResult {
            outcome: SparseOutcome::Embedding(e),
            hypotheses_hold: false,
            size_clause: None,
        });
    }
    let (s, s_edges) = match search {
        None => (within.clone(), edges),
        Some(_) => peel_to_density(c, within, dense_color, eps),
    };
    // Without a search the absence of the pattern is not established.
    let no_copy = match search {
        Some(EmbedOutcome::Exhausted { .. }) => true,
        Some(_) => false,
        None => matches!(
            greedy_embed(c, pattern, dense_color, within, opts.embed_cap),
            EmbedOutcome::Exhausted { .. }
        ),
    };
    let delta = pattern.max_degree() as u64;
    let log_inv_eps = eps_expr(eps).recip().log2();
    let loss = Expr::from(4 * delta) * log_inv_eps.pow(2);
    let big_enough = n > 0
        && pattern.n() > 0
        && decide::le(
            &(loss.clone() + Expr::from(pattern.n() as u64).log2()),
            &Expr::from(n as u64).log2(),
            opts.policy,
        )?
        .holds;
    let hypotheses_hold = no_copy && big_enough;
    let size_clause = if hypotheses_hold {
        Some(
            !s.is_empty()
                && decide::le(
                    &(Expr::from(n as u64).log2() - loss),
                    &Expr::from(s.len() as u64).log2(),
                    opts.policy,
                )?
                .holds,
        )
    } else {
        None
    };
    let k = s.len();
    Ok(SparseSubsetResult {
        outcome: SparseOutcome::Subset {
            s,
            edges: s_edges,
            pairs: pairs(k),
        },
        hypotheses_hold,
        size_clause,
    })
}
