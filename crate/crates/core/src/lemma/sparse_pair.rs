//! Pair extraction when one color is sparse: stepping with equal budgets where
//! the next vertex is the one with the fewest sparse-color neighbours.

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sparse::{density_at_most, eps_expr};
use super::{LemmaError, LemmaOptions};
use crate::bounds::{decide, Expr};
use crate::graph::{Color, MonoPair, TwoColoring, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SparsePairOutcome {
    Pair(MonoPair),
    /// Every attempt emptied the residual set before reaching `t`.
    Failure { best_x: usize, attempts: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparsePairResult {
    pub outcome: SparsePairOutcome,
    /// Index of the attempt that produced the pair.
    pub attempt: Option<u32>,
    /// `t >= 1/eps` and `N >= t eps^{-14 eps t}`.
    pub hypotheses_hold: bool,
    /// `|Y| >= eps^{14 eps t} N`, checked when the hypotheses hold.
    pub size_clause: Option<bool>,
}

enum Attempt {
    Pair(MonoPair),
    Stuck(usize),
}

fn step_once(
    c: &TwoColoring,
    within: &VertexSet,
    t: usize,
    sparse: Color,
    mut pick: impl FnMut(&VertexSet) -> usize,
) -> Attempt {
    let dense = sparse.other();
    let mut s = within.clone();
    let mut xs = [VertexSet::new(c.n()), VertexSet::new(c.n())];
    let (mut a, mut b) = (t, t);
    while !s.is_empty() {
        let v = pick(&s);
        s.remove(v);
        let dense_deg = s.count_in(c.neighbors(v, dense));
        let go_dense = dense_deg * (a + b) >= a * s.len();
        let color = if go_dense { dense } else { sparse };
        s = s.intersection(&VertexSet::from_bits(c.neighbors(v, color).clone()));
        let slot = usize::from(!go_dense);
        xs[slot].insert(v);
        let left = if go_dense {
            a -= 1;
            a
        } else {
            b -= 1;
            b
        };
        if left == 0 {
            let x = std::mem::replace(&mut xs[slot], VertexSet::new(0));
            return Attempt::Pair(MonoPair { x, y: s, color });
        }
    }
    Attempt::Stuck(xs[0].len().max(xs[1].len()))
}

fn min_sparse_degree(c: &TwoColoring, sparse: Color) -> impl FnMut(&VertexSet) -> usize + '_ {
    move |s: &VertexSet| {
        s.iter()
            .min_by_key(|&v| (s.count_in(c.neighbors(v, sparse)), v))
            .expect("nonempty")
    }
}

fn run_attempt(c: &TwoColoring, within: &VertexSet, t: usize, sparse: Color, seed: u64, r: u32) -> Attempt {
    if r == 0 {
        return step_once(c, within, t, sparse, min_sparse_degree(c, sparse));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(r));
    step_once(c, within, t, sparse, |s| {
        let k = rng.gen_range(0..s.len());
        s.iter().nth(k).expect("in range")
    })
}

pub fn find_pair_in_sparse(
    c: &TwoColoring,
    eps: &BigRational,
    t: usize,
    sparse_color: Color,
    opts: &LemmaOptions,
) -> Result<SparsePairResult, LemmaError> {
    find_pair_in_sparse_within(c, &VertexSet::full(c.n()), eps, t, sparse_color, opts)
}

pub fn find_pair_in_sparse_within(
    c: &TwoColoring,
    within: &VertexSet,
    eps: &BigRational,
    t: usize,
    sparse_color: Color,
    opts: &LemmaOptions,
) -> Result<SparsePairResult, LemmaError> {
    if *eps <= BigRational::zero() || *eps > BigRational::new(1.into(), 7.into()) {
        return Err(LemmaError::Argument(format!("eps must lie in (0, 1/7], got {eps}")));
    }
    if t == 0 {
        return Err(LemmaError::Argument("t must be positive".into()));
    }
    let n = within.len();
    let sparse_edges = within.iter().map(|v| within.count_in(c.neighbors(v, sparse_color))).sum::<usize>() / 2;
    if !density_at_most(sparse_edges, n, eps) {
        return Err(LemmaError::Precondition(format!(
            "{sparse_color} density {sparse_edges}/{} exceeds eps = {eps}",
            super::sparse::pairs(n)
        )));
    }

    let attempts = opts.restarts.max(1);
    let mut found = None;
    let mut best_x = 0;
    match run_attempt(c, within, t, sparse_color, opts.seed, 0) {
        Attempt::Pair(p) => found = Some((0, p)),
        Attempt::Stuck(k) => best_x = k,
    }
    if found.is_none() && attempts > 1 {
        let rest: Vec<Attempt> = (1..attempts)
            .into_par_iter()
            .map(|r| run_attempt(c, within, t, sparse_color, opts.seed, r))
            .collect();
        for (r, a) in (1..attempts).zip(rest) {
            match a {
                Attempt::Pair(p) => {
                    found = Some((r, p));
                    break;
                }
                Attempt::Stuck(k) => best_x = best_x.max(k),
            }
        }
    }

    let t_eps = BigRational::from_integer(t.into()) * eps;
    let log_inv_eps = eps_expr(eps).recip().log2();
    let loss = Expr::from(14u64) * eps_expr(&t_eps) * log_inv_eps;
    let log_n = Expr::from(n as u64).log2();
    let hypotheses_hold = t_eps >= BigRational::from_integer(1.into())
        && n > 0
        && decide::le(&(Expr::from(t as u64).log2() + loss.clone()), &log_n, opts.policy)?.holds;

    let Some((attempt, pair)) = found else {
        return Ok(SparsePairResult {
            outcome: SparsePairOutcome::Failure { best_x, attempts },
            attempt: None,
            hypotheses_hold,
            size_clause: None,
        });
    };
    debug_assert!(pair.validate(c));
    let size_clause = if hypotheses_hold {
        Some(
            !pair.y.is_empty()
                && decide::le(&(log_n - loss), &Expr::from(pair.y.len() as u64).log2(), opts.policy)?.holds,
        )
    } else {
        None
    };
    Ok(SparsePairResult {
        outcome: SparsePairOutcome::Pair(pair),
        attempt: Some(attempt),
        hypotheses_hold,
        size_clause,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_coloring;

    fn seventh() -> BigRational {
        BigRational::new(1.into(), 7.into())
    }

    fn pair_of(r: &SparsePairResult) -> &MonoPair {
        match &r.outcome {
            SparsePairOutcome::Pair(p) => p,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn all_red_k10() {
        let c = TwoColoring::uniform(10, Color::Red);
        let r = find_pair_in_sparse(&c, &seventh(), 7, Color::Blue, &LemmaOptions::default()).unwrap();
        let p = pair_of(&r);
        assert_eq!(p.color, Color::Red);
        assert_eq!((p.x.len(), p.y.len()), (7, 3));
        assert!(p.validate(&c));
        assert_eq!(r.attempt, Some(0));
    }

    #[test]
    fn one_blue_edge_in_k20() {
        let c = TwoColoring::from_fn(20, |u, v| if (u, v) == (3, 11) { Color::Blue } else { Color::Red });
        let r = find_pair_in_sparse(&c, &seventh(), 7, Color::Blue, &LemmaOptions::default()).unwrap();
        let p = pair_of(&r);
        assert!(p.x.len() >= 7);
        assert!(p.validate(&c));
    }

    #[test]
    fn dense_sparse_color_is_rejected() {
        let c = TwoColoring::uniform(6, Color::Blue);
        assert!(matches!(
            find_pair_in_sparse(&c, &seventh(), 2, Color::Blue, &LemmaOptions::default()),
            Err(LemmaError::Precondition(_))
        ));
        assert!(matches!(
            find_pair_in_sparse(&c, &BigRational::new(1.into(), 6.into()), 2, Color::Red, &LemmaOptions::default()),
            Err(LemmaError::Argument(_))
        ));
    }

    #[test]
    fn too_few_vertices_fails_honestly() {
        let c = TwoColoring::uniform(5, Color::Red);
        let r = find_pair_in_sparse(&c, &seventh(), 7, Color::Blue, &LemmaOptions::default()).unwrap();
        assert_eq!(r.outcome, SparsePairOutcome::Failure { best_x: 5, attempts: 8 });
    }

    #[test]
    fn restarts_agree_across_thread_counts() {
        let c = random_coloring(25, 0.04, 3);
        let opts = LemmaOptions { restarts: 6, ..LemmaOptions::default() };
        let eps = seventh();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| find_pair_in_sparse(&c, &eps, 12, Color::Blue, &opts))
        };
        match (run(1), run(4)) {
            (Ok(a), Ok(b)) => assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            other => panic!("{other:?}"),
        }
    }
}
