//! One amplification step: sparse subset inside `Y`, then a sparse-color pair
//! inside that subset.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::sparse::{find_sparse_subset_within, SparseOutcome};
use super::sparse_pair::{find_pair_in_sparse_within, SparsePairOutcome};
use super::{LemmaError, LemmaOptions};
use crate::bounds::formulas::{alpha_max, sqrt_m};
use crate::bounds::{decide, Expr};
use crate::decomposition::Core;
use crate::graph::{check_embedding, Color, Embedding, MonoPair, TwoColoring};
use crate::report::{Clause, HypothesisReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AmplifyOutcome {
    Amplified(MonoPair),
    /// The core was found inside `Y` and lifted through `X` to the whole pattern.
    PatternFound(Embedding),
    Failure { stage: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmplifyResult {
    pub outcome: AmplifyOutcome,
    /// `eps = 2^{-e}` with `e = ceil(3 alpha^{1/3})`.
    pub eps_log: u64,
    pub t: Option<usize>,
    pub sparse_size: Option<usize>,
    pub hypotheses: HypothesisReport,
    /// `|Y'| >= 2^{-120 alpha^{-1/3} sqrt(m)} |Y|`, checked when the hypotheses hold.
    pub size_clause: Option<bool>,
}

/// `ceil(3 alpha^{1/3})`: the largest `eps = 2^{-e}` not exceeding `2^{-3 alpha^{1/3}}`.
pub fn lemma4_eps(alpha: &Expr, opts: &LemmaOptions) -> Result<(u64, BigRational), LemmaError> {
    let e = decide::ceil(&(Expr::from(3u64) * alpha.cbrt()), opts.policy)?;
    let e = e
        .to_u64()
        .ok_or_else(|| LemmaError::Argument(format!("eps exponent {e} is out of range")))?;
    let den = BigInt::one() << e;
    Ok((e, BigRational::new(BigInt::one(), den)))
}

/// `ceil(2^{2 alpha^{1/3}} sqrt(m))`.
pub fn lemma4_t(alpha: &Expr, m: u64, opts: &LemmaOptions) -> Result<BigInt, LemmaError> {
    let t = (Expr::from(2u64) * alpha.cbrt()).exp2() * sqrt_m(m);
    Ok(decide::ceil(&t, opts.policy)?)
}

fn failure(stage: &str, reason: impl Into<String>) -> AmplifyOutcome {
    AmplifyOutcome::Failure {
        stage: stage.into(),
        reason: reason.into(),
    }
}

/// Places the core embedding and sends the removed vertices into `X`.
fn lift(core: &Core, core_hosts: &[usize], x: &[usize], color: Color) -> Option<Embedding> {
    let removed = core.removed.to_vec();
    if removed.len() > x.len() {
        return None;
    }
    let mut hosts = vec![usize::MAX; core.graph.n()];
    for (i, &h) in core_hosts.iter().enumerate() {
        hosts[core.back[i]] = h;
    }
    for (&v, &h) in removed.iter().zip(x) {
        hosts[v] = h;
    }
    Some(Embedding {
        pattern: core.graph.clone(),
        host_vertices: hosts,
        color,
    })
}

/// Amplifies a monochromatic pair at level `alpha`. `cores[0]` is the blue
/// pattern's core, `cores[1]` the red one; the core matching the pair's color
/// is the forbidden pattern inside `Y`.
pub fn amplify_pair(
    c: &TwoColoring,
    p: &MonoPair,
    alpha: &Expr,
    m: u64,
    cores: [&Core; 2],
    opts: &LemmaOptions,
) -> Result<AmplifyResult, LemmaError> {
    if decide::lt(alpha, &Expr::from(27u64), opts.policy)?.holds {
        return Err(LemmaError::Argument("alpha must be at least 27".into()));
    }
    if m == 0 {
        return Err(LemmaError::Argument("m must be positive".into()));
    }
    if p.x.is_empty() || !p.validate(c) {
        return Err(LemmaError::Argument("the input pair is not monochromatic".into()));
    }
    let sigma = p.color;
    let core = match sigma {
        Color::Blue => cores[0],
        Color::Red => cores[1],
    };
    let root = sqrt_m(m);
    let inv = alpha.cbrt().recip();
    let policy = opts.policy;

    let mut hyp = HypothesisReport::new("lemma4");
    let in_range = decide::le(alpha, &alpha_max(m), policy)?.holds;
    hyp.push(Clause::new("lemma4.alpha", "alpha <= log^3 m / 8", in_range));
    let x_ok = decide::le(&(alpha * &root), &Expr::from(p.x.len() as u64), policy)?.holds;
    hyp.push(Clause::new("lemma4.x", "|X| >= alpha sqrt(m)", x_ok).with("x", p.x.len()));
    let y_ok = !p.y.is_empty()
        && decide::le(
            &(Expr::from(125u64) * &inv * &root),
            &Expr::from(p.y.len() as u64).log2(),
            policy,
        )?
        .holds;
    hyp.push(Clause::new("lemma4.y", "|Y| >= 2^{125 alpha^{-1/3} sqrt(m)}", y_ok).with("y", p.y.len()));
    let delta = core.core.max_degree();
    let deg_ok = decide::le(&(Expr::from(delta as u64) * alpha), &(Expr::from(2u64) * &root), policy)?.holds;
    hyp.push(Clause::new("lemma4.core_degree", "Delta(G_i - U_i) <= 2 sqrt(m) / alpha", deg_ok).with("delta", delta));
    let u_ok = decide::le(&Expr::from(core.removed.len() as u64), &(alpha * &root), policy)?.holds;
    hyp.push(Clause::new("lemma4.core_removed", "|U_i| <= alpha sqrt(m)", u_ok).with("u", core.removed.len()));

    let (eps_log, eps) = lemma4_eps(alpha, opts)?;
    let t = lemma4_t(alpha, m, opts)?.to_usize().filter(|&t| t <= c.n());
    let mut result = AmplifyResult {
        outcome: failure("size", ""),
        eps_log,
        t,
        sparse_size: None,
        hypotheses: hyp,
        size_clause: None,
    };
    let Some(t) = t else {
        result.outcome = failure("size", format!("t = ceil(2^(2 alpha^(1/3)) sqrt(m)) exceeds N = {}", c.n()));
        return Ok(result);
    };
    if p.y.len() < t {
        result.outcome = failure("size", format!("|Y| = {} is below t = {t}", p.y.len()));
        return Ok(result);
    }

    let sparse = find_sparse_subset_within(c, &p.y, &core.core, &eps, sigma, opts)?;
    let s = match sparse.outcome {
        SparseOutcome::Subset { s, .. } => s,
        SparseOutcome::Embedding(e) => {
            let x = p.x.to_vec();
            result.outcome = match lift(core, &e.host_vertices, &x, sigma) {
                Some(full) if check_embedding(c, &full) => AmplifyOutcome::PatternFound(full),
                Some(_) => failure("lift", "lifted embedding failed validation"),
                None => failure(
                    "lift",
                    format!("core found in Y but |X| = {} < |U| = {}", x.len(), core.removed.len()),
                ),
            };
            return Ok(result);
        }
        SparseOutcome::Inconclusive { reason } => {
            result.outcome = failure("sparse", reason);
            return Ok(result);
        }
    };
    result.sparse_size = Some(s.len());
    let pair = find_pair_in_sparse_within(c, &s, &eps, t, sigma, opts)?;
    match pair.outcome {
        SparsePairOutcome::Pair(q) => {
            if !q.validate(c) {
                result.outcome = failure("pair", "sparse-pair output failed validation");
                return Ok(result);
            }
            if result.hypotheses.overall {
                let loss = Expr::from(120u64) * &inv * &root;
                let lhs = Expr::from(p.y.len() as u64).log2() - loss;
                result.size_clause = Some(
                    !q.y.is_empty() && decide::le(&lhs, &Expr::from(q.y.len() as u64).log2(), policy)?.holds,
                );
            }
            result.outcome = AmplifyOutcome::Amplified(q);
        }
        SparsePairOutcome::Failure { best_x, attempts } => {
            result.outcome = failure(
                "pair",
                format!("{attempts} stepping attempts reached at most |X| = {best_x} < t = {t}"),
            );
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::peel_high_degree;
    use crate::graph::{Graph, VertexSet};

    fn k2_core() -> Core {
        peel_high_degree(&Graph::complete(2), 0)
    }

    #[test]
    fn eps_at_27() {
        let (e, eps) = lemma4_eps(&Expr::from(27u64), &LemmaOptions::default()).unwrap();
        assert_eq!(e, 9);
        assert_eq!(eps, BigRational::new(1.into(), 512.into()));
        assert_eq!(lemma4_t(&Expr::from(27u64), 1, &LemmaOptions::default()).unwrap(), BigInt::from(64));
    }

    #[test]
    fn infeasible_size_is_reported() {
        let c = TwoColoring::uniform(40, Color::Red);
        let p = MonoPair {
            x: VertexSet::from_iter(40, [0]),
            y: VertexSet::from_iter(40, 1..40),
            color: Color::Red,
        };
        let core = k2_core();
        let r = amplify_pair(&c, &p, &Expr::from(27u64), 1, [&core, &core], &LemmaOptions::default()).unwrap();
        assert!(matches!(r.outcome, AmplifyOutcome::Failure { ref stage, .. } if stage == "size"));
    }

    #[test]
    fn red_pair_over_blue_interior_amplifies() {
        // X = {0} red to everything; Y = 1..200 is a blue clique.
        let c = TwoColoring::from_fn(200, |u, _| if u == 0 { Color::Red } else { Color::Blue });
        let p = MonoPair {
            x: VertexSet::from_iter(200, [0]),
            y: VertexSet::from_iter(200, 1..200),
            color: Color::Red,
        };
        let core = k2_core();
        let r = amplify_pair(&c, &p, &Expr::from(27u64), 1, [&core, &core], &LemmaOptions::default()).unwrap();
        match r.outcome {
            AmplifyOutcome::Amplified(q) => {
                assert!(q.validate(&c));
                assert_eq!(q.color, Color::Blue);
                assert!(q.x.len() >= 64);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn all_red_host_lifts_pattern() {
        let c = TwoColoring::uniform(200, Color::Red);
        let p = MonoPair {
            x: VertexSet::from_iter(200, [0]),
            y: VertexSet::from_iter(200, 1..200),
            color: Color::Red,
        };
        let core = peel_high_degree(&Graph::star(3), 1);
        let r = amplify_pair(&c, &p, &Expr::from(27u64), 1, [&core, &core], &LemmaOptions::default()).unwrap();
        match r.outcome {
            AmplifyOutcome::PatternFound(e) => {
                assert!(check_embedding(&c, &e));
                assert_eq!(e.host_vertices[0], 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn alpha_below_range_rejected() {
        let c = TwoColoring::uniform(4, Color::Red);
        let p = MonoPair {
            x: VertexSet::from_iter(4, [0]),
            y: VertexSet::from_iter(4, [1]),
            color: Color::Red,
        };
        let core = k2_core();
        assert!(amplify_pair(&c, &p, &Expr::from(26u64), 1, [&core, &core], &LemmaOptions::default()).is_err());
    }
}
