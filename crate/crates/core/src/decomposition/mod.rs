//! Structural certificates for the two-graph theorem: degree-reduced cores,
//! deletion sets, low-degree cores and degree-profile colorings.

mod chromatic;
mod conditions;

pub use chromatic::{brute_force_chromatic, degree_profile_coloring, DegreeProfile, EXACT_CHROMATIC_LIMIT};
pub use conditions::{
    check_condition_i, check_condition_ii, check_main2_hypotheses, check_main_hypotheses,
    default_alpha_samples, Main2Certificates, Main2Check,
};

use serde::Serialize;
use thiserror::Error;

use crate::bounds::formulas::{low_degree_deletion_cap, sqrt_m};
use crate::bounds::main2_arith::max_admissible_r;
use crate::bounds::{decide, BoundsError, Expr, PrecisionPolicy};
use crate::bounds::logqty::interval_string;
use crate::graph::{Graph, GraphError, VertexSet};
use crate::report::{Clause, HypothesisReport};

#[derive(Debug, Error)]
pub enum DecompositionError {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph with a removed vertex set and the remaining core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Core {
    pub graph: Graph,
    pub removed: VertexSet,
    pub core: Graph,
    /// `back[i]` is the label in `graph` of core vertex `i`.
    pub back: Vec<usize>,
}

impl Core {
    pub fn from_removed(g: &Graph, removed: VertexSet) -> Self {
        let (core, back) = g.delete_vertices(&removed);
        Self {
            graph: g.clone(),
            removed,
            core,
            back,
        }
    }
}

/// Removes maximum-degree vertices one at a time (lowest index on ties,
/// degrees recomputed) while `more(removed_so_far, current_max_degree)`.
fn peel_while(g: &Graph, mut more: impl FnMut(usize, usize) -> bool) -> VertexSet {
    let n = g.n();
    let mut alive = VertexSet::full(n);
    let mut deg = g.degrees();
    let mut removed = VertexSet::new(n);
    loop {
        let top = alive.iter().max_by(|&a, &b| deg[a].cmp(&deg[b]).then(b.cmp(&a)));
        let Some(v) = top else { break };
        if !more(removed.len(), deg[v]) {
            break;
        }
        alive.remove(v);
        removed.insert(v);
        for w in g.neighbors(v).ones() {
            if alive.contains(w) {
                deg[w] -= 1;
            }
        }
    }
    removed
}

/// Deletes the `budget` highest-degree vertices, recomputing degrees after each
/// removal; the budget is clamped to `n(g)`.
pub fn peel_high_degree(g: &Graph, budget: usize) -> Core {
    let removed = peel_while(g, |k, _| k < budget);
    Core::from_removed(g, removed)
}

/// Peels until `Delta(H - S) < log(m)/4`, and reports whether
/// `|S| <= m^{3/2} - 27 sqrt(m)`.
pub fn find_low_degree_core(
    h: &Graph,
    m: u64,
    policy: PrecisionPolicy,
) -> Result<(VertexSet, HypothesisReport), DecompositionError> {
    if m < 27 {
        return Err(DecompositionError::Argument(format!("need m >= 27, got {m}")));
    }
    // Delta < log(m)/4 iff 2^{4 Delta} < m.
    let cap = max_admissible_r(m).expect("m >= 27 admits r = 0") as usize;
    let s = peel_while(h, |_, d| d > cap);
    let (rest, _) = h.delete_vertices(&s);
    let mut report = HypothesisReport::new("t5.core");
    report.push(
        Clause::new("main2.core.degree", "Delta(H - S) < log(m)/4", rest.max_degree() <= cap)
            .with("delta", rest.max_degree())
            .with("max_allowed", cap),
    );
    let d = decide::le(&Expr::from(s.len() as u64), &low_degree_deletion_cap(m), policy)?;
    report.push(
        Clause::new("main2.core.size", "|S| <= m^(3/2) - 27 sqrt(m)", d.holds)
            .with("s", s.len())
            .with("cap", interval_string(&d.rhs)),
    );
    Ok((s, report))
}

/// `Delta * alpha <= 2 sqrt(m)`.
pub(crate) fn degree_within(delta: usize, alpha: &Expr, m: u64, policy: PrecisionPolicy) -> Result<bool, BoundsError> {
    Ok(decide::le(&(Expr::from(delta as u64) * alpha), &(Expr::from(2u64) * sqrt_m(m)), policy)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peel_star_and_edgeless() {
        let c = peel_high_degree(&Graph::star(9), 1);
        assert_eq!(c.removed.to_vec(), vec![0]);
        assert_eq!(c.core.max_degree(), 0);
        let e = peel_high_degree(&Graph::empty(5), 3);
        assert_eq!(e.removed.len(), 3);
        assert_eq!(e.core.max_degree(), 0);
        assert_eq!(peel_high_degree(&Graph::complete(3), 10).removed.len(), 3);
    }

    #[test]
    fn peel_recomputes_degrees() {
        // Path 0-1-2-3-4: first 1 (deg 2, lowest), then 3.
        let c = peel_high_degree(&Graph::path(5), 2);
        assert_eq!(c.removed.to_vec(), vec![1, 3]);
        assert_eq!(c.back, vec![0, 2, 4]);
    }

    #[test]
    fn low_degree_core_examples() {
        let p = PrecisionPolicy::default();
        // At m = 27 the deletion cap (m - 27) sqrt(m) is zero.
        let (s, r) = find_low_degree_core(&Graph::complete(5), 27, p).unwrap();
        assert_eq!(s.len(), 3);
        assert!(r.clause("main2.core.degree").unwrap().pass);
        assert_eq!(r.first_failure().unwrap().id, "main2.core.size");
        assert!(find_low_degree_core(&Graph::complete(5), 28, p).unwrap().1.overall);
        let (s, _) = find_low_degree_core(&Graph::empty(4), 27, p).unwrap();
        assert!(s.is_empty());
        let (s, _) = find_low_degree_core(&Graph::path(6), 27, p).unwrap();
        assert_eq!(s.len(), 2);
        let (s, _) = find_low_degree_core(&Graph::path(6), 300, p).unwrap();
        assert!(s.is_empty());
        assert!(find_low_degree_core(&Graph::empty(1), 26, p).is_err());
    }
}
