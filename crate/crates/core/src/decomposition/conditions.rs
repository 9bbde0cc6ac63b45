use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{degree_profile_coloring, degree_within, find_low_degree_core, peel_high_degree, DecompositionError, DegreeProfile};
use crate::bounds::formulas::{alpha_max, base_budget, clique_order_cap, low_degree_cap, order_exponent, residual_exponent, sqrt_m};
use crate::bounds::logqty::interval_string;
use crate::bounds::main_arith::{le_clause, order_clause};
use crate::bounds::{bound_alon, decide, Expr, LogQty, PrecisionPolicy};
use crate::graph::{Graph, VertexSet};
use crate::report::{Clause, HypothesisReport};

fn range_nonempty(m: u64, policy: PrecisionPolicy) -> Result<bool, DecompositionError> {
    Ok(m >= 2 && decide::le(&Expr::from(27u64), &alpha_max(m), policy)?.holds)
}

/// `27`, eight geometric intermediates, and `log^3 m / 8`; empty when the
/// range `[27, log^3 m / 8]` is empty.
pub fn default_alpha_samples(m: u64, policy: PrecisionPolicy) -> Result<Vec<Expr>, DecompositionError> {
    if !range_nonempty(m, policy)? {
        return Ok(Vec::new());
    }
    let lo = Expr::from(27u64).log2();
    let hi = alpha_max(m).log2();
    let mut samples = vec![Expr::from(27u64)];
    for j in 1..=8u64 {
        samples.push((&lo + Expr::ratio(j, 9) * (&hi - &lo)).exp2());
    }
    samples.push(alpha_max(m));
    Ok(samples)
}

fn list(s: &VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Condition I at each sampled `alpha`: peeling `floor(alpha sqrt(m))`
/// vertices leaves maximum degree at most `2 sqrt(m) / alpha`.
pub fn check_condition_i(
    g1: &Graph,
    g2: &Graph,
    m: u64,
    samples: &[Expr],
    policy: PrecisionPolicy,
) -> Result<HypothesisReport, DecompositionError> {
    if m == 0 {
        return Err(DecompositionError::Argument("m must be positive".into()));
    }
    let mut report = HypothesisReport::new("t4.I");
    if !range_nonempty(m, policy)? {
        report.push(Clause::new("main.I.range", "27 <= alpha <= log^3 m / 8 has no solutions", true).with("m", m));
        report.note("the alpha range is empty, so condition I holds vacuously");
        if m < 27 {
            report.note("for m < 27 the bound follows from the clique fallback");
        }
        return Ok(report);
    }
    let top = alpha_max(m);
    for a in samples {
        let inside = decide::le(&Expr::from(27u64), a, policy)?.holds && decide::le(a, &top, policy)?.holds;
        if !inside {
            return Err(DecompositionError::Argument(format!("alpha sample {a} lies outside [27, log^3 m / 8]")));
        }
    }
    let root = sqrt_m(m);
    for (i, g) in [g1, g2].into_iter().enumerate() {
        for (j, a) in samples.iter().enumerate() {
            let budget = decide::floor(&(a * &root), policy)?.to_usize().unwrap_or(usize::MAX);
            let core = peel_high_degree(g, budget);
            let delta = core.core.max_degree();
            let pass = degree_within(delta, a, m, policy)?;
            let (enc, _) = decide::enclose(a, policy)?;
            report.push(
                Clause::new(
                    format!("main.I.G{}.alpha[{j}]", i + 1),
                    "|U_i| <= alpha sqrt(m) and Delta(G_i - U_i) <= 2 sqrt(m) / alpha",
                    pass,
                )
                .with("alpha", interval_string(&enc))
                .with("budget", budget.min(g.n()))
                .with("delta", delta)
                .with("removed", list(&core.removed)),
            );
        }
        let edges = g.edge_count() as u64;
        if edges <= m {
            // Peeling a max-degree vertex floor(alpha sqrt(m)) times and still
            // seeing degree > 2 sqrt(m)/alpha would account for more than 2m edges.
            report.push(
                Clause::new(
                    format!("main.I.G{}.analytic", i + 1),
                    "e(G_i) <= m, so peeling covers every alpha in the range",
                    true,
                )
                .with("edges", edges),
            );
        } else {
            report.note(format!("G{} has {edges} > m edges; condition I is checked at the samples only", i + 1));
        }
    }
    Ok(report)
}

/// `|V| <= m^{3/2}`, decided exactly as `|V|^2 <= m^3`.
fn deletion_clause(id: &str, v: &VertexSet, m: u64) -> Clause {
    let k = BigInt::from(v.len());
    let m = BigInt::from(m);
    Clause::new(id, "|V_i| <= m^(3/2)", &k * &k <= &m * &m * &m).with("size", v.len())
}

/// Condition II: deletion sets of size at most `m^{3/2}` and the supplied
/// bounds on `R(G1 - V1, G2)` and `R(G1, G2 - V2)` at most `2^{36 sqrt(m)}`.
#[allow(clippy::too_many_arguments)]
pub fn check_condition_ii(
    g1: &Graph,
    g2: &Graph,
    v1: &VertexSet,
    v2: &VertexSet,
    m: u64,
    evidence: [&LogQty; 2],
    policy: PrecisionPolicy,
) -> Result<HypothesisReport, DecompositionError> {
    g1.check_set(v1)?;
    g2.check_set(v2)?;
    let mut report = HypothesisReport::new("t4.II");
    report.push(deletion_clause("main.II.V1", v1, m));
    report.push(deletion_clause("main.II.V2", v2, m));
    let cap = residual_exponent(m);
    let texts = [
        ("main.II.R1", "log R(G1 - V1, G2) <= 36 sqrt(m)"),
        ("main.II.R2", "log R(G1, G2 - V2) <= 36 sqrt(m)"),
    ];
    for ((id, text), ev) in texts.into_iter().zip(evidence) {
        report.push(le_clause(id, text, ev.exponent(), &cap, policy)?);
    }
    Ok(report)
}

/// All hypotheses of the two-graph theorem on concrete inputs.
#[allow(clippy::too_many_arguments)]
pub fn check_main_hypotheses(
    g1: &Graph,
    g2: &Graph,
    m: u64,
    samples: &[Expr],
    v1: &VertexSet,
    v2: &VertexSet,
    evidence: [&LogQty; 2],
    policy: PrecisionPolicy,
) -> Result<HypothesisReport, DecompositionError> {
    if m == 0 {
        return Err(DecompositionError::Argument("m must be positive".into()));
    }
    let mut report = HypothesisReport::new("t4");
    for (i, g) in [g1, g2].into_iter().enumerate() {
        report.push(
            Clause::new(
                format!("main.isolated.G{}", i + 1),
                "G_i has no isolated vertices",
                g.n() > 0 && !g.has_isolated_vertex(),
            )
            .with("n", g.n()),
        );
    }
    let n = g1.n().max(g2.n()) as u64;
    report.push(order_clause("main.order", m, &Expr::from(n), policy)?.with("n", n));
    report.absorb(check_condition_i(g1, g2, m, samples, policy)?);
    report.absorb(check_condition_ii(g1, g2, v1, v2, m, evidence, policy)?);
    Ok(report)
}

/// Certificates for the two-graph theorem derived from the join hypotheses.
/// In `g2 = K_l + H` the clique occupies `0..l` and `H` is shifted by `l`.
#[derive(Clone, Debug, Serialize)]
pub struct Main2Certificates {
    pub g1: Graph,
    pub g2: Graph,
    pub u2: VertexSet,
    pub v1: VertexSet,
    pub v2: VertexSet,
    /// `S` in the labels of `H`.
    pub s: VertexSet,
    pub profile: DegreeProfile,
    /// Bounds on `R(G1 - V1, G2)` and `R(G1, G2 - V2)`.
    pub evidence: [LogQty; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct Main2Check {
    pub report: HypothesisReport,
    pub certificates: Option<Main2Certificates>,
}

/// Bound on `R(K_p, F)` for the residual graph `F = H - S`.
fn residual_bound(p: u64, f: &Graph, profile: &DegreeProfile, policy: PrecisionPolicy) -> Result<LogQty, DecompositionError> {
    let q = f.n() as u64;
    if q == 0 || p == 1 {
        return Ok(LogQty::one());
    }
    if f.edge_count() == 0 {
        // Any q vertices carry a red copy of the edgeless graph.
        return Ok(LogQty::from_value(Expr::from(q), policy)?);
    }
    Ok(bound_alon(&BigInt::from(q), p, profile.k as u64, profile.r as u64, policy)?)
}

/// Hypotheses of the join theorem for `G1 = K_p`, `G2 = K_l + H`.
pub fn check_main2_hypotheses(
    p: u64,
    l: u64,
    h: &Graph,
    m: u64,
    policy: PrecisionPolicy,
) -> Result<Main2Check, DecompositionError> {
    if m < 27 {
        return Err(DecompositionError::Argument(format!("need m >= 27, got {m}")));
    }
    if p == 0 {
        return Err(DecompositionError::Argument("p must be at least 1".into()));
    }
    let mut report = HypothesisReport::new("t5");
    report.push(le_clause(
        "main2.hyp.p",
        "p <= 27 sqrt(m) + 16 sqrt(m)/log^3 m",
        &Expr::from(p),
        &clique_order_cap(m),
        policy,
    )?);
    report.push(le_clause("main2.hyp.l", "l <= 27 sqrt(m)", &Expr::from(l), &base_budget(m), policy)?);
    report.push(
        le_clause(
            "main2.hyp.h_degree",
            "Delta(H) <= 16 sqrt(m)/log^3 m",
            &Expr::from(h.max_degree() as u64),
            &low_degree_cap(m),
            policy,
        )?
        .with("delta", h.max_degree()),
    );
    let order = if h.n() == 0 {
        Clause::new("main2.hyp.h_order", "n(H) <= 2^(106 sqrt(m)/log m)", true)
    } else {
        le_clause(
            "main2.hyp.h_order",
            "n(H) <= 2^(106 sqrt(m)/log m)",
            &Expr::from(h.n() as u64).log2(),
            &order_exponent(m),
            policy,
        )?
    };
    report.push(order.with("n", h.n()));
    let (s, core_report) = find_low_degree_core(h, m, policy)?;
    report.absorb(core_report);
    if !report.overall {
        return Ok(Main2Check { report, certificates: None });
    }

    let l_us = usize::try_from(l).map_err(|_| DecompositionError::Argument("l too large".into()))?;
    let p_us = usize::try_from(p).map_err(|_| DecompositionError::Argument("p too large".into()))?;
    let g1 = Graph::complete(p_us);
    let g2 = Graph::complete(l_us).join(h);
    let u2 = VertexSet::from_iter(g2.n(), 0..l_us);
    let v2 = u2.union(&VertexSet::from_iter(g2.n(), s.iter().map(|v| v + l_us)));
    let v1 = VertexSet::full(p_us);
    let (rest, _) = h.delete_vertices(&s);
    let profile = degree_profile_coloring(&rest);
    let r2 = residual_bound(p, &rest, &profile, policy)?;
    report.note("R(G1 - V1, G2) = 1 because V1 = V(K_p)");
    Ok(Main2Check {
        report,
        certificates: Some(Main2Certificates {
            g1,
            g2,
            u2,
            v1,
            v2,
            s,
            profile,
            evidence: [LogQty::one(), r2],
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn samples_span_the_range() {
        assert!(default_alpha_samples(63, pol()).unwrap().is_empty());
        let s = default_alpha_samples(10_000, pol()).unwrap();
        assert_eq!(s.len(), 10);
        for w in s.windows(2) {
            assert!(decide::lt(&w[0], &w[1], pol()).unwrap().holds);
        }
    }

    #[test]
    fn condition_i_passes_for_sparse_graphs() {
        let m = 400;
        let g = Graph::cycle(200);
        let samples = default_alpha_samples(m, pol()).unwrap();
        let r = check_condition_i(&g, &Graph::star(100), m, &samples, pol()).unwrap();
        assert!(r.overall, "{}", r.to_json());
        assert!(r.clause("main.I.G1.analytic").is_some());
        let bad = [Expr::from(20u64)];
        assert!(check_condition_i(&g, &g, m, &bad, pol()).is_err());
    }

    #[test]
    fn condition_ii_examples() {
        let g = Graph::complete(4);
        let all = VertexSet::full(4);
        let ok = LogQty::one();
        let r = check_condition_ii(&g, &g, &all, &all, 27, [&ok, &ok], pol()).unwrap();
        assert!(r.overall);
        let too_big = LogQty::from_exponent(Expr::from(37u64) * sqrt_m(27), pol()).unwrap();
        let r = check_condition_ii(&g, &g, &all, &all, 27, [&ok, &too_big], pol()).unwrap();
        assert_eq!(r.first_failure().unwrap().id, "main.II.R2");
        let r = check_condition_ii(&g, &g, &all, &all, 2, [&ok, &ok], pol()).unwrap();
        assert_eq!(r.first_failure().unwrap().id, "main.II.V1");
    }

    #[test]
    fn main2_small_instance_passes() {
        let r = check_main2_hypotheses(1, 0, &Graph::empty(1), 27, pol()).unwrap();
        assert!(r.report.overall, "{}", r.report.to_json());
        let c = r.certificates.unwrap();
        assert_eq!(c.g2.n(), 1);
        assert!(c.v2.is_empty());
    }

    #[test]
    fn main2_rejects_large_l() {
        let l = decide::ceil(&base_budget(100), pol()).unwrap().to_u64().unwrap() + 1;
        let r = check_main2_hypotheses(5, l, &Graph::empty(1), 100, pol()).unwrap();
        assert_eq!(r.report.first_failure().unwrap().id, "main2.hyp.l");
        assert!(r.certificates.is_none());
    }

    #[test]
    fn main2_certificates_satisfy_conditions() {
        // Delta(H) <= 16 sqrt(m)/log^3 m forces H edgeless at m = 10^4 but
        // allows degree 2 at m = 10^6.
        for (m, p, l, h) in [
            (10_000, 60, 40, Graph::empty(50)),
            (1_000_000, 10, 5, Graph::cycle(30)),
        ] {
            let chk = check_main2_hypotheses(p, l, &h, m, pol()).unwrap();
            assert!(chk.report.overall, "{}", chk.report.to_json());
            let c = chk.certificates.unwrap();
            let samples = default_alpha_samples(m, pol()).unwrap();
            let [e1, e2] = &c.evidence;
            let r = check_main_hypotheses(&c.g1, &c.g2, m, &samples, &c.v1, &c.v2, [e1, e2], pol()).unwrap();
            assert!(r.overall, "{}", r.to_json());
        }
    }
}
