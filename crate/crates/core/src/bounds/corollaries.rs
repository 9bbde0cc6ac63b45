//! Parameter substitutions for the corollary bounds.

use num_bigint::BigInt;

use super::decide::{self, PrecisionPolicy};
use super::expr::Expr;
use super::formulas::{deletion_cap, main_exponent};
use super::logqty::{interval_string, LogQty};
use super::main2_arith::{verify_main2_arithmetic, OrderParam};
use super::main_arith::{le_clause, order_clause, verify_main_arithmetic};
use super::BoundsError;
use crate::report::{Clause, HypothesisReport};

/// Edge count up to which the clique fallback `2^{4m}` is used.
pub const FALLBACK_EDGES: u64 = 3600;

/// `R(G_1, G_2) <= 2^{250 sqrt(m)}` with `m = max(m_1, m_2)`, for graphs
/// without isolated vertices.
pub fn bound_corollary_edges(
    m1: u64,
    m2: u64,
    policy: PrecisionPolicy,
) -> Result<(LogQty, HypothesisReport), BoundsError> {
    let m = m1.max(m2);
    if m < 1 {
        return Err(BoundsError::Argument("need at least one edge".into()));
    }
    let mut report = HypothesisReport::new("c1");
    let four_m = Expr::from(4 * m);
    let main = main_exponent(m);
    let fallback = decide::le(&four_m, &main, policy)?;
    // Both sides collapse to points at perfect squares.
    let exact = fallback.lhs.is_exact() && fallback.rhs.is_exact();
    let route = if m <= FALLBACK_EDGES { "fallback" } else { "main" };
    report.push(
        Clause::new("c1.route", "m <= 60^2 uses 2^(4m) <= 2^(250 sqrt(m))", true)
            .with("route", route)
            .with("m", m)
            .with("4m <= 250 sqrt(m)", fallback.holds)
            .with("4m", interval_string(&fallback.lhs))
            .with("250 sqrt(m)", interval_string(&fallback.rhs))
            .with("exact", exact),
    );
    if route == "fallback" {
        report.push(
            Clause::new("c1.fallback", "4m <= 250 sqrt(m)", fallback.holds)
                .with("4m", interval_string(&fallback.lhs))
                .with("250 sqrt(m)", interval_string(&fallback.rhs))
                .with("exact", exact),
        );
    } else {
        // n <= 2m vertices for graphs without isolated vertices.
        let n = 2 * m;
        report.push(order_clause("c1.order", m, &Expr::from(n), policy)?);
        report.push(
            Clause::new(
                "c1.condition_I",
                "peeling alpha sqrt(m) highest-degree vertices leaves max degree <= 2 sqrt(m)/alpha",
                true,
            )
            .with("argument", "at most m edges"),
        );
        report.push(le_clause(
            "c1.condition_II",
            "n <= 2m <= m^(3/2), so V_i = V(G_i) leaves empty residual patterns",
            &Expr::from(n),
            &deletion_cap(m),
            policy,
        )?);
        report.absorb(verify_main_arithmetic(m, n, policy)?);
    }
    Ok((LogQty::from_exponent(main, policy)?, report))
}

/// `R(G_1, G_2) <= 2^{250 n^{1/3}}`, from `m = n^{2/3}`.
pub fn bound_corollary_vertices(n: u64, policy: PrecisionPolicy) -> Result<LogQty, BoundsError> {
    if n < 1 {
        return Err(BoundsError::Argument("need n >= 1".into()));
    }
    LogQty::from_exponent(Expr::from(250u64) * Expr::from(n).cbrt(), policy)
}

/// `R(K_p, K_l + q K_1) <= 2^{250 sqrt(m)}`.
pub fn bound_corollary_join(
    m: u64,
    p: u64,
    l: u64,
    q: &OrderParam,
    policy: PrecisionPolicy,
) -> Result<(LogQty, HypothesisReport), BoundsError> {
    if m < 27 {
        return Err(BoundsError::Argument(format!("need m >= 27, got {m}")));
    }
    let mut report = HypothesisReport::new("c3");
    // H = q K_1 is edgeless: max degree 0, S empty, r = 0.
    report.absorb(verify_main2_arithmetic(m, p, l, q, 1, 0, policy)?);
    Ok((LogQty::from_exponent(main_exponent(m), policy)?, report))
}

/// Exponent `53 p / (27 log(p/27))` capping `q`.
pub fn bipartite_q_exponent(p: u64) -> Expr {
    Expr::from(53 * p) / (Expr::from(27u64) * Expr::ratio(p, 27u64).log2())
}

/// `R(K_p, K_{p,q}) <= R(K_p, K_p + q K_1) <= 2^{250 p / 27}`.
pub fn bound_corollary_bipartite(
    p: u64,
    q: &OrderParam,
    policy: PrecisionPolicy,
) -> Result<(LogQty, HypothesisReport), BoundsError> {
    if p <= 27 {
        return Err(BoundsError::Domain(format!(
            "log(p/27) must be positive; need p > 27, got p = {p}"
        )));
    }
    let mut report = HypothesisReport::new("c4");
    let threshold = bipartite_q_exponent(p);
    let (t_enc, _) = decide::enclose(&threshold, policy)?;
    let text = "q <= 2^(53p/(27 log(p/27)))";
    let q_clause = match q {
        OrderParam::Value(v) if v.sign() != num_bigint::Sign::Plus => Clause::new("c4.q", text, true),
        OrderParam::Value(v) => le_clause("c4.q", text, &Expr::from(v.clone()).log2(), &threshold, policy)?,
        OrderParam::Max => Clause::new("c4.q", text, true).with("q", "at the cap"),
    };
    report.push(q_clause.with("q exponent cap", interval_string(&t_enc)));

    // m = (p/27)^2 makes 27 sqrt(m) = p and 106 sqrt(m)/log m the q cap above.
    let m_num = BigInt::from(p) * BigInt::from(p);
    let m_den = BigInt::from(729u64);
    let m_ok = m_num >= BigInt::from(27u64) * &m_den;
    report.push(
        Clause::new("c4.m", "m = (p/27)^2 >= 27", m_ok)
            .with("m", format!("{m_num}/{m_den}")),
    );
    let m_expr = Expr::ratio(m_num.clone(), m_den.clone());
    let (same, exact) = decide::consistent(&(Expr::from(27u64) * m_expr.sqrt()), &Expr::from(p), policy)?;
    report.push(Clause::new("c4.l", "l = p = 27 sqrt(m)", same).with("exact", exact));
    let cap = Expr::from(106u64) * m_expr.sqrt() / m_expr.log2();
    let (same, _) = decide::consistent(&cap, &threshold, policy)?;
    report.push(Clause::new(
        "c4.q_cap",
        "106 sqrt(m)/log m = 53p/(27 log(p/27))",
        same,
    ));
    let exponent = Expr::ratio(250 * p, 27u64);
    let (e_enc, _) = decide::enclose(&exponent, policy)?;
    let (s_enc, _) = decide::enclose(&(Expr::from(250u64) * m_expr.sqrt()), policy)?;
    report.push(
        Clause::new("c4.exponent", "250 sqrt(m) = 250p/27", e_enc.overlaps(&s_enc))
            .with("exponent", interval_string(&e_enc)),
    );
    if !m_ok {
        report.note("m = (p/27)^2 is below 27, so the join bound is not available for this p");
    }
    if !(m_num.clone() % &m_den == BigInt::from(0)) {
        report.note("m = (p/27)^2 is not an integer; the thresholds are evaluated at the real value");
    }
    Ok((LogQty::from_exponent(exponent, policy)?, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::dyadic::Dyadic;

    fn pol() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn fallback_boundary_is_exact() {
        let (b, r) = bound_corollary_edges(3600, 12, pol()).unwrap();
        assert!(r.overall);
        let c = r.clause("c1.fallback").unwrap();
        assert_eq!(c.evidence["exact"], "true");
        assert_eq!(c.evidence["4m"], "14400");
        assert_eq!(c.evidence["250 sqrt(m)"], "15000");
        assert_eq!(b.lo(), &Dyadic::from_int(15000));
    }

    #[test]
    fn main_route_above_3600() {
        let (_, r) = bound_corollary_edges(3601, 1, pol()).unwrap();
        assert_eq!(r.clause("c1.route").unwrap().evidence["route"], "main");
        assert!(r.clause("c1.fallback").is_none());
        assert!(r.overall, "{:?}", r.first_failure());
    }

    #[test]
    fn small_edge_counts() {
        let (b, r) = bound_corollary_edges(1, 1, pol()).unwrap();
        assert!(r.overall);
        assert_eq!(b.lo(), &Dyadic::from_int(250));
    }

    #[test]
    fn vertex_corollary() {
        assert_eq!(bound_corollary_vertices(8, pol()).unwrap().lo(), &Dyadic::from_int(500));
        assert_eq!(bound_corollary_vertices(27, pol()).unwrap().hi(), &Dyadic::from_int(750));
        let b = bound_corollary_vertices(10, pol()).unwrap();
        assert!(b.lo().to_f64() >= 538.6 && b.hi().to_f64() <= 538.7);
    }

    #[test]
    fn join_corollary() {
        let (_, r) = bound_corollary_join(27, 1, 0, &1u64.into(), pol()).unwrap();
        assert!(r.overall);
    }

    #[test]
    fn bipartite_threshold_at_54() {
        let (b, r) = bound_corollary_bipartite(54, &1u64.into(), pol()).unwrap();
        assert_eq!(r.clause("c4.q").unwrap().evidence["q exponent cap"], "106");
        assert!(!r.clause("c4.m").unwrap().pass);
        assert_eq!(b.lo(), &Dyadic::from_int(500));
        assert!(matches!(bound_corollary_bipartite(27, &1u64.into(), pol()), Err(BoundsError::Domain(_))));
        let (_, r) = bound_corollary_bipartite(162, &1u64.into(), pol()).unwrap();
        assert!(r.overall, "{:?}", r.first_failure());
    }
}
