//! Arithmetic behind the general two-graph bound `R(G_1, G_2) <= 2^{250 sqrt(m)}`:
//! the order precondition, the clique fallback, the base pair size, the
//! amplification schedule, and the final-stage inequalities.

use super::alpha::{alpha_sequence, inv_cbrt, AlphaTrace, Y_FLOOR, Y_LOSS, Y_START};
use super::decide::{self, PrecisionPolicy};
use super::expr::Expr;
use super::formulas::{alpha_max, base_budget, log_m, main_exponent, order_exponent, sqrt_m};
use super::logqty::interval_string;
use super::BoundsError;
use crate::report::{Clause, HypothesisReport};

/// Coefficient of `sqrt(m)` in the base pair clique budget `k = l = 27 sqrt(m)`.
pub const BASE_BUDGET: u64 = 27;
/// Coefficient of `sqrt(m)` in the top-level exponent.
pub const MAIN_COEFFICIENT: u64 = 250;
/// Entry requirement of the amplification lemma: `|Y| >= 2^{125 alpha^{-1/3} sqrt(m)}`.
pub const ENTRY_COEFFICIENT: u64 = 125;

fn decided(
    id: &str,
    text: &str,
    lhs: &Expr,
    rhs: &Expr,
    strict: bool,
    policy: PrecisionPolicy,
) -> Result<Clause, BoundsError> {
    let d = if strict {
        decide::lt(lhs, rhs, policy)?
    } else {
        decide::le(lhs, rhs, policy)?
    };
    Ok(Clause::new(id, text, d.holds)
        .with("lhs", interval_string(&d.lhs))
        .with("rhs", interval_string(&d.rhs))
        .with("precision", d.precision))
}

pub(crate) fn le_clause(
    id: &str,
    text: &str,
    lhs: &Expr,
    rhs: &Expr,
    policy: PrecisionPolicy,
) -> Result<Clause, BoundsError> {
    decided(id, text, lhs, rhs, false, policy)
}

pub(crate) fn lt_clause(
    id: &str,
    text: &str,
    lhs: &Expr,
    rhs: &Expr,
    policy: PrecisionPolicy,
) -> Result<Clause, BoundsError> {
    decided(id, text, lhs, rhs, true, policy)
}

/// Clause for `2^{106 sqrt(m) / log m} >= n - 27 sqrt(m)`.
pub fn order_clause(id: &str, m: u64, n: &Expr, policy: PrecisionPolicy) -> Result<Clause, BoundsError> {
    let text = "2^(106 sqrt(m)/log m) >= n - 27 sqrt(m)";
    if m == 1 {
        return Ok(Clause::new(id, text, true).with("exponent", "unbounded (log m = 0)"));
    }
    let excess = n - base_budget(m);
    let nonpositive = decide::le(&excess, &Expr::from(0u64), policy)?;
    if nonpositive.holds {
        return Ok(Clause::new(id, text, true).with("n - 27 sqrt(m)", interval_string(&nonpositive.lhs)));
    }
    le_clause(id, text, &excess.log2(), &order_exponent(m), policy)
}

/// Verifies the arithmetic of the two-graph bound for edge parameter `m` and
/// maximum pattern order `n`.
pub fn verify_main_arithmetic(
    m: u64,
    n: u64,
    policy: PrecisionPolicy,
) -> Result<HypothesisReport, BoundsError> {
    if m < 1 || n < 1 {
        return Err(BoundsError::Argument("need m >= 1 and n >= 1".into()));
    }
    let mut report = HypothesisReport::new("t4");
    let root = sqrt_m(m);
    let n_e = Expr::from(n);

    report.push(order_clause("main.order", m, &n_e, policy)?);

    // Small orders fall back to the clique bound 2^{2n} <= 2^{250 sqrt(m)}.
    let small = decide::lt(&n_e, &(Expr::from(125u64) * &root), policy)?;
    let fallback = if small.holds {
        let c = le_clause(
            "main.fallback",
            "n < 125 sqrt(m) implies 2n <= 250 sqrt(m)",
            &(Expr::from(2u64) * &n_e),
            &main_exponent(m),
            policy,
        )?;
        c.with("route", "clique bound")
    } else {
        Clause::new("main.fallback", "n >= 125 sqrt(m): pair extraction route", true)
            .with("route", "pair extraction")
            .with("125 sqrt(m)", interval_string(&small.rhs))
    };
    report.push(fallback);

    // 4^{-27 sqrt(m)} 2^{250 sqrt(m)} = 2^{196 sqrt(m)}: coefficients first, then enclosures.
    let lhs = main_exponent(m) - Expr::from(2 * BASE_BUDGET) * &root;
    let rhs = Expr::from(Y_START) * &root;
    let coefficients_agree = MAIN_COEFFICIENT - 2 * BASE_BUDGET == Y_START;
    let (overlap, exact) = decide::consistent(&lhs, &rhs, policy)?;
    let (l_enc, _) = decide::enclose(&lhs, policy)?;
    let (r_enc, _) = decide::enclose(&rhs, policy)?;
    report.push(
        Clause::new(
            "main.base_pair",
            "-2*27 sqrt(m) + 250 sqrt(m) = 196 sqrt(m)",
            coefficients_agree && overlap,
        )
        .with("lhs", interval_string(&l_enc))
        .with("rhs", interval_string(&r_enc))
        .with("exact", exact),
    );

    if m < 27 {
        report.note("m < 27: the amplification schedule is not defined; only the fallback and base pair arithmetic apply");
        return Ok(report);
    }
    let trace = alpha_sequence(m, policy)?;
    push_trace_clauses(&mut report, &trace, policy)?;
    Ok(report)
}

fn push_trace_clauses(
    report: &mut HypothesisReport,
    trace: &AlphaTrace,
    policy: PrecisionPolicy,
) -> Result<(), BoundsError> {
    let m = trace.m;
    let root = sqrt_m(m);
    let first = &trace.stages[0];
    report.push(
        Clause::new("main.alpha.start", "alpha_1 = 27", first.alpha_enclosure.is_exact()
            && first.alpha_enclosure.lo() == &super::dyadic::Dyadic::from_int(27))
            .with("alpha_1", interval_string(&first.alpha_enclosure)),
    );
    let growth = Expr::ratio(64, 27);
    for w in trace.stages.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        report.push(le_clause(
            &format!("main.alpha.growth[{}]", a.index),
            "alpha_{i+1} >= (4/3)^3 alpha_i",
            &(&growth * &a.alpha),
            &b.alpha,
            policy,
        )?);
    }
    let four_thirds = Expr::ratio(4, 3);
    let floor = Expr::from(Y_FLOOR);
    for s in &trace.stages {
        report.push(le_clause(
            &format!("main.alpha.partial_sum[{}]", s.index),
            "sum_{j<=i} alpha_j^(-1/3) <= 4/3",
            &s.partial_sum,
            &four_thirds,
            policy,
        )?);
        report.push(
            le_clause(
                &format!("main.y_floor[{}]", s.index),
                "Y exponent >= 36 sqrt(m)",
                &floor,
                &s.y_coefficient,
                policy,
            )?
            .with("y_exponent", interval_string(&s.y_exponent_enclosure)),
        );
    }
    // Every amplification step at alpha_i < log^3 m / 8 needs the entry size
    // and the rate inequality 42 c^2 <= 48 * 2^c with c = alpha^{1/3}.
    let applied = &trace.stages[..trace.stages.len() - 1];
    for s in applied {
        push_step_clauses(report, &format!("[{}]", s.index), &s.alpha, &s.y_coefficient, policy)?;
    }

    if !trace.range_nonempty(policy)? {
        report.push(
            Clause::new(
                "main.final.range",
                "alpha range [27, log^3 m / 8] is empty; no amplification step is taken",
                true,
            )
            .with("log^3 m / 8", interval_string(&trace.threshold_enclosure)),
        );
        return Ok(());
    }

    let last = trace.final_stage();
    let t = alpha_max(m);
    push_step_clauses(report, "[final]", &t, &last.y_coefficient, policy)?;
    let after = &last.y_coefficient - Expr::from(Y_LOSS) * inv_cbrt(&t);
    report.push(le_clause(
        "main.final.y_floor",
        "final Y exponent after the last step >= 36 sqrt(m)",
        &floor,
        &after,
        policy,
    )?);
    // 2^{2 alpha^{1/3}} sqrt(m) = m^{3/2} at alpha = log^3 m / 8, i.e.
    // alpha^{1/3} = log(m) / 2.
    let (overlap, exact) = decide::consistent(&t.cbrt(), &(log_m(m) / 2u64), policy)?;
    let (x_enc, _) = decide::enclose(&(Expr::from(2u64) * t.cbrt() + log_m(m) / 2u64), policy)?;
    let (target, _) = decide::enclose(&(Expr::ratio(3, 2) * log_m(m)), policy)?;
    report.push(
        Clause::new(
            "main.final.x_size",
            "2^(2 alpha^(1/3)) sqrt(m) = m^(3/2) at alpha = log^3 m / 8",
            overlap,
        )
        .with("log2 |X'|", interval_string(&x_enc))
        .with("log2 m^(3/2)", interval_string(&target))
        .with("exact", exact),
    );
    report.push(le_clause(
        "main.final.t_cap",
        "m^(3/2) <= 2^(10 sqrt(m)/log m)",
        &(Expr::ratio(3, 2) * log_m(m)),
        &(Expr::from(10u64) * &root / log_m(m)),
        policy,
    )?);
    Ok(())
}

fn push_step_clauses(
    report: &mut HypothesisReport,
    tag: &str,
    alpha: &Expr,
    y_coefficient: &Expr,
    policy: PrecisionPolicy,
) -> Result<(), BoundsError> {
    report.push(le_clause(
        &format!("main.lemma4.entry{tag}"),
        "Y exponent >= 125 alpha^(-1/3) sqrt(m)",
        &(Expr::from(ENTRY_COEFFICIENT) * inv_cbrt(alpha)),
        y_coefficient,
        policy,
    )?);
    let c = alpha.cbrt();
    report.push(le_clause(
        &format!("main.lemma4.rate{tag}"),
        "42 alpha^(1/3) 2^(-alpha^(1/3)) <= 48 alpha^(-1/3)",
        &(Expr::from(42u64) * c.pow(2)),
        &(Expr::from(48u64) * c.exp2()),
        policy,
    )?);
    Ok(())
}
