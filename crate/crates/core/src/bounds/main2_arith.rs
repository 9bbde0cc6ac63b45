//! Inequality chains behind the bound for `R(K_p, K_l + H)`, in both the
//! edgeless branch (`r = 0`) and the bounded-degree branch (`r >= 1`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::decide::{self, PrecisionPolicy};
use super::expr::Expr;
use super::formulas::{
    alon_alpha, alon_exponent_log_h, alon_power, base_budget, clique_order_cap, log_m,
    order_exponent, residual_exponent, sqrt_m,
};
use super::main_arith::{le_clause, lt_clause};
use super::BoundsError;
use crate::report::{Clause, HypothesisReport};

/// The order `q = n(H - S)`, either given exactly or as the largest value the
/// hypotheses admit, `q = floor(2^{106 sqrt(m)/log m})`, which is kept in log
/// space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderParam {
    Value(BigInt),
    Max,
}

impl OrderParam {
    /// Upper bound on `log2 q`; `None` when `q = 0`.
    pub fn log2_upper(&self, m: u64) -> Option<Expr> {
        match self {
            OrderParam::Value(q) if q.is_zero() => None,
            OrderParam::Value(q) => Some(Expr::from(q.clone()).log2()),
            OrderParam::Max => Some(order_exponent(m)),
        }
    }

    fn describe(&self) -> String {
        match self {
            OrderParam::Value(q) => q.to_string(),
            OrderParam::Max => "floor(2^(106 sqrt(m)/log m))".into(),
        }
    }
}

impl From<u64> for OrderParam {
    fn from(q: u64) -> Self {
        OrderParam::Value(BigInt::from(q))
    }
}

/// Largest `p` with `p <= 27 sqrt(m) + 16 sqrt(m)/log^3 m`.
pub fn max_admissible_p(m: u64, policy: PrecisionPolicy) -> Result<u64, BoundsError> {
    let f = decide::floor(&clique_order_cap(m), policy)?;
    u64::try_from(f).map_err(|_| BoundsError::Argument("p cap exceeds u64".into()))
}

/// Largest `r` with `2^{4r} < m`, i.e. `r < log(m)/4`; `None` if no `r >= 0` qualifies.
pub fn max_admissible_r(m: u64) -> Option<u64> {
    let mut r = None;
    let mut t: u128 = 1;
    let mut i = 0;
    while t < m as u128 {
        r = Some(i);
        i += 1;
        t <<= 4;
    }
    r
}

/// Verifies the chain for the given parameters. `k` is the chromatic number of
/// `H - S` and `r` its maximum degree; both are ignored when `r = 0`.
pub fn verify_main2_arithmetic(
    m: u64,
    p: u64,
    l: u64,
    q: &OrderParam,
    k: u64,
    r: u64,
    policy: PrecisionPolicy,
) -> Result<HypothesisReport, BoundsError> {
    if m < 27 {
        return Err(BoundsError::Argument(format!("need m >= 27, got {m}")));
    }
    if p < 1 {
        return Err(BoundsError::Argument("clique order p must be at least 1".into()));
    }
    let mut report = HypothesisReport::new("t5");
    let root = sqrt_m(m);
    let p_e = Expr::from(p);
    report.push(le_clause(
        "main2.p",
        "p <= 27 sqrt(m) + 16 sqrt(m)/log^3 m",
        &p_e,
        &clique_order_cap(m),
        policy,
    )?);
    report.push(le_clause("main2.l", "l <= 27 sqrt(m)", &Expr::from(l), &base_budget(m), policy)?);
    let log_q = q.log2_upper(m);
    let q_clause = match (&log_q, q) {
        (_, OrderParam::Max) => Clause::new("main2.q", "q <= 2^(106 sqrt(m)/log m)", true)
            .with("q", q.describe()),
        (None, _) => Clause::new("main2.q", "q <= 2^(106 sqrt(m)/log m)", true).with("q", 0),
        (Some(lq), _) => le_clause(
            "main2.q",
            "q <= 2^(106 sqrt(m)/log m)",
            lq,
            &order_exponent(m),
            policy,
        )?
        .with("q", q.describe()),
    };
    report.push(q_clause);
    report.push(le_clause(
        "main2.p40",
        "p <= 40 sqrt(m)",
        &p_e,
        &(Expr::from(40u64) * &root),
        policy,
    )?);

    if r == 0 {
        edgeless_branch(&mut report, m, p, &log_q, policy)?;
    } else {
        degree_branch(&mut report, m, p, &log_q, k, r, policy)?;
    }
    report.note(
        "q is taken as n(H - S) from the inputs; the substitution \
         (27 sqrt(m) + 2^(106 sqrt(m)/log m) - m^(3/2))^r in the written chain is not used",
    );
    Ok(report)
}

fn edgeless_branch(
    report: &mut HypothesisReport,
    m: u64,
    p: u64,
    log_q: &Option<Expr>,
    policy: PrecisionPolicy,
) -> Result<(), BoundsError> {
    let root = sqrt_m(m);
    let target = residual_exponent(m);
    let p_e = Expr::from(p);
    // R(H - S + e, K_p) <= 100 p q by the k = 2, r = 1 case.
    let main = match log_q {
        None => lt_clause(
            "main2.r0.bound",
            "q = 0: R(H - S, K_p) = 1 < 2^(36 sqrt(m))",
            &Expr::from(0u64),
            &target,
            policy,
        )?,
        Some(lq) => lt_clause(
            "main2.r0.bound",
            "100 p q < 2^(36 sqrt(m))",
            &((Expr::from(100u64) * &p_e).log2() + lq),
            &target,
            policy,
        )?,
    };
    report.push(main);
    report.push(lt_clause(
        "main2.r0.step1",
        "100 (27 sqrt(m) + 16 sqrt(m)/log^3 m) < 4000 sqrt(m)",
        &(Expr::from(100u64) * clique_order_cap(m)),
        &(Expr::from(4000u64) * &root),
        policy,
    )?);
    report.push(le_clause(
        "main2.r0.step2",
        "log(4000 sqrt(m)) <= 13 + log(m)/2",
        &(Expr::from(4000u64) * &root).log2(),
        &(Expr::from(13u64) + log_m(m) / 2u64),
        policy,
    )?);
    report.push(lt_clause(
        "main2.r0.step3",
        "13 + log(m)/2 + 106 sqrt(m)/log m < 36 sqrt(m)",
        &(Expr::from(13u64) + log_m(m) / 2u64 + order_exponent(m)),
        &target,
        policy,
    )?);
    Ok(())
}

fn degree_branch(
    report: &mut HypothesisReport,
    m: u64,
    p: u64,
    log_q: &Option<Expr>,
    k: u64,
    r: u64,
    policy: PrecisionPolicy,
) -> Result<(), BoundsError> {
    let pow = BigInt::one() << (4 * r as usize);
    let admissible = pow < BigInt::from(m);
    report.push(
        Clause::new("main2.r.admissible", "r < log(m)/4, i.e. 2^(4r) < m", admissible)
            .with("r", r)
            .with("2^(4r)", &pow),
    );
    let k_ok = (2..=r + 1).contains(&k);
    report.push(
        Clause::new("main2.r.k", "2 <= k <= r + 1", k_ok)
            .with("k", k)
            .with("r", r),
    );
    let Some(log_q) = log_q.as_ref().filter(|_| admissible && k_ok) else {
        report.note("chain not evaluated: preconditions on r, k or q rejected the input");
        return Ok(());
    };
    if !(p >= 2) {
        report.push(Clause::new("main2.r.p", "p >= 2 for the bounded-degree bound", false));
        return Ok(());
    }

    let root = sqrt_m(m);
    let target = residual_exponent(m);
    let p_e = Expr::from(p);
    let ln_p = p_e.ln();
    let rr = Expr::from(r * r + r);
    let half_rr = Expr::ratio(r * r + r, 2u64);
    let r_e = Expr::from(r);

    // The exponent of 100p/ln p is at most (r^2 + r)/2 for every admissible k.
    let power = alon_power(k, r);
    report.push(le_clause(
        "main2.r.power",
        "(2r - k + 2)(k - 1)/2 <= (r^2 + r)/2",
        &power,
        &half_rr,
        policy,
    )?);
    // (ln p)^alpha <= ln p: holds when alpha = 1, else needs ln p >= 1.
    let alpha = alon_alpha(k, r);
    let ln_factor = if alpha == 1 {
        Clause::new("main2.r.ln_factor", "(ln p)^alpha(k,r) <= ln p", true).with("alpha", 1)
    } else {
        le_clause("main2.r.ln_factor", "(ln p)^alpha(k,r) <= ln p", &Expr::from(1u64), &ln_p, policy)?
            .with("alpha", 0)
    };
    report.push(ln_factor);
    // y = (ln p)^{-(r^2 + r - 2)/2} <= 1.
    let y_exp = Expr::ratio(r * r + r - 2, 2u64);
    let y = if r == 1 {
        Clause::new("main2.r.y", "y = 1/(ln p)^((r^2+r-2)/2) <= 1", true).with("y", 1)
    } else {
        let log_y = -(y_exp * ln_p.log2());
        le_clause("main2.r.y", "y = 1/(ln p)^((r^2+r-2)/2) <= 1", &log_y, &Expr::from(0u64), policy)?
    };
    report.push(y);
    report.push(le_clause(
        "main2.r.p_cap",
        "100 p <= 4000 sqrt(m)",
        &(Expr::from(100u64) * &p_e),
        &(Expr::from(4000u64) * &root),
        policy,
    )?);

    let log4000 = (Expr::from(4000u64) * &root).log2();
    let chain_lhs = &half_rr * &log4000 + Expr::from(106u64) * &root / log_m(m) * &r_e;
    report.push(lt_clause(
        "main2.r.main",
        "(r^2+r)/2 log(4000 sqrt(m)) + 106 r sqrt(m)/log m < 36 sqrt(m)",
        &chain_lhs,
        &target,
        policy,
    )?);

    // Stepwise form of the same estimate.
    report.push(lt_clause(
        "main2.r.step1",
        "log 4000 < 12",
        &Expr::from(4000u64).log2(),
        &Expr::from(12u64),
        policy,
    )?);
    let quarter = log_m(m) / 4u64;
    let step2_lhs = Expr::from(6u64) * &rr
        + &half_rr * root.log2()
        + Expr::from(106u64) * &root / log_m(m) * &r_e;
    let step2_rhs = Expr::from(12u64) * quarter.pow(2)
        + quarter.pow(2) * root.log2()
        + Expr::ratio(53, 2) * &root;
    report.push(le_clause(
        "main2.r.step2",
        "6(r^2+r) + (r^2+r)/2 log sqrt(m) + 106 r sqrt(m)/log m <= 12 log^2 m^(1/4) + log^2 m^(1/4) log sqrt(m) + 26.5 sqrt(m)",
        &step2_lhs,
        &step2_rhs,
        policy,
    )?);
    let step3 = Expr::ratio(12, 16) * log_m(m).pow(2) + Expr::ratio(1, 32) * log_m(m).pow(3);
    let (overlap, exact) = decide::consistent(&(&step2_rhs - Expr::ratio(53, 2) * &root), &step3, policy)?;
    report.push(
        Clause::new(
            "main2.r.step3",
            "12 log^2 m^(1/4) + log^2 m^(1/4) log sqrt(m) = (12/16) log^2 m + (1/32) log^3 m",
            overlap,
        )
        .with("exact", exact),
    );
    report.push(lt_clause(
        "main2.r.step4",
        "(12/16) log^2 m + (1/32) log^3 m < 9.5 sqrt(m)",
        &step3,
        &(Expr::ratio(19, 2) * &root),
        policy,
    )?);

    let alon = alon_exponent_log_h(log_q.clone(), p, k, r);
    report.push(lt_clause(
        "main2.r.alon",
        "R(H - S, K_p) bound < 2^(36 sqrt(m))",
        &alon,
        &target,
        policy,
    )?);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn edgeless_branch_at_27() {
        let r = verify_main2_arithmetic(27, 1, 0, &1u64.into(), 1, 0, pol()).unwrap();
        assert!(r.overall, "{}", r.to_json());
        assert!(r.clause("main2.r0.bound").unwrap().pass);
    }

    #[test]
    fn admissible_r_thresholds() {
        assert_eq!(max_admissible_r(1 << 16), Some(3));
        assert_eq!(max_admissible_r(27), Some(1));
        assert_eq!(max_admissible_r(100), Some(1));
        assert_eq!(max_admissible_r(1_000_000), Some(4));
        assert_eq!(max_admissible_r(1), None);
    }

    #[test]
    fn degree_branch_at_extremes() {
        for m in [27u64, 100, 10_000, 1_000_000] {
            let p = max_admissible_p(m, pol()).unwrap();
            for r in 1..=max_admissible_r(m).unwrap() {
                let rep = verify_main2_arithmetic(m, p, 0, &OrderParam::Max, r + 1, r, pol()).unwrap();
                assert!(rep.overall, "m={m} r={r}: {:?}", rep.first_failure());
            }
        }
    }

    #[test]
    fn inadmissible_r_is_rejected_before_the_chain() {
        let rep = verify_main2_arithmetic(1 << 16, 100, 0, &OrderParam::Max, 2, 16, pol()).unwrap();
        assert!(!rep.overall);
        assert!(!rep.clause("main2.r.admissible").unwrap().pass);
        assert!(rep.clause("main2.r.main").is_none());
    }

    #[test]
    fn max_p_at_27() {
        assert_eq!(max_admissible_p(27, pol()).unwrap(), 141);
    }

    #[test]
    fn l_too_large_fails() {
        let rep = verify_main2_arithmetic(10_000, 10, 2701, &1u64.into(), 1, 0, pol()).unwrap();
        assert_eq!(rep.first_failure().unwrap().id, "main2.l");
    }
}
