//! The amplification schedule `alpha_1 = 27`, `alpha_{i+1} = 2^{2 alpha_i^{1/3}}`
//! and the bookkeeping that tracks how much of the starting set survives it.

use serde::Serialize;

use super::decide::{self, PrecisionPolicy};
use super::expr::Expr;
use super::formulas::{alpha_max, sqrt_m};
use super::interval::Interval;
use super::logqty::interval_json;
use super::BoundsError;

/// Starting `Y` exponent coefficient: `|Y_1| >= 2^{196 sqrt(m)}`.
pub const Y_START: u64 = 196;
/// Per-stage loss coefficient: `|Y_{i+1}| >= 2^{-120 alpha_i^{-1/3} sqrt(m)} |Y_i|`.
pub const Y_LOSS: u64 = 120;
/// Floor the `Y` exponent coefficient must never drop below.
pub const Y_FLOOR: u64 = 36;

#[derive(Clone, Debug)]
pub struct AlphaStage {
    /// 1-based stage index.
    pub index: usize,
    pub alpha: Expr,
    /// `sum_{j <= i} alpha_j^{-1/3}`.
    pub partial_sum: Expr,
    /// `c_i` with `|Y_i| >= 2^{c_i sqrt(m)}`.
    pub y_coefficient: Expr,
    /// `c_i sqrt(m)`.
    pub y_exponent: Expr,
    pub alpha_enclosure: Interval,
    pub partial_sum_enclosure: Interval,
    pub y_coefficient_enclosure: Interval,
    pub y_exponent_enclosure: Interval,
}

#[derive(Clone, Debug)]
pub struct AlphaTrace {
    pub m: u64,
    /// `log^3 m / 8`.
    pub threshold: Expr,
    pub threshold_enclosure: Interval,
    /// Stages up to and including the first `alpha_i >= log^3 m / 8`.
    pub stages: Vec<AlphaStage>,
    pub precision: u32,
}

/// `alpha^{-1/3}`.
pub fn inv_cbrt(alpha: &Expr) -> Expr {
    alpha.cbrt().recip()
}

/// `alpha_{i+1} = 2^{2 alpha_i^{1/3}}`.
pub fn next_alpha(alpha: &Expr) -> Expr {
    (Expr::from(2u64) * alpha.cbrt()).exp2()
}

/// Builds the schedule for `m >= 27`, stopping at the first stage whose
/// `alpha` reaches `log^3 m / 8`.
pub fn alpha_sequence(m: u64, policy: PrecisionPolicy) -> Result<AlphaTrace, BoundsError> {
    if m < 27 {
        return Err(BoundsError::Argument(format!(
            "the amplification schedule needs m >= 27, got {m}"
        )));
    }
    let threshold = alpha_max(m);
    let root = sqrt_m(m);
    let mut stages = Vec::new();
    let mut alpha = Expr::from(27u64);
    let mut y_coefficient = Expr::from(Y_START);
    let mut partial_sum = inv_cbrt(&alpha);
    let mut precision = policy.start;
    loop {
        let y_exponent = &y_coefficient * &root;
        let enc = |e: &Expr| decide::enclose(e, policy).map(|(v, _)| v);
        let stage = AlphaStage {
            index: stages.len() + 1,
            alpha_enclosure: enc(&alpha)?,
            partial_sum_enclosure: enc(&partial_sum)?,
            y_coefficient_enclosure: enc(&y_coefficient)?,
            y_exponent_enclosure: enc(&y_exponent)?,
            alpha: alpha.clone(),
            partial_sum: partial_sum.clone(),
            y_coefficient: y_coefficient.clone(),
            y_exponent,
        };
        stages.push(stage);
        let reached = decide::le(&threshold, &alpha, policy)?;
        precision = precision.max(reached.precision);
        if reached.holds {
            break;
        }
        // The amplification step at alpha_i feeds the next stage.
        y_coefficient = &y_coefficient - Expr::from(Y_LOSS) * inv_cbrt(&alpha);
        alpha = next_alpha(&alpha);
        partial_sum = &partial_sum + inv_cbrt(&alpha);
    }
    let (threshold_enclosure, _) = decide::enclose(&threshold, policy)?;
    Ok(AlphaTrace {
        m,
        threshold,
        threshold_enclosure,
        stages,
        precision,
    })
}

impl AlphaTrace {
    /// Whether `[27, log^3 m / 8]` is non-empty.
    pub fn range_nonempty(&self, policy: PrecisionPolicy) -> Result<bool, BoundsError> {
        Ok(decide::le(&Expr::from(27u64), &self.threshold, policy)?.holds)
    }

    pub fn final_stage(&self) -> &AlphaStage {
        self.stages.last().expect("trace has at least one stage")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.m,
            "threshold": interval_json(&self.threshold_enclosure),
            "stages": self.stages.iter().map(|s| serde_json::json!({
                "i": s.index,
                "alpha": interval_json(&s.alpha_enclosure),
                "partial_sum": interval_json(&s.partial_sum_enclosure),
                "y_coefficient": interval_json(&s.y_coefficient_enclosure),
                "y_exponent": interval_json(&s.y_exponent_enclosure),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Plain-number view used by table output.
#[derive(Clone, Debug, Serialize)]
pub struct AlphaRow {
    pub i: usize,
    pub alpha: f64,
    pub partial_sum: f64,
    pub y_coefficient: f64,
}

impl AlphaTrace {
    pub fn rows(&self) -> Vec<AlphaRow> {
        self.stages
            .iter()
            .map(|s| AlphaRow {
                i: s.index,
                alpha: s.alpha_enclosure.midpoint_f64(),
                partial_sum: s.partial_sum_enclosure.midpoint_f64(),
                y_coefficient: s.y_coefficient_enclosure.midpoint_f64(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::dyadic::Dyadic;

    #[test]
    fn first_stages_are_exact() {
        let t = alpha_sequence(1u64 << 30, PrecisionPolicy::default()).unwrap();
        let a: Vec<_> = t.stages.iter().map(|s| s.alpha_enclosure.clone()).collect();
        assert!(a[0].is_exact() && a[0].lo() == &Dyadic::from_int(27));
        assert!(a[1].is_exact() && a[1].lo() == &Dyadic::from_int(64));
        assert!(a[2].is_exact() && a[2].lo() == &Dyadic::from_int(256));
        // alpha_4 = 2^{2 * 256^{1/3}}, exponent in [12.69, 12.71]
        let l = a[3].log2(128).unwrap();
        assert!(l.lo().to_f64() >= 12.69 && l.hi().to_f64() <= 12.71);
    }

    #[test]
    fn small_m_stops_at_first_stage() {
        let t = alpha_sequence(27, PrecisionPolicy::default()).unwrap();
        assert_eq!(t.stages.len(), 1);
        assert!(!t.range_nonempty(PrecisionPolicy::default()).unwrap());
        // log^3 64 / 8 = 27 exactly
        let t = alpha_sequence(64, PrecisionPolicy::default()).unwrap();
        assert_eq!(t.stages.len(), 1);
        assert!(t.range_nonempty(PrecisionPolicy::default()).unwrap());
        // log^3 256 / 8 = 64 = alpha_2
        let t = alpha_sequence(256, PrecisionPolicy::default()).unwrap();
        assert_eq!(t.stages.len(), 2);
    }

    #[test]
    fn rejects_small_m() {
        assert!(alpha_sequence(26, PrecisionPolicy::default()).is_err());
    }

    #[test]
    fn y_recurrence_at_3600() {
        let t = alpha_sequence(3600, PrecisionPolicy::default()).unwrap();
        // log^3 3600 / 8 ~ 205.9, so stages are 27, 64, 256
        assert_eq!(t.stages.len(), 3);
        let y2 = &t.stages[1].y_coefficient_enclosure;
        // 196 - 120/3 = 156
        assert!(y2.contains(&Dyadic::from_int(156)));
        assert!(y2.width().to_f64() < 1e-15);
    }
}
