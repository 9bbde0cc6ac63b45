//! Closed-form Ramsey bounds and the thresholds shared by the hypothesis
//! checkers. All exponents are base 2; `ln` is the natural logarithm.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::decide::PrecisionPolicy;
use super::expr::Expr;
use super::logqty::LogQty;
use super::BoundsError;

pub fn sqrt_m(m: u64) -> Expr {
    Expr::from(m).sqrt()
}

pub fn log_m(m: u64) -> Expr {
    Expr::from(m).log2()
}

/// `27 sqrt(m)`: the clique budget of the base pair and the join clique cap.
pub fn base_budget(m: u64) -> Expr {
    Expr::from(27u64) * sqrt_m(m)
}

/// `16 sqrt(m) / log^3 m`.
pub fn low_degree_cap(m: u64) -> Expr {
    Expr::from(16u64) * sqrt_m(m) / log_m(m).pow(3)
}

/// `27 sqrt(m) + 16 sqrt(m) / log^3 m`.
pub fn clique_order_cap(m: u64) -> Expr {
    base_budget(m) + low_degree_cap(m)
}

/// `106 sqrt(m) / log m`, the exponent capping orders of the sparse parts.
pub fn order_exponent(m: u64) -> Expr {
    Expr::from(106u64) * sqrt_m(m) / log_m(m)
}

/// `log^3 m / 8`, the top of the amplification range.
pub fn alpha_max(m: u64) -> Expr {
    log_m(m).pow(3) / 8u64
}

/// `m^{3/2}`, written as `m sqrt(m)`.
pub fn deletion_cap(m: u64) -> Expr {
    Expr::from(m) * sqrt_m(m)
}

/// `m^{3/2} - 27 sqrt(m)`, factored as `(m - 27) sqrt(m)` so the `m = 27`
/// case evaluates to an exact zero.
pub fn low_degree_deletion_cap(m: u64) -> Expr {
    (Expr::from(m) - 27u64) * sqrt_m(m)
}

/// `36 sqrt(m)`, the exponent bounding the residual Ramsey numbers.
pub fn residual_exponent(m: u64) -> Expr {
    Expr::from(36u64) * sqrt_m(m)
}

/// `250 sqrt(m)`.
pub fn main_exponent(m: u64) -> Expr {
    Expr::from(250u64) * sqrt_m(m)
}

/// Diagonal clique bound `R(K_n) <= 2^{2n}`.
pub fn bound_erdos_szekeres(n: u64, policy: PrecisionPolicy) -> Result<LogQty, BoundsError> {
    if n < 1 {
        return Err(BoundsError::Argument("clique order must be at least 1".into()));
    }
    LogQty::from_exponent(Expr::from(n) * 2u64, policy)
}

/// Probabilistic lower bound `R(K_n) >= 2^{n/2}` for `n > 2`.
pub fn bound_erdos_lower(n: u64, policy: PrecisionPolicy) -> Result<LogQty, BoundsError> {
    if n <= 2 {
        return Err(BoundsError::Domain(format!(
            "the lower bound 2^(n/2) needs n > 2, got n = {n}"
        )));
    }
    LogQty::from_exponent(Expr::ratio(n, 2u64), policy)
}

/// `R(G) <= 2^{250 sqrt(m)}` for graphs with `m` edges and no isolated vertices.
pub fn bound_sudakov(m: u64, policy: PrecisionPolicy) -> Result<LogQty, BoundsError> {
    if m < 1 {
        return Err(BoundsError::Argument("edge count must be at least 1".into()));
    }
    LogQty::from_exponent(main_exponent(m), policy)
}

/// `alpha(k, r)`: 1 if `k > r`, else 0.
pub fn alon_alpha(k: u64, r: u64) -> u64 {
    u64::from(k > r)
}

/// Exponent `(2r - k + 2)(k - 1) / 2` of the clique-order factor.
pub fn alon_power(k: u64, r: u64) -> Expr {
    let num = (2 * r as i64 - k as i64 + 2) * (k as i64 - 1);
    Expr::ratio(num, 2)
}

/// Bound on `R(H, K_p)` for `H` on `h` vertices with a proper `k`-coloring in
/// which vertices outside the first class have degree at most `r`:
/// `(100p / ln p)^{(2r-k+2)(k-1)/2} (ln p)^{alpha(k,r)} h^r`.
pub fn bound_alon(
    h: &BigInt,
    p: u64,
    k: u64,
    r: u64,
    policy: PrecisionPolicy,
) -> Result<LogQty, BoundsError> {
    if r == 0 {
        return Err(BoundsError::Domain(
            "r = 0 is outside the bounded-degree formula; use the edgeless branch".into(),
        ));
    }
    if !h.is_positive() {
        return Err(BoundsError::Argument("h must be at least 1".into()));
    }
    if BigInt::from(r) >= *h {
        return Err(BoundsError::Domain(format!("need r < h, got r = {r}, h = {h}")));
    }
    if p < 2 {
        return Err(BoundsError::Domain("clique order p must be at least 2".into()));
    }
    if k < 2 {
        return Err(BoundsError::Domain("chromatic number k must be at least 2".into()));
    }
    LogQty::from_exponent(alon_exponent(h, p, k, r), policy)
}

pub fn alon_exponent(h: &BigInt, p: u64, k: u64, r: u64) -> Expr {
    alon_exponent_log_h(Expr::from(h.clone()).log2(), p, k, r)
}

/// Same exponent with `log2(h)` supplied directly, so `h` may be an upper
/// bound too large to materialize.
pub fn alon_exponent_log_h(log_h: Expr, p: u64, k: u64, r: u64) -> Expr {
    let p_e = Expr::from(p);
    let ln_p = p_e.ln();
    let mut e = alon_power(k, r) * (Expr::from(100u64) * &p_e / &ln_p).log2()
        + Expr::from(r) * log_h;
    if alon_alpha(k, r) == 1 {
        e = e + ln_p.log2();
    }
    e
}

/// `log2(q)` with `log2(0)` treated as `-inf`, represented by `None`.
pub fn log2_count(q: &BigInt) -> Option<Expr> {
    (!q.is_zero()).then(|| Expr::from(q.clone()).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::dyadic::Dyadic;

    fn pol() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn clique_bounds() {
        let q = bound_erdos_szekeres(5, pol()).unwrap();
        assert!(q.is_exact());
        assert_eq!(q.lo(), &Dyadic::from_int(10));
        assert_eq!(bound_erdos_szekeres(1, pol()).unwrap().lo(), &Dyadic::from_int(2));
        assert_eq!(bound_erdos_szekeres(60, pol()).unwrap().hi(), &Dyadic::from_int(120));
        assert_eq!(bound_erdos_lower(4, pol()).unwrap().lo(), &Dyadic::from_int(2));
        let three = bound_erdos_lower(3, pol()).unwrap();
        assert!(three.is_exact());
        assert_eq!(three.lo_string(), "1.5");
        assert!(matches!(bound_erdos_lower(2, pol()), Err(BoundsError::Domain(_))));
    }

    #[test]
    fn sudakov_bound_values() {
        assert_eq!(bound_sudakov(4, pol()).unwrap().lo(), &Dyadic::from_int(500));
        let b = bound_sudakov(36, pol()).unwrap();
        assert!(b.is_exact());
        assert_eq!(b.lo(), &Dyadic::from_int(1500));
        let b = bound_sudakov(2, pol()).unwrap();
        assert!(b.lo().to_f64() >= 353.55 && b.hi().to_f64() <= 353.56);
    }

    #[test]
    fn alon_bound_reduces_to_linear_case() {
        // k = 2, r = 1: (100p/ln p)^1 (ln p)^1 h = 100 p h
        let b = bound_alon(&BigInt::from(10), 8, 2, 1, pol()).unwrap();
        let direct = LogQty::from_value(Expr::from(8000u64), pol()).unwrap();
        assert!(b.enclosure().overlaps(direct.enclosure()));
        assert!(b.enclosure().width().to_f64() < 1e-15);
        assert!(matches!(
            bound_alon(&BigInt::from(10), 8, 2, 0, pol()),
            Err(BoundsError::Domain(_))
        ));
        assert!(bound_alon(&BigInt::from(1), 8, 2, 1, pol()).is_err());
    }

    #[test]
    fn alon_bound_monotone_in_h() {
        let mut prev: Option<LogQty> = None;
        for h in 2..40u64 {
            let b = bound_alon(&BigInt::from(h), 17, 3, 1, pol()).unwrap();
            if let Some(p) = prev {
                assert!(p.le(&b, pol()).unwrap());
            }
            prev = Some(b);
        }
    }
}
