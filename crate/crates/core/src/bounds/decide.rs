//! Three-valued comparisons with automatic precision refinement.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::expr::Expr;
use super::interval::{EvalError, Interval};
use super::BoundsError;

/// Working precision schedule: start at `start` bits and double up to `cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub start: u32,
    pub cap: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self { start: 64, cap: 512 }
    }
}

impl PrecisionPolicy {
    pub fn new(start: u32, cap: u32) -> Self {
        let start = start.max(16);
        Self {
            start,
            cap: cap.max(start),
        }
    }

    pub fn fixed(bits: u32) -> Self {
        Self::new(bits, bits)
    }

    fn schedule(self) -> impl Iterator<Item = u32> {
        let cap = self.cap;
        std::iter::successors(Some(self.start), move |&p| {
            (p < cap).then(|| (p * 2).min(cap))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    True,
    False,
    Indecisive,
}

/// Outcome of a decided comparison, with the enclosures that decided it.
#[derive(Clone, Debug)]
pub struct Decision {
    pub holds: bool,
    pub precision: u32,
    pub lhs: Interval,
    pub rhs: Interval,
}

fn tri_le(a: &Interval, b: &Interval) -> Tri {
    if a.hi() <= b.lo() {
        Tri::True
    } else if a.lo() > b.hi() {
        Tri::False
    } else {
        Tri::Indecisive
    }
}

fn tri_lt(a: &Interval, b: &Interval) -> Tri {
    if a.hi() < b.lo() {
        Tri::True
    } else if a.lo() >= b.hi() {
        Tri::False
    } else {
        Tri::Indecisive
    }
}

fn decide_with(
    a: &Expr,
    b: &Expr,
    policy: PrecisionPolicy,
    what: &str,
    cmp: fn(&Interval, &Interval) -> Tri,
    reflexive: bool,
) -> Result<Decision, BoundsError> {
    // Identical expressions compare without evaluation, which intervals cannot do.
    if a == b {
        for prec in policy.schedule() {
            match a.eval(prec) {
                Ok(v) => {
                    return Ok(Decision {
                        holds: reflexive,
                        precision: prec,
                        lhs: v.clone(),
                        rhs: v,
                    })
                }
                Err(EvalError::Domain(msg)) => return Err(BoundsError::Domain(format!("{what}: {msg}"))),
                Err(_) => continue,
            }
        }
        return Err(BoundsError::Precision {
            what: what.to_string(),
            cap: policy.cap,
        });
    }
    for prec in policy.schedule() {
        let (lhs, rhs) = match (a.eval(prec), b.eval(prec)) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(EvalError::Domain(msg)), _) | (_, Err(EvalError::Domain(msg))) => {
                return Err(BoundsError::Domain(format!("{what}: {msg}")))
            }
            _ => continue,
        };
        match cmp(&lhs, &rhs) {
            Tri::True => {
                return Ok(Decision {
                    holds: true,
                    precision: prec,
                    lhs,
                    rhs,
                })
            }
            Tri::False => {
                return Ok(Decision {
                    holds: false,
                    precision: prec,
                    lhs,
                    rhs,
                })
            }
            Tri::Indecisive => continue,
        }
    }
    Err(BoundsError::Precision {
        what: what.to_string(),
        cap: policy.cap,
    })
}

/// Decides `a <= b`.
pub fn le(a: &Expr, b: &Expr, policy: PrecisionPolicy) -> Result<Decision, BoundsError> {
    decide_with(a, b, policy, &format!("{a} <= {b}"), tri_le, true)
}

/// Decides `a < b`.
pub fn lt(a: &Expr, b: &Expr, policy: PrecisionPolicy) -> Result<Decision, BoundsError> {
    decide_with(a, b, policy, &format!("{a} < {b}"), tri_lt, false)
}

/// Single-precision three-valued `a <= b`, for callers that manage precision
/// themselves.
pub fn le_at(a: &Expr, b: &Expr, prec: u32) -> Tri {
    match (a.eval(prec), b.eval(prec)) {
        (Ok(l), Ok(r)) => tri_le(&l, &r),
        _ => Tri::Indecisive,
    }
}

/// Enclosure at the first precision where evaluation succeeds.
pub fn enclose(e: &Expr, policy: PrecisionPolicy) -> Result<(Interval, u32), BoundsError> {
    for prec in policy.schedule() {
        match e.eval(prec) {
            Ok(v) => return Ok((v, prec)),
            Err(EvalError::Domain(msg)) => return Err(BoundsError::Domain(format!("{e}: {msg}"))),
            Err(EvalError::Indecisive) => continue,
        }
    }
    Err(BoundsError::Precision {
        what: format!("enclosure of {e}"),
        cap: policy.cap,
    })
}

/// Refines until `lo` and `hi` share a floor, and returns it.
pub fn floor(e: &Expr, policy: PrecisionPolicy) -> Result<BigInt, BoundsError> {
    rounded(e, policy, |v| (v.lo().floor(), v.hi().floor()), "floor")
}

pub fn ceil(e: &Expr, policy: PrecisionPolicy) -> Result<BigInt, BoundsError> {
    rounded(e, policy, |v| (v.lo().ceil(), v.hi().ceil()), "ceiling")
}

fn rounded(
    e: &Expr,
    policy: PrecisionPolicy,
    f: fn(&Interval) -> (BigInt, BigInt),
    what: &str,
) -> Result<BigInt, BoundsError> {
    for prec in policy.schedule() {
        match e.eval(prec) {
            Ok(v) => {
                let (a, b) = f(&v);
                if a == b {
                    return Ok(a);
                }
            }
            Err(EvalError::Domain(msg)) => return Err(BoundsError::Domain(format!("{e}: {msg}"))),
            Err(EvalError::Indecisive) => {}
        }
    }
    Err(BoundsError::Precision {
        what: format!("{what} of {e}"),
        cap: policy.cap,
    })
}

/// Checks a symbolic identity `a = b` numerically: succeeds when the
/// enclosures overlap at the cap precision, and reports whether both
/// collapsed to the same exact point.
pub fn consistent(a: &Expr, b: &Expr, policy: PrecisionPolicy) -> Result<(bool, bool), BoundsError> {
    let (l, _) = enclose(a, PrecisionPolicy::fixed(policy.cap))?;
    let (r, _) = enclose(b, PrecisionPolicy::fixed(policy.cap))?;
    let exact = l.is_exact() && r.is_exact() && l.lo().cmp(r.lo()) == Ordering::Equal;
    Ok((l.overlaps(&r), exact))
}
