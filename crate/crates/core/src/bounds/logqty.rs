use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::decide::{self, PrecisionPolicy};
use super::dyadic::{Dyadic, Round};
use super::expr::Expr;
use super::interval::Interval;
use super::BoundsError;

/// Digits printed after the decimal point in serialized enclosures.
pub const DECIMAL_DIGITS: u32 = 30;

/// A positive quantity held by a sound enclosure of its base-2 logarithm.
#[derive(Clone, Debug)]
pub struct LogQty {
    exponent: Expr,
    enclosure: Interval,
    precision: u32,
}

impl LogQty {
    /// The quantity `2^exponent`.
    pub fn from_exponent(exponent: Expr, policy: PrecisionPolicy) -> Result<Self, BoundsError> {
        let (enclosure, precision) = decide::enclose(&exponent, policy)?;
        Ok(Self {
            exponent,
            enclosure,
            precision,
        })
    }

    /// The quantity `value` itself (must be positive).
    pub fn from_value(value: Expr, policy: PrecisionPolicy) -> Result<Self, BoundsError> {
        Self::from_exponent(value.log2(), policy)
    }

    /// The quantity 1.
    pub fn one() -> Self {
        Self {
            exponent: Expr::from(0u64),
            enclosure: Interval::from_int(0),
            precision: 0,
        }
    }

    pub fn exponent(&self) -> &Expr {
        &self.exponent
    }

    pub fn enclosure(&self) -> &Interval {
        &self.enclosure
    }

    pub fn lo(&self) -> &Dyadic {
        self.enclosure.lo()
    }

    pub fn hi(&self) -> &Dyadic {
        self.enclosure.hi()
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.enclosure.is_exact()
    }

    /// Re-evaluates the exponent at a fixed precision.
    pub fn at_precision(&self, bits: u32) -> Result<Self, BoundsError> {
        Self::from_exponent(self.exponent.clone(), PrecisionPolicy::fixed(bits))
    }

    /// Decides `self <= other`.
    pub fn le(&self, other: &LogQty, policy: PrecisionPolicy) -> Result<bool, BoundsError> {
        Ok(decide::le(&self.exponent, &other.exponent, policy)?.holds)
    }

    /// Decides `self <= 2^bound_exponent`.
    pub fn le_exponent(&self, bound_exponent: &Expr, policy: PrecisionPolicy) -> Result<bool, BoundsError> {
        Ok(decide::le(&self.exponent, bound_exponent, policy)?.holds)
    }

    pub fn lo_string(&self) -> String {
        self.lo().to_decimal(DECIMAL_DIGITS, Round::Down)
    }

    pub fn hi_string(&self) -> String {
        self.hi().to_decimal(DECIMAL_DIGITS, Round::Up)
    }

    /// `[lo, hi]` rendering of the exponent enclosure.
    pub fn bracket(&self) -> String {
        format!("[{}, {}]", self.lo_string(), self.hi_string())
    }
}

impl Serialize for LogQty {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LogQty", 3)?;
        st.serialize_field("lo", &self.lo_string())?;
        st.serialize_field("hi", &self.hi_string())?;
        st.serialize_field("precision", &self.precision)?;
        st.end()
    }
}

/// Serialized `{lo, hi}` pair for plain enclosures.
pub fn interval_json(v: &Interval) -> serde_json::Value {
    serde_json::json!({
        "lo": v.lo().to_decimal(DECIMAL_DIGITS, Round::Down),
        "hi": v.hi().to_decimal(DECIMAL_DIGITS, Round::Up),
    })
}

pub fn interval_string(v: &Interval) -> String {
    if v.is_exact() {
        v.lo().to_decimal(DECIMAL_DIGITS, Round::Down)
    } else {
        format!(
            "[{}, {}]",
            v.lo().to_decimal(DECIMAL_DIGITS, Round::Down),
            v.hi().to_decimal(DECIMAL_DIGITS, Round::Up)
        )
    }
}
