//! Real-valued formulas kept symbolic so they can be re-evaluated at any
//! precision.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{EvalError, Interval};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// `num / den` with `den > 0`.
    Ratio(BigInt, BigInt),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Neg(Arc<Expr>),
    Pow(Arc<Expr>, u32),
    Sqrt(Arc<Expr>),
    Cbrt(Arc<Expr>),
    Log2(Arc<Expr>),
    Ln(Arc<Expr>),
    Exp2(Arc<Expr>),
}

impl Expr {
    pub fn int(v: impl Into<BigInt>) -> Self {
        Expr::Int(v.into())
    }

    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let (num, den) = (num.into(), den.into());
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            Expr::Ratio(-num, -den)
        } else {
            Expr::Ratio(num, den)
        }
    }

    pub fn sqrt(&self) -> Self {
        Expr::Sqrt(Arc::new(self.clone()))
    }

    pub fn cbrt(&self) -> Self {
        Expr::Cbrt(Arc::new(self.clone()))
    }

    pub fn log2(&self) -> Self {
        Expr::Log2(Arc::new(self.clone()))
    }

    pub fn ln(&self) -> Self {
        Expr::Ln(Arc::new(self.clone()))
    }

    pub fn exp2(&self) -> Self {
        Expr::Exp2(Arc::new(self.clone()))
    }

    pub fn pow(&self, k: u32) -> Self {
        Expr::Pow(Arc::new(self.clone()), k)
    }

    pub fn recip(&self) -> Self {
        Expr::int(1) / self.clone()
    }

    /// Exact value when the tree only uses rational operations.
    pub fn rational(&self) -> Option<BigRational> {
        Some(match self {
            Expr::Int(v) => BigRational::from_integer(v.clone()),
            Expr::Ratio(n, d) => BigRational::new(n.clone(), d.clone()),
            Expr::Add(a, b) => a.rational()? + b.rational()?,
            Expr::Sub(a, b) => a.rational()? - b.rational()?,
            Expr::Mul(a, b) => a.rational()? * b.rational()?,
            Expr::Div(a, b) => {
                let d = b.rational()?;
                if d.is_zero() {
                    return None;
                }
                a.rational()? / d
            }
            Expr::Neg(a) => -a.rational()?,
            Expr::Pow(a, k) => num_traits::pow(a.rational()?, *k as usize),
            _ => return None,
        })
    }

    pub fn eval(&self, prec: u32) -> Result<Interval, EvalError> {
        if matches!(
            self,
            Expr::Add(..) | Expr::Sub(..) | Expr::Mul(..) | Expr::Div(..) | Expr::Neg(..) | Expr::Pow(..)
        ) {
            if let Some(q) = self.rational() {
                return Ok(if q.denom().is_one() {
                    Interval::from_int(q.numer().clone())
                } else {
                    Interval::from_ratio(q.numer(), q.denom(), prec)
                });
            }
        }
        Ok(match self {
            Expr::Int(v) => Interval::from_int(v.clone()),
            Expr::Ratio(n, d) => {
                if d.is_one() {
                    Interval::from_int(n.clone())
                } else {
                    Interval::from_ratio(n, d, prec)
                }
            }
            Expr::Add(a, b) => a.eval(prec)?.add(&b.eval(prec)?, prec),
            Expr::Sub(a, b) => a.eval(prec)?.sub(&b.eval(prec)?, prec),
            Expr::Mul(a, b) => a.eval(prec)?.mul(&b.eval(prec)?, prec),
            Expr::Div(a, b) => a.eval(prec)?.div(&b.eval(prec)?, prec)?,
            Expr::Neg(a) => a.eval(prec)?.neg(),
            Expr::Pow(a, k) => a.eval(prec)?.powi(*k, prec),
            Expr::Sqrt(a) => a.eval(prec)?.sqrt(prec)?,
            Expr::Cbrt(a) => a.eval(prec)?.cbrt(prec),
            Expr::Log2(a) => a.eval(prec)?.log2(prec)?,
            Expr::Ln(a) => a.eval(prec)?.ln(prec)?,
            Expr::Exp2(a) => a.eval(prec)?.exp2(prec)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Ratio(_, d) if !d.is_one() => 2,
            Expr::Int(v) if v.is_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn paren(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Ratio(n, d) if d.is_one() => write!(f, "{n}"),
            Expr::Ratio(n, d) => write!(f, "{n}/{d}"),
            Expr::Add(a, b) => {
                paren(f, a, 1)?;
                f.write_str(" + ")?;
                paren(f, b, 2)
            }
            Expr::Sub(a, b) => {
                paren(f, a, 1)?;
                f.write_str(" - ")?;
                paren(f, b, 2)
            }
            Expr::Mul(a, b) => {
                paren(f, a, 2)?;
                f.write_str("*")?;
                paren(f, b, 3)
            }
            Expr::Div(a, b) => {
                paren(f, a, 2)?;
                f.write_str("/")?;
                paren(f, b, 3)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                paren(f, a, 4)
            }
            Expr::Pow(a, k) => {
                paren(f, a, 5)?;
                write!(f, "^{k}")
            }
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
            Expr::Cbrt(a) => write!(f, "cbrt({a})"),
            Expr::Log2(a) => write!(f, "log2({a})"),
            Expr::Ln(a) => write!(f, "ln({a})"),
            Expr::Exp2(a) => write!(f, "2^({a})"),
        }
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Expr {
            fn from(v: $t) -> Self {
                Expr::Int(BigInt::from(v))
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, usize);

impl From<BigInt> for Expr {
    fn from(v: BigInt) -> Self {
        Expr::Int(v)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl<R: Into<Expr>> $trait<R> for Expr {
            type Output = Expr;
            fn $method(self, rhs: R) -> Expr {
                Expr::$variant(Arc::new(self), Arc::new(rhs.into()))
            }
        }
        impl<R: Into<Expr>> $trait<R> for &Expr {
            type Output = Expr;
            fn $method(self, rhs: R) -> Expr {
                Expr::$variant(Arc::new(self.clone()), Arc::new(rhs.into()))
            }
        }
    };
}
binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl From<&Expr> for Expr {
    fn from(e: &Expr) -> Self {
        e.clone()
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Arc::new(self))
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Arc::new(self.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::dyadic::Dyadic;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let e = Expr::from(250u64) * Expr::from(3600u64).sqrt();
        let v = e.eval(64).unwrap();
        assert!(v.is_exact());
        assert_eq!(v.lo(), &Dyadic::from_int(15000));
    }

    #[test]
    fn display_is_readable() {
        let m = Expr::from(27u64);
        let e = Expr::from(106u64) * m.sqrt() / m.log2();
        assert_eq!(e.to_string(), "106*sqrt(27)/log2(27)");
        let e = (Expr::from(1u64) - Expr::from(2u64)) * Expr::from(3u64);
        assert_eq!(e.to_string(), "(1 - 2)*3");
    }

    #[test]
    fn ratio_normalizes_sign() {
        match Expr::ratio(1, -3) {
            Expr::Ratio(n, d) => {
                assert_eq!(n, BigInt::from(-1));
                assert_eq!(d, BigInt::from(3));
            }
            _ => unreachable!(),
        }
    }
}
