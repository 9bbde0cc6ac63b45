//! Binary floating values `mant · 2^exp` with arbitrary-size mantissas and
//! explicit rounding direction on every inexact operation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

impl Round {
    fn flip(self) -> Self {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// `mant · 2^exp`, kept normalized: `mant` is odd, or zero with `exp == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(30, Round::Down))
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Self {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::new(v.into(), 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Self {
            mant: BigInt::one(),
            exp: k,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.exp >= 0
    }

    fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Rounds to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let floor = &self.mant >> shift;
        let exact = (&floor << shift) == self.mant;
        let mant = if !exact && dir == Round::Up {
            floor + 1
        } else {
            floor
        };
        Self::new(mant, self.exp + shift as i64)
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Self::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Multiplication by `2^k`, exact.
    pub fn scale2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// `self / other` rounded to `prec` bits. Panics on division by zero.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let (num, den, dir) = if other.mant.is_negative() {
            (-&self.mant, -&other.mant, dir)
        } else {
            (self.mant.clone(), other.mant.clone(), dir)
        };
        let want = prec as i64 + den.bits() as i64 - num.bits() as i64 + 2;
        let s = want.max(0) as u64;
        let n = num << s;
        let (q, r) = n.div_mod_floor(&den);
        let q = if !r.is_zero() && dir == Round::Up {
            q + 1
        } else {
            q
        };
        Self::new(q, self.exp - other.exp - s as i64).round(prec, dir)
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, dir: Round) -> Self {
        Self::from_int(num.clone()).div(&Self::from_int(den.clone()), prec, dir)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            &self.mant >> (-self.exp) as u64
        }
    }

    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Compares `self` with the rational `num / den`, `den > 0`.
    pub fn cmp_ratio(&self, num: &BigInt, den: &BigInt) -> Ordering {
        debug_assert!(den.is_positive());
        if self.exp >= 0 {
            ((&self.mant << self.exp as u64) * den).cmp(num)
        } else {
            (&self.mant * den).cmp(&(num << (-self.exp) as u64))
        }
    }

    /// Square root of a non-negative value, `None` for negative input.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        Some(self.root(2, prec, dir))
    }

    pub fn cbrt(&self, prec: u32, dir: Round) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if self.is_negative() {
            return self.neg().root(3, prec, dir.flip()).neg();
        }
        self.root(3, prec, dir)
    }

    fn root(&self, k: u32, prec: u32, dir: Round) -> Self {
        let k64 = k as i64;
        let mut s = (k64 * (prec as i64 + 2) - self.bits() as i64).max(0);
        while (self.exp - s).rem_euclid(k64) != 0 {
            s += 1;
        }
        let n = &self.mant << s as u64;
        let r = n.nth_root(k);
        let exact = r.pow(k) == n;
        let r = if !exact && dir == Round::Up { r + 1 } else { r };
        Self::new(r, (self.exp - s) / k64).round(prec, dir)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits() as i64;
        let keep = bits.min(60);
        let m = (&self.mant >> (bits - keep) as u64).to_f64().unwrap_or(f64::NAN);
        let e = self.exp + bits - keep;
        if e > 2000 {
            return if m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < -2000 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }

    /// Decimal rendering with at most `digits` fractional digits, rounded in
    /// direction `dir`; trailing zeros are trimmed.
    pub fn to_decimal(&self, digits: u32, dir: Round) -> String {
        let (int_part, frac) = if self.exp >= 0 {
            (&self.mant << self.exp as u64, None)
        } else {
            let scale = BigInt::from(10u32).pow(digits);
            let num = &self.mant * &scale;
            let den = BigInt::one() << (-self.exp) as u64;
            let (q, r) = num.div_mod_floor(&den);
            let q = if !r.is_zero() && dir == Round::Up { q + 1 } else { q };
            let (ip, fp) = q.div_mod_floor(&scale);
            (ip, Some(fp))
        };
        let mut out = String::new();
        match frac {
            Some(fp) if !fp.is_zero() => {
                // Floor-based split: negative values carry a positive fraction.
                let (ip, fp) = if int_part.is_negative() {
                    let scale = BigInt::from(10u32).pow(digits);
                    (int_part + 1, scale - fp)
                } else {
                    (int_part, fp)
                };
                if ip.is_zero() && self.is_negative() {
                    out.push('-');
                }
                out.push_str(&ip.to_string());
                let s = fp.to_string();
                let padded = format!("{}{}", "0".repeat(digits as usize - s.len()), s);
                let trimmed = padded.trim_end_matches('0');
                out.push('.');
                out.push_str(trimmed);
            }
            _ => out.push_str(&int_part.to_string()),
        }
        out
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn to_i64_floor(&self) -> Option<i64> {
        self.floor().to_i64()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.mant.sign(), other.mant.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Dyadic {
        Dyadic::from_int(v)
    }

    #[test]
    fn normalization_strips_trailing_zeros() {
        let x = Dyadic::new(BigInt::from(48), 0);
        assert_eq!(x.mantissa(), &BigInt::from(3));
        assert_eq!(x.exponent(), 4);
        assert_eq!(Dyadic::new(BigInt::zero(), 7), Dyadic::zero());
    }

    #[test]
    fn rounding_is_directed() {
        let x = d(0b1011_0111);
        assert_eq!(x.round(4, Round::Down), d(0b1011_0000));
        assert_eq!(x.round(4, Round::Up), d(0b1100_0000));
        let y = x.neg();
        assert_eq!(y.round(4, Round::Down), d(-0b1100_0000));
        assert_eq!(y.round(4, Round::Up), d(-0b1011_0000));
    }

    #[test]
    fn perfect_roots_are_exact() {
        assert_eq!(d(3600).sqrt(64, Round::Down).unwrap(), d(60));
        assert_eq!(d(3600).sqrt(64, Round::Up).unwrap(), d(60));
        assert_eq!(d(27).cbrt(64, Round::Up), d(3));
        assert_eq!(d(-8).cbrt(64, Round::Down), d(-2));
        assert_eq!(Dyadic::pow2(-6).cbrt(64, Round::Down), Dyadic::pow2(-2));
        assert!(d(-1).sqrt(64, Round::Down).is_none());
    }

    #[test]
    fn sqrt_two_brackets() {
        let lo = d(2).sqrt(80, Round::Down).unwrap();
        let hi = d(2).sqrt(80, Round::Up).unwrap();
        assert!(lo < hi);
        assert!(lo.mul(&lo) < d(2));
        assert!(hi.mul(&hi) > d(2));
    }

    #[test]
    fn division_brackets_one_third() {
        let lo = d(1).div(&d(3), 64, Round::Down);
        let hi = d(1).div(&d(3), 64, Round::Up);
        assert_eq!(lo.cmp_ratio(&BigInt::from(1), &BigInt::from(3)), Ordering::Less);
        assert_eq!(hi.cmp_ratio(&BigInt::from(1), &BigInt::from(3)), Ordering::Greater);
        let neg = d(1).div(&d(-3), 64, Round::Up);
        assert_eq!(neg.cmp_ratio(&BigInt::from(-1), &BigInt::from(3)), Ordering::Greater);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(d(1500).to_decimal(30, Round::Down), "1500");
        assert_eq!(Dyadic::pow2(-1).to_decimal(30, Round::Down), "0.5");
        assert_eq!(Dyadic::pow2(-1).neg().to_decimal(30, Round::Down), "-0.5");
        let third_lo = d(1).div(&d(3), 64, Round::Down);
        assert_eq!(third_lo.to_decimal(5, Round::Down), "0.33333");
        assert_eq!(third_lo.to_decimal(5, Round::Up), "0.33334");
        let x = d(-7).scale2(-1);
        assert_eq!(x.to_decimal(3, Round::Down), "-3.5");
    }

    #[test]
    fn floor_and_ceil() {
        let x = d(7).scale2(-1);
        assert_eq!(x.floor(), BigInt::from(3));
        assert_eq!(x.ceil(), BigInt::from(4));
        assert_eq!(x.neg().floor(), BigInt::from(-4));
        assert_eq!(x.neg().ceil(), BigInt::from(-3));
    }
}
