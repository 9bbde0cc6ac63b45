//! Closed intervals with dyadic endpoints. Every operation rounds outward, so
//! the true value of a computation always lies inside its result.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dyadic::{Dyadic, Round};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    /// The operand provably lies outside the operation's domain.
    Domain(String),
    /// The operand straddles a domain boundary at this precision.
    Indecisive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

/// Guard bits carried by the transcendental kernels.
const GUARD: u32 = 24;

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Self { lo, hi }
    }

    pub fn point(v: Dyadic) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::point(Dyadic::from_int(v))
    }

    /// Enclosure of `num / den`, `den != 0`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        Self {
            lo: Dyadic::from_ratio(&num, &den, prec, Round::Down),
            hi: Dyadic::from_ratio(&num, &den, prec, Round::Up),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn contains(&self, v: &Dyadic) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    /// Whether `num / den` (`den > 0`) lies in the interval.
    pub fn contains_ratio(&self, num: &BigInt, den: &BigInt) -> bool {
        use std::cmp::Ordering::*;
        self.lo.cmp_ratio(num, den) != Greater && self.hi.cmp_ratio(num, den) != Less
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        Self {
            lo: self.lo.add(&o.lo).round(prec, Round::Down),
            hi: self.hi.add(&o.hi).round(prec, Round::Up),
        }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        self.add(&o.neg(), prec)
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        let products = [
            self.lo.mul(&o.lo),
            self.lo.mul(&o.hi),
            self.hi.mul(&o.lo),
            self.hi.mul(&o.hi),
        ];
        let lo = products.iter().min().expect("four products").clone();
        let hi = products.iter().max().expect("four products").clone();
        Self {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
        }
    }

    pub fn div(&self, o: &Self, prec: u32) -> Result<Self, EvalError> {
        if o.lo.is_zero() && o.hi.is_zero() {
            return Err(EvalError::Domain("division by zero".into()));
        }
        if !o.lo.is_positive() && !o.hi.is_negative() {
            return Err(EvalError::Indecisive);
        }
        let cands_lo = [
            self.lo.div(&o.lo, prec, Round::Down),
            self.lo.div(&o.hi, prec, Round::Down),
            self.hi.div(&o.lo, prec, Round::Down),
            self.hi.div(&o.hi, prec, Round::Down),
        ];
        let cands_hi = [
            self.lo.div(&o.lo, prec, Round::Up),
            self.lo.div(&o.hi, prec, Round::Up),
            self.hi.div(&o.lo, prec, Round::Up),
            self.hi.div(&o.hi, prec, Round::Up),
        ];
        Ok(Self {
            lo: cands_lo.into_iter().min().expect("four quotients"),
            hi: cands_hi.into_iter().max().expect("four quotients"),
        })
    }

    pub fn powi(&self, k: u32, prec: u32) -> Self {
        if k == 0 {
            return Self::from_int(1);
        }
        if k.is_multiple_of(2) && !self.lo.is_positive() && !self.hi.is_negative() {
            // Straddles zero: even power is [0, max(|lo|,|hi|)^k].
            let m = self.lo.abs().max(self.hi.abs());
            let top = (0..k).fold(Dyadic::one(), |acc, _| acc.mul(&m).round(prec, Round::Up));
            return Self {
                lo: Dyadic::zero(),
                hi: top,
            };
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self, prec);
        }
        acc
    }

    pub fn sqrt(&self, prec: u32) -> Result<Self, EvalError> {
        if self.hi.is_negative() {
            return Err(EvalError::Domain("square root of a negative value".into()));
        }
        if self.lo.is_negative() {
            return Err(EvalError::Indecisive);
        }
        Ok(Self {
            lo: self.lo.sqrt(prec, Round::Down).expect("non-negative"),
            hi: self.hi.sqrt(prec, Round::Up).expect("non-negative"),
        })
    }

    pub fn cbrt(&self, prec: u32) -> Self {
        Self {
            lo: self.lo.cbrt(prec, Round::Down),
            hi: self.hi.cbrt(prec, Round::Up),
        }
    }

    pub fn log2(&self, prec: u32) -> Result<Self, EvalError> {
        if !self.hi.is_positive() {
            return Err(EvalError::Domain("logarithm of a non-positive value".into()));
        }
        if !self.lo.is_positive() {
            return Err(EvalError::Indecisive);
        }
        let lo = log2_point(&self.lo, prec).0;
        let hi = log2_point(&self.hi, prec).1;
        Ok(Self { lo, hi })
    }

    pub fn ln(&self, prec: u32) -> Result<Self, EvalError> {
        Ok(self.log2(prec + 8)?.mul(&ln2(prec + 8), prec))
    }

    pub fn exp2(&self, prec: u32) -> Result<Self, EvalError> {
        Ok(Self {
            lo: exp2_point(&self.lo, prec, Round::Down)?,
            hi: exp2_point(&self.hi, prec, Round::Up)?,
        })
    }
}

/// Bracket `[lo, hi]` for `log2(x)`, `x > 0`.
fn log2_point(x: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    let bits = x.mantissa().bits() as i64;
    let int_part = x.exponent() + bits - 1;
    if x.mantissa().is_one() {
        let v = Dyadic::from_int(int_part);
        return (v.clone(), v);
    }
    let w = prec + GUARD;
    // y = mant / 2^(bits-1) in [1, 2)
    let y = Dyadic::new(x.mantissa().clone(), -(bits - 1));
    let mut ylo = y.round(w, Round::Down);
    let mut yhi = y.round(w, Round::Up);
    let two = Dyadic::from_int(2);
    let mut acc = BigInt::zero();
    let mut k: i64 = 0;
    for _ in 0..(prec + GUARD / 2) {
        let slo = ylo.mul(&ylo).round(w, Round::Down);
        let shi = yhi.mul(&yhi).round(w, Round::Up);
        let bit = if slo >= two {
            ylo = slo.scale2(-1);
            yhi = shi.scale2(-1);
            1
        } else if shi < two {
            ylo = slo;
            yhi = shi;
            0
        } else {
            break;
        };
        acc = (acc << 1u32) + bit;
        k += 1;
    }
    let frac_lo = Dyadic::new(acc, -k);
    let lo = Dyadic::from_int(int_part).add(&frac_lo);
    let hi = lo.add(&Dyadic::pow2(-k));
    (lo.round(prec, Round::Down), hi.round(prec, Round::Up))
}

type RootTable = Arc<Vec<(Dyadic, Dyadic)>>;

/// `r_j` brackets for `2^(2^-j)`, `j = 0..=w`.
fn root_table(w: u32) -> RootTable {
    static CACHE: OnceLock<Mutex<HashMap<u32, RootTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("root table cache").get(&w) {
        return t.clone();
    }
    let inner = w + 16;
    let mut table = Vec::with_capacity(w as usize + 1);
    let two = Dyadic::from_int(2);
    table.push((two.clone(), two));
    for j in 1..=w as usize {
        let (plo, phi) = &table[j - 1];
        let lo = plo.sqrt(inner, Round::Down).expect("positive");
        let hi = phi.sqrt(inner, Round::Up).expect("positive");
        table.push((lo, hi));
    }
    let table = Arc::new(table);
    cache
        .lock()
        .expect("root table cache")
        .insert(w, table.clone());
    table
}

fn exp2_point(x: &Dyadic, prec: u32, dir: Round) -> Result<Dyadic, EvalError> {
    let n = x.floor();
    let Some(mut n) = n.to_i64() else {
        return Err(EvalError::Domain("exp2 argument out of range".into()));
    };
    if n.abs() > (1i64 << 50) {
        return Err(EvalError::Domain("exp2 argument out of range".into()));
    }
    let frac = x.sub(&Dyadic::from_int(n));
    if frac.is_zero() {
        return Ok(Dyadic::pow2(n));
    }
    let w = prec + GUARD;
    let scaled = frac.scale2(w as i64);
    let mut f = match dir {
        Round::Down => scaled.floor(),
        Round::Up => scaled.ceil(),
    };
    let full = BigInt::one() << w;
    if f == full {
        n += 1;
        f = BigInt::zero();
    }
    let table = root_table(w);
    let mut acc = Dyadic::one();
    for j in 1..=w as u64 {
        if f.bit(w as u64 - j) {
            let r = match dir {
                Round::Down => &table[j as usize].0,
                Round::Up => &table[j as usize].1,
            };
            acc = acc.mul(r).round(w + 8, dir);
        }
    }
    Ok(acc.scale2(n).round(prec, dir))
}

/// Enclosure of `ln 2` from `sum_{k>=1} 1 / (k 2^k)` with a geometric tail bound.
pub fn ln2(prec: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("ln2 cache").get(&prec) {
        return v.clone();
    }
    let w = prec + GUARD;
    let terms = w as i64 + 8;
    let mut lo = Dyadic::zero();
    let mut hi = Dyadic::zero();
    for k in 1..=terms {
        let den = Dyadic::from_int(k).scale2(k);
        lo = lo.add(&Dyadic::one().div(&den, w, Round::Down));
        hi = hi.add(&Dyadic::one().div(&den, w, Round::Up));
    }
    // tail: sum_{k>K} 1/(k 2^k) <= 1 / ((K+1) 2^K)
    let tail = Dyadic::one().div(&Dyadic::from_int(terms + 1).scale2(terms), w, Round::Up);
    hi = hi.add(&tail);
    let v = Interval {
        lo: lo.round(prec, Round::Down),
        hi: hi.round(prec, Round::Up),
    };
    cache.lock().expect("ln2 cache").insert(prec, v.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: i64) -> Interval {
        Interval::from_int(v)
    }

    #[test]
    fn log2_of_powers_of_two_is_exact() {
        let l = iv(1024).log2(64).unwrap();
        assert!(l.is_exact());
        assert_eq!(l.lo(), &Dyadic::from_int(10));
        let l = Interval::point(Dyadic::pow2(-3)).log2(64).unwrap();
        assert_eq!(l.lo(), &Dyadic::from_int(-3));
    }

    #[test]
    fn log2_three_is_tight() {
        let l = iv(3).log2(128).unwrap();
        let truth = 3f64.log2();
        assert!(l.lo().to_f64() <= truth && truth <= l.hi().to_f64());
        assert!(l.width().to_f64() < 1e-30);
    }

    #[test]
    fn exp2_integer_is_exact_and_fraction_brackets() {
        let e = iv(6).exp2(64).unwrap();
        assert!(e.is_exact());
        assert_eq!(e.lo(), &Dyadic::from_int(64));
        let half = Interval::point(Dyadic::pow2(-1)).exp2(96).unwrap();
        // sqrt(2) bracket: lo^2 <= 2 <= hi^2
        assert!(half.lo().mul(half.lo()) <= Dyadic::from_int(2));
        assert!(half.hi().mul(half.hi()) >= Dyadic::from_int(2));
        assert!(half.width().to_f64() < 1e-25);
    }

    #[test]
    fn ln2_brackets_known_value() {
        let v = ln2(128);
        let truth = std::f64::consts::LN_2;
        assert!(v.lo().to_f64() <= truth && truth <= v.hi().to_f64());
        assert!(v.width().to_f64() < 1e-35);
    }

    #[test]
    fn division_by_straddling_interval_is_indecisive() {
        let z = Interval::new(Dyadic::from_int(-1), Dyadic::from_int(1));
        assert_eq!(iv(1).div(&z, 64), Err(EvalError::Indecisive));
        assert!(matches!(iv(1).div(&iv(0), 64), Err(EvalError::Domain(_))));
    }

    #[test]
    fn log_domain() {
        assert!(matches!(iv(0).log2(64), Err(EvalError::Domain(_))));
        let s = Interval::new(Dyadic::from_int(-1), Dyadic::from_int(2));
        assert_eq!(s.log2(64), Err(EvalError::Indecisive));
    }

    #[test]
    fn even_power_of_straddling_interval() {
        let s = Interval::new(Dyadic::from_int(-3), Dyadic::from_int(2));
        let p = s.powi(2, 64);
        assert_eq!(p.lo(), &Dyadic::zero());
        assert_eq!(p.hi(), &Dyadic::from_int(9));
    }
}
