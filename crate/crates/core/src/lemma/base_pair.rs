use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::LemmaError;
use crate::graph::{Color, MonoPair, TwoColoring, VertexSet};

/// Target sizes for the base pair: red with `|X| = k` or blue with `|X| = l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairBudget {
    pub k: usize,
    pub l: usize,
}

impl PairBudget {
    /// Both budgets must be positive so that `X` is never empty.
    pub fn new(k: usize, l: usize) -> Result<Self, LemmaError> {
        if k == 0 || l == 0 {
            return Err(LemmaError::Argument(format!(
                "pair budgets must be positive, got k = {k}, l = {l}"
            )));
        }
        Ok(Self { k, l })
    }

    /// `C(k+l, k)^{-1} N - k - l` as an exact rational.
    pub fn y_bound(&self, n: usize) -> BigRational {
        let binom = binomial(self.k + self.l, self.k);
        BigRational::new(n.into(), binom.into()) - BigRational::from_integer((self.k + self.l).into())
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasePair {
    pub pair: MonoPair,
    /// False when the residual set emptied before either budget was met.
    pub complete: bool,
}

/// Erdős–Szekeres stepping: with remaining budgets `(a, b)` take the lowest
/// vertex `v` of the residual set `S` and go red iff
/// `|N_red(v) ∩ S| >= a/(a+b) (|S| - 1)`.
pub fn find_base_pair(c: &TwoColoring, b: PairBudget) -> Result<BasePair, LemmaError> {
    find_base_pair_within(c, &VertexSet::full(c.n()), b)
}

pub fn find_base_pair_within(
    c: &TwoColoring,
    within: &VertexSet,
    b: PairBudget,
) -> Result<BasePair, LemmaError> {
    if within.is_empty() {
        return Err(LemmaError::Argument("the coloring has no vertices".into()));
    }
    if b.k == 0 || b.l == 0 {
        return Err(LemmaError::Argument("pair budgets must be positive".into()));
    }
    let n = c.n();
    let mut s = within.clone();
    let mut red = VertexSet::new(n);
    let mut blue = VertexSet::new(n);
    let (mut a, mut bb) = (b.k, b.l);
    while let Some(v) = s.first() {
        s.remove(v);
        let red_deg = s.count_in(c.neighbors(v, Color::Red));
        // red_deg >= a/(a+b) * |S_before - v|, compared in integers.
        let go_red = red_deg * (a + bb) >= a * s.len();
        let color = if go_red { Color::Red } else { Color::Blue };
        s = s.intersection(&VertexSet::from_bits(c.neighbors(v, color).clone()));
        if go_red {
            red.insert(v);
            a -= 1;
            if a == 0 {
                return Ok(BasePair {
                    pair: MonoPair { x: red, y: s, color: Color::Red },
                    complete: true,
                });
            }
        } else {
            blue.insert(v);
            bb -= 1;
            if bb == 0 {
                return Ok(BasePair {
                    pair: MonoPair { x: blue, y: s, color: Color::Blue },
                    complete: true,
                });
            }
        }
    }
    // Residual set exhausted: report the color that used the larger share of
    // its budget, ties to red.
    let red_share = red.len() * b.l;
    let blue_share = blue.len() * b.k;
    let (x, color) = if red_share >= blue_share && !red.is_empty() {
        (red, Color::Red)
    } else {
        (blue, Color::Blue)
    };
    Ok(BasePair {
        pair: MonoPair { x, y: VertexSet::new(n), color },
        complete: false,
    })
}

/// Whether `|Y| >= C(k+l,k)^{-1} N - k - l`.
pub fn meets_base_bound(pair: &MonoPair, n: usize, b: PairBudget) -> bool {
    let y = BigRational::from_integer(pair.y.len().into());
    let bound = b.y_bound(n);
    bound <= BigRational::zero() || y >= bound
}
