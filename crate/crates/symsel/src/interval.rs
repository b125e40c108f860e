//! Closed real intervals and the similarity kernel between interval vectors.
//!
//! The kernel is built in three layers: a per-dimension asymmetric
//! similarity `sim`, the interval similarity value `isv` collecting the
//! per-dimension range, and the scalar kernel `ssk` averaging both
//! directions. `ssk` is symmetric bit-for-bit and equals 1 exactly when
//! the two vectors are identical.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with finite bounds and `lo <= hi`.
///
/// Serialized as a two-element array `[lo, hi]`; deserialization
/// re-validates the invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::validation(format!(
                "interval bounds must be finite, got [{lo}, {hi}]"
            )));
        }
        if lo > hi {
            return Err(Error::validation(format!(
                "interval lower bound {lo} exceeds upper bound {hi}"
            )));
        }
        Ok(Interval { lo, hi })
    }

    /// Construct from bounds already known to satisfy the invariant
    /// (e.g. component-wise means of valid intervals).
    pub(crate) fn from_sorted_bounds(lo: f64, hi: f64) -> Self {
        debug_assert!(lo.is_finite() && hi.is_finite() && lo <= hi);
        Interval { lo, hi }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }
}

impl TryFrom<(f64, f64)> for Interval {
    type Error = Error;

    fn try_from(pair: (f64, f64)) -> Result<Self> {
        Interval::new(pair.0, pair.1)
    }
}

impl From<Interval> for (f64, f64) {
    fn from(iv: Interval) -> (f64, f64) {
        (iv.lo, iv.hi)
    }
}

/// A sample or feature row: one interval per dimension, never empty.
pub type IntervalVector = Vec<Interval>;

/// A ratio known to lie in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UnitRatio(f64);

impl UnitRatio {
    /// Panics if `value` is outside `[0, 1]`; all producers in this
    /// crate are closed-form ratios for which the bound is provable.
    pub fn new(value: f64) -> Self {
        assert!((0.0..=1.0).contains(&value), "ratio {value} outside [0, 1]");
        UnitRatio(value)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Asymmetric per-dimension similarity of `b` to `a`.
///
/// 1 when `a` contains `b`; the overlapping length divided by the
/// length of `b` when they partially overlap; 0 when disjoint.
/// Containment is checked first so a point interval inside `a` scores
/// 1 rather than hitting a 0/0 ratio. A boundary touch has overlap
/// length 0 and scores 0.
pub fn sim(a: Interval, b: Interval) -> UnitRatio {
    UnitRatio::new(sim_raw(a, b))
}

#[inline]
fn sim_raw(a: Interval, b: Interval) -> f64 {
    if b.lo >= a.lo && b.hi <= a.hi {
        return 1.0;
    }
    let overlap = a.hi.min(b.hi) - a.lo.max(b.lo);
    if overlap > 0.0 {
        // overlap > 0 rules out a zero-length b, so the ratio is finite.
        overlap / b.length()
    } else {
        0.0
    }
}

/// Interval similarity value: the `[min, max]` of per-dimension sims
/// of `b` to `a`.
///
/// Panics if the vectors are empty or differ in length.
pub fn isv(a: &[Interval], b: &[Interval]) -> Interval {
    assert!(!a.is_empty(), "isv over empty vectors");
    assert_eq!(a.len(), b.len(), "isv dimension mismatch");
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (&ai, &bi) in a.iter().zip(b) {
        let s = sim_raw(ai, bi);
        lo = lo.min(s);
        hi = hi.max(s);
    }
    Interval::from_sorted_bounds(lo, hi)
}

/// Scalar similarity kernel: the mean of the four `isv` endpoints
/// taken in both directions.
///
/// The two per-direction endpoint sums are formed first and then
/// added, so swapping the arguments permutes equal summands and the
/// result is symmetric bit-for-bit. Equals 1 exactly when `a == b`
/// element-wise.
pub fn ssk(a: &[Interval], b: &[Interval]) -> UnitRatio {
    let f = isv(a, b);
    let g = isv(b, a);
    UnitRatio::new(((f.lo + f.hi) + (g.lo + g.hi)) / 4.0)
}
