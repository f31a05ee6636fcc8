//! Rank intervals of a value within a list.

use crate::error::{Error, Result};

/// `lo = |{a < x}| + 1`, `hi = |{a <= x}|`.
///
/// When `x` sits below every element the interval is `[1, 0]` and
/// `below_list` is set; otherwise `lo <= hi` whenever `x` occurs in the
/// list, and `lo = hi + 1` marks the insertion point of an absent value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankInterval {
    pub lo: usize,
    pub hi: usize,
    pub below_list: bool,
}

impl RankInterval {
    /// Does the rank interval meet `[a, b]` (real endpoints)?
    pub fn intersects(&self, a: f64, b: f64) -> bool {
        (self.lo as f64) <= b && (self.hi as f64) >= a && self.lo <= self.hi
    }
}

pub fn rank(x: f64, list: &[f64]) -> Result<RankInterval> {
    if list.is_empty() {
        return Err(Error::Domain("rank of a value in an empty list".into()));
    }
    let less = list.iter().filter(|&&a| a < x).count();
    let leq = list.iter().filter(|&&a| a <= x).count();
    Ok(RankInterval {
        lo: less + 1,
        hi: leq,
        below_list: leq == 0,
    })
}

/// Rank against the sublist of values at least `delta`.
pub fn rank_delta(x: f64, list: &[f64], delta: f64) -> Result<RankInterval> {
    let restricted: Vec<f64> = list.iter().copied().filter(|&a| a >= delta).collect();
    rank(x, &restricted)
}

/// Rank in an already sorted (ascending) list by binary search.
pub fn rank_sorted(x: f64, sorted: &[f64]) -> Result<RankInterval> {
    if sorted.is_empty() {
        return Err(Error::Domain("rank of a value in an empty list".into()));
    }
    let less = sorted.partition_point(|&a| a < x);
    let leq = sorted.partition_point(|&a| a <= x);
    Ok(RankInterval {
        lo: less + 1,
        hi: leq,
        below_list: leq == 0,
    })
}
