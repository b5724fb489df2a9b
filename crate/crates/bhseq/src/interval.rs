//! Closed integer intervals `[lo, hi]` and exact union/merge arithmetic.

use crate::error::{Error, Result};

/// A nonempty closed interval of integers. `lo <= hi` always holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntegerInterval {
    pub lo: i64,
    pub hi: i64,
}

impl IntegerInterval {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!(
                "empty interval: lo {lo} > hi {hi}"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Number of integers in the interval.
    pub fn len(&self) -> u64 {
        (self.hi - self.lo) as u64 + 1
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// True when the union of the two intervals is itself an interval:
    /// they intersect or sit flush against each other ([4,10] and [11,11]).
    pub fn touches(&self, other: &Self) -> bool {
        // Closed intervals [a,b],[c,d] merge iff c <= b+1 and a <= d+1.
        self.lo <= other.hi.saturating_add(1) && other.lo <= self.hi.saturating_add(1)
    }
}

impl std::fmt::Display for IntegerInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Merge a collection of closed intervals into sorted, disjoint,
/// non-adjacent intervals. Internally each `[lo, hi]` is treated as the
/// half-open `[lo, hi+1)` so that flush neighbours coalesce.
pub fn merge(intervals: &[IntegerInterval]) -> Vec<IntegerInterval> {
    let mut halves: Vec<(i64, i64)> = intervals
        .iter()
        .map(|iv| (iv.lo, iv.hi.saturating_add(1)))
        .collect();
    halves.sort_unstable();
    let mut out: Vec<IntegerInterval> = Vec::new();
    let mut cur: Option<(i64, i64)> = None;
    for (lo, end) in halves {
        match cur {
            Some((clo, cend)) if lo <= cend => cur = Some((clo, cend.max(end))),
            Some((clo, cend)) => {
                out.push(IntegerInterval { lo: clo, hi: cend - 1 });
                cur = Some((lo, end));
            }
            None => cur = Some((lo, end)),
        }
    }
    if let Some((clo, cend)) = cur {
        out.push(IntegerInterval { lo: clo, hi: cend - 1 });
    }
    out
}

/// Collect a sorted list of integers into maximal runs of consecutive values.
pub fn runs(sorted_values: &[i64]) -> Vec<IntegerInterval> {
    let mut out = Vec::new();
    let mut iter = sorted_values.iter().copied();
    let Some(first) = iter.next() else {
        return out;
    };
    let (mut lo, mut hi) = (first, first);
    for v in iter {
        debug_assert!(v >= hi);
        if v <= hi + 1 {
            hi = v;
        } else {
            out.push(IntegerInterval { lo, hi });
            lo = v;
            hi = v;
        }
    }
    out.push(IntegerInterval { lo, hi });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> IntegerInterval {
        IntegerInterval::new(lo, hi).unwrap()
    }

    #[test]
    fn rejects_empty() {
        assert!(IntegerInterval::new(3, 2).is_err());
    }

    #[test]
    fn merge_overlapping_and_adjacent() {
        let merged = merge(&[iv(5, 21), iv(21, 30), iv(31, 31)]);
        assert_eq!(merged, vec![iv(5, 31)]);
    }

    #[test]
    fn merge_keeps_gaps() {
        let merged = merge(&[iv(4, 10), iv(13, 14), iv(11, 11)]);
        assert_eq!(merged, vec![iv(4, 11), iv(13, 14)]);
    }

    #[test]
    fn merge_unsorted_input() {
        let merged = merge(&[iv(10, 12), iv(1, 2), iv(3, 9)]);
        assert_eq!(merged, vec![iv(1, 12)]);
    }

    #[test]
    fn runs_split_on_gaps() {
        assert_eq!(runs(&[1, 2, 3, 7, 8, 11]), vec![iv(1, 3), iv(7, 8), iv(11, 11)]);
        assert_eq!(runs(&[]), vec![]);
    }
}
