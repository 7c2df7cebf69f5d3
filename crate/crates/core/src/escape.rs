//! The logistic map with `a > 4`.
//!
//! Points of the open interval `A0` around 1/2 are sent above 1 and then off
//! to minus infinity. Removing `A0` from `[0, 1]` leaves two intervals;
//! removing their preimages of `A0` leaves four, and so on. Level `n` of the
//! construction is `{x : f^k(x) in [0, 1] for k = 0..=n+1}`, a union of
//! `2^(n+1)` closed intervals, and the intersection over all levels is the
//! invariant Cantor set.

use crate::error::{domain, Result};
use crate::exec::Exec;
use crate::logistic::logistic_step;

/// Deepest level [`cantor_levels`] will build.
pub const MAX_DEPTH: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return domain(format!("invalid interval [{lo}, {hi}]"));
        }
        Ok(Self { lo, hi })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Sorted, pairwise disjoint closed intervals inside `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.iter().any(|i| i.lo < 0.0 || i.hi > 1.0) {
            return domain("intervals must lie inside [0, 1]");
        }
        if intervals.windows(2).any(|w| w[0].hi >= w[1].lo) {
            return domain("intervals must be sorted and separated by positive gaps");
        }
        Ok(Self { intervals })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(Interval::len).sum()
    }

    pub fn max_length(&self) -> f64 {
        self.intervals.iter().map(Interval::len).fold(0.0, f64::max)
    }

    /// The open gaps between consecutive intervals, as closed intervals.
    pub fn gaps(&self) -> Vec<Interval> {
        self.intervals
            .windows(2)
            .map(|w| Interval { lo: w[0].hi, hi: w[1].lo })
            .collect()
    }

    pub fn contains(&self, x: f64) -> bool {
        let i = self.intervals.partition_point(|iv| iv.hi < x);
        self.intervals.get(i).is_some_and(|iv| iv.contains(x))
    }
}

fn check_a(a: f64) -> Result<()> {
    if !(a.is_finite() && a > 4.0) {
        return domain(format!("the escape construction needs a > 4, got {a}"));
    }
    Ok(())
}

/// `A0 = [(a - sqrt(a(a-4))) / 2a, (a + sqrt(a(a-4))) / 2a]`, the points
/// whose first image is at least 1.
pub fn escape_interval(a: f64) -> Result<Interval> {
    check_a(a)?;
    let s = (a * (a - 4.0)).sqrt();
    Ok(Interval { lo: (a - s) / (2.0 * a), hi: (a + s) / (2.0 * a) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `x <= 1/2`, where `f` increases.
    Left,
    /// `x >= 1/2`, where `f` decreases.
    Right,
}

/// Solution of `a x (1 - x) = y` on `branch`, for `0 <= y <= a/4`.
pub fn branch_inverse(y: f64, a: f64, branch: Branch) -> f64 {
    let s = (1.0 - 4.0 * y / a).max(0.0).sqrt();
    match branch {
        // (1 - s) / 2 rewritten without cancellation
        Branch::Left => 2.0 * y / (a * (1.0 + s)),
        Branch::Right => 0.5 * (1.0 + s),
    }
}

/// The interval of points on `branch` that `f` maps onto `target`, or `None`
/// when `target` leaves the branch's range `[0, a/4]`.
pub fn preimage(target: Interval, a: f64, branch: Branch) -> Result<Option<Interval>> {
    check_a(a)?;
    if target.lo < 0.0 || target.hi > a / 4.0 || target.lo > target.hi {
        return Ok(None);
    }
    let (u, v) = (branch_inverse(target.lo, a, branch), branch_inverse(target.hi, a, branch));
    Ok(Some(match branch {
        Branch::Left => Interval { lo: u, hi: v },
        Branch::Right => Interval { lo: v, hi: u },
    }))
}

fn refine(prev: &IntervalSet, a: f64) -> IntervalSet {
    let left = prev.intervals.iter().map(|iv| Interval {
        lo: branch_inverse(iv.lo, a, Branch::Left),
        hi: branch_inverse(iv.hi, a, Branch::Left),
    });
    let right = prev.intervals.iter().rev().map(|iv| Interval {
        lo: branch_inverse(iv.hi, a, Branch::Right),
        hi: branch_inverse(iv.lo, a, Branch::Right),
    });
    IntervalSet { intervals: left.chain(right).collect() }
}

/// Levels `0..=depth` of the construction. Level 0 is `[0, 1]` minus `A0`;
/// level `n` is the preimage of level `n - 1` under both branches.
pub fn cantor_levels(a: f64, depth: usize) -> Result<Vec<IntervalSet>> {
    check_a(a)?;
    if depth > MAX_DEPTH {
        return domain(format!("depth must not exceed {MAX_DEPTH}, got {depth}"));
    }
    let unit = IntervalSet { intervals: vec![Interval { lo: 0.0, hi: 1.0 }] };
    let mut levels: Vec<IntervalSet> = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        let next = refine(levels.get(n.wrapping_sub(1)).unwrap_or(&unit), a);
        levels.push(next);
    }
    Ok(levels)
}

/// Level `depth` only. Each preimage branch is refined independently, so
/// the work splits across threads.
pub fn cantor_level(a: f64, depth: usize, exec: Exec) -> Result<IntervalSet> {
    check_a(a)?;
    if depth > MAX_DEPTH {
        return domain(format!("depth must not exceed {MAX_DEPTH}, got {depth}"));
    }
    // x lies in level `depth` iff f^(depth+1)(x) lies in [0, 1]; walk each
    // address (a sequence of branch choices) back from [0, 1].
    let count = 1usize << (depth + 1);
    let intervals = exec.map_range(count, |idx| {
        let mut iv = Interval { lo: 0.0, hi: 1.0 };
        // bits of idx in Gray order give the sorted position
        let mut flipped = false;
        let mut branches = Vec::with_capacity(depth + 1);
        for level in (0..=depth).rev() {
            let bit = (idx >> level) & 1 == 1;
            let right = bit != flipped;
            branches.push(right);
            flipped = bit;
        }
        for &right in branches.iter().rev() {
            iv = if right {
                Interval { lo: branch_inverse(iv.hi, a, Branch::Right), hi: branch_inverse(iv.lo, a, Branch::Right) }
            } else {
                Interval { lo: branch_inverse(iv.lo, a, Branch::Left), hi: branch_inverse(iv.hi, a, Branch::Left) }
            };
        }
        iv
    });
    Ok(IntervalSet { intervals })
}

/// Gaps that first appear at level `n`: the middle piece removed from each
/// level `n - 1` interval (for `n = 0`, `A0` itself).
pub fn removed_gaps(levels: &[IntervalSet], n: usize) -> Vec<Interval> {
    let current = &levels[n];
    if n == 0 {
        return current.gaps();
    }
    // each parent interval holds exactly two children
    current
        .intervals
        .chunks(2)
        .map(|pair| Interval { lo: pair[0].hi, hi: pair[1].lo })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EscapeReport {
    /// `f^k(x)` is in `[0, 1]` for `k <= level` and `f^(level+1)(x)` is not.
    Escaped { level: usize },
    /// Still inside `[0, 1]` after `n_max + 1` images.
    Retained { through: usize },
}

/// Follows `x` until an image leaves `[0, 1]`, checking `n_max + 1` images.
pub fn escape_time(x: f64, a: f64, n_max: usize) -> Result<EscapeReport> {
    check_a(a)?;
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("start point must lie in [0, 1], got {x}"));
    }
    let mut y = x;
    for level in 0..=n_max {
        y = logistic_step(y, a);
        if !(0.0..=1.0).contains(&y) {
            return Ok(EscapeReport::Escaped { level });
        }
    }
    Ok(EscapeReport::Retained { through: n_max })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionCheck {
    pub holds: bool,
    /// Minimum of `|f'|` over `[0, 1]` minus `A0`, attained at the
    /// endpoints of `A0`: `sqrt(a (a - 4))`.
    pub min_derivative: f64,
}

/// Whether `|f'| > 1` everywhere outside `A0`, the hypothesis under which the
/// surviving set is a Cantor set.
pub fn expansion_check(a: f64) -> Result<ExpansionCheck> {
    check_a(a)?;
    let min_derivative = (a * (a - 4.0)).sqrt();
    Ok(ExpansionCheck { holds: min_derivative > 1.0, min_derivative })
}
