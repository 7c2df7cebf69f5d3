//! The logistic map `f(x) = a x (1 - x)` on `[0, 1]` for `0 < a <= 4`.
//!
//! Periodic orbits are found by scanning `f^n(x) - x` on a uniform grid for
//! sign changes, bisecting each bracket, discarding roots whose prime period
//! is a proper divisor of `n`, and grouping the survivors into cycles.

use std::collections::BTreeMap;

use crate::error::{domain, Result};
use crate::exec::Exec;
use crate::types::{approx_eq, Tolerance};

/// Number of grid cells used when scanning `f^n(x) - x` for roots.
pub const SCAN_CELLS: usize = 1 << 16;
/// Largest period accepted by [`find_periodic_orbits`].
pub const MAX_PERIOD: usize = 12;
/// A root whose `f^d` returns within this distance for a proper divisor `d`
/// of `n` has prime period below `n`.
pub const DIVISOR_TOL: f64 = 1e-9;
/// Largest `k` accepted by [`cascade_scan`].
pub const MAX_CASCADE_K: usize = 6;
/// Resolution of cascade onsets in `a`.
pub const CASCADE_TOL: f64 = 1e-7;
/// Gap that separates clusters in a bifurcation-diagram column.
pub const CLUSTER_GAP: f64 = 1e-4;
/// Default seed for diagram orbits: the critical point.
pub const DEFAULT_X0: f64 = 0.5;

const MULTIPLIER_UNIT_TOL: f64 = 1e-9;

pub fn logistic_step(x: f64, a: f64) -> f64 {
    a * x * (1.0 - x)
}

pub fn derivative(x: f64, a: f64) -> f64 {
    a * (1.0 - 2.0 * x)
}

/// `f^n(x)`.
pub fn iterate(mut x: f64, a: f64, n: usize) -> f64 {
    for _ in 0..n {
        x = logistic_step(x, a);
    }
    x
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Attracting,
    Repelling,
    Nonhyperbolic,
}

impl Stability {
    pub fn from_multiplier(m: f64) -> Self {
        if approx_eq(m.abs(), 1.0, Tolerance::absolute(MULTIPLIER_UNIT_TOL)).unwrap_or(false) {
            Stability::Nonhyperbolic
        } else if m.abs() < 1.0 {
            Stability::Attracting
        } else {
            Stability::Repelling
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Stability::Attracting => "attracting",
            Stability::Repelling => "repelling",
            Stability::Nonhyperbolic => "nonhyperbolic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicOrbitReport {
    pub period: usize,
    /// Cycle points in ascending order.
    pub points: Vec<f64>,
    /// `(f^period)'` along the cycle, the product of `f'` over its points.
    pub multiplier: f64,
    pub stability: Stability,
}

impl PeriodicOrbitReport {
    fn new(period: usize, mut points: Vec<f64>, a: f64) -> Self {
        points.sort_by(f64::total_cmp);
        let multiplier = points.iter().map(|&x| derivative(x, a)).product();
        Self { period, points, multiplier, stability: Stability::from_multiplier(multiplier) }
    }
}

fn check_a(a: f64) -> Result<()> {
    if !(a.is_finite() && a > 0.0 && a <= 4.0) {
        return domain(format!("logistic parameter must lie in (0, 4], got {a}"));
    }
    Ok(())
}

/// The fixed points `0` and, for `a > 1`, `(a - 1) / a`, with multipliers
/// `a` and `2 - a`.
pub fn fixed_points(a: f64) -> Result<Vec<PeriodicOrbitReport>> {
    if !(a.is_finite() && a > 0.0) {
        return domain(format!("logistic parameter must be positive, got {a}"));
    }
    let mut out = vec![PeriodicOrbitReport {
        period: 1,
        points: vec![0.0],
        multiplier: a,
        stability: Stability::from_multiplier(a),
    }];
    let x = (a - 1.0) / a;
    if x > 0.0 && x <= 1.0 {
        let m = 2.0 - a;
        out.push(PeriodicOrbitReport { period: 1, points: vec![x], multiplier: m, stability: Stability::from_multiplier(m) });
    }
    Ok(out)
}

fn bisect_root(mut lo: f64, mut hi: f64, g_lo: f64, g: impl Fn(f64) -> f64) -> f64 {
    let lo_negative = g_lo < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Every root of `f^n(x) - x` in `[0, 1]` seen as a grid node value of
/// exactly zero or as a sign change between adjacent nodes. Ascending.
fn scan_roots(a: f64, n: usize, cells: usize, exec: Exec) -> Vec<f64> {
    let h = 1.0 / cells as f64;
    let g = |x: f64| iterate(x, a, n) - x;
    let values = exec.map_range(cells + 1, |i| g(i as f64 * h));
    let mut brackets = Vec::new();
    let mut exact = Vec::new();
    for i in 0..=cells {
        if values[i] == 0.0 {
            exact.push(i as f64 * h);
        }
        if i < cells && values[i] * values[i + 1] < 0.0 {
            brackets.push(i);
        }
    }
    let mut roots = exec.map(&brackets, |&i| bisect_root(i as f64 * h, (i + 1) as f64 * h, values[i], g));
    roots.extend(exact);
    roots.sort_by(f64::total_cmp);
    roots
}

fn proper_divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..n).filter(move |&d| n.is_multiple_of(d))
}

fn has_smaller_period(x: f64, a: f64, n: usize) -> bool {
    let tol = Tolerance::absolute(DIVISOR_TOL);
    proper_divisors(n).any(|d| approx_eq(iterate(x, a, d), x, tol).unwrap_or(false))
}

/// Index of the root nearest to `x` that is not yet used, if within `tol`.
fn nearest_unused(roots: &[f64], used: &[bool], x: f64, tol: f64) -> Option<usize> {
    let start = roots.partition_point(|&r| r < x - tol);
    (start..roots.len())
        .take_while(|&j| roots[j] <= x + tol)
        .filter(|&j| !used[j])
        .min_by(|&i, &j| (roots[i] - x).abs().total_cmp(&(roots[j] - x).abs()))
}

fn group_cycles(roots: &[f64], a: f64, n: usize) -> Vec<PeriodicOrbitReport> {
    // iterates of a bisected root stay within this distance of the
    // corresponding root of the cycle
    let match_tol = 1e-6;
    let mut used = vec![false; roots.len()];
    let mut cycles = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut points = vec![roots[i]];
        let mut x = roots[i];
        for _ in 1..n {
            x = logistic_step(x, a);
            match nearest_unused(roots, &used, x, match_tol) {
                Some(j) => {
                    used[j] = true;
                    points.push(roots[j]);
                    x = roots[j];
                }
                None => points.push(x),
            }
        }
        cycles.push(PeriodicOrbitReport::new(n, points, a));
    }
    cycles.sort_by(|u, v| u.points[0].total_cmp(&v.points[0]));
    cycles
}

/// All cycles of prime period `n`, without the period cap. Used by the
/// cascade scan, which needs periods up to 32.
pub fn periodic_orbits_uncapped(a: f64, n: usize, exec: Exec) -> Result<Vec<PeriodicOrbitReport>> {
    check_a(a)?;
    if n == 0 {
        return domain("period must be at least 1");
    }
    let roots: Vec<f64> = scan_roots(a, n, SCAN_CELLS, exec)
        .into_iter()
        .filter(|&x| !has_smaller_period(x, a, n))
        .collect();
    Ok(group_cycles(&roots, a, n))
}

/// All cycles of prime period `n` in `[0, 1]`, `1 <= n <= 12`, ordered by
/// their smallest point.
pub fn find_periodic_orbits(a: f64, n: usize) -> Result<Vec<PeriodicOrbitReport>> {
    find_periodic_orbits_with(a, n, Exec::default())
}

pub fn find_periodic_orbits_with(a: f64, n: usize, exec: Exec) -> Result<Vec<PeriodicOrbitReport>> {
    if !(1..=MAX_PERIOD).contains(&n) {
        return domain(format!("period must lie in 1..={MAX_PERIOD}, got {n}"));
    }
    periodic_orbits_uncapped(a, n, exec)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadeEntry {
    /// `2^k`, the period that becomes stable at `a_onset`.
    pub period: usize,
    pub k: usize,
    /// Where the multiplier of the period `2^(k-1)` cycle crosses -1.
    pub a_onset: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CascadeRecord {
    pub entries: Vec<CascadeEntry>,
}

fn min_distance(u: &[f64], v: &[f64]) -> f64 {
    u.iter()
        .flat_map(|x| v.iter().map(move |y| (x - y).abs()))
        .fold(f64::INFINITY, f64::min)
}

/// Multiplier of the period-`p` cycle at `a` that continues `anchor`.
fn tracked_multiplier(a: f64, p: usize, anchor: &[f64], exec: Exec) -> Option<f64> {
    let cycles = periodic_orbits_uncapped(a, p, exec).ok()?;
    cycles
        .into_iter()
        .min_by(|u, v| min_distance(&u.points, anchor).total_cmp(&min_distance(&v.points, anchor)))
        .map(|c| c.multiplier)
}

/// Locates the period-doubling onsets `a_1 < a_2 < ... < a_{k_max}` inside
/// `[a_lo, a_hi]`, where `a_k` is the parameter at which the period
/// `2^(k-1)` cycle's multiplier crosses -1 and period `2^k` becomes stable.
///
/// The scan starts from the attracting cycle at `a_lo`, which must be the
/// fixed point. The bracket for `a_k` (k >= 3) is capped at half the previous
/// gap past `a_{k-1}`, which holds because successive gaps shrink by a
/// factor of about 4.67. A level that cannot be bracketed ends the scan and
/// the found prefix is returned.
pub fn cascade_scan(a_lo: f64, a_hi: f64, k_max: usize) -> Result<CascadeRecord> {
    cascade_scan_with(a_lo, a_hi, k_max, Exec::default())
}

pub fn cascade_scan_with(a_lo: f64, a_hi: f64, k_max: usize, exec: Exec) -> Result<CascadeRecord> {
    if !(a_lo.is_finite() && a_hi.is_finite() && 1.0 < a_lo && a_lo < a_hi && a_hi <= 4.0) {
        return domain(format!("cascade scan needs 1 < a_lo < a_hi <= 4, got [{a_lo}, {a_hi}]"));
    }
    if !(1..=MAX_CASCADE_K).contains(&k_max) {
        return domain(format!("k_max must lie in 1..={MAX_CASCADE_K}, got {k_max}"));
    }
    let mut record = CascadeRecord::default();
    let mut onsets = vec![];
    for k in 1..=k_max {
        let p = 1usize << (k - 1);
        let lo = match onsets.last() {
            None => a_lo,
            // step off the previous onset so the newborn cycle is resolved
            Some(&prev) => prev + 1e-5,
        };
        let hi = match onsets.len() {
            0 | 1 => a_hi,
            m => a_hi.min(onsets[m - 1] + 0.5 * (onsets[m - 1] - onsets[m - 2])),
        };
        if lo >= hi {
            break;
        }
        let Ok(at_lo) = periodic_orbits_uncapped(lo, p, exec) else { break };
        let Some(anchor) = at_lo.into_iter().find(|c| c.stability == Stability::Attracting) else {
            break;
        };
        let anchor = anchor.points;
        match tracked_multiplier(hi, p, &anchor, exec) {
            Some(m) if m < -1.0 => {}
            _ => break,
        }
        let (mut l, mut h) = (lo, hi);
        let mut lost = false;
        while h - l > CASCADE_TOL {
            let mid = 0.5 * (l + h);
            match tracked_multiplier(mid, p, &anchor, exec) {
                Some(m) if m > -1.0 => l = mid,
                Some(_) => h = mid,
                None => {
                    lost = true;
                    break;
                }
            }
        }
        if lost {
            break;
        }
        let onset = 0.5 * (l + h);
        onsets.push(onset);
        record.entries.push(CascadeEntry { period: 2 * p, k, a_onset: onset });
    }
    Ok(record)
}

/// Uniform grid of `n` values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// For each `a` on a uniform grid, iterates `x0` for `n_transient` steps and
/// records the next `n_keep` iterates.
pub fn bifurcation_diagram(
    a_lo: f64,
    a_hi: f64,
    n_params: usize,
    n_transient: usize,
    n_keep: usize,
    x0: f64,
) -> Result<Vec<(f64, Vec<f64>)>> {
    bifurcation_diagram_with(a_lo, a_hi, n_params, n_transient, n_keep, x0, Exec::default())
}

pub fn bifurcation_diagram_with(
    a_lo: f64,
    a_hi: f64,
    n_params: usize,
    n_transient: usize,
    n_keep: usize,
    x0: f64,
    exec: Exec,
) -> Result<Vec<(f64, Vec<f64>)>> {
    if n_params < 2 {
        return domain("bifurcation diagram needs at least two parameter values");
    }
    if !(x0 > 0.0 && x0 < 1.0) {
        return domain(format!("seed must lie in (0, 1), got {x0}"));
    }
    check_a(a_lo)?;
    check_a(a_hi)?;
    if a_lo > a_hi {
        return domain("a_lo must not exceed a_hi");
    }
    let grid = linspace(a_lo, a_hi, n_params);
    Ok(exec.map(&grid, |&a| (a, diagram_column(a, n_transient, n_keep, x0))))
}

pub fn diagram_column(a: f64, n_transient: usize, n_keep: usize, x0: f64) -> Vec<f64> {
    let mut x = iterate(x0, a, n_transient);
    (0..n_keep)
        .map(|_| {
            x = logistic_step(x, a);
            x
        })
        .collect()
}

/// Number of groups left after sorting `xs` and splitting at gaps larger
/// than `gap`.
pub fn count_clusters(xs: &[f64], gap: f64) -> usize {
    if xs.is_empty() {
        return 0;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    1 + v.windows(2).filter(|w| w[1] - w[0] > gap).count()
}

/// Existence of cycles of each period 1 through 7, at an `a` where a
/// period-3 cycle exists.
pub fn forcing_spot_check(a: f64) -> Result<BTreeMap<usize, bool>> {
    if find_periodic_orbits(a, 3)?.is_empty() {
        return domain(format!("no period-3 cycle at a={a}"));
    }
    (1..=7)
        .map(|n| Ok((n, !find_periodic_orbits(a, n)?.is_empty())))
        .collect()
}
