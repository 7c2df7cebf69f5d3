//! Poincare sections: crossings of a sampled 3-D trajectory with an oriented
//! plane, the induced return map, and periodicity of that map.
//!
//! A crossing is located by linear interpolation of the plane function
//! `g(s) = n.s - offset` between the two samples that bracket its sign
//! change. Grazing contacts that touch the plane between samples without a
//! sign change are not seen.

use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::types::{approx_eq3, Orbit, State3, Tolerance};

/// Samples with `|g| < ON_PLANE` count as lying on the plane.
pub const ON_PLANE: f64 = 1e-14;

/// Which sign changes of `g` count as crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// `g` goes from negative to non-negative.
    #[default]
    Positive,
    /// `g` goes from positive to non-positive.
    Negative,
    Both,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" | "+" => Ok(Direction::Positive),
            "negative" | "-" => Ok(Direction::Negative),
            "both" => Ok(Direction::Both),
            other => domain(format!("unknown crossing direction {other:?}")),
        }
    }
}

/// The plane `{s : normal . s = offset}` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionPlane {
    normal: State3,
    offset: f64,
    pub direction: Direction,
}

impl SectionPlane {
    /// Normalizes `normal`; `offset` is interpreted against the unit normal.
    pub fn new(normal: State3, offset: f64, direction: Direction) -> Result<Self> {
        let len = normal.norm();
        if !(normal.is_finite() && offset.is_finite()) || len == 0.0 {
            return domain("section plane needs a finite non-zero normal and finite offset");
        }
        let unit = State3::new(normal.x / len, normal.y / len, normal.z / len);
        Ok(Self { normal: unit, offset, direction })
    }

    /// The plane `coordinate = value` for axis 0, 1 or 2.
    pub fn axis(axis: usize, value: f64, direction: Direction) -> Result<Self> {
        let mut n = [0.0; 3];
        match n.get_mut(axis) {
            Some(c) => *c = 1.0,
            None => return domain(format!("axis index {axis} out of range")),
        }
        Self::new(n.into(), value, direction)
    }

    pub fn normal(&self) -> State3 {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Signed distance of `s` from the plane.
    pub fn signed_distance(&self, s: &State3) -> f64 {
        self.normal.dot(s) - self.offset
    }

    fn accepts(&self, g0: f64, g1: f64) -> bool {
        let clamp = |g: f64| if g.abs() < ON_PLANE { 0.0 } else { g };
        let (g0, g1) = (clamp(g0), clamp(g1));
        let up = g0 < 0.0 && g1 >= 0.0;
        let down = g0 > 0.0 && g1 <= 0.0;
        match self.direction {
            Direction::Positive => up,
            Direction::Negative => down,
            Direction::Both => up || down,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionPoint {
    pub location: State3,
    pub t: f64,
    pub index: usize,
}

/// All accepted crossings of `orbit` with `plane`, in time order.
pub fn section<P>(orbit: &Orbit<State3, P>, plane: &SectionPlane) -> Result<Vec<SectionPoint>> {
    let Some(dt) = orbit.dt else {
        return domain("sectioning needs a flow orbit with a recorded dt");
    };
    if orbit.len() < 2 {
        return Err(Error::InsufficientData("sectioning needs at least two samples".into()));
    }
    let samples = orbit.samples();
    let mut out = Vec::new();
    let mut g0 = plane.signed_distance(&samples[0]);
    for (i, pair) in samples.windows(2).enumerate() {
        let (s0, s1) = (pair[0], pair[1]);
        let g1 = plane.signed_distance(&s1);
        if plane.accepts(g0, g1) {
            let frac = if g1.abs() < ON_PLANE { 1.0 } else { g0 / (g0 - g1) };
            let location = State3::new(
                s0.x + frac * (s1.x - s0.x),
                s0.y + frac * (s1.y - s0.y),
                s0.z + frac * (s1.z - s0.z),
            );
            out.push(SectionPoint {
                location,
                t: orbit.t0 + (i as f64 + frac) * dt,
                index: out.len(),
            });
        }
        g0 = g1;
    }
    Ok(out)
}

/// Consecutive pairs `(p_i, p_{i+1})`: the sampled graph of the return map.
pub fn return_map(points: &[SectionPoint]) -> Result<Vec<(SectionPoint, SectionPoint)>> {
    if points.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "return map needs at least two section points, got {}",
            points.len()
        )));
    }
    Ok(points.windows(2).map(|w| (w[0], w[1])).collect())
}

/// Smallest `n <= max_n` such that every available pair `(p_k, p_{k+n})`
/// matches componentwise under `tol`. `None` when no such `n` exists or the
/// sequence is too short to test it.
pub fn detect_period(points: &[SectionPoint], tol: Tolerance, max_n: usize) -> Option<usize> {
    (1..=max_n.min(points.len().saturating_sub(1))).find(|&n| {
        points.iter().zip(&points[n..]).all(|(a, b)| {
            approx_eq3(&a.location, &b.location, tol).unwrap_or(false)
        })
    })
}
