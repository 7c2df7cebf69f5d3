//! The Henon map `T(x, y) = (y + 1 - a x^2, b x)`.
//!
//! `T` is the composition of a bend `(x, y + 1 - a x^2)`, a contraction of
//! `x` by `b`, and a swap of the axes. Its Jacobian determinant is the
//! constant `-b` and for `b != 0` it is invertible.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::exec::Exec;
use crate::types::{approx_eq, Point2, Tolerance};

/// Orbits reaching this norm are treated as escaping to infinity.
pub const ESCAPE_RADIUS: f64 = 100.0;
/// Post-transient diameter below which an orbit has settled on a fixed point.
pub const FIXED_DIAMETER: f64 = 1e-6;
/// Closest-return tolerance and period cap for periodic classification.
pub const PERIOD_TOL: f64 = 1e-6;
pub const MAX_PERIOD: usize = 32;
/// Regime boundaries observed numerically for `b = 0.3`; no formula is known.
pub const A2_APPROX: f64 = 1.06;
pub const A3_APPROX: f64 = 1.55;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HenonParams {
    pub a: f64,
    pub b: f64,
}

impl HenonParams {
    /// a = 1.4, b = 0.3.
    pub const CANONICAL: HenonParams = HenonParams { a: 1.4, b: 0.3 };

    /// Only finiteness is enforced here. Operations that need `b != 0` or a
    /// particular sign check it themselves, so the area-preserving `b = 1`
    /// and the degenerate `b = 0` cases stay expressible.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return domain(format!("Henon parameters must be finite, got a={a} b={b}"));
        }
        Ok(Self { a, b })
    }

    /// `(1 - b)^2 / 4`.
    pub fn a0(&self) -> f64 {
        0.25 * (1.0 - self.b) * (1.0 - self.b)
    }

    /// `3 (1 - b)^2 / 4`.
    pub fn a1(&self) -> f64 {
        0.75 * (1.0 - self.b) * (1.0 - self.b)
    }

    /// The positive fixed point is attracting for `a0 < a < a1`. This is the
    /// reported interval only: the fixed points exist for all
    /// `a > -(1 - b)^2 / 4` and the positive one already attracts below `a0`.
    pub fn analytic_attracting(&self) -> bool {
        self.a > self.a0() && self.a < self.a1()
    }
}

fn escaped(p: &Point2) -> bool {
    !p.is_finite() || p.norm() > ESCAPE_RADIUS
}

fn step_unchecked(p: Point2, h: &HenonParams) -> Point2 {
    Point2::new(p.y + 1.0 - h.a * p.x * p.x, h.b * p.x)
}

pub fn henon_step(p: Point2, h: &HenonParams) -> Result<Point2> {
    let next = step_unchecked(p, h);
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::Escape { iterate: 1, completed: vec![p] })
    }
}

/// `(x, y) -> (x, y + 1 - a x^2)`.
pub fn bend(p: Point2, h: &HenonParams) -> Point2 {
    Point2::new(p.x, p.y + 1.0 - h.a * p.x * p.x)
}

/// `(x, y) -> (b x, y)`.
pub fn contract(p: Point2, h: &HenonParams) -> Point2 {
    Point2::new(h.b * p.x, p.y)
}

/// `(x, y) -> (y, x)`.
pub fn swap(p: Point2) -> Point2 {
    Point2::new(p.y, p.x)
}

/// The map as swap . contract . bend; equal to [`henon_step`] bit for bit.
pub fn henon_step_decomposed(p: Point2, h: &HenonParams) -> Result<Point2> {
    let next = swap(contract(bend(p, h), h));
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::Escape { iterate: 1, completed: vec![p] })
    }
}

/// `T^{-1}(x, y) = (y / b, x - 1 + (a / b^2) y^2)`.
pub fn henon_inverse(p: Point2, h: &HenonParams) -> Result<Point2> {
    if h.b == 0.0 {
        return Err(Error::NotInvertible("Henon map with b = 0 collapses the plane".into()));
    }
    let prev = Point2::new(p.y / h.b, p.x - 1.0 + (h.a / (h.b * h.b)) * p.y * p.y);
    if prev.is_finite() {
        Ok(prev)
    } else {
        Err(Error::Escape { iterate: 1, completed: vec![p] })
    }
}

pub type Matrix2 = [[f64; 2]; 2];

/// `[[-2 a x, 1], [b, 0]]`.
pub fn jacobian(p: Point2, h: &HenonParams) -> Matrix2 {
    [[-2.0 * h.a * p.x, 1.0], [h.b, 0.0]]
}

pub fn det2(m: &Matrix2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// The constant Jacobian determinant, `-b`.
pub fn jacobian_det(h: &HenonParams) -> f64 {
    -h.b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Attracting,
    Repelling,
    Saddle,
    Nonhyperbolic,
}

/// Eigenvalue moduli within this distance of 1 are nonhyperbolic.
const UNIT_CIRCLE_TOL: f64 = 1e-12;

fn classify(moduli: [f64; 2]) -> Stability {
    let unit = Tolerance::absolute(UNIT_CIRCLE_TOL);
    if moduli.iter().any(|&m| approx_eq(m, 1.0, unit).unwrap_or(false)) {
        Stability::Nonhyperbolic
    } else if moduli.iter().all(|&m| m < 1.0) {
        Stability::Attracting
    } else if moduli.iter().all(|&m| m > 1.0) {
        Stability::Repelling
    } else {
        Stability::Saddle
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HenonFixedPoint {
    pub location: Point2,
    /// `-a x + sqrt(a^2 x^2 + b)` and `-a x - sqrt(a^2 x^2 + b)`; a complex
    /// pair when the radicand is negative.
    pub eigenvalues: [Complex64; 2],
    /// Eigenvector slopes `b / lambda`, present when both eigenvalues are
    /// real and non-zero.
    pub slopes: Option<[f64; 2]>,
    pub stability: Stability,
}

impl HenonFixedPoint {
    pub fn real_eigenvalues(&self) -> Option<[f64; 2]> {
        if self.eigenvalues.iter().all(|z| z.im == 0.0) {
            Some([self.eigenvalues[0].re, self.eigenvalues[1].re])
        } else {
            None
        }
    }
}

fn describe_fixed_point(x: f64, h: &HenonParams) -> HenonFixedPoint {
    let ax = h.a * x;
    let radicand = ax * ax + h.b;
    let (eigenvalues, slopes) = if radicand >= 0.0 {
        let s = radicand.sqrt();
        let l1 = -ax + s;
        let l2 = -ax - s;
        let slopes = (l1 != 0.0 && l2 != 0.0).then(|| [h.b / l1, h.b / l2]);
        ([Complex64::new(l1, 0.0), Complex64::new(l2, 0.0)], slopes)
    } else {
        let s = (-radicand).sqrt();
        ([Complex64::new(-ax, s), Complex64::new(-ax, -s)], None)
    };
    let stability = classify([eigenvalues[0].norm(), eigenvalues[1].norm()]);
    HenonFixedPoint { location: Point2::new(x, h.b * x), eigenvalues, slopes, stability }
}

/// Both fixed points, the roots of `a x^2 + (1 - b) x - 1 = 0` with
/// `y = b x`, largest `x` first. Empty when the roots are complex.
pub fn fixed_points(h: &HenonParams) -> Vec<HenonFixedPoint> {
    let (qa, qb, qc) = (h.a, 1.0 - h.b, -1.0);
    if qa == 0.0 {
        // linear case: (1 - b) x = 1
        return if qb == 0.0 { Vec::new() } else { vec![describe_fixed_point(1.0 / qb, h)] };
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (qb + qb.signum() * disc.sqrt());
    let (r1, r2) = (q / qa, qc / q);
    let (hi, lo) = if r1 >= r2 { (r1, r2) } else { (r2, r1) };
    vec![describe_fixed_point(hi, h), describe_fixed_point(lo, h)]
}

/// Iterates `n_transient + n` times from `x0` and keeps the last `n` points.
/// An escape returns the post-transient points computed so far.
pub fn attractor_cloud(h: &HenonParams, x0: Point2, n_transient: usize, n: usize) -> Result<Vec<Point2>> {
    if n == 0 {
        return domain("attractor cloud needs n >= 1");
    }
    if !x0.is_finite() {
        return domain("initial point must be finite");
    }
    let mut p = x0;
    for i in 0..n_transient {
        p = step_unchecked(p, h);
        if escaped(&p) {
            return Err(Error::Escape { iterate: i + 1, completed: Vec::new() });
        }
    }
    let mut cloud = Vec::with_capacity(n);
    cloud.push(p);
    for i in 1..n {
        p = step_unchecked(p, h);
        if escaped(&p) {
            return Err(Error::Escape { iterate: n_transient + i, completed: cloud });
        }
        cloud.push(p);
    }
    Ok(cloud)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Escape,
    FixedPoint,
    Periodic { period: usize },
    StrangeAttractor,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::Escape => "escape",
            Regime::FixedPoint => "fixed_point",
            Regime::Periodic { .. } => "periodic",
            Regime::StrangeAttractor => "strange_attractor",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub a: f64,
    pub regime: Regime,
    pub a0: f64,
    pub a1: f64,
}

fn diameter(points: &[Point2]) -> f64 {
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in points {
        xmin = xmin.min(p.x);
        xmax = xmax.max(p.x);
        ymin = ymin.min(p.y);
        ymax = ymax.max(p.y);
    }
    (xmax - xmin).hypot(ymax - ymin)
}

fn closest_return_period(points: &[Point2]) -> Option<usize> {
    let tol = Tolerance::absolute(PERIOD_TOL);
    (1..=MAX_PERIOD.min(points.len().saturating_sub(1))).find(|&p| {
        points.iter().zip(&points[p..]).all(|(u, v)| {
            approx_eq(u.x, v.x, tol).unwrap_or(false) && approx_eq(u.y, v.y, tol).unwrap_or(false)
        })
    })
}

/// Empirical regime of the orbit from `x0`: escape if it leaves the escape
/// radius, fixed point if the probe window has diameter below
/// [`FIXED_DIAMETER`], periodic if a period up to [`MAX_PERIOD`] repeats to
/// [`PERIOD_TOL`], strange attractor otherwise.
pub fn classify_regime(h: &HenonParams, x0: Point2, n_transient: usize, n_probe: usize) -> Result<RegimeReport> {
    if n_probe < 64 {
        return domain(format!("classification needs at least 64 probe iterates, got {n_probe}"));
    }
    let regime = match attractor_cloud(h, x0, n_transient, n_probe) {
        Err(Error::Escape { .. }) => Regime::Escape,
        Err(e) => return Err(e),
        Ok(cloud) => {
            if diameter(&cloud) < FIXED_DIAMETER {
                Regime::FixedPoint
            } else if let Some(period) = closest_return_period(&cloud) {
                Regime::Periodic { period }
            } else {
                Regime::StrangeAttractor
            }
        }
    };
    Ok(RegimeReport { a: h.a, regime, a0: h.a0(), a1: h.a1() })
}

/// Classifies every `a` in `a_values` at fixed `b`. Reports come back in the
/// order of `a_values`.
pub fn regime_sweep(
    a_values: &[f64],
    b: f64,
    x0: Point2,
    n_transient: usize,
    n_probe: usize,
    exec: Exec,
) -> Result<Vec<RegimeReport>> {
    exec.map(a_values, |&a| classify_regime(&HenonParams::new(a, b)?, x0, n_transient, n_probe))
        .into_iter()
        .collect()
}
