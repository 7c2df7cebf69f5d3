//! Shared value types and the tolerance comparison used across the crate.

use crate::error::{domain, Result};

/// A point (X, Y, Z) of the Lorenz phase space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct State3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl State3 {
    pub const ORIGIN: State3 = State3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_slice(v: &[f64]) -> Result<Self> {
        match v {
            [x, y, z] => Ok(Self::new(*x, *y, *z)),
            _ => domain(format!("expected 3 components, got {}", v.len())),
        }
    }

    pub fn dot(&self, other: &State3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(&self, other: &State3) -> f64 {
        State3::new(self.x - other.x, self.y - other.y, self.z - other.z).norm()
    }
}

impl From<[f64; 3]> for State3 {
    fn from(v: [f64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }
}

/// A point of the plane, used for Henon iterates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// An ordered run of consecutive states together with the parameters that
/// produced it. `dt` is present for flows and absent for maps; sample `i`
/// of a flow sits at time `t0 + i * dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit<S, P = ()> {
    samples: Vec<S>,
    pub t0: f64,
    pub dt: Option<f64>,
    pub params: P,
}

impl<S, P> Orbit<S, P> {
    pub fn new(samples: Vec<S>, t0: f64, dt: Option<f64>, params: P) -> Result<Self> {
        if samples.is_empty() {
            return domain("an orbit needs at least one sample");
        }
        if let Some(dt) = dt {
            if !(dt.is_finite() && dt > 0.0) {
                return domain(format!("dt must be positive and finite, got {dt}"));
            }
        }
        Ok(Self { samples, t0, dt, params })
    }

    pub fn samples(&self) -> &[S] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<S> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> &S {
        &self.samples[0]
    }

    pub fn last(&self) -> &S {
        &self.samples[self.samples.len() - 1]
    }

    /// Time of sample `i`, for flows.
    pub fn time(&self, i: usize) -> Option<f64> {
        self.dt.map(|dt| self.t0 + i as f64 * dt)
    }

    pub fn map_samples<T>(self, f: impl FnMut(S) -> T) -> Orbit<T, P> {
        Orbit {
            samples: self.samples.into_iter().map(f).collect(),
            t0: self.t0,
            dt: self.dt,
            params: self.params,
        }
    }

    pub fn with_params<Q>(self, params: Q) -> Orbit<S, Q> {
        Orbit { samples: self.samples, t0: self.t0, dt: self.dt, params }
    }
}

/// Mixed absolute/relative tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Result<Self> {
        let ok = abs.is_finite() && rel.is_finite() && abs >= 0.0 && rel >= 0.0 && abs + rel > 0.0;
        if !ok {
            return domain(format!("invalid tolerance abs={abs} rel={rel}"));
        }
        Ok(Self { abs, rel })
    }

    pub const fn absolute(abs: f64) -> Self {
        Self { abs, rel: 0.0 }
    }

    pub const fn relative(rel: f64) -> Self {
        Self { abs: 0.0, rel }
    }
}

/// `|u - v| <= abs + rel * max(|u|, |v|)`.
pub fn approx_eq(u: f64, v: f64, tol: Tolerance) -> Result<bool> {
    if !u.is_finite() || !v.is_finite() {
        return domain(format!("approx_eq on non-finite input ({u}, {v})"));
    }
    Ok((u - v).abs() <= tol.abs + tol.rel * u.abs().max(v.abs()))
}

/// Componentwise [`approx_eq`] on two states.
pub fn approx_eq3(u: &State3, v: &State3, tol: Tolerance) -> Result<bool> {
    Ok(approx_eq(u.x, v.x, tol)? && approx_eq(u.y, v.y, tol)? && approx_eq(u.z, v.z, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn approx_eq_examples() {
        let t = Tolerance::absolute(1e-12);
        assert!(approx_eq(1.0, 1.0, t).unwrap());
        assert!(!approx_eq(1.0, 1.0 + 1e-9, t).unwrap());
        let r = Tolerance::relative(1e-12);
        assert!(approx_eq(1e6, 1e6 * (1.0 + 1e-13), r).unwrap());
    }

    #[test]
    fn approx_eq_rejects_non_finite() {
        let t = Tolerance::absolute(1.0);
        assert!(approx_eq(f64::NAN, 0.0, t).is_err());
        assert!(approx_eq(0.0, f64::INFINITY, t).is_err());
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(0.0, 0.0).is_err());
        assert!(Tolerance::new(-1.0, 2.0).is_err());
        assert!(Tolerance::new(0.0, 1e-9).is_ok());
    }

    #[test]
    fn orbit_requires_samples_and_positive_dt() {
        assert!(Orbit::<f64>::new(vec![], 0.0, None, ()).is_err());
        assert!(Orbit::new(vec![1.0], 0.0, Some(0.0), ()).is_err());
        let o = Orbit::new(vec![1.0, 2.0, 3.0], 1.0, Some(0.5), ()).unwrap();
        assert_eq!(o.time(2), Some(2.0));
        assert_eq!(*o.last(), 3.0);
    }

    proptest! {
        #[test]
        fn approx_eq_symmetric(u in -1e9f64..1e9, v in -1e9f64..1e9, abs in 0.0f64..1.0, rel in 1e-15f64..1e-3) {
            let t = Tolerance::new(abs, rel).unwrap();
            prop_assert_eq!(approx_eq(u, v, t).unwrap(), approx_eq(v, u, t).unwrap());
        }

        #[test]
        fn approx_eq_reflexive(u in proptest::num::f64::NORMAL, abs in 0.0f64..1.0, rel in 1e-15f64..1e-3) {
            let t = Tolerance::new(abs, rel).unwrap();
            prop_assert!(approx_eq(u, u, t).unwrap());
        }
    }
}
