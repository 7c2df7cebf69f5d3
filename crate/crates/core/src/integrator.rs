//! Fixed-step double-approximation integration.
//!
//! One step takes an Euler predictor `q = p + F(p) dt` and averages the two
//! slopes: `p + (F(p) + F(q)) dt / 2`. The result is algebraically the mean
//! of `p` and its two-step Euler image, which the tests check directly.

use crate::error::{domain, Error, Result};
use crate::types::Orbit;

/// An autonomous first-order system `p' = F(p)` on `dim` variables. The
/// right-hand side writes `F(p)` into its second argument.
pub struct OdeSystem<F> {
    dim: usize,
    rhs: F,
}

impl<F> OdeSystem<F>
where
    F: Fn(&[f64], &mut [f64]),
{
    pub fn new(dim: usize, rhs: F) -> Result<Self> {
        if dim == 0 {
            return domain("system dimension must be positive");
        }
        Ok(Self { dim, rhs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates the right-hand side, failing on non-finite output.
    pub fn eval(&self, p: &[f64], out: &mut [f64], step: usize) -> Result<()> {
        (self.rhs)(p, out);
        if out.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::Integration { step, partial: Vec::new() })
        }
    }

    fn check_input(&self, p: &[f64], dt: f64) -> Result<()> {
        if p.len() != self.dim {
            return domain(format!("state has {} components, system has {}", p.len(), self.dim));
        }
        if !p.iter().all(|v| v.is_finite()) {
            return domain("state must be finite");
        }
        if !(dt.is_finite() && dt > 0.0) {
            return domain(format!("dt must be positive and finite, got {dt}"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPlan {
    pub t0: f64,
    pub dt: f64,
    pub n_steps: usize,
}

impl StepPlan {
    pub fn new(t0: f64, dt: f64, n_steps: usize) -> Result<Self> {
        if !t0.is_finite() {
            return domain("t0 must be finite");
        }
        if !(dt.is_finite() && dt > 0.0) {
            return domain(format!("dt must be positive and finite, got {dt}"));
        }
        if n_steps == 0 {
            return domain("n_steps must be at least 1");
        }
        Ok(Self { t0, dt, n_steps })
    }

    /// Plan covering `[t0, t0 + duration]` with step `dt`, rounding the step
    /// count to the nearest integer.
    pub fn covering(t0: f64, duration: f64, dt: f64) -> Result<Self> {
        let n = (duration / dt).round();
        if !(n.is_finite() && n >= 1.0) {
            return domain(format!("duration {duration} with dt {dt} gives no steps"));
        }
        Self::new(t0, dt, n as usize)
    }

    pub fn t_end(&self) -> f64 {
        self.t0 + self.n_steps as f64 * self.dt
    }
}

fn euler_into<F>(sys: &OdeSystem<F>, p: &[f64], dt: f64, slope: &mut [f64], out: &mut [f64], step: usize) -> Result<()>
where
    F: Fn(&[f64], &mut [f64]),
{
    sys.eval(p, slope, step)?;
    for ((o, &pi), &fi) in out.iter_mut().zip(p).zip(slope.iter()) {
        *o = pi + fi * dt;
    }
    Ok(())
}

/// Scratch buffers for repeated stepping without reallocating.
struct Workspace {
    k1: Vec<f64>,
    k2: Vec<f64>,
    pred: Vec<f64>,
}

impl Workspace {
    fn new(dim: usize) -> Self {
        Self { k1: vec![0.0; dim], k2: vec![0.0; dim], pred: vec![0.0; dim] }
    }
}

fn double_approx_into<F>(sys: &OdeSystem<F>, p: &[f64], dt: f64, ws: &mut Workspace, out: &mut [f64], step: usize) -> Result<()>
where
    F: Fn(&[f64], &mut [f64]),
{
    euler_into(sys, p, dt, &mut ws.k1, &mut ws.pred, step)?;
    sys.eval(&ws.pred, &mut ws.k2, step)?;
    for (i, o) in out.iter_mut().enumerate() {
        *o = p[i] + 0.5 * (ws.k1[i] + ws.k2[i]) * dt;
    }
    if out.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Integration { step, partial: Vec::new() })
    }
}

/// `p + F(p) dt`.
pub fn euler_step<F>(sys: &OdeSystem<F>, p: &[f64], dt: f64) -> Result<Vec<f64>>
where
    F: Fn(&[f64], &mut [f64]),
{
    sys.check_input(p, dt)?;
    let mut slope = vec![0.0; sys.dim];
    let mut out = vec![0.0; sys.dim];
    euler_into(sys, p, dt, &mut slope, &mut out, 0)?;
    if !out.iter().all(|v| v.is_finite()) {
        return Err(Error::Integration { step: 0, partial: Vec::new() });
    }
    Ok(out)
}

/// `p + (F(p) + F(p + F(p) dt)) dt / 2`.
pub fn double_approx_step<F>(sys: &OdeSystem<F>, p: &[f64], dt: f64) -> Result<Vec<f64>>
where
    F: Fn(&[f64], &mut [f64]),
{
    sys.check_input(p, dt)?;
    let mut ws = Workspace::new(sys.dim);
    let mut out = vec![0.0; sys.dim];
    double_approx_into(sys, p, dt, &mut ws, &mut out, 0)?;
    Ok(out)
}

/// Runs `plan.n_steps` double-approximation steps from `p0`. The orbit holds
/// `n_steps + 1` samples starting with `p0`. On a non-finite step the error
/// carries the index of the failing step and all samples before it.
pub fn integrate<F>(sys: &OdeSystem<F>, p0: &[f64], plan: StepPlan) -> Result<Orbit<Vec<f64>>>
where
    F: Fn(&[f64], &mut [f64]),
{
    sys.check_input(p0, plan.dt)?;
    let mut ws = Workspace::new(sys.dim);
    let mut samples: Vec<Vec<f64>> = Vec::with_capacity(plan.n_steps + 1);
    samples.push(p0.to_vec());
    let mut next = vec![0.0; sys.dim];
    for step in 1..=plan.n_steps {
        let prev = &samples[step - 1];
        if let Err(Error::Integration { step, .. }) = double_approx_into(sys, prev, plan.dt, &mut ws, &mut next, step) {
            return Err(Error::Integration { step, partial: samples });
        }
        samples.push(next.clone());
    }
    Orbit::new(samples, plan.t0, Some(plan.dt), ())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{approx_eq, Tolerance};
    use proptest::prelude::*;

    fn decay() -> OdeSystem<impl Fn(&[f64], &mut [f64])> {
        OdeSystem::new(1, |p: &[f64], out: &mut [f64]| out[0] = -p[0]).unwrap()
    }

    #[test]
    fn euler_examples() {
        let e = euler_step(&decay(), &[1.0], 0.1).unwrap();
        assert!((e[0] - 0.9).abs() < 1e-15);
        let zero = OdeSystem::new(1, |_: &[f64], out: &mut [f64]| out[0] = 0.0).unwrap();
        assert_eq!(euler_step(&zero, &[3.25], 0.7).unwrap(), vec![3.25]);
    }

    #[test]
    fn double_approx_examples() {
        let sys = decay();
        let d = double_approx_step(&sys, &[1.0], 0.1).unwrap();
        // mean of 1 and the two-step Euler image 0.81
        assert!((d[0] - 0.905).abs() < 1e-15);
        assert!((d[0] - 0.5 * (1.0 + 0.81)).abs() < 1e-15);
    }

    #[test]
    fn single_step_plan_matches_step() {
        let sys = decay();
        let orbit = integrate(&sys, &[2.0], StepPlan::new(0.0, 0.3, 1).unwrap()).unwrap();
        assert_eq!(orbit.len(), 2);
        assert_eq!(orbit.last(), &double_approx_step(&sys, &[2.0], 0.3).unwrap());
    }

    #[test]
    fn decay_reaches_inverse_e() {
        let orbit = integrate(&decay(), &[1.0], StepPlan::new(0.0, 0.01, 100).unwrap()).unwrap();
        assert_eq!(orbit.len(), 101);
        assert!((orbit.last()[0] - (-1.0f64).exp()).abs() < 1e-4);
        assert_eq!(orbit.dt, Some(0.01));
    }

    #[test]
    fn blow_up_reports_step_and_prefix() {
        // x' = x^2 from 1 reaches infinity at t = 1
        let sys = OdeSystem::new(1, |p: &[f64], out: &mut [f64]| out[0] = p[0] * p[0]).unwrap();
        let err = integrate(&sys, &[1.0], StepPlan::new(0.0, 0.5, 50).unwrap()).unwrap_err();
        match err {
            Error::Integration { step, partial } => {
                assert_eq!(partial.len(), step);
                assert!(partial.iter().all(|p| p[0].is_finite()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn input_validation() {
        let sys = decay();
        assert!(euler_step(&sys, &[1.0], 0.0).is_err());
        assert!(euler_step(&sys, &[f64::NAN], 0.1).is_err());
        assert!(double_approx_step(&sys, &[1.0, 2.0], 0.1).is_err());
        assert!(StepPlan::new(0.0, 0.1, 0).is_err());
        assert!(OdeSystem::new(0, |_: &[f64], _: &mut [f64]| {}).is_err());
    }

    #[test]
    fn deterministic() {
        let sys = decay();
        let plan = StepPlan::new(0.0, 0.013, 500).unwrap();
        assert_eq!(integrate(&sys, &[0.7], plan).unwrap(), integrate(&sys, &[0.7], plan).unwrap());
    }

    proptest! {
        #[test]
        fn two_formulations_agree(
            x in -10.0f64..10.0,
            y in -10.0f64..10.0,
            rate in 0.0f64..2.0,
            dt in 1e-6f64..=1.0,
        ) {
            // damped rotation: intermediate magnitudes stay on the scale of p
            let sys = OdeSystem::new(2, move |p: &[f64], out: &mut [f64]| {
                out[0] = -rate * p[0] + p[1];
                out[1] = -p[0] - rate * p[1];
            }).unwrap();
            let p = [x, y];
            let heun = double_approx_step(&sys, &p, dt).unwrap();
            let e1 = euler_step(&sys, &p, dt).unwrap();
            let e2 = euler_step(&sys, &e1, dt).unwrap();
            let tol = Tolerance::new(1e-13, 1e-13).unwrap();
            for i in 0..2 {
                let mean = 0.5 * (p[i] + e2[i]);
                prop_assert!(approx_eq(heun[i], mean, tol).unwrap(), "{} vs {}", heun[i], mean);
            }
        }
    }
}
