use std::f64::consts::{FRAC_PI_2, PI};

use discrete_dynamics::integrator::{integrate, OdeSystem, StepPlan};
use discrete_dynamics::lorenz::{trajectory, LorenzParams, DEFAULT_DT};
use discrete_dynamics::poincare::*;
use discrete_dynamics::{Orbit, State3, Tolerance};
use proptest::prelude::*;

// x' = y, y' = -x: x = cos t, y = -sin t from (1, 0, 0)
fn oscillator(duration: f64, dt: f64) -> Orbit<State3> {
    let sys = OdeSystem::new(3, |p: &[f64], out: &mut [f64]| {
        out[0] = p[1];
        out[1] = -p[0];
        out[2] = 0.0;
    })
    .unwrap();
    let orbit = integrate(&sys, &[1.0, 0.0, 0.0], StepPlan::covering(0.0, duration, dt).unwrap()).unwrap();
    orbit.map_samples(|v| State3::from_slice(&v).unwrap())
}

#[test]
fn oscillator_crossings_at_quarter_periods() {
    let orbit = oscillator(30.0, 1e-3);
    let plane = SectionPlane::axis(0, 0.0, Direction::Both).unwrap();
    let pts = section(&orbit, &plane).unwrap();
    // pi/2 + k pi < 30 for k = 0..=9
    assert_eq!(pts.len(), 10);
    for (k, p) in pts.iter().enumerate() {
        let expected = FRAC_PI_2 + k as f64 * PI;
        assert!((p.t - expected).abs() < 5e-3, "k={k}: {} vs {expected}", p.t);
        assert!(p.location.x.abs() < 1e-12);
        assert_eq!(p.index, k);
    }
}

#[test]
fn crossing_count_is_stable_under_step_halving() {
    let plane = SectionPlane::axis(0, 0.0, Direction::Both).unwrap();
    let coarse = section(&oscillator(30.0, 2e-3), &plane).unwrap();
    let fine = section(&oscillator(30.0, 1e-3), &plane).unwrap();
    assert_eq!(coarse.len(), fine.len());
    for (c, f) in coarse.iter().zip(&fine) {
        assert!((c.t - f.t).abs() < 5e-3);
    }
}

#[test]
fn oscillator_return_map_is_the_identity() {
    let plane = SectionPlane::axis(0, 0.0, Direction::Positive).unwrap();
    let pts = section(&oscillator(30.0, 1e-3), &plane).unwrap();
    let pairs = return_map(&pts).unwrap();
    assert!(!pairs.is_empty());
    for (a, b) in pairs {
        assert!(a.location.distance(&b.location) < 1e-3);
        assert!((b.t - a.t - 2.0 * PI).abs() < 5e-3);
    }
}

#[test]
fn oscillator_periods() {
    let orbit = oscillator(30.0, 1e-3);
    let tol = Tolerance::absolute(1e-3);
    let one = section(&orbit, &SectionPlane::axis(0, 0.0, Direction::Positive).unwrap()).unwrap();
    assert_eq!(detect_period(&one, tol, 10), Some(1));
    let neg = section(&orbit, &SectionPlane::axis(0, 0.0, Direction::Negative).unwrap()).unwrap();
    assert_eq!(detect_period(&neg, tol, 10), Some(1));
    let both = section(&orbit, &SectionPlane::axis(0, 0.0, Direction::Both).unwrap()).unwrap();
    assert_eq!(detect_period(&both, tol, 10), Some(2));
    // positive crossings of x = 0 happen where y = +1
    assert!(one.iter().all(|p| (p.location.y - 1.0).abs() < 1e-3));
    assert!(neg.iter().all(|p| (p.location.y + 1.0).abs() < 1e-3));
}

#[test]
fn lorenz_section_stays_in_the_wings() {
    let orbit = trajectory(
        &LorenzParams::CANONICAL,
        State3::new(0.0, 1.0, 0.0),
        StepPlan::new(0.0, DEFAULT_DT, 100_000).unwrap(),
    )
    .unwrap();
    let plane = SectionPlane::axis(2, 27.0, Direction::Positive).unwrap();
    let pts = section(&orbit, &plane).unwrap();
    assert!(pts.len() >= 50, "{} points", pts.len());
    for p in &pts {
        assert!((p.location.z - 27.0).abs() < 1e-8);
        assert!(p.location.x.abs() <= 25.0 && p.location.y.abs() <= 30.0, "{p:?}");
    }
    assert_eq!(detect_period(&pts, Tolerance::absolute(1e-3), 20), None);
}

#[test]
fn tilted_plane_points_lie_on_the_plane() {
    let orbit = trajectory(
        &LorenzParams::CANONICAL,
        State3::new(1.0, 1.0, 1.0),
        StepPlan::new(0.0, DEFAULT_DT, 20_000).unwrap(),
    )
    .unwrap();
    let plane = SectionPlane::new(State3::new(1.0, -1.0, 0.5), 3.0, Direction::Both).unwrap();
    let pts = section(&orbit, &plane).unwrap();
    assert!(pts.len() > 20);
    for p in &pts {
        assert!(plane.signed_distance(&p.location).abs() < 1e-8);
    }
    let pos = section(&orbit, &SectionPlane::new(State3::new(1.0, -1.0, 0.5), 3.0, Direction::Positive).unwrap()).unwrap();
    let neg = section(&orbit, &SectionPlane::new(State3::new(1.0, -1.0, 0.5), 3.0, Direction::Negative).unwrap()).unwrap();
    assert_eq!(pos.len() + neg.len(), pts.len());
    assert!((pos.len() as i64 - neg.len() as i64).abs() <= 1);
}

proptest! {
    #[test]
    fn straight_line_crossing_is_exact(
        start in prop::array::uniform3(-5.0f64..5.0),
        vel in prop::array::uniform3(0.5f64..3.0),
        offset in -2.0f64..2.0,
    ) {
        // s(t) = start + vel t sampled at dt = 0.1 over [0, 10]
        let samples: Vec<State3> = (0..=100)
            .map(|i| {
                let t = i as f64 * 0.1;
                State3::new(start[0] + vel[0] * t, start[1] + vel[1] * t, start[2] + vel[2] * t)
            })
            .collect();
        let orbit = Orbit::new(samples, 0.0, Some(0.1), ()).unwrap();
        let plane = SectionPlane::new(State3::new(1.0, 1.0, 1.0), offset, Direction::Both).unwrap();
        let pts = section(&orbit, &plane).unwrap();
        let n = plane.normal();
        let g0 = n.dot(&State3::from(start)) - offset;
        let rate = n.dot(&State3::from(vel));
        let t_cross = -g0 / rate;
        if t_cross > 0.0 && t_cross < 10.0 {
            prop_assert_eq!(pts.len(), 1);
            prop_assert!((pts[0].t - t_cross).abs() < 1e-9);
        } else if !(-1e-9..=10.0 + 1e-9).contains(&t_cross) {
            prop_assert!(pts.is_empty());
        }
    }
}
