//! The Lorenz system
//!
//! ```text
//! X' = -sigma X + sigma Y
//! Y' = -X Z + r X - Y
//! Z' =  X Y - b Z
//! ```
//!
//! with its equilibria, linearization, characteristic polynomials and the
//! parameter at which the nontrivial equilibria acquire a purely imaginary
//! eigenvalue pair.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::integrator::{integrate, OdeSystem, StepPlan};
use crate::poly::{cubic_roots, quadratic_roots};
use crate::types::{Orbit, State3};

/// Step size used when a caller does not choose one.
pub const DEFAULT_DT: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorenzParams {
    pub sigma: f64,
    pub r: f64,
    pub b: f64,
}

impl LorenzParams {
    /// sigma = 10, r = 28, b = 8/3.
    pub const CANONICAL: LorenzParams = LorenzParams { sigma: 10.0, r: 28.0, b: 8.0 / 3.0 };

    pub fn new(sigma: f64, r: f64, b: f64) -> Result<Self> {
        if !(sigma.is_finite() && r.is_finite() && b.is_finite()) {
            return domain("Lorenz parameters must be finite");
        }
        if sigma <= 0.0 || b <= 0.0 {
            return domain(format!("need sigma > 0 and b > 0, got sigma={sigma} b={b}"));
        }
        Ok(Self { sigma, r, b })
    }

    pub fn with_r(self, r: f64) -> Result<Self> {
        Self::new(self.sigma, r, self.b)
    }
}

pub fn lorenz_rhs(s: State3, p: &LorenzParams) -> State3 {
    State3::new(
        -p.sigma * s.x + p.sigma * s.y,
        -s.x * s.z + p.r * s.x - s.y,
        s.x * s.y - p.b * s.z,
    )
}

/// The Lorenz right-hand side packaged for the generic integrator.
pub fn lorenz_system(p: LorenzParams) -> OdeSystem<impl Fn(&[f64], &mut [f64])> {
    OdeSystem::new(3, move |v: &[f64], out: &mut [f64]| {
        let d = lorenz_rhs(State3::new(v[0], v[1], v[2]), &p);
        out[0] = d.x;
        out[1] = d.y;
        out[2] = d.z;
    })
    .expect("dimension 3 is positive")
}

pub type Matrix3 = [[f64; 3]; 3];

/// Linearization of the flow at `s`; also the matrix of the variational
/// equation for small perturbations around a trajectory through `s`.
pub fn jacobian(s: State3, p: &LorenzParams) -> Matrix3 {
    [
        [-p.sigma, p.sigma, 0.0],
        [p.r - s.z, -1.0, -s.x],
        [s.y, s.x, -p.b],
    ]
}

/// Coefficients `(1, c2, c1, c0)` of `det(lambda I - m)`.
pub fn characteristic_cubic(m: &Matrix3) -> [f64; 4] {
    let trace = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    [1.0, -trace, minors, -det]
}

/// Roots of a characteristic polynomial and their sign structure.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSummary {
    pub roots: [Complex64; 3],
    pub all_real: bool,
    /// Roots with positive real part.
    pub n_unstable: usize,
}

impl EigenSummary {
    fn from_roots(roots: [Complex64; 3]) -> Self {
        // imaginary parts below this are treated as rounding noise
        let imag_eps = 1e-12;
        let all_real = roots.iter().all(|z| z.im.abs() <= imag_eps * (1.0 + z.re.abs()));
        let n_unstable = roots.iter().filter(|z| z.re > 0.0).count();
        Self { roots, all_real, n_unstable }
    }

    pub fn is_stable(&self) -> bool {
        self.roots.iter().all(|z| z.re < 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub location: State3,
    /// `(1, c2, c1, c0)` of the characteristic cubic at `location`.
    pub char_coeffs: [f64; 4],
    pub eigen_summary: EigenSummary,
}

fn report_at(location: State3, char_coeffs: [f64; 4]) -> EquilibriumReport {
    let roots = cubic_roots(char_coeffs[0], char_coeffs[1], char_coeffs[2], char_coeffs[3]);
    EquilibriumReport { location, char_coeffs, eigen_summary: EigenSummary::from_roots(roots) }
}

/// The origin, plus `(±sqrt(b(r-1)), ±sqrt(b(r-1)), r-1)` when `r > 1`.
pub fn equilibria(p: &LorenzParams) -> Vec<EquilibriumReport> {
    let origin = char_poly_origin(p);
    let mut out = vec![report_at(State3::ORIGIN, origin.expanded())];
    if p.r > 1.0 {
        let c = (p.b * (p.r - 1.0)).sqrt();
        let cubic = char_poly_nontrivial(p).expect("r > 1 checked above");
        for sign in [1.0, -1.0] {
            out.push(report_at(State3::new(sign * c, sign * c, p.r - 1.0), cubic));
        }
    }
    out
}

/// Characteristic polynomial at the origin in its factored form
/// `(lambda + b)(lambda^2 + (sigma + 1) lambda + sigma (1 - r))`.
#[derive(Debug, Clone, PartialEq)]
pub struct OriginCharPoly {
    /// The linear factor's root is `-b`.
    pub b: f64,
    /// `(1, sigma + 1, sigma (1 - r))`.
    pub quadratic: [f64; 3],
    pub discriminant: f64,
    pub quadratic_roots: [Complex64; 2],
    /// All three roots are real (the quadratic discriminant is non-negative).
    pub all_real: bool,
    /// Exactly one root is positive, which happens iff `r > 1`.
    pub has_positive_root: bool,
}

impl OriginCharPoly {
    /// Coefficients of the product cubic.
    pub fn expanded(&self) -> [f64; 4] {
        let [_, q1, q0] = self.quadratic;
        [1.0, q1 + self.b, q0 + self.b * q1, self.b * q0]
    }

    pub fn roots(&self) -> [Complex64; 3] {
        [Complex64::new(-self.b, 0.0), self.quadratic_roots[0], self.quadratic_roots[1]]
    }
}

pub fn char_poly_origin(p: &LorenzParams) -> OriginCharPoly {
    let quadratic = [1.0, p.sigma + 1.0, p.sigma * (1.0 - p.r)];
    let discriminant = quadratic[1] * quadratic[1] - 4.0 * quadratic[2];
    let roots = quadratic_roots(quadratic[0], quadratic[1], quadratic[2]);
    OriginCharPoly {
        b: p.b,
        quadratic,
        discriminant,
        quadratic_roots: roots,
        all_real: discriminant >= 0.0,
        has_positive_root: p.r > 1.0,
    }
}

/// `(1, sigma + b + 1, (r + sigma) b, 2 sigma b (r - 1))`, the characteristic
/// cubic shared by both nontrivial equilibria.
pub fn char_poly_nontrivial(p: &LorenzParams) -> Result<[f64; 4]> {
    if p.r <= 1.0 {
        return domain(format!("nontrivial equilibria need r > 1, got r={}", p.r));
    }
    Ok([1.0, p.sigma + p.b + 1.0, (p.r + p.sigma) * p.b, 2.0 * p.sigma * p.b * (p.r - 1.0)])
}

/// `sigma (sigma + b + 3) / (sigma - b - 1)`; the `r` at which the nontrivial
/// equilibria have a purely imaginary eigenvalue pair.
pub fn critical_r(p: &LorenzParams) -> Result<f64> {
    let denom = p.sigma - p.b - 1.0;
    if denom.abs() <= f64::EPSILON * (p.sigma.abs() + p.b.abs() + 1.0) {
        return Err(Error::SingularParameter(format!(
            "sigma - b - 1 = 0 at sigma={}, b={}",
            p.sigma, p.b
        )));
    }
    Ok(p.sigma * (p.sigma + p.b + 3.0) / denom)
}

/// Integrates the Lorenz flow from `s0`.
pub fn trajectory(p: &LorenzParams, s0: State3, plan: StepPlan) -> Result<Orbit<State3, LorenzParams>> {
    if !s0.is_finite() {
        return domain("initial state must be finite");
    }
    let sys = lorenz_system(*p);
    let orbit = integrate(&sys, &s0.to_array(), plan)?;
    Ok(orbit.map_samples(|v| State3::new(v[0], v[1], v[2])).with_params(*p))
}

/// Integrates `s0` and `s0 + (delta0, 0, 0)` side by side and returns
/// `(t, |P(t) - Q(t)|)` at every step, `n_steps + 1` entries.
pub fn divergence_experiment(p: &LorenzParams, s0: State3, delta0: f64, plan: StepPlan) -> Result<Vec<(f64, f64)>> {
    if !(delta0.is_finite() && delta0 >= 0.0) {
        return domain(format!("delta0 must be non-negative, got {delta0}"));
    }
    let a = trajectory(p, s0, plan)?;
    let b = trajectory(p, State3::new(s0.x + delta0, s0.y, s0.z), plan)?;
    Ok(a.samples()
        .iter()
        .zip(b.samples())
        .enumerate()
        .map(|(i, (u, v))| (plan.t0 + i as f64 * plan.dt, u.distance(v)))
        .collect())
}
