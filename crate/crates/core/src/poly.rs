//! Roots of real quadratics and cubics.
//!
//! Cubics are solved by locating one real root with a bracketed Newton
//! iteration, deflating, and solving the remaining quadratic. Closed-form
//! cubic formulas are avoided.

use num_complex::Complex64;

/// Roots of `a x^2 + b x + c` with `a != 0`, computed without cancellation.
/// Real roots come back in ascending order; a complex pair is returned with
/// the positive imaginary part first.
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * a * c;
    if disc >= 0.0 {
        let s = disc.sqrt();
        let q = -0.5 * (b + b.signum() * s);
        let (r1, r2) = if q == 0.0 {
            // b == 0 and c == 0
            (0.0, 0.0)
        } else {
            (q / a, c / q)
        };
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        [Complex64::new(lo, 0.0), Complex64::new(hi, 0.0)]
    } else {
        let re = -b / (2.0 * a);
        let im = (-disc).sqrt() / (2.0 * a).abs();
        [Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

/// Evaluates the monic cubic `x^3 + c2 x^2 + c1 x + c0` and its derivative.
fn monic_cubic(c2: f64, c1: f64, c0: f64, x: f64) -> (f64, f64) {
    let p = ((x + c2) * x + c1) * x + c0;
    let dp = (3.0 * x + 2.0 * c2) * x + c1;
    (p, dp)
}

/// One real root of the monic cubic, by Newton steps kept inside a
/// shrinking sign-change bracket.
pub fn cubic_real_root(c2: f64, c1: f64, c0: f64) -> f64 {
    if c0 == 0.0 {
        return 0.0;
    }
    // Cauchy bound: every root lies in [-bound, bound].
    let bound = 1.0 + c2.abs().max(c1.abs()).max(c0.abs());
    let (mut lo, mut hi) = (-bound, bound);
    let mut x = if c0 > 0.0 { -bound.min(c0.abs().cbrt() + c2.abs()) } else { 0.0 };
    x = x.clamp(lo, hi);
    for _ in 0..200 {
        let (p, dp) = monic_cubic(c2, c1, c0, x);
        if p == 0.0 {
            return x;
        }
        if p < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - p / dp;
        let next = if dp != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == x || hi - lo <= f64::EPSILON * x.abs().max(1.0) {
            return next;
        }
        x = next;
    }
    x
}

/// All three roots of `c3 x^3 + c2 x^2 + c1 x + c0` (`c3 != 0`): the real
/// root found by [`cubic_real_root`] first, then the deflated quadratic's.
pub fn cubic_roots(c3: f64, c2: f64, c1: f64, c0: f64) -> [Complex64; 3] {
    let (c2, c1, c0) = (c2 / c3, c1 / c3, c0 / c3);
    let r = cubic_real_root(c2, c1, c0);
    // x^3 + c2 x^2 + c1 x + c0 = (x - r)(x^2 + d1 x + d0)
    let d1 = c2 + r;
    let d0 = if r.abs() > 1.0 { -c0 / r } else { c1 + r * d1 };
    let [q1, q2] = quadratic_roots(1.0, d1, d0);
    [Complex64::new(r, 0.0), q1, q2]
}
