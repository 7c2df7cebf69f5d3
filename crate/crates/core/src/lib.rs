//! Discrete and continuous dynamics from one chain of objects: the Lorenz
//! flow and its fixed-step integrator, Poincare sections of that flow, the
//! Henon map, the logistic map, and the Cantor set left behind by the
//! logistic map once its parameter exceeds 4.
//!
//! Every computation is deterministic. Sweeps over parameter grids run on
//! rayon when the `parallel` feature is enabled (the default) and fall back
//! to plain iterators otherwise; both paths produce identical output.

pub mod error;
pub mod escape;
pub mod exec;
pub mod henon;
pub mod integrator;
pub mod logistic;
pub mod lorenz;
pub mod poincare;
pub mod poly;
pub mod types;

pub use error::{Error, Result};
pub use exec::Exec;
pub use types::{approx_eq, Orbit, Point2, State3, Tolerance};
