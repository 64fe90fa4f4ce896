//! Exact one-dimensional toolkit for maximal averages of functions of
//! bounded variation.
//!
//! The crate provides exact rational representations of step and
//! piecewise-linear functions, computes the noncentered maximal function
//! (and its window-capped local variant) as an explicit piecewise
//! linear-fractional profile, ships fast discrete kernels for sampled
//! signals, and machine-checks a family of variation, Lipschitz, Landau and
//! Poincaré-type inequalities on exact instances.

pub mod error;
pub mod rational;
pub mod surd;
pub mod interval;
pub mod step;
pub mod pwl;
pub mod measure;
pub mod maximal;
pub mod discrete;
pub mod gallery;
pub mod checks;
pub mod json;

pub use error::{CheckError, DiscreteError, EngineError, FuncError};
pub use interval::Interval;
pub use measure::{derivative_measure_pwl, derivative_measure_step, DerivativeMeasure};
pub use pwl::PiecewiseLinearFunction;
pub use rational::{parse_rat, rat_to_f64, rat_to_string, ri, rq, Endpoint, Rat};
pub use step::StepFunction;
pub use surd::{ExactSum, ExactValue, Surd};
