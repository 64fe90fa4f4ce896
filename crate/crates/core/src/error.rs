//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FuncError {
    #[error("interval is degenerate (needs left < right)")]
    DegenerateInterval,
    #[error("breakpoints must be strictly increasing and interior to the domain")]
    BadBreakpoints,
    #[error("expected {expected} piece values, got {got}")]
    PieceCountMismatch { expected: usize, got: usize },
    #[error("function on an infinite domain must be compactly supported (boundary piece 0)")]
    NonCompactSupport,
    #[error("knots must be strictly increasing and include finite domain endpoints")]
    BadKnots,
    #[error("operation requires a jump-free function")]
    JumpsPresent,
    #[error("target interval does not contain the source domain")]
    TargetTooSmall,
    #[error("function is not integrable on its domain")]
    NotIntegrable,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("one-sided engine requires a nonnegative function")]
    NegativeValues,
    #[error("maximal operator on an infinite domain needs compact support")]
    NonCompactSupport,
    #[error("window bound must be positive")]
    BadRadius,
    #[error("point lies outside the domain")]
    OutOfDomain,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiscreteError {
    #[error("signal must contain at least one sample")]
    Empty,
    #[error("window cap must be at least 1")]
    BadWindow,
    #[error("sampling an unbounded domain requires an explicit window")]
    UnboundedDomain,
    #[error("need at least {0} samples")]
    TooFewSamples(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Func(#[from] FuncError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Discrete(#[from] DiscreteError),
}
