//! Nondegenerate real intervals, possibly half- or doubly-infinite.

use crate::error::FuncError;
use crate::rational::{Endpoint, Rat};
use std::fmt;

/// Domain of every function in the crate. Finite endpoints are treated as
/// included; functions of bounded variation extend to them by lateral limits,
/// so openness never matters here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    left: Endpoint,
    right: Endpoint,
}

impl Interval {
    pub fn new(left: Endpoint, right: Endpoint) -> Result<Self, FuncError> {
        if left.cmp_ext(&right) != std::cmp::Ordering::Less {
            return Err(FuncError::DegenerateInterval);
        }
        Ok(Interval { left, right })
    }

    pub fn bounded(a: Rat, b: Rat) -> Result<Self, FuncError> {
        Interval::new(Endpoint::Finite(a), Endpoint::Finite(b))
    }

    pub fn real_line() -> Self {
        Interval {
            left: Endpoint::NegInf,
            right: Endpoint::PosInf,
        }
    }

    pub fn left(&self) -> &Endpoint {
        &self.left
    }

    pub fn right(&self) -> &Endpoint {
        &self.right
    }

    pub fn is_bounded(&self) -> bool {
        self.left.is_finite() && self.right.is_finite()
    }

    /// `None` when the interval has infinite length.
    pub fn length(&self) -> Option<Rat> {
        match (&self.left, &self.right) {
            (Endpoint::Finite(a), Endpoint::Finite(b)) => Some(b - a),
            _ => None,
        }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.left.cmp_rat(x) != std::cmp::Ordering::Greater
            && self.right.cmp_rat(x) != std::cmp::Ordering::Less
    }

    pub fn contains_interior(&self, x: &Rat) -> bool {
        self.left.cmp_rat(x) == std::cmp::Ordering::Less
            && self.right.cmp_rat(x) == std::cmp::Ordering::Greater
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.left.cmp_ext(&other.left) != std::cmp::Ordering::Greater
            && self.right.cmp_ext(&other.right) != std::cmp::Ordering::Less
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}
