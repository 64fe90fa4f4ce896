//! Exact piecewise-constant functions with rational data.

use crate::error::FuncError;
use crate::interval::Interval;
use crate::rational::{Endpoint, Rat};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// A step function on an interval: finitely many strictly increasing interior
/// breakpoints, one value per open piece, and optional explicit values at the
/// breakpoints themselves. A missing point value defaults to the canonical
/// one, the max of the two lateral limits.
///
/// On an infinite domain the unbounded boundary pieces must carry the value 0
/// (compact support), so every instance is integrable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFunction {
    domain: Interval,
    breakpoints: Vec<Rat>,
    piece_values: Vec<Rat>,
    point_values: Vec<Option<Rat>>,
}

impl StepFunction {
    pub fn new(
        domain: Interval,
        breakpoints: Vec<Rat>,
        piece_values: Vec<Rat>,
        point_values: Option<Vec<Option<Rat>>>,
    ) -> Result<Self, FuncError> {
        if piece_values.len() != breakpoints.len() + 1 {
            return Err(FuncError::PieceCountMismatch {
                expected: breakpoints.len() + 1,
                got: piece_values.len(),
            });
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(FuncError::BadBreakpoints);
            }
        }
        if let (Some(first), Some(last)) = (breakpoints.first(), breakpoints.last()) {
            if !domain.contains_interior(first) || !domain.contains_interior(last) {
                return Err(FuncError::BadBreakpoints);
            }
        }
        if !domain.left().is_finite() && !piece_values.first().unwrap().is_zero() {
            return Err(FuncError::NonCompactSupport);
        }
        if !domain.right().is_finite() && !piece_values.last().unwrap().is_zero() {
            return Err(FuncError::NonCompactSupport);
        }
        let point_values = match point_values {
            Some(pv) => {
                if pv.len() != breakpoints.len() {
                    return Err(FuncError::PieceCountMismatch {
                        expected: breakpoints.len(),
                        got: pv.len(),
                    });
                }
                pv
            }
            None => vec![None; breakpoints.len()],
        };
        Ok(StepFunction {
            domain,
            breakpoints,
            piece_values,
            point_values,
        })
    }

    /// Constant function on a domain (0 is the only constant allowed on an
    /// unbounded domain).
    pub fn constant(domain: Interval, value: Rat) -> Result<Self, FuncError> {
        StepFunction::new(domain, vec![], vec![value], None)
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn piece_values(&self) -> &[Rat] {
        &self.piece_values
    }

    pub fn declared_point_values(&self) -> &[Option<Rat>] {
        &self.point_values
    }

    /// Value at breakpoint `i`: the declared value, else max of lateral limits.
    pub fn point_value(&self, i: usize) -> Rat {
        match &self.point_values[i] {
            Some(v) => v.clone(),
            None => self.piece_values[i].clone().max(self.piece_values[i + 1].clone()),
        }
    }

    fn canonical_point_value(&self, i: usize) -> Rat {
        self.piece_values[i].clone().max(self.piece_values[i + 1].clone())
    }

    /// Index of the piece whose closure contains `x`, preferring the piece to
    /// the right when `x` is a breakpoint.
    fn piece_right_of(&self, x: &Rat) -> usize {
        self.breakpoints.partition_point(|b| b <= x)
    }

    /// Pointwise value, honoring declared breakpoint values.
    pub fn value_at(&self, x: &Rat) -> Rat {
        debug_assert!(self.domain.contains(x));
        if let Ok(i) = self.breakpoints.binary_search(x) {
            return self.point_value(i);
        }
        self.piece_values[self.piece_right_of(x)].clone()
    }

    /// Lateral limit from the left; at the left domain endpoint this is the
    /// boundary piece value.
    pub fn left_limit(&self, x: &Rat) -> Rat {
        if self.domain.left().cmp_rat(x) == Ordering::Equal {
            return self.piece_values[0].clone();
        }
        let i = self.breakpoints.partition_point(|b| b < x);
        self.piece_values[i].clone()
    }

    pub fn right_limit(&self, x: &Rat) -> Rat {
        if self.domain.right().cmp_rat(x) == Ordering::Equal {
            return self.piece_values.last().unwrap().clone();
        }
        self.piece_values[self.piece_right_of(x)].clone()
    }

    /// The representative taking max of lateral limits at every breakpoint.
    /// Idempotent; minimizes variation within the a.e.-equivalence class.
    pub fn canonical_representative(&self) -> StepFunction {
        let mut out = self.clone();
        for i in 0..out.breakpoints.len() {
            out.point_values[i] = Some(out.canonical_point_value(i));
        }
        out
    }

    pub fn is_canonical(&self) -> bool {
        (0..self.breakpoints.len())
            .all(|i| self.point_value(i) == self.canonical_point_value(i))
    }

    /// Exact total variation: the sup over partitions, which for a step
    /// function is the sum over breakpoints of |left limit - point value| +
    /// |point value - right limit|.
    pub fn total_variation(&self) -> Rat {
        let mut v = Rat::zero();
        for i in 0..self.breakpoints.len() {
            let pv = self.point_value(i);
            v += (&self.piece_values[i] - &pv).abs();
            v += (pv - &self.piece_values[i + 1]).abs();
        }
        v
    }

    /// Variation of the restriction to `[a, b]`, including the jumps at the
    /// endpoints implied by their (possibly declared) point values.
    pub fn variation_on(&self, a: &Endpoint, b: &Endpoint) -> Rat {
        let lo = match a {
            Endpoint::Finite(x) => x.clone(),
            _ => match self.breakpoints.first() {
                Some(first) => first - Rat::from(num_bigint::BigInt::from(1)),
                None => return Rat::zero(),
            },
        };
        let hi = match b {
            Endpoint::Finite(x) => x.clone(),
            _ => match self.breakpoints.last() {
                Some(last) => last + Rat::from(num_bigint::BigInt::from(1)),
                None => return Rat::zero(),
            },
        };
        if lo >= hi {
            return Rat::zero();
        }
        let mut v = Rat::zero();
        let mut prev = self.value_at(&lo);
        let first_piece = self.piece_right_of(&lo);
        v += (&prev - &self.piece_values[first_piece]).abs();
        prev = self.piece_values[first_piece].clone();
        let start = self.breakpoints.partition_point(|t| t <= &lo);
        for i in start..self.breakpoints.len() {
            if self.breakpoints[i] >= hi {
                break;
            }
            let pv = self.point_value(i);
            v += (&prev - &pv).abs();
            v += (&pv - &self.piece_values[i + 1]).abs();
            prev = self.piece_values[i + 1].clone();
        }
        v += (prev - self.value_at(&hi)).abs();
        v
    }

    /// Applies an exact pointwise map to values, materializing point values
    /// so the result stays pointwise-correct.
    fn map_values(&self, f: impl Fn(&Rat) -> Rat) -> StepFunction {
        let point_values = (0..self.breakpoints.len())
            .map(|i| Some(f(&self.point_value(i))))
            .collect();
        StepFunction {
            domain: self.domain.clone(),
            breakpoints: self.breakpoints.clone(),
            piece_values: self.piece_values.iter().map(&f).collect(),
            point_values,
        }
    }

    pub fn abs(&self) -> StepFunction {
        self.map_values(|v| v.abs())
    }

    /// Pointwise max with 0.
    pub fn positive_part(&self) -> StepFunction {
        self.map_values(|v| v.clone().max(Rat::zero()))
    }

    /// Pointwise max of `-f` with 0.
    pub fn negative_part(&self) -> StepFunction {
        self.map_values(|v| (-v.clone()).max(Rat::zero()))
    }

    pub fn scale(&self, c: &Rat) -> StepFunction {
        self.map_values(|v| v * c)
    }

    pub fn translate(&self, t: &Rat) -> StepFunction {
        let shift = |e: &Endpoint| match e {
            Endpoint::Finite(x) => Endpoint::Finite(x + t),
            other => other.clone(),
        };
        StepFunction {
            domain: Interval::new(shift(self.domain.left()), shift(self.domain.right())).unwrap(),
            breakpoints: self.breakpoints.iter().map(|b| b + t).collect(),
            piece_values: self.piece_values.clone(),
            point_values: self.point_values.clone(),
        }
    }

    /// Extends by zero to a larger interval; the original endpoint values are
    /// kept as explicit point values at the new breakpoints.
    pub fn extend_by_zero(&self, to: Interval) -> Result<StepFunction, FuncError> {
        if !to.contains_interval(&self.domain) {
            return Err(FuncError::TargetTooSmall);
        }
        let mut breakpoints = Vec::new();
        let mut piece_values = Vec::new();
        let mut point_values = Vec::new();
        if let Endpoint::Finite(a) = self.domain.left() {
            if to.left().cmp_rat(a) == Ordering::Less {
                breakpoints.push(a.clone());
                piece_values.push(Rat::zero());
                point_values.push(Some(self.value_at(a)));
            }
        }
        breakpoints.extend(self.breakpoints.iter().cloned());
        piece_values.extend(self.piece_values.iter().cloned());
        point_values.extend(self.point_values.iter().cloned());
        if let Endpoint::Finite(b) = self.domain.right() {
            if to.right().cmp_rat(b) == Ordering::Greater {
                breakpoints.push(b.clone());
                point_values.push(Some(self.value_at(b)));
                piece_values.push(Rat::zero());
            }
        }
        StepFunction::new(to, breakpoints, piece_values, Some(point_values))
    }

    /// Exact sup of |f| over the domain.
    pub fn sup_norm(&self) -> Rat {
        let mut m = Rat::zero();
        for v in &self.piece_values {
            m = m.max(v.abs());
        }
        for i in 0..self.breakpoints.len() {
            m = m.max(self.point_value(i).abs());
        }
        m
    }

    /// Exact integral of |f|; finite by the compact-support invariant.
    pub fn l1_norm(&self) -> Rat {
        let mut total = Rat::zero();
        let mut cuts: Vec<Rat> = Vec::new();
        if let Endpoint::Finite(a) = self.domain.left() {
            cuts.push(a.clone());
        }
        cuts.extend(self.breakpoints.iter().cloned());
        if let Endpoint::Finite(b) = self.domain.right() {
            cuts.push(b.clone());
        }
        // Unbounded boundary pieces hold value 0 and contribute nothing.
        for w in cuts.windows(2) {
            let idx = self.breakpoints.partition_point(|b| b <= &w[0]);
            total += (&w[1] - &w[0]) * self.piece_values[idx].abs();
        }
        total
    }

    /// Exact integral of f^2 (used by quadratic-mean inequalities).
    pub fn l2_norm_squared(&self) -> Rat {
        let mut total = Rat::zero();
        let mut cuts: Vec<Rat> = Vec::new();
        if let Endpoint::Finite(a) = self.domain.left() {
            cuts.push(a.clone());
        }
        cuts.extend(self.breakpoints.iter().cloned());
        if let Endpoint::Finite(b) = self.domain.right() {
            cuts.push(b.clone());
        }
        for w in cuts.windows(2) {
            let idx = self.breakpoints.partition_point(|b| b <= &w[0]);
            let v = &self.piece_values[idx];
            total += (&w[1] - &w[0]) * v * v;
        }
        total
    }

    /// Smallest closed interval outside which the function vanishes, or
    /// `None` for the zero function. Point values at breakpoints are
    /// measure-zero and ignored.
    pub fn support_bounds(&self) -> Option<(Endpoint, Endpoint)> {
        let nonzero: Vec<usize> = (0..self.piece_values.len())
            .filter(|&i| !self.piece_values[i].is_zero())
            .collect();
        let (first, last) = match (nonzero.first(), nonzero.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return None,
        };
        let lo = if first == 0 {
            self.domain.left().clone()
        } else {
            Endpoint::Finite(self.breakpoints[first - 1].clone())
        };
        let hi = if last == self.piece_values.len() - 1 {
            self.domain.right().clone()
        } else {
            Endpoint::Finite(self.breakpoints[last].clone())
        };
        Some((lo, hi))
    }

    /// Breakpoint grid augmented with finite domain endpoints.
    pub(crate) fn knot_grid(&self) -> Vec<Rat> {
        let mut knots = Vec::with_capacity(self.breakpoints.len() + 2);
        if let Endpoint::Finite(a) = self.domain.left() {
            knots.push(a.clone());
        }
        knots.extend(self.breakpoints.iter().cloned());
        if let Endpoint::Finite(b) = self.domain.right() {
            knots.push(b.clone());
        }
        knots
    }

    /// Primitive values F at every knot of `knot_grid`, with F = 0 at the
    /// first knot.
    pub(crate) fn primitive_at_knots(&self, knots: &[Rat]) -> Vec<Rat> {
        if knots.is_empty() {
            return Vec::new();
        }
        let mut acc = Rat::zero();
        let mut out = Vec::with_capacity(knots.len());
        out.push(acc.clone());
        for w in knots.windows(2) {
            let idx = self.breakpoints.partition_point(|b| b <= &w[0]);
            acc += (&w[1] - &w[0]) * &self.piece_values[idx];
            out.push(acc.clone());
        }
        out
    }
}
