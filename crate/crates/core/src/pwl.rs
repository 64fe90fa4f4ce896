//! Piecewise-linear functions with rational knots; jumps are allowed.

use crate::error::FuncError;
use crate::interval::Interval;
use crate::rational::{Endpoint, Rat};
use crate::step::StepFunction;
use num_traits::{Signed, Zero};

/// A piecewise-linear function. `values[i]` holds the (left, right) lateral
/// values at `knots[i]`; the function is linear between consecutive knots.
/// Finite domain endpoints must appear as knots. On an infinite side the
/// function continues linearly with the given tail slope (0 by default, which
/// keeps it bounded).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseLinearFunction {
    domain: Interval,
    knots: Vec<Rat>,
    values: Vec<(Rat, Rat)>,
    tail_slopes: (Rat, Rat),
}

impl PiecewiseLinearFunction {
    pub fn new(
        domain: Interval,
        knots: Vec<Rat>,
        values: Vec<(Rat, Rat)>,
    ) -> Result<Self, FuncError> {
        Self::with_tails(domain, knots, values, (Rat::zero(), Rat::zero()))
    }

    pub fn with_tails(
        domain: Interval,
        knots: Vec<Rat>,
        values: Vec<(Rat, Rat)>,
        tail_slopes: (Rat, Rat),
    ) -> Result<Self, FuncError> {
        if knots.is_empty() || values.len() != knots.len() {
            return Err(FuncError::BadKnots);
        }
        for w in knots.windows(2) {
            if w[0] >= w[1] {
                return Err(FuncError::BadKnots);
            }
        }
        match domain.left() {
            Endpoint::Finite(a) => {
                if knots.first().unwrap() != a {
                    return Err(FuncError::BadKnots);
                }
            }
            _ => {}
        }
        match domain.right() {
            Endpoint::Finite(b) => {
                if knots.last().unwrap() != b {
                    return Err(FuncError::BadKnots);
                }
            }
            _ => {}
        }
        if !domain.contains(knots.first().unwrap()) || !domain.contains(knots.last().unwrap()) {
            return Err(FuncError::BadKnots);
        }
        Ok(PiecewiseLinearFunction {
            domain,
            knots,
            values,
            tail_slopes,
        })
    }

    /// Continuous function through the given (knot, value) points.
    pub fn from_points(domain: Interval, points: Vec<(Rat, Rat)>) -> Result<Self, FuncError> {
        let mut knots = Vec::with_capacity(points.len());
        let mut values = Vec::with_capacity(points.len());
        for (x, v) in points {
            knots.push(x);
            values.push((v.clone(), v));
        }
        Self::new(domain, knots, values)
    }

    /// Step function viewed as a degenerate piecewise-linear function.
    pub fn from_step(f: &StepFunction) -> Self {
        let mut knots: Vec<Rat> = Vec::new();
        let mut values: Vec<(Rat, Rat)> = Vec::new();
        if let Endpoint::Finite(a) = f.domain().left() {
            knots.push(a.clone());
            let v = f.piece_values()[0].clone();
            values.push((v.clone(), v));
        }
        for (i, b) in f.breakpoints().iter().enumerate() {
            knots.push(b.clone());
            values.push((
                f.piece_values()[i].clone(),
                f.piece_values()[i + 1].clone(),
            ));
        }
        if let Endpoint::Finite(b) = f.domain().right() {
            knots.push(b.clone());
            let v = f.piece_values().last().unwrap().clone();
            values.push((v.clone(), v));
        }
        if knots.is_empty() {
            // zero function on the real line
            knots.push(Rat::zero());
            values.push((Rat::zero(), Rat::zero()));
        }
        PiecewiseLinearFunction {
            domain: f.domain().clone(),
            knots,
            values,
            tail_slopes: (Rat::zero(), Rat::zero()),
        }
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn knots(&self) -> &[Rat] {
        &self.knots
    }

    pub fn values(&self) -> &[(Rat, Rat)] {
        &self.values
    }

    pub fn tail_slopes(&self) -> &(Rat, Rat) {
        &self.tail_slopes
    }

    pub fn is_continuous(&self) -> bool {
        // Only interior knots can genuinely jump; boundary knots have a
        // single relevant side but we keep the pairs equal there by policy.
        self.values.iter().all(|(l, r)| l == r)
    }

    /// Slope of the segment starting at knot `i` (towards knot `i+1`).
    fn segment_slope(&self, i: usize) -> Rat {
        let dx = &self.knots[i + 1] - &self.knots[i];
        (&self.values[i + 1].0 - &self.values[i].1) / dx
    }

    pub fn value_at(&self, x: &Rat) -> Rat {
        debug_assert!(self.domain.contains(x));
        match self.knots.binary_search(x) {
            Ok(i) => self.values[i].0.clone().max(self.values[i].1.clone()),
            Err(0) => {
                let dv = x - &self.knots[0];
                &self.values[0].0 + &self.tail_slopes.0 * dv
            }
            Err(i) if i == self.knots.len() => {
                let dv = x - &self.knots[i - 1];
                &self.values[i - 1].1 + &self.tail_slopes.1 * dv
            }
            Err(i) => {
                let t = (x - &self.knots[i - 1]) / (&self.knots[i] - &self.knots[i - 1]);
                &self.values[i - 1].1 + t * (&self.values[i].0 - &self.values[i - 1].1)
            }
        }
    }

    /// Exact a.e. derivative as a step function; requires continuity.
    pub fn derivative(&self) -> Result<StepFunction, FuncError> {
        if !self.is_continuous() {
            return Err(FuncError::JumpsPresent);
        }
        self.ae_slope_step()
    }

    /// Slopes of the linear segments as a step function, ignoring jumps.
    pub(crate) fn ae_slope_step(&self) -> Result<StepFunction, FuncError> {
        let mut breakpoints = Vec::new();
        let mut pieces = Vec::new();
        if !self.domain.left().is_finite() {
            pieces.push(self.tail_slopes.0.clone());
            breakpoints.push(self.knots[0].clone());
        }
        for i in 0..self.knots.len() - 1 {
            pieces.push(self.segment_slope(i));
            breakpoints.push(self.knots[i + 1].clone());
        }
        // The last knot only opens a new piece when a tail follows it.
        if !self.domain.right().is_finite() {
            pieces.push(self.tail_slopes.1.clone());
        } else {
            breakpoints.pop();
        }
        StepFunction::new(self.domain.clone(), breakpoints, pieces, None)
    }

    /// Max |slope|; errors on jumps (the Lipschitz constant would be infinite).
    pub fn lipschitz_constant(&self) -> Result<Rat, FuncError> {
        if !self.is_continuous() {
            return Err(FuncError::JumpsPresent);
        }
        let mut m = Rat::zero();
        if !self.domain.left().is_finite() {
            m = m.max(self.tail_slopes.0.abs());
        }
        if !self.domain.right().is_finite() {
            m = m.max(self.tail_slopes.1.abs());
        }
        for i in 0..self.knots.len() - 1 {
            m = m.max(self.segment_slope(i).abs());
        }
        Ok(m)
    }

    /// Sup of |f|; infinite when a tail has nonzero slope.
    pub fn sup_norm(&self) -> Endpoint {
        let unbounded_left = !self.domain.left().is_finite() && !self.tail_slopes.0.is_zero();
        let unbounded_right = !self.domain.right().is_finite() && !self.tail_slopes.1.is_zero();
        if unbounded_left || unbounded_right {
            return Endpoint::PosInf;
        }
        let mut m = Rat::zero();
        for (l, r) in &self.values {
            m = m.max(l.abs()).max(r.abs());
        }
        Endpoint::Finite(m)
    }

    /// Total variation; `None` when a tail slope makes it infinite.
    pub fn total_variation(&self) -> Option<Rat> {
        let unbounded_left = !self.domain.left().is_finite() && !self.tail_slopes.0.is_zero();
        let unbounded_right = !self.domain.right().is_finite() && !self.tail_slopes.1.is_zero();
        if unbounded_left || unbounded_right {
            return None;
        }
        let mut v = Rat::zero();
        for i in 0..self.knots.len() {
            v += (&self.values[i].1 - &self.values[i].0).abs();
            if i + 1 < self.knots.len() {
                v += (&self.values[i + 1].0 - &self.values[i].1).abs();
            }
        }
        Some(v)
    }

    /// All x where a linear segment crosses zero strictly inside itself.
    fn interior_zero_crossings(&self) -> Vec<Rat> {
        let mut xs = Vec::new();
        for i in 0..self.knots.len() - 1 {
            let a = &self.values[i].1;
            let b = &self.values[i + 1].0;
            if (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive()) {
                let t = a / (a - b);
                xs.push(&self.knots[i] + t * (&self.knots[i + 1] - &self.knots[i]));
            }
        }
        // A sloped infinite tail eventually crosses zero as well.
        if !self.domain.left().is_finite() && !self.tail_slopes.0.is_zero() {
            let v = &self.values[0].0;
            let s = &self.tail_slopes.0;
            if !v.is_zero() && (v / s).is_positive() {
                xs.push(&self.knots[0] - v / s);
            }
        }
        if !self.domain.right().is_finite() && !self.tail_slopes.1.is_zero() {
            let v = &self.values.last().unwrap().1;
            let s = &self.tail_slopes.1;
            if !v.is_zero() && (v / s).is_negative() {
                xs.push(self.knots.last().unwrap() - v / s);
            }
        }
        xs
    }

    fn map_with_crossings(&self, f: impl Fn(&Rat) -> Rat) -> PiecewiseLinearFunction {
        let mut knots = self.knots.clone();
        let mut values = self.values.clone();
        let mut extra = self.interior_zero_crossings();
        extra.sort();
        for x in extra {
            if let Err(pos) = knots.binary_search(&x) {
                knots.insert(pos, x);
                values.insert(pos, (Rat::zero(), Rat::zero()));
            }
        }
        // Beyond the outermost (augmented) knots the function keeps a
        // constant sign, so the mapped tails are again linear; recover their
        // slopes from two probes.
        let one = crate::rational::ri(1);
        let two = crate::rational::ri(2);
        let t0 = if self.domain.left().is_finite() {
            Rat::zero()
        } else {
            let x0 = knots.first().unwrap();
            f(&self.linear_value(&(x0 - &one))) - f(&self.linear_value(&(x0 - &two)))
        };
        let t1 = if self.domain.right().is_finite() {
            Rat::zero()
        } else {
            let xl = knots.last().unwrap();
            f(&self.linear_value(&(xl + &two))) - f(&self.linear_value(&(xl + &one)))
        };
        let values = values.iter().map(|(l, r)| (f(l), f(r))).collect();
        PiecewiseLinearFunction {
            domain: self.domain.clone(),
            knots,
            values,
            tail_slopes: (t0, t1),
        }
    }

    pub fn abs(&self) -> PiecewiseLinearFunction {
        self.map_with_crossings(|v| v.abs())
    }

    pub fn positive_part(&self) -> PiecewiseLinearFunction {
        self.map_with_crossings(|v| v.clone().max(Rat::zero()))
    }

    pub fn negative_part(&self) -> PiecewiseLinearFunction {
        self.map_with_crossings(|v| (-v.clone()).max(Rat::zero()))
    }

    /// Exact integral of |f| (splits segments at zero crossings).
    pub fn l1_norm(&self) -> Result<Rat, FuncError> {
        let tails_vanish = |v: &Rat, s: &Rat| v.is_zero() && s.is_zero();
        if !self.domain.left().is_finite()
            && !tails_vanish(&self.values[0].0, &self.tail_slopes.0)
        {
            return Err(FuncError::NotIntegrable);
        }
        if !self.domain.right().is_finite()
            && !tails_vanish(&self.values.last().unwrap().1, &self.tail_slopes.1)
        {
            return Err(FuncError::NotIntegrable);
        }
        let g = self.abs();
        let mut total = Rat::zero();
        for i in 0..g.knots.len() - 1 {
            let dx = &g.knots[i + 1] - &g.knots[i];
            total += dx * (&g.values[i].1 + &g.values[i + 1].0) / crate::rational::ri(2);
        }
        Ok(total)
    }

    /// Exact integral of f^2.
    pub fn l2_norm_squared(&self) -> Result<Rat, FuncError> {
        let tails_vanish = |v: &Rat, s: &Rat| v.is_zero() && s.is_zero();
        if !self.domain.left().is_finite()
            && !tails_vanish(&self.values[0].0, &self.tail_slopes.0)
        {
            return Err(FuncError::NotIntegrable);
        }
        if !self.domain.right().is_finite()
            && !tails_vanish(&self.values.last().unwrap().1, &self.tail_slopes.1)
        {
            return Err(FuncError::NotIntegrable);
        }
        let mut total = Rat::zero();
        let three = crate::rational::ri(3);
        for i in 0..self.knots.len() - 1 {
            let dx = &self.knots[i + 1] - &self.knots[i];
            let a = &self.values[i].1;
            let b = &self.values[i + 1].0;
            // ∫ over the segment of the linear interpolant squared
            total += dx * (a * a + a * b + b * b) / &three;
        }
        Ok(total)
    }

    /// Primitive values at every knot, with F = 0 at the first knot. Exact;
    /// assumes integrable tails contribute nothing (checked by callers that
    /// need global integrals).
    pub(crate) fn primitive_at_knots(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.knots.len());
        let mut acc = Rat::zero();
        out.push(acc.clone());
        for i in 0..self.knots.len() - 1 {
            let dx = &self.knots[i + 1] - &self.knots[i];
            acc += dx * (&self.values[i].1 + &self.values[i + 1].0) / crate::rational::ri(2);
            out.push(acc.clone());
        }
        out
    }

    pub fn translate(&self, t: &Rat) -> PiecewiseLinearFunction {
        let shift = |e: &Endpoint| match e {
            Endpoint::Finite(x) => Endpoint::Finite(x + t),
            other => other.clone(),
        };
        PiecewiseLinearFunction {
            domain: Interval::new(shift(self.domain.left()), shift(self.domain.right())).unwrap(),
            knots: self.knots.iter().map(|k| k + t).collect(),
            values: self.values.clone(),
            tail_slopes: self.tail_slopes.clone(),
        }
    }

    /// Reflects the graph about the vertical axis `x = c`.
    pub fn reflect_about(&self, c: &Rat) -> PiecewiseLinearFunction {
        let two_c = c + c;
        let reflect = |e: &Endpoint| match e {
            Endpoint::Finite(x) => Endpoint::Finite(&two_c - x),
            Endpoint::NegInf => Endpoint::PosInf,
            Endpoint::PosInf => Endpoint::NegInf,
        };
        let domain =
            Interval::new(reflect(self.domain.right()), reflect(self.domain.left())).unwrap();
        let mut knots: Vec<Rat> = self.knots.iter().map(|k| &two_c - k).collect();
        knots.reverse();
        let mut values: Vec<(Rat, Rat)> = self
            .values
            .iter()
            .map(|(l, r)| (r.clone(), l.clone()))
            .collect();
        values.reverse();
        PiecewiseLinearFunction {
            domain,
            knots,
            values,
            tail_slopes: (-self.tail_slopes.1.clone(), -self.tail_slopes.0.clone()),
        }
    }

    /// Pointwise difference `self - other.translate(t)` is not needed; this
    /// is plain pointwise subtraction on a merged knot grid. Both functions
    /// must share the domain.
    pub fn sub(&self, other: &PiecewiseLinearFunction) -> Result<PiecewiseLinearFunction, FuncError> {
        if self.domain != other.domain {
            return Err(FuncError::TargetTooSmall);
        }
        let mut knots: Vec<Rat> = self.knots.iter().chain(other.knots.iter()).cloned().collect();
        knots.sort();
        knots.dedup();
        let values = knots
            .iter()
            .map(|x| {
                let l = self.left_limit(x) - other.left_limit(x);
                let r = self.right_limit(x) - other.right_limit(x);
                (l, r)
            })
            .collect();
        Ok(PiecewiseLinearFunction {
            domain: self.domain.clone(),
            knots,
            values,
            tail_slopes: (
                &self.tail_slopes.0 - &other.tail_slopes.0,
                &self.tail_slopes.1 - &other.tail_slopes.1,
            ),
        })
    }

    /// Float evaluation (right-continuous at jump knots).
    pub fn value_at_f64(&self, x: f64) -> f64 {
        use crate::rational::rat_to_f64;
        let n = self.knots.len();
        let xs: Vec<f64> = self.knots.iter().map(rat_to_f64).collect();
        if x <= xs[0] {
            return rat_to_f64(&self.values[0].0) + rat_to_f64(&self.tail_slopes.0) * (x - xs[0]);
        }
        if x >= xs[n - 1] {
            return rat_to_f64(&self.values[n - 1].1)
                + rat_to_f64(&self.tail_slopes.1) * (x - xs[n - 1]);
        }
        let i = xs.partition_point(|k| *k <= x) - 1;
        let t = (x - xs[i]) / (xs[i + 1] - xs[i]);
        let a = rat_to_f64(&self.values[i].1);
        let b = rat_to_f64(&self.values[i + 1].0);
        a + t * (b - a)
    }

    pub fn left_limit(&self, x: &Rat) -> Rat {
        match self.knots.binary_search(x) {
            Ok(i) => self.values[i].0.clone(),
            Err(_) => self.linear_value(x),
        }
    }

    pub fn right_limit(&self, x: &Rat) -> Rat {
        match self.knots.binary_search(x) {
            Ok(i) => self.values[i].1.clone(),
            Err(_) => self.linear_value(x),
        }
    }

    fn linear_value(&self, x: &Rat) -> Rat {
        match self.knots.binary_search(x) {
            Ok(_) => unreachable!(),
            Err(0) => {
                let dv = x - &self.knots[0];
                &self.values[0].0 + &self.tail_slopes.0 * dv
            }
            Err(i) if i == self.knots.len() => {
                let dv = x - &self.knots[i - 1];
                &self.values[i - 1].1 + &self.tail_slopes.1 * dv
            }
            Err(i) => {
                let t = (x - &self.knots[i - 1]) / (&self.knots[i] - &self.knots[i - 1]);
                &self.values[i - 1].1 + t * (&self.values[i].0 - &self.values[i - 1].1)
            }
        }
    }
}
