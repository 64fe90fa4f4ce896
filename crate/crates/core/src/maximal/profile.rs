//! Exact profiles of maximal-average functions: finitely many monotone
//! linear-fractional segments with exact (rational or quadratic-irrational)
//! boundaries.

use crate::interval::Interval;
use crate::rational::{rat_to_f64, Endpoint, Rat};
use crate::surd::{ExactSum, ExactValue, Surd};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// The function x -> (a + b x) / (c + d x). Segments never contain the pole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinFrac {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl LinFrac {
    pub fn constant(v: Rat) -> Self {
        LinFrac {
            a: v,
            b: Rat::zero(),
            c: crate::rational::ri(1),
            d: Rat::zero(),
        }
    }

    pub fn linear(intercept: Rat, slope: Rat) -> Self {
        LinFrac {
            a: intercept,
            b: slope,
            c: crate::rational::ri(1),
            d: Rat::zero(),
        }
    }

    /// Average over [anchor, x] of a function whose primitive is
    /// `F(x) = f0 + v x` locally: ((f0 + v x) - f_anchor) / (x - anchor).
    pub fn left_average(f0: Rat, v: Rat, f_anchor: Rat, anchor: Rat) -> Self {
        LinFrac {
            a: f0 - f_anchor,
            b: v,
            c: -anchor,
            d: crate::rational::ri(1),
        }
    }

    /// Average over [x, anchor]: (f_anchor - (f0 + v x)) / (anchor - x).
    pub fn right_average(f0: Rat, v: Rat, f_anchor: Rat, anchor: Rat) -> Self {
        LinFrac {
            a: f_anchor - f0,
            b: -v,
            c: anchor,
            d: crate::rational::ri(-1),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let den = &self.c + &self.d * x;
        debug_assert!(!den.is_zero(), "pole inside segment");
        (&self.a + &self.b * x) / den
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        (rat_to_f64(&self.a) + rat_to_f64(&self.b) * x)
            / (rat_to_f64(&self.c) + rat_to_f64(&self.d) * x)
    }

    pub fn eval_exact(&self, x: &ExactValue) -> ExactValue {
        match x {
            ExactValue::Rat(r) => ExactValue::Rat(self.eval(r)),
            ExactValue::Surd(s) => {
                let (p, q, dd) = s.parts();
                // numerator and denominator in the field Q(sqrt(dd))
                let n0 = &self.a + &self.b * p;
                let n1 = &self.b * q;
                let m0 = &self.c + &self.d * p;
                let m1 = &self.d * q;
                let norm = &m0 * &m0 - &m1 * &m1 * dd;
                debug_assert!(!norm.is_zero());
                let r0 = (&n0 * &m0 - &n1 * &m1 * dd) / &norm;
                let r1 = (&n1 * &m0 - &n0 * &m1) / &norm;
                Surd::make(r0, r1, dd.clone())
            }
        }
    }

    /// Numerator of the derivative; its sign is the monotonicity direction.
    pub fn deriv_numer(&self) -> Rat {
        &self.b * &self.c - &self.a * &self.d
    }

    pub fn deriv_at(&self, x: &Rat) -> Rat {
        let den = &self.c + &self.d * x;
        self.deriv_numer() / (&den * &den)
    }

    pub fn deriv_exact(&self, x: &ExactValue) -> ExactValue {
        let k = self.deriv_numer();
        match x {
            ExactValue::Rat(r) => {
                let den = &self.c + &self.d * r;
                ExactValue::Rat(k / (&den * &den))
            }
            ExactValue::Surd(s) => {
                let (p, q, dd) = s.parts();
                let t0 = &self.c + &self.d * p;
                let t1 = &self.d * q;
                // (t0 + t1 sqrt(dd))^2
                let u0 = &t0 * &t0 + &t1 * &t1 * dd;
                let u1 = crate::rational::ri(2) * t0 * t1;
                let norm = &u0 * &u0 - &u1 * &u1 * dd;
                debug_assert!(!norm.is_zero());
                Surd::make(&k * &u0 / &norm, -(&k * &u1) / &norm, dd.clone())
            }
        }
    }

    /// Value limit at a signed infinity; `None` when the limit is infinite.
    pub fn limit_at_infinity(&self) -> Option<Rat> {
        if !self.d.is_zero() {
            Some(&self.b / &self.d)
        } else if self.b.is_zero() {
            Some(&self.a / &self.c)
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.deriv_numer().is_zero()
    }
}

/// Exact boundary of a profile segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProfileBound {
    NegInf,
    Val(ExactValue),
    PosInf,
}

impl ProfileBound {
    pub fn rat(r: Rat) -> Self {
        ProfileBound::Val(ExactValue::Rat(r))
    }

    pub fn from_endpoint(e: &Endpoint) -> Self {
        match e {
            Endpoint::NegInf => ProfileBound::NegInf,
            Endpoint::PosInf => ProfileBound::PosInf,
            Endpoint::Finite(r) => ProfileBound::rat(r.clone()),
        }
    }

    pub fn cmp_bound(&self, other: &ProfileBound) -> Ordering {
        use ProfileBound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Val(a), Val(b)) => a.cmp_exact(b),
        }
    }

    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        match self {
            ProfileBound::NegInf => Ordering::Less,
            ProfileBound::PosInf => Ordering::Greater,
            ProfileBound::Val(v) => v.cmp_exact(&ExactValue::Rat(x.clone())),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ProfileBound::NegInf => f64::NEG_INFINITY,
            ProfileBound::PosInf => f64::INFINITY,
            ProfileBound::Val(v) => v.to_f64(),
        }
    }

    pub fn as_exact(&self) -> Option<&ExactValue> {
        match self {
            ProfileBound::Val(v) => Some(v),
            _ => None,
        }
    }
}

/// Which family of intervals realizes a segment of the profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentSource {
    /// Averages over [anchor, x].
    LeftAnchor(Rat),
    /// Averages over [x, anchor].
    RightAnchor(Rat),
    /// Length-capped window [x - r, x].
    LeftWindow(Rat),
    /// Length-capped window [x, x + r].
    RightWindow(Rat),
    /// Shrinking intervals at x: the lateral value of the source function.
    Stationary,
    /// Float-engine sample (piecewise-linear approximation).
    Sampled,
}

#[derive(Clone, Debug)]
pub struct Segment {
    pub lo: ProfileBound,
    pub hi: ProfileBound,
    pub fun: LinFrac,
    pub source: SegmentSource,
}

impl Segment {
    pub fn value_at_lo(&self) -> ExactValue {
        match &self.lo {
            ProfileBound::Val(v) => self.fun.eval_exact(v),
            _ => ExactValue::Rat(
                self.fun
                    .limit_at_infinity()
                    .expect("unbounded segment value"),
            ),
        }
    }

    pub fn value_at_hi(&self) -> ExactValue {
        match &self.hi {
            ProfileBound::Val(v) => self.fun.eval_exact(v),
            _ => ExactValue::Rat(
                self.fun
                    .limit_at_infinity()
                    .expect("unbounded segment value"),
            ),
        }
    }

    /// Monotonicity direction: sign of the derivative numerator.
    pub fn direction(&self) -> Ordering {
        let k = self.fun.deriv_numer();
        if k.is_positive() {
            Ordering::Greater
        } else if k.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Precision {
    Exact,
    Float { tol: f64 },
}

/// A sample of a float-precision profile, carrying the analytic derivative of
/// the winning branch at the sample point.
#[derive(Clone, Copy, Debug)]
pub struct FloatSample {
    pub x: f64,
    pub value: f64,
    pub deriv: f64,
}

/// Exact (or float-tagged) representation of a maximal function.
#[derive(Clone, Debug)]
pub struct MaximalProfile {
    pub domain: Interval,
    pub segments: Vec<Segment>,
    pub precision: Precision,
    pub samples: Vec<FloatSample>,
}

/// Integral that is exact when every contributing segment integrates
/// rationally, with a float value always available.
#[derive(Clone, Debug)]
pub struct IntegralValue {
    pub approx: f64,
    pub exact: Option<Rat>,
}

impl MaximalProfile {
    pub fn exact(domain: Interval, segments: Vec<Segment>) -> Self {
        MaximalProfile {
            domain,
            segments,
            precision: Precision::Exact,
            samples: Vec::new(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.precision, Precision::Exact)
    }

    fn segment_index_for(&self, x: &Rat) -> usize {
        debug_assert!(self.domain.contains(x));
        let mut lo = 0usize;
        let mut hi = self.segments.len() - 1;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.segments[mid].hi.cmp_rat(x) == Ordering::Less {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Exact value at a rational point of the domain.
    pub fn value_at(&self, x: &Rat) -> Rat {
        let seg = &self.segments[self.segment_index_for(x)];
        seg.fun.eval(x)
    }

    pub fn value_at_f64(&self, x: f64) -> f64 {
        for s in &self.segments {
            if s.hi.to_f64() >= x {
                return s.fun.eval_f64(x);
            }
        }
        self.segments.last().unwrap().fun.eval_f64(x)
    }

    /// Exact total variation. Each segment is monotone, so this is the sum
    /// of absolute endpoint differences.
    pub fn variation(&self) -> ExactSum {
        let mut acc = ExactSum::zero();
        for s in &self.segments {
            let vlo = s.value_at_lo();
            let vhi = s.value_at_hi();
            match vhi.cmp_exact(&vlo) {
                Ordering::Greater => {
                    acc.add_value(&vhi);
                    acc.sub_value(&vlo);
                }
                Ordering::Less => {
                    acc.add_value(&vlo);
                    acc.sub_value(&vhi);
                }
                Ordering::Equal => {}
            }
        }
        acc
    }

    /// Variation of the restriction to [lo, hi].
    pub fn variation_on(&self, lo: &ProfileBound, hi: &ProfileBound) -> ExactSum {
        let mut acc = ExactSum::zero();
        for s in &self.segments {
            let slo = if s.lo.cmp_bound(lo) == Ordering::Less { lo } else { &s.lo };
            let shi = if s.hi.cmp_bound(hi) == Ordering::Greater { hi } else { &s.hi };
            if slo.cmp_bound(shi) != Ordering::Less {
                continue;
            }
            let vlo = match slo {
                ProfileBound::Val(v) => s.fun.eval_exact(v),
                _ => ExactValue::Rat(s.fun.limit_at_infinity().expect("unbounded segment")),
            };
            let vhi = match shi {
                ProfileBound::Val(v) => s.fun.eval_exact(v),
                _ => ExactValue::Rat(s.fun.limit_at_infinity().expect("unbounded segment")),
            };
            match vhi.cmp_exact(&vlo) {
                Ordering::Greater => {
                    acc.add_value(&vhi);
                    acc.sub_value(&vlo);
                }
                Ordering::Less => {
                    acc.add_value(&vlo);
                    acc.sub_value(&vhi);
                }
                Ordering::Equal => {}
            }
        }
        acc
    }

    /// Exact sup of |derivative| over the profile; per segment |p'| is
    /// monotone, so endpoint derivatives suffice.
    pub fn sup_derivative(&self) -> ExactValue {
        debug_assert!(self.is_exact(), "use sup_derivative_f64 on float profiles");
        let mut best = ExactValue::Rat(Rat::zero());
        for s in &self.segments {
            for bound in [&s.lo, &s.hi] {
                let cand = match bound {
                    ProfileBound::Val(v) => abs_exact(s.fun.deriv_exact(v)),
                    _ => {
                        if s.fun.d.is_zero() {
                            ExactValue::Rat((&s.fun.b / &s.fun.c).abs())
                        } else {
                            // derivative decays like 1/x^2
                            ExactValue::Rat(Rat::zero())
                        }
                    }
                };
                if cand.cmp_exact(&best) == Ordering::Greater {
                    best = cand;
                }
            }
        }
        best
    }

    pub fn sup_derivative_f64(&self) -> f64 {
        if self.is_exact() {
            self.sup_derivative().to_f64()
        } else {
            self.samples
                .iter()
                .map(|s| s.deriv.abs())
                .fold(0.0f64, f64::max)
        }
    }

    /// L1 norm of the derivative; equals the variation because the profile
    /// is absolutely continuous.
    pub fn l1_derivative(&self) -> ExactSum {
        self.variation()
    }

    /// Sup of the profile itself.
    pub fn sup_value(&self) -> ExactValue {
        let mut best = self.segments[0].value_at_lo();
        for s in &self.segments {
            for v in [s.value_at_lo(), s.value_at_hi()] {
                if v.cmp_exact(&best) == Ordering::Greater {
                    best = v;
                }
            }
        }
        best
    }

    /// Integral of the (nonnegative) profile over its domain. Exact when all
    /// segments are constant or linear; otherwise the log terms are
    /// evaluated in f64.
    pub fn integral(&self) -> IntegralValue {
        let mut exact = Some(Rat::zero());
        let mut approx = 0.0f64;
        for s in &self.segments {
            let (lo, hi) = (s.lo.to_f64(), s.hi.to_f64());
            if s.fun.is_constant() {
                let v = s.fun.limit_at_infinity().unwrap_or_else(|| {
                    s.fun.eval(&Rat::zero())
                });
                // constant segment
                match (&s.lo, &s.hi) {
                    (ProfileBound::Val(ExactValue::Rat(a)), ProfileBound::Val(ExactValue::Rat(b))) => {
                        if let Some(e) = exact.as_mut() {
                            *e += (b - a) * &v;
                        }
                    }
                    _ => {
                        if !v.is_zero() {
                            exact = None;
                        }
                    }
                }
                approx += rat_to_f64(&v) * (hi - lo).max(0.0);
                continue;
            }
            if s.fun.d.is_zero() {
                // linear segment: trapezoid, exact on rational bounds
                match (&s.lo, &s.hi) {
                    (ProfileBound::Val(ExactValue::Rat(a)), ProfileBound::Val(ExactValue::Rat(b))) => {
                        let va = s.fun.eval(a);
                        let vb = s.fun.eval(b);
                        if let Some(e) = exact.as_mut() {
                            *e += (b - a) * (va + vb) / crate::rational::ri(2);
                        }
                        approx += (hi - lo) * (s.fun.eval_f64(lo) + s.fun.eval_f64(hi)) / 2.0;
                    }
                    _ => {
                        exact = None;
                        approx = f64::INFINITY;
                    }
                }
                continue;
            }
            // genuine hyperbola: b/d * dx + (a - b c / d)/d * ln|c + d x|
            exact = None;
            let b_over_d = rat_to_f64(&s.fun.b) / rat_to_f64(&s.fun.d);
            let k = (rat_to_f64(&s.fun.a)
                - rat_to_f64(&s.fun.b) * rat_to_f64(&s.fun.c) / rat_to_f64(&s.fun.d))
                / rat_to_f64(&s.fun.d);
            let c = rat_to_f64(&s.fun.c);
            let d = rat_to_f64(&s.fun.d);
            let anti = |x: f64| b_over_d * x + k * (c + d * x).abs().ln();
            if lo.is_finite() && hi.is_finite() {
                approx += anti(hi) - anti(lo);
            } else {
                // decaying tail of an integrable profile: integrate towards
                // the pole side numerically is not needed at desk scale; the
                // callers only integrate on bounded domains.
                approx = f64::INFINITY;
            }
        }
        IntegralValue {
            approx,
            exact,
        }
    }

    /// Exact integral of (p')^2; `None` on unbounded spans with nonvanishing
    /// slope. Per segment the antiderivative of K^2 (c+dx)^-4 is rational.
    pub fn l2_derivative_squared(&self) -> Option<ExactSum> {
        let mut acc = ExactSum::zero();
        for s in &self.segments {
            let k = s.fun.deriv_numer();
            if k.is_zero() {
                continue;
            }
            if s.fun.d.is_zero() {
                // constant derivative (b/c)^2 on the span
                let slope = &s.fun.b / &s.fun.c;
                let k2 = &slope * &slope;
                let term = |bound: &ProfileBound| -> Option<ExactValue> {
                    match bound {
                        ProfileBound::Val(ExactValue::Rat(r)) => Some(ExactValue::Rat(&k2 * r)),
                        ProfileBound::Val(ExactValue::Surd(sv)) => {
                            let (p, q, dd) = sv.parts();
                            Some(Surd::make(&k2 * p, &k2 * q, dd.clone()))
                        }
                        _ => None,
                    }
                };
                let hi_t = term(&s.hi)?;
                let lo_t = term(&s.lo)?;
                acc.add_value(&hi_t);
                acc.sub_value(&lo_t);
                continue;
            }
            // antiderivative: -K^2 / (3 d (c + d x)^3)
            let k2 = &k * &k;
            let three_d = crate::rational::ri(3) * &s.fun.d;
            let term_at = |bound: &ProfileBound| -> Option<ExactValue> {
                match bound {
                    ProfileBound::Val(ExactValue::Rat(r)) => {
                        let t = &s.fun.c + &s.fun.d * r;
                        Some(ExactValue::Rat(-&k2 / (&three_d * (&t * &t * &t))))
                    }
                    ProfileBound::Val(ExactValue::Surd(sv)) => {
                        let (p, q, dd) = sv.parts();
                        let t0 = &s.fun.c + &s.fun.d * p;
                        let t1 = &s.fun.d * q;
                        // (t0 + t1 r)^3 with r = sqrt(dd)
                        let u0 = &t0 * &t0 * &t0 + crate::rational::ri(3) * &t0 * &t1 * &t1 * dd;
                        let u1 = crate::rational::ri(3) * &t0 * &t0 * &t1 + &t1 * &t1 * &t1 * dd;
                        let norm = &u0 * &u0 - &u1 * &u1 * dd;
                        let c0 = -&k2 * &u0 / (&three_d * &norm);
                        let c1 = &k2 * &u1 / (&three_d * &norm);
                        Some(Surd::make(c0, c1, dd.clone()))
                    }
                    // (c + dx)^3 -> infinity, antiderivative tends to 0
                    _ => Some(ExactValue::Rat(Rat::zero())),
                }
            };
            let hi_t = term_at(&s.hi)?;
            let lo_t = term_at(&s.lo)?;
            acc.add_value(&hi_t);
            acc.sub_value(&lo_t);
        }
        Some(acc)
    }

    /// Interior strict local maxima: junctions where the direction switches
    /// from increasing to decreasing, and flat plateaus strictly above their
    /// neighbors (reported by their bounds).
    pub fn local_maxima(&self) -> Vec<(ExactValue, ExactValue)> {
        let mut out = Vec::new();
        let n = self.segments.len();
        for i in 0..n.saturating_sub(1) {
            let cur = &self.segments[i];
            let nxt = &self.segments[i + 1];
            if cur.direction() == Ordering::Greater && nxt.direction() == Ordering::Less {
                if let ProfileBound::Val(x) = &cur.hi {
                    out.push((x.clone(), cur.fun.eval_exact(x)));
                }
            }
        }
        out
    }

    /// Structural validation: segments tile the domain and adjacent values
    /// agree exactly at the joins.
    pub fn validate(&self) -> Result<(), String> {
        if self.segments.is_empty() {
            return Err("empty profile".into());
        }
        let first = &self.segments[0];
        if first.lo.cmp_bound(&ProfileBound::from_endpoint(self.domain.left())) != Ordering::Equal
        {
            return Err("profile does not start at the domain boundary".into());
        }
        let last = self.segments.last().unwrap();
        if last.hi.cmp_bound(&ProfileBound::from_endpoint(self.domain.right())) != Ordering::Equal
        {
            return Err("profile does not end at the domain boundary".into());
        }
        for (i, s) in self.segments.iter().enumerate() {
            if s.lo.cmp_bound(&s.hi) != Ordering::Less {
                return Err(format!("segment {i} is empty or reversed"));
            }
            if i + 1 < self.segments.len() {
                let nxt = &self.segments[i + 1];
                if s.hi.cmp_bound(&nxt.lo) != Ordering::Equal {
                    return Err(format!("gap between segments {i} and {}", i + 1));
                }
                let left_val = s.value_at_hi();
                let right_val = nxt.value_at_lo();
                if left_val.cmp_exact(&right_val) != Ordering::Equal {
                    return Err(format!(
                        "discontinuity at segment {i} join: {left_val} vs {right_val}"
                    ));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn abs_exact(v: ExactValue) -> ExactValue {
    match v.cmp_exact(&ExactValue::Rat(Rat::zero())) {
        Ordering::Less => match v {
            ExactValue::Rat(r) => ExactValue::Rat(-r),
            ExactValue::Surd(s) => {
                let (p, q, d) = s.parts();
                Surd::make(-p.clone(), -q.clone(), d.clone())
            }
        },
        _ => v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ri, rq};

    /// Hand-built profile of the maximal function of the unit indicator on
    /// the real line: 1/(1-x), 1, 1/x.
    pub(crate) fn indicator_profile() -> MaximalProfile {
        MaximalProfile::exact(
            Interval::real_line(),
            vec![
                Segment {
                    lo: ProfileBound::NegInf,
                    hi: ProfileBound::rat(ri(0)),
                    fun: LinFrac {
                        a: ri(1),
                        b: ri(0),
                        c: ri(1),
                        d: ri(-1),
                    },
                    source: SegmentSource::RightAnchor(ri(1)),
                },
                Segment {
                    lo: ProfileBound::rat(ri(0)),
                    hi: ProfileBound::rat(ri(1)),
                    fun: LinFrac::constant(ri(1)),
                    source: SegmentSource::Stationary,
                },
                Segment {
                    lo: ProfileBound::rat(ri(1)),
                    hi: ProfileBound::PosInf,
                    fun: LinFrac {
                        a: ri(1),
                        b: ri(0),
                        c: ri(0),
                        d: ri(1),
                    },
                    source: SegmentSource::LeftAnchor(ri(0)),
                },
            ],
        )
    }

    #[test]
    fn closed_form_evaluation() {
        let p = indicator_profile();
        assert!(p.validate().is_ok());
        assert_eq!(p.value_at(&ri(2)), rq(1, 2));
        assert_eq!(p.value_at(&ri(-3)), rq(1, 4));
        assert_eq!(p.value_at(&rq(1, 2)), ri(1));
        assert_eq!(p.variation().as_rat(), Some(&ri(2)));
        assert_eq!(p.sup_derivative(), ExactValue::Rat(ri(1)));
        assert_eq!(p.sup_value(), ExactValue::Rat(ri(1)));
    }

    #[test]
    fn surd_evaluation() {
        // f(x) = x/(1+x) at sqrt(2): sqrt2/(1+sqrt2) = 2 - sqrt2
        let f = LinFrac {
            a: ri(0),
            b: ri(1),
            c: ri(1),
            d: ri(1),
        };
        let s = match Surd::make(ri(0), ri(1), ri(2)) {
            ExactValue::Surd(s) => ExactValue::Surd(s),
            _ => unreachable!(),
        };
        let v = f.eval_exact(&s);
        let expected = Surd::make(ri(2), ri(-1), ri(2));
        assert_eq!(v.cmp_exact(&expected), Ordering::Equal);
    }

    #[test]
    fn derivative_integrals() {
        let p = indicator_profile();
        // int over R of (p')^2 = 2 * int_1^inf x^-4 = 2/3
        let sq = p.l2_derivative_squared().unwrap();
        assert_eq!(sq.as_rat(), Some(&rq(2, 3)));
        let v = p.variation_on(&ProfileBound::rat(ri(1)), &ProfileBound::PosInf);
        assert_eq!(v.as_rat(), Some(&ri(1)));
    }
}
