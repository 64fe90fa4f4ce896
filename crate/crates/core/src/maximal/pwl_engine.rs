//! Float-precision maximal engine for piecewise-linear inputs.
//!
//! One-sided suprema are taken over a finite candidate set: knots, plus the
//! interior stationary points where the average over [a, x] equals f(a).
//! Those stationary points solve a per-piece quadratic; roots are found in
//! floating point and polished by Newton steps on the residual. The output
//! profile is a fine piecewise-linear interpolation tagged as
//! float-precision, with the analytic branch derivative stored per sample.

use super::profile::{
    FloatSample, LinFrac, MaximalProfile, Precision, ProfileBound, Segment, SegmentSource,
};
use crate::error::EngineError;
use crate::rational::{rat_to_f64, Rat};
use crate::pwl::PiecewiseLinearFunction;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Copy, Debug)]
pub struct PwlEngineOptions {
    /// Uniform samples placed inside each knot interval before refinement.
    pub base_samples_per_piece: usize,
    /// Residual tolerance for Newton polishing of stationary points.
    pub root_tol: f64,
    /// Target interpolation error when adaptively bisecting sample gaps.
    pub adaptive_tol: f64,
    /// Maximum bisection depth per gap.
    pub max_depth: u32,
}

impl Default for PwlEngineOptions {
    fn default() -> Self {
        PwlEngineOptions {
            base_samples_per_piece: 16,
            root_tol: 1e-12,
            adaptive_tol: 1e-6,
            max_depth: 12,
        }
    }
}

/// Float view of |f|: knot grid, lateral values, slopes and primitive.
struct FloatData {
    xs: Vec<f64>,
    vl: Vec<f64>,
    vr: Vec<f64>,
    prim: Vec<f64>,
    left_unbounded: bool,
    right_unbounded: bool,
}

impl FloatData {
    fn build(g: &PiecewiseLinearFunction) -> FloatData {
        let xs: Vec<f64> = g.knots().iter().map(rat_to_f64).collect();
        let vl: Vec<f64> = g.values().iter().map(|(l, _)| rat_to_f64(l)).collect();
        let vr: Vec<f64> = g.values().iter().map(|(_, r)| rat_to_f64(r)).collect();
        let prim: Vec<f64> = g.primitive_at_knots().iter().map(rat_to_f64).collect();
        FloatData {
            xs,
            vl,
            vr,
            prim,
            left_unbounded: !g.domain().left().is_finite(),
            right_unbounded: !g.domain().right().is_finite(),
        }
    }

    fn mirrored(&self) -> FloatData {
        let n = self.xs.len();
        let total = self.prim[n - 1];
        FloatData {
            xs: self.xs.iter().rev().map(|x| -x).collect(),
            vl: self.vr.iter().rev().copied().collect(),
            vr: self.vl.iter().rev().copied().collect(),
            // primitive of the mirrored function from its left end
            prim: self.prim.iter().rev().map(|p| total - p).collect(),
            left_unbounded: self.right_unbounded,
            right_unbounded: self.left_unbounded,
        }
    }

    /// Segment index i with xs[i] <= x < xs[i+1]; clamps to the tails.
    fn segment_of(&self, x: f64) -> usize {
        let n = self.xs.len();
        if x < self.xs[0] || n == 1 {
            return 0;
        }
        let mut lo = 0usize;
        let mut hi = n - 1;
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if self.xs[mid] <= x {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo.min(n.saturating_sub(2))
    }

    fn slope(&self, i: usize) -> f64 {
        (self.vl[i + 1] - self.vr[i]) / (self.xs[i + 1] - self.xs[i])
    }

    /// f(x) approached from inside segment i.
    fn value_in_segment(&self, i: usize, x: f64) -> f64 {
        if x <= self.xs[0] {
            return self.vl[0];
        }
        if x >= *self.xs.last().unwrap() {
            return *self.vr.last().unwrap();
        }
        self.vr[i] + self.slope(i) * (x - self.xs[i])
    }

    /// f at a point with no structural side information.
    fn value_plain(&self, x: f64) -> f64 {
        self.value_in_segment(self.segment_of(x), x)
    }

    /// Slope at a point strictly inside a segment (0 on the flat tails).
    fn slope_at(&self, x: f64) -> f64 {
        if x <= self.xs[0] || x >= *self.xs.last().unwrap() {
            return 0.0;
        }
        self.slope(self.segment_of(x))
    }

    fn primitive(&self, x: f64) -> f64 {
        if x <= self.xs[0] {
            return self.prim[0];
        }
        let n = self.xs.len();
        if x >= self.xs[n - 1] {
            return self.prim[n - 1];
        }
        let i = self.segment_of(x);
        let u = x - self.xs[i];
        self.prim[i] + self.vr[i] * u + 0.5 * self.slope(i) * u * u
    }
}

/// Best leftward average at x: (value, anchor, branch derivative).
/// The derivative is NaN for the stationary (shrinking-interval) branch.
///
/// Averages over intervals that stay inside one linear segment are computed
/// by the midpoint formula, which avoids the catastrophic cancellation of
/// primitive differences over short intervals; their envelope derivative is
/// half the segment slope.
fn one_sided_left_eval(
    d: &FloatData,
    x: f64,
    lateral: f64,
    opts: &PwlEngineOptions,
) -> (f64, f64, f64) {
    let fx = d.primitive(x);
    let mut best = lateral;
    let mut anchor = x; // degenerate anchor for the lateral branch
    let mut deriv = f64::NAN;
    // largest knot strictly below x bounds the single-segment region
    let strict_floor = {
        let i = d.xs.partition_point(|&k| k < x);
        if i == 0 {
            f64::NEG_INFINITY
        } else {
            d.xs[i - 1]
        }
    };
    let mut consider = |a: f64, d: &FloatData| {
        if !(a < x) {
            return;
        }
        if a >= strict_floor {
            // no knot inside (a, x): the average of a linear piece is its
            // midpoint value
            let mid = 0.5 * (a + x);
            let avg = d.value_plain(mid);
            if avg > best {
                best = avg;
                anchor = a;
                deriv = 0.5 * d.slope_at(mid);
            }
        } else {
            let avg = (fx - d.primitive(a)) / (x - a);
            if avg > best {
                best = avg;
                anchor = a;
                deriv = (lateral - avg) / (x - a);
            }
        }
    };
    for &k in &d.xs {
        if k >= x {
            break;
        }
        consider(k, d);
    }
    // stationary interior points: f(a) (x - a) = F(x) - F(a) per segment
    let seg_hi = d.segment_of(x).min(d.xs.len().saturating_sub(2));
    for j in 0..=seg_hi {
        if d.xs[j] >= x {
            break;
        }
        let s = d.slope(j);
        if s == 0.0 {
            continue;
        }
        let xj = d.xs[j];
        let vj = d.vr[j];
        let upper = (d.xs[j + 1]).min(x);
        let cap_x = x - xj;
        let g = fx - d.prim[j];
        let disc = cap_x * cap_x - 2.0 * (g - vj * cap_x) / s;
        if disc < 0.0 {
            continue;
        }
        let sq = disc.sqrt();
        for u0 in [cap_x - sq, cap_x + sq] {
            let mut a = xj + u0;
            if !(a > xj && a < upper) {
                continue;
            }
            // Newton polish on r(a) = f(a)(x-a) - (F(x) - F(a))
            for _ in 0..4 {
                let fa = vj + s * (a - xj);
                let r = fa * (x - a) - (fx - d.primitive(a));
                let dr = s * (x - a);
                if dr == 0.0 || r.abs() <= opts.root_tol * (1.0 + fa.abs() * (x - a).abs()) {
                    break;
                }
                let step = r / dr;
                let next = a - step;
                if next <= xj || next >= upper {
                    break;
                }
                a = next;
            }
            if a > xj && a < upper {
                consider(a, d);
            }
        }
    }
    (best, anchor, deriv)
}

struct EvalResult {
    value: f64,
    /// analytic derivative of the winning anchored branch, NaN when the
    /// supremum is only approached by shrinking intervals (filled in later
    /// from local difference quotients)
    deriv: f64,
}

/// Mf at x: max over both one-sided branches, with lateral values taken on
/// the structurally correct side at knots.
fn eval_two_sided(
    d: &FloatData,
    m: &FloatData,
    x: f64,
    at_knot: Option<usize>,
    opts: &PwlEngineOptions,
) -> EvalResult {
    let (lat_l, lat_r) = match at_knot {
        Some(i) => (d.vl[i], d.vr[i]),
        None => {
            let i = d.segment_of(x);
            let v = d.value_in_segment(i, x);
            (v, v)
        }
    };
    let (lv, _la, ld) = one_sided_left_eval(d, x, lat_l, opts);
    let (rv_m, _ra_m, rd_m) = one_sided_left_eval(m, -x, lat_r, opts);
    let value = lv.max(rv_m);
    // envelope derivative of the winning branch; contact points where only
    // the shrinking-interval branch attains the value carry no analytic
    // slope of the profile (NaN, filled from difference quotients later)
    let deriv = if lv >= rv_m { ld } else { -rd_m };
    EvalResult { value, deriv }
}

fn prepare(f: &PiecewiseLinearFunction) -> Result<(PiecewiseLinearFunction, FloatData), EngineError> {
    let g = f.abs();
    // engine entry: compact support on unbounded domains
    if !g.domain().left().is_finite() {
        let v0 = &g.values()[0].0;
        if !v0.is_zero() || !g.tail_slopes().0.is_zero() {
            return Err(EngineError::NonCompactSupport);
        }
    }
    if !g.domain().right().is_finite() {
        let vn = &g.values().last().unwrap().1;
        if !vn.is_zero() || !g.tail_slopes().1.is_zero() {
            return Err(EngineError::NonCompactSupport);
        }
    }
    let d = FloatData::build(&g);
    Ok((g, d))
}

/// Direct float evaluation of M|f| at one point (no profile interpolation).
pub fn maximal_pwl_value_at(
    f: &PiecewiseLinearFunction,
    x: f64,
    opts: &PwlEngineOptions,
) -> Result<f64, EngineError> {
    let (_, d) = prepare(f)?;
    let m = d.mirrored();
    let at_knot = d.xs.iter().position(|&k| k == x);
    Ok(eval_two_sided(&d, &m, x, at_knot, opts).value)
}

/// Float-precision maximal profile of |f| for a piecewise-linear input.
pub fn maximal_pwl(
    f: &PiecewiseLinearFunction,
    opts: &PwlEngineOptions,
) -> Result<MaximalProfile, EngineError> {
    let (g, d) = prepare(f)?;
    let m = d.mirrored();
    let n = d.xs.len();
    let width = (d.xs[n - 1] - d.xs[0]).max(1.0);

    // sampling window: the domain, padded on unbounded sides
    let win_lo = if d.left_unbounded {
        d.xs[0] - 2.0 * width
    } else {
        d.xs[0]
    };
    let win_hi = if d.right_unbounded {
        d.xs[n - 1] + 2.0 * width
    } else {
        d.xs[n - 1]
    };

    // knot samples and uniform fill
    let mut grid: Vec<(f64, Option<usize>)> = Vec::new();
    if d.left_unbounded {
        grid.push((win_lo, None));
        let steps = opts.base_samples_per_piece;
        for t in 1..steps {
            let x = win_lo + (d.xs[0] - win_lo) * t as f64 / steps as f64;
            grid.push((x, None));
        }
    }
    for i in 0..n {
        grid.push((d.xs[i], Some(i)));
        if i + 1 < n {
            let steps = opts.base_samples_per_piece;
            for t in 1..steps {
                let x = d.xs[i] + (d.xs[i + 1] - d.xs[i]) * t as f64 / steps as f64;
                grid.push((x, None));
            }
        }
    }
    if d.right_unbounded {
        let steps = opts.base_samples_per_piece;
        for t in 1..steps {
            let x = d.xs[n - 1] + (win_hi - d.xs[n - 1]) * t as f64 / steps as f64;
            grid.push((x, None));
        }
        grid.push((win_hi, None));
    }

    let mut samples: Vec<FloatSample> = Vec::with_capacity(grid.len() * 2);
    let mut prev: Option<(f64, f64)> = None;
    for (x, at_knot) in grid {
        let r = eval_two_sided(&d, &m, x, at_knot, opts);
        if let Some((px, pv)) = prev {
            refine_gap(
                &d,
                &m,
                px,
                pv,
                x,
                r.value,
                opts,
                0,
                &mut samples,
            );
        }
        samples.push(FloatSample {
            x,
            value: r.value,
            deriv: r.deriv,
        });
        prev = Some((x, r.value));
    }
    samples.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    samples.dedup_by(|a, b| a.x == b.x);
    // stationary-branch samples get their slopes from neighbors; where the
    // profile coincides with |f| over whole subintervals this recovers the
    // true a.e. derivative, and isolated contacts get the corner quotients
    for i in 0..samples.len() {
        if samples[i].deriv.is_nan() {
            // quotients over too-narrow gaps amplify evaluation noise
            let min_dx = 1e-7 * (1.0 + samples[i].x.abs());
            let mut q = 0.0f64;
            if i > 0 {
                let dx = samples[i].x - samples[i - 1].x;
                if dx > min_dx {
                    let c = (samples[i].value - samples[i - 1].value) / dx;
                    if c.abs() > q.abs() {
                        q = c;
                    }
                }
            }
            if i + 1 < samples.len() {
                let dx = samples[i + 1].x - samples[i].x;
                if dx > min_dx {
                    let c = (samples[i + 1].value - samples[i].value) / dx;
                    if c.abs() > q.abs() {
                        q = c;
                    }
                }
            }
            samples[i].deriv = q;
        }
    }

    // piecewise-linear segments through the samples
    let mut segments: Vec<Segment> = Vec::with_capacity(samples.len() + 1);
    let rat = |v: f64| BigRational::from_float(v).unwrap_or_else(Rat::zero);
    if d.left_unbounded {
        // decaying closing branch: anchored average towards the support
        segments.push(closing_segment(&d, &m, win_lo, true));
    }
    for w in samples.windows(2) {
        let (x0, v0) = (w[0].x, w[0].value);
        let (x1, v1) = (w[1].x, w[1].value);
        let slope = (v1 - v0) / (x1 - x0);
        segments.push(Segment {
            lo: ProfileBound::rat(rat(x0)),
            hi: ProfileBound::rat(rat(x1)),
            fun: LinFrac::linear(rat(v0 - slope * x0), rat(slope)),
            source: SegmentSource::Sampled,
        });
    }
    if d.right_unbounded {
        segments.push(closing_segment(&d, &m, win_hi, false));
    }
    let domain = g.domain().clone();
    Ok(MaximalProfile {
        domain,
        segments,
        precision: Precision::Float { tol: opts.root_tol },
        samples,
    })
}

/// Hyperbolic tail segment beyond the sampling window, from the winning
/// anchored branch at the window edge. Left of the support the primitive
/// vanishes, so the branch is F(a)/(a - x); on the right it is
/// (F_total - F(a))/(x - a).
fn closing_segment(d: &FloatData, m: &FloatData, edge: f64, left_side: bool) -> Segment {
    let rat = |v: f64| BigRational::from_float(v).unwrap_or_else(Rat::zero);
    let opts = PwlEngineOptions::default();
    if left_side {
        let (_, am, _) = one_sided_left_eval(m, -edge, 0.0, &opts);
        let a = -am;
        let fa = d.primitive(a);
        Segment {
            lo: ProfileBound::NegInf,
            hi: ProfileBound::rat(rat(edge)),
            fun: LinFrac {
                a: rat(fa),
                b: Rat::zero(),
                c: rat(a),
                d: rat(-1.0),
            },
            source: SegmentSource::RightAnchor(rat(a)),
        }
    } else {
        let (_, a, _) = one_sided_left_eval(d, edge, 0.0, &opts);
        let f_total = *d.prim.last().unwrap();
        let fa = d.primitive(a);
        Segment {
            lo: ProfileBound::rat(rat(edge)),
            hi: ProfileBound::PosInf,
            fun: LinFrac {
                a: rat(f_total - fa),
                b: Rat::zero(),
                c: rat(-a),
                d: rat(1.0),
            },
            source: SegmentSource::LeftAnchor(rat(a)),
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn refine_gap(
    d: &FloatData,
    m: &FloatData,
    x0: f64,
    v0: f64,
    x1: f64,
    v1: f64,
    opts: &PwlEngineOptions,
    depth: u32,
    out: &mut Vec<FloatSample>,
) {
    if depth >= opts.max_depth || x1 - x0 < 1e-9 * (1.0 + x0.abs()) {
        return;
    }
    let xm = 0.5 * (x0 + x1);
    let r = eval_two_sided(d, m, xm, None, opts);
    let interp = 0.5 * (v0 + v1);
    if (r.value - interp).abs() <= opts.adaptive_tol * (1.0 + r.value.abs()) {
        return;
    }
    refine_gap(d, m, x0, v0, xm, r.value, opts, depth + 1, out);
    out.push(FloatSample {
        x: xm,
        value: r.value,
        deriv: r.deriv,
    });
    refine_gap(d, m, xm, r.value, x1, v1, opts, depth + 1, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::rational::{ri, rq};

    #[test]
    fn ramp_endpoint_value() {
        // f(x) = x on [0,1]: Mf(1) = 1 (lateral limit dominates)
        let f = PiecewiseLinearFunction::from_points(
            Interval::bounded(ri(0), ri(1)).unwrap(),
            vec![(ri(0), ri(0)), (ri(1), ri(1))],
        )
        .unwrap();
        let p = maximal_pwl(&f, &PwlEngineOptions::default()).unwrap();
        assert!((p.value_at_f64(1.0) - 1.0).abs() < 1e-9);
        // Mf(0): averages over [0, b] of x: b/2 -> best at b=1: 1/2
        assert!((p.value_at_f64(0.0) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn step_like_matches_exact_engine() {
        use crate::maximal::engine::maximal;
        use crate::step::StepFunction;
        let step = StepFunction::new(
            Interval::real_line(),
            vec![ri(0), rq(1, 2)],
            vec![ri(0), ri(1), ri(0)],
            None,
        )
        .unwrap();
        let exact = maximal(&step).unwrap();
        let as_pwl = PiecewiseLinearFunction::from_step(&step);
        let opts = PwlEngineOptions::default();
        for x in [-0.75, -0.25, 0.0, 0.2, 0.5, 0.9, 1.7] {
            let e = exact.value_at_f64(x);
            let g = maximal_pwl_value_at(&as_pwl, x, &opts).unwrap();
            assert!(
                (e - g).abs() <= 1e-12 * (1.0 + e.abs()),
                "mismatch at {x}: exact {e} vs float {g}"
            );
        }
        // the interpolated profile tracks the engine at its own tolerance
        let float = maximal_pwl(&as_pwl, &opts).unwrap();
        for x in [-0.6, 0.3, 0.9] {
            let e = exact.value_at_f64(x);
            let g = float.value_at_f64(x);
            assert!((e - g).abs() <= 1e-5, "profile mismatch at {x}: {e} vs {g}");
        }
    }

    #[test]
    fn hat_profile_lipschitz() {
        // hat on [0,1] extended by zero to R: Lip(M hat) <= Lip(hat) = 1
        let hat = PiecewiseLinearFunction::new(
            Interval::real_line(),
            vec![ri(0), rq(1, 2), ri(1)],
            vec![
                (ri(0), ri(0)),
                (rq(1, 2), rq(1, 2)),
                (ri(0), ri(0)),
            ],
        )
        .unwrap();
        let p = maximal_pwl(&hat, &PwlEngineOptions::default()).unwrap();
        let sup = p.sup_derivative_f64();
        assert!(sup <= 1.0 + 1e-9, "sup derivative {sup}");
        assert!(sup > 0.2);
    }
}
