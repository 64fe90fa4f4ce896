//! Exact maximal-average engines for step functions.
//!
//! The two-sided maximal function is computed as the pointwise max of two
//! one-sided profiles (averages over intervals with the evaluation point as
//! one endpoint); averaging over [a, b] containing x is a convex combination
//! of the averages over [a, x] and [x, b], so nothing is lost. One-sided
//! suprema over a step function are attained at piece endpoints, which makes
//! the candidate set finite, and only candidates on the convex hull of the
//! primitive's graph can win.

use super::envelope::{max_of_profiles, same_function, upper_envelope, Candidate};
use super::profile::{LinFrac, MaximalProfile, ProfileBound, Segment, SegmentSource};
use crate::error::EngineError;
use crate::interval::Interval;
use crate::rational::{Endpoint, Rat};
use crate::step::StepFunction;
use crate::surd::{ExactValue, Surd};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// Optimal (or limiting) averaging interval at one point.
#[derive(Clone, Debug)]
pub struct ArgmaxWitness {
    pub x: Rat,
    pub value: Rat,
    /// An interval over which the average attains the maximal value.
    pub interval: Option<(Rat, Rat)>,
    pub length: Option<Rat>,
    /// True when the supremum is only approached by shrinking intervals.
    pub degenerate: bool,
}

/// Breakpoint grid, primitive table and piece lookup shared by the engines.
pub(crate) struct Geometry {
    pub knots: Vec<Rat>,
    pub prim: Vec<Rat>,
    pub f: StepFunction,
}

impl Geometry {
    pub fn new(f: &StepFunction) -> Self {
        let g = f.canonical_representative();
        let knots = g.knot_grid();
        let prim = g.primitive_at_knots(&knots);
        Geometry { knots, prim, f: g }
    }

    /// Piece value on the open interval just right of `x`.
    pub fn value_right_of(&self, x: &Rat) -> Rat {
        let i = self.f.breakpoints().partition_point(|b| b <= x);
        self.f.piece_values()[i].clone()
    }

    /// Primitive F with F = 0 at the first knot, constant beyond the ends.
    pub fn primitive(&self, x: &Rat) -> Rat {
        if self.knots.is_empty() {
            return Rat::zero();
        }
        let i = self.knots.partition_point(|k| k <= x);
        if i == 0 {
            return Rat::zero();
        }
        let k = &self.knots[i - 1];
        let v = self.value_right_of(k);
        &self.prim[i - 1] + v * (x - k)
    }
}

fn check_nonnegative(f: &StepFunction) -> Result<(), EngineError> {
    if f.piece_values().iter().any(|v| v.is_negative()) {
        return Err(EngineError::NegativeValues);
    }
    Ok(())
}

/// Negation of an exact value (for mirroring profiles).
fn neg_exact(v: &ExactValue) -> ExactValue {
    match v {
        ExactValue::Rat(r) => ExactValue::Rat(-r.clone()),
        ExactValue::Surd(s) => {
            let (p, q, d) = s.parts();
            Surd::make(-p.clone(), -q.clone(), d.clone())
        }
    }
}

fn mirror_bound(b: &ProfileBound) -> ProfileBound {
    match b {
        ProfileBound::NegInf => ProfileBound::PosInf,
        ProfileBound::PosInf => ProfileBound::NegInf,
        ProfileBound::Val(v) => ProfileBound::Val(neg_exact(v)),
    }
}

fn mirror_source(s: &SegmentSource) -> SegmentSource {
    match s {
        SegmentSource::LeftAnchor(d) => SegmentSource::RightAnchor(-d.clone()),
        SegmentSource::RightAnchor(d) => SegmentSource::LeftAnchor(-d.clone()),
        SegmentSource::LeftWindow(r) => SegmentSource::RightWindow(r.clone()),
        SegmentSource::RightWindow(r) => SegmentSource::LeftWindow(r.clone()),
        other => other.clone(),
    }
}

fn mirror_segments(segs: &[Segment]) -> Vec<Segment> {
    let mut out: Vec<Segment> = segs
        .iter()
        .map(|s| Segment {
            lo: mirror_bound(&s.hi),
            hi: mirror_bound(&s.lo),
            fun: LinFrac {
                a: s.fun.a.clone(),
                b: -s.fun.b.clone(),
                c: s.fun.c.clone(),
                d: -s.fun.d.clone(),
            },
            source: mirror_source(&s.source),
        })
        .collect();
    out.reverse();
    out
}

fn mirror_step(f: &StepFunction) -> StepFunction {
    let reflect = |e: &Endpoint| match e {
        Endpoint::Finite(x) => Endpoint::Finite(-x.clone()),
        Endpoint::NegInf => Endpoint::PosInf,
        Endpoint::PosInf => Endpoint::NegInf,
    };
    let domain = Interval::new(reflect(f.domain().right()), reflect(f.domain().left())).unwrap();
    let mut breakpoints: Vec<Rat> = f.breakpoints().iter().map(|b| -b.clone()).collect();
    breakpoints.reverse();
    let mut pieces: Vec<Rat> = f.piece_values().to_vec();
    pieces.reverse();
    let mut points: Vec<Option<Rat>> = f.declared_point_values().to_vec();
    points.reverse();
    StepFunction::new(domain, breakpoints, pieces, Some(points)).unwrap()
}

/// Spans of the domain between consecutive grid cuts.
fn spans(domain: &Interval, cuts: &[Rat]) -> Vec<(ProfileBound, ProfileBound)> {
    let mut bounds: Vec<ProfileBound> = Vec::with_capacity(cuts.len() + 2);
    bounds.push(ProfileBound::from_endpoint(domain.left()));
    for c in cuts {
        if domain.contains_interior(c) {
            bounds.push(ProfileBound::rat(c.clone()));
        }
    }
    bounds.push(ProfileBound::from_endpoint(domain.right()));
    bounds.dedup_by(|a, b| a.cmp_bound(b) == Ordering::Equal);
    bounds
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect()
}

/// Lower convex hull of the primitive graph, grown left to right.
struct PrefixHull {
    /// indices into the knot array
    verts: Vec<usize>,
}

impl PrefixHull {
    fn new() -> Self {
        PrefixHull { verts: Vec::new() }
    }

    fn push(&mut self, idx: usize, knots: &[Rat], prim: &[Rat]) {
        while self.verts.len() >= 2 {
            let a = self.verts[self.verts.len() - 2];
            let b = self.verts[self.verts.len() - 1];
            // pop b unless slope(a,b) < slope(b,new)
            let lhs = (&prim[b] - &prim[a]) * (&knots[idx] - &knots[b]);
            let rhs = (&prim[idx] - &prim[b]) * (&knots[b] - &knots[a]);
            if lhs < rhs {
                break;
            }
            self.verts.pop();
        }
        self.verts.push(idx);
    }
}

/// Exact one-sided (leftward) maximal profile of a canonical nonnegative
/// step function.
fn one_sided_left(geom: &Geometry) -> Vec<Segment> {
    let domain = geom.f.domain().clone();
    let piece_spans = spans(&domain, &geom.knots);
    let mut hull = PrefixHull::new();
    let mut segments: Vec<Segment> = Vec::new();
    for (lo, hi) in piece_spans {
        // grow the hull with every knot at or left of this span
        if let ProfileBound::Val(ExactValue::Rat(x)) = &lo {
            if let Ok(i) = geom.knots.binary_search(x) {
                hull.push(i, &geom.knots, &geom.prim);
            }
        }
        let (v, f0) = match &lo {
            ProfileBound::NegInf => (Rat::zero(), Rat::zero()),
            ProfileBound::Val(ExactValue::Rat(x)) => {
                let v = geom.value_right_of(x);
                let f0 = geom.primitive(x) - &v * x;
                (v, f0)
            }
            _ => unreachable!("span bounds are rational or infinite"),
        };
        let mut cands: Vec<Candidate> = Vec::new();
        // shrinking intervals give the lateral value
        cands.push(Candidate {
            fun: LinFrac::constant(v.clone()),
            source: match &lo {
                ProfileBound::Val(ExactValue::Rat(x)) => SegmentSource::LeftAnchor(x.clone()),
                _ => SegmentSource::Stationary,
            },
        });
        for &h in &hull.verts {
            if lo.cmp_rat(&geom.knots[h]) == Ordering::Equal {
                continue; // identical to the lateral candidate
            }
            cands.push(Candidate {
                fun: LinFrac::left_average(
                    f0.clone(),
                    v.clone(),
                    geom.prim[h].clone(),
                    geom.knots[h].clone(),
                ),
                source: SegmentSource::LeftAnchor(geom.knots[h].clone()),
            });
        }
        segments.extend(upper_envelope(&cands, &lo, &hi));
    }
    merge_adjacent(segments)
}

fn merge_adjacent(segs: Vec<Segment>) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::with_capacity(segs.len());
    for s in segs {
        if let Some(last) = out.last_mut() {
            if same_function(&last.fun, &s.fun) {
                last.hi = s.hi;
                continue;
            }
        }
        out.push(s);
    }
    out
}

/// One-sided maximal profile: sup of averages over intervals with `x` as an
/// endpoint, extending in the given direction. Requires f >= 0.
pub fn one_sided_maximal(
    f: &StepFunction,
    dir: Direction,
) -> Result<MaximalProfile, EngineError> {
    check_nonnegative(f)?;
    let segments = match dir {
        Direction::Left => one_sided_left(&Geometry::new(f)),
        Direction::Right => {
            let mirrored = mirror_step(f);
            mirror_segments(&one_sided_left(&Geometry::new(&mirrored)))
        }
    };
    Ok(MaximalProfile::exact(f.domain().clone(), segments))
}

/// Noncentered maximal function of |f|, as an exact profile.
pub fn maximal(f: &StepFunction) -> Result<MaximalProfile, EngineError> {
    let g = f.abs().canonical_representative();
    let left = one_sided_left(&Geometry::new(&g));
    let mirrored = mirror_step(&g);
    let right = mirror_segments(&one_sided_left(&Geometry::new(&mirrored)));
    let segments = max_of_profiles(&left, &right);
    let profile = MaximalProfile::exact(g.domain().clone(), segments);
    debug_assert_eq!(profile.validate(), Ok(()));
    Ok(profile)
}

/// Window-capped one-sided profile (leftward): the averaging interval must
/// also have length <= r.
fn one_sided_left_capped(geom: &Geometry, r: &Rat) -> Vec<Segment> {
    let domain = geom.f.domain().clone();
    let mut cuts: Vec<Rat> = geom.knots.clone();
    for k in &geom.knots {
        cuts.push(k + r);
    }
    cuts.sort();
    cuts.dedup();
    let all_spans = spans(&domain, &cuts);
    let dom_left = domain.left().clone();
    let mut segments: Vec<Segment> = Vec::new();
    for (lo, hi) in all_spans {
        let (v, f0, lo_rat) = match &lo {
            ProfileBound::NegInf => (Rat::zero(), Rat::zero(), None),
            ProfileBound::Val(ExactValue::Rat(x)) => {
                let v = geom.value_right_of(x);
                let f0 = geom.primitive(x) - &v * x;
                (v, f0, Some(x.clone()))
            }
            _ => unreachable!(),
        };
        let mut cands: Vec<Candidate> = vec![Candidate {
            fun: LinFrac::constant(v.clone()),
            source: match &lo_rat {
                Some(x) => SegmentSource::LeftAnchor(x.clone()),
                None => SegmentSource::Stationary,
            },
        }];
        // anchored candidates: knots d <= span_lo admissible on the whole span
        if let Some(slo) = &lo_rat {
            for (i, d) in geom.knots.iter().enumerate() {
                if d > slo {
                    break;
                }
                if d == slo {
                    continue;
                }
                let reach = d + r;
                let fits = match &hi {
                    ProfileBound::Val(ExactValue::Rat(x)) => x <= &reach,
                    ProfileBound::PosInf => false,
                    _ => unreachable!(),
                };
                if fits {
                    cands.push(Candidate {
                        fun: LinFrac::left_average(
                            f0.clone(),
                            v.clone(),
                            geom.prim[i].clone(),
                            d.clone(),
                        ),
                        source: SegmentSource::LeftAnchor(d.clone()),
                    });
                }
            }
        }
        // full-window candidate [x - r, x]
        let window_ok = match (&dom_left, &lo_rat) {
            (Endpoint::NegInf, _) => true,
            (Endpoint::Finite(a), Some(slo)) => slo >= &(a + r),
            (Endpoint::Finite(_), None) => false,
            (Endpoint::PosInf, _) => unreachable!(),
        };
        if window_ok {
            // x - r stays inside one piece across the span
            let (w, fj) = match &lo_rat {
                Some(slo) => {
                    let t = slo - r;
                    let w = geom.value_right_of(&t);
                    let fj = geom.primitive(&t) - &w * &t;
                    (w, fj)
                }
                None => (Rat::zero(), Rat::zero()),
            };
            // ((f0 + v x) - (fj + w (x - r))) / r
            let intercept = (&f0 - &fj + &w * r) / r;
            let slope = (&v - &w) / r;
            cands.push(Candidate {
                fun: LinFrac::linear(intercept, slope),
                source: SegmentSource::LeftWindow(r.clone()),
            });
        }
        segments.extend(upper_envelope(&cands, &lo, &hi));
    }
    merge_adjacent(segments)
}

/// Local (window-capped) maximal function of |f|: averaging intervals are
/// restricted to length <= r.
pub fn local_maximal(f: &StepFunction, r: &Rat) -> Result<MaximalProfile, EngineError> {
    if !r.is_positive() {
        return Err(EngineError::BadRadius);
    }
    let g = f.abs().canonical_representative();
    let left = one_sided_left_capped(&Geometry::new(&g), r);
    let mirrored = mirror_step(&g);
    let right = mirror_segments(&one_sided_left_capped(&Geometry::new(&mirrored), r));
    let segments = max_of_profiles(&left, &right);
    let profile = MaximalProfile::exact(g.domain().clone(), segments);
    debug_assert_eq!(profile.validate(), Ok(()));
    Ok(profile)
}

/// One-sided candidates for direct evaluation at a point: (value, anchor).
fn left_candidates_at(geom: &Geometry, x: &Rat, cap: Option<&Rat>) -> Vec<(Rat, Option<Rat>)> {
    let mut out = Vec::new();
    let fx = geom.primitive(x);
    if geom.f.domain().left().cmp_rat(x) == Ordering::Less {
        out.push((geom.f.left_limit(x), None));
    }
    for (i, d) in geom.knots.iter().enumerate() {
        if d >= x {
            break;
        }
        if let Some(r) = cap {
            if &(x - d) > r {
                continue;
            }
        }
        out.push(((&fx - &geom.prim[i]) / (x - d), Some(d.clone())));
    }
    if let Some(r) = cap {
        let t = x - r;
        let inside = geom.f.domain().left().cmp_rat(&t) != Ordering::Greater;
        if inside {
            out.push(((&fx - geom.primitive(&t)) / r, Some(t)));
        }
    }
    out
}

/// Exact value of the (optionally capped) maximal function at one point,
/// by direct enumeration over the finite candidate set.
pub fn eval_maximal_at(f: &StepFunction, x: &Rat, cap: Option<&Rat>) -> Result<Rat, EngineError> {
    if !f.domain().contains(x) {
        return Err(EngineError::OutOfDomain);
    }
    if let Some(r) = cap {
        if !r.is_positive() {
            return Err(EngineError::BadRadius);
        }
    }
    let g = f.abs().canonical_representative();
    let geom = Geometry::new(&g);
    let mirrored = mirror_step(&g);
    let mgeom = Geometry::new(&mirrored);
    let mx = -x.clone();
    let mut best = Rat::zero();
    for (v, _) in left_candidates_at(&geom, x, cap) {
        best = best.max(v);
    }
    for (v, _) in left_candidates_at(&mgeom, &mx, cap) {
        best = best.max(v);
    }
    Ok(best)
}

/// Batch exact evaluation of the uncapped maximal function at sorted query
/// points, in O((knots + queries log knots)) exact operations per side.
pub fn eval_maximal_batch(f: &StepFunction, sorted_xs: &[Rat]) -> Result<Vec<Rat>, EngineError> {
    let g = f.abs().canonical_representative();
    let geom = Geometry::new(&g);
    let mut vals = one_sided_batch(&geom, sorted_xs);
    let mirrored = mirror_step(&g);
    let mgeom = Geometry::new(&mirrored);
    let mxs: Vec<Rat> = sorted_xs.iter().rev().map(|x| -x.clone()).collect();
    let mut right = one_sided_batch(&mgeom, &mxs);
    right.reverse();
    for (v, r) in vals.iter_mut().zip(right) {
        if r > *v {
            *v = r;
        }
    }
    Ok(vals)
}

/// Leftward one-sided suprema at sorted query points via an incremental
/// convex hull of the primitive graph with tangent binary search.
fn one_sided_batch(geom: &Geometry, sorted_xs: &[Rat]) -> Vec<Rat> {
    let mut hull = PrefixHull::new();
    let mut next_knot = 0usize;
    let mut out = Vec::with_capacity(sorted_xs.len());
    for x in sorted_xs {
        debug_assert!(geom.f.domain().contains(x));
        while next_knot < geom.knots.len() && &geom.knots[next_knot] < x {
            hull.push(next_knot, &geom.knots, &geom.prim);
            next_knot += 1;
        }
        let mut best = if geom.f.domain().left().cmp_rat(x) == Ordering::Less {
            geom.f.left_limit(x)
        } else {
            Rat::zero()
        };
        if !hull.verts.is_empty() {
            let fx = geom.primitive(x);
            let slope = |vi: usize| -> (Rat, Rat) {
                let k = hull.verts[vi];
                (&fx - &geom.prim[k], x - &geom.knots[k])
            };
            // slopes to (x, F(x)) are unimodal over the hull vertices
            let better = |vi: usize| -> bool {
                let (n1, d1) = slope(vi);
                let (n2, d2) = slope(vi + 1);
                // compare n1/d1 < n2/d2 with positive denominators
                n1 * d2 < n2 * d1
            };
            let (mut lo, mut hi) = (0usize, hull.verts.len() - 1);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if better(mid) {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            let (n, d) = slope(lo);
            let v = n / d;
            if v > best {
                best = v;
            }
        }
        out.push(best);
    }
    out
}

/// Optimal averaging interval at `x` for the uncapped maximal function.
pub fn argmax_witness(f: &StepFunction, x: &Rat) -> Result<ArgmaxWitness, EngineError> {
    if !f.domain().contains(x) {
        return Err(EngineError::OutOfDomain);
    }
    let g = f.abs().canonical_representative();
    let geom = Geometry::new(&g);
    let mirrored = mirror_step(&g);
    let mgeom = Geometry::new(&mirrored);
    let mx = -x.clone();

    let left = left_candidates_at(&geom, x, None);
    let right = left_candidates_at(&mgeom, &mx, None);
    let mut best = Rat::zero();
    for (v, _) in left.iter().chain(right.iter()) {
        if v > &best {
            best = v.clone();
        }
    }
    // longest attaining anchors on each side
    let left_anchor = left
        .iter()
        .filter(|(v, a)| v == &best && a.is_some())
        .map(|(_, a)| a.clone().unwrap())
        .min();
    let right_anchor = right
        .iter()
        .filter(|(v, a)| v == &best && a.is_some())
        .map(|(_, a)| -a.clone().unwrap())
        .max();
    let lateral_attains = left
        .iter()
        .chain(right.iter())
        .any(|(v, a)| v == &best && a.is_none());

    let interval = match (left_anchor, right_anchor) {
        (Some(a), Some(b)) => Some((a, b)),
        (Some(a), None) => Some((a, x.clone())),
        (None, Some(b)) => Some((x.clone(), b)),
        (None, None) if lateral_attains => lateral_witness(&g, x, &best),
        (None, None) => None,
    };
    let length = interval.as_ref().map(|(a, b)| b - a);
    let degenerate = interval.is_none();
    Ok(ArgmaxWitness {
        x: x.clone(),
        value: best,
        interval,
        length,
        degenerate,
    })
}

/// A nondegenerate interval realizing a lateral-limit value: some stretch of
/// the adjacent constant piece.
fn lateral_witness(g: &StepFunction, x: &Rat, value: &Rat) -> Option<(Rat, Rat)> {
    let knots = g.knot_grid();
    let one = crate::rational::ri(1);
    // piece to the right of x
    if g.domain().right().cmp_rat(x) == Ordering::Greater && &g.right_limit(x) == value {
        let next = knots
            .iter()
            .find(|k| *k > x)
            .cloned()
            .unwrap_or_else(|| x + &one);
        return Some((x.clone(), next));
    }
    if g.domain().left().cmp_rat(x) == Ordering::Less && &g.left_limit(x) == value {
        let prev = knots
            .iter()
            .rev()
            .find(|k| *k < x)
            .cloned()
            .unwrap_or_else(|| x - &one);
        return Some((prev, x.clone()));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ri, rq};

    fn chi01() -> StepFunction {
        StepFunction::new(
            Interval::real_line(),
            vec![ri(0), ri(1)],
            vec![ri(0), ri(1), ri(0)],
            None,
        )
        .unwrap()
    }

    fn two_one() -> StepFunction {
        // 2 on [0,1), 1 on [1,2] over [0,2]
        StepFunction::new(
            Interval::bounded(ri(0), ri(2)).unwrap(),
            vec![ri(1)],
            vec![ri(2), ri(1)],
            None,
        )
        .unwrap()
    }

    #[test]
    fn one_sided_closed_forms() {
        let p = one_sided_maximal(&chi01(), Direction::Left).unwrap();
        assert_eq!(p.value_at(&ri(2)), rq(1, 2));
        assert_eq!(p.value_at(&ri(3)), rq(1, 3));
        let c = StepFunction::constant(Interval::bounded(ri(0), ri(1)).unwrap(), rq(5, 2)).unwrap();
        let pc = one_sided_maximal(&c, Direction::Left).unwrap();
        assert_eq!(pc.value_at(&rq(1, 2)), rq(5, 2));
        let p2 = one_sided_maximal(&two_one(), Direction::Left).unwrap();
        assert_eq!(p2.value_at(&ri(2)), rq(3, 2));
        let neg = StepFunction::new(
            Interval::bounded(ri(0), ri(1)).unwrap(),
            vec![],
            vec![ri(-1)],
            None,
        )
        .unwrap();
        assert_eq!(
            one_sided_maximal(&neg, Direction::Left).unwrap_err(),
            EngineError::NegativeValues
        );
    }

    #[test]
    fn indicator_profile_closed_form() {
        let p = maximal(&chi01()).unwrap();
        assert!(p.validate().is_ok());
        // 1/(1-x) on (-inf,0], 1 on [0,1], 1/x on [1,inf)
        assert_eq!(p.value_at(&ri(-1)), rq(1, 2));
        assert_eq!(p.value_at(&ri(0)), ri(1));
        assert_eq!(p.value_at(&rq(1, 2)), ri(1));
        assert_eq!(p.value_at(&ri(2)), rq(1, 2));
        assert_eq!(p.value_at(&ri(4)), rq(1, 4));
        assert_eq!(p.variation().as_rat(), Some(&ri(2)));
    }

    #[test]
    fn two_piece_values() {
        let p = maximal(&two_one()).unwrap();
        assert_eq!(p.value_at(&ri(0)), ri(2));
        assert_eq!(p.value_at(&ri(2)), rq(3, 2));
    }

    #[test]
    fn local_cap_examples() {
        let f = chi01();
        // R = 1 at x = 2: every admissible window misses the support
        let p1 = local_maximal(&f, &ri(1)).unwrap();
        assert_eq!(p1.value_at(&ri(2)), ri(0));
        // R = 2: [0,2] is admissible at x = 2
        let p2 = local_maximal(&f, &ri(2)).unwrap();
        assert_eq!(p2.value_at(&ri(2)), rq(1, 2));
        assert_eq!(p2.value_at(&ri(3)), ri(0));
        assert_eq!(p2.value_at(&rq(1, 2)), ri(1));
        assert!(local_maximal(&f, &ri(0)).is_err());
        // cap at least the domain length makes the cap inactive
        let g = two_one();
        let full = maximal(&g).unwrap();
        let capped = local_maximal(&g, &ri(2)).unwrap();
        for x in [ri(0), rq(1, 2), ri(1), rq(3, 2), ri(2)] {
            assert_eq!(full.value_at(&x), capped.value_at(&x));
        }
    }

    #[test]
    fn point_eval_matches_profile() {
        let f = two_one();
        let p = maximal(&f).unwrap();
        for x in [ri(0), rq(1, 4), ri(1), rq(7, 4), ri(2)] {
            assert_eq!(eval_maximal_at(&f, &x, None).unwrap(), p.value_at(&x));
        }
        let batch: Vec<Rat> = vec![ri(0), rq(1, 4), ri(1), rq(7, 4), ri(2)];
        let vals = eval_maximal_batch(&f, &batch).unwrap();
        for (x, v) in batch.iter().zip(&vals) {
            assert_eq!(v, &p.value_at(x));
        }
    }

    #[test]
    fn witnesses() {
        let f = chi01();
        let w = argmax_witness(&f, &ri(2)).unwrap();
        assert_eq!(w.value, rq(1, 2));
        assert_eq!(w.interval, Some((ri(0), ri(2))));
        let w2 = argmax_witness(&f, &rq(1, 2)).unwrap();
        assert_eq!(w2.value, ri(1));
        assert!(!w2.degenerate);
        let (a, b) = w2.interval.unwrap();
        assert!(a >= ri(0) && b <= ri(1) && a < b);
        let w3 = argmax_witness(&two_one(), &ri(0)).unwrap();
        assert_eq!(w3.value, ri(2));
        assert_eq!(w3.interval, Some((ri(0), ri(1))));
        assert!(argmax_witness(&f, &ri(5)).is_ok());
        assert!(argmax_witness(&two_one(), &ri(5)).is_err());
    }
}
