//! Structural analysis of exact profiles against their source step
//! functions: the open set where the profile strictly dominates, the
//! monotone/valley shape of each component, and interior strict local
//! maxima.

use super::envelope::{crossings, rational_between};
use super::profile::{LinFrac, MaximalProfile, ProfileBound};
use crate::rational::{Endpoint, Rat};
use crate::step::StepFunction;
use crate::surd::ExactValue;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentShape {
    /// profile is monotone (possibly flat) across the component
    Monotone,
    /// decreasing then increasing, with the bottom between the two bounds
    Valley,
    /// increasing anywhere before decreasing: contradicts the structure
    Invalid,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub lo: ProfileBound,
    pub hi: ProfileBound,
    pub shape: ComponentShape,
}

/// Maximal open intervals where the profile strictly exceeds the canonical
/// source values. Requires an exact profile with rational bounds.
pub fn components_above(profile: &MaximalProfile, f: &StepFunction) -> Vec<Component> {
    assert!(profile.is_exact());
    let f = f.canonical_representative();
    // refinement: segment bounds and source breakpoints
    let mut cuts: Vec<ProfileBound> = Vec::new();
    cuts.push(ProfileBound::from_endpoint(profile.domain.left()));
    for s in &profile.segments {
        cuts.push(s.hi.clone());
    }
    for b in f.breakpoints() {
        cuts.push(ProfileBound::rat(b.clone()));
    }
    cuts.sort_by(|a, b| a.cmp_bound(b));
    cuts.dedup_by(|a, b| a.cmp_bound(b) == Ordering::Equal);

    // atoms: alternating boundary points and open cells, each with an
    // "above" flag
    #[derive(Clone)]
    enum Atom {
        Point(ProfileBound, bool),
        Cell(ProfileBound, ProfileBound, bool),
    }
    let above_at_point = |b: &ProfileBound| -> bool {
        match b {
            ProfileBound::Val(v) => {
                let mf = match v {
                    ExactValue::Rat(x) => ExactValue::Rat(profile.value_at(x)),
                    s => {
                        // surd points never coincide with breakpoints
                        let idx = profile
                            .segments
                            .iter()
                            .position(|seg| seg.hi.cmp_bound(&ProfileBound::Val(s.clone())) != Ordering::Less)
                            .unwrap();
                        profile.segments[idx].fun.eval_exact(s)
                    }
                };
                let fv = match v {
                    ExactValue::Rat(x) => f.value_at(x),
                    ExactValue::Surd(s) => {
                        // piece value at an irrational point
                        let (lo, _) = s.bracket(64);
                        f.right_limit(&lo)
                    }
                };
                mf.cmp_exact(&ExactValue::Rat(fv)) == Ordering::Greater
            }
            _ => false,
        }
    };

    let mut atoms: Vec<Atom> = Vec::new();
    for (k, w) in cuts.windows(2).enumerate() {
        let (lo, hi) = (&w[0], &w[1]);
        if k > 0 {
            atoms.push(Atom::Point(lo.clone(), above_at_point(lo)));
        }
        // inside the open cell the source is one piece value
        let probe = rational_between(lo, hi);
        let v = f.value_at(&probe);
        let seg = segment_covering(profile, &probe);
        let const_v = LinFrac::constant(v.clone());
        let xs = crossings(&seg.fun, &const_v, lo, hi);
        let mut bounds = Vec::with_capacity(xs.len() + 2);
        bounds.push(lo.clone());
        bounds.extend(xs.into_iter().map(ProfileBound::Val));
        bounds.push(hi.clone());
        for t in 0..bounds.len() - 1 {
            let (slo, shi) = (bounds[t].clone(), bounds[t + 1].clone());
            let sp = rational_between(&slo, &shi);
            let above = seg.fun.eval(&sp) > v;
            if t > 0 {
                // crossing point itself: profile equals the piece value there
                atoms.push(Atom::Point(slo.clone(), false));
            }
            atoms.push(Atom::Cell(slo, shi, above));
        }
    }

    // assemble maximal runs of above-atoms into open components
    let mut out: Vec<Component> = Vec::new();
    let mut current: Option<(ProfileBound, ProfileBound)> = None;
    let flush = |cur: &mut Option<(ProfileBound, ProfileBound)>, out: &mut Vec<Component>| {
        if let Some((lo, hi)) = cur.take() {
            let shape = classify(profile, &lo, &hi);
            out.push(Component { lo, hi, shape });
        }
    };
    for atom in &atoms {
        match atom {
            Atom::Point(_, true) => {} // stays inside the current run
            Atom::Point(b, false) => {
                if current.is_some() {
                    if let Some((_, hi)) = current.as_mut() {
                        *hi = b.clone();
                    }
                }
                flush(&mut current, &mut out);
            }
            Atom::Cell(lo, hi, true) => match current.as_mut() {
                Some((_, cur_hi)) => *cur_hi = hi.clone(),
                None => current = Some((lo.clone(), hi.clone())),
            },
            Atom::Cell(_, _, false) => flush(&mut current, &mut out),
        }
    }
    flush(&mut current, &mut out);
    out
}

fn segment_covering<'a>(
    profile: &'a MaximalProfile,
    x: &Rat,
) -> &'a super::profile::Segment {
    let idx = profile
        .segments
        .iter()
        .position(|s| s.hi.cmp_rat(x) != Ordering::Less)
        .unwrap_or(profile.segments.len() - 1);
    &profile.segments[idx]
}

/// Shape of the profile on (lo, hi): directions of the clipped segments must
/// read as decreasing-then-increasing (flats allowed anywhere).
fn classify(profile: &MaximalProfile, lo: &ProfileBound, hi: &ProfileBound) -> ComponentShape {
    let mut seen_up = false;
    let mut seen_down = false;
    let mut invalid = false;
    for s in &profile.segments {
        if s.hi.cmp_bound(lo) != Ordering::Greater {
            continue;
        }
        if s.lo.cmp_bound(hi) != Ordering::Less {
            break;
        }
        match s.direction() {
            Ordering::Greater => seen_up = true,
            Ordering::Less => {
                seen_down = true;
                if seen_up {
                    invalid = true;
                }
            }
            Ordering::Equal => {}
        }
    }
    if invalid {
        ComponentShape::Invalid
    } else if seen_down && seen_up {
        ComponentShape::Valley
    } else {
        ComponentShape::Monotone
    }
}

/// Every interior strict local maximum of the profile, with the canonical
/// source value there; the two must agree exactly.
pub fn strict_local_maxima_vs_source(
    profile: &MaximalProfile,
    f: &StepFunction,
) -> Vec<(ExactValue, ExactValue, ExactValue)> {
    let f = f.canonical_representative();
    profile
        .local_maxima()
        .into_iter()
        .map(|(x, v)| {
            let fv = match &x {
                ExactValue::Rat(r) => f.value_at(r),
                ExactValue::Surd(s) => {
                    let (lo, _) = s.bracket(64);
                    f.right_limit(&lo)
                }
            };
            (x, v, ExactValue::Rat(fv))
        })
        .collect()
}

/// Variation of the profile over the closure of a component, compared with
/// the source variation there. Returns (profile side, source side).
pub fn variation_comparison_on(
    profile: &MaximalProfile,
    f: &StepFunction,
    lo: &ProfileBound,
    hi: &ProfileBound,
) -> (crate::surd::ExactSum, Rat) {
    let f = f.canonical_representative();
    let to_endpoint = |b: &ProfileBound| -> Endpoint {
        match b {
            ProfileBound::NegInf => Endpoint::NegInf,
            ProfileBound::PosInf => Endpoint::PosInf,
            ProfileBound::Val(ExactValue::Rat(r)) => Endpoint::Finite(r.clone()),
            ProfileBound::Val(ExactValue::Surd(_)) => {
                panic!("variation comparison needs rational component bounds")
            }
        }
    };
    let pv = profile.variation_on(lo, hi);
    let fv = f.variation_on(&to_endpoint(lo), &to_endpoint(hi));
    (pv, fv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::maximal::engine::maximal;
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

    #[test]
    fn indicator_components() {
        let f = chi01();
        let p = maximal(&f).unwrap();
        let comps = components_above(&p, &f);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].lo, ProfileBound::NegInf);
        assert_eq!(comps[0].hi.cmp_rat(&ri(0)), Ordering::Equal);
        assert_eq!(comps[0].shape, ComponentShape::Monotone);
        assert_eq!(comps[1].lo.cmp_rat(&ri(1)), Ordering::Equal);
        assert_eq!(comps[1].shape, ComponentShape::Monotone);
        assert!(strict_local_maxima_vs_source(&p, &f).is_empty());
    }

    #[test]
    fn two_bumps_valley() {
        // indicator bumps [0,1] and [2,3]: the middle component is a valley
        let f = StepFunction::new(
            Interval::real_line(),
            vec![ri(0), ri(1), ri(2), ri(3)],
            vec![ri(0), ri(1), ri(0), ri(1), ri(0)],
            None,
        )
        .unwrap();
        let p = maximal(&f).unwrap();
        let comps = components_above(&p, &f);
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[1].shape, ComponentShape::Valley);
        assert_eq!(comps[1].lo.cmp_rat(&ri(1)), Ordering::Equal);
        assert_eq!(comps[1].hi.cmp_rat(&ri(2)), Ordering::Equal);
        // variation does not grow on any component closure
        for c in &comps {
            let (pv, fv) = variation_comparison_on(&p, &f, &c.lo, &c.hi);
            assert!(pv.cmp_rat(&fv) != Ordering::Greater);
        }
        // valley bottom at 3/2 by symmetry
        let m = p.value_at(&rq(3, 2));
        assert_eq!(m, rq(2, 3));
    }
}
