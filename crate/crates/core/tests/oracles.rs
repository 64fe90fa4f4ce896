//! Independent brute-force oracles for the exact engines.
//!
//! The oracles never share code with the engines: integrals are piece
//! overlaps instead of the engine's primitive tables, and maximal values
//! enumerate two-sided candidate interval pairs directly instead of the
//! one-sided decomposition. Frozen expected values in other tests were
//! produced by these oracles.

use bvmax_core::checks::{random_step, SplitMix64};
use bvmax_core::maximal::{eval_maximal_at, maximal, ProfileBound};
use bvmax_core::rational::{ri, rq, Endpoint, Rat};
use bvmax_core::step::StepFunction;
use bvmax_core::Interval;
use num_traits::Zero;

/// Integral of f over [a, b] by scanning piece overlaps.
fn integral(f: &StepFunction, a: &Rat, b: &Rat) -> Rat {
    assert!(a <= b);
    let mut cuts: Vec<Rat> = vec![a.clone()];
    for t in f.breakpoints() {
        if t > a && t < b {
            cuts.push(t.clone());
        }
    }
    cuts.push(b.clone());
    let mut total = Rat::zero();
    for w in cuts.windows(2) {
        let mid = (&w[0] + &w[1]) / ri(2);
        total += (&w[1] - &w[0]) * f.value_at(&mid);
    }
    total
}

/// Max average of |f| over intervals containing x, by enumerating all pairs
/// of candidate endpoints (breakpoints, finite domain ends, x itself) and
/// the two lateral limits.
fn brute_max_average(f: &StepFunction, x: &Rat) -> Rat {
    let g = f.abs();
    let mut candidates: Vec<Rat> = g.breakpoints().to_vec();
    if let Endpoint::Finite(a) = g.domain().left() {
        candidates.push(a.clone());
    }
    if let Endpoint::Finite(b) = g.domain().right() {
        candidates.push(b.clone());
    }
    candidates.push(x.clone());
    candidates.sort();
    candidates.dedup();
    let mut best = Rat::zero();
    // lateral limits realize the shrinking-interval suprema
    if g.domain().left().cmp_rat(x) == std::cmp::Ordering::Less {
        best = best.max(g.left_limit(x));
    }
    if g.domain().right().cmp_rat(x) == std::cmp::Ordering::Greater {
        best = best.max(g.right_limit(x));
    }
    for a in &candidates {
        if a > x {
            continue;
        }
        for b in &candidates {
            if b < x || b <= a {
                continue;
            }
            let avg = integral(&g, a, b) / (b - a);
            if avg > best {
                best = avg;
            }
        }
    }
    best
}

/// Variation from a dense partition refining every breakpoint neighborhood.
fn brute_variation(f: &StepFunction) -> Rat {
    let g = f.clone();
    let bps = g.breakpoints();
    if bps.is_empty() {
        return Rat::zero();
    }
    let mut gap = ri(1);
    for w in bps.windows(2) {
        gap = gap.min(&w[1] - &w[0]);
    }
    let eps = gap / ri(4);
    let mut points: Vec<Rat> = Vec::new();
    for b in bps {
        points.push(b - &eps);
        points.push(b.clone());
        points.push(b + &eps);
    }
    points.sort();
    points.dedup();
    points.retain(|p| g.domain().contains(p));
    let mut v = Rat::zero();
    for w in points.windows(2) {
        v += (g.value_at(&w[1]) - g.value_at(&w[0]))
            .max(g.value_at(&w[0]) - g.value_at(&w[1]));
    }
    v
}

/// Canonical value via averages over shrinking symmetric intervals: the
/// limsup equals the max of the lateral limits.
fn canonical_by_shrinking_averages(f: &StepFunction, x: &Rat) -> Rat {
    let mut best: Option<Rat> = None;
    for k in 4..12u32 {
        let h = Rat::new(1.into(), num_bigint::BigInt::from(1i64 << k));
        let (mut lo, mut hi) = (x - &h, x + &h);
        if let Endpoint::Finite(a) = f.domain().left() {
            if &lo < a {
                lo = a.clone();
            }
        }
        if let Endpoint::Finite(b) = f.domain().right() {
            if &hi > b {
                hi = b.clone();
            }
        }
        // one-sided shrink picks up each lateral limit separately
        for (a, b) in [(lo.clone(), x.clone()), (x.clone(), hi.clone()), (lo, hi)] {
            if a < b {
                let avg = integral(f, &a, &b) / (&b - &a);
                best = Some(match best {
                    None => avg,
                    Some(cur) => cur.max(avg),
                });
            }
        }
    }
    best.unwrap()
}

#[test]
fn spec_point_values_frozen_by_oracle() {
    // chi_[0,1] on the line
    let chi = StepFunction::new(
        Interval::real_line(),
        vec![ri(0), ri(1)],
        vec![ri(0), ri(1), ri(0)],
        None,
    )
    .unwrap();
    assert_eq!(brute_max_average(&chi, &ri(2)), rq(1, 2));
    assert_eq!(brute_max_average(&chi, &ri(-3)), rq(1, 4));
    assert_eq!(brute_max_average(&chi, &rq(1, 2)), ri(1));
    // two pieces (2, 1) on [0, 2]
    let two = StepFunction::new(
        Interval::bounded(ri(0), ri(2)).unwrap(),
        vec![ri(1)],
        vec![ri(2), ri(1)],
        None,
    )
    .unwrap();
    assert_eq!(brute_max_average(&two, &ri(0)), ri(2));
    assert_eq!(brute_max_average(&two, &ri(2)), rq(3, 2));
    // variation of the canonical pieces (0, 2, 1)
    let steps = StepFunction::new(
        Interval::bounded(ri(-1), ri(2)).unwrap(),
        vec![ri(0), ri(1)],
        vec![ri(0), ri(2), ri(1)],
        None,
    )
    .unwrap();
    assert_eq!(brute_variation(&steps.canonical_representative()), ri(3));
}

#[test]
fn engine_matches_oracle_on_random_instances() {
    let mut rng = SplitMix64(20260808);
    for _ in 0..60 {
        let f = random_step(&mut rng, 10);
        let profile = maximal(&f).unwrap();
        // probes: breakpoints, near-breakpoints, and a spread of grid points
        let mut probes: Vec<Rat> = f.breakpoints().to_vec();
        for b in f.breakpoints() {
            probes.push(b + rq(1, 16));
            probes.push(b - rq(1, 16));
        }
        probes.push(rq(13, 16));
        probes.push(rq(77, 16));
        probes.retain(|x| f.domain().contains(x));
        probes.sort();
        probes.dedup();
        for x in &probes {
            let expect = brute_max_average(&f, x);
            assert_eq!(profile.value_at(x), expect, "profile at {x}");
            assert_eq!(eval_maximal_at(&f, x, None).unwrap(), expect, "eval at {x}");
        }
        // exact variation equals the dense-partition variation
        let g = f.canonical_representative();
        assert_eq!(g.total_variation(), brute_variation(&g));
    }
}

#[test]
fn capped_engine_matches_capped_oracle() {
    // oracle for the window-capped operator: restrict pairs to length <= r,
    // and add the sliding-cap endpoints x - r, x + r to the candidate grid
    fn brute_capped(f: &StepFunction, x: &Rat, r: &Rat) -> Rat {
        let g = f.abs();
        let mut candidates: Vec<Rat> = g.breakpoints().to_vec();
        if let Endpoint::Finite(a) = g.domain().left() {
            candidates.push(a.clone());
        }
        if let Endpoint::Finite(b) = g.domain().right() {
            candidates.push(b.clone());
        }
        candidates.push(x.clone());
        candidates.push(x - r);
        candidates.push(x + r);
        candidates.retain(|c| g.domain().contains(c));
        candidates.sort();
        candidates.dedup();
        let mut best = Rat::zero();
        if g.domain().left().cmp_rat(x) == std::cmp::Ordering::Less {
            best = best.max(g.left_limit(x));
        }
        if g.domain().right().cmp_rat(x) == std::cmp::Ordering::Greater {
            best = best.max(g.right_limit(x));
        }
        for a in &candidates {
            if a > x {
                continue;
            }
            for b in &candidates {
                if b < x || b <= a || &(b - a) > r {
                    continue;
                }
                let avg = integral(&g, a, b) / (b - a);
                if avg > best {
                    best = avg;
                }
            }
        }
        best
    }
    let mut rng = SplitMix64(99);
    for _ in 0..25 {
        let f = random_step(&mut rng, 8);
        for r in [rq(1, 2), ri(2), ri(7)] {
            let profile = bvmax_core::maximal::local_maximal(&f, &r).unwrap();
            let mut probes: Vec<Rat> = f.breakpoints().to_vec();
            for b in f.breakpoints() {
                probes.push(b + rq(3, 16));
            }
            probes.push(rq(11, 8));
            probes.retain(|x| f.domain().contains(x));
            probes.sort();
            probes.dedup();
            for x in &probes {
                let expect = brute_capped(&f, x, &r);
                assert_eq!(profile.value_at(x), expect, "capped profile at {x}, r = {r}");
                assert_eq!(
                    eval_maximal_at(&f, x, Some(&r)).unwrap(),
                    expect,
                    "capped eval at {x}"
                );
            }
        }
    }
}

#[test]
fn canonical_representative_matches_shrinking_averages() {
    let f = StepFunction::new(
        Interval::bounded(ri(-2), ri(3)).unwrap(),
        vec![ri(0), ri(1)],
        vec![ri(2), ri(3), rq(1, 2)],
        Some(vec![Some(ri(5)), None]),
    )
    .unwrap();
    let c = f.canonical_representative();
    for x in [ri(0), ri(1), rq(1, 2), ri(-1)] {
        assert_eq!(
            c.value_at(&x),
            canonical_by_shrinking_averages(&f, &x),
            "canonical at {x}"
        );
    }
}

#[test]
fn one_sided_decomposition_against_pair_oracle() {
    // the engine builds M as max of two one-sided profiles; the oracle uses
    // two-sided interval pairs, so agreement validates the decomposition
    let mut rng = SplitMix64(4242);
    for _ in 0..40 {
        let f = random_step(&mut rng, 12);
        let g = f.abs().canonical_representative();
        let left = bvmax_core::maximal::one_sided_maximal(&g, bvmax_core::maximal::Direction::Left)
            .unwrap();
        let right =
            bvmax_core::maximal::one_sided_maximal(&g, bvmax_core::maximal::Direction::Right)
                .unwrap();
        let mut probes: Vec<Rat> = Vec::new();
        for b in g.breakpoints() {
            probes.push(b + rq(1, 32));
            probes.push(b - rq(3, 32));
        }
        probes.retain(|x| g.domain().contains(x));
        probes.sort();
        probes.dedup();
        for x in &probes {
            let combined = left.value_at(x).max(right.value_at(x));
            assert_eq!(combined, brute_max_average(&f, x), "decomposition at {x}");
        }
    }
}

#[test]
fn extension_preserves_maximal_values() {
    // M of the zero-extension agrees with M of the original on the original
    // domain for nonnegative f
    let mut rng = SplitMix64(31337);
    for _ in 0..20 {
        let f = {
            let g = random_step(&mut rng, 8);
            if g.domain().is_bounded() {
                g
            } else {
                continue;
            }
        };
        let extended = f
            .extend_by_zero(Interval::real_line())
            .unwrap();
        let pf = maximal(&f).unwrap();
        let pe = maximal(&extended).unwrap();
        let (a, b) = match (f.domain().left(), f.domain().right()) {
            (Endpoint::Finite(a), Endpoint::Finite(b)) => (a.clone(), b.clone()),
            _ => unreachable!(),
        };
        let mut x = a.clone();
        let step = (&b - &a) / ri(7);
        while x <= b {
            assert_eq!(pf.value_at(&x), pe.value_at(&x), "extension at {x}");
            x += &step;
        }
    }
}

#[test]
fn profile_bounds_are_exact_joins() {
    // continuity of the combined profile at every join, on instances dense
    // enough to exercise crossings
    let mut rng = SplitMix64(5);
    for _ in 0..40 {
        let f = random_step(&mut rng, 16);
        let p = maximal(&f).unwrap();
        p.validate().expect("profile continuity");
        assert_eq!(p.segments.first().unwrap().lo, ProfileBound::from_endpoint(p.domain.left()));
    }
}
