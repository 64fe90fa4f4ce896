//! Property-based invariants for the function space, the exact engines and
//! the discrete kernels.

use bvmax_core::discrete::{
    brute_force_maximal, discrete_local_maximal, discrete_maximal, SampledSignal,
};
use bvmax_core::maximal::{argmax_witness, eval_maximal_at, local_maximal, maximal};
use bvmax_core::measure::derivative_measure_step;
use bvmax_core::rational::{ri, rq, Rat};
use bvmax_core::step::StepFunction;
use bvmax_core::Interval;
use num_traits::Zero;
use proptest::collection::{btree_set, vec};
use proptest::prelude::*;
use std::cmp::Ordering;

/// Step functions with rational eighth-grid breakpoints and values in
/// [0, 10] (optionally signed), on a bounded domain or the real line.
fn step_strategy(signed: bool) -> impl Strategy<Value = StepFunction> {
    let lo = if signed { -80i64 } else { 0 };
    (
        btree_set(1i64..160, 0..8),
        vec(lo..=80i64, 1..10),
        vec(proptest::option::of(lo..=80i64), 0..8),
        any::<bool>(),
    )
        .prop_map(move |(cuts, values, pvs, real_line)| {
            let breakpoints: Vec<Rat> = cuts.iter().map(|&k| rq(k, 8)).collect();
            let n = breakpoints.len() + 1;
            let mut vals: Vec<Rat> = (0..n)
                .map(|i| rq(values[i % values.len()], 8))
                .collect();
            let domain = if real_line && !breakpoints.is_empty() {
                vals[0] = ri(0);
                let last = vals.len() - 1;
                vals[last] = ri(0);
                Interval::real_line()
            } else {
                Interval::bounded(ri(-2), ri(22)).unwrap()
            };
            let point_values: Vec<Option<Rat>> = (0..breakpoints.len())
                .map(|i| {
                    pvs.get(i)
                        .cloned()
                        .flatten()
                        .map(|k| rq(k, 8))
                })
                .collect();
            StepFunction::new(domain, breakpoints, vals, Some(point_values)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_is_idempotent_and_minimal(f in step_strategy(true)) {
        let c = f.canonical_representative();
        prop_assert_eq!(c.canonical_representative(), c.clone());
        // the canonical representative minimizes variation among versions
        // that differ only at breakpoints
        prop_assert!(c.total_variation() <= f.total_variation());
    }

    #[test]
    fn measure_mass_equals_canonical_variation(f in step_strategy(true)) {
        let c = f.canonical_representative();
        let m = derivative_measure_step(&c);
        prop_assert_eq!(m.total_variation_mass, c.total_variation());
    }

    #[test]
    fn part_variations(f in step_strategy(true)) {
        let vf = f.canonical_representative().total_variation();
        let vp = f.positive_part().canonical_representative().total_variation();
        let vm = f.negative_part().canonical_representative().total_variation();
        let va = f.abs().canonical_representative().total_variation();
        prop_assert!(&vp + &vm >= vf);
        prop_assert!(va <= vf);
    }

    #[test]
    fn maximal_dominates_and_bounds_variation(f in step_strategy(true)) {
        let g = f.abs().canonical_representative();
        let p = maximal(&f).unwrap();
        // domination at breakpoints and piece midpoints
        for b in g.breakpoints() {
            prop_assert!(p.value_at(b) >= g.value_at(b));
            let x = b + rq(1, 16);
            if g.domain().contains(&x) {
                prop_assert!(p.value_at(&x) >= g.value_at(&x));
            }
        }
        // value never exceeds the sup of |f|
        let sup = g.sup_norm();
        prop_assert!(p.sup_value().cmp_exact(&bvmax_core::ExactValue::Rat(sup)) != Ordering::Greater);
        // variation bound
        prop_assert!(p.variation().cmp_rat(&g.total_variation()) != Ordering::Greater);
    }

    #[test]
    fn homogeneity_and_translation(f in step_strategy(true), c in 0i64..12, t in -40i64..40) {
        let scale = rq(c, 4);
        let shift = rq(t, 8);
        let p = maximal(&f).unwrap();
        let scaled = maximal(&f.scale(&scale)).unwrap();
        let translated = maximal(&f.translate(&shift)).unwrap();
        for b in f.breakpoints() {
            let x = b + rq(1, 32);
            if f.domain().contains(&x) {
                prop_assert_eq!(scaled.value_at(&x), p.value_at(&x) * &scale);
                prop_assert_eq!(translated.value_at(&(&x + &shift)), p.value_at(&x));
            }
        }
    }

    #[test]
    fn window_cap_monotonicity(f in step_strategy(false), r1 in 1i64..12, r2 in 1i64..12) {
        let (small, large) = (rq(r1.min(r2), 2), rq(r1.max(r2), 2));
        prop_assume!(small < large);
        let ps = local_maximal(&f, &small).unwrap();
        let pl = local_maximal(&f, &large).unwrap();
        let pm = maximal(&f).unwrap();
        for b in f.breakpoints() {
            for dx in [rq(0, 1), rq(5, 32)] {
                let x = b + &dx;
                if f.domain().contains(&x) {
                    let vs = ps.value_at(&x);
                    let vl = pl.value_at(&x);
                    let vm = pm.value_at(&x);
                    prop_assert!(vs <= vl, "cap monotone at {}", x);
                    prop_assert!(vl <= vm, "cap below global at {}", x);
                }
            }
        }
    }

    #[test]
    fn witness_attains_profile_value(f in step_strategy(true)) {
        let p = maximal(&f).unwrap();
        for b in f.breakpoints() {
            for dx in [rq(0, 1), rq(7, 64)] {
                let x = b + &dx;
                if !f.domain().contains(&x) {
                    continue;
                }
                let w = argmax_witness(&f, &x).unwrap();
                prop_assert_eq!(&w.value, &p.value_at(&x));
                // canonical steps always attain with a nondegenerate interval
                prop_assert!(!w.degenerate);
                let (a, b2) = w.interval.clone().unwrap();
                prop_assert!(a <= x && x <= b2 && a < b2);
                prop_assert_eq!(w.length.unwrap(), b2 - a);
            }
        }
    }

    #[test]
    fn point_eval_matches_profile(f in step_strategy(true)) {
        let p = maximal(&f).unwrap();
        for b in f.breakpoints() {
            let x = b + rq(3, 64);
            if f.domain().contains(&x) {
                prop_assert_eq!(eval_maximal_at(&f, &x, None).unwrap(), p.value_at(&x));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// discrete kernels

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn discrete_oracle_equivalence(v in vec(0.0f64..100.0, 1..200), w in 1usize..40) {
        let s = SampledSignal::new(v, 1.0, 0.0).unwrap();
        let fast = discrete_maximal(&s).unwrap();
        let slow = brute_force_maximal(&s, None).unwrap();
        for i in 0..s.len() {
            prop_assert!((fast.samples[i] - slow.samples[i]).abs() <= 1e-12,
                "i = {}: {} vs {}", i, fast.samples[i], slow.samples[i]);
        }
        let fw = discrete_local_maximal(&s, w).unwrap();
        let sw = brute_force_maximal(&s, Some(w)).unwrap();
        for i in 0..s.len() {
            prop_assert!((fw.samples[i] - sw.samples[i]).abs() <= 1e-12,
                "w = {}, i = {}: {} vs {}", w, i, fw.samples[i], sw.samples[i]);
        }
    }

    #[test]
    fn discrete_sandwich_and_idempotence(v in vec(-50.0f64..50.0, 1..160)) {
        let s = SampledSignal::new(v, 0.5, -3.0).unwrap();
        let out = discrete_maximal(&s).unwrap();
        let sup = s.samples.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (o, x) in out.samples.iter().zip(&s.samples) {
            prop_assert!(*o >= x.abs() - 1e-12);
            prop_assert!(*o <= sup + 1e-12);
        }
        // applying the operator again never decreases values
        let twice = discrete_maximal(&out).unwrap();
        for (t, o) in twice.samples.iter().zip(&out.samples) {
            prop_assert!(*t >= *o - 1e-12);
        }
    }

    #[test]
    fn windowed_cap_monotonicity(v in vec(0.0f64..10.0, 1..120), w1 in 1usize..30, w2 in 1usize..30) {
        let s = SampledSignal::new(v, 1.0, 0.0).unwrap();
        let (a, b) = (w1.min(w2), w1.max(w2));
        let oa = discrete_local_maximal(&s, a).unwrap();
        let ob = discrete_local_maximal(&s, b).unwrap();
        let full = discrete_maximal(&s).unwrap();
        for i in 0..s.len() {
            prop_assert!(oa.samples[i] <= ob.samples[i] + 1e-12);
            prop_assert!(ob.samples[i] <= full.samples[i] + 1e-12);
        }
    }
}

// ---------------------------------------------------------------------------
// local Lipschitz bound from witness lengths

#[test]
fn witness_length_controls_difference_quotients() {
    // wherever the optimal interval has length >= 1/n, nearby difference
    // quotients of the profile stay within n * sup|f|
    let mut rng = bvmax_core::checks::SplitMix64(2718);
    for _ in 0..30 {
        let f = bvmax_core::checks::random_step(&mut rng, 10);
        let g = f.abs().canonical_representative();
        let sup = g.sup_norm();
        if sup.is_zero() {
            continue;
        }
        let p = maximal(&f).unwrap();
        for b in g.breakpoints() {
            let x = b + rq(1, 16);
            if !g.domain().contains(&x) {
                continue;
            }
            let w = argmax_witness(&f, &x).unwrap();
            let len = match &w.length {
                Some(l) if !l.is_zero() => l.clone(),
                _ => continue,
            };
            // n = ceil(1 / len); quotient bound n * sup
            let bound = &sup / &len;
            for h in [rq(1, 64), rq(1, 256)] {
                let y = &x + &h;
                if g.domain().contains(&y) {
                    let q = (p.value_at(&y) - p.value_at(&x)) / &h;
                    let q = q.clone().max(-q);
                    assert!(
                        q <= bound,
                        "quotient {} exceeds {} at {} (witness length {})",
                        q,
                        bound,
                        x,
                        len
                    );
                }
            }
        }
    }
}
