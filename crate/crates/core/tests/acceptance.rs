//! Acceptance suite: one pass/fail line per criterion, all criteria pinned
//! to their stated tolerances. Everything runs inside a single test so the
//! timing measurements are not perturbed by parallel tests in this binary.

use bvmax_core::checks::{
    check_fat_cantor, check_landau, check_landau_simplified_counterexample,
    check_usc_discontinuity, check_variation_bound, random_pwl_bounded, random_pwl_on_line,
    random_step_on, run_suite, DomainChoice, LandauVariant, SplitMix64, Suite,
    LIPSCHITZ_REAL_LINE_FACTOR,
};
use bvmax_core::discrete::{
    brute_force_maximal, discrete_maximal, discrete_maximal_with_stats, sample_step,
    SampledSignal,
};
use bvmax_core::gallery;
use bvmax_core::maximal::{maximal, maximal_pwl, LinFrac, PwlEngineOptions};
use bvmax_core::rational::{rat_to_f64, ri, rq, Rat};
use bvmax_core::step::StepFunction;
use bvmax_core::Interval;
use std::time::Instant;

struct Gate {
    lines: Vec<(bool, String)>,
}

impl Gate {
    fn new() -> Self {
        Gate { lines: Vec::new() }
    }

    fn record(&mut self, id: u32, pass: bool, detail: String) {
        let line = format!(
            "criterion {:>2}: {} — {}",
            id,
            if pass { "PASS" } else { "FAIL" },
            detail
        );
        println!("{line}");
        self.lines.push((pass, line));
    }

    fn finish(self) {
        let failures: Vec<&String> = self
            .lines
            .iter()
            .filter(|(p, _)| !p)
            .map(|(_, l)| l)
            .collect();
        assert!(
            failures.is_empty(),
            "acceptance failures:\n{}",
            failures
                .iter()
                .map(|s| s.as_str())
                .collect::<Vec<_>>()
                .join("\n")
        );
    }
}

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
fn acceptance() {
    let mut gate = Gate::new();

    criterion_1_closed_form(&mut gate);
    criterion_2_sharpness(&mut gate);
    criterion_3_variation_suite(&mut gate);
    criterion_4_oracle_equivalence(&mut gate);
    criterion_5_structure_suite(&mut gate);
    criterion_6_fat_cantor(&mut gate);
    criterion_7_landau(&mut gate);
    criterion_8_usc(&mut gate);
    criterion_9_lipschitz(&mut gate);
    criterion_10_performance(&mut gate);

    gate.finish();
}

/// Exact closed form of the indicator profile at 50 rational probes.
fn criterion_1_closed_form(gate: &mut Gate) {
    let f = chi01();
    let _warm = maximal(&f).unwrap();
    let t = Instant::now();
    let p = maximal(&f).unwrap();
    let elapsed = t.elapsed();
    let left = LinFrac {
        a: ri(1),
        b: ri(0),
        c: ri(1),
        d: ri(-1),
    };
    let right = LinFrac {
        a: ri(1),
        b: ri(0),
        c: ri(0),
        d: ri(1),
    };
    let mut ok = true;
    for k in 1..=50i64 {
        // probes sweeping all three regimes
        let xs = [rq(-3 * k, 7), rq(k, 51), rq(50 + 3 * k, 17)];
        let (xl, xm, xr) = (&xs[0], &xs[1], &xs[2]);
        ok &= p.value_at(xl) == left.eval(xl);
        ok &= p.value_at(xm) == ri(1);
        ok &= p.value_at(xr) == right.eval(xr);
    }
    let fast = elapsed.as_millis() < 10;
    gate.record(
        1,
        ok && fast,
        format!("closed form at 150 rational probes (exact); engine time {elapsed:?} < 10 ms"),
    );
}

/// Exact sharpness on the line and tightness of shrinking indicators.
fn criterion_2_sharpness(gate: &mut Gate) {
    let p = maximal(&chi01()).unwrap();
    let v = p.variation();
    let exact_equal = v.as_rat() == Some(&ri(2));
    let mut min_ratio = f64::INFINITY;
    for eps_den in [1000i64, 10_000] {
        let eps = rq(1, eps_den);
        let f = gallery::char_interval(
            rq(1, 2) - &eps,
            rq(1, 2) + &eps,
            Interval::bounded(ri(0), ri(1)).unwrap(),
        )
        .unwrap();
        let prof = maximal(&f).unwrap();
        let tight = prof.variation().to_f64() / rat_to_f64(&f.total_variation());
        min_ratio = min_ratio.min(tight);
    }
    gate.record(
        2,
        exact_equal && min_ratio >= 0.99,
        format!("V(M chi) = 2 exactly; shrinking-indicator tightness >= {min_ratio:.6}"),
    );
}

/// 1000 random step functions satisfy the variation bound exactly.
fn criterion_3_variation_suite(gate: &mut Gate) {
    let t = Instant::now();
    let mut rng = SplitMix64(3);
    let mut failures = 0usize;
    for _ in 0..1000 {
        let f = random_step_on(&mut rng, 30, DomainChoice::Mixed).canonical_representative();
        let r = check_variation_bound(&f).unwrap();
        if !r.pass {
            failures += 1;
        }
    }
    let elapsed = t.elapsed();
    gate.record(
        3,
        failures == 0 && elapsed.as_secs() < 60,
        format!("1000 instances, {failures} failures, {elapsed:?} < 60 s"),
    );
}

/// Discrete kernel vs quadratic oracle, plus cross-engine convergence.
fn criterion_4_oracle_equivalence(gate: &mut Gate) {
    let mut rng = SplitMix64(4);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let n = 1 + rng.below(2048) as usize;
        let v: Vec<f64> = (0..n)
            .map(|_| rng.below(1 << 20) as f64 / (1 << 20) as f64 * 100.0)
            .collect();
        let s = SampledSignal::new(v, 1.0, 0.0).unwrap();
        let fast = discrete_maximal(&s).unwrap();
        let slow = brute_force_maximal(&s, None).unwrap();
        for i in 0..n {
            worst = worst.max((fast.samples[i] - slow.samples[i]).abs());
        }
    }
    // convergence: sampled middle-third indicator against the exact profile
    let f = StepFunction::new(
        Interval::bounded(ri(0), ri(1)).unwrap(),
        vec![rq(1, 3), rq(2, 3)],
        vec![ri(0), ri(1), ri(0)],
        None,
    )
    .unwrap();
    let profile = maximal(&f).unwrap();
    let mut errors = Vec::new();
    for n in [250usize, 500, 1000, 2000] {
        let s = sample_step(&f, n).unwrap();
        let m = discrete_maximal(&s).unwrap();
        let spacing = s.spacing;
        let mut sup = 0.0f64;
        for i in 0..n {
            let x = s.x_at(i);
            if (x - 1.0 / 3.0).abs() < 2.0 * spacing || (x - 2.0 / 3.0).abs() < 2.0 * spacing {
                continue;
            }
            let exact = profile.value_at_f64(x);
            sup = sup.max((m.samples[i] - exact).abs());
        }
        errors.push(sup);
    }
    let orders: Vec<f64> = errors
        .windows(2)
        .map(|w| (w[0] / w[1]).log2())
        .collect();
    let mean_order = orders.iter().sum::<f64>() / orders.len() as f64;
    gate.record(
        4,
        worst <= 1e-12 && mean_order >= 1.0,
        format!(
            "500 random signals max |fast - oracle| = {worst:.2e} <= 1e-12; convergence orders {orders:?} (mean {mean_order:.2})"
        ),
    );
}

/// Component classification and the strict-local-max identity on 300
/// random instances.
fn criterion_5_structure_suite(gate: &mut Gate) {
    let reports = run_suite(Suite::Structure, 5, 300, 1);
    let failures = reports.iter().filter(|r| !r.pass).count();
    gate.record(
        5,
        failures == 0,
        format!("300 instances, {failures} failures (monotone/valley + exact local-max identity)"),
    );
}

/// Fat Cantor measures, midpoint bounds and quotient witnesses for
/// stages 1..3.
fn criterion_6_fat_cantor(gate: &mut Gate) {
    let stages = gallery::fat_cantor_stages(2).unwrap();
    let exact =
        stages[0].measure == rq(3, 4) && stages[1].measure == rq(45, 64);
    let mut all = exact;
    let mut notes = Vec::new();
    for n in 1..=3u32 {
        let r = check_fat_cantor(n).unwrap();
        all &= r.pass;
        notes.push(format!("stage {n}: {}", if r.pass { "ok" } else { "FAIL" }));
    }
    gate.record(
        6,
        all,
        format!(
            "measures 3/4 and 45/64 exact; midpoint bounds and quotient witnesses: {}",
            notes.join(", ")
        ),
    );
}

/// Landau checks: hat with constant 24, sawtooth refutation, and correct
/// threshold branching on 100 random bounded instances.
fn criterion_7_landau(gate: &mut Gate) {
    let hat = bvmax_core::PiecewiseLinearFunction::new(
        Interval::real_line(),
        vec![ri(0), rq(1, 2), ri(1)],
        vec![(ri(0), ri(0)), (rq(1, 2), rq(1, 2)), (ri(0), ri(0))],
    )
    .unwrap();
    let hat_report = check_landau(&hat, LandauVariant::RealLine).unwrap();
    let hat_ok = hat_report.pass
        && hat_report.lhs_exact.as_deref() == Some("1")
        && hat_report.rhs_exact.as_deref() == Some("48");
    let saw = check_landau_simplified_counterexample(&ri(10), 16).unwrap();
    let saw_ok = saw.pass
        && saw.rhs_exact.as_deref() == Some("5/16")
        && saw.notes.contains("||u|| = 1/32");
    let mut rng = SplitMix64(7);
    let mut branch_ok = 0usize;
    let mut main_branch = 0usize;
    for _ in 0..100 {
        let u = random_pwl_bounded(&mut rng, 10);
        let r = check_landau(&u, LandauVariant::Bounded).unwrap();
        if r.pass {
            branch_ok += 1;
        }
        if r.notes.contains("constant-48") {
            main_branch += 1;
        }
    }
    gate.record(
        7,
        hat_ok && saw_ok && branch_ok == 100,
        format!(
            "hat: 1 <= 48 exact; sawtooth refutes c=10 (1 > 5/16, ||u|| = 1/32, ||DM u'|| = 1); bounded branching {branch_ok}/100 ok ({main_branch} above threshold)"
        ),
    );
}

/// Truncated semicontinuous indicator: discontinuity gap at the origin.
fn criterion_8_usc(gate: &mut Gate) {
    let r = check_usc_discontinuity(8).unwrap();
    let gap = 1.0 - r.lhs;
    gate.record(
        8,
        r.pass && gap >= 0.49,
        format!("M(0) = {} <= 1/2 + 2^-8; mass intervals at 1; gap {gap:.4} >= 0.49", r.lhs_exact.clone().unwrap_or_default()),
    );
}

/// 300 random jump-free piecewise-linear functions on the extended line:
/// sup|DMf| <= Lip(f), and the refined sqrt(2)-1 factor is never violated
/// beyond 1e-9.
fn criterion_9_lipschitz(gate: &mut Gate) {
    let mut rng = SplitMix64(9);
    let mut failures = 0usize;
    let mut refined_violations = 0usize;
    let mut max_ratio = 0.0f64;
    for _ in 0..300 {
        let f = random_pwl_on_line(&mut rng, 12);
        let lip = rat_to_f64(&f.lipschitz_constant().unwrap());
        let p = maximal_pwl(&f, &PwlEngineOptions::default()).unwrap();
        let sup = p.sup_derivative_f64();
        if lip == 0.0 {
            continue;
        }
        if sup > lip * (1.0 + 1e-9) {
            failures += 1;
        }
        if sup > LIPSCHITZ_REAL_LINE_FACTOR * lip + 1e-9 * lip.max(1.0) {
            refined_violations += 1;
        }
        max_ratio = max_ratio.max(sup / lip);
    }
    gate.record(
        9,
        failures == 0 && refined_violations == 0,
        format!(
            "300 instances: {failures} bound failures, {refined_violations} refined-factor violations; max sup|DMf|/Lip(f) = {max_ratio:.6} (sqrt(2)-1 = {LIPSCHITZ_REAL_LINE_FACTOR:.6})"
        ),
    );
}

/// Discrete kernel performance and hull-operation linearity.
fn criterion_10_performance(gate: &mut Gate) {
    let gen = |n: usize, seed: u64| -> SampledSignal {
        let mut state = seed;
        let v: Vec<f64> = (0..n)
            .map(|_| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (state >> 11) as f64 / (1u64 << 53) as f64 * 100.0
            })
            .collect();
        SampledSignal::new(v, 1.0, 0.0).unwrap()
    };
    let time_kernel = |s: &SampledSignal| -> f64 {
        let mut best = f64::INFINITY;
        for _ in 0..3 {
            let t = Instant::now();
            let out = discrete_maximal(s).unwrap();
            let dt = t.elapsed().as_secs_f64();
            assert!(out.len() == s.len());
            best = best.min(dt);
        }
        best
    };
    let s10m = gen(10_000_000, 1);
    let t10m = time_kernel(&s10m);
    let (_, stats) = discrete_maximal_with_stats(&s10m).unwrap();
    let n = s10m.len() as u64;
    let ops_ok = stats.pass_total() <= 4 * n && stats.bridge_total() <= 8 * n;
    let mut ratios = Vec::new();
    for base in [100_000usize, 1_000_000, 10_000_000] {
        let t1 = if base == 10_000_000 { t10m } else { time_kernel(&gen(base, 2)) };
        let t2 = time_kernel(&gen(2 * base, 3));
        ratios.push(t2 / t1.max(1e-9));
    }
    let ratios_ok = ratios.iter().all(|r| *r < 2.5);
    gate.record(
        10,
        t10m < 1.0 && ops_ok && ratios_ok,
        format!(
            "10^7 samples in {:.3} s < 1 s; one-sided hull ops {} <= 4n, bridge ops {} <= 8n; time(2n)/time(n) = {:?} all < 2.5",
            t10m,
            stats.pass_total(),
            stats.bridge_total(),
            ratios.iter().map(|r| (r * 100.0).round() / 100.0).collect::<Vec<_>>()
        ),
    );
}
