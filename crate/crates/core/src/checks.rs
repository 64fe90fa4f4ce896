//! Machine verification of the variation, structure, Lipschitz, Landau and
//! Poincaré-type inequalities on concrete instances, with structured
//! pass/fail reports carrying both sides of every comparison.

use crate::error::CheckError;
use crate::gallery;
use crate::interval::Interval;
use crate::maximal::{
    eval_maximal_at, eval_maximal_batch, local_maximal, maximal, maximal_pwl, structure,
    PwlEngineOptions,
};
use crate::measure::derivative_measure_step;
use crate::pwl::PiecewiseLinearFunction;
use crate::rational::{rat_to_f64, rat_to_string, ri, rq, Endpoint, Rat};
use crate::step::StepFunction;
use crate::surd::ExactSum;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;

/// Arithmetic provenance of a report: exact rational/algebraic comparison,
/// or float with an explicit tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckProvenance {
    Exact,
    Float,
}

/// Relative tolerance for float-provenance comparisons.
pub const FLOAT_REL_TOL: f64 = 1e-9;
/// Absolute floor under the relative tolerance.
pub const FLOAT_ABS_TOL: f64 = 1e-12;

/// Refined Lipschitz factor announced for the real line.
pub const LIPSCHITZ_REAL_LINE_FACTOR: f64 = 0.41421356237309515; // sqrt(2) - 1
/// Refined Lipschitz factor announced for general intervals.
pub const LIPSCHITZ_GENERAL_FACTOR: f64 = 0.5;

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub instance: String,
    pub lhs: f64,
    pub rhs: f64,
    pub lhs_exact: Option<String>,
    pub rhs_exact: Option<String>,
    pub pass: bool,
    /// lhs / rhs when meaningful
    pub tightness: Option<f64>,
    pub provenance: CheckProvenance,
    pub tolerance: Option<f64>,
    pub notes: String,
}

impl VerificationReport {
    fn exact_le(claim: &str, instance: &str, lhs: &ExactSum, rhs: &Rat, notes: String) -> Self {
        let pass = lhs.cmp_rat(rhs) != Ordering::Greater;
        let lf = lhs.to_f64();
        let rf = rat_to_f64(rhs);
        VerificationReport {
            claim: claim.into(),
            instance: instance.into(),
            lhs: lf,
            rhs: rf,
            lhs_exact: lhs.as_rat().map(rat_to_string),
            rhs_exact: Some(rat_to_string(rhs)),
            pass,
            tightness: if rf != 0.0 { Some(lf / rf) } else { None },
            provenance: CheckProvenance::Exact,
            tolerance: None,
            notes,
        }
    }

    fn float_le(claim: &str, instance: &str, lhs: f64, rhs: f64, notes: String) -> Self {
        let tol = FLOAT_REL_TOL * rhs.abs().max(1.0) + FLOAT_ABS_TOL;
        VerificationReport {
            claim: claim.into(),
            instance: instance.into(),
            lhs,
            rhs,
            lhs_exact: None,
            rhs_exact: None,
            pass: lhs <= rhs + tol,
            tightness: if rhs != 0.0 { Some(lhs / rhs) } else { None },
            provenance: CheckProvenance::Float,
            tolerance: Some(tol),
            notes,
        }
    }
}

/// V(Mf) <= V(canonical f), exactly.
pub fn check_variation_bound(f: &StepFunction) -> Result<VerificationReport, CheckError> {
    let profile = maximal(f)?;
    let lhs = profile.variation();
    let rhs = f.abs().canonical_representative().total_variation();
    Ok(VerificationReport::exact_le(
        "variation-bound",
        &describe_step(f),
        &lhs,
        &rhs,
        String::new(),
    ))
}

/// Components of {Mf > f} classify as monotone or single-valley, interior
/// strict local maxima of Mf sit on {Mf = f}, and the variation does not
/// grow over any component closure.
pub fn check_component_structure(f: &StepFunction) -> Result<VerificationReport, CheckError> {
    let g = f.abs().canonical_representative();
    let profile = maximal(&g)?;
    let comps = structure::components_above(&profile, &g);
    let mut pass = true;
    let mut notes = Vec::new();
    let mut shapes = (0usize, 0usize);
    for c in &comps {
        match c.shape {
            structure::ComponentShape::Monotone => shapes.0 += 1,
            structure::ComponentShape::Valley => shapes.1 += 1,
            structure::ComponentShape::Invalid => {
                pass = false;
                notes.push(format!("component with interior max before descent"));
            }
        }
    }
    let mut lhs_sum = ExactSum::zero();
    let mut rhs_sum = Rat::zero();
    for c in &comps {
        let (pv, fv) = structure::variation_comparison_on(&profile, &g, &c.lo, &c.hi);
        if pv.cmp_rat(&fv) == Ordering::Greater {
            pass = false;
            notes.push("variation grows on a component closure".into());
        }
        lhs_sum = {
            let mut s = lhs_sum;
            // accumulate for reporting
            if let Some(r) = pv.as_rat() {
                s.add_rat(r);
            }
            s
        };
        rhs_sum += &fv;
    }
    for (x, mv, fv) in structure::strict_local_maxima_vs_source(&profile, &g) {
        if mv.cmp_exact(&fv) != Ordering::Equal {
            pass = false;
            notes.push(format!("strict local max at {x} with M = {mv} but f = {fv}"));
        }
    }
    let mut report = VerificationReport::exact_le(
        "component-structure",
        &describe_step(f),
        &lhs_sum,
        &rhs_sum,
        format!(
            "{} monotone, {} valley components{}",
            shapes.0,
            shapes.1,
            if notes.is_empty() {
                String::new()
            } else {
                format!("; {}", notes.join("; "))
            }
        ),
    );
    report.pass = pass && report.pass;
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainKind {
    RealLine,
    General,
}

/// Lip(Mf) <= Lip(f) for jump-free piecewise-linear f, via the float
/// engine; the refined factors (1/2 general, sqrt(2)-1 on the real line)
/// are reported, not asserted.
pub fn check_lipschitz_bound(
    f: &PiecewiseLinearFunction,
    kind: DomainKind,
) -> Result<VerificationReport, CheckError> {
    let lip = f.lipschitz_constant().map_err(CheckError::Func)?;
    let profile = maximal_pwl(f, &PwlEngineOptions::default())?;
    let sup = profile.sup_derivative_f64();
    let lipf = rat_to_f64(&lip);
    let refined = match kind {
        DomainKind::RealLine => LIPSCHITZ_REAL_LINE_FACTOR,
        DomainKind::General => LIPSCHITZ_GENERAL_FACTOR,
    };
    let refined_ok = lipf == 0.0 || sup <= refined * lipf + FLOAT_REL_TOL * lipf.max(1.0);
    let mut report = VerificationReport::float_le(
        "lipschitz-bound",
        &format!("pwl with {} knots", f.knots().len()),
        sup,
        lipf,
        format!(
            "refined factor {} ({}): {}",
            refined,
            match kind {
                DomainKind::RealLine => "real line",
                DomainKind::General => "general interval",
            },
            if refined_ok { "not violated" } else { "exceeded" }
        ),
    );
    report.claim = "lipschitz-bound".into();
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LandauVariant {
    RealLine,
    InfiniteInterval,
    Bounded,
}

/// Norm inequality between u', u, and the sup of the derivatives of the
/// maximal functions of the two parts of u'. Constants: 24 on the real
/// line, 48 on other infinite intervals; bounded intervals branch on a
/// length threshold and fall back to ||u'|| <= 8 ||u|| / length.
pub fn check_landau(
    u: &PiecewiseLinearFunction,
    variant: LandauVariant,
) -> Result<VerificationReport, CheckError> {
    let sup_u = match u.sup_norm() {
        Endpoint::Finite(v) => v,
        _ => {
            // unbounded u: the right side is infinite by the convention
            // infinity * 0 = infinity, so the inequality holds trivially
            return Ok(VerificationReport {
                claim: "landau".into(),
                instance: format!("pwl with {} knots (unbounded)", u.knots().len()),
                lhs: 0.0,
                rhs: f64::INFINITY,
                lhs_exact: None,
                rhs_exact: None,
                pass: true,
                tightness: Some(0.0),
                provenance: CheckProvenance::Exact,
                tolerance: None,
                notes: "unbounded u: right side infinite by convention".into(),
            });
        }
    };
    let du = u.derivative().map_err(CheckError::Func)?;
    let sup_du = du.sup_norm();
    let plus = du.positive_part();
    let minus = du.negative_part();
    let sum_sup_deriv = {
        let mp = maximal(&plus)?;
        let mm = maximal(&minus)?;
        let a = mp.sup_derivative();
        let b = mm.sup_derivative();
        let mut s = ExactSum::zero();
        s.add_value(&a);
        s.add_value(&b);
        s
    };
    let instance = format!("pwl with {} knots", u.knots().len());
    match variant {
        LandauVariant::RealLine | LandauVariant::InfiniteInterval => {
            if u.domain().is_bounded() {
                return Err(CheckError::Precondition(
                    "variant requires an infinite-length interval".into(),
                ));
            }
            let c = if variant == LandauVariant::RealLine {
                ri(24)
            } else {
                ri(48)
            };
            // lhs = ||u'||^2, rhs = c ||u|| (sup DM(u'+) + sup DM(u'-))
            let lhs = ExactSum::from_rat(&sup_du * &sup_du);
            let rhs_sum = sum_sup_deriv.scale(&(c * &sup_u));
            let pass = lhs.cmp_sum(&rhs_sum) != Ordering::Greater;
            Ok(VerificationReport {
                claim: "landau".into(),
                instance,
                lhs: lhs.to_f64(),
                rhs: rhs_sum.to_f64(),
                lhs_exact: lhs.as_rat().map(rat_to_string),
                rhs_exact: rhs_sum.as_rat().map(rat_to_string),
                pass,
                tightness: if rhs_sum.to_f64() != 0.0 {
                    Some(lhs.to_f64() / rhs_sum.to_f64())
                } else {
                    None
                },
                provenance: CheckProvenance::Exact,
                tolerance: None,
                notes: String::new(),
            })
        }
        LandauVariant::Bounded => {
            let len = u
                .domain()
                .length()
                .ok_or_else(|| CheckError::Precondition("variant requires a bounded interval".into()))?;
            // threshold: len >= sqrt(4 ||u|| / (3 sum)); squared comparison
            let three_sum = sum_sup_deriv.scale(&ri(3));
            let len_sq_scaled = three_sum.scale(&(&len * &len));
            let four_u = ri(4) * &sup_u;
            let in_main_branch = len_sq_scaled.cmp_rat(&four_u) != Ordering::Less
                && sum_sup_deriv.cmp_rat(&Rat::zero()) == Ordering::Greater;
            if in_main_branch {
                let lhs = ExactSum::from_rat(&sup_du * &sup_du);
                let rhs_sum = sum_sup_deriv.scale(&(ri(48) * &sup_u));
                let pass = lhs.cmp_sum(&rhs_sum) != Ordering::Greater;
                Ok(VerificationReport {
                    claim: "landau-bounded".into(),
                    instance,
                    lhs: lhs.to_f64(),
                    rhs: rhs_sum.to_f64(),
                    lhs_exact: lhs.as_rat().map(rat_to_string),
                    rhs_exact: rhs_sum.as_rat().map(rat_to_string),
                    pass,
                    tightness: None,
                    provenance: CheckProvenance::Exact,
                    tolerance: None,
                    notes: "length above threshold: constant-48 branch".into(),
                })
            } else {
                // fallback: ||u'|| <= 8 ||u|| / length
                let rhs = ri(8) * &sup_u / &len;
                let lhs = ExactSum::from_rat(sup_du);
                Ok(VerificationReport::exact_le(
                    "landau-bounded",
                    &instance,
                    &lhs,
                    &rhs,
                    "length below threshold: 8/length fallback branch".into(),
                ))
            }
        }
    }
}

/// The simplified product inequality ||u'|| <= c ||u|| ||DM(u')|| fails on
/// the sawtooth: the report passes when the refutation succeeds.
pub fn check_landau_simplified_counterexample(
    c: &Rat,
    n: u32,
) -> Result<VerificationReport, CheckError> {
    if Rat::from(BigInt::from(n)) <= *c {
        return Err(CheckError::Precondition(format!(
            "need n > c, got n = {n}, c = {}",
            rat_to_string(c)
        )));
    }
    let (u, du) = gallery::sawtooth_example(n).map_err(CheckError::Func)?;
    let sup_u = match u.sup_norm() {
        Endpoint::Finite(v) => v,
        _ => unreachable!("sawtooth is bounded"),
    };
    let expected_sup_u = Rat::new(BigInt::one(), BigInt::from(2) * BigInt::from(n));
    let sup_du = du.sup_norm();
    let m = maximal(&du)?;
    let sup_dm = m.sup_derivative();
    let ok_values = sup_u == expected_sup_u
        && sup_du == ri(1)
        && sup_dm.cmp_exact(&crate::surd::ExactValue::Rat(ri(1))) == Ordering::Equal;
    // the simplified inequality would demand 1 <= c * (1/2n) * 1
    let rhs = c * &sup_u;
    let refuted = sup_du > rhs;
    Ok(VerificationReport {
        claim: "landau-simplified-counterexample".into(),
        instance: format!("sawtooth n = {n}, c = {}", rat_to_string(c)),
        lhs: rat_to_f64(&sup_du),
        rhs: rat_to_f64(&rhs),
        lhs_exact: Some(rat_to_string(&sup_du)),
        rhs_exact: Some(rat_to_string(&rhs)),
        pass: ok_values && refuted,
        tightness: None,
        provenance: CheckProvenance::Exact,
        tolerance: None,
        notes: format!(
            "||u|| = {}, ||DM u'|| = {}; inequality fails as required",
            rat_to_string(&sup_u),
            sup_dm
        ),
    })
}

/// Quadratic-mean inequality via the window-capped maximal function:
/// int f^2 <= c int (D M_R f)^2 with c = (length/pi)^2, for f supported at
/// distance >= R from the boundary of a bounded interval.
pub fn check_poincare(f: &StepFunction, r: &Rat) -> Result<VerificationReport, CheckError> {
    let (a, b) = match (f.domain().left(), f.domain().right()) {
        (Endpoint::Finite(a), Endpoint::Finite(b)) => (a.clone(), b.clone()),
        _ => return Err(CheckError::Precondition("domain must be bounded".into())),
    };
    if !r.is_positive() {
        return Err(CheckError::Precondition("window bound must be positive".into()));
    }
    if let Some((lo, hi)) = f.support_bounds() {
        let lo_ok = match lo {
            Endpoint::Finite(x) => x >= &a + r,
            _ => false,
        };
        let hi_ok = match hi {
            Endpoint::Finite(x) => x <= &b - r,
            _ => false,
        };
        if !lo_ok || !hi_ok {
            return Err(CheckError::Precondition(
                "support must keep distance R from the boundary".into(),
            ));
        }
    }
    let lhs = f.l2_norm_squared();
    let profile = local_maximal(f, r)?;
    let rhs_raw = profile
        .l2_derivative_squared()
        .expect("bounded domain integrates");
    // lhs <= ((b-a)/pi)^2 rhs  <=>  lhs pi^2 <= (b-a)^2 rhs, certified with
    // a rational bracket of pi
    let (pi_lo, pi_hi) = pi_bracket();
    let len = &b - &a;
    let scaled_rhs = rhs_raw.scale(&(&len * &len));
    let pass_hi = scaled_rhs.cmp_rat(&(&lhs * &pi_hi * &pi_hi)) != Ordering::Less;
    let pass_lo = scaled_rhs.cmp_rat(&(&lhs * &pi_lo * &pi_lo)) != Ordering::Less;
    let pass = pass_hi;
    let c = rat_to_f64(&len) * rat_to_f64(&len) / (std::f64::consts::PI * std::f64::consts::PI);
    Ok(VerificationReport {
        claim: "poincare-local".into(),
        instance: format!("{} with R = {}", describe_step(f), rat_to_string(r)),
        lhs: rat_to_f64(&lhs),
        rhs: c * rhs_raw.to_f64(),
        lhs_exact: Some(rat_to_string(&lhs)),
        rhs_exact: rhs_raw.as_rat().map(|v| format!("{} (raw)", rat_to_string(v))),
        pass,
        tightness: None,
        provenance: CheckProvenance::Exact,
        tolerance: None,
        notes: format!(
            "c = (length/pi)^2; raw int (DM_R f)^2 = {}; bracket agreement: {}",
            rhs_raw.to_f64(),
            pass_hi == pass_lo
        ),
    })
}

/// Two bounds behind boundedness into the first Sobolev space on a bounded
/// interval: ||DMf||_1 <= |Df|(I) exactly, and ||Mf||_1 <= length * ||f||_inf
/// certified through the pointwise bound Mf <= ||f||_inf.
pub fn check_bv_to_w11(f: &StepFunction) -> Result<VerificationReport, CheckError> {
    let len = f
        .domain()
        .length()
        .ok_or_else(|| CheckError::Precondition("domain must be bounded".into()))?;
    let g = f.abs().canonical_representative();
    let profile = maximal(f)?;
    let deriv_l1 = profile.variation();
    let df_mass = derivative_measure_step(&g).total_variation_mass;
    let bound1 = deriv_l1.cmp_rat(&df_mass) != Ordering::Greater;
    let sup_f = f.sup_norm();
    let sup_profile = profile.sup_value();
    let bound2 = sup_profile.cmp_exact(&crate::surd::ExactValue::Rat(sup_f.clone()))
        != Ordering::Greater;
    let integral = profile.integral();
    let l1_f = f.l1_norm();
    let w11 = integral.approx + deriv_l1.to_f64();
    let bv = rat_to_f64(&l1_f) + rat_to_f64(&df_mass);
    Ok(VerificationReport {
        claim: "bv-to-w11".into(),
        instance: describe_step(f),
        lhs: deriv_l1.to_f64(),
        rhs: rat_to_f64(&df_mass),
        lhs_exact: deriv_l1.as_rat().map(rat_to_string),
        rhs_exact: Some(rat_to_string(&df_mass)),
        pass: bound1 && bound2,
        tightness: if bv != 0.0 { Some(w11 / bv) } else { None },
        provenance: CheckProvenance::Exact,
        tolerance: None,
        notes: format!(
            "||Mf||_1 = {:.6} <= {} = length * sup|f| (via sup Mf = {}); realized W11/BV ratio {:.4}",
            integral.approx,
            rat_to_string(&(&len * &sup_f)),
            sup_profile,
            if bv != 0.0 { w11 / bv } else { 0.0 },
        ),
    })
}

/// Fat Cantor iterate: measure recursion, strict bound at every deleted
/// midpoint, and a certified difference quotient at a witness pair.
pub fn check_fat_cantor(n: u32) -> Result<VerificationReport, CheckError> {
    if !(1..=3).contains(&n) {
        return Err(CheckError::Precondition("supported range is 1..=3".into()));
    }
    let stages = gallery::fat_cantor_stages(n).map_err(CheckError::Func)?;
    let mut pass = true;
    let mut notes = Vec::new();
    // measure recursion
    let mut prev = ri(1);
    for (k, st) in stages.iter().enumerate() {
        let stage = (k + 1) as u32;
        let keep = ri(1) - Rat::new(BigInt::one(), BigInt::one() << (2 * stage));
        let expect = &prev * &keep;
        if st.measure != expect {
            pass = false;
            notes.push(format!("measure recursion fails at stage {stage}"));
        }
        prev = st.measure.clone();
    }
    if stages[0].measure != rq(3, 4) {
        pass = false;
        notes.push("measure of the first stage is not 3/4".into());
    }
    if n >= 2 && stages[1].measure != rq(45, 64) {
        pass = false;
        notes.push("measure of the second stage is not 45/64".into());
    }
    let f = gallery::fat_cantor(n).map_err(CheckError::Func)?;
    let last = stages.last().unwrap();
    let mut midpoints = last.deleted_midpoints.clone();
    midpoints.sort();
    midpoints.dedup();
    midpoints.retain(|x| f.domain().contains(x));
    let values = eval_maximal_batch(&f, &midpoints)?;
    // strict bound 1 - 2^{-2n-1} at every deleted midpoint of the last stage
    let bound = ri(1) - Rat::new(BigInt::one(), BigInt::one() << (2 * n + 1));
    let mut worst = Rat::zero();
    for v in &values {
        if v > &worst {
            worst = v.clone();
        }
        if v >= &bound {
            pass = false;
        }
    }
    // witness pair: midpoint of the first kept component vs the deleted
    // midpoint at its left edge
    let (z, w) = {
        let (clo, chi) = &last.components[0];
        let z = (clo + chi) / ri(2);
        // nearest deleted midpoint: the center of the removed interval at
        // the component's left edge
        let w = midpoints
            .iter()
            .filter(|m| *m < clo)
            .last()
            .cloned()
            .unwrap_or_else(|| ri(0));
        (z, w)
    };
    let mz = eval_maximal_at(&f, &z, None)?;
    let mw = eval_maximal_at(&f, &w, None)?;
    if mz != ri(1) {
        pass = false;
        notes.push("maximal value at the witness component midpoint is not 1".into());
    }
    let quotient = (&mz - &mw) / (&z - &w).abs();
    let quotient_bound = Rat::new(BigInt::one(), BigInt::one() << (2 * n + 1))
        / Rat::new(BigInt::one(), BigInt::one() << (n * (n + 1)));
    if quotient < quotient_bound {
        pass = false;
        notes.push("difference quotient below the certified bound".into());
    }
    Ok(VerificationReport {
        claim: "fat-cantor".into(),
        instance: format!("stage {n} ({} components)", last.components.len()),
        lhs: rat_to_f64(&worst),
        rhs: rat_to_f64(&bound),
        lhs_exact: Some(rat_to_string(&worst)),
        rhs_exact: Some(rat_to_string(&bound)),
        pass,
        tightness: Some(rat_to_f64(&worst) / rat_to_f64(&bound)),
        provenance: CheckProvenance::Exact,
        tolerance: None,
        notes: format!(
            "measure = {}; {} midpoints all below the bound; quotient {} >= {}{}",
            rat_to_string(&last.measure),
            values.len(),
            rat_to_f64(&quotient),
            rat_to_f64(&quotient_bound),
            if notes.is_empty() {
                String::new()
            } else {
                format!("; {}", notes.join("; "))
            }
        ),
    })
}

/// Truncated semicontinuous indicator: the maximal function stays near 1/2
/// at the origin while it is exactly 1 on the mass intervals, certifying a
/// discontinuity gap.
pub fn check_usc_discontinuity(levels: u32) -> Result<VerificationReport, CheckError> {
    if levels < 2 {
        return Err(CheckError::Precondition("need at least two levels".into()));
    }
    let f = gallery::usc_discontinuity_example(levels).map_err(CheckError::Func)?;
    let m0 = eval_maximal_at(&f, &ri(0), None)?;
    let bound = rq(1, 2) + Rat::new(BigInt::one(), BigInt::one() << levels);
    let mut pass = m0 <= bound;
    let mut notes = Vec::new();
    // value exactly 1 in the interior of each mass interval
    for k in 0..=levels {
        let lo = Rat::new(BigInt::from(3), BigInt::one() << (k + 2));
        let hi = Rat::new(BigInt::one(), BigInt::one() << k);
        let mid = (&lo + &hi) / ri(2);
        let v = eval_maximal_at(&f, &mid, None)?;
        if v != ri(1) {
            pass = false;
            notes.push(format!("maximal value at level {k} midpoint is {}", v));
        }
    }
    let gap = ri(1) - &m0;
    Ok(VerificationReport {
        claim: "usc-discontinuity".into(),
        instance: format!("{levels} levels"),
        lhs: rat_to_f64(&m0),
        rhs: rat_to_f64(&bound),
        lhs_exact: Some(rat_to_string(&m0)),
        rhs_exact: Some(rat_to_string(&bound)),
        pass,
        tightness: None,
        provenance: CheckProvenance::Exact,
        tolerance: None,
        notes: format!(
            "M(0) = {}; discontinuity gap >= {:.6}{}",
            rat_to_string(&m0),
            rat_to_f64(&gap),
            if notes.is_empty() {
                String::new()
            } else {
                format!("; {}", notes.join("; "))
            }
        ),
    })
}

/// Exponent for the norm-decrease check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SobolevExponent {
    One,
    Two,
    Infinity,
}

/// Strict decrease of the first-order Sobolev norm under the maximal
/// operator on the notched plateau.
pub fn check_norm_decrease(
    n: u32,
    p: SobolevExponent,
) -> Result<VerificationReport, CheckError> {
    if n < 8 {
        return Err(CheckError::Precondition("need n >= 8".into()));
    }
    let f = gallery::plateau_example(n).map_err(CheckError::Func)?;
    let df = f.derivative().map_err(CheckError::Func)?;
    let profile = maximal_pwl(&f, &PwlEngineOptions::default())?;
    let samples = &profile.samples;
    let trapz = |vals: &dyn Fn(usize) -> f64| -> f64 {
        let mut acc = 0.0;
        for t in 1..samples.len() {
            let dx = samples[t].x - samples[t - 1].x;
            acc += 0.5 * dx * (vals(t) + vals(t - 1));
        }
        acc
    };
    let (f_norm, m_norm, note) = match p {
        SobolevExponent::One => {
            let f_side = rat_to_f64(&f.l1_norm().map_err(CheckError::Func)?)
                + rat_to_f64(&df.abs().l1_norm());
            let m_value = trapz(&|t| samples[t].value.abs());
            let m_deriv: f64 = (1..samples.len())
                .map(|t| (samples[t].value - samples[t - 1].value).abs())
                .sum();
            (f_side, m_value + m_deriv, String::new())
        }
        SobolevExponent::Two => {
            let f_side = rat_to_f64(&f.l2_norm_squared().map_err(CheckError::Func)?).sqrt()
                + rat_to_f64(&df.l2_norm_squared()).sqrt();
            let m_value = trapz(&|t| samples[t].value * samples[t].value).sqrt();
            let m_deriv = {
                let mut acc = 0.0;
                for t in 1..samples.len() {
                    let dx = samples[t].x - samples[t - 1].x;
                    if dx > 0.0 {
                        let slope = (samples[t].value - samples[t - 1].value) / dx;
                        acc += slope * slope * dx;
                    }
                }
                acc.sqrt()
            };
            (f_side, m_value + m_deriv, "quadrature tolerance 1e-9".into())
        }
        SobolevExponent::Infinity => {
            let f_side = match f.sup_norm() {
                Endpoint::Finite(v) => rat_to_f64(&v),
                _ => f64::INFINITY,
            } + rat_to_f64(&f.lipschitz_constant().map_err(CheckError::Func)?);
            let m_sup = samples
                .iter()
                .map(|s| s.value.abs())
                .fold(0.0f64, f64::max);
            let m_lip = profile.sup_derivative_f64();
            // the sup difference between Mf and f stays strictly below 1
            let diff_sup = samples
                .iter()
                .map(|s| (s.value - f.value_at_f64(s.x)).abs())
                .fold(0.0f64, f64::max);
            (
                f_side,
                m_sup + m_lip,
                format!("sup |Mf - f| = {diff_sup:.6} < 1"),
            )
        }
    };
    let mut report = VerificationReport::float_le(
        "norm-decrease",
        &format!("plateau n = {n}, p = {:?}", p),
        m_norm,
        f_norm,
        note,
    );
    // strict decrease with a real margin, not just tolerance
    report.pass = m_norm + 1e-9 < f_norm;
    Ok(report)
}

/// Rational bracket of pi, 30 significant digits.
fn pi_bracket() -> (Rat, Rat) {
    let denom = BigInt::from(10u8).pow(29);
    let lo = BigInt::parse_bytes(b"314159265358979323846264338327", 10).unwrap();
    let hi = &lo + BigInt::one();
    (
        Rat::new(lo, denom.clone()),
        Rat::new(hi, denom),
    )
}

fn describe_step(f: &StepFunction) -> String {
    format!(
        "step with {} pieces on {}",
        f.piece_values().len(),
        f.domain()
    )
}

// ---------------------------------------------------------------------------
// randomized instances

/// SplitMix64: tiny deterministic generator for reproducible suites.
#[derive(Clone, Debug)]
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainChoice {
    Mixed,
    Bounded,
    RealLine,
}

/// Random step function: up to `max_pieces` rational values in [0, 10],
/// breakpoints on a fine rational grid.
pub fn random_step_on(
    rng: &mut SplitMix64,
    max_pieces: usize,
    choice: DomainChoice,
) -> StepFunction {
    let pieces = 1 + rng.below(max_pieces.max(1) as u64) as usize;
    let denoms = [1i64, 2, 3, 4, 6, 8];
    fn value(rng: &mut SplitMix64, denoms: &[i64]) -> Rat {
        let d = denoms[rng.below(denoms.len() as u64) as usize];
        let num = rng.below((10 * d) as u64 + 1) as i64;
        rq(num, d)
    }
    let mut cuts: Vec<i64> = (0..pieces.saturating_sub(1))
        .map(|_| 1 + rng.below(511) as i64)
        .collect();
    cuts.sort();
    cuts.dedup();
    let breakpoints: Vec<Rat> = cuts.iter().map(|&k| rq(k, 8)).collect();
    let npieces = breakpoints.len() + 1;
    let real_line = match choice {
        DomainChoice::Mixed => rng.below(2) == 0,
        DomainChoice::Bounded => false,
        DomainChoice::RealLine => true,
    };
    let mut vals: Vec<Rat> = (0..npieces).map(|_| value(rng, &denoms)).collect();
    let domain = if real_line {
        vals[0] = ri(0);
        let last = vals.len() - 1;
        vals[last] = ri(0);
        Interval::real_line()
    } else {
        Interval::bounded(ri(-1), ri(65)).unwrap()
    };
    let pvs: Vec<Option<Rat>> = (0..breakpoints.len())
        .map(|_| {
            if rng.below(4) == 0 {
                Some(value(rng, &denoms))
            } else {
                None
            }
        })
        .collect();
    StepFunction::new(domain, breakpoints, vals, Some(pvs)).unwrap()
}

/// Random step function on mixed domains (see `random_step_on`).
pub fn random_step(rng: &mut SplitMix64, max_pieces: usize) -> StepFunction {
    random_step_on(rng, max_pieces, DomainChoice::Mixed)
}

/// Random continuous piecewise-linear function with zero boundary values,
/// extended by zero to the real line.
pub fn random_pwl_on_line(rng: &mut SplitMix64, max_knots: usize) -> PiecewiseLinearFunction {
    let interior = 1 + rng.below(max_knots.max(2) as u64 - 1) as usize;
    let mut cuts: Vec<i64> = (0..interior).map(|_| 1 + rng.below(63) as i64).collect();
    cuts.sort();
    cuts.dedup();
    let mut points: Vec<(Rat, Rat)> = vec![(ri(0), ri(0))];
    for &k in &cuts {
        let v = rq(rng.below(41) as i64 - 20, 4);
        points.push((rq(k, 4), v));
    }
    points.push((rq(17, 1) + rq(cuts.last().copied().unwrap_or(1), 4), ri(0)));
    PiecewiseLinearFunction::from_points(Interval::real_line(), points).unwrap()
}

/// Random continuous piecewise-linear function on a bounded interval.
pub fn random_pwl_bounded(rng: &mut SplitMix64, max_knots: usize) -> PiecewiseLinearFunction {
    let interior = rng.below(max_knots.max(2) as u64 - 1) as usize;
    let mut cuts: Vec<i64> = (0..interior).map(|_| 1 + rng.below(31) as i64).collect();
    cuts.sort();
    cuts.dedup();
    let lo = ri(0);
    let hi = ri(8);
    let mut points: Vec<(Rat, Rat)> = vec![(lo.clone(), rq(rng.below(21) as i64 - 10, 2))];
    for &k in &cuts {
        points.push((rq(k, 4), rq(rng.below(21) as i64 - 10, 2)));
    }
    points.push((hi.clone(), rq(rng.below(21) as i64 - 10, 2)));
    PiecewiseLinearFunction::from_points(Interval::bounded(lo, hi).unwrap(), points).unwrap()
}

/// Random step function supported away from the boundary of [0, L].
pub fn random_supported_step(rng: &mut SplitMix64, margin: &Rat) -> (StepFunction, Rat) {
    let l = ri(10);
    let pieces = 1 + rng.below(6) as usize;
    let mut cuts: Vec<i64> = (0..pieces)
        .map(|_| 24 + rng.below(32) as i64) // grid points in [3, 7] at /8
        .collect();
    cuts.sort();
    cuts.dedup();
    let breakpoints: Vec<Rat> = cuts.iter().map(|&k| rq(k, 8)).collect();
    let mut vals: Vec<Rat> = (0..breakpoints.len() + 1)
        .map(|_| rq(rng.below(33) as i64, 4))
        .collect();
    vals[0] = ri(0);
    let last = vals.len() - 1;
    vals[last] = ri(0);
    let f = StepFunction::new(
        Interval::bounded(ri(0), l).unwrap(),
        breakpoints,
        vals,
        None,
    )
    .unwrap();
    (f, margin.clone())
}

// ---------------------------------------------------------------------------
// suites

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    VariationBound,
    Structure,
    Lipschitz,
    Landau,
    Poincare,
    BvToW11,
    Cantor,
    Usc,
    NormDecrease,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        Some(match name {
            "all" => Suite::All,
            "theorem-main" | "variation" | "variation-bound" => Suite::VariationBound,
            "structure" => Suite::Structure,
            "lipschitz" => Suite::Lipschitz,
            "landau" => Suite::Landau,
            "poincare" => Suite::Poincare,
            "bv-w11" | "bv-to-w11" => Suite::BvToW11,
            "cantor" => Suite::Cantor,
            "usc" => Suite::Usc,
            "norm-decrease" => Suite::NormDecrease,
            _ => return None,
        })
    }
}

/// Order-preserving parallel map over a worker pool of the given size.
fn parallel_map<T, R, F>(items: Vec<T>, jobs: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    let jobs = jobs.max(1);
    if jobs == 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    let mut tagged: Vec<(usize, T)> = items.into_iter().enumerate().collect();
    let chunk = tagged.len().div_ceil(jobs);
    let mut out: Vec<(usize, R)> = Vec::with_capacity(tagged.len());
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        while !tagged.is_empty() {
            let take = chunk.min(tagged.len());
            let batch: Vec<(usize, T)> = tagged.drain(..take).collect();
            let fref = &f;
            handles.push(scope.spawn(move || {
                batch
                    .into_iter()
                    .map(|(i, t)| (i, fref(t)))
                    .collect::<Vec<_>>()
            }));
        }
        for h in handles {
            out.extend(h.join().expect("worker panicked"));
        }
    });
    out.sort_by_key(|(i, _)| *i);
    out.into_iter().map(|(_, r)| r).collect()
}

fn error_report(claim: &str, err: &CheckError) -> VerificationReport {
    VerificationReport {
        claim: claim.into(),
        instance: String::new(),
        lhs: f64::NAN,
        rhs: f64::NAN,
        lhs_exact: None,
        rhs_exact: None,
        pass: false,
        tightness: None,
        provenance: CheckProvenance::Exact,
        tolerance: None,
        notes: format!("check failed to run: {err}"),
    }
}

/// Runs a deterministic randomized suite. Instances derive from the seed
/// alone, so the result is independent of the worker count.
pub fn run_suite(suite: Suite, seed: u64, count: usize, jobs: usize) -> Vec<VerificationReport> {
    match suite {
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::VariationBound,
                Suite::Structure,
                Suite::Lipschitz,
                Suite::Landau,
                Suite::Poincare,
                Suite::BvToW11,
                Suite::Cantor,
                Suite::Usc,
                Suite::NormDecrease,
            ] {
                all.extend(run_suite(s, seed, count, jobs));
            }
            all
        }
        Suite::VariationBound => {
            let mut rng = SplitMix64(seed);
            let fs: Vec<StepFunction> = (0..count).map(|_| random_step(&mut rng, 30)).collect();
            parallel_map(fs, jobs, |f| {
                check_variation_bound(&f).unwrap_or_else(|e| error_report("variation-bound", &e))
            })
        }
        Suite::Structure => {
            let mut rng = SplitMix64(seed);
            let fs: Vec<StepFunction> = (0..count).map(|_| random_step(&mut rng, 20)).collect();
            parallel_map(fs, jobs, |f| {
                check_component_structure(&f)
                    .unwrap_or_else(|e| error_report("component-structure", &e))
            })
        }
        Suite::Lipschitz => {
            let mut rng = SplitMix64(seed);
            let fs: Vec<PiecewiseLinearFunction> =
                (0..count).map(|_| random_pwl_on_line(&mut rng, 12)).collect();
            parallel_map(fs, jobs, |f| {
                check_lipschitz_bound(&f, DomainKind::RealLine)
                    .unwrap_or_else(|e| error_report("lipschitz-bound", &e))
            })
        }
        Suite::Landau => {
            let mut out = Vec::new();
            // pinned instances: the hat and the sawtooth refutation
            let hat = PiecewiseLinearFunction::new(
                Interval::real_line(),
                vec![ri(0), rq(1, 2), ri(1)],
                vec![(ri(0), ri(0)), (rq(1, 2), rq(1, 2)), (ri(0), ri(0))],
            )
            .unwrap();
            out.push(
                check_landau(&hat, LandauVariant::RealLine)
                    .unwrap_or_else(|e| error_report("landau", &e)),
            );
            out.push(
                check_landau_simplified_counterexample(&ri(10), 16)
                    .unwrap_or_else(|e| error_report("landau-simplified-counterexample", &e)),
            );
            let mut rng = SplitMix64(seed);
            let mut instances: Vec<(PiecewiseLinearFunction, LandauVariant)> = Vec::new();
            for k in 0..count {
                if k % 2 == 0 {
                    instances.push((random_pwl_bounded(&mut rng, 10), LandauVariant::Bounded));
                } else {
                    instances.push((random_pwl_on_line(&mut rng, 10), LandauVariant::RealLine));
                }
            }
            out.extend(parallel_map(instances, jobs, |(u, v)| {
                check_landau(&u, v).unwrap_or_else(|e| error_report("landau", &e))
            }));
            out
        }
        Suite::Poincare => {
            let mut rng = SplitMix64(seed);
            let fs: Vec<(StepFunction, Rat)> = (0..count)
                .map(|_| random_supported_step(&mut rng, &ri(2)))
                .collect();
            parallel_map(fs, jobs, |(f, r)| {
                check_poincare(&f, &r).unwrap_or_else(|e| error_report("poincare-local", &e))
            })
        }
        Suite::BvToW11 => {
            let mut rng = SplitMix64(seed);
            let fs: Vec<StepFunction> = (0..count)
                .map(|_| random_step_on(&mut rng, 20, DomainChoice::Bounded))
                .collect();
            parallel_map(fs, jobs, |f| {
                check_bv_to_w11(&f).unwrap_or_else(|e| error_report("bv-to-w11", &e))
            })
        }
        Suite::Cantor => {
            let top = count.clamp(1, 3) as u32;
            (1..=top)
                .map(|n| check_fat_cantor(n).unwrap_or_else(|e| error_report("fat-cantor", &e)))
                .collect()
        }
        Suite::Usc => {
            let levels = count.clamp(2, 24) as u32;
            vec![check_usc_discontinuity(levels)
                .unwrap_or_else(|e| error_report("usc-discontinuity", &e))]
        }
        Suite::NormDecrease => {
            vec![
                check_norm_decrease(100, SobolevExponent::One),
                check_norm_decrease(100, SobolevExponent::Infinity),
                check_norm_decrease(8, SobolevExponent::Two),
            ]
            .into_iter()
            .map(|r| r.unwrap_or_else(|e| error_report("norm-decrease", &e)))
            .collect()
        }
    }
}
