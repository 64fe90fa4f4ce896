//! Exact constructors for the example functions exercised by the checks:
//! indicators, fat Cantor iterates, the semicontinuous-but-discontinuous
//! indicator, the notched plateau, the sawtooth, the square-root cusp, and
//! piecewise-linear Cantor-function iterates.

use crate::discrete::{sample_step_window, SampledSignal};
use crate::error::FuncError;
use crate::interval::Interval;
use crate::pwl::PiecewiseLinearFunction;
use crate::rational::{ri, rq, Rat};
use crate::step::StepFunction;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Indicator of [a, b] on the given domain, with canonical point values.
pub fn char_interval(a: Rat, b: Rat, domain: Interval) -> Result<StepFunction, FuncError> {
    if a >= b {
        return Err(FuncError::DegenerateInterval);
    }
    if !domain.contains(&a) || !domain.contains(&b) {
        return Err(FuncError::BadBreakpoints);
    }
    let mut breakpoints = Vec::new();
    let mut pieces = Vec::new();
    let left_is_edge = domain.left().cmp_rat(&a) == std::cmp::Ordering::Equal;
    let right_is_edge = domain.right().cmp_rat(&b) == std::cmp::Ordering::Equal;
    if !left_is_edge {
        breakpoints.push(a);
        pieces.push(Rat::zero());
    }
    pieces.push(Rat::one());
    if !right_is_edge {
        breakpoints.push(b);
        pieces.push(Rat::zero());
    }
    StepFunction::new(domain, breakpoints, pieces, None).map(|f| f.canonical_representative())
}

/// One stage of the fat Cantor construction: remove, from each component of
/// the previous set, the centered open intervals at 2^{2n}+1 equally spaced
/// points, each of length 2^{-4n} times the component length (the two edge
/// removals only take half from inside).
#[derive(Clone, Debug)]
pub struct FatCantorStage {
    /// closed components of F_n, in order
    pub components: Vec<(Rat, Rat)>,
    /// midpoints of the intervals deleted at this stage
    pub deleted_midpoints: Vec<Rat>,
    /// total measure of F_n
    pub measure: Rat,
}

/// Builds the components of F_1, ..., F_n (n <= 3 keeps the piece count at
/// desk scale: |components(F_n)| = 2^{n(n+1)}).
pub fn fat_cantor_stages(n: u32) -> Result<Vec<FatCantorStage>, FuncError> {
    if !(1..=3).contains(&n) {
        return Err(FuncError::BadBreakpoints);
    }
    let mut comps: Vec<(Rat, Rat)> = vec![(ri(0), ri(1))];
    let mut stages = Vec::new();
    for stage in 1..=n {
        let pieces_per = BigInt::one() << (2 * stage); // 2^{2n} gaps per component
        let pieces_per_rat = Rat::from(pieces_per.clone());
        let removal = Rat::new(BigInt::one(), BigInt::one() << (4 * stage)); // 2^{-4n}
        let mut next: Vec<(Rat, Rat)> = Vec::new();
        let mut midpoints = Vec::new();
        for (lo, hi) in &comps {
            let len = hi - lo;
            let spacing = &len / &pieces_per_rat;
            let half_gap = &len * &removal / ri(2);
            let count = 1u64 << (2 * stage);
            for k in 0..=count {
                let center = lo + &spacing * Rat::from(BigInt::from(k));
                midpoints.push(center.clone());
                // kept piece between this deleted interval and the next
                if k < count {
                    let start = &center + &half_gap;
                    let end = lo + &spacing * Rat::from(BigInt::from(k + 1)) - &half_gap;
                    next.push((start, end));
                }
            }
        }
        let measure = next.iter().fold(Rat::zero(), |acc, (a, b)| acc + (b - a));
        comps = next.clone();
        stages.push(FatCantorStage {
            components: next,
            deleted_midpoints: midpoints,
            measure,
        });
    }
    Ok(stages)
}

/// Indicator step function of F_n on [0, 1].
pub fn fat_cantor(n: u32) -> Result<StepFunction, FuncError> {
    let stages = fat_cantor_stages(n)?;
    let comps = &stages.last().unwrap().components;
    let mut breakpoints = Vec::with_capacity(2 * comps.len());
    let mut pieces = Vec::with_capacity(2 * comps.len() + 1);
    pieces.push(Rat::zero());
    for (a, b) in comps {
        breakpoints.push(a.clone());
        pieces.push(Rat::one());
        breakpoints.push(b.clone());
        pieces.push(Rat::zero());
    }
    // components touch the domain edges at 0 and 1? They do not: the first
    // and last removed intervals are centered at 0 and 1.
    let f = StepFunction::new(
        Interval::bounded(ri(0), ri(1)).unwrap(),
        breakpoints,
        pieces,
        None,
    )?;
    Ok(f.canonical_representative())
}

/// Indicator of {0} together with the union of [3/2^{k+2}, 1/2^k] for
/// k = 0..=levels, carried on the real line with an isolated point value 1
/// at the origin.
pub fn usc_discontinuity_example(levels: u32) -> Result<StepFunction, FuncError> {
    if levels < 2 {
        return Err(FuncError::BadBreakpoints);
    }
    let mut breakpoints = vec![ri(0)];
    let mut pieces = vec![Rat::zero()];
    let mut point_values = vec![Some(ri(1))];
    // after the isolated origin: a gap up to the smallest mass interval
    pieces.push(Rat::zero());
    for k in (0..=levels).rev() {
        let lo = Rat::new(BigInt::from(3), BigInt::one() << (k + 2));
        let hi = Rat::new(BigInt::one(), BigInt::one() << k);
        breakpoints.push(lo);
        point_values.push(Some(ri(1)));
        pieces.push(Rat::one());
        breakpoints.push(hi);
        point_values.push(Some(ri(1)));
        pieces.push(Rat::zero());
    }
    StepFunction::new(
        Interval::real_line(),
        breakpoints,
        pieces,
        Some(point_values),
    )
}

/// Continuous plateau with a V-notch: 1 on (0, 1/2 - 1/N) and
/// (1/2 + 1/N, 1), 0 at 1/2, linear between, on the domain (0, 1).
pub fn plateau_example(n: u32) -> Result<PiecewiseLinearFunction, FuncError> {
    if n < 4 {
        return Err(FuncError::BadKnots);
    }
    let nq = Rat::from(BigInt::from(n));
    let half = rq(1, 2);
    let notch = ri(1) / &nq;
    PiecewiseLinearFunction::from_points(
        Interval::bounded(ri(0), ri(1)).unwrap(),
        vec![
            (ri(0), ri(1)),
            (&half - &notch, ri(1)),
            (half.clone(), ri(0)),
            (&half + &notch, ri(1)),
            (ri(1), ri(1)),
        ],
    )
}

/// Sawtooth pair: u' alternates +1 / -1 on 2N half-intervals of (0, 1],
/// u integrates it. ||u||_inf = 1/(2N) and |u'| is the unit indicator.
pub fn sawtooth_example(n: u32) -> Result<(PiecewiseLinearFunction, StepFunction), FuncError> {
    if n < 1 {
        return Err(FuncError::BadKnots);
    }
    let nq = Rat::from(BigInt::from(n));
    let mut u_points: Vec<(Rat, Rat)> = vec![(ri(0), ri(0))];
    let mut du_breaks: Vec<Rat> = vec![ri(0)];
    let mut du_pieces: Vec<Rat> = vec![ri(0)];
    let half_step = ri(1) / (ri(2) * &nq);
    for k in 0..n {
        let kq = Rat::from(BigInt::from(k));
        let peak_x = (&kq + rq(1, 2)) / &nq;
        let end_x = (&kq + ri(1)) / &nq;
        u_points.push((peak_x.clone(), half_step.clone()));
        u_points.push((end_x.clone(), ri(0)));
        du_pieces.push(ri(1));
        du_breaks.push(peak_x);
        du_pieces.push(ri(-1));
        du_breaks.push(end_x);
    }
    du_pieces.push(ri(0));
    let u = PiecewiseLinearFunction::from_points(Interval::real_line(), u_points)?;
    let du = StepFunction::new(Interval::real_line(), du_breaks, du_pieces, None)?;
    Ok((u, du))
}

/// Samples of (1 - sqrt(x)) restricted to [0, 1], midpoint-sampled.
pub fn sqrt_cusp_example(n: usize) -> Result<SampledSignal, crate::error::DiscreteError> {
    if n < 16 {
        return Err(crate::error::DiscreteError::TooFewSamples(16));
    }
    let spacing = 1.0 / n as f64;
    let samples = (0..n)
        .map(|i| {
            let x = (i as f64 + 0.5) * spacing;
            1.0 - x.sqrt()
        })
        .collect();
    Ok(SampledSignal {
        samples,
        spacing,
        origin: 0.5 * spacing,
    })
}

/// Level-m piecewise-linear iterate of the Cantor function on [0, 1]
/// (exact rational knots; C_0 is the identity).
fn cantor_iterate(m: u32) -> Vec<(Rat, Rat)> {
    let mut pts: Vec<(Rat, Rat)> = vec![(ri(0), ri(0)), (ri(1), ri(1))];
    for _ in 0..m {
        let mut next: Vec<(Rat, Rat)> = Vec::with_capacity(pts.len() * 2);
        for w in pts.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            if y0 == y1 {
                // flat pieces stay flat
                if next.last().map(|p: &(Rat, Rat)| &p.0) != Some(x0) {
                    next.push((x0.clone(), y0.clone()));
                }
                next.push((x1.clone(), y1.clone()));
                continue;
            }
            let third = (x1 - x0) / ri(3);
            let mid = (y0 + y1) / ri(2);
            if next.last().map(|p: &(Rat, Rat)| &p.0) != Some(x0) {
                next.push((x0.clone(), y0.clone()));
            }
            next.push((x0 + &third, mid.clone()));
            next.push((x1 - &third, mid));
            next.push((x1.clone(), y1.clone()));
        }
        pts = next;
    }
    pts
}

/// The difference g(x) = f(x) - f(x - 3), where f is the level-m Cantor
/// iterate raised on [0,1], plateaued on [1,2], mirrored back down on
/// [2,3], and zero elsewhere. g ranges in [-1, 1] and has compact support.
pub fn cantor_function_pair(m: u32) -> Result<PiecewiseLinearFunction, FuncError> {
    if !(1..=8).contains(&m) {
        return Err(FuncError::BadKnots);
    }
    let base = cantor_iterate(m);
    let mut points: Vec<(Rat, Rat)> = Vec::new();
    // rising Cantor iterate on [0, 1]
    points.extend(base.iter().cloned());
    // plateau to x = 2
    points.push((ri(2), ri(1)));
    // mirrored descent on [2, 3]
    for (x, y) in base.iter().rev() {
        let rx = ri(3) - x;
        if points.last().map(|p| &p.0) == Some(&rx) {
            continue;
        }
        points.push((rx, y.clone()));
    }
    let f = PiecewiseLinearFunction::from_points(Interval::real_line(), points)?;
    let g = f.sub(&f.translate(&ri(3)))?;
    Ok(g)
}

/// Entry of the gallery manifest: generator, parameters, and the exact
/// values the associated checks pin down.
#[derive(Clone, Debug, serde::Serialize)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub expected: Vec<(&'static str, String)>,
}

pub fn manifest() -> Vec<GalleryEntry> {
    vec![
        GalleryEntry {
            name: "char-interval",
            params: vec![("a", "0".into()), ("b", "1".into()), ("domain", "(-inf, inf)".into())],
            expected: vec![
                ("variation", "2".into()),
                ("maximal profile", "1/(1-x), 1, 1/x".into()),
            ],
        },
        GalleryEntry {
            name: "fat-cantor",
            params: vec![("n", "1..3".into())],
            expected: vec![
                ("measure F1", "3/4".into()),
                ("measure F2", "45/64".into()),
                ("components F_n", "2^(n(n+1))".into()),
            ],
        },
        GalleryEntry {
            name: "usc",
            params: vec![("levels", ">= 2".into())],
            expected: vec![
                ("M at 0", "<= 1/2 + 2^-levels".into()),
                ("M on mass intervals", "1".into()),
            ],
        },
        GalleryEntry {
            name: "plateau",
            params: vec![("n", ">= 4".into())],
            expected: vec![
                ("value at 1/2", "0".into()),
                ("sup norm", "1".into()),
                ("lipschitz", "n".into()),
            ],
        },
        GalleryEntry {
            name: "sawtooth",
            params: vec![("n", ">= 1".into())],
            expected: vec![
                ("sup norm of u", "1/(2n)".into()),
                ("sup norm of u'", "1".into()),
            ],
        },
        GalleryEntry {
            name: "sqrt-cusp",
            params: vec![("samples", ">= 16".into())],
            expected: vec![("difference quotients at 0", "grow under refinement".into())],
        },
        GalleryEntry {
            name: "cantor-pair",
            params: vec![("level", "1..8".into())],
            expected: vec![
                ("range", "[-1, 1]".into()),
                ("variation per side", "2".into()),
            ],
        },
    ]
}

/// Midpoint samples of the indicator of F_n (used by convergence studies).
pub fn sample_fat_cantor(n: u32, samples: usize) -> Result<SampledSignal, FuncError> {
    let f = fat_cantor(n)?;
    sample_step_window(&f, &ri(0), &ri(1), samples).map_err(|_| FuncError::BadBreakpoints)
}
