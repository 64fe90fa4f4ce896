//! Exact upper envelopes of linear-fractional candidates over an interval.
//!
//! Candidates are pole-free on the working interval. Two candidates cross
//! where a quadratic with rational coefficients vanishes; the quadratic term
//! cancels for pairs of same-primitive averages, and when it survives the
//! roots are kept as exact quadratic irrationals.

use super::profile::{LinFrac, ProfileBound, Segment, SegmentSource};
use crate::rational::Rat;
use crate::surd::{ExactValue, Surd};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// Coefficients of (a1+b1x)(c2+d2x) - (a2+b2x)(c1+d1x) as A x^2 + B x + C.
fn difference_poly(f: &LinFrac, g: &LinFrac) -> (Rat, Rat, Rat) {
    let a = &f.b * &g.d - &g.b * &f.d;
    let b = &f.a * &g.d + &f.b * &g.c - &g.a * &f.d - &g.b * &f.c;
    let c = &f.a * &g.c - &g.a * &f.c;
    (a, b, c)
}

pub(crate) fn same_function(f: &LinFrac, g: &LinFrac) -> bool {
    let (a, b, c) = difference_poly(f, g);
    a.is_zero() && b.is_zero() && c.is_zero()
}

/// Sign-change points of `f - g` strictly inside (lo, hi), ascending.
pub(crate) fn crossings(
    f: &LinFrac,
    g: &LinFrac,
    lo: &ProfileBound,
    hi: &ProfileBound,
) -> Vec<ExactValue> {
    let (a, b, c) = difference_poly(f, g);
    let mut roots: Vec<ExactValue> = Vec::new();
    if a.is_zero() {
        if !b.is_zero() {
            roots.push(ExactValue::Rat(-c / b));
        }
        // b = 0: identical (c = 0) or never equal
    } else {
        let disc = &b * &b - crate::rational::ri(4) * &a * &c;
        if disc.is_positive() {
            let two_a = crate::rational::ri(2) * &a;
            let p = -&b / &two_a;
            let q = crate::rational::ri(1) / two_a;
            // roots p ± q sqrt(disc)
            roots.push(Surd::make(p.clone(), q.clone(), disc.clone()));
            roots.push(Surd::make(p, -q, disc));
            roots.sort();
        }
        // disc <= 0: tangency or no contact; the sign never flips
    }
    roots.retain(|r| {
        lo.cmp_bound(&ProfileBound::Val(r.clone())) == Ordering::Less
            && hi.cmp_bound(&ProfileBound::Val(r.clone())) == Ordering::Greater
    });
    roots
}

/// A rational strictly between two bounds (refining surd brackets as needed).
pub(crate) fn rational_between(lo: &ProfileBound, hi: &ProfileBound) -> Rat {
    debug_assert!(lo.cmp_bound(hi) == Ordering::Less);
    let lo_probe = |bits: u32| -> Option<Rat> {
        match lo {
            ProfileBound::NegInf => None,
            ProfileBound::PosInf => unreachable!(),
            ProfileBound::Val(ExactValue::Rat(r)) => Some(r.clone()),
            ProfileBound::Val(ExactValue::Surd(s)) => Some(s.bracket(bits).1),
        }
    };
    let hi_probe = |bits: u32| -> Option<Rat> {
        match hi {
            ProfileBound::PosInf => None,
            ProfileBound::NegInf => unreachable!(),
            ProfileBound::Val(ExactValue::Rat(r)) => Some(r.clone()),
            ProfileBound::Val(ExactValue::Surd(s)) => Some(s.bracket(bits).0),
        }
    };
    let mut bits = 32;
    loop {
        match (lo_probe(bits), hi_probe(bits)) {
            (None, None) => return Rat::zero(),
            (None, Some(h)) => return h - crate::rational::ri(1),
            (Some(l), None) => return l + crate::rational::ri(1),
            (Some(l), Some(h)) => {
                if l < h {
                    return (l + h) / crate::rational::ri(2);
                }
                // surd brackets still overlap; refine
                bits *= 2;
                assert!(bits <= 4096, "failed to separate bounds");
            }
        }
    }
}

/// One candidate for an upper envelope.
#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub fun: LinFrac,
    pub source: SegmentSource,
}

/// Upper envelope of the candidates over (lo, hi), as profile segments.
/// Winners are decided by exact evaluation at rational probes between
/// consecutive crossing points.
pub(crate) fn upper_envelope(
    cands: &[Candidate],
    lo: &ProfileBound,
    hi: &ProfileBound,
) -> Vec<Segment> {
    assert!(!cands.is_empty());
    // cells of (lo, hi, winner index)
    let mut cells: Vec<(ProfileBound, ProfileBound, usize)> = vec![(lo.clone(), hi.clone(), 0)];
    for (j, cand) in cands.iter().enumerate().skip(1) {
        let mut next: Vec<(ProfileBound, ProfileBound, usize)> = Vec::with_capacity(cells.len());
        for (clo, chi, w) in cells.drain(..) {
            if same_function(&cand.fun, &cands[w].fun) {
                next.push((clo, chi, w));
                continue;
            }
            let xs = crossings(&cand.fun, &cands[w].fun, &clo, &chi);
            let mut bounds = Vec::with_capacity(xs.len() + 2);
            bounds.push(clo.clone());
            bounds.extend(xs.into_iter().map(ProfileBound::Val));
            bounds.push(chi.clone());
            for k in 0..bounds.len() - 1 {
                let (slo, shi) = (bounds[k].clone(), bounds[k + 1].clone());
                let probe = rational_between(&slo, &shi);
                let winner = if cand.fun.eval(&probe) > cands[w].fun.eval(&probe) {
                    j
                } else {
                    w
                };
                next.push((slo, shi, winner));
            }
        }
        cells = next;
    }
    // merge adjacent cells with identical winning functions
    let mut segments: Vec<Segment> = Vec::with_capacity(cells.len());
    for (clo, chi, w) in cells {
        if let Some(last) = segments.last_mut() {
            if same_function(&last.fun, &cands[w].fun) {
                last.hi = chi;
                continue;
            }
        }
        segments.push(Segment {
            lo: clo,
            hi: chi,
            fun: cands[w].fun.clone(),
            source: cands[w].source.clone(),
        });
    }
    segments
}

/// Pointwise max of two segment lists tiling the same domain.
pub(crate) fn max_of_profiles(a: &[Segment], b: &[Segment]) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::new();
    let mut ai = 0usize;
    let mut bi = 0usize;
    let mut cursor = a[0].lo.clone();
    debug_assert!(a[0].lo.cmp_bound(&b[0].lo) == Ordering::Equal);
    while ai < a.len() && bi < b.len() {
        let sa = &a[ai];
        let sb = &b[bi];
        let cell_hi = if sa.hi.cmp_bound(&sb.hi) == Ordering::Less {
            sa.hi.clone()
        } else {
            sb.hi.clone()
        };
        if cursor.cmp_bound(&cell_hi) == Ordering::Less {
            emit_max_cell(&mut out, sa, sb, &cursor, &cell_hi);
            cursor = cell_hi.clone();
        }
        if sa.hi.cmp_bound(&cell_hi) == Ordering::Equal {
            ai += 1;
        }
        if sb.hi.cmp_bound(&cell_hi) == Ordering::Equal {
            bi += 1;
        }
    }
    out
}

fn emit_max_cell(
    out: &mut Vec<Segment>,
    sa: &Segment,
    sb: &Segment,
    lo: &ProfileBound,
    hi: &ProfileBound,
) {
    let push = |out: &mut Vec<Segment>, lo: ProfileBound, hi: ProfileBound, from: &Segment| {
        if let Some(last) = out.last_mut() {
            if same_function(&last.fun, &from.fun) {
                last.hi = hi;
                return;
            }
        }
        out.push(Segment {
            lo,
            hi,
            fun: from.fun.clone(),
            source: from.source.clone(),
        });
    };
    if same_function(&sa.fun, &sb.fun) {
        push(out, lo.clone(), hi.clone(), sa);
        return;
    }
    let xs = crossings(&sa.fun, &sb.fun, lo, hi);
    let mut bounds = Vec::with_capacity(xs.len() + 2);
    bounds.push(lo.clone());
    bounds.extend(xs.into_iter().map(ProfileBound::Val));
    bounds.push(hi.clone());
    for k in 0..bounds.len() - 1 {
        let (slo, shi) = (bounds[k].clone(), bounds[k + 1].clone());
        let probe = rational_between(&slo, &shi);
        let from = if sa.fun.eval(&probe) >= sb.fun.eval(&probe) {
            sa
        } else {
            sb
        };
        push(out, slo, shi, from);
    }
}
