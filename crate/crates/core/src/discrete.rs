//! Discrete maximal-average kernels on uniformly sampled signals.
//!
//! `out[i]` is the maximum mean of |s| over contiguous index windows
//! containing i, i.e. the maximum slope of a prefix-sum chord spanning the
//! gap between indices i and i+1. Windows ending at i are steepest-chord
//! queries against the growing lower hull of the prefix graph; windows
//! starting at i are the mirror queries against a suffix upper hull grown
//! right-to-left. A window that strictly straddles i is dominated by a
//! one-sided window at a neighboring index, which gates a bridge query: the
//! exact maximum chord slope between the lower hull of the left prefix
//! points and the upper hull of the right ones, found by ratio iteration
//! over hull support points plus an exact coordinate polish.
//!
//! Every emitted value is a slope `(p[j] - p[l]) / (j - l)` of one shared
//! prefix array `p` (accumulated with Neumaier compensation), and the
//! brute-force oracle enumerates exactly those slopes, so kernel and oracle
//! share rounding behavior.

use crate::error::DiscreteError;
use crate::maximal::MaximalProfile;
use crate::rational::{rat_to_f64, Endpoint, Rat};
use crate::step::StepFunction;

/// Uniformly spaced samples: value `samples[i]` sits at `origin + i*spacing`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledSignal {
    pub samples: Vec<f64>,
    pub spacing: f64,
    pub origin: f64,
}

impl SampledSignal {
    pub fn new(samples: Vec<f64>, spacing: f64, origin: f64) -> Result<Self, DiscreteError> {
        if samples.is_empty() {
            return Err(DiscreteError::Empty);
        }
        if !(spacing > 0.0) || samples.iter().any(|v| !v.is_finite()) {
            return Err(DiscreteError::Empty);
        }
        Ok(SampledSignal {
            samples,
            spacing,
            origin,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn x_at(&self, i: usize) -> f64 {
        self.origin + self.spacing * i as f64
    }
}

/// Hull push/pop counters. The two one-sided passes stay within 2n
/// operations each; the straddling-window bridge structures are counted
/// separately.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KernelStats {
    pub hull_pushes: u64,
    pub hull_pops: u64,
    pub bridge_pushes: u64,
    pub bridge_pops: u64,
    /// indices whose optimum may require a strictly straddling window
    pub bridged: u64,
}

impl KernelStats {
    pub fn pass_total(&self) -> u64 {
        self.hull_pushes + self.hull_pops
    }

    pub fn bridge_total(&self) -> u64 {
        self.bridge_pushes + self.bridge_pops
    }
}

/// Neumaier-compensated prefix sums of |s|: p[0] = 0.
fn abs_prefix(samples: &[f64]) -> Vec<f64> {
    let mut p = Vec::with_capacity(samples.len() + 1);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    p.push(0.0);
    for &v in samples {
        let x = v.abs();
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
        p.push(sum + comp);
    }
    p
}

#[inline]
fn mean(p: &[f64], l: usize, r_excl: usize) -> f64 {
    (p[r_excl] - p[l]) / (r_excl - l) as f64
}

/// Peak of a unimodal sequence by bisection on adjacent comparisons.
#[inline]
fn unimodal_peak(n: usize, f: impl Fn(usize) -> f64) -> usize {
    let (mut lo, mut hi) = (0usize, n - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if f(mid + 1) >= f(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Peak of a unimodal sequence, galloped from a warm-start position.
#[inline]
fn unimodal_peak_from(n: usize, start: usize, f: impl Fn(usize) -> f64) -> usize {
    if n == 1 {
        return 0;
    }
    let upward = |j: usize| -> bool { f(j + 1) >= f(j) };
    let j = start.min(n - 1);
    if j + 1 < n && upward(j) {
        let mut step = 1usize;
        let mut hi = j;
        while hi + 1 < n && upward(hi) {
            let next = (hi + step).min(n - 1);
            step <<= 1;
            if next == hi {
                break;
            }
            hi = next;
        }
        let (mut lo, mut hb) = (j, hi);
        while lo < hb {
            let mid = (lo + hb) / 2;
            if mid + 1 < n && upward(mid) {
                lo = mid + 1;
            } else {
                hb = mid;
            }
        }
        lo
    } else if j > 0 && !upward(j - 1) {
        let mut step = 1usize;
        let mut lo = j;
        while lo > 0 && !upward(lo - 1) {
            let next = lo.saturating_sub(step);
            step <<= 1;
            if next == lo {
                break;
            }
            lo = next;
        }
        let (mut la, mut hb) = (lo, j);
        while la < hb {
            let mid = (la + hb) / 2;
            if mid + 1 < n && upward(mid) {
                la = mid + 1;
            } else {
                hb = mid;
            }
        }
        la
    } else {
        j
    }
}

/// Peak of dy/dx over a unimodal sequence with positive dx, galloped from a
/// warm-start position. Comparisons cross-multiply so the search costs no
/// divisions.
#[inline]
fn slope_peak_from(n: usize, start: usize, f: impl Fn(usize) -> (f64, f64)) -> usize {
    if n == 1 {
        return 0;
    }
    let upward = |j: usize| -> bool {
        let (dy1, dx1) = f(j + 1);
        let (dy0, dx0) = f(j);
        dy1 * dx0 >= dy0 * dx1
    };
    let j = start.min(n - 1);
    if j + 1 < n && upward(j) {
        let mut step = 1usize;
        let mut hi = j;
        while hi + 1 < n && upward(hi) {
            let next = (hi + step).min(n - 1);
            step <<= 1;
            if next == hi {
                break;
            }
            hi = next;
        }
        let (mut lo, mut hb) = (j, hi);
        while lo < hb {
            let mid = (lo + hb) / 2;
            if mid + 1 < n && upward(mid) {
                lo = mid + 1;
            } else {
                hb = mid;
            }
        }
        lo
    } else if j > 0 && !upward(j - 1) {
        let mut step = 1usize;
        let mut lo = j;
        while lo > 0 && !upward(lo - 1) {
            let next = lo.saturating_sub(step);
            step <<= 1;
            if next == lo {
                break;
            }
            lo = next;
        }
        let (mut la, mut hb) = (lo, j);
        while la < hb {
            let mid = (la + hb) / 2;
            if mid + 1 < n && upward(mid) {
                la = mid + 1;
            } else {
                hb = mid;
            }
        }
        la
    } else {
        j
    }
}

/// Growing lower hull of prefix points (pushed left to right). Vertex
/// ordinates are kept contiguous so queries stay cache-resident. Pops are
/// journaled, so the build can be unwound push by push afterwards.
struct LowerHull {
    verts: Vec<u32>,
    ys: Vec<f64>,
    journal: Vec<u32>,
    spill: Vec<(u32, f64)>,
    last: usize,
    pushes: u64,
    pops: u64,
}

impl LowerHull {
    fn new() -> Self {
        LowerHull {
            verts: Vec::new(),
            ys: Vec::new(),
            journal: Vec::new(),
            spill: Vec::new(),
            last: 0,
            pushes: 0,
            pops: 0,
        }
    }

    #[inline]
    fn push(&mut self, idx: u32, p: &[f64]) {
        let x3 = idx as f64;
        let y3 = p[idx as usize];
        let mut popped = 0u32;
        while self.verts.len() >= 2 {
            let m = self.verts.len();
            let (b, yb) = (self.verts[m - 1] as f64, self.ys[m - 1]);
            let (a, ya) = (self.verts[m - 2] as f64, self.ys[m - 2]);
            // keep b only if slope(a,b) < slope(b,new)
            if (yb - ya) * (x3 - b) < (y3 - yb) * (b - a) {
                break;
            }
            let v = self.verts.pop().unwrap();
            let y = self.ys.pop().unwrap();
            self.spill.push((v, y));
            popped += 1;
            self.pops += 1;
        }
        self.verts.push(idx);
        self.ys.push(y3);
        self.pushes += 1;
        self.journal.push(popped);
        if self.last >= self.verts.len() {
            self.last = self.verts.len() - 1;
        }
    }

    /// Undo the most recent push, restoring any vertices it removed.
    /// Returns the number of hull operations performed.
    #[inline]
    fn unwind_push(&mut self) -> u64 {
        let popped = self.journal.pop().expect("unwind past the journal");
        self.verts.pop();
        self.ys.pop();
        let mut ops = 1u64;
        for _ in 0..popped {
            let (v, y) = self.spill.pop().unwrap();
            self.verts.push(v);
            self.ys.push(y);
            ops += 1;
        }
        if self.last >= self.verts.len() && !self.verts.is_empty() {
            self.last = self.verts.len() - 1;
        }
        ops
    }

    /// Max slope from a hull vertex to (qx, qy), qx right of the hull.
    #[inline]
    fn query_max(&mut self, qx: f64, qy: f64) -> f64 {
        let n = self.verts.len();
        let verts = &self.verts;
        let ys = &self.ys;
        let j = slope_peak_from(n, self.last, |j| {
            (qy - ys[j], qx - verts[j] as f64)
        });
        self.last = j;
        (qy - ys[j]) / (qx - verts[j] as f64)
    }
}

/// Growing upper hull of prefix points, inserted right to left (leftmost
/// point stored last).
struct UpperGrowHull {
    verts: Vec<u32>,
    ys: Vec<f64>,
    /// warm-start pointer in physical coordinates (stable under insertion)
    last_phys: usize,
    /// smallest index inserted so far (the next insert must be below it)
    next_left: u32,
    pushes: u64,
    pops: u64,
}

impl UpperGrowHull {
    fn new() -> Self {
        UpperGrowHull {
            verts: Vec::new(),
            ys: Vec::new(),
            last_phys: 0,
            next_left: u32::MAX,
            pushes: 0,
            pops: 0,
        }
    }

    #[inline]
    fn insert_left(&mut self, idx: u32, p: &[f64]) {
        self.next_left = idx;
        let y3 = p[idx as usize];
        let x3 = idx as f64;
        while self.verts.len() >= 2 {
            let m = self.verts.len();
            let (b, yb) = (self.verts[m - 1] as f64, self.ys[m - 1]);
            let (a, ya) = (self.verts[m - 2] as f64, self.ys[m - 2]);
            // x order: idx < b < a; pop b when on or below chord(idx, a)
            if (yb - y3) * (a - b) > (ya - yb) * (b - x3) {
                break;
            }
            self.verts.pop();
            self.ys.pop();
            self.pops += 1;
        }
        self.verts.push(idx);
        self.ys.push(y3);
        self.pushes += 1;
        if self.last_phys >= self.verts.len() {
            self.last_phys = self.verts.len() - 1;
        }
    }

    /// Max slope from (qx, qy), qx left of the hull, to a hull vertex.
    /// Physical order is right-to-left; slopes are unimodal either way.
    #[inline]
    fn query_max(&mut self, qx: f64, qy: f64) -> f64 {
        let n = self.verts.len();
        let verts = &self.verts;
        let ys = &self.ys;
        let k = slope_peak_from(n, self.last_phys, |k| {
            (ys[k] - qy, verts[k] as f64 - qx)
        });
        self.last_phys = k;
        (ys[k] - qy) / (verts[k] as f64 - qx)
    }
}

/// Lower hull built by left insertions with an undo journal (front stack of
/// the windowed hull queue).
struct LowerFrontHull {
    verts: Vec<u32>,
    journal: Vec<(u32, Vec<u32>)>,
    pushes: u64,
    pops: u64,
}

impl LowerFrontHull {
    fn new() -> Self {
        LowerFrontHull {
            verts: Vec::new(),
            journal: Vec::new(),
            pushes: 0,
            pops: 0,
        }
    }

    fn clear(&mut self) {
        self.verts.clear();
        self.journal.clear();
    }

    fn insert_left(&mut self, idx: u32, p: &[f64]) {
        let mut popped = Vec::new();
        while self.verts.len() >= 2 {
            let b = *self.verts.last().unwrap() as usize;
            let a = self.verts[self.verts.len() - 2] as usize;
            // lower hull, x order idx < b < a: pop b when on/above chord(idx, a)
            let lhs = (p[b] - p[idx as usize]) * (a as f64 - b as f64);
            let rhs = (p[a] - p[b]) * (b as f64 - idx as f64);
            if lhs < rhs {
                break;
            }
            popped.push(self.verts.pop().unwrap());
            self.pops += 1;
        }
        self.verts.push(idx);
        self.pushes += 1;
        self.journal.push((idx, popped));
    }

    fn remove_left(&mut self) {
        let (idx, popped) = self.journal.pop().expect("remove on empty front hull");
        let top = self.verts.pop().expect("front hull out of sync");
        debug_assert_eq!(top, idx);
        self.pops += 1;
        for v in popped.into_iter().rev() {
            self.verts.push(v);
            self.pushes += 1;
        }
    }

    /// Max slope to (qx, qy) right of the hull, unimodal over logical order.
    fn query_max(&self, qx: f64, qy: f64, p: &[f64]) -> Option<f64> {
        if self.verts.is_empty() {
            return None;
        }
        let k = self.verts.len();
        let at = |j: usize| -> usize { self.verts[k - 1 - j] as usize };
        let f = |j: usize| -> f64 {
            let v = at(j);
            (qy - p[v]) / (qx - v as f64)
        };
        Some(f(unimodal_peak(k, f)))
    }
}

/// Warm-start state for bridge queries: hull positions in backing-vector
/// coordinates (stable where each hull churns only at its own end) and the
/// last optimal chord with its endpoint coordinates cached.
#[derive(Clone, Copy, Debug, Default)]
struct BridgeWarm {
    a_pos: usize,
    b_pos: usize,
    /// (a, ya, b, yb) of the last optimal chord
    pair: Option<(u32, f64, u32, f64)>,
}

/// Max chord slope from {0..i} to {i+1..n}: ratio iteration over hull
/// support points (found by warm-started unimodal searches), then a short
/// exact coordinate polish to absorb rounding-level misplacement. `start`
/// must be an achievable chord slope.
fn bridge_query(
    lv: &[u32],
    lys: &[f64],
    rv: &[u32],
    rys: &[f64],
    start: f64,
    warm: &mut BridgeWarm,
) -> f64 {
    let chord = |aj: usize, bj: usize| -> f64 {
        (rys[bj] - lys[aj]) / (rv[bj] as f64 - lv[aj] as f64)
    };
    let mut lambda = start;
    let mut aj = warm.a_pos.min(lv.len() - 1);
    let mut bj = warm.b_pos.min(rv.len() - 1);
    let mut advanced = false;
    for _ in 0..32 {
        // support of the lower hull: minimize y - lambda x (valley shape)
        aj = unimodal_peak_from(lv.len(), aj, |j| lambda * lv[j] as f64 - lys[j]);
        // support of the upper hull: maximize y - lambda x (peak shape,
        // unimodal in vector order as well)
        bj = unimodal_peak_from(rv.len(), bj, |j| rys[j] - lambda * rv[j] as f64);
        let next = chord(aj, bj);
        if !(next > lambda) {
            break;
        }
        lambda = next;
        advanced = true;
    }
    warm.a_pos = aj;
    warm.b_pos = bj;
    if !advanced {
        // no chord beats the start value; nothing to polish
        return lambda;
    }
    let mut best = chord(aj, bj).max(lambda);
    for _ in 0..2 {
        let mut improved = false;
        let bq = bj;
        aj = slope_peak_from(lv.len(), aj, |j| {
            (rys[bq] - lys[j], rv[bq] as f64 - lv[j] as f64)
        });
        if chord(aj, bj) > best {
            best = chord(aj, bj);
            improved = true;
        }
        let aq = aj;
        bj = slope_peak_from(rv.len(), bj, |j| {
            (rys[j] - lys[aq], rv[j] as f64 - lv[aq] as f64)
        });
        if chord(aj, bj) > best {
            best = chord(aj, bj);
            improved = true;
        }
        if !improved {
            break;
        }
    }
    warm.a_pos = aj;
    warm.b_pos = bj;
    warm.pair = Some((lv[aj], lys[aj], rv[bj], rys[bj]));
    best
}

/// Discrete noncentered maximal operator with hull statistics.
pub fn discrete_maximal_with_stats(
    s: &SampledSignal,
) -> Result<(SampledSignal, KernelStats), DiscreteError> {
    if s.samples.is_empty() {
        return Err(DiscreteError::Empty);
    }
    let n = s.len();
    let p = abs_prefix(&s.samples);
    let mut stats = KernelStats::default();

    // Ascending pass: windows ending at i, with the hull build journaled so
    // the straddling-window bridge can unwind it later.
    let mut left = LowerHull::new();
    let mut lend: Vec<f64> = Vec::with_capacity(n);
    for i in 0..n {
        left.push(i as u32, &p);
        lend.push(left.query_max((i + 1) as f64, p[i + 1]));
    }
    stats.hull_pushes += left.pushes;
    stats.hull_pops += left.pops;

    // Descending pass: windows starting at i against the grow-only suffix
    // upper hull, fused with the bridge. A strictly straddling window is
    // dominated by max(lend[i], rstart[i+1]) and by max(lend[i-1],
    // rstart[i]), so a bridge query (the maximal chord between the unwound
    // left hull {0..i} and the suffix hull {i+1..n}) only runs when both
    // neighbors strictly beat the one-sided value.
    let mut right = UpperGrowHull::new();
    let mut warm = BridgeWarm::default();
    let mut out: Vec<f64> = vec![0.0; n];
    let mut rstart_next = f64::NEG_INFINITY; // rstart[i + 1]
    let mut left_top = n; // the left hull currently holds {0..left_top-1}
    for i in (0..n).rev() {
        right.insert_left((i + 1) as u32, &p);
        let rstart_i = right.query_max(i as f64, p[i]);
        let mut out_i = lend[i].max(rstart_i);
        if i > 0 && i + 1 < n && rstart_next > out_i && lend[i - 1] > out_i {
            stats.bridged += 1;
            // sandwiched between any valid chord and min(lend[i-1],
            // rstart[i+1]): the cached chord may already decide the query
            let ub = rstart_next.min(lend[i - 1]);
            let cached = match warm.pair {
                Some((a, ya, b, yb)) if a as usize <= i && (b as usize) > i => {
                    Some((yb - ya) / (b as f64 - a as f64))
                }
                _ => None,
            };
            let v = match cached {
                Some(c) if c >= ub => c,
                _ => {
                    while left_top > i + 1 {
                        stats.bridge_pushes += left.unwind_push();
                        left_top -= 1;
                    }
                    let start = out_i.max(cached.unwrap_or(f64::NEG_INFINITY));
                    bridge_query(&left.verts, &left.ys, &right.verts, &right.ys, start, &mut warm)
                }
            };
            if v > out_i {
                out_i = v;
            }
        }
        out[i] = out_i;
        rstart_next = rstart_i;
    }
    stats.hull_pushes += right.pushes;
    stats.hull_pops += right.pops;

    Ok((
        SampledSignal {
            samples: out,
            spacing: s.spacing,
            origin: s.origin,
        },
        stats,
    ))
}

/// out[i] = max over contiguous windows containing i of the mean of |s|.
pub fn discrete_maximal(s: &SampledSignal) -> Result<SampledSignal, DiscreteError> {
    discrete_maximal_with_stats(s).map(|(o, _)| o)
}

/// Windowed one-sided pass over candidates l in [i-w+1, i] via a hull queue
/// (front stack with undo journal + back stack).
fn windowed_lend_pass(p: &[f64], n: usize, w: usize) -> (Vec<f64>, u64, u64) {
    let mut front = LowerFrontHull::new();
    let mut back = LowerHull::new();
    let mut back_points: Vec<u32> = Vec::new();
    let mut front_len = 0usize;
    let mut out = Vec::with_capacity(n);
    let mut pushes = 0u64;
    let mut pops = 0u64;
    for i in 0..n {
        back.push(i as u32, p);
        back_points.push(i as u32);
        let live = front_len + back_points.len();
        if live > w {
            if front_len == 0 {
                front.clear();
                for &idx in back_points.iter().rev() {
                    front.insert_left(idx, p);
                }
                front_len = back_points.len();
                back_points.clear();
                pushes += back.pushes;
                pops += back.pops;
                back = LowerHull::new();
            }
            front.remove_left();
            front_len -= 1;
        }
        let qx = (i + 1) as f64;
        let qy = p[i + 1];
        let mut best = f64::NEG_INFINITY;
        if front_len > 0 {
            if let Some(v) = front.query_max(qx, qy, p) {
                best = best.max(v);
            }
        }
        if !back.verts.is_empty() {
            best = best.max(back.query_max(qx, qy));
        }
        out.push(best);
    }
    pushes += back.pushes + front.pushes;
    pops += back.pops + front.pops;
    (out, pushes, pops)
}

/// Windowed variant: only windows of length <= w. One-sided parts run on
/// hull queues; strictly straddling windows are handled per gated index by
/// an incremental tangent sweep (the sanctioned O(n w) fallback path).
pub fn discrete_local_maximal_with_stats(
    s: &SampledSignal,
    w: usize,
) -> Result<(SampledSignal, KernelStats), DiscreteError> {
    if s.samples.is_empty() {
        return Err(DiscreteError::Empty);
    }
    if w < 1 {
        return Err(DiscreteError::BadWindow);
    }
    let n = s.len();
    let p = abs_prefix(&s.samples);
    let mut stats = KernelStats::default();

    let (lend, pu1, po1) = windowed_lend_pass(&p, n, w);
    // windows starting at i with length <= w: mirror of lend on the
    // reversed index axis, using the same prefix array by flipping chords:
    // run the queue over the reversed prefix graph coordinates.
    let (rstart, pu2, po2) = windowed_rstart_pass(&p, n, w);
    stats.hull_pushes = pu1 + pu2;
    stats.hull_pops = po1 + po2;

    let mut out: Vec<f64> = (0..n).map(|i| lend[i].max(rstart[i])).collect();

    for i in 0..n {
        let gated =
            i > 0 && i + 1 < n && w >= 3 && rstart[i + 1] > out[i] && lend[i - 1] > out[i];
        if !gated {
            continue;
        }
        stats.bridged += 1;
        // straddling pairs (l, j): l <= i-1, j >= i+2, j - l <= w; grow the
        // reachable-j upper hull as l increases.
        let l_lo = (i + 2).saturating_sub(w);
        let mut hull: Vec<u32> = Vec::new();
        let mut next_j = i + 2;
        let mut best = out[i];
        for l in l_lo..i {
            let j_cap = (l + w).min(n);
            while next_j <= j_cap {
                let x3 = next_j as f64;
                let y3 = p[next_j];
                while hull.len() >= 2 {
                    let b = hull[hull.len() - 1] as usize;
                    let a = hull[hull.len() - 2] as usize;
                    if (p[b] - p[a]) * (x3 - b as f64) > (y3 - p[b]) * (b as f64 - a as f64) {
                        break;
                    }
                    hull.pop();
                    stats.bridge_pops += 1;
                }
                hull.push(next_j as u32);
                stats.bridge_pushes += 1;
                next_j += 1;
            }
            if hull.is_empty() {
                continue;
            }
            let f = |t: usize| -> f64 {
                let k = hull[t] as usize;
                (p[k] - p[l]) / (k - l) as f64
            };
            let v = f(unimodal_peak(hull.len(), f));
            if v > best {
                best = v;
            }
        }
        out[i] = best;
    }

    Ok((
        SampledSignal {
            samples: out,
            spacing: s.spacing,
            origin: s.origin,
        },
        stats,
    ))
}

/// Upper hull built by right insertions with an undo journal (front stack
/// of the mirrored windowed queue). Vertices are stored leftmost first.
struct UpperRightJournalHull {
    verts: Vec<u32>,
    journal: Vec<(u32, Vec<u32>)>,
    pushes: u64,
    pops: u64,
}

impl UpperRightJournalHull {
    fn new() -> Self {
        UpperRightJournalHull {
            verts: Vec::new(),
            journal: Vec::new(),
            pushes: 0,
            pops: 0,
        }
    }

    fn clear(&mut self) {
        self.verts.clear();
        self.journal.clear();
    }

    fn insert_right(&mut self, idx: u32, p: &[f64]) {
        let mut popped = Vec::new();
        let x3 = idx as f64;
        let y3 = p[idx as usize];
        while self.verts.len() >= 2 {
            let b = *self.verts.last().unwrap() as usize;
            let a = self.verts[self.verts.len() - 2] as usize;
            // upper hull, x order a < b < idx: pop b when on/below chord(a, idx)
            if (p[b] - p[a]) * (x3 - b as f64) > (y3 - p[b]) * (b as f64 - a as f64) {
                break;
            }
            popped.push(self.verts.pop().unwrap());
            self.pops += 1;
        }
        self.verts.push(idx);
        self.pushes += 1;
        self.journal.push((idx, popped));
    }

    fn remove_right(&mut self) {
        let (idx, popped) = self.journal.pop().expect("remove on empty hull");
        let top = self.verts.pop().expect("hull out of sync");
        debug_assert_eq!(top, idx);
        self.pops += 1;
        for v in popped.into_iter().rev() {
            self.verts.push(v);
            self.pushes += 1;
        }
    }

    /// Max slope from (qx, qy) left of the hull to a hull vertex.
    fn query_max(&self, qx: f64, qy: f64, p: &[f64]) -> Option<f64> {
        if self.verts.is_empty() {
            return None;
        }
        let verts = &self.verts;
        let f = |j: usize| -> f64 {
            let v = verts[j] as usize;
            (p[v] - qy) / (v as f64 - qx)
        };
        Some(f(unimodal_peak(verts.len(), f)))
    }
}

pub fn discrete_local_maximal(
    s: &SampledSignal,
    w: usize,
) -> Result<SampledSignal, DiscreteError> {
    discrete_local_maximal_with_stats(s, w).map(|(o, _)| o)
}

/// Windowed right pass: max slope from (i, p[i]) to points j in (i, i+w].
/// Processed with i descending, so points enter at the left (plain grow
/// hull) and expire at the right (journal hull).
fn windowed_rstart_pass(p: &[f64], n: usize, w: usize) -> (Vec<f64>, u64, u64) {
    let mut front = UpperRightJournalHull::new(); // right side, expiry end
    let mut back = UpperGrowHull::new(); // receives entering (left) points
    let mut back_points: Vec<u32> = Vec::new(); // insertion order: descending j
    let mut front_len = 0usize;
    let mut out = vec![0.0f64; n];
    let mut pushes = 0u64;
    let mut pops = 0u64;
    for i in (0..n).rev() {
        let j = (i + 1) as u32;
        back.insert_left(j, p);
        back_points.push(j);
        let live = front_len + back_points.len();
        if live > w {
            if front_len == 0 {
                front.clear();
                // rebuild from the back points in ascending j so the
                // rightmost insertion sits on top of the journal
                for &idx in back_points.iter().rev() {
                    front.insert_right(idx, p);
                }
                front_len = back_points.len();
                back_points.clear();
                pushes += back.pushes;
                pops += back.pops;
                back = UpperGrowHull::new();
            }
            front.remove_right();
            front_len -= 1;
        }
        let qx = i as f64;
        let qy = p[i];
        let mut best = f64::NEG_INFINITY;
        if front_len > 0 {
            if let Some(v) = front.query_max(qx, qy, p) {
                best = best.max(v);
            }
        }
        if !back.verts.is_empty() {
            best = best.max(back.query_max(qx, qy));
        }
        out[i] = best;
    }
    pushes += back.pushes + front.pushes;
    pops += back.pops + front.pops;
    (out, pushes, pops)
}

/// O(n^2) oracle: suffix maxima of means over all windows [l, r] with
/// l <= i <= r, sharing the kernel's prefix array and mean expression.
pub fn brute_force_maximal(
    s: &SampledSignal,
    w: Option<usize>,
) -> Result<SampledSignal, DiscreteError> {
    if s.samples.is_empty() {
        return Err(DiscreteError::Empty);
    }
    if w == Some(0) {
        return Err(DiscreteError::BadWindow);
    }
    let n = s.len();
    let p = abs_prefix(&s.samples);
    let mut out = vec![f64::NEG_INFINITY; n];
    for l in 0..n {
        let r_max = match w {
            Some(cap) => (l + cap - 1).min(n - 1),
            None => n - 1,
        };
        let mut running = f64::NEG_INFINITY;
        let mut i = r_max + 1;
        while i > l {
            i -= 1;
            let m = mean(&p, l, i + 1);
            if m > running {
                running = m;
            }
            if running > out[i] {
                out[i] = running;
            }
        }
    }
    Ok(SampledSignal {
        samples: out,
        spacing: s.spacing,
        origin: s.origin,
    })
}

/// Midpoint sampling of a step function on its (bounded) domain.
pub fn sample_step(f: &StepFunction, n: usize) -> Result<SampledSignal, DiscreteError> {
    let (a, b) = match (f.domain().left(), f.domain().right()) {
        (Endpoint::Finite(a), Endpoint::Finite(b)) => (a.clone(), b.clone()),
        _ => return Err(DiscreteError::UnboundedDomain),
    };
    sample_step_window(f, &a, &b, n)
}

/// Midpoint sampling of a step function restricted to [a, b].
pub fn sample_step_window(
    f: &StepFunction,
    a: &Rat,
    b: &Rat,
    n: usize,
) -> Result<SampledSignal, DiscreteError> {
    if n < 2 {
        return Err(DiscreteError::TooFewSamples(2));
    }
    let width = b - a;
    let nq = Rat::from(num_bigint::BigInt::from(n as i64));
    let spacing = &width / &nq;
    let two = crate::rational::ri(2);
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let iq = Rat::from(num_bigint::BigInt::from(i as i64));
        let x = a + &spacing * (iq + crate::rational::ri(1) / &two);
        samples.push(rat_to_f64(&f.value_at(&x)));
    }
    Ok(SampledSignal {
        samples,
        spacing: rat_to_f64(&spacing),
        origin: rat_to_f64(&(a + &spacing / &two)),
    })
}

/// Midpoint sampling of a maximal profile over [a, b].
pub fn sample_profile(
    p: &MaximalProfile,
    a: &Rat,
    b: &Rat,
    n: usize,
) -> Result<SampledSignal, DiscreteError> {
    if n < 2 {
        return Err(DiscreteError::TooFewSamples(2));
    }
    let width = b - a;
    let nq = Rat::from(num_bigint::BigInt::from(n as i64));
    let spacing = &width / &nq;
    let two = crate::rational::ri(2);
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let iq = Rat::from(num_bigint::BigInt::from(i as i64));
        let x = a + &spacing * (iq + crate::rational::ri(1) / &two);
        samples.push(if p.is_exact() {
            rat_to_f64(&p.value_at(&x))
        } else {
            p.value_at_f64(rat_to_f64(&x))
        });
    }
    Ok(SampledSignal {
        samples,
        spacing: rat_to_f64(&spacing),
        origin: rat_to_f64(&(a + &spacing / &two)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::rational::{ri, rq};

    fn sig(v: &[f64]) -> SampledSignal {
        SampledSignal::new(v.to_vec(), 1.0, 0.0).unwrap()
    }

    #[test]
    fn three_point_example() {
        let out = discrete_maximal(&sig(&[0.0, 3.0, 0.0])).unwrap();
        assert_eq!(out.samples, vec![1.5, 3.0, 1.5]);
        let c = discrete_maximal(&sig(&[2.0, 2.0, 2.0, 2.0])).unwrap();
        assert_eq!(c.samples, vec![2.0; 4]);
        let single = brute_force_maximal(&sig(&[5.0]), None).unwrap();
        assert_eq!(single.samples, vec![5.0]);
    }

    #[test]
    fn straddling_window_wins() {
        let out = discrete_maximal(&sig(&[10.0, 0.0, 10.0])).unwrap();
        assert!((out.samples[1] - 20.0 / 3.0).abs() < 1e-15);
        let capped = discrete_local_maximal(&sig(&[10.0, 0.0, 10.0]), 3).unwrap();
        assert!((capped.samples[1] - 20.0 / 3.0).abs() < 1e-15);
        let capped2 = discrete_local_maximal(&sig(&[10.0, 0.0, 10.0]), 2).unwrap();
        assert!((capped2.samples[1] - 5.0).abs() < 1e-15);
    }

    #[test]
    fn windowed_examples() {
        let s = sig(&[0.0, 3.0, 0.0]);
        let w1 = discrete_local_maximal(&s, 1).unwrap();
        assert_eq!(w1.samples, vec![0.0, 3.0, 0.0]);
        let w2 = discrete_local_maximal(&s, 2).unwrap();
        assert_eq!(w2.samples, vec![1.5, 3.0, 1.5]);
        let wn = discrete_local_maximal(&s, 10).unwrap();
        assert_eq!(wn.samples, discrete_maximal(&s).unwrap().samples);
        assert!(discrete_local_maximal(&s, 0).is_err());
        assert!(discrete_maximal(&SampledSignal {
            samples: vec![],
            spacing: 1.0,
            origin: 0.0
        })
        .is_err());
    }

    #[test]
    fn oracle_agreement_small() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 100.0
        };
        for n in [1usize, 2, 3, 17, 64, 129, 257] {
            let v: Vec<f64> = (0..n).map(|_| next()).collect();
            let s = sig(&v);
            let fast = discrete_maximal(&s).unwrap();
            let slow = brute_force_maximal(&s, None).unwrap();
            for i in 0..n {
                assert!(
                    (fast.samples[i] - slow.samples[i]).abs() <= 1e-12,
                    "n={n} i={i}: {} vs {}",
                    fast.samples[i],
                    slow.samples[i]
                );
            }
            for w in [1usize, 2, 3, 5, 17, n] {
                let fast_w = discrete_local_maximal(&s, w).unwrap();
                let slow_w = brute_force_maximal(&s, Some(w)).unwrap();
                for i in 0..n {
                    assert!(
                        (fast_w.samples[i] - slow_w.samples[i]).abs() <= 1e-12,
                        "n={n} w={w} i={i}: {} vs {}",
                        fast_w.samples[i],
                        slow_w.samples[i]
                    );
                }
            }
        }
    }

    #[test]
    fn sparse_spikes_need_bridges() {
        let mut v = vec![0.0f64; 101];
        for k in (0..101).step_by(10) {
            v[k] = 50.0 + k as f64;
        }
        let s = sig(&v);
        let fast = discrete_maximal(&s).unwrap();
        let slow = brute_force_maximal(&s, None).unwrap();
        for i in 0..101 {
            assert!(
                (fast.samples[i] - slow.samples[i]).abs() <= 1e-12,
                "i={i}: {} vs {}",
                fast.samples[i],
                slow.samples[i]
            );
        }
        for w in [4usize, 11, 35] {
            let fast_w = discrete_local_maximal(&s, w).unwrap();
            let slow_w = brute_force_maximal(&s, Some(w)).unwrap();
            for i in 0..101 {
                assert!(
                    (fast_w.samples[i] - slow_w.samples[i]).abs() <= 1e-12,
                    "w={w} i={i}"
                );
            }
        }
    }

    #[test]
    fn hull_ops_linear() {
        let mut state = 42u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let n = 10_000usize;
        let v: Vec<f64> = (0..n).map(|_| next()).collect();
        let (_, stats) = discrete_maximal_with_stats(&sig(&v)).unwrap();
        assert!(
            stats.pass_total() <= 4 * n as u64,
            "pass hull ops {} exceed 4n",
            stats.pass_total()
        );
        assert!(
            stats.bridge_total() <= 8 * n as u64,
            "bridge hull ops {} exceed 8n",
            stats.bridge_total()
        );
    }

    #[test]
    fn sampling_bridges() {
        let chi = StepFunction::new(
            Interval::bounded(ri(-1), ri(2)).unwrap(),
            vec![ri(0), ri(1)],
            vec![ri(0), ri(1), ri(0)],
            None,
        )
        .unwrap();
        let s = sample_step(&chi, 3).unwrap();
        assert_eq!(s.samples, vec![0.0, 1.0, 0.0]);
        assert!((s.spacing - 1.0).abs() < 1e-15);
        assert!((s.x_at(1) - 0.5).abs() < 1e-15);
        let unbounded = StepFunction::new(
            Interval::real_line(),
            vec![ri(0)],
            vec![ri(0), ri(0)],
            None,
        )
        .unwrap();
        assert!(sample_step(&unbounded, 8).is_err());
        let profile = crate::maximal::maximal(&chi).unwrap();
        let ps = sample_profile(&profile, &ri(1), &ri(2), 2).unwrap();
        assert_eq!(ps.samples.len(), 2);
        let expect = profile.value_at(&rq(5, 4));
        assert!((ps.samples[0] - rat_to_f64(&expect)).abs() < 1e-15);
    }

    #[test]
    fn output_dominates_input() {
        let s = sig(&[1.0, -4.0, 2.0, 0.0, 7.0]);
        let out = discrete_maximal(&s).unwrap();
        for (o, i) in out.samples.iter().zip(&s.samples) {
            assert!(*o >= i.abs() - 1e-12);
            assert!(*o <= 7.0 + 1e-12);
        }
    }
}
