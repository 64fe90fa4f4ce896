//! Exact quadratic irrationals `p + q*sqrt(d)` and finite sums of such terms.
//!
//! Window-capped maximal profiles can switch branches at points whose
//! coordinates solve a quadratic with rational coefficients. Those points are
//! kept exact here instead of being rounded. Comparisons are decided by sign
//! analysis and repeated squaring, never by floating point.

use crate::rational::{rat_to_f64, rat_to_string, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Returns `sqrt(n)` if `n` is a perfect square.
fn exact_int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Returns `sqrt(r)` if the rational `r` is a perfect square.
fn exact_rat_sqrt(r: &Rat) -> Option<Rat> {
    let n = exact_int_sqrt(r.numer())?;
    let d = exact_int_sqrt(r.denom())?;
    Some(Rat::new(n, d))
}

/// `p + q*sqrt(d)` with `q != 0`, `d > 0` and `d` not a rational square, so a
/// `Surd` is never itself rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    p: Rat,
    q: Rat,
    d: Rat,
}

/// A scalar that is either rational or a quadratic irrational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactValue {
    Rat(Rat),
    Surd(Surd),
}

impl Surd {
    /// Normalizing constructor: collapses to `ExactValue::Rat` when `q = 0`
    /// or `d` is a perfect square.
    pub fn make(p: Rat, q: Rat, d: Rat) -> ExactValue {
        assert!(!d.is_negative(), "negative radicand");
        if q.is_zero() || d.is_zero() {
            return ExactValue::Rat(p);
        }
        if let Some(s) = exact_rat_sqrt(&d) {
            return ExactValue::Rat(p + q * s);
        }
        ExactValue::Surd(Surd { p, q, d })
    }

    pub fn parts(&self) -> (&Rat, &Rat, &Rat) {
        (&self.p, &self.q, &self.d)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.p) + rat_to_f64(&self.q) * rat_to_f64(&self.d).sqrt()
    }

    /// Sign of `p + q*sqrt(d)`; never zero for a normalized surd.
    fn sign(&self) -> Ordering {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sp == sq || sp == Ordering::Equal {
            return sq;
        }
        // Opposite signs: compare p^2 with q^2 d. Equality would force d to
        // be a rational square, excluded by normalization.
        let left = &self.p * &self.p;
        let right = &self.q * &self.q * &self.d;
        match left.cmp(&right) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => unreachable!("normalized surd equals a rational"),
        }
    }

    /// Rational bracket `(lo, hi)` with `hi - lo <= 2^-bits`, roughly.
    pub fn bracket(&self, bits: u32) -> (Rat, Rat) {
        let (lo, hi) = bracket_sqrt(&self.d, bits);
        if self.q.is_negative() {
            (
                &self.p + &self.q * hi,
                &self.p + &self.q * lo,
            )
        } else {
            (
                &self.p + &self.q * lo,
                &self.p + &self.q * hi,
            )
        }
    }
}

fn sign_of(r: &Rat) -> Ordering {
    if r.is_positive() {
        Ordering::Greater
    } else if r.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Rational bracket of `sqrt(d)` of width about `2^-bits`.
pub fn bracket_sqrt(d: &Rat, bits: u32) -> (Rat, Rat) {
    // sqrt(n/m) = sqrt(n*m)/m; scale by 4^bits before the integer sqrt.
    let scaled = d.numer() * d.denom() * (BigInt::one() << (2 * bits));
    let root = scaled.sqrt();
    let denom = Rat::from(d.denom() * (BigInt::one() << bits));
    (
        Rat::from(root.clone()) / denom.clone(),
        Rat::from(root + BigInt::one()) / denom,
    )
}

impl ExactValue {
    pub fn rat(r: Rat) -> Self {
        ExactValue::Rat(r)
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            ExactValue::Rat(r) => Some(r),
            ExactValue::Surd(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Rat(r) => rat_to_f64(r),
            ExactValue::Surd(s) => s.to_f64(),
        }
    }

    pub fn cmp_exact(&self, other: &ExactValue) -> Ordering {
        match (self, other) {
            (ExactValue::Rat(a), ExactValue::Rat(b)) => a.cmp(b),
            (ExactValue::Rat(a), ExactValue::Surd(b)) => cmp_rat_surd(a, b),
            (ExactValue::Surd(a), ExactValue::Rat(b)) => cmp_rat_surd(b, a).reverse(),
            (ExactValue::Surd(a), ExactValue::Surd(b)) => cmp_surd_surd(a, b),
        }
    }
}

impl PartialOrd for ExactValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl Ord for ExactValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

fn cmp_rat_surd(a: &Rat, b: &Surd) -> Ordering {
    // a - (p + q sqrt(d)) = (a - p) - q sqrt(d)
    match Surd::make(a - &b.p, -b.q.clone(), b.d.clone()) {
        ExactValue::Rat(r) => sign_of(&r),
        ExactValue::Surd(s) => s.sign(),
    }
}

fn cmp_surd_surd(a: &Surd, b: &Surd) -> Ordering {
    if a.d == b.d {
        return match Surd::make(&a.p - &b.p, &a.q - &b.q, a.d.clone()) {
            ExactValue::Rat(r) => sign_of(&r),
            ExactValue::Surd(s) => s.sign(),
        };
    }
    // s + t with s = p1 - p2 rational and t = q1 sqrt(d1) - q2 sqrt(d2).
    let s = &a.p - &b.p;
    let t_sign = {
        let s1 = sign_of(&a.q);
        let s2 = sign_of(&b.q);
        if s1 != s2 {
            // One term >= 0, one <= 0; q's are nonzero so the difference
            // takes the sign of the nonnegative side.
            if s1 == Ordering::Greater || s2 == Ordering::Less {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else {
            let l = &a.q * &a.q * &a.d;
            let r = &b.q * &b.q * &b.d;
            let ord = l.cmp(&r);
            if s1 == Ordering::Greater {
                ord
            } else {
                ord.reverse()
            }
        }
    };
    if t_sign == Ordering::Equal {
        return sign_of(&s);
    }
    let s_sign = sign_of(&s);
    if s_sign == Ordering::Equal || s_sign == t_sign {
        return t_sign;
    }
    // Opposite signs: compare s^2 with t^2 = q1^2 d1 + q2^2 d2 - 2 q1 q2 sqrt(d1 d2),
    // i.e. take the sign of (s^2 - q1^2 d1 - q2^2 d2) + 2 q1 q2 sqrt(d1 d2).
    let rational_part = &a.q * &a.q * &a.d + &b.q * &b.q * &b.d;
    let coeff = Rat::from(BigInt::from(2)) * &a.q * &b.q;
    let diff = match Surd::make(&s * &s - rational_part, coeff, &a.d * &b.d) {
        ExactValue::Rat(r) => sign_of(&r),
        ExactValue::Surd(x) => x.sign(),
    };
    match diff {
        Ordering::Greater => s_sign, // |s| > |t|
        Ordering::Less => t_sign,
        Ordering::Equal => Ordering::Equal,
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Rat(r) => write!(f, "{}", rat_to_string(r)),
            ExactValue::Surd(s) => write!(
                f,
                "{}+{}*sqrt({})",
                rat_to_string(&s.p),
                rat_to_string(&s.q),
                rat_to_string(&s.d)
            ),
        }
    }
}

/// Exact finite sum `r + sum_i c_i sqrt(d_i)`, with radicands kept pairwise
/// non-proportional so the radical terms are linearly independent over the
/// rationals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExactSum {
    rational: Rat,
    radicals: BTreeMap<(BigInt, BigInt), Rat>,
}

impl ExactSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rat(r: Rat) -> Self {
        ExactSum {
            rational: r,
            radicals: BTreeMap::new(),
        }
    }

    pub fn add_rat(&mut self, r: &Rat) {
        self.rational += r;
    }

    pub fn add_value(&mut self, v: &ExactValue) {
        match v {
            ExactValue::Rat(r) => self.add_rat(r),
            ExactValue::Surd(s) => {
                let (p, q, d) = s.parts();
                self.rational += p;
                self.add_radical(q.clone(), d.clone());
            }
        }
    }

    pub fn sub_value(&mut self, v: &ExactValue) {
        match v {
            ExactValue::Rat(r) => self.rational -= r,
            ExactValue::Surd(s) => {
                let (p, q, d) = s.parts();
                self.rational -= p;
                self.add_radical(-q.clone(), d.clone());
            }
        }
    }

    fn add_radical(&mut self, coeff: Rat, d: Rat) {
        if coeff.is_zero() {
            return;
        }
        // Merge with an existing radicand when the ratio is a rational square.
        for (key, c) in self.radicals.iter_mut() {
            let dk = Rat::new(key.0.clone(), key.1.clone());
            if let Some(factor) = exact_rat_sqrt(&(&d / &dk)) {
                *c += coeff * factor;
                let dead = c.is_zero();
                if dead {
                    let key = key.clone();
                    self.radicals.remove(&key);
                }
                return;
            }
        }
        self.radicals
            .insert((d.numer().clone(), d.denom().clone()), coeff);
    }

    /// Multiplies the whole sum by a rational factor.
    pub fn scale(&self, c: &Rat) -> ExactSum {
        if c.is_zero() {
            return ExactSum::zero();
        }
        ExactSum {
            rational: &self.rational * c,
            radicals: self
                .radicals
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    /// Exactly rational? Relies on the merged radicands being independent.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.radicals.is_empty() {
            Some(&self.rational)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut acc = rat_to_f64(&self.rational);
        for (key, c) in &self.radicals {
            let d = Rat::new(key.0.clone(), key.1.clone());
            acc += rat_to_f64(c) * rat_to_f64(&d).sqrt();
        }
        acc
    }

    /// Exact comparison against a rational. Nonzero differences are certified
    /// by interval refinement; exact zero falls out of independence.
    pub fn cmp_rat(&self, rhs: &Rat) -> Ordering {
        if let Some(r) = self.as_rat() {
            return r.cmp(rhs);
        }
        let base = &self.rational - rhs;
        if self.radicals.is_empty() {
            return sign_of(&base);
        }
        let mut bits = 32u32;
        loop {
            let (mut lo, mut hi) = (base.clone(), base.clone());
            for (key, c) in &self.radicals {
                let d = Rat::new(key.0.clone(), key.1.clone());
                let (slo, shi) = bracket_sqrt(&d, bits);
                if c.is_negative() {
                    lo += c * &shi;
                    hi += c * &slo;
                } else {
                    lo += c * &slo;
                    hi += c * &shi;
                }
            }
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            if lo.is_zero() && hi.is_zero() {
                return Ordering::Equal;
            }
            bits *= 2;
            assert!(
                bits <= 4096,
                "sign refinement failed to converge; radicals should be independent"
            );
        }
    }

    pub fn cmp_sum(&self, rhs: &ExactSum) -> Ordering {
        let mut diff = self.clone();
        diff.rational -= &rhs.rational;
        for (key, c) in &rhs.radicals {
            diff.add_radical(-c.clone(), Rat::new(key.0.clone(), key.1.clone()));
        }
        diff.cmp_rat(&Rat::zero())
    }
}

impl fmt::Display for ExactSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rat() {
            write!(f, "{}", rat_to_string(r))
        } else {
            write!(f, "{}", self.to_f64())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ri, rq};

    fn surd(p: (i64, i64), q: (i64, i64), d: (i64, i64)) -> ExactValue {
        Surd::make(rq(p.0, p.1), rq(q.0, q.1), rq(d.0, d.1))
    }

    #[test]
    fn normalization_collapses_squares() {
        assert_eq!(surd((1, 2), (3, 1), (9, 4)), ExactValue::Rat(ri(5)));
        assert_eq!(surd((1, 1), (0, 1), (2, 1)), ExactValue::Rat(ri(1)));
        assert!(matches!(surd((0, 1), (1, 1), (2, 1)), ExactValue::Surd(_)));
    }

    #[test]
    fn compare_with_rationals() {
        // sqrt(2) between 1.414213 and 1.414214
        let s = surd((0, 1), (1, 1), (2, 1));
        assert_eq!(s.cmp_exact(&ExactValue::Rat(rq(1414213, 1000000))), Ordering::Greater);
        assert_eq!(s.cmp_exact(&ExactValue::Rat(rq(1414214, 1000000))), Ordering::Less);
        // 3 - sqrt(2) < 2
        let t = surd((3, 1), (-1, 1), (2, 1));
        assert_eq!(t.cmp_exact(&ExactValue::Rat(ri(2))), Ordering::Less);
    }

    #[test]
    fn compare_mixed_radicands() {
        // sqrt(8) = 2 sqrt(2)
        let a = surd((0, 1), (1, 1), (8, 1));
        let b = surd((0, 1), (2, 1), (2, 1));
        assert_eq!(a.cmp_exact(&b), Ordering::Equal);
        // 1 + sqrt(2) vs sqrt(6): 2.414 vs 2.449
        let c = surd((1, 1), (1, 1), (2, 1));
        let d = surd((0, 1), (1, 1), (6, 1));
        assert_eq!(c.cmp_exact(&d), Ordering::Less);
        // sqrt(2) + 2 vs sqrt(11): 3.414 vs 3.3166
        let e = surd((2, 1), (1, 1), (2, 1));
        let f = surd((0, 1), (1, 1), (11, 1));
        assert_eq!(e.cmp_exact(&f), Ordering::Greater);
    }

    #[test]
    fn sums_cancel_proportional_radicals() {
        let mut sum = ExactSum::zero();
        sum.add_value(&surd((1, 1), (1, 1), (8, 1)));
        sum.add_value(&surd((2, 1), (-2, 1), (2, 1)));
        // 1 + sqrt8 + 2 - 2 sqrt2 = 3 exactly
        assert_eq!(sum.as_rat(), Some(&ri(3)));
        sum.add_value(&surd((0, 1), (1, 1), (3, 1)));
        assert_eq!(sum.as_rat(), None);
        // 3 + sqrt(3) vs 4.7: sqrt(3)=1.732..
        assert_eq!(sum.cmp_rat(&rq(47, 10)), Ordering::Greater);
        assert_eq!(sum.cmp_rat(&rq(48, 10)), Ordering::Less);
    }

    #[test]
    fn bracket_is_tight() {
        let (lo, hi) = bracket_sqrt(&ri(2), 64);
        assert!(lo < hi);
        let w = &hi - &lo;
        assert!(w < rq(1, 1_000_000_000));
        assert!(&lo * &lo < ri(2) && &hi * &hi > ri(2));
    }
}
