//! Exact rational scalars and extended-real endpoints.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Builds `n / d` from machine integers.
pub fn rq(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn ri(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Renders a rational as `p/q` (or bare `p` when the denominator is 1).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, a bare integer, or a plain decimal such as `0.25`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Ok(r) = Rat::from_str(s) {
        return Ok(r);
    }
    // Decimal fallback: sign, integer part, fractional part.
    if let Some(dot) = s.find('.') {
        let (int_part, frac_part) = (&s[..dot], &s[dot + 1..]);
        let neg = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if frac_part.chars().all(|c| c.is_ascii_digit())
            && int_digits.chars().all(|c| c.is_ascii_digit())
            && !frac_part.is_empty()
        {
            let int_v = if int_digits.is_empty() {
                BigInt::zero()
            } else {
                BigInt::from_str(int_digits).map_err(|e| e.to_string())?
            };
            let frac_v = BigInt::from_str(frac_part).map_err(|e| e.to_string())?;
            let scale = BigInt::from(10).pow(frac_part.len() as u32);
            let mut val = Rat::from(int_v) + Rat::new(frac_v, scale);
            if neg {
                val = -val;
            }
            return Ok(val);
        }
    }
    Err(format!("not a rational: {s:?}"))
}

/// An extended-real value: a finite rational or a signed infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Endpoint {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Endpoint::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Endpoint::Finite(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Endpoint::NegInf => f64::NEG_INFINITY,
            Endpoint::Finite(r) => rat_to_f64(r),
            Endpoint::PosInf => f64::INFINITY,
        }
    }
}

impl PartialOrd for Endpoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_ext(other))
    }
}

impl Endpoint {
    pub fn cmp_ext(&self, other: &Endpoint) -> Ordering {
        use Endpoint::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }

    pub fn cmp_rat(&self, x: &Rat) -> Ordering {
        match self {
            Endpoint::NegInf => Ordering::Less,
            Endpoint::PosInf => Ordering::Greater,
            Endpoint::Finite(r) => r.cmp(x),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => write!(f, "-inf"),
            Endpoint::PosInf => write!(f, "inf"),
            Endpoint::Finite(r) => write!(f, "{}", rat_to_string(r)),
        }
    }
}

pub fn parse_endpoint(s: &str) -> Result<Endpoint, String> {
    match s.trim() {
        "-inf" | "-INF" | "-Inf" => Ok(Endpoint::NegInf),
        "inf" | "+inf" | "INF" | "Inf" => Ok(Endpoint::PosInf),
        other => parse_rat(other).map(Endpoint::Finite),
    }
}
