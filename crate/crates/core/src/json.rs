//! JSON interchange for functions and profiles. Rationals travel as "p/q"
//! strings so round trips are exact; infinities are "-inf" / "inf".

use crate::error::FuncError;
use crate::interval::Interval;
use crate::maximal::{MaximalProfile, Precision, ProfileBound, SegmentSource};
use crate::pwl::PiecewiseLinearFunction;
use crate::rational::{parse_endpoint, parse_rat, rat_to_string, Endpoint, Rat};
use crate::step::StepFunction;
use crate::surd::ExactValue;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct IntervalJson {
    pub left: String,
    pub right: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct StepFunctionJson {
    pub kind: String, // "step"
    pub domain: IntervalJson,
    pub breakpoints: Vec<String>,
    pub piece_values: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_values: Option<Vec<Option<String>>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PwlFunctionJson {
    pub kind: String, // "pwl"
    pub domain: IntervalJson,
    pub knots: Vec<String>,
    /// [left value, right value] per knot
    pub values: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_slopes: Option<[String; 2]>,
}

/// Either function kind, for loaders that accept both.
#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum FunctionJson {
    Step(StepFunctionJson),
    Pwl(PwlFunctionJson),
}

pub fn interval_to_json(i: &Interval) -> IntervalJson {
    IntervalJson {
        left: i.left().to_string(),
        right: i.right().to_string(),
    }
}

pub fn interval_from_json(j: &IntervalJson) -> Result<Interval, String> {
    let left = parse_endpoint(&j.left)?;
    let right = parse_endpoint(&j.right)?;
    Interval::new(left, right).map_err(|e| e.to_string())
}

pub fn step_to_json(f: &StepFunction) -> StepFunctionJson {
    StepFunctionJson {
        kind: "step".into(),
        domain: interval_to_json(f.domain()),
        breakpoints: f.breakpoints().iter().map(rat_to_string).collect(),
        piece_values: f.piece_values().iter().map(rat_to_string).collect(),
        point_values: if f.declared_point_values().iter().any(|v| v.is_some()) {
            Some(
                f.declared_point_values()
                    .iter()
                    .map(|v| v.as_ref().map(rat_to_string))
                    .collect(),
            )
        } else {
            None
        },
    }
}

pub fn step_from_json(j: &StepFunctionJson) -> Result<StepFunction, String> {
    if j.kind != "step" {
        return Err(format!("expected kind \"step\", got {:?}", j.kind));
    }
    let domain = interval_from_json(&j.domain)?;
    let breakpoints = j
        .breakpoints
        .iter()
        .map(|s| parse_rat(s))
        .collect::<Result<Vec<_>, _>>()?;
    let piece_values = j
        .piece_values
        .iter()
        .map(|s| parse_rat(s))
        .collect::<Result<Vec<_>, _>>()?;
    let point_values = match &j.point_values {
        None => None,
        Some(pvs) => Some(
            pvs.iter()
                .map(|ov| ov.as_ref().map(|s| parse_rat(s)).transpose())
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    StepFunction::new(domain, breakpoints, piece_values, point_values)
        .map_err(|e: FuncError| e.to_string())
}

pub fn pwl_to_json(f: &PiecewiseLinearFunction) -> PwlFunctionJson {
    let tails = f.tail_slopes();
    PwlFunctionJson {
        kind: "pwl".into(),
        domain: interval_to_json(f.domain()),
        knots: f.knots().iter().map(rat_to_string).collect(),
        values: f
            .values()
            .iter()
            .map(|(l, r)| [rat_to_string(l), rat_to_string(r)])
            .collect(),
        tail_slopes: if !f.domain().is_bounded() {
            Some([rat_to_string(&tails.0), rat_to_string(&tails.1)])
        } else {
            None
        },
    }
}

pub fn pwl_from_json(j: &PwlFunctionJson) -> Result<PiecewiseLinearFunction, String> {
    if j.kind != "pwl" {
        return Err(format!("expected kind \"pwl\", got {:?}", j.kind));
    }
    let domain = interval_from_json(&j.domain)?;
    let knots = j
        .knots
        .iter()
        .map(|s| parse_rat(s))
        .collect::<Result<Vec<_>, _>>()?;
    let values = j
        .values
        .iter()
        .map(|[l, r]| Ok::<_, String>((parse_rat(l)?, parse_rat(r)?)))
        .collect::<Result<Vec<_>, _>>()?;
    let tails = match &j.tail_slopes {
        Some([l, r]) => (parse_rat(l)?, parse_rat(r)?),
        None => (crate::rational::ri(0), crate::rational::ri(0)),
    };
    PiecewiseLinearFunction::with_tails(domain, knots, values, tails).map_err(|e| e.to_string())
}

pub fn function_from_json_str(s: &str) -> Result<FunctionOwned, String> {
    let parsed: FunctionJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
    match parsed {
        FunctionJson::Step(j) => step_from_json(&j).map(FunctionOwned::Step),
        FunctionJson::Pwl(j) => pwl_from_json(&j).map(FunctionOwned::Pwl),
    }
}

#[derive(Debug, Clone)]
pub enum FunctionOwned {
    Step(StepFunction),
    Pwl(PiecewiseLinearFunction),
}

// ---------------------------------------------------------------------------
// profile emission

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct BoundJson {
    /// "-inf", "inf", a rational "p/q", or a quadratic irrational
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approx: Option<f64>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SegmentJson {
    pub lo: BoundJson,
    pub hi: BoundJson,
    /// coefficients of (a + b x) / (c + d x) as "p/q"
    pub coeffs: [String; 4],
    pub source: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ProfileJson {
    pub domain: IntervalJson,
    pub precision: String, // "exact" or "float"
    pub segments: Vec<SegmentJson>,
}

fn bound_to_json(b: &ProfileBound) -> BoundJson {
    match b {
        ProfileBound::NegInf => BoundJson {
            value: "-inf".into(),
            approx: None,
        },
        ProfileBound::PosInf => BoundJson {
            value: "inf".into(),
            approx: None,
        },
        ProfileBound::Val(ExactValue::Rat(r)) => BoundJson {
            value: rat_to_string(r),
            approx: None,
        },
        ProfileBound::Val(v @ ExactValue::Surd(_)) => BoundJson {
            value: v.to_string(),
            approx: Some(v.to_f64()),
        },
    }
}

fn source_to_string(s: &SegmentSource) -> String {
    match s {
        SegmentSource::LeftAnchor(d) => format!("left-anchor {}", rat_to_string(d)),
        SegmentSource::RightAnchor(d) => format!("right-anchor {}", rat_to_string(d)),
        SegmentSource::LeftWindow(r) => format!("left-window {}", rat_to_string(r)),
        SegmentSource::RightWindow(r) => format!("right-window {}", rat_to_string(r)),
        SegmentSource::Stationary => "stationary".into(),
        SegmentSource::Sampled => "sampled".into(),
    }
}

pub fn profile_to_json(p: &MaximalProfile) -> ProfileJson {
    ProfileJson {
        domain: interval_to_json(&p.domain),
        precision: match p.precision {
            Precision::Exact => "exact".into(),
            Precision::Float { .. } => "float".into(),
        },
        segments: p
            .segments
            .iter()
            .map(|s| SegmentJson {
                lo: bound_to_json(&s.lo),
                hi: bound_to_json(&s.hi),
                coeffs: [
                    rat_to_string(&s.fun.a),
                    rat_to_string(&s.fun.b),
                    rat_to_string(&s.fun.c),
                    rat_to_string(&s.fun.d),
                ],
                source: source_to_string(&s.source),
            })
            .collect(),
    }
}

/// CSV rows "x,value" sampled from a profile at uniform points of [a, b],
/// with 17 significant digits.
pub fn profile_to_csv(p: &MaximalProfile, a: &Rat, b: &Rat, n: usize) -> String {
    let mut out = String::from("x,value\n");
    let width = b - a;
    let nq = Rat::from(num_bigint::BigInt::from((n.max(2) - 1) as i64));
    for i in 0..n.max(2) {
        let iq = Rat::from(num_bigint::BigInt::from(i as i64));
        let x = a + &width * iq / &nq;
        let v = if p.is_exact() {
            crate::rational::rat_to_f64(&p.value_at(&x))
        } else {
            p.value_at_f64(crate::rational::rat_to_f64(&x))
        };
        out.push_str(&format!(
            "{:.17e},{:.17e}\n",
            crate::rational::rat_to_f64(&x),
            v
        ));
    }
    out
}

/// Helper shared by loaders: pretty endpoint.
pub fn endpoint_to_string(e: &Endpoint) -> String {
    e.to_string()
}
