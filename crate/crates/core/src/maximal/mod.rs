//! Maximal-average operators: exact engines for step functions, a
//! float-precision engine for piecewise-linear inputs, and the shared
//! profile representation.

pub mod engine;
mod envelope;
pub mod profile;
pub mod pwl_engine;
pub mod structure;

pub use engine::{
    argmax_witness, eval_maximal_at, eval_maximal_batch, local_maximal, maximal,
    one_sided_maximal, ArgmaxWitness, Direction,
};
pub use profile::{
    FloatSample, IntegralValue, LinFrac, MaximalProfile, Precision, ProfileBound, Segment,
    SegmentSource,
};
pub use pwl_engine::{maximal_pwl, maximal_pwl_value_at, PwlEngineOptions};
