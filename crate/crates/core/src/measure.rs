//! Distributional derivatives of piecewise functions as jump + density parts.

use crate::pwl::PiecewiseLinearFunction;
use crate::rational::Rat;
use crate::step::StepFunction;
use num_traits::{Signed, Zero};

/// The derivative measure of a piecewise function: point jumps plus an a.e.
/// density. Its total mass equals the variation of the canonical
/// representative of the source function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeMeasure {
    /// (location, signed jump height), jumps of the lateral limits only.
    pub jumps: Vec<(Rat, Rat)>,
    /// a.e. slope as a step function on the same domain.
    pub density: StepFunction,
    /// |jumps| + integral of |density|.
    pub total_variation_mass: Rat,
}

pub fn derivative_measure_step(f: &StepFunction) -> DerivativeMeasure {
    let mut jumps = Vec::new();
    let mut mass = Rat::zero();
    for (i, b) in f.breakpoints().iter().enumerate() {
        let j = &f.piece_values()[i + 1] - &f.piece_values()[i];
        if !j.is_zero() {
            mass += j.abs();
            jumps.push((b.clone(), j));
        }
    }
    let density = StepFunction::constant(f.domain().clone(), Rat::zero()).unwrap();
    DerivativeMeasure {
        jumps,
        density,
        total_variation_mass: mass,
    }
}

/// Errors when a sloped infinite tail makes the derivative non-integrable.
pub fn derivative_measure_pwl(
    f: &PiecewiseLinearFunction,
) -> Result<DerivativeMeasure, crate::error::FuncError> {
    let mut jumps = Vec::new();
    let mut mass = Rat::zero();
    for (i, k) in f.knots().iter().enumerate() {
        let (l, r) = &f.values()[i];
        let j = r - l;
        if !j.is_zero() {
            mass += j.abs();
            jumps.push((k.clone(), j));
        }
    }
    let density = f.ae_slope_step()?;
    mass += density.l1_norm();
    Ok(DerivativeMeasure {
        jumps,
        density,
        total_variation_mass: mass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::rational::{ri, rq};

    #[test]
    fn indicator_jumps() {
        let chi = StepFunction::new(
            Interval::real_line(),
            vec![ri(0), ri(1)],
            vec![ri(0), ri(1), ri(0)],
            None,
        )
        .unwrap();
        let m = derivative_measure_step(&chi);
        assert_eq!(m.jumps, vec![(ri(0), ri(1)), (ri(1), ri(-1))]);
        assert_eq!(m.total_variation_mass, ri(2));
        assert_eq!(
            m.total_variation_mass,
            chi.canonical_representative().total_variation()
        );
    }

    #[test]
    fn ramp_density() {
        let ramp = PiecewiseLinearFunction::from_points(
            Interval::bounded(ri(0), ri(1)).unwrap(),
            vec![(ri(0), ri(0)), (ri(1), ri(3))],
        )
        .unwrap();
        let m = derivative_measure_pwl(&ramp).unwrap();
        assert!(m.jumps.is_empty());
        assert_eq!(m.density.piece_values(), &[ri(3)]);
        assert_eq!(m.total_variation_mass, ri(3));
    }

    #[test]
    fn hat_density_mass() {
        let hat = PiecewiseLinearFunction::from_points(
            Interval::bounded(ri(0), ri(1)).unwrap(),
            vec![(ri(0), ri(0)), (rq(1, 2), rq(1, 2)), (ri(1), ri(0))],
        )
        .unwrap();
        let m = derivative_measure_pwl(&hat).unwrap();
        assert_eq!(m.density.piece_values(), &[ri(1), ri(-1)]);
        // |D hat|([0,1]) = int_0^1 |hat'| = 1, the variation of the hat
        assert_eq!(m.total_variation_mass, ri(1));
        assert_eq!(m.total_variation_mass, hat.total_variation().unwrap());
    }
}
