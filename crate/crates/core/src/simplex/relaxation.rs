use num_bigint::BigInt;
use num_traits::Zero;

use super::{
    phase_one::phase_one_with, EnteringRule, Mode, SimplexConfig, SimplexError, SimplexOutcome,
};
use crate::exact::Rational;
use crate::instance::DualFormInstance;

/// Outcome of `max y'b  s.t.  y'A <= c'` over the continuous relaxation,
/// solved through its standard-form dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelaxationOutcome {
    Optimal {
        z: Rational,
        y: Vec<Rational>,
    },
    /// The primal is infeasible: the relaxation is unbounded in direction
    /// `b`, or empty.
    PrimalInfeasible,
    /// The primal is unbounded, so the relaxation is empty.
    Empty,
}

/// Solves the continuous relaxation for the instance's own objective `b`.
///
/// Uses Bland's rule throughout; these auxiliary problems are often
/// degenerate.
pub fn solve_relaxation(instance: &DualFormInstance) -> Result<RelaxationOutcome, SimplexError> {
    let config = SimplexConfig::default();
    let mut state = match phase_one_with(instance.clone(), Mode::Plain, config) {
        Ok(s) => s,
        Err(SimplexError::PrimalInfeasible) => return Ok(RelaxationOutcome::PrimalInfeasible),
        Err(e) => return Err(e),
    };
    match state.primal_simplex(EnteringRule::Bland, None)? {
        SimplexOutcome::Optimal { .. } => Ok(RelaxationOutcome::Optimal {
            z: state.objective(),
            y: state.dual_solution().to_vec(),
        }),
        SimplexOutcome::Unbounded { .. } => Ok(RelaxationOutcome::Empty),
        SimplexOutcome::IterationLimit { .. } => unreachable!("no pivot cap was set"),
    }
}

/// Whether `{y : y'A <= c'}` is nonempty, decided by the zero objective.
pub fn relaxation_is_nonempty(instance: &DualFormInstance) -> Result<bool, SimplexError> {
    let zero = instance.with_objective(vec![BigInt::zero(); instance.m()]);
    match solve_relaxation(&zero)? {
        RelaxationOutcome::Optimal { .. } => Ok(true),
        RelaxationOutcome::Empty => Ok(false),
        RelaxationOutcome::PrimalInfeasible => Err(SimplexError::InvariantViolation(
            "zero right-hand side is always primal feasible".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn worked_example_relaxation() {
        let inst = DualFormInstance::from_i64(
            &[&[7, 8, -1, 1, 3], &[5, 6, -1, 2, 1]],
            &[26, 19],
            &[126, 141, -10, 5, 67],
        )
        .unwrap();
        assert_eq!(
            solve_relaxation(&inst).unwrap(),
            RelaxationOutcome::Optimal {
                z: rat(927, 2),
                y: vec![rat(51, 2), rat(-21, 2)]
            }
        );
        assert!(relaxation_is_nonempty(&inst).unwrap());
    }

    #[test]
    fn unbounded_and_empty() {
        // y <= 0, maximize y: bounded; maximize -y: unbounded
        let inst = DualFormInstance::from_i64(&[&[1]], &[1], &[0]).unwrap();
        assert!(matches!(
            solve_relaxation(&inst).unwrap(),
            RelaxationOutcome::Optimal { .. }
        ));
        let inst = inst.with_objective(vec![BigInt::from(-1)]);
        assert_eq!(
            solve_relaxation(&inst).unwrap(),
            RelaxationOutcome::PrimalInfeasible
        );
        // y <= -1 and -y <= 0
        let empty = DualFormInstance::from_i64(&[&[1, -1]], &[1], &[-1, 0]).unwrap();
        assert_eq!(solve_relaxation(&empty).unwrap(), RelaxationOutcome::Empty);
        assert!(!relaxation_is_nonempty(&empty).unwrap());
    }
}
