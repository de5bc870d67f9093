use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{EnteringRule, Mode, SimplexConfig, SimplexError, SimplexOutcome, SimplexState};
use crate::instance::DualFormInstance;

/// Finds a primal-feasible basis by minimizing the sum of artificial
/// variables.
///
/// Rows already covered by a suitable unit column of `A` reuse it; the rest
/// get an artificial column `±e_k` with cost 1 while every original column
/// costs 0. In lex mode the starting basis is the identity, which is
/// lex-feasible because each right-hand side `ε^k` is lex-positive. Plain
/// mode prices with Bland's rule here so the auxiliary problem cannot cycle.
///
/// The returned state's pivot count is the number of phase-one pivots.
pub fn phase_one(instance: DualFormInstance, mode: Mode) -> Result<SimplexState, SimplexError> {
    phase_one_with(instance, mode, SimplexConfig::default())
}

pub(crate) fn phase_one_with(
    instance: DualFormInstance,
    mode: Mode,
    config: SimplexConfig,
) -> Result<SimplexState, SimplexError> {
    let m = instance.m();
    let n = instance.n();

    let sign_of_row = |k: usize| -> i32 {
        match mode {
            Mode::Lex => 1,
            Mode::Plain if instance.b()[k].is_negative() => -1,
            Mode::Plain => 1,
        }
    };

    let mut aux = instance.clone();
    let mut basis = Vec::with_capacity(m);
    let mut artificial_costs = Vec::new();
    for k in 0..m {
        let sign = sign_of_row(k);
        let unit: Vec<BigInt> = (0..m)
            .map(|i| {
                if i == k {
                    BigInt::from(sign)
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        let existing =
            (0..n).find(|&j| !basis.contains(&j) && instance.column(j) == unit.as_slice());
        match existing {
            Some(j) => basis.push(j),
            None => {
                basis.push(aux.push_column(unit, BigInt::zero())?);
                artificial_costs.push(BigInt::one());
            }
        }
    }

    if artificial_costs.is_empty() {
        return SimplexState::factor(instance, basis, mode, config);
    }

    let mut costs = vec![BigInt::zero(); n];
    costs.extend(artificial_costs);
    aux.replace_costs(costs);

    let mut state = SimplexState::factor(aux, basis, mode, config)?;
    let rule = match mode {
        Mode::Plain => EnteringRule::Bland,
        Mode::Lex => EnteringRule::Dantzig,
    };
    match state.primal_simplex(rule, None)? {
        SimplexOutcome::Optimal { .. } => {}
        other => {
            return Err(SimplexError::InvariantViolation(format!(
                "phase-one problem is bounded below by zero but returned {other:?}"
            )))
        }
    }

    let infeasible = match mode {
        Mode::Plain => state.objective().is_positive(),
        // lex basic values are never zero, so any basic artificial is positive
        Mode::Lex => state.basis().iter().any(|&j| j >= n),
    };
    if infeasible {
        return Err(SimplexError::PrimalInfeasible);
    }

    // plain mode: artificials left in the basis sit at zero and leave by
    // degenerate pivots
    for l in 0..m {
        if state.basis()[l] < n {
            continue;
        }
        let replacement = (0..n).find(|&j| !state.is_basic(j) && !state.direction(j)[l].is_zero());
        match replacement {
            Some(j) => {
                state.pivot(j, l)?;
            }
            None => {
                return Err(SimplexError::InvariantViolation(
                    "artificial column cannot leave: constraint matrix is rank deficient".into(),
                ))
            }
        }
    }

    let pivots = state.pivot_count();
    let basis = state.basis().to_vec();
    let mut state = SimplexState::factor(instance, basis, mode, config)?;
    state.pivots = pivots;
    if !state.is_primal_feasible() {
        return Err(SimplexError::InvariantViolation(
            "phase-one basis is not primal feasible".into(),
        ));
    }
    Ok(state)
}
