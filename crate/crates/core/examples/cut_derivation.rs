//! Deriving one cut column by hand from an optimal basis.
//!
//!     cargo run --example cut_derivation

use dualgomory::cutgen::{
    cut_as_inequality, derive_cut_column, validate_cut, CutCheck, ShiftPolicy,
};
use dualgomory::exact::Mixed;
use dualgomory::instance::DualFormInstance;
use dualgomory::simplex::{phase_one, EnteringRule, Mode};
use num_bigint::BigInt;

fn main() {
    let instance = DualFormInstance::from_i64(
        &[&[7, 8, -1, 1, 3], &[5, 6, -1, 2, 1]],
        &[26, 19],
        &[126, 141, -10, 5, 67],
    )
    .unwrap();

    let mut state = phase_one(instance.clone(), Mode::Plain).unwrap();
    state.primal_simplex(EnteringRule::Dantzig, None).unwrap();
    let y: Vec<String> = state
        .dual_solution()
        .iter()
        .map(|q| Mixed(q).to_string())
        .collect();
    println!(
        "optimal basis {:?}, y = ({}), z = {}",
        state.basis(),
        y.join(", "),
        Mixed(&state.objective())
    );

    for (label, r) in [
        ("minimal shift", ShiftPolicy::Minimal),
        (
            "shift (-2, 3)",
            ShiftPolicy::Explicit(vec![BigInt::from(-2), BigInt::from(3)]),
        ),
    ] {
        let cut = derive_cut_column(&state, 0, &r).unwrap();
        println!("\n{label}: r = {:?}", cut.r);
        println!("  column {:?}, cost {}", cut.b_tilde, cut.cost);
        println!("  inequality {}", cut.inequality());
        println!(
            "  reduced cost when appended: {}",
            cut.initial_reduced_cost()
        );

        let reexpressed = cut_as_inequality(&cut, &state).unwrap();
        println!(
            "  at the current y: y1 = {} > {}",
            Mixed(&state.dual_solution()[0]),
            Mixed(&reexpressed.rhs_at(state.dual_solution()))
        );

        let optimum = [BigInt::from(25), BigInt::from(-10)];
        assert_eq!(validate_cut(&instance, &cut, &optimum), CutCheck::Satisfied);
    }
}
