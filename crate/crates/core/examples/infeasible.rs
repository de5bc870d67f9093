//! Proving that no integer point exists when the relaxation is nonempty.
//!
//!     cargo run --example infeasible

use dualgomory::driver::{solve_lex, InfeasibilityEvidence, NoTrace, SolveOptions, SolveStatus};
use dualgomory::instance::DualFormInstance;

fn show(title: &str, instance: &DualFormInstance) {
    let report = solve_lex(instance, &SolveOptions::default(), &mut NoTrace).unwrap();
    assert_eq!(report.status, SolveStatus::IntegerInfeasible);
    match report.infeasibility {
        Some(InfeasibilityEvidence::PrimalUnbounded { cuts }) => {
            println!("{title}: primal unbounded after {cuts} cut columns");
            for cut in &report.cut_trace {
                println!("  {}", cut.inequality);
            }
        }
        Some(InfeasibilityEvidence::EmptyRelaxation) => {
            println!("{title}: relaxation already empty")
        }
        None => unreachable!(),
    }
}

fn main() {
    // 2y <= 1, -2y <= -1
    show(
        "y = 1/2",
        &DualFormInstance::from_i64(&[&[2, -2]], &[1], &[1, -1]).unwrap(),
    );

    // 3 <= 2 y1 + 4 y2 <= 3 inside the box 0 <= y <= 2
    let parity = DualFormInstance::from_i64(
        &[&[2, -2, 1, -1, 0, 0], &[4, -4, 0, 0, 1, -1]],
        &[1, 1],
        &[3, -3, 2, 0, 2, 0],
    )
    .unwrap();
    show("2 y1 + 4 y2 = 3", &parity);

    // y1 + y2 <= 1 with y2 >= 1 and y1 >= 1 has an empty relaxation
    let empty =
        DualFormInstance::from_i64(&[&[1, -1, 0], &[1, 0, -1]], &[1, 1], &[1, -1, -1]).unwrap();
    show("empty", &empty);
}
