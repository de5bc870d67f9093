//! Classifying the continuous relaxation before solving.
//!
//!     cargo run --example boundedness

use dualgomory::driver::{check_boundedness, solve_lex, NoTrace, SolveOptions};
use dualgomory::instance::DualFormInstance;

fn main() {
    let cases = [
        (
            "two-row example",
            DualFormInstance::from_i64(
                &[&[7, 8, -1, 1, 3], &[5, 6, -1, 2, 1]],
                &[26, 19],
                &[126, 141, -10, 5, 67],
            )
            .unwrap(),
        ),
        (
            "half line y <= 0",
            DualFormInstance::from_i64(&[&[1]], &[1], &[0]).unwrap(),
        ),
        (
            "contradiction",
            DualFormInstance::from_i64(&[&[1, -1]], &[1], &[-1, 0]).unwrap(),
        ),
    ];
    for (name, instance) in &cases {
        println!("{name}: {:?}", check_boundedness(instance).unwrap());
        match solve_lex(instance, &SolveOptions::default(), &mut NoTrace) {
            Ok(report) => println!("  solve: {}", report.status.as_str()),
            Err(e) => println!("  solve refused: {e}"),
        }
    }
}
