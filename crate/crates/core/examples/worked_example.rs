//! The two-row example solved in plain mode, cutting on every fractional
//! coordinate, with the solver's event log.
//!
//!     cargo run --example worked_example

use dualgomory::driver::{solve_plain, SolveOptions, SourcePolicy, TraceEvent};
use dualgomory::exact::Mixed;
use dualgomory::instance::DualFormInstance;

fn main() {
    let instance = DualFormInstance::from_i64(
        &[&[7, 8, -1, 1, 3], &[5, 6, -1, 2, 1]],
        &[26, 19],
        &[126, 141, -10, 5, 67],
    )
    .expect("valid instance");

    let options = SolveOptions {
        source: SourcePolicy::AllFractional,
        ..SolveOptions::default()
    };
    let mut log = |e: &TraceEvent| println!("{e}");
    let report = solve_plain(&instance, &options, &mut log).expect("solve");

    println!();
    for cut in &report.cut_trace {
        println!("cut on y{}: {}", cut.source_label, cut.inequality);
    }
    let trace: Vec<String> = report
        .objective_trace
        .iter()
        .map(|z| Mixed(z).to_string())
        .collect();
    println!("objective: {}", trace.join(" -> "));
    println!(
        "y* = {:?}, z* = {}",
        report.y_star.unwrap(),
        report.z_star.unwrap()
    );
}
