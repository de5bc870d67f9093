//! Finitely terminating lexicographic solve, compared against enumeration.
//!
//!     cargo run --example lex_solve

use dualgomory::driver::{lexify, solve_lex, NoTrace, SolveOptions};
use dualgomory::instance::DualFormInstance;
use dualgomory::oracle::{bounding_box, brute_force_optimum, OracleConfig};

fn main() {
    let instance = DualFormInstance::from_i64(
        &[&[7, 8, -1, 1, 3], &[5, 6, -1, 2, 1]],
        &[26, 19],
        &[126, 141, -10, 5, 67],
    )
    .unwrap();

    let lifted = lexify(&instance);
    println!(
        "lifted instance has {} rows and {} columns",
        lifted.lifted.m(),
        lifted.lifted.n()
    );

    let report = solve_lex(&instance, &SolveOptions::default(), &mut NoTrace).unwrap();
    let y = report.y_star.clone().unwrap();
    println!(
        "status {}, z* = {}, y* = {:?}",
        report.status.as_str(),
        report.z_star.unwrap(),
        y
    );
    println!(
        "{} pivots after phase one, {} cuts, {} strictly decreasing pivots checked",
        report.pivot_count, report.cut_count, report.checks.lex_decrease
    );
    for cut in &report.cut_trace {
        println!("  {}", cut.inequality);
    }

    let bounds = bounding_box(&instance).unwrap();
    let oracle = brute_force_optimum(&instance, &bounds, OracleConfig::default()).unwrap();
    let lex_max = oracle.lex_max().unwrap();
    println!("enumeration: lexicographically greatest optimum {lex_max:?}");
    assert_eq!(y.as_slice(), lex_max);
}
