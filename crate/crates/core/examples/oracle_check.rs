//! Brute-force enumeration used as a reference solver.
//!
//!     cargo run --example oracle_check

use dualgomory::instance::DualFormInstance;
use dualgomory::oracle::{
    bounding_box, brute_force_optimum, feasible_points, OracleConfig, OracleOutcome,
};

fn main() {
    let instance = DualFormInstance::from_i64(
        &[&[7, 8, -1, 1, 3], &[5, 6, -1, 2, 1]],
        &[26, 19],
        &[126, 141, -10, 5, 67],
    )
    .unwrap();

    let bounds = bounding_box(&instance).unwrap();
    println!(
        "box {:?} .. {:?}, {} lattice points",
        bounds.lower,
        bounds.upper,
        bounds.volume()
    );

    let config = OracleConfig {
        workers: 4,
        ..OracleConfig::default()
    };
    let points = feasible_points(&instance, &bounds, config).unwrap();
    println!("{} feasible integer points", points.len());

    match brute_force_optimum(&instance, &bounds, config).unwrap() {
        OracleOutcome::Optimal { z, argmax } => println!("z* = {z}, attained at {argmax:?}"),
        OracleOutcome::Infeasible => println!("no integer point"),
    }
}
