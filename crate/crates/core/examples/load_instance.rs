//! Reading an instance file and printing a JSON report.
//!
//!     cargo run --example load_instance -- crates/core/data/example3.inst

use dualgomory::driver::{solve_lex, NoTrace, SolveOptions};
use dualgomory::io::{emit_report, parse_instance, render_instance, ReportContext, ReportFormat};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/example3.inst").to_string());
    let text = std::fs::read_to_string(&path).expect("readable instance file");
    let instance = match parse_instance(&text) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("{path}: {e}");
            std::process::exit(65);
        }
    };
    eprint!("{}", render_instance(&instance));

    let report = solve_lex(&instance, &SolveOptions::default(), &mut NoTrace).expect("solve");
    let context = ReportContext {
        instance_name: instance.name().map(str::to_string),
        oracle: None,
    };
    print!("{}", emit_report(&report, ReportFormat::Json, &context));
}
