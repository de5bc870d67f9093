//! `dualgomory solve FILE` and its exit codes.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::driver::{
    solve, LineSink, NoTrace, SolveError, SolveOptions, SolveReport, SolveStatus, SourcePolicy,
    TraceSink,
};
use crate::instance::DualFormInstance;
use crate::io::{emit_report, parse_instance, OracleCheck, ReportContext, ReportFormat};
use crate::oracle::{
    bounding_box, brute_force_optimum, OracleConfig, OracleOutcome, DEFAULT_POINT_CAP,
};
use crate::simplex::{EnteringRule, Mode};

pub const EXIT_OPTIMAL: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(
    name = "dualgomory",
    version,
    about = "Pure-integer cutting planes added as primal columns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance file.
    Solve(SolveArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Lex,
    Plain,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SourceArg {
    Min,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnteringArg {
    Dantzig,
    Bland,
}

#[derive(clap::Args, Debug)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "lex")]
    mode: ModeArg,
    /// Fractional coordinates to cut on (plain mode only).
    #[arg(long, value_enum, default_value = "min")]
    source: SourceArg,
    #[arg(long, value_enum, default_value = "dantzig")]
    entering: EnteringArg,
    /// Print PIVOT, CUT and OPT lines as the solver runs.
    #[arg(long)]
    trace: bool,
    /// Compare against brute-force enumeration.
    #[arg(long)]
    oracle_check: bool,
    #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
    oracle_cap: u64,
    #[arg(long, value_name = "N")]
    max_pivots: Option<usize>,
    #[arg(long, value_name = "N")]
    max_cuts: Option<usize>,
    #[arg(long)]
    json: bool,
}

/// Runs brute-force enumeration and compares it with a finished solve.
///
/// In lex mode the solution must be the lexicographically greatest optimum;
/// in plain mode any optimum is accepted.
pub fn oracle_check(
    instance: &DualFormInstance,
    report: &SolveReport,
    config: OracleConfig,
) -> OracleCheck {
    let outcome = match bounding_box(instance)
        .and_then(|bounds| brute_force_optimum(instance, &bounds, config))
    {
        Ok(o) => o,
        Err(e) => return OracleCheck::Failed(e.to_string()),
    };
    let agrees = match (report.status, &outcome) {
        (SolveStatus::LimitReached, _) => None,
        (SolveStatus::IntegerInfeasible, OracleOutcome::Infeasible) => Some(true),
        (SolveStatus::Optimal, OracleOutcome::Optimal { z, argmax }) => {
            let y = report.y_star.as_ref();
            let point_ok = match report.mode {
                Mode::Lex => y.map(Vec::as_slice) == outcome.lex_max(),
                Mode::Plain => y.is_some_and(|y| argmax.contains(y)),
            };
            Some(report.z_star.as_ref() == Some(z) && point_ok)
        }
        _ => Some(false),
    };
    match outcome {
        OracleOutcome::Optimal { z, argmax } => OracleCheck::Compared {
            agrees,
            z_star: Some(z),
            lex_max: argmax.last().cloned(),
            optimal_points: argmax.len(),
        },
        OracleOutcome::Infeasible => OracleCheck::Compared {
            agrees,
            z_star: None,
            lex_max: None,
            optimal_points: 0,
        },
    }
}

fn solve_error_code(e: &SolveError) -> i32 {
    if e.is_internal() {
        return EXIT_INTERNAL;
    }
    match e {
        SolveError::UnboundedRelaxation { .. } | SolveError::NoFeasibleBasis => EXIT_DATA,
        _ => EXIT_INTERNAL,
    }
}

/// Parses `args` (program name first) and runs the command, writing the
/// report and trace to `out` and diagnostics to `err`.
pub fn run_cli_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OPTIMAL
            };
        }
    };
    let Command::Solve(args) = cli.command;
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", args.file.display());
            return EXIT_NO_INPUT;
        }
    };
    let instance = match parse_instance(&text) {
        Ok(i) => i,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", args.file.display());
            return EXIT_DATA;
        }
    };

    let mode = match args.mode {
        ModeArg::Lex => Mode::Lex,
        ModeArg::Plain => Mode::Plain,
    };
    let mut options = SolveOptions {
        source: match args.source {
            SourceArg::Min => SourcePolicy::MinFractional,
            SourceArg::All => SourcePolicy::AllFractional,
        },
        entering: match args.entering {
            EnteringArg::Dantzig => EnteringRule::Dantzig,
            EnteringArg::Bland => EnteringRule::Bland,
        },
        max_pivots: args.max_pivots,
        ..SolveOptions::default()
    };
    if let Some(n) = args.max_cuts {
        options.max_cuts = n;
    }

    let result = if args.trace {
        let mut sink = LineSink(&mut *out);
        solve(&instance, mode, &options, &mut sink as &mut dyn TraceSink)
    } else {
        solve(&instance, mode, &options, &mut NoTrace)
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return solve_error_code(&e);
        }
    };

    let oracle = args.oracle_check.then(|| {
        let config = OracleConfig {
            point_cap: args.oracle_cap,
            ..OracleConfig::default()
        };
        oracle_check(&instance, &report, config)
    });
    let disagrees = oracle.as_ref().and_then(OracleCheck::agrees) == Some(false);
    let context = ReportContext {
        instance_name: instance.name().map(str::to_string),
        oracle,
    };
    let format = if args.json {
        ReportFormat::Json
    } else {
        ReportFormat::Text
    };
    let _ = write!(out, "{}", emit_report(&report, format, &context));
    if disagrees {
        let _ = writeln!(err, "error: solver and oracle disagree");
        return EXIT_INTERNAL;
    }
    match report.status {
        SolveStatus::Optimal => EXIT_OPTIMAL,
        SolveStatus::IntegerInfeasible => EXIT_INFEASIBLE,
        SolveStatus::LimitReached => EXIT_LIMIT,
    }
}

/// [`run_cli_with`] on the process's standard streams.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run_cli_with(args, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    code
}
