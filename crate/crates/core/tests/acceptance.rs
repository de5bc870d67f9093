//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Values are compared exactly (rational arithmetic, zero tolerance). Time
//! limits are wall-clock and pinned below.

mod common;

use std::time::{Duration, Instant};

use dualgomory::driver::{
    check_boundedness, lexify, solve_lex, solve_plain, Boundedness, CheckCounts,
    InfeasibilityEvidence, NoTrace, SolveOptions, SolveReport, SolveStatus, SourcePolicy,
};
use dualgomory::exact::{int, rat, Rational};
use dualgomory::instance::DualFormInstance;
use dualgomory::oracle::{
    bounding_box, feasible_points, optimum_of, OracleConfig, OracleError, OracleOutcome,
};
use dualgomory::simplex::Mode;
use num_bigint::BigInt;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_LIMIT: Duration = Duration::from_secs(1);
const LEX_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_LIMIT: Duration = Duration::from_secs(60);
const SWEEP_SEED: u64 = 0x5eed_2026;
const SWEEP_COUNT: usize = 120;
const FORCING_SEED: u64 = 0xf0ce;
const FORCING_COUNT: usize = 12;

#[derive(Default)]
struct Invariants {
    failures: Vec<String>,
    checks: CheckCounts,
    cut_point_checks: usize,
    runs: usize,
}

impl Invariants {
    fn absorb(&mut self, report: &SolveReport) {
        let c = &report.checks;
        let t = &mut self.checks;
        t.lex_decrease += c.lex_decrease;
        t.cut_fractional += c.cut_fractional;
        t.cut_reduced_cost += c.cut_reduced_cost;
        t.first_pivot_update += c.first_pivot_update;
        t.first_pivot_dichotomy += c.first_pivot_dichotomy;
        t.unique_improving += c.unique_improving;
        t.basis_size += c.basis_size;
        t.integrality += c.integrality;
        t.optimality += c.optimality;
        self.runs += 1;
        if report.mode == Mode::Lex && c.lex_decrease != report.pivot_count {
            self.failures.push(format!(
                "{} pivots but {} lex-decrease checks",
                report.pivot_count, c.lex_decrease
            ));
        }
        if c.cut_fractional != report.cut_count + report.duplicates_skipped
            || c.cut_reduced_cost != c.cut_fractional
        {
            self.failures
                .push("a derived cut skipped its fractionality or reduced-cost check".into());
        }
    }

    /// Every cut must hold at every feasible integer point. Lex-mode cuts
    /// live on the lifted variables; their `y0` coefficient is nonnegative,
    /// so checking the lifted point with the largest `y0` is enough.
    fn check_cuts(
        &mut self,
        instance: &DualFormInstance,
        report: &SolveReport,
        points: &[Vec<BigInt>],
    ) {
        let lifted = lexify(instance);
        for cut in &report.cut_trace {
            if report.mode == Mode::Lex && cut.cut.b_tilde[0].is_negative() {
                self.failures.push(format!(
                    "lex cut {} has a negative y0 coefficient",
                    cut.inequality
                ));
            }
            for p in points {
                let point = match report.mode {
                    Mode::Lex => lifted.lift_point(p),
                    Mode::Plain => p.clone(),
                };
                self.cut_point_checks += 1;
                if cut.inequality.lhs(&point) > cut.inequality.rhs {
                    self.failures.push(format!(
                        "cut {} cuts off feasible point {p:?}",
                        cut.inequality
                    ));
                }
            }
        }
    }
}

fn enumerate(instance: &DualFormInstance) -> Result<Vec<Vec<BigInt>>, OracleError> {
    match bounding_box(instance) {
        Ok(bounds) => feasible_points(instance, &bounds, OracleConfig::default()),
        Err(OracleError::Empty) => Ok(Vec::new()),
        Err(e) => Err(e),
    }
}

fn report_line(ok: bool, id: &str, text: String) -> bool {
    println!("{} {id} {text}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn golden(inv: &mut Invariants) -> bool {
    let instance = common::worked();
    let options = SolveOptions {
        source: SourcePolicy::AllFractional,
        dedupe: true,
        ..SolveOptions::default()
    };
    let start = Instant::now();
    let result = solve_plain(&instance, &options, &mut NoTrace);
    let elapsed = start.elapsed();
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            inv.failures.push(format!("golden run: {e}"));
            return report_line(false, "1", format!("golden plain run failed: {e}"));
        }
    };
    inv.absorb(&report);
    inv.check_cuts(&instance, &report, &enumerate(&instance).unwrap());

    let cuts: Vec<(Vec<BigInt>, BigInt)> = report
        .cut_trace
        .iter()
        .map(|c| (c.cut.b_tilde.clone(), c.cut.cost.clone()))
        .collect();
    let expected_cuts = vec![
        (common::big(&[4, 3]), BigInt::from(70)),
        (common::big(&[5, 3]), BigInt::from(96)),
        (common::big(&[3, 2]), BigInt::from(55)),
    ];
    let expected_trace: Vec<Rational> = vec![rat(927, 2), int(462), rat(2304, 5), int(460)];
    let ok = report.status == SolveStatus::Optimal
        && cuts == expected_cuts
        && report.objective_trace == expected_trace
        && report.y_star == Some(common::big(&[25, -10]))
        && report.z_star == Some(BigInt::from(460))
        && elapsed < GOLDEN_LIMIT;
    report_line(
        ok,
        "1",
        format!(
            "golden plain run: cuts {:?}, objective trace {:?}, y* {:?}, z* {:?}, {:.3}s (limit {}s, exact match)",
            report.cut_trace.iter().map(|c| c.inequality.to_string()).collect::<Vec<_>>(),
            report.objective_trace.iter().map(ToString::to_string).collect::<Vec<_>>(),
            report.y_star,
            report.z_star,
            elapsed.as_secs_f64(),
            GOLDEN_LIMIT.as_secs()
        ),
    )
}

fn lex_golden(inv: &mut Invariants) -> bool {
    let instance = common::worked();
    let start = Instant::now();
    let result = solve_lex(&instance, &SolveOptions::default(), &mut NoTrace);
    let elapsed = start.elapsed();
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            inv.failures.push(format!("lex run: {e}"));
            return report_line(false, "2", format!("lex run failed: {e}"));
        }
    };
    let points = enumerate(&instance).unwrap();
    inv.absorb(&report);
    inv.check_cuts(&instance, &report, &points);
    let oracle = optimum_of(&instance, points);
    let ok = report.z_star == Some(BigInt::from(460))
        && report.y_star.as_deref() == oracle.lex_max()
        && elapsed < LEX_LIMIT;
    report_line(
        ok,
        "2",
        format!(
            "lex run: z* {:?}, y* {:?}, oracle lex max {:?}, {:.3}s (limit {}s)",
            report.z_star,
            report.y_star,
            oracle.lex_max(),
            elapsed.as_secs_f64(),
            LEX_LIMIT.as_secs()
        ),
    )
}

fn agrees(report: &SolveReport, oracle: &OracleOutcome) -> bool {
    match (report.status, oracle) {
        (SolveStatus::Optimal, OracleOutcome::Optimal { z, .. }) => {
            report.z_star.as_ref() == Some(z) && report.y_star.as_deref() == oracle.lex_max()
        }
        (SolveStatus::IntegerInfeasible, OracleOutcome::Infeasible) => true,
        _ => false,
    }
}

/// Returns (criterion 3 passed, number of runs that hit a cap).
fn sweep(inv: &mut Invariants) -> (bool, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    let start = Instant::now();
    let mut agreed = 0;
    let mut capped = 0;
    let mut optimal = 0;
    let mut empty = 0;
    let mut cuts = 0;
    let mut disagreements = Vec::new();
    for k in 0..SWEEP_COUNT {
        let instance = common::random_bounded(&mut rng);
        let report = match solve_lex(&instance, &SolveOptions::default(), &mut NoTrace) {
            Ok(r) => r,
            Err(e) => {
                inv.failures.push(format!("sweep instance {k}: {e}"));
                disagreements.push(k);
                continue;
            }
        };
        if report.status == SolveStatus::LimitReached {
            capped += 1;
        }
        let points = enumerate(&instance).expect("sweep instances are bounded and small");
        cuts += report.cut_count;
        inv.absorb(&report);
        inv.check_cuts(&instance, &report, &points);
        let oracle = optimum_of(&instance, points);
        if agrees(&report, &oracle) {
            agreed += 1;
            optimal += usize::from(report.status == SolveStatus::Optimal);
            empty +=
                usize::from(report.infeasibility == Some(InfeasibilityEvidence::EmptyRelaxation));
        } else {
            disagreements.push(k);
        }
    }
    let elapsed = start.elapsed();
    let ok = agreed == SWEEP_COUNT && elapsed < SWEEP_LIMIT;
    let line = report_line(
        ok,
        "3",
        format!(
            "oracle sweep: {agreed}/{SWEEP_COUNT} agree ({optimal} optimal, {} infeasible after cutting, {empty} with empty relaxation), {} cuts, seed {SWEEP_SEED:#x}, {:.2}s (limit {}s), disagreements {disagreements:?}",
            agreed - optimal - empty,
            cuts,
            elapsed.as_secs_f64(),
            SWEEP_LIMIT.as_secs()
        ),
    );
    (line, capped)
}

fn forcing(inv: &mut Invariants) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(FORCING_SEED);
    let mut detected = 0;
    let mut problems = Vec::new();
    for k in 0..FORCING_COUNT {
        let instance = common::fractional_forcing(&mut rng);
        if check_boundedness(&instance).ok() != Some(Boundedness::Bounded) {
            problems.push(format!("{k}: relaxation not bounded and nonempty"));
            continue;
        }
        if !enumerate(&instance).unwrap().is_empty() {
            problems.push(format!("{k}: has integer points"));
            continue;
        }
        match solve_lex(&instance, &SolveOptions::default(), &mut NoTrace) {
            Ok(report) => {
                inv.absorb(&report);
                if report.status == SolveStatus::IntegerInfeasible
                    && matches!(
                        report.infeasibility,
                        Some(InfeasibilityEvidence::PrimalUnbounded { .. })
                    )
                {
                    detected += 1;
                } else {
                    problems.push(format!("{k}: status {}", report.status.as_str()));
                }
            }
            Err(e) => {
                inv.failures.push(format!("forcing instance {k}: {e}"));
                problems.push(format!("{k}: {e}"));
            }
        }
    }
    report_line(
        detected == FORCING_COUNT,
        "6",
        format!("infeasibility detection: {detected}/{FORCING_COUNT} via primal unboundedness, seed {FORCING_SEED:#x} {problems:?}"),
    )
}

fn main() {
    let mut inv = Invariants::default();
    let mut all = true;
    all &= golden(&mut inv);
    all &= lex_golden(&mut inv);
    let (swept, capped) = sweep(&mut inv);
    all &= swept;

    let c = inv.checks;
    let exercised = c.lex_decrease > 0
        && c.cut_fractional > 0
        && c.cut_reduced_cost > 0
        && inv.cut_point_checks > 0
        && c.first_pivot_dichotomy > 0
        && c.basis_size > 0
        && c.integrality > 0
        && c.first_pivot_update > 0;
    all &= report_line(
        inv.failures.is_empty() && exercised,
        "4",
        format!(
            "invariants over {} runs: {} failures; checks run: lex decrease {}, cut fractionality {}, cut reduced cost {}, cut vs feasible points {}, dichotomy {}, basis size {}, integrality {}, closed-form update {}, unique improving {}, optimality {} {:?}",
            inv.runs,
            inv.failures.len(),
            c.lex_decrease,
            c.cut_fractional,
            c.cut_reduced_cost,
            inv.cut_point_checks,
            c.first_pivot_dichotomy,
            c.basis_size,
            c.integrality,
            c.first_pivot_update,
            c.unique_improving,
            c.optimality,
            inv.failures.iter().take(5).collect::<Vec<_>>()
        ),
    );
    all &= report_line(
        capped == 0,
        "5",
        format!("termination guard: {capped} lex runs in the sweep hit a cap"),
    );
    all &= forcing(&mut inv);

    if !all {
        std::process::exit(1);
    }
}
