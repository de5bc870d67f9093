//! The cut-and-reoptimize loop.
//!
//! Both modes follow the same outline: find an optimal basis of the primal,
//! stop if the dual solution `ȳ` is integral, otherwise derive cut columns
//! from fractional coordinates, append them, and warm-start the primal
//! simplex from the current basis. An unbounded primal after appending
//! cuts means the cut-augmented relaxation is empty, so no integer point
//! exists.
//!
//! [`solve_lex`] runs this on the lifted instance (see [`lexify`]) with an
//! ε-perturbed right-hand side and always cuts on the lowest fractional
//! coordinate; it terminates on every instance whose relaxation is
//! nonempty and bounded. [`solve_plain`] works directly on the instance and
//! carries no termination guarantee; its pivot and cut caps are real limits.

mod lexify;
mod trace;

pub use lexify::{lexify, LexifiedInstance};
pub use trace::{LineSink, NoTrace, TraceEvent, TraceSink};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cutgen::{derive_cut_column, CutColumn, CutError, Inequality, ShiftPolicy};
use crate::exact::{floor_int, is_integral, LexValue, Rational};
use crate::instance::DualFormInstance;
use crate::simplex::{
    phase_one, relaxation_is_nonempty, solve_relaxation, EnteringRule, Mode, PivotRecord,
    RelaxationOutcome, SimplexConfig, SimplexError, SimplexState, StepOutcome,
};

pub const DEFAULT_MAX_CUTS: usize = 10_000;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("continuous relaxation is unbounded in coordinate y{} ({})", coordinate + 1, if *upward { "above" } else { "below" })]
    UnboundedRelaxation { coordinate: usize, upward: bool },
    #[error("primal has no feasible basis: the continuous relaxation is empty or unbounded")]
    NoFeasibleBasis,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error(transparent)]
    Cut(#[from] CutError),
}

impl SolveError {
    /// Whether the error signals a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            SolveError::Invariant(_)
                | SolveError::Simplex(SimplexError::InvariantViolation(_))
                | SolveError::Cut(CutError::Invariant(_))
        )
    }
}

/// Which fractional coordinates produce cuts at each optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SourcePolicy {
    /// Only the lowest-index fractional coordinate.
    #[default]
    MinFractional,
    /// Every fractional coordinate.
    AllFractional,
}

/// Fractional coordinates of `y` selected by `policy`; empty when `y` is
/// integral.
pub fn choose_source_index(y: &[Rational], policy: SourcePolicy) -> Vec<usize> {
    let mut fractional = y
        .iter()
        .enumerate()
        .filter(|(_, q)| !is_integral(q))
        .map(|(i, _)| i);
    match policy {
        SourcePolicy::MinFractional => fractional.next().into_iter().collect(),
        SourcePolicy::AllFractional => fractional.collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Boundedness {
    Bounded,
    Unbounded {
        coordinate: usize,
        upward: bool,
    },
    /// The continuous relaxation has no points at all.
    Empty,
}

/// Maximizes and minimizes every coordinate over the continuous relaxation.
pub fn check_boundedness(instance: &DualFormInstance) -> Result<Boundedness, SimplexError> {
    if !relaxation_is_nonempty(instance)? {
        return Ok(Boundedness::Empty);
    }
    let m = instance.m();
    for coordinate in 0..m {
        for upward in [true, false] {
            let mut dir = vec![BigInt::zero(); m];
            dir[coordinate] = if upward {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            match solve_relaxation(&instance.with_objective(dir))? {
                RelaxationOutcome::Optimal { .. } => {}
                RelaxationOutcome::PrimalInfeasible => {
                    return Ok(Boundedness::Unbounded { coordinate, upward })
                }
                RelaxationOutcome::Empty => return Ok(Boundedness::Empty),
            }
        }
    }
    Ok(Boundedness::Bounded)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Ignored in lex mode, which always cuts on the lowest fractional index.
    pub source: SourcePolicy,
    pub entering: EnteringRule,
    /// Defaults to `10 (m + n + cuts)^2`, re-evaluated as cuts accumulate.
    pub max_pivots: Option<usize>,
    pub max_cuts: usize,
    pub dedupe: bool,
    pub check_boundedness: bool,
    /// Run the per-pivot and per-cut invariant checks.
    pub verify: bool,
    pub simplex: SimplexConfig,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            source: SourcePolicy::MinFractional,
            entering: EnteringRule::Dantzig,
            max_pivots: None,
            max_cuts: DEFAULT_MAX_CUTS,
            dedupe: true,
            check_boundedness: true,
            verify: true,
            simplex: SimplexConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    IntegerInfeasible,
    LimitReached,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::IntegerInfeasible => "integer_infeasible",
            SolveStatus::LimitReached => "limit_reached",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Pivots,
    Cuts,
}

impl LimitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LimitKind::Pivots => "pivots",
            LimitKind::Cuts => "cuts",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfeasibilityEvidence {
    /// The continuous relaxation itself is empty.
    EmptyRelaxation,
    /// The primal became unbounded after `cuts` cut columns were appended.
    PrimalUnbounded { cuts: usize },
}

/// A cut as it entered the column pool.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSummary {
    /// Column index (0-based) in the working instance.
    pub column: usize,
    /// Label of the source coordinate (`0` is the lifted objective variable).
    pub source_label: usize,
    pub inequality: Inequality,
    pub cut: CutColumn,
}

/// How many times each invariant check ran; any failure aborts the solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckCounts {
    pub lex_decrease: usize,
    pub cut_fractional: usize,
    pub cut_reduced_cost: usize,
    pub first_pivot_update: usize,
    pub first_pivot_dichotomy: usize,
    pub unique_improving: usize,
    pub basis_size: usize,
    pub integrality: usize,
    pub optimality: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub mode: Mode,
    pub status: SolveStatus,
    pub y_star: Option<Vec<BigInt>>,
    pub z_star: Option<BigInt>,
    /// Pivots after phase one.
    pub pivot_count: usize,
    pub phase_one_pivots: usize,
    pub cut_count: usize,
    pub duplicates_skipped: usize,
    /// Objective after the first optimization and after every later pivot.
    /// In lex mode this is the `ε^0` part of the lifted objective.
    pub objective_trace: Vec<Rational>,
    /// Objective at each optimum.
    pub optimum_trace: Vec<Rational>,
    pub cut_trace: Vec<CutSummary>,
    /// Final dual solution in base coordinates.
    pub final_dual: Vec<Rational>,
    pub limit: Option<LimitKind>,
    pub infeasibility: Option<InfeasibilityEvidence>,
    pub caveat: Option<String>,
    pub checks: CheckCounts,
}

/// Finitely terminating cutting-plane method on the lexified instance.
pub fn solve_lex(
    instance: &DualFormInstance,
    options: &SolveOptions,
    sink: &mut dyn TraceSink,
) -> Result<SolveReport, SolveError> {
    if let Some(report) = precheck(instance, Mode::Lex, options)? {
        return Ok(report);
    }
    let lifted = lexify(instance);
    let state = match phase_one(lifted.lifted.clone(), Mode::Lex) {
        Ok(s) => s,
        Err(SimplexError::PrimalInfeasible) => return Err(SolveError::NoFeasibleBasis),
        Err(e) => return Err(e.into()),
    };
    Run::new(state, instance, Mode::Lex, options, sink).run()
}

/// Cutting-plane loop directly on the instance, without perturbation.
pub fn solve_plain(
    instance: &DualFormInstance,
    options: &SolveOptions,
    sink: &mut dyn TraceSink,
) -> Result<SolveReport, SolveError> {
    if let Some(report) = precheck(instance, Mode::Plain, options)? {
        return Ok(report);
    }
    let state = match phase_one(instance.clone(), Mode::Plain) {
        Ok(s) => s,
        Err(SimplexError::PrimalInfeasible) => return Err(SolveError::NoFeasibleBasis),
        Err(e) => return Err(e.into()),
    };
    Run::new(state, instance, Mode::Plain, options, sink).run()
}

pub fn solve(
    instance: &DualFormInstance,
    mode: Mode,
    options: &SolveOptions,
    sink: &mut dyn TraceSink,
) -> Result<SolveReport, SolveError> {
    match mode {
        Mode::Lex => solve_lex(instance, options, sink),
        Mode::Plain => solve_plain(instance, options, sink),
    }
}

fn precheck(
    instance: &DualFormInstance,
    mode: Mode,
    options: &SolveOptions,
) -> Result<Option<SolveReport>, SolveError> {
    if !options.check_boundedness {
        return Ok(None);
    }
    match check_boundedness(instance)? {
        Boundedness::Bounded => Ok(None),
        Boundedness::Unbounded { coordinate, upward } => {
            Err(SolveError::UnboundedRelaxation { coordinate, upward })
        }
        Boundedness::Empty => Ok(Some(SolveReport {
            mode,
            status: SolveStatus::IntegerInfeasible,
            y_star: None,
            z_star: None,
            pivot_count: 0,
            phase_one_pivots: 0,
            cut_count: 0,
            duplicates_skipped: 0,
            objective_trace: Vec::new(),
            optimum_trace: Vec::new(),
            cut_trace: Vec::new(),
            final_dual: Vec::new(),
            limit: None,
            infeasibility: Some(InfeasibilityEvidence::EmptyRelaxation),
            caveat: None,
            checks: CheckCounts::default(),
        })),
    }
}

enum Reopt {
    Optimal,
    Unbounded,
    PivotLimit,
}

struct Run<'a> {
    state: SimplexState,
    base: &'a DualFormInstance,
    mode: Mode,
    options: &'a SolveOptions,
    sink: &'a mut dyn TraceSink,
    /// Offset of base coordinates inside the working dual vector.
    offset: usize,
    original_n: usize,
    phase_one_pivots: usize,
    pivots: usize,
    rounds: usize,
    cuts: Vec<CutSummary>,
    duplicates: usize,
    objective_trace: Vec<Rational>,
    optimum_trace: Vec<Rational>,
    checks: CheckCounts,
    /// Cuts appended since the last pivot; the next pivot is audited.
    pending: Vec<(usize, CutColumn)>,
}

fn invariant(msg: impl Into<String>) -> SolveError {
    SolveError::Invariant(msg.into())
}

impl<'a> Run<'a> {
    fn new(
        mut state: SimplexState,
        base: &'a DualFormInstance,
        mode: Mode,
        options: &'a SolveOptions,
        sink: &'a mut dyn TraceSink,
    ) -> Self {
        state.set_config(options.simplex);
        let phase_one_pivots = state.pivot_count();
        let original_n = state.instance().n();
        Run {
            state,
            base,
            mode,
            options,
            sink,
            offset: if mode == Mode::Lex { 1 } else { 0 },
            original_n,
            phase_one_pivots,
            pivots: 0,
            rounds: 0,
            cuts: Vec::new(),
            duplicates: 0,
            objective_trace: Vec::new(),
            optimum_trace: Vec::new(),
            checks: CheckCounts::default(),
            pending: Vec::new(),
        }
    }

    fn pivot_cap(&self) -> usize {
        self.options.max_pivots.unwrap_or_else(|| {
            let size = self.state.m() + self.original_n + self.cuts.len();
            10 * size * size
        })
    }

    fn objective(&self) -> Rational {
        match self.mode {
            Mode::Plain => self.state.objective(),
            Mode::Lex => self.state.dual_solution()[0].clone(),
        }
    }

    fn run(mut self) -> Result<SolveReport, SolveError> {
        loop {
            match self.reoptimize()? {
                Reopt::Optimal => {}
                Reopt::Unbounded => return Ok(self.finish_infeasible()),
                Reopt::PivotLimit => return Ok(self.finish_limit(LimitKind::Pivots)),
            }
            if self.options.verify {
                if !self.state.is_optimal() {
                    return Err(invariant("terminal basis fails the optimality certificate"));
                }
                self.checks.optimality += 1;
            }
            let y = self.state.dual_solution().to_vec();
            let z = self.objective();
            let sources = match self.mode {
                Mode::Lex => choose_source_index(&y, SourcePolicy::MinFractional),
                Mode::Plain => choose_source_index(&y, self.options.source),
            };
            if self.rounds == 0 {
                self.objective_trace.push(z.clone());
            }
            self.optimum_trace.push(z.clone());
            self.sink.event(&TraceEvent::Optimum {
                round: self.rounds,
                objective: z,
                y: y.clone(),
                integral: sources.is_empty(),
            });
            if sources.is_empty() {
                return self.finish_optimal();
            }
            if self.cuts.len() + sources.len() > self.options.max_cuts {
                return Ok(self.finish_limit(LimitKind::Cuts));
            }
            self.add_cuts(&sources)?;
            self.rounds += 1;
        }
    }

    fn reoptimize(&mut self) -> Result<Reopt, SolveError> {
        loop {
            if self.pivots >= self.pivot_cap() {
                if self.state.choose_entering(self.options.entering).is_none() {
                    return Ok(Reopt::Optimal);
                }
                return Ok(Reopt::PivotLimit);
            }
            match self.state.step(self.options.entering)? {
                StepOutcome::Optimal => return Ok(Reopt::Optimal),
                StepOutcome::Unbounded { .. } => return Ok(Reopt::Unbounded),
                StepOutcome::Pivoted(record) => self.after_pivot(&record)?,
            }
        }
    }

    fn after_pivot(&mut self, record: &PivotRecord) -> Result<(), SolveError> {
        self.pivots += 1;
        if self.options.verify {
            if self.state.basis().len() != self.state.m() {
                return Err(invariant("basis size changed"));
            }
            self.checks.basis_size += 1;
            if self.mode == Mode::Lex {
                let before = LexValue::new(record.y_before.clone());
                let after = LexValue::new(record.y_after.clone());
                if after.lex_cmp(&before).expect("equal lengths") != Ordering::Less {
                    return Err(invariant(format!(
                        "pivot {} did not lex-decrease the dual solution",
                        self.pivots
                    )));
                }
                self.checks.lex_decrease += 1;
            }
            if !self.pending.is_empty() {
                self.audit_first_pivot(record)?;
            }
        }
        self.pending.clear();
        if self.rounds > 0 {
            self.objective_trace.push(self.objective());
        }
        self.sink.event(&TraceEvent::Pivot {
            number: self.pivots,
            enter: record.enter + 1,
            leave: record.leaving + 1,
            position: record.leave_position + 1,
            objective: self.objective(),
            y: record.y_after.clone(),
        });
        Ok(())
    }

    /// Checks the closed-form dual update and, in lex mode, the progress
    /// dichotomy for the first pivot after new cut columns.
    fn audit_first_pivot(&mut self, record: &PivotRecord) -> Result<(), SolveError> {
        let Some((_, cut)) = self.pending.iter().find(|(col, _)| *col == record.enter) else {
            return Err(invariant(
                "first pivot after cutting did not enter a cut column",
            ));
        };
        let i = cut.source;
        let l = record.leave_position;
        if cut.parent_y != record.y_before {
            return Err(invariant(
                "dual solution moved between cut derivation and pivot",
            ));
        }
        let y_i = &cut.parent_y[i];
        let floor_y_i = Rational::from_integer(floor_int(y_i));
        let step = (&floor_y_i - y_i) / &cut.w[l];
        let closed = LexValue::new(cut.parent_y.clone())
            .scale_add(&step, &LexValue::new(record.leave_row.clone()))
            .expect("equal lengths");
        if closed.coeffs() != record.y_after.as_slice() {
            return Err(invariant(format!(
                "closed-form dual update {closed} differs from recomputed {:?}",
                record.y_after
            )));
        }
        self.checks.first_pivot_update += 1;

        if self.mode == Mode::Lex {
            let prefix_before = LexValue::new(record.y_before[..i].to_vec());
            let prefix_after = LexValue::new(record.y_after[..i].to_vec());
            let prefix_decreased =
                prefix_after.lex_cmp(&prefix_before).expect("equal lengths") == Ordering::Less;
            if !prefix_decreased && record.y_after[i] > floor_y_i {
                return Err(invariant(format!(
                    "after cutting on y{}: neither a prefix decrease nor y{} <= {}",
                    i, i, floor_y_i
                )));
            }
            self.checks.first_pivot_dichotomy += 1;
        }
        Ok(())
    }

    fn add_cuts(&mut self, sources: &[usize]) -> Result<(), SolveError> {
        let derived: Vec<CutColumn> = sources
            .iter()
            .map(|&i| derive_cut_column(&self.state, i, &ShiftPolicy::Minimal))
            .collect::<Result<_, _>>()?;
        let mut appended = Vec::new();
        for cut in derived {
            if self.options.verify {
                if is_integral(&cut.parent_activity()) {
                    return Err(invariant("cut activity at the parent solution is integral"));
                }
                self.checks.cut_fractional += 1;
                let rc = cut.initial_reduced_cost();
                if !(rc.is_negative() && rc > -Rational::one()) {
                    return Err(invariant(format!("cut reduced cost {rc} outside (-1, 0)")));
                }
                self.checks.cut_reduced_cost += 1;
            }
            if self.options.dedupe
                && self
                    .state
                    .instance()
                    .find_column(&cut.b_tilde, &cut.cost)
                    .is_some()
            {
                self.duplicates += 1;
                continue;
            }
            let column = self
                .state
                .append_column(cut.b_tilde.clone(), cut.cost.clone())?;
            if self.options.verify {
                let inst = self.state.instance();
                if inst.column(column) != cut.b_tilde.as_slice() || inst.cost(column) != &cut.cost {
                    return Err(invariant("appended column differs from the derived cut"));
                }
                self.checks.integrality += 1;
            }
            let mut inequality = cut.inequality();
            inequality.first_label = 1 - self.offset;
            let summary = CutSummary {
                column,
                source_label: cut.source + 1 - self.offset,
                inequality,
                cut: cut.clone(),
            };
            self.sink.event(&TraceEvent::Cut {
                number: self.cuts.len() + 1,
                column: column + 1,
                source_label: summary.source_label,
                inequality: summary.inequality.clone(),
            });
            self.cuts.push(summary);
            appended.push((column, cut));
        }
        if appended.is_empty() {
            return Err(invariant(
                "every derived cut was already in the column pool",
            ));
        }
        if self.options.verify {
            let improving: Vec<usize> = (0..self.state.instance().n())
                .filter(|&j| self.state.reduced_cost(j).is_negative())
                .collect();
            let new: Vec<usize> = appended.iter().map(|(c, _)| *c).collect();
            if improving != new {
                return Err(invariant(
                    "columns other than the new cuts are eligible to enter",
                ));
            }
            self.checks.unique_improving += 1;
        }
        self.pending = appended;
        Ok(())
    }

    fn base_dual(&self) -> Vec<Rational> {
        self.state.dual_solution()[self.offset..].to_vec()
    }

    fn report(&self, status: SolveStatus) -> SolveReport {
        SolveReport {
            mode: self.mode,
            status,
            y_star: None,
            z_star: None,
            pivot_count: self.pivots,
            phase_one_pivots: self.phase_one_pivots,
            cut_count: self.cuts.len(),
            duplicates_skipped: self.duplicates,
            objective_trace: self.objective_trace.clone(),
            optimum_trace: self.optimum_trace.clone(),
            cut_trace: self.cuts.clone(),
            final_dual: self.base_dual(),
            limit: None,
            infeasibility: None,
            caveat: None,
            checks: self.checks,
        }
    }

    fn finish_optimal(&self) -> Result<SolveReport, SolveError> {
        let y: Vec<BigInt> = self.base_dual().iter().map(|q| q.numer().clone()).collect();
        let z = self.base.objective(&y);
        if self.options.verify {
            if !self.base.is_feasible(&y) {
                return Err(invariant(
                    "integral dual solution is infeasible for the original constraints",
                ));
            }
            if self.mode == Mode::Lex
                && self.state.dual_solution()[0] != Rational::from_integer(z.clone())
            {
                return Err(invariant("lifted objective coordinate differs from y'b"));
            }
        }
        let mut report = self.report(SolveStatus::Optimal);
        report.y_star = Some(y);
        report.z_star = Some(z);
        Ok(report)
    }

    fn finish_infeasible(&self) -> SolveReport {
        let mut report = self.report(SolveStatus::IntegerInfeasible);
        report.infeasibility = Some(InfeasibilityEvidence::PrimalUnbounded {
            cuts: self.cuts.len(),
        });
        if self.mode == Mode::Plain {
            report.caveat = Some(
                "detected in plain mode, which has no termination guarantee; the verdict relies on cut validity alone"
                    .into(),
            );
        }
        report
    }

    fn finish_limit(&self, kind: LimitKind) -> SolveReport {
        let mut report = self.report(SolveStatus::LimitReached);
        report.limit = Some(kind);
        if self.mode == Mode::Lex {
            report.caveat = Some(
                "lex mode terminates finitely; hitting a cap here probably indicates a bug".into(),
            );
        }
        report
    }
}
