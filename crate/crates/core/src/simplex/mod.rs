//! Revised primal simplex over exact rationals on the standard-form primal
//! `min c'x  s.t.  Ax = rhs, x >= 0`.
//!
//! Two right-hand sides are supported. [`Mode::Plain`] uses the integer
//! vector `b`. [`Mode::Lex`] replaces it by `(ε^0, ε^1, …, ε^(m-1))`, so the
//! basic value of row `l` is row `l` of the basis inverse read as a
//! [`LexValue`]. Every lex basic solution is non-degenerate and every pivot
//! strictly lex-decreases the dual solution.
//!
//! The basis inverse is kept explicitly and updated by elementary row
//! operations; it is rebuilt from scratch every `refactor_every` pivots.

mod phase_one;
mod relaxation;

pub use phase_one::phase_one;
pub use relaxation::{relaxation_is_nonempty, solve_relaxation, RelaxationOutcome};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{dot_int, from_big, LexValue, Rational};
use crate::instance::{DualFormInstance, InstanceError};
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Plain,
    Lex,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Lex => "lex",
        }
    }
}

/// Pricing rule for the entering column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EnteringRule {
    /// Most negative reduced cost, ties to the lowest column index.
    #[default]
    Dantzig,
    /// Lowest index with negative reduced cost; plain-mode ratio ties go to
    /// the lowest basic column index.
    Bland,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("basis matrix is singular")]
    SingularBasis,
    #[error("zero pivot element at basis position {position}")]
    PivotError { position: usize },
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("primal problem is infeasible")]
    PrimalInfeasible,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplexConfig {
    /// Rebuild the inverse from scratch after this many pivots.
    pub refactor_every: usize,
    /// Check `inv * A_β = I` after every k-th pivot; 0 disables.
    pub verify_every: usize,
}

impl Default for SimplexConfig {
    fn default() -> Self {
        SimplexConfig {
            refactor_every: 50,
            verify_every: if cfg!(debug_assertions) { 1 } else { 50 },
        }
    }
}

/// Result of a ratio test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatioOutcome {
    /// Basis position (0-based) of the blocking row.
    Leave(usize),
    Unbounded,
}

/// Everything a caller may want to audit about one pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotRecord {
    pub enter: usize,
    pub leave_position: usize,
    pub leaving: usize,
    pub reduced_cost: Rational,
    pub direction: Vec<Rational>,
    /// Row `leave_position` of the inverse before the pivot.
    pub leave_row: Vec<Rational>,
    pub y_before: Vec<Rational>,
    pub y_after: Vec<Rational>,
}

impl PivotRecord {
    pub fn pivot_element(&self) -> &Rational {
        &self.direction[self.leave_position]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Optimal,
    Unbounded { entering: usize },
    Pivoted(Box<PivotRecord>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplexOutcome {
    Optimal { pivots: usize },
    Unbounded { entering: usize, pivots: usize },
    IterationLimit { pivots: usize },
}

#[derive(Debug, Clone)]
pub struct SimplexState {
    instance: DualFormInstance,
    basis: Vec<usize>,
    inv: Matrix,
    mode: Mode,
    y: Vec<Rational>,
    x_plain: Vec<Rational>,
    pivots: usize,
    since_refactor: usize,
    config: SimplexConfig,
}

/// Factors `A_β` from scratch and caches the primal and dual solutions.
pub fn factor_basis(
    instance: DualFormInstance,
    basis: Vec<usize>,
    mode: Mode,
) -> Result<SimplexState, SimplexError> {
    SimplexState::factor(instance, basis, mode, SimplexConfig::default())
}

impl SimplexState {
    pub fn factor(
        instance: DualFormInstance,
        basis: Vec<usize>,
        mode: Mode,
        config: SimplexConfig,
    ) -> Result<Self, SimplexError> {
        let m = instance.m();
        if basis.len() != m {
            return Err(SimplexError::InvalidBasis(format!(
                "{} indices for {m} rows",
                basis.len()
            )));
        }
        for (k, &j) in basis.iter().enumerate() {
            if j >= instance.n() {
                return Err(SimplexError::InvalidBasis(format!(
                    "column {} does not exist",
                    j + 1
                )));
            }
            if basis[..k].contains(&j) {
                return Err(SimplexError::InvalidBasis(format!(
                    "column {} repeated",
                    j + 1
                )));
            }
        }
        let inv = invert_basis(&instance, &basis)?;
        let mut state = SimplexState {
            instance,
            basis,
            inv,
            mode,
            y: Vec::new(),
            x_plain: Vec::new(),
            pivots: 0,
            since_refactor: 0,
            config,
        };
        state.refresh_caches();
        Ok(state)
    }

    pub fn set_config(&mut self, config: SimplexConfig) {
        self.config = config;
    }

    fn refresh_caches(&mut self) {
        let m = self.m();
        self.y = (0..m)
            .map(|k| {
                self.basis
                    .iter()
                    .enumerate()
                    .filter(|(_, &j)| !self.instance.cost(j).is_zero())
                    .fold(Rational::zero(), |acc, (l, &j)| {
                        acc + from_big(self.instance.cost(j)) * &self.inv[l][k]
                    })
            })
            .collect();
        self.x_plain = match self.mode {
            Mode::Plain => self
                .inv
                .iter()
                .map(|row| dot_int(row, self.instance.b()))
                .collect(),
            Mode::Lex => Vec::new(),
        };
    }

    pub fn instance(&self) -> &DualFormInstance {
        &self.instance
    }

    pub fn into_instance(self) -> DualFormInstance {
        self.instance
    }

    pub fn m(&self) -> usize {
        self.instance.m()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn is_basic(&self, j: usize) -> bool {
        self.basis.contains(&j)
    }

    /// The maintained `A_β^{-1}`.
    pub fn inverse(&self) -> &Matrix {
        &self.inv
    }

    /// Total pivots performed on this state.
    pub fn pivot_count(&self) -> usize {
        self.pivots
    }

    /// `ȳ' = c_β' A_β^{-1}`.
    pub fn dual_solution(&self) -> &[Rational] {
        &self.y
    }

    /// The dual objective `ȳ'ε` of lex mode, i.e. `ȳ` as a [`LexValue`].
    pub fn lex_dual(&self) -> LexValue {
        LexValue::new(self.y.clone())
    }

    /// Plain-mode objective `ȳ'b = c_β' x̄_β`.
    pub fn objective(&self) -> Rational {
        dot_int(&self.y, self.instance.b())
    }

    /// Plain-mode basic values `A_β^{-1} b`; empty in lex mode.
    pub fn basic_values(&self) -> &[Rational] {
        &self.x_plain
    }

    /// Lex-mode basic value of position `l`.
    pub fn basic_value_lex(&self, l: usize) -> LexValue {
        LexValue::new(self.inv[l].clone())
    }

    /// Primal feasibility for the active right-hand side.
    pub fn is_primal_feasible(&self) -> bool {
        match self.mode {
            Mode::Plain => self.x_plain.iter().all(|x| !x.is_negative()),
            Mode::Lex => (0..self.m()).all(|l| self.basic_value_lex(l).is_positive()),
        }
    }

    /// Rows of `A_β` as integers, in basis order by column.
    pub fn basis_columns(&self) -> Vec<&[BigInt]> {
        self.basis
            .iter()
            .map(|&j| self.instance.column(j))
            .collect()
    }

    pub fn basis_costs(&self) -> Vec<BigInt> {
        self.basis
            .iter()
            .map(|&j| self.instance.cost(j).clone())
            .collect()
    }

    /// `c_j - ȳ'A_j`; exactly zero for basic columns.
    pub fn reduced_cost(&self, j: usize) -> Rational {
        if self.is_basic(j) {
            return Rational::zero();
        }
        from_big(self.instance.cost(j)) - dot_int(&self.y, self.instance.column(j))
    }

    /// `A_β^{-1} A_j`.
    pub fn direction(&self, j: usize) -> Vec<Rational> {
        self.inv
            .iter()
            .map(|row| dot_int(row, self.instance.column(j)))
            .collect()
    }

    pub fn append_column(
        &mut self,
        column: Vec<BigInt>,
        cost: BigInt,
    ) -> Result<usize, SimplexError> {
        Ok(self.instance.push_column(column, cost)?)
    }

    pub fn choose_entering(&self, rule: EnteringRule) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for j in 0..self.instance.n() {
            if self.is_basic(j) {
                continue;
            }
            let rc = self.reduced_cost(j);
            if !rc.is_negative() {
                continue;
            }
            match rule {
                EnteringRule::Bland => return Some(j),
                EnteringRule::Dantzig => {
                    if best.as_ref().is_none_or(|(_, b)| rc < *b) {
                        best = Some((j, rc));
                    }
                }
            }
        }
        best.map(|(j, _)| j)
    }

    /// Minimum-ratio test over rows with positive direction entries.
    ///
    /// In lex mode the quotients are the inverse rows divided by the
    /// direction entry; the minimizer is unique because those rows are
    /// linearly independent, and a tie is reported as an invariant violation.
    pub fn ratio_test(
        &self,
        direction: &[Rational],
        rule: EnteringRule,
    ) -> Result<RatioOutcome, SimplexError> {
        if direction.len() != self.m() {
            return Err(SimplexError::ContractViolation(format!(
                "direction has length {}, expected {}",
                direction.len(),
                self.m()
            )));
        }
        let candidates = direction
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_positive());
        match self.mode {
            Mode::Plain => {
                let mut best: Option<(usize, Rational)> = None;
                for (l, d) in candidates {
                    let q = &self.x_plain[l] / d;
                    let better = match &best {
                        None => true,
                        Some((bl, bq)) => match q.cmp(bq) {
                            Ordering::Less => true,
                            Ordering::Equal => {
                                rule == EnteringRule::Bland && self.basis[l] < self.basis[*bl]
                            }
                            Ordering::Greater => false,
                        },
                    };
                    if better {
                        best = Some((l, q));
                    }
                }
                Ok(best.map_or(RatioOutcome::Unbounded, |(l, _)| RatioOutcome::Leave(l)))
            }
            Mode::Lex => {
                let mut best: Option<(usize, LexValue)> = None;
                for (l, d) in candidates {
                    let q = self.basic_value_lex(l).scaled(&d.recip());
                    match &best {
                        None => best = Some((l, q)),
                        Some((bl, bq)) => match q.lex_cmp(bq).expect("equal lengths") {
                            Ordering::Less => best = Some((l, q)),
                            Ordering::Equal => {
                                return Err(SimplexError::InvariantViolation(format!(
                                    "lex ratio tie between positions {} and {}",
                                    bl + 1,
                                    l + 1
                                )))
                            }
                            Ordering::Greater => {}
                        },
                    }
                }
                Ok(best.map_or(RatioOutcome::Unbounded, |(l, _)| RatioOutcome::Leave(l)))
            }
        }
    }

    /// Brings column `enter` into the basis at position `leave`.
    pub fn pivot(&mut self, enter: usize, leave: usize) -> Result<PivotRecord, SimplexError> {
        let m = self.m();
        if enter >= self.instance.n() || leave >= m {
            return Err(SimplexError::ContractViolation(format!(
                "pivot ({}, {}) out of range",
                enter + 1,
                leave + 1
            )));
        }
        if self
            .basis
            .iter()
            .enumerate()
            .any(|(l, &j)| j == enter && l != leave)
        {
            return Err(SimplexError::ContractViolation(format!(
                "column {} already basic",
                enter + 1
            )));
        }
        let direction = self.direction(enter);
        let p = direction[leave].clone();
        if p.is_zero() {
            return Err(SimplexError::PivotError { position: leave });
        }
        let reduced_cost = self.reduced_cost(enter);
        let leave_row = self.inv[leave].clone();
        let y_before = self.y.clone();

        let pivot_row: Vec<Rational> = leave_row.iter().map(|x| x / &p).collect();
        for (k, row) in self.inv.iter_mut().enumerate() {
            if k == leave || direction[k].is_zero() {
                continue;
            }
            for (x, pr) in row.iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *x -= &direction[k] * pr;
                }
            }
        }
        self.inv[leave] = pivot_row;
        let leaving = std::mem::replace(&mut self.basis[leave], enter);
        self.pivots += 1;
        self.since_refactor += 1;

        if self.config.refactor_every > 0 && self.since_refactor >= self.config.refactor_every {
            self.refactor()?;
        } else if self.config.verify_every > 0
            && self.pivots.is_multiple_of(self.config.verify_every)
        {
            self.verify_inverse()?;
        }
        self.refresh_caches();

        Ok(PivotRecord {
            enter,
            leave_position: leave,
            leaving,
            reduced_cost,
            direction,
            leave_row,
            y_before,
            y_after: self.y.clone(),
        })
    }

    /// Rebuilds the inverse from scratch, checking it against the
    /// maintained one.
    pub fn refactor(&mut self) -> Result<(), SimplexError> {
        let fresh = invert_basis(&self.instance, &self.basis)?;
        if fresh != self.inv {
            return Err(SimplexError::InvariantViolation(
                "maintained inverse differs from refactored inverse".into(),
            ));
        }
        self.inv = fresh;
        self.since_refactor = 0;
        Ok(())
    }

    /// Checks `inv * A_β = I` exactly.
    pub fn verify_inverse(&self) -> Result<(), SimplexError> {
        let a_beta = basis_matrix(&self.instance, &self.basis);
        if !linalg::is_identity(&linalg::mat_mul(&self.inv, &a_beta)) {
            return Err(SimplexError::InvariantViolation("inv * A_beta != I".into()));
        }
        Ok(())
    }

    /// One primal simplex iteration.
    pub fn step(&mut self, rule: EnteringRule) -> Result<StepOutcome, SimplexError> {
        let Some(enter) = self.choose_entering(rule) else {
            return Ok(StepOutcome::Optimal);
        };
        let direction = self.direction(enter);
        let leave = match self.ratio_test(&direction, rule)? {
            RatioOutcome::Unbounded => return Ok(StepOutcome::Unbounded { entering: enter }),
            RatioOutcome::Leave(l) => l,
        };
        let record = self.pivot(enter, leave)?;
        if self.mode == Mode::Lex {
            let before = LexValue::new(record.y_before.clone());
            if self.lex_dual().lex_cmp(&before).expect("equal lengths") != Ordering::Less {
                return Err(SimplexError::InvariantViolation(format!(
                    "lex pivot {} did not strictly decrease the dual solution",
                    self.pivots
                )));
            }
        }
        Ok(StepOutcome::Pivoted(Box::new(record)))
    }

    /// Runs primal simplex from a feasible basis until optimal, unbounded,
    /// or `max_pivots` pivots have been made in this call.
    pub fn primal_simplex(
        &mut self,
        rule: EnteringRule,
        max_pivots: Option<usize>,
    ) -> Result<SimplexOutcome, SimplexError> {
        if !self.is_primal_feasible() {
            return Err(SimplexError::ContractViolation(
                "starting basis is not primal feasible".into(),
            ));
        }
        let mut pivots = 0;
        loop {
            if max_pivots.is_some_and(|cap| pivots >= cap) {
                if self.choose_entering(rule).is_none() {
                    return Ok(SimplexOutcome::Optimal { pivots });
                }
                return Ok(SimplexOutcome::IterationLimit { pivots });
            }
            match self.step(rule)? {
                StepOutcome::Optimal => return Ok(SimplexOutcome::Optimal { pivots }),
                StepOutcome::Unbounded { entering } => {
                    return Ok(SimplexOutcome::Unbounded { entering, pivots })
                }
                StepOutcome::Pivoted(_) => pivots += 1,
            }
        }
    }

    /// Optimality certificate: nonnegative reduced costs and primal feasibility.
    pub fn is_optimal(&self) -> bool {
        self.is_primal_feasible()
            && (0..self.instance.n()).all(|j| !self.reduced_cost(j).is_negative())
    }
}

fn basis_matrix(instance: &DualFormInstance, basis: &[usize]) -> Matrix {
    (0..instance.m())
        .map(|i| {
            basis
                .iter()
                .map(|&j| from_big(&instance.column(j)[i]))
                .collect()
        })
        .collect()
}

fn invert_basis(instance: &DualFormInstance, basis: &[usize]) -> Result<Matrix, SimplexError> {
    linalg::invert(&basis_matrix(instance, basis)).ok_or(SimplexError::SingularBasis)
}
