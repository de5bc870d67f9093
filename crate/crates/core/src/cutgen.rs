//! Gomory cuts for the dual-form problem, packaged as primal columns.
//!
//! Given a basis `β` whose dual solution `ȳ` has a fractional coordinate
//! `ȳ_i`, pick an integer shift `r` with `H_{·i} + r >= 0` (where
//! `H = A_β^{-1}`) and set `b̃ = e_i + A_β r`. Then `ȳ'b̃ = ȳ_i + c_β'r` is
//! fractional and `y'b̃ <= ⌊ȳ'b̃⌋` is valid for every integer feasible `y`
//! while cutting off `ȳ`. On the primal side this is just a new column
//! `b̃` with cost `⌊ȳ'b̃⌋`, whose reduced cost `⌊ȳ'b̃⌋ - ȳ'b̃` lies in
//! `(-1, 0)`.
//!
//! The minimal shift `r_k = -⌊h_ki⌋` gives the strongest such cut.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{dot_int, floor_int, from_big, is_integral, Rational};
use crate::instance::DualFormInstance;
use crate::simplex::SimplexState;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("row index {index} out of range for {m} rows")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("dual coordinate y{} = {value} is already integral", index + 1)]
    NotFractional { index: usize, value: Rational },
    #[error("shift violates r_k >= -floor(h_ki) at k = {}", k + 1)]
    InvalidShift { k: usize },
    #[error("shift has length {found}, expected {expected}")]
    ShiftLength { expected: usize, found: usize },
    #[error("state basis differs from the cut's derivation basis")]
    StaleState,
    #[error("cut invariant violated: {0}")]
    Invariant(String),
}

/// How the integer shift `r` is chosen.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum ShiftPolicy {
    /// `r_k = -⌊h_ki⌋`.
    #[default]
    Minimal,
    /// Caller-supplied shift; must satisfy `r_k >= -⌊h_ki⌋`.
    Explicit(Vec<BigInt>),
}

/// A derived cut stored as a primal column together with its derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutColumn {
    pub b_tilde: Vec<BigInt>,
    pub cost: BigInt,
    /// Source row `i` (0-based).
    pub source: usize,
    pub r: Vec<BigInt>,
    /// `H_{·i} + r`, nonnegative.
    pub w: Vec<Rational>,
    pub parent_y: Vec<Rational>,
    pub parent_basis: Vec<usize>,
}

impl CutColumn {
    /// `ȳ'b̃` at derivation time.
    pub fn parent_activity(&self) -> Rational {
        dot_int(&self.parent_y, &self.b_tilde)
    }

    /// Reduced cost of the new column at derivation time, in `(-1, 0)`.
    pub fn initial_reduced_cost(&self) -> Rational {
        from_big(&self.cost) - self.parent_activity()
    }

    /// The cut as `b̃'y <= cost`, with variables labelled from 1.
    pub fn inequality(&self) -> Inequality {
        Inequality {
            coeffs: self.b_tilde.clone(),
            rhs: self.cost.clone(),
            first_label: 1,
        }
    }

    /// Checks every structural invariant of a derived cut.
    pub fn check(&self, a_beta_columns: &[&[BigInt]]) -> Result<(), CutError> {
        let m = self.b_tilde.len();
        let mut expected: Vec<BigInt> = (0..m)
            .map(|k| {
                if k == self.source {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        for (col, rk) in a_beta_columns.iter().zip(&self.r) {
            for (e, a) in expected.iter_mut().zip(col.iter()) {
                *e += a * rk;
            }
        }
        if expected != self.b_tilde {
            return Err(CutError::Invariant("b_tilde != e_i + A_beta r".into()));
        }
        let activity = self.parent_activity();
        if is_integral(&activity) {
            return Err(CutError::Invariant("parent activity is integral".into()));
        }
        if floor_int(&activity) != self.cost {
            return Err(CutError::Invariant("cost != floor(parent activity)".into()));
        }
        if self.w.iter().any(|x| x.is_negative()) {
            return Err(CutError::Invariant("w has a negative component".into()));
        }
        Ok(())
    }
}

/// `Σ coeffs_k y_k <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
    /// Label of the first variable (`y1` or, for lifted problems, `y0`).
    pub first_label: usize,
}

impl Inequality {
    pub fn lhs(&self, y: &[BigInt]) -> BigInt {
        self.coeffs
            .iter()
            .zip(y)
            .fold(BigInt::zero(), |acc, (a, y)| acc + a * y)
    }

    pub fn lhs_rational(&self, y: &[Rational]) -> Rational {
        dot_int(y, &self.coeffs)
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let label = k + self.first_label;
            let mag = a.abs();
            match (first, a.is_negative()) {
                (true, false) => {}
                (true, true) => f.write_str("-")?,
                (false, false) => f.write_str(" + ")?,
                (false, true) => f.write_str(" - ")?,
            }
            if mag.is_one() {
                write!(f, "y{label}")?;
            } else {
                write!(f, "{mag} y{label}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " <= {}", self.rhs)
    }
}

/// Minimal shift `r_k = -⌊h_k⌋`; the resulting `h + r` lies in `[0, 1)^m`.
pub fn minimal_r(h_col: &[Rational]) -> Vec<BigInt> {
    h_col.iter().map(|h| -floor_int(h)).collect()
}

/// Derives the cut column for fractional dual coordinate `i` (0-based).
pub fn derive_cut_column(
    state: &SimplexState,
    i: usize,
    policy: &ShiftPolicy,
) -> Result<CutColumn, CutError> {
    let m = state.m();
    if i >= m {
        return Err(CutError::IndexOutOfRange { index: i, m });
    }
    let y = state.dual_solution();
    if is_integral(&y[i]) {
        return Err(CutError::NotFractional {
            index: i,
            value: y[i].clone(),
        });
    }
    let h_col: Vec<Rational> = state.inverse().iter().map(|row| row[i].clone()).collect();
    let r = match policy {
        ShiftPolicy::Minimal => minimal_r(&h_col),
        ShiftPolicy::Explicit(r) => {
            if r.len() != m {
                return Err(CutError::ShiftLength {
                    expected: m,
                    found: r.len(),
                });
            }
            if let Some(k) = (0..m).find(|&k| r[k] < -floor_int(&h_col[k])) {
                return Err(CutError::InvalidShift { k });
            }
            r.clone()
        }
    };
    let a_beta = state.basis_columns();
    let mut b_tilde: Vec<BigInt> = (0..m)
        .map(|k| {
            if k == i {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
        .collect();
    for (col, rk) in a_beta.iter().zip(&r) {
        if rk.is_zero() {
            continue;
        }
        for (b, a) in b_tilde.iter_mut().zip(col.iter()) {
            *b += a * rk;
        }
    }
    let w = h_col
        .iter()
        .zip(&r)
        .map(|(h, rk)| h + from_big(rk))
        .collect();
    let cost = floor_int(&dot_int(y, &b_tilde));
    let cut = CutColumn {
        b_tilde,
        cost,
        source: i,
        r,
        w,
        parent_y: y.to_vec(),
        parent_basis: state.basis().to_vec(),
    };
    cut.check(&a_beta)?;
    Ok(cut)
}

/// The cut rewritten as `y_i <= ⌊ȳ_i⌋ + (c_β' - y'A_β) r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReexpressedCut {
    pub source: usize,
    pub floor_y: BigInt,
    pub basis_columns: Vec<Vec<BigInt>>,
    pub basis_costs: Vec<BigInt>,
    pub r: Vec<BigInt>,
}

impl ReexpressedCut {
    /// `⌊ȳ_i⌋ + (c_β' - y'A_β) r` at `y`.
    pub fn rhs_at(&self, y: &[Rational]) -> Rational {
        self.rhs_with_shift(y, &self.r)
    }

    /// Same right-hand side with another shift, for comparing cuts.
    pub fn rhs_with_shift(&self, y: &[Rational], r: &[BigInt]) -> Rational {
        self.basis_columns
            .iter()
            .zip(&self.basis_costs)
            .zip(r)
            .fold(from_big(&self.floor_y), |acc, ((col, c), rk)| {
                acc + (from_big(c) - dot_int(y, col)) * from_big(rk)
            })
    }

    pub fn holds_at(&self, y: &[Rational]) -> bool {
        y[self.source] <= self.rhs_at(y)
    }
}

/// Re-expresses a cut relative to the basis it was derived from.
pub fn cut_as_inequality(
    cut: &CutColumn,
    state: &SimplexState,
) -> Result<ReexpressedCut, CutError> {
    if state.basis() != cut.parent_basis.as_slice() {
        return Err(CutError::StaleState);
    }
    Ok(ReexpressedCut {
        source: cut.source,
        floor_y: floor_int(&cut.parent_y[cut.source]),
        basis_columns: state
            .basis_columns()
            .into_iter()
            .map(<[BigInt]>::to_vec)
            .collect(),
        basis_costs: state.basis_costs(),
        r: cut.r.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutCheck {
    Satisfied,
    Violated,
}

/// Whether integer point `y` satisfies `y'b̃ <= cost`.
pub fn validate_cut(instance: &DualFormInstance, cut: &CutColumn, y: &[BigInt]) -> CutCheck {
    assert_eq!(y.len(), instance.m(), "point dimension");
    if cut.inequality().lhs(y) <= cut.cost {
        CutCheck::Satisfied
    } else {
        CutCheck::Violated
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::simplex::{factor_basis, Mode};
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn worked() -> DualFormInstance {
        DualFormInstance::from_i64(
            &[&[7, 8, -1, 1, 3], &[5, 6, -1, 2, 1]],
            &[26, 19],
            &[126, 141, -10, 5, 67],
        )
        .unwrap()
    }

    fn second_state() -> SimplexState {
        let mut inst = worked();
        inst.push_column(big(&[4, 3]), BigInt::from(70)).unwrap();
        factor_basis(inst, vec![4, 5], Mode::Plain).unwrap()
    }

    #[test]
    fn minimal_shifts() {
        assert_eq!(minimal_r(&[int(3), rat(-5, 2)]), big(&[-3, 3]));
        assert_eq!(minimal_r(&[int(-4), rat(7, 2)]), big(&[4, -3]));
        let h = [int(2), int(-1)];
        let r = minimal_r(&h);
        assert_eq!(r, big(&[-2, 1]));
        assert!(h.iter().zip(&r).all(|(h, r)| (h + from_big(r)).is_zero()));
    }

    #[test]
    fn first_round_cuts() {
        let s = factor_basis(worked(), vec![0, 1], Mode::Plain).unwrap();
        let c1 = derive_cut_column(&s, 0, &ShiftPolicy::Minimal).unwrap();
        assert_eq!(
            (c1.b_tilde.clone(), c1.cost.clone()),
            (big(&[4, 3]), BigInt::from(70))
        );
        assert_eq!(c1.r, big(&[-3, 3]));
        assert_eq!(c1.parent_activity(), rat(141, 2));
        assert_eq!(c1.initial_reduced_cost(), rat(-1, 2));
        assert_eq!(c1.inequality().to_string(), "4 y1 + 3 y2 <= 70");

        let c2 = derive_cut_column(&s, 1, &ShiftPolicy::Minimal).unwrap();
        assert_eq!(c2.r, big(&[4, -3]));
        assert_eq!((c2.b_tilde, c2.cost), (big(&[4, 3]), BigInt::from(70)));
    }

    #[test]
    fn second_round_cuts() {
        let s = second_state();
        assert_eq!(s.dual_solution(), &[rat(131, 5), rat(-58, 5)]);
        let c1 = derive_cut_column(&s, 0, &ShiftPolicy::Minimal).unwrap();
        assert_eq!(
            (c1.r.clone(), c1.b_tilde.clone(), c1.cost.clone()),
            (big(&[0, 1]), big(&[5, 3]), BigInt::from(96))
        );
        assert_eq!(c1.parent_activity(), rat(481, 5));
        let c2 = derive_cut_column(&s, 1, &ShiftPolicy::Minimal).unwrap();
        assert_eq!(
            (c2.r.clone(), c2.b_tilde.clone(), c2.cost.clone()),
            (big(&[1, 0]), big(&[3, 2]), BigInt::from(55))
        );
        assert_eq!(c2.parent_activity(), rat(277, 5));
        assert_eq!(c1.inequality().to_string(), "5 y1 + 3 y2 <= 96");
        assert_eq!(c2.inequality().to_string(), "3 y1 + 2 y2 <= 55");
    }

    #[test]
    fn derivation_errors() {
        let inst = worked().with_objective(big(&[0, 0]));
        let mut inst2 = inst.clone();
        inst2.push_column(big(&[4, 3]), BigInt::from(70)).unwrap();
        let s = factor_basis(worked(), vec![0, 1], Mode::Plain).unwrap();
        assert!(matches!(
            derive_cut_column(&s, 2, &ShiftPolicy::Minimal),
            Err(CutError::IndexOutOfRange { .. })
        ));
        assert_eq!(
            derive_cut_column(&s, 0, &ShiftPolicy::Explicit(big(&[-4, 3]))).unwrap_err(),
            CutError::InvalidShift { k: 0 }
        );
        assert!(matches!(
            derive_cut_column(&s, 0, &ShiftPolicy::Explicit(big(&[1]))),
            Err(CutError::ShiftLength { .. })
        ));

        let mut full = worked();
        for (col, cost) in [([4, 3], 70), ([5, 3], 96), ([3, 2], 55)] {
            full.push_column(big(&col), BigInt::from(cost)).unwrap();
        }
        let s = factor_basis(full, vec![7, 5], Mode::Plain).unwrap();
        assert!(matches!(
            derive_cut_column(&s, 0, &ShiftPolicy::Minimal),
            Err(CutError::NotFractional { .. })
        ));
    }

    #[test]
    fn explicit_larger_shift_is_weaker() {
        let s = factor_basis(worked(), vec![0, 1], Mode::Plain).unwrap();
        let weak = derive_cut_column(&s, 0, &ShiftPolicy::Explicit(big(&[-2, 3]))).unwrap();
        // b̃ = e1 + 7·(-2) + 8·3 ... = (11, 8), cost ⌊ȳ'b̃⌋
        assert_eq!(weak.b_tilde, big(&[11, 8]));
        assert_eq!(weak.cost, BigInt::from(196));
        assert!(weak.w.iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn reexpressed_form() {
        let s = factor_basis(worked(), vec![0, 1], Mode::Plain).unwrap();
        let cut = derive_cut_column(&s, 0, &ShiftPolicy::Minimal).unwrap();
        let re = cut_as_inequality(&cut, &s).unwrap();
        let ybar = s.dual_solution();
        assert!(!re.holds_at(ybar));
        assert_eq!(re.rhs_at(ybar), int(25));
        assert!(cut.inequality().lhs_rational(ybar) > from_big(&cut.cost));
        assert_eq!(cut.inequality().lhs_rational(ybar), rat(141, 2));
        assert_eq!(
            cut_as_inequality(&cut, &second_state()).unwrap_err(),
            CutError::StaleState
        );
    }

    #[test]
    fn zero_shift_cut_is_rounding() {
        // H_{·1} = (1/2, 0) gives r = 0, so the cut is y1 <= ⌊ȳ1⌋
        let inst =
            DualFormInstance::from_i64(&[&[2, 0, 1, 0], &[0, 2, 0, 1]], &[1, 1], &[3, 5, 1, 2])
                .unwrap();
        let s = factor_basis(inst, vec![0, 3], Mode::Plain).unwrap();
        assert_eq!(s.dual_solution(), &[rat(3, 2), int(2)]);
        let cut = derive_cut_column(&s, 0, &ShiftPolicy::Minimal).unwrap();
        assert_eq!(cut.r, big(&[0, 0]));
        assert_eq!(cut.inequality().to_string(), "y1 <= 1");
    }

    #[test]
    fn validation_examples() {
        let inst = worked();
        let s = factor_basis(worked(), vec![0, 1], Mode::Plain).unwrap();
        let c70 = derive_cut_column(&s, 0, &ShiftPolicy::Minimal).unwrap();
        assert_eq!(
            validate_cut(&inst, &c70, &big(&[25, -10])),
            CutCheck::Satisfied
        );
        assert_eq!(
            validate_cut(&inst, &c70, &big(&[26, -10])),
            CutCheck::Violated
        );
        assert!(!inst.is_feasible(&big(&[26, -10])));
        let c55 = derive_cut_column(&second_state(), 1, &ShiftPolicy::Minimal).unwrap();
        assert_eq!(
            validate_cut(&inst, &c55, &big(&[25, -10])),
            CutCheck::Satisfied
        );
    }

    #[test]
    fn display_signs() {
        let ineq = Inequality {
            coeffs: big(&[-1, 0, 2, -3]),
            rhs: BigInt::from(-4),
            first_label: 0,
        };
        assert_eq!(ineq.to_string(), "-y0 + 2 y2 - 3 y3 <= -4");
    }

    proptest! {
        #![proptest_config(ProptestConfig { max_global_rejects: 20_000, ..ProptestConfig::default() })]

        #[test]
        fn minimal_shift_dominates(
            u in 0i64..160, v in 0i64..160,
            d1 in 0i64..5, d2 in 0i64..5, source in 0usize..2,
        ) {
            let inst = worked();
            let y = vec![int(15) + rat(u, 8), int(-20) + rat(v, 8)];
            prop_assume!(inst.is_feasible_rational(&y));
            let s = factor_basis(worked(), vec![0, 1], Mode::Plain).unwrap();
            let cut = derive_cut_column(&s, source, &ShiftPolicy::Minimal).unwrap();
            let re = cut_as_inequality(&cut, &s).unwrap();
            let hat: Vec<BigInt> = cut.r.iter().zip([d1, d2]).map(|(r, d)| r + d).collect();
            prop_assert!(re.rhs_at(&y) <= re.rhs_with_shift(&y, &hat));
            // both forms describe the same inequality
            let raw = cut.inequality().lhs_rational(&y) - from_big(&cut.cost);
            prop_assert_eq!(raw, &y[source] - re.rhs_at(&y));
        }
    }
}
