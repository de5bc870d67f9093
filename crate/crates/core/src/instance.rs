//! Integer data of a dual-form problem `max y'b  s.t.  y'A <= c', y integer`.
//!
//! The matrix is stored by columns because the primal side only ever grows
//! by appending columns (one per derived cut).

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::{from_big, Rational};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("dimension mismatch in {field}: expected {expected}, found {found}")]
    Dimension {
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("constraint matrix has rank {rank}, needs full row rank {m}")]
    Rank { rank: usize, m: usize },
    #[error("instance must have at least one row")]
    NoRows,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualFormInstance {
    name: Option<String>,
    m: usize,
    original_n: usize,
    columns: Vec<Vec<BigInt>>,
    costs: Vec<BigInt>,
    b: Vec<BigInt>,
}

impl DualFormInstance {
    /// Builds an instance from row-major `A`, rejecting inconsistent
    /// dimensions and rank-deficient matrices.
    pub fn new(
        a_rows: Vec<Vec<BigInt>>,
        b: Vec<BigInt>,
        c: Vec<BigInt>,
    ) -> Result<Self, InstanceError> {
        let m = a_rows.len();
        if m == 0 {
            return Err(InstanceError::NoRows);
        }
        let n = c.len();
        for (i, row) in a_rows.iter().enumerate() {
            if row.len() != n {
                return Err(InstanceError::Dimension {
                    field: format!("A row {}", i + 1),
                    expected: n,
                    found: row.len(),
                });
            }
        }
        if b.len() != m {
            return Err(InstanceError::Dimension {
                field: "b".into(),
                expected: m,
                found: b.len(),
            });
        }
        let as_rat: Vec<Vec<Rational>> = a_rows
            .iter()
            .map(|r| r.iter().map(from_big).collect())
            .collect();
        let rank = linalg::rank(&as_rat);
        if rank < m {
            return Err(InstanceError::Rank { rank, m });
        }
        let columns = (0..n)
            .map(|j| a_rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Ok(DualFormInstance {
            name: None,
            m,
            original_n: n,
            columns,
            costs: c,
            b,
        })
    }

    pub fn from_i64(a_rows: &[&[i64]], b: &[i64], c: &[i64]) -> Result<Self, InstanceError> {
        Self::new(
            a_rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            b.iter().map(|&x| BigInt::from(x)).collect(),
            c.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Current column count, appended columns included.
    pub fn n(&self) -> usize {
        self.columns.len()
    }

    /// Column count at construction time.
    pub fn original_n(&self) -> usize {
        self.original_n
    }

    pub fn column(&self, j: usize) -> &[BigInt] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.columns
    }

    pub fn cost(&self, j: usize) -> &BigInt {
        &self.costs[j]
    }

    pub fn costs(&self) -> &[BigInt] {
        &self.costs
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    /// Row-major copy of the current `A`.
    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.m)
            .map(|i| self.columns.iter().map(|col| col[i].clone()).collect())
            .collect()
    }

    /// Same constraints, different objective.
    pub fn with_objective(&self, b: Vec<BigInt>) -> Self {
        assert_eq!(b.len(), self.m, "objective length");
        DualFormInstance { b, ..self.clone() }
    }

    /// Appends a column with its cost and returns its (0-based) index.
    pub fn push_column(
        &mut self,
        column: Vec<BigInt>,
        cost: BigInt,
    ) -> Result<usize, InstanceError> {
        if column.len() != self.m {
            return Err(InstanceError::Dimension {
                field: "appended column".into(),
                expected: self.m,
                found: column.len(),
            });
        }
        self.columns.push(column);
        self.costs.push(cost);
        Ok(self.columns.len() - 1)
    }

    pub(crate) fn replace_costs(&mut self, costs: Vec<BigInt>) {
        assert_eq!(costs.len(), self.columns.len(), "cost vector length");
        self.costs = costs;
    }

    pub fn find_column(&self, column: &[BigInt], cost: &BigInt) -> Option<usize> {
        (0..self.n()).find(|&j| self.columns[j] == column && &self.costs[j] == cost)
    }

    /// `y'A_j` for an integer point.
    pub fn column_activity(&self, j: usize, y: &[BigInt]) -> BigInt {
        self.columns[j]
            .iter()
            .zip(y)
            .fold(BigInt::zero(), |acc, (a, y)| acc + a * y)
    }

    /// `y'A <= c'` over every current column.
    pub fn is_feasible(&self, y: &[BigInt]) -> bool {
        y.len() == self.m && (0..self.n()).all(|j| self.column_activity(j, y) <= self.costs[j])
    }

    pub fn is_feasible_rational(&self, y: &[Rational]) -> bool {
        y.len() == self.m
            && (0..self.n())
                .all(|j| crate::exact::dot_int(y, &self.columns[j]) <= from_big(&self.costs[j]))
    }

    pub fn objective(&self, y: &[BigInt]) -> BigInt {
        self.b
            .iter()
            .zip(y)
            .fold(BigInt::zero(), |acc, (b, y)| acc + b * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> DualFormInstance {
        DualFormInstance::from_i64(
            &[&[7, 8, -1, 1, 3], &[5, 6, -1, 2, 1]],
            &[26, 19],
            &[126, 141, -10, 5, 67],
        )
        .unwrap()
    }

    #[test]
    fn loads_worked_example() {
        let inst = worked();
        assert_eq!((inst.m(), inst.n()), (2, 5));
        assert_eq!(inst.column(0), &[BigInt::from(7), BigInt::from(5)]);
        assert!(inst.is_feasible(&[BigInt::from(25), BigInt::from(-10)]));
        assert!(!inst.is_feasible(&[BigInt::from(26), BigInt::from(-10)]));
        assert_eq!(
            inst.objective(&[BigInt::from(25), BigInt::from(-10)]),
            BigInt::from(460)
        );
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            DualFormInstance::from_i64(&[&[1, 0], &[0, 1]], &[1, 2, 3], &[0, 0]),
            Err(InstanceError::Dimension { .. })
        ));
        assert!(matches!(
            DualFormInstance::from_i64(&[&[1, 2], &[2, 4]], &[1, 1], &[0, 0]),
            Err(InstanceError::Rank { rank: 1, m: 2 })
        ));
        assert!(matches!(
            DualFormInstance::from_i64(&[&[1, 2], &[2]], &[1, 1], &[0, 0]),
            Err(InstanceError::Dimension { .. })
        ));
    }

    #[test]
    fn append_and_find() {
        let mut inst = worked();
        let j = inst
            .push_column(vec![BigInt::from(4), BigInt::from(3)], BigInt::from(70))
            .unwrap();
        assert_eq!(j, 5);
        assert_eq!(inst.original_n(), 5);
        assert_eq!(
            inst.find_column(&[BigInt::from(4), BigInt::from(3)], &BigInt::from(70)),
            Some(5)
        );
        assert!(inst
            .push_column(vec![BigInt::from(1)], BigInt::from(0))
            .is_err());
    }
}
