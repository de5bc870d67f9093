//! Dense Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::exact::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse of a square matrix, `None` when singular.
pub fn invert(a: &[Vec<Rational>]) -> Option<Matrix> {
    let n = a.len();
    let mut work: Matrix = a.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot);
        inv.swap(col, pivot);
        let p = work[col][col].clone();
        if !p.is_one() {
            for x in work[col].iter_mut().chain(inv[col].iter_mut()) {
                *x /= &p;
            }
        }
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let f = work[r][col].clone();
            for k in 0..n {
                if !work[col][k].is_zero() {
                    let t = &f * &work[col][k];
                    work[r][k] -= t;
                }
                if !inv[col][k].is_zero() {
                    let t = &f * &inv[col][k];
                    inv[r][k] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Row rank by forward elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut work: Matrix = rows.to_vec();
    let width = work.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..work.len()).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(rank, pivot);
        for r in rank + 1..work.len() {
            if work[r][col].is_zero() {
                continue;
            }
            let f = &work[r][col] / &work[rank][col];
            let (top, bottom) = work.split_at_mut(r);
            for (x, p) in bottom[0][col..width].iter_mut().zip(&top[rank][col..width]) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

pub fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| crate::exact::dot(row, v)).collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Matrix {
    let inner = b.len();
    let width = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..width)
                .map(|j| {
                    (0..inner)
                        .filter(|&k| !row[k].is_zero() && !b[k][j].is_zero())
                        .fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

pub fn is_identity(a: &[Vec<Rational>]) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.len() == a.len()
            && row
                .iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}
