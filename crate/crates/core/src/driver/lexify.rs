use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::instance::DualFormInstance;

/// A dual-form instance with its objective moved into the constraints.
///
/// The lifted problem has variables `(y0, y)` and constraints
/// `y0 - y'b <= 0` and `y'A <= c'`. Maximizing `y0 + ε y1 + … + ε^m ym`
/// over it, with `ε` an infinitesimal, gives the optimum of the base
/// problem that is lexicographically greatest among all optima. Its primal
/// has right-hand side `(1, ε, …, ε^m)`, with `x0 = 1` leading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexifiedInstance {
    pub base: DualFormInstance,
    pub lifted: DualFormInstance,
}

/// Builds the lifted instance. Column 0 is `(1, -b)` with cost 0; column
/// `j + 1` is `(0, A_j)` with cost `c_j`. The lifted objective is `e_0`.
pub fn lexify(instance: &DualFormInstance) -> LexifiedInstance {
    let m = instance.m();
    let n = instance.n();
    let mut rows = Vec::with_capacity(m + 1);
    let mut head = vec![BigInt::zero(); n + 1];
    head[0] = BigInt::one();
    rows.push(head);
    for (i, row) in instance.rows().into_iter().enumerate() {
        let mut lifted_row = Vec::with_capacity(n + 1);
        lifted_row.push(-instance.b()[i].clone());
        lifted_row.extend(row);
        rows.push(lifted_row);
    }
    let mut costs = Vec::with_capacity(n + 1);
    costs.push(BigInt::zero());
    costs.extend(instance.costs().iter().cloned());
    let mut objective = vec![BigInt::zero(); m + 1];
    objective[0] = BigInt::one();
    let mut lifted =
        DualFormInstance::new(rows, objective, costs).expect("lifting preserves full row rank");
    if let Some(name) = instance.name() {
        lifted = lifted.with_name(format!("{name} (lifted)"));
    }
    LexifiedInstance {
        base: instance.clone(),
        lifted,
    }
}

impl LexifiedInstance {
    /// `(y'b, y)`: the lifted point with the largest admissible `y0`.
    pub fn lift_point(&self, y: &[BigInt]) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(y.len() + 1);
        out.push(self.base.objective(y));
        out.extend_from_slice(y);
        out
    }

    /// Drops the objective coordinate.
    pub fn unlift<'a, T>(&self, lifted_point: &'a [T]) -> &'a [T] {
        &lifted_point[1..]
    }
}
