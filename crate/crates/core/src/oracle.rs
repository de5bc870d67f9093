//! Brute-force ground truth for small bounded instances.
//!
//! The integer box comes from `2m` exact continuous solves; every integer
//! point inside it is then tested against `y'A <= c'`. Nothing here shares
//! code with the cutting-plane loop beyond the LP solves used for the box.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{ceil_int, floor_int};
use crate::instance::DualFormInstance;
use crate::simplex::{relaxation_is_nonempty, solve_relaxation, RelaxationOutcome, SimplexError};

pub const DEFAULT_POINT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("continuous relaxation is unbounded in coordinate y{}", coordinate + 1)]
    Unbounded { coordinate: usize, upward: bool },
    #[error("continuous relaxation is empty")]
    Empty,
    #[error("box holds {points} points, cap is {cap}")]
    TooLarge { points: BigInt, cap: u64 },
    #[error(transparent)]
    Simplex(#[from] SimplexError),
}

/// Integer bounds containing every integer feasible point.
///
/// A box with some `lower_i > upper_i` holds no points; this happens when
/// the relaxation is nonempty but too thin to contain an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerBox {
    pub lower: Vec<BigInt>,
    pub upper: Vec<BigInt>,
}

impl IntegerBox {
    pub fn new(lower: Vec<BigInt>, upper: Vec<BigInt>) -> Self {
        assert_eq!(lower.len(), upper.len(), "box dimensions");
        IntegerBox { lower, upper }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.iter().zip(&self.upper).any(|(l, u)| l > u)
    }

    pub fn volume(&self) -> BigInt {
        if self.is_empty() {
            return BigInt::zero();
        }
        self.lower
            .iter()
            .zip(&self.upper)
            .fold(BigInt::one(), |acc, (l, u)| acc * (u - l + 1))
    }

    pub fn contains(&self, y: &[BigInt]) -> bool {
        y.len() == self.dim()
            && y.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| l <= v && v <= u)
    }

    /// Points in increasing lexicographic order.
    pub fn points(&self) -> BoxPoints<'_> {
        BoxPoints {
            bounds: self,
            next: if self.is_empty() {
                None
            } else {
                Some(self.lower.clone())
            },
        }
    }

    /// Splits along the first coordinate into at most `parts` slabs.
    pub fn split(&self, parts: usize) -> Vec<IntegerBox> {
        if self.is_empty() || self.dim() == 0 || parts <= 1 {
            return vec![self.clone()];
        }
        let width = &self.upper[0] - &self.lower[0] + 1;
        let parts_big = BigInt::from(parts);
        let step = num_integer::Integer::div_ceil(&width, &parts_big).max(BigInt::one());
        let mut out = Vec::new();
        let mut lo = self.lower[0].clone();
        while lo <= self.upper[0] {
            let hi: BigInt = (&lo + &step - 1u32).min(self.upper[0].clone());
            let mut part = self.clone();
            part.lower[0] = lo.clone();
            part.upper[0] = hi.clone();
            out.push(part);
            lo = hi + 1;
        }
        out
    }
}

pub struct BoxPoints<'a> {
    bounds: &'a IntegerBox,
    next: Option<Vec<BigInt>>,
}

impl Iterator for BoxPoints<'_> {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Vec<BigInt>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for k in (0..succ.len()).rev() {
            if succ[k] < self.bounds.upper[k] {
                succ[k] += 1;
                self.next = Some(succ);
                break;
            }
            succ[k] = self.bounds.lower[k].clone();
        }
        Some(current)
    }
}

/// `⌈min y_i⌉ .. ⌊max y_i⌋` over the continuous relaxation.
pub fn bounding_box(instance: &DualFormInstance) -> Result<IntegerBox, OracleError> {
    if !relaxation_is_nonempty(instance)? {
        return Err(OracleError::Empty);
    }
    let m = instance.m();
    let mut lower = Vec::with_capacity(m);
    let mut upper = Vec::with_capacity(m);
    for i in 0..m {
        for upward in [true, false] {
            let dir: Vec<BigInt> = (0..m)
                .map(|k| match (k == i, upward) {
                    (false, _) => BigInt::zero(),
                    (true, true) => BigInt::one(),
                    (true, false) => -BigInt::one(),
                })
                .collect();
            match solve_relaxation(&instance.with_objective(dir))? {
                RelaxationOutcome::Optimal { z, .. } => {
                    if upward {
                        upper.push(floor_int(&z));
                    } else {
                        lower.push(ceil_int(&-z));
                    }
                }
                RelaxationOutcome::PrimalInfeasible => {
                    return Err(OracleError::Unbounded {
                        coordinate: i,
                        upward,
                    })
                }
                RelaxationOutcome::Empty => return Err(OracleError::Empty),
            }
        }
    }
    Ok(IntegerBox { lower, upper })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Optimal value and every optimal point, sorted lexicographically.
    Optimal {
        z: BigInt,
        argmax: Vec<Vec<BigInt>>,
    },
    Infeasible,
}

impl OracleOutcome {
    /// Lexicographically greatest optimal point.
    pub fn lex_max(&self) -> Option<&[BigInt]> {
        match self {
            OracleOutcome::Optimal { argmax, .. } => argmax.last().map(Vec::as_slice),
            OracleOutcome::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub point_cap: u64,
    /// Number of slabs enumerated on separate threads.
    pub workers: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            point_cap: DEFAULT_POINT_CAP,
            workers: 1,
        }
    }
}

fn check_cap(bounds: &IntegerBox, cap: u64) -> Result<(), OracleError> {
    let points = bounds.volume();
    if points.to_u64().is_none_or(|p| p > cap) {
        return Err(OracleError::TooLarge { points, cap });
    }
    Ok(())
}

/// All integer feasible points in the box, in lexicographic order.
pub fn feasible_points(
    instance: &DualFormInstance,
    bounds: &IntegerBox,
    config: OracleConfig,
) -> Result<Vec<Vec<BigInt>>, OracleError> {
    check_cap(bounds, config.point_cap)?;
    let slabs = bounds.split(config.workers);
    if slabs.len() == 1 {
        return Ok(bounds
            .points()
            .filter(|y| instance.is_feasible(y))
            .collect());
    }
    let chunks: Vec<Vec<Vec<BigInt>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = slabs
            .iter()
            .map(|slab| {
                scope.spawn(move || {
                    slab.points()
                        .filter(|y| instance.is_feasible(y))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });
    let mut all: Vec<Vec<BigInt>> = chunks.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

/// Maximizes `y'b` over the integer feasible points of the box.
pub fn brute_force_optimum(
    instance: &DualFormInstance,
    bounds: &IntegerBox,
    config: OracleConfig,
) -> Result<OracleOutcome, OracleError> {
    Ok(optimum_of(
        instance,
        feasible_points(instance, bounds, config)?,
    ))
}

/// Maximizes `y'b` over an already enumerated feasible set.
pub fn optimum_of(instance: &DualFormInstance, mut points: Vec<Vec<BigInt>>) -> OracleOutcome {
    let Some(z) = points.iter().map(|y| instance.objective(y)).max() else {
        return OracleOutcome::Infeasible;
    };
    points.retain(|y| instance.objective(y) == z);
    points.sort();
    OracleOutcome::Optimal { z, argmax: points }
}
