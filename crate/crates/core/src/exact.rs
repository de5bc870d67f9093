//! Exact scalars and lexicographic ε-polynomials.
//!
//! Every fractional quantity in the solver is a [`Rational`]: an
//! arbitrary-precision fraction kept in lowest terms with a positive
//! denominator after every operation. [`LexValue`] models a polynomial
//! `q0 + q1 ε + … + q(d-1) ε^(d-1)` in a symbolic infinitesimal `ε > 0`,
//! ordered lexicographically by its coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision exact rational, always normalized.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// `n/d` from machine integers. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Largest integer not above `q`.
pub fn floor_int(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Smallest integer not below `q`.
pub fn ceil_int(q: &Rational) -> BigInt {
    let (d, r) = q.numer().div_mod_floor(q.denom());
    if r.is_zero() {
        d
    } else {
        d + 1
    }
}

/// `q - floor(q)`, always in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - from_big(&floor_int(q))
}

/// Integrality is a denominator test on the normalized form.
pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn dot_int(y: &[Rational], v: &[BigInt]) -> Rational {
    debug_assert_eq!(y.len(), v.len());
    y.iter()
        .zip(v)
        .filter(|(_, b)| !b.is_zero())
        .fold(Rational::zero(), |acc, (a, b)| acc + a * from_big(b))
}

pub fn dot(y: &[Rational], v: &[Rational]) -> Rational {
    debug_assert_eq!(y.len(), v.len());
    y.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// Mixed-number display: `463 1/2`, `-10 1/2`, `460`, `2/5`.
///
/// Negative values print the sign once, followed by the mixed form of the
/// absolute value.
pub struct Mixed<'a>(pub &'a Rational);

impl fmt::Display for Mixed<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.0;
        if is_integral(q) {
            return write!(f, "{}", q.numer());
        }
        let a = q.abs();
        let (whole, rem) = a.numer().div_rem(a.denom());
        let sign = if q.is_negative() { "-" } else { "" };
        if whole.is_zero() {
            write!(f, "{sign}{rem}/{}", a.denom())
        } else {
            write!(f, "{sign}{whole} {rem}/{}", a.denom())
        }
    }
}

/// Polynomial in the positive infinitesimal `ε`, coefficient of `ε^0` first.
///
/// Ordering is lexicographic on coefficients, which agrees with comparing
/// the polynomials for every sufficiently small real `ε > 0`. Values of
/// different lengths are incomparable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LexValue(Vec<Rational>);

impl LexValue {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        LexValue(coeffs)
    }

    pub fn zero(len: usize) -> Self {
        LexValue(vec![Rational::zero(); len])
    }

    /// `ε^k` as a length-`len` value.
    pub fn unit(len: usize, k: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[k] = Rational::one();
        v
    }

    /// Embeds a plain rational as `(q, 0, …, 0)`.
    pub fn from_rational(q: Rational, len: usize) -> Self {
        let mut v = Self::zero(len);
        if len > 0 {
            v.0[0] = q;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.0
    }

    fn leading(&self) -> Option<&Rational> {
        self.0.iter().find(|q| !q.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.leading().is_none()
    }

    /// Positive iff the first nonzero coefficient is positive.
    pub fn is_positive(&self) -> bool {
        self.leading().is_some_and(|q| q.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.leading().is_some_and(|q| q.is_negative())
    }

    pub fn lex_cmp(&self, other: &LexValue) -> Result<Ordering, ExactError> {
        self.check_len(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal))
    }

    /// `self + s * v`, componentwise.
    pub fn scale_add(&self, s: &Rational, v: &LexValue) -> Result<LexValue, ExactError> {
        self.check_len(v)?;
        if s.is_zero() {
            return Ok(self.clone());
        }
        Ok(LexValue(
            self.0.iter().zip(&v.0).map(|(a, b)| a + s * b).collect(),
        ))
    }

    pub fn scaled(&self, s: &Rational) -> LexValue {
        LexValue(self.0.iter().map(|a| a * s).collect())
    }

    fn check_len(&self, other: &LexValue) -> Result<(), ExactError> {
        if self.len() != other.len() {
            return Err(ExactError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }
}

impl PartialOrd for LexValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.lex_cmp(other).ok()
    }
}

impl fmt::Display for LexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, q) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str(")")
    }
}

pub fn lex_compare(a: &LexValue, b: &LexValue) -> Result<Ordering, ExactError> {
    a.lex_cmp(b)
}

pub fn lex_scale_add(acc: &LexValue, s: &Rational, v: &LexValue) -> Result<LexValue, ExactError> {
    acc.scale_add(s, v)
}
