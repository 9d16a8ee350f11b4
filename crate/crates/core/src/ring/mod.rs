//! Exact arithmetic on multivariable integer Laurent polynomials and
//! total-degree-truncated power series.
//!
//! Polynomials live in `Z[t_1^{±1},…,t_n^{±1}]` with arbitrary-precision
//! coefficients. Series are polynomials with nonnegative exponents together
//! with a total-degree cutoff; they model elements of `Z[[t_1,…,t_n]]`
//! exactly below the cutoff. [`RationalSeries`] is the same thing over `Q`
//! and exists only to run exp/log identities as an independent oracle.
//!
//! The `≐` relation (equality up to sign and a monomial unit) is realised by
//! [`LaurentPoly::doteq_normalize`]: translate so every variable has minimum
//! exponent zero, then fix the sign of the lexicographically smallest
//! monomial.

mod poly;
mod rational;
mod series;

pub use poly::{ExpVec, LaurentPoly};
pub use rational::RationalSeries;
pub use series::{geometric_series, TruncatedSeries};

use thiserror::Error;

/// Errors from ring operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("cutoff mismatch: {left} vs {right}")]
    CutoffMismatch { left: usize, right: usize },
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("negative exponent {exponent} of t{var} not allowed here")]
    NegativeExponent { var: usize, exponent: i64 },
    #[error("exponent vector must be nonzero")]
    ZeroExponent,
    #[error("variable index {index} out of range 1..={nvars}")]
    VarIndex { index: usize, nvars: usize },
    #[error("series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("series has a non-integer coefficient at exponent {exponent:?}")]
    NonIntegerCoefficient { exponent: Vec<i64> },
}
