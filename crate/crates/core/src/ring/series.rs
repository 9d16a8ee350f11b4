use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{ExpVec, LaurentPoly};
use super::RingError;

/// A power series truncated by total degree.
///
/// Every stored exponent is componentwise ≥ 0 with total degree ≤ `cutoff`;
/// arithmetic is exact below the cutoff. Two series are comparable only when
/// both `nvars` and `cutoff` agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: LaurentPoly,
    cutoff: usize,
}

impl TruncatedSeries {
    /// Truncate a polynomial with nonnegative exponents to total degree
    /// ≤ `cutoff`.
    pub fn truncate(p: &LaurentPoly, cutoff: usize) -> Result<Self, RingError> {
        if let Some((var, exponent)) =
            p.terms().find_map(|(e, _)| e.first_negative())
        {
            return Err(RingError::NegativeExponent { var, exponent });
        }
        let kept = p
            .terms()
            .filter(|(e, _)| e.total() <= cutoff as i64)
            .map(|(e, c)| (e.clone(), c.clone()));
        let poly = LaurentPoly::from_terms(p.nvars(), kept)?;
        Ok(TruncatedSeries { poly, cutoff })
    }

    pub fn one(nvars: usize, cutoff: usize) -> Self {
        TruncatedSeries { poly: LaurentPoly::one(nvars), cutoff }
    }

    pub fn zero(nvars: usize, cutoff: usize) -> Self {
        TruncatedSeries { poly: LaurentPoly::zero(nvars), cutoff }
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    fn compatible(&self, other: &TruncatedSeries) -> Result<(), RingError> {
        if self.nvars() != other.nvars() {
            return Err(RingError::NvarsMismatch { left: self.nvars(), right: other.nvars() });
        }
        if self.cutoff != other.cutoff {
            return Err(RingError::CutoffMismatch { left: self.cutoff, right: other.cutoff });
        }
        Ok(())
    }

    /// Exact product modulo terms of total degree > cutoff.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, RingError> {
        self.compatible(other)?;
        let product = self.poly.checked_mul(&other.poly)?;
        TruncatedSeries::truncate(&product, self.cutoff)
    }

    /// Multiply by a polynomial with nonnegative exponents, re-truncating.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<TruncatedSeries, RingError> {
        let product = self.poly.checked_mul(p)?;
        TruncatedSeries::truncate(&product, self.cutoff)
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries, RingError> {
        self.compatible(other)?;
        Ok(TruncatedSeries { poly: self.poly.checked_add(&other.poly)?, cutoff: self.cutoff })
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render())
    }
}

/// The geometric series `Σ_{l≥0} x^{l·e}` truncated at total degree
/// `cutoff`: the exact inverse of `1 - x^e` in the truncated ring.
///
/// Requires `e` componentwise ≥ 0 and nonzero (`1 - 1` is not invertible).
pub fn geometric_series(e: &ExpVec, cutoff: usize) -> Result<TruncatedSeries, RingError> {
    if let Some((var, exponent)) = e.first_negative() {
        return Err(RingError::NegativeExponent { var, exponent });
    }
    if e.is_zero() {
        return Err(RingError::ZeroExponent);
    }
    let step = e.total();
    let mut terms = Vec::new();
    let mut l = 0i64;
    while l * step <= cutoff as i64 {
        terms.push((e.scale(l), BigInt::one()));
        l += 1;
    }
    let poly = LaurentPoly::from_terms(e.len(), terms)?;
    Ok(TruncatedSeries { poly, cutoff })
}
