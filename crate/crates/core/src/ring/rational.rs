use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{ExpVec, LaurentPoly};
use super::series::TruncatedSeries;
use super::RingError;

/// A truncated power series with exact rational coefficients.
///
/// This is oracle plumbing: it exists so that the closed-form local zeta
/// factors can be recomputed from their defining exponential
/// `exp(Σ_{i≥1} ε(γ^i) t^i / i)` in exact arithmetic and compared term by
/// term against the integer series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    nvars: usize,
    cutoff: usize,
    terms: BTreeMap<ExpVec, BigRational>,
}

impl RationalSeries {
    pub fn zero(nvars: usize, cutoff: usize) -> Self {
        RationalSeries { nvars, cutoff, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, cutoff: usize) -> Self {
        let mut s = Self::zero(nvars, cutoff);
        s.terms.insert(ExpVec::zero(nvars), BigRational::one());
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &BigRational)> {
        self.terms.iter()
    }

    /// Add `c · x^e`, dropping the term if it exceeds the cutoff.
    pub fn add_term(&mut self, e: ExpVec, c: BigRational) -> Result<(), RingError> {
        if e.len() != self.nvars {
            return Err(RingError::ExponentLength { expected: self.nvars, got: e.len() });
        }
        if let Some((var, exponent)) = e.first_negative() {
            return Err(RingError::NegativeExponent { var, exponent });
        }
        if e.total() > self.cutoff as i64 {
            return Ok(());
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
        Ok(())
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&ExpVec::zero(self.nvars)).cloned().unwrap_or_else(BigRational::zero)
    }

    fn compatible(&self, other: &RationalSeries) -> Result<(), RingError> {
        if self.nvars != other.nvars {
            return Err(RingError::NvarsMismatch { left: self.nvars, right: other.nvars });
        }
        if self.cutoff != other.cutoff {
            return Err(RingError::CutoffMismatch { left: self.cutoff, right: other.cutoff });
        }
        Ok(())
    }

    pub fn add(&self, other: &RationalSeries) -> Result<RationalSeries, RingError> {
        self.compatible(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(RationalSeries { nvars: self.nvars, cutoff: self.cutoff, terms })
    }

    pub fn mul(&self, other: &RationalSeries) -> Result<RationalSeries, RingError> {
        self.compatible(other)?;
        let mut terms: BTreeMap<ExpVec, BigRational> = BTreeMap::new();
        let bound = self.cutoff as i64;
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                if e1.total() + e2.total() > bound {
                    continue;
                }
                let entry = terms.entry(e1.add(e2)).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(RationalSeries { nvars: self.nvars, cutoff: self.cutoff, terms })
    }

    pub fn scale(&self, k: &BigRational) -> RationalSeries {
        if k.is_zero() {
            return RationalSeries::zero(self.nvars, self.cutoff);
        }
        RationalSeries {
            nvars: self.nvars,
            cutoff: self.cutoff,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// The formal exponential `Σ_k self^k / k!`, truncated at the cutoff.
    ///
    /// Requires a zero constant term, which makes the sum finite: the k-th
    /// power has minimum total degree ≥ k.
    pub fn exp(&self) -> Result<RationalSeries, RingError> {
        if !self.constant_term().is_zero() {
            return Err(RingError::NonzeroConstantTerm);
        }
        let mut result = RationalSeries::one(self.nvars, self.cutoff);
        let mut power = RationalSeries::one(self.nvars, self.cutoff);
        let mut factorial = BigRational::one();
        for k in 1..=self.cutoff {
            power = power.mul(self)?;
            if power.terms.is_empty() {
                break;
            }
            factorial *= BigRational::from_integer(BigInt::from(k));
            result = result.add(&power.scale(&factorial.recip()))?;
        }
        Ok(result)
    }

    /// Convert to an integer series, failing on any non-integer coefficient.
    pub fn to_integer_series(&self) -> Result<TruncatedSeries, RingError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if !c.is_integer() {
                return Err(RingError::NonIntegerCoefficient {
                    exponent: e.entries().to_vec(),
                });
            }
            terms.push((e.clone(), c.to_integer()));
        }
        let poly = LaurentPoly::from_terms(self.nvars, terms)?;
        TruncatedSeries::truncate(&poly, self.cutoff)
    }

    /// Lift an integer series to rational coefficients.
    pub fn from_integer_series(s: &TruncatedSeries) -> RationalSeries {
        RationalSeries {
            nvars: s.nvars(),
            cutoff: s.cutoff(),
            terms: s
                .poly()
                .terms()
                .map(|(e, c)| (e.clone(), BigRational::from_integer(c.clone())))
                .collect(),
        }
    }
}
