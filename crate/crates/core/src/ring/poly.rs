use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::RingError;

/// Exponent vector of a monomial `t_1^{a_1} ⋯ t_n^{a_n}`.
///
/// Also used as a multi-degree (the vector of intersection numbers with the
/// chosen Seifert surfaces). Ordering is lexicographic, which makes it a
/// valid `BTreeMap` key and fixes the "lexicographically smallest monomial"
/// used by the `≐`-normalization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpVec(Vec<i64>);

impl ExpVec {
    pub fn new(entries: Vec<i64>) -> Self {
        ExpVec(entries)
    }

    /// The zero vector of length `n`.
    pub fn zero(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    /// The `i`-th unit vector (1-based) of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "unit index {i} out of range 1..={n}");
        let mut v = vec![0; n];
        v[i - 1] = 1;
        ExpVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Sum of the entries.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    /// First strictly negative entry, as `(1-based var, exponent)`.
    pub fn first_negative(&self) -> Option<(usize, i64)> {
        self.0.iter().enumerate().find(|(_, &a)| a < 0).map(|(i, &a)| (i + 1, a))
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        assert_eq!(self.len(), other.len());
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExpVec) -> ExpVec {
        assert_eq!(self.len(), other.len());
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> ExpVec {
        ExpVec(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Drop the `i`-th coordinate (1-based).
    pub fn drop_var(&self, i: usize) -> ExpVec {
        let mut v = self.0.clone();
        v.remove(i - 1);
        ExpVec(v)
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A multivariable integer Laurent polynomial.
///
/// Stored as a sorted term map with no zero coefficients; every key has
/// length `nvars`. Coefficients are arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExpVec, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ExpVec::zero(nvars), c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The monomial `c · x^e`.
    pub fn monomial(e: ExpVec, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let nvars = e.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The variable `t_i` (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(ExpVec::unit(nvars, i), 1)
    }

    /// Build from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (ExpVec, BigInt)>,
    ) -> Result<Self, RingError> {
        let mut map: BTreeMap<ExpVec, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(RingError::ExponentLength { expected: nvars, got: e.len() });
            }
            let entry = map.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { nvars, terms: map })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &ExpVec) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Largest total degree of a term, `None` for the zero polynomial.
    pub fn max_total_degree(&self) -> Option<i64> {
        self.terms.keys().map(ExpVec::total).max()
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|e| !e.is_nonnegative())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.compatible(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { nvars: self.nvars, terms })
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.compatible(other)?;
        let mut terms: BTreeMap<ExpVec, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.add(e2);
                let entry = terms.entry(e).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { nvars: self.nvars, terms })
    }

    fn compatible(&self, other: &LaurentPoly) -> Result<(), RingError> {
        if self.nvars != other.nvars {
            return Err(RingError::NvarsMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    /// Canonical representative of the `≐`-class.
    ///
    /// Translate exponents so the minimum exponent in each variable is zero,
    /// then negate if the lexicographically smallest surviving monomial has
    /// a negative coefficient. Zero maps to zero. Idempotent.
    pub fn doteq_normalize(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut shift = vec![i64::MAX; self.nvars];
        for e in self.terms.keys() {
            for (i, &a) in e.entries().iter().enumerate() {
                shift[i] = shift[i].min(a);
            }
        }
        let shift = ExpVec::new(shift);
        let mut terms: BTreeMap<ExpVec, BigInt> =
            self.terms.iter().map(|(e, c)| (e.sub(&shift), c.clone())).collect();
        let negate = terms.values().next().map(|c| c.is_negative()).unwrap_or(false);
        if negate {
            for c in terms.values_mut() {
                *c = -c.clone();
            }
        }
        LaurentPoly { nvars: self.nvars, terms }
    }

    /// `true` iff `self ≐ other` (equal up to sign and a monomial factor).
    pub fn doteq_equal(&self, other: &LaurentPoly) -> Result<bool, RingError> {
        self.compatible(other)?;
        Ok(self.doteq_normalize() == other.doteq_normalize())
    }

    /// Substitute `t_i = 1` (1-based index); the result has one variable
    /// fewer.
    pub fn substitute_one(&self, i: usize) -> Result<LaurentPoly, RingError> {
        if i < 1 || i > self.nvars {
            return Err(RingError::VarIndex { index: i, nvars: self.nvars });
        }
        let mut terms: BTreeMap<ExpVec, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let entry = terms.entry(e.drop_var(i)).or_insert_with(BigInt::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { nvars: self.nvars - 1, terms })
    }

    /// Canonical text rendering: terms sorted by total degree then
    /// lexicographic exponent; monomials as `t1^a*t2^b` with exponent 1 and
    /// unit coefficients elided.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&ExpVec> = self.terms.keys().collect();
        keys.sort_by_key(|e| (e.total(), (*e).clone()));
        let mut out = String::new();
        for (k, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&term_magnitude(e, c));
        }
        out
    }
}

fn term_magnitude(e: &ExpVec, c: &BigInt) -> String {
    let mag = c.abs();
    let mono = monomial_str(e);
    match (mag.is_one(), mono.is_empty()) {
        (true, true) => "1".to_string(),
        (true, false) => mono,
        (false, true) => mag.to_string(),
        (false, false) => format!("{mag}*{mono}"),
    }
}

fn monomial_str(e: &ExpVec) -> String {
    let mut parts = Vec::new();
    for (i, &a) in e.entries().iter().enumerate() {
        if a == 0 {
            continue;
        }
        if a == 1 {
            parts.push(format!("t{}", i + 1));
        } else {
            parts.push(format!("t{}^{}", i + 1, a));
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(&-rhs).expect("variable count mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly1(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(
            1,
            terms.iter().map(|&(e, c)| (ExpVec::new(vec![e]), BigInt::from(c))),
        )
        .unwrap()
    }

    #[test]
    fn mul_telescopes() {
        let p = poly1(&[(0, 1), (1, -1)]);
        let q = poly1(&[(0, 1), (1, 1), (2, 1)]);
        assert_eq!(&p * &q, poly1(&[(0, 1), (3, -1)]));
    }

    #[test]
    fn add_cancels() {
        let p = poly1(&[(0, 1), (1, -1)]);
        let q = poly1(&[(1, 1)]);
        assert_eq!(&p + &q, poly1(&[(0, 1)]));
    }

    #[test]
    fn negative_exponents_multiply() {
        let p = LaurentPoly::monomial(ExpVec::new(vec![-1, 0]), 1);
        let q = LaurentPoly::monomial(ExpVec::new(vec![1, 1]), 1);
        assert_eq!(&p * &q, LaurentPoly::var(2, 2));
    }

    #[test]
    fn nvars_mismatch_is_an_error() {
        let p = LaurentPoly::one(1);
        let q = LaurentPoly::one(2);
        assert!(matches!(p.checked_add(&q), Err(RingError::NvarsMismatch { .. })));
        assert!(matches!(p.checked_mul(&q), Err(RingError::NvarsMismatch { .. })));
        assert!(matches!(p.doteq_equal(&q), Err(RingError::NvarsMismatch { .. })));
    }

    #[test]
    fn doteq_normalize_shifts_and_flips() {
        // -t^2 + t^3 -> 1 - t
        let p = poly1(&[(2, -1), (3, 1)]);
        assert_eq!(p.doteq_normalize(), poly1(&[(0, 1), (1, -1)]));
    }

    #[test]
    fn doteq_normalize_monomial_is_one() {
        let p = LaurentPoly::monomial(ExpVec::new(vec![1, 1]), 1);
        assert_eq!(p.doteq_normalize(), LaurentPoly::one(2));
    }

    #[test]
    fn doteq_normalize_fixed_point() {
        let p = poly1(&[(0, 1), (1, -1), (2, 1)]);
        assert_eq!(p.doteq_normalize(), p);
    }

    #[test]
    fn doteq_equal_up_to_sign() {
        let p = poly1(&[(0, 1), (1, -1), (2, 1)]);
        let q = poly1(&[(0, -1), (1, 1), (2, -1)]);
        assert!(p.doteq_equal(&q).unwrap());
        let r = poly1(&[(0, 1), (1, 1)]);
        assert!(!p.doteq_equal(&r).unwrap());
        assert!(LaurentPoly::zero(1).doteq_equal(&LaurentPoly::zero(1)).unwrap());
    }

    #[test]
    fn substitute_one_collapses_variable() {
        let p = LaurentPoly::from_terms(
            2,
            vec![
                (ExpVec::zero(2), BigInt::one()),
                (ExpVec::new(vec![1, 1]), BigInt::one()),
            ],
        )
        .unwrap();
        assert_eq!(p.substitute_one(2).unwrap(), poly1(&[(0, 1), (1, 1)]));

        // t2 - t2^2 -> 0
        let q = LaurentPoly::from_terms(
            2,
            vec![
                (ExpVec::new(vec![0, 1]), BigInt::one()),
                (ExpVec::new(vec![0, 2]), BigInt::from(-1)),
            ],
        )
        .unwrap();
        assert!(q.substitute_one(2).unwrap().is_zero());

        // 1 - t1 keeps its shape, one variable fewer
        let r = LaurentPoly::from_terms(
            2,
            vec![
                (ExpVec::zero(2), BigInt::one()),
                (ExpVec::new(vec![1, 0]), BigInt::from(-1)),
            ],
        )
        .unwrap();
        let s = r.substitute_one(2).unwrap();
        assert_eq!(s.nvars(), 1);
        assert_eq!(s, poly1(&[(0, 1), (1, -1)]));

        assert!(matches!(r.substitute_one(3), Err(RingError::VarIndex { .. })));
    }

    #[test]
    fn render_matches_contract() {
        assert_eq!(poly1(&[(0, 1), (1, -1), (2, 1)]).render(), "1 - t1 + t1^2");
        assert_eq!(poly1(&[(0, 1), (1, -3), (2, 1)]).render(), "1 - 3*t1 + t1^2");
        assert_eq!(LaurentPoly::zero(2).render(), "0");
        assert_eq!(poly1(&[(0, -1), (1, 1)]).render(), "-1 + t1");
        assert_eq!(LaurentPoly::monomial(ExpVec::new(vec![-1]), 1).render(), "t1^-1");
        let p = LaurentPoly::from_terms(
            2,
            vec![
                (ExpVec::zero(2), BigInt::one()),
                (ExpVec::new(vec![1, 1]), BigInt::from(2)),
                (ExpVec::new(vec![2, 2]), BigInt::one()),
            ],
        )
        .unwrap();
        assert_eq!(p.render(), "1 + 2*t1*t2 + t1^2*t2^2");
        // same total degree: lexicographic order on exponents
        let q = LaurentPoly::from_terms(
            2,
            vec![
                (ExpVec::new(vec![1, 0]), BigInt::one()),
                (ExpVec::new(vec![0, 1]), BigInt::one()),
            ],
        )
        .unwrap();
        assert_eq!(q.render(), "t2 + t1");
    }
}
