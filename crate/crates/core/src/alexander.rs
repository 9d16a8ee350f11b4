//! Alexander polynomials and their identity checks.
//!
//! For a fibered knot with page monodromy matrix `M` acting on first
//! homology, the Alexander polynomial is `det(1 - tM)` up to units; the
//! Alexander quotient of the complement is that divided by `1 - t`. The
//! determinant is computed by fraction-free (Bareiss) elimination over
//! `Z[t]`, with a plain cofactor expansion kept as an independent oracle.
//!
//! From catalogs the Alexander quotient is the Euler characteristic of the
//! full chain group; the Torres formula bridges the two pipelines.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::orbitcat::{CatalogError, OrbitCatalog};
use crate::ring::{ExpVec, LaurentPoly, RingError, TruncatedSeries};
use crate::zeta;

/// Threshold below which support touching the window edge is treated as
/// evidence of an infinite series: a result is reported as a polynomial only
/// when its support stays this far below the cutoff.
const FINITE_GUARD_BAND: usize = 2;

/// The action of a page monodromy on first homology: a square integer
/// matrix. The empty matrix is the disk page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyMatrix {
    entries: Vec<Vec<BigInt>>,
}

impl MonodromyMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, AlexError> {
        Self::from_bigint(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
    }

    pub fn from_bigint(entries: Vec<Vec<BigInt>>) -> Result<Self, AlexError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(AlexError::NotSquare);
        }
        Ok(MonodromyMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn trace(&self) -> BigInt {
        (0..self.size()).map(|i| self.entries[i][i].clone()).sum()
    }

    pub fn entries(&self) -> &[Vec<BigInt>] {
        &self.entries
    }
}

/// Kind of value an [`AlexResult`] holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlexValue {
    Polynomial(LaurentPoly),
    Series(TruncatedSeries),
}

impl AlexValue {
    pub fn poly(&self) -> &LaurentPoly {
        match self {
            AlexValue::Polynomial(p) => p,
            AlexValue::Series(s) => s.poly(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AlexValue::Polynomial(_) => "polynomial",
            AlexValue::Series(_) => "series",
        }
    }
}

/// An Alexander quotient or Alexander polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexResult {
    pub value: AlexValue,
    pub nvars: usize,
    /// Whether the value is a `≐`-normalization fixed point.
    pub normalized: bool,
}

impl fmt::Display for AlexResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value.poly().render())
    }
}

/// `det(1 - tM)` as a one-variable polynomial, by fraction-free Bareiss
/// elimination over `Z[t]`. The constant term is always 1.
pub fn char_det(m: &MonodromyMatrix) -> LaurentPoly {
    let a = one_minus_t_m(m);
    det_bareiss(a)
}

/// `det(1 - tM)` by cofactor expansion: the independent oracle for
/// [`char_det`]. Exponential in the size; callers keep it small.
pub fn char_det_cofactor(m: &MonodromyMatrix) -> LaurentPoly {
    let a = one_minus_t_m(m);
    det_cofactor(&a)
}

fn one_minus_t_m(m: &MonodromyMatrix) -> Vec<Vec<LaurentPoly>> {
    let n = m.size();
    let t = ExpVec::new(vec![1]);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = LaurentPoly::monomial(t.clone(), -m.entries[i][j].clone());
                    if i == j {
                        p = &p + &LaurentPoly::one(1);
                    }
                    p
                })
                .collect()
        })
        .collect()
}

fn det_bareiss(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    if n == 0 {
        return LaurentPoly::one(1);
    }
    let mut sign = 1i64;
    let mut prev = LaurentPoly::one(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return LaurentPoly::zero(1);
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = div_exact(&num, &prev)
                    .expect("Bareiss pivot divides the two-by-two minor exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -&det
    } else {
        det
    }
}

fn det_cofactor(a: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = a.len();
    if n == 0 {
        return LaurentPoly::one(1);
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut det = LaurentPoly::zero(1);
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| a[i][c].clone())
                    .collect()
            })
            .collect();
        let term = &a[0][j] * &det_cofactor(&minor);
        det = if j % 2 == 0 { &det + &term } else { &det - &term };
    }
    det
}

/// Exact division of one-variable polynomials with nonnegative exponents.
/// Returns `None` when the division is not exact.
fn div_exact(p: &LaurentPoly, q: &LaurentPoly) -> Option<LaurentPoly> {
    assert!(!q.is_zero(), "division by zero polynomial");
    if p.is_zero() {
        return Some(LaurentPoly::zero(1));
    }
    let lead = |f: &LaurentPoly| -> (i64, BigInt) {
        let (e, c) = f.terms().max_by_key(|(e, _)| e.entries()[0]).expect("nonzero");
        (e.entries()[0], c.clone())
    };
    let (dq, cq) = lead(q);
    let mut rem = p.clone();
    let mut quot = LaurentPoly::zero(1);
    while !rem.is_zero() {
        let (dr, cr) = lead(&rem);
        if dr < dq {
            return None;
        }
        if !(&cr % &cq).is_zero() {
            return None;
        }
        let mono = LaurentPoly::monomial(ExpVec::new(vec![dr - dq]), &cr / &cq);
        quot = &quot + &mono;
        rem = &rem - &(&mono * q);
    }
    Some(quot)
}

/// The Alexander quotient of a fibered knot complement as a truncated
/// series: `det(1 - tM) / (1 - t)`.
pub fn alex_fibered_knot(m: &MonodromyMatrix, cutoff: usize) -> Result<AlexResult, AlexError> {
    let delta = char_det(m);
    let deg = delta.max_total_degree().unwrap_or(0);
    if (cutoff as i64) < deg {
        return Err(AlexError::CutoffBelowDegree { cutoff, degree: deg });
    }
    let series = TruncatedSeries::truncate(&delta, cutoff)?;
    let geom = crate::ring::geometric_series(&ExpVec::new(vec![1]), cutoff)?;
    let series = series.mul(&geom)?;
    Ok(AlexResult { value: AlexValue::Series(series), nvars: 1, normalized: false })
}

/// The Lefschetz number `1 - tr(M)` of the page monodromy.
pub fn lefschetz_number(m: &MonodromyMatrix) -> BigInt {
    BigInt::one() - m.trace()
}

/// The Alexander quotient of a catalog: the `≐`-normalized Euler
/// characteristic of the full chain group. Reported as a polynomial when
/// the support stays clear of the window edge by the guard band.
pub fn alex_from_catalog(cat: &OrbitCatalog, cutoff: usize) -> Result<AlexResult, AlexError> {
    let chi = zeta::chi_full(cat, cutoff)?;
    let normalized = chi.series.poly().doteq_normalize();
    let nvars = cat.nvars();
    let value = if support_is_finite(&normalized, cutoff) {
        AlexValue::Polynomial(normalized)
    } else {
        AlexValue::Series(TruncatedSeries::truncate(&normalized, cutoff)?)
    };
    Ok(AlexResult { value, nvars, normalized: true })
}

fn support_is_finite(p: &LaurentPoly, cutoff: usize) -> bool {
    match p.max_total_degree() {
        None => true,
        Some(d) => d + FINITE_GUARD_BAND as i64 <= cutoff as i64,
    }
}

/// Convert an Alexander quotient into the Alexander polynomial.
///
/// For links (`n ≥ 2`) the two agree. For knots the quotient is multiplied
/// by `1 - t`; the product must be detectably finite at this cutoff,
/// otherwise the caller is told to raise it.
pub fn delta_from_alex(a: &AlexResult, n: usize) -> Result<AlexResult, AlexError> {
    if a.nvars != n {
        return Err(AlexError::VariableCount { expected: n, found: a.nvars });
    }
    if n >= 2 {
        let poly = a.value.poly().doteq_normalize();
        return Ok(AlexResult { value: AlexValue::Polynomial(poly), nvars: n, normalized: true });
    }
    let one_minus_t = zeta::one_minus_t(1, 1);
    match &a.value {
        AlexValue::Polynomial(p) => {
            let delta = (p * &one_minus_t).doteq_normalize();
            Ok(AlexResult { value: AlexValue::Polynomial(delta), nvars: 1, normalized: true })
        }
        AlexValue::Series(s) => {
            let product = s.mul_poly(&one_minus_t)?;
            if !support_is_finite(product.poly(), s.cutoff()) {
                return Err(AlexError::NotDetectablyFinite { cutoff: s.cutoff() });
            }
            let delta = product.poly().doteq_normalize();
            Ok(AlexResult { value: AlexValue::Polynomial(delta), nvars: 1, normalized: true })
        }
    }
}

/// The two sides of the Torres formula, for reporting.
#[derive(Debug, Clone)]
pub struct TorresSides {
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub holds: bool,
}

/// Check the Torres formula: the full polynomial in `n+1` variables,
/// evaluated at `t_{n+1} = 1`, must be `≐` to the sublink value times
/// `1 - x^lk`, where `lk` collects the linking numbers of the dropped
/// component. A zero `lk` forces both sides to vanish.
pub fn torres_check(
    delta_full: &LaurentPoly,
    sub: &AlexResult,
    lk: &ExpVec,
) -> Result<TorresSides, AlexError> {
    let n = sub.nvars;
    if delta_full.nvars() != n + 1 {
        return Err(AlexError::VariableCount { expected: n + 1, found: delta_full.nvars() });
    }
    if lk.len() != n {
        return Err(AlexError::VariableCount { expected: n, found: lk.len() });
    }
    let lhs = delta_full.substitute_one(n + 1)?;
    if lk.is_zero() {
        // right side vanishes; the check demands the left side does too
        let rhs = LaurentPoly::zero(n);
        let holds = lhs.is_zero();
        return Ok(TorresSides { lhs: lhs.doteq_normalize(), rhs, holds });
    }
    let factor = one_minus_monomial(n, lk);
    let rhs = match &sub.value {
        AlexValue::Polynomial(p) => (p * &factor).doteq_normalize(),
        AlexValue::Series(s) => {
            let normalized_factor = factor.doteq_normalize();
            let product = s.mul_poly(&normalized_factor)?;
            if !support_is_finite(product.poly(), s.cutoff()) {
                return Err(AlexError::NotDetectablyFinite { cutoff: s.cutoff() });
            }
            product.poly().doteq_normalize()
        }
    };
    let lhs = lhs.doteq_normalize();
    let holds = lhs.doteq_equal(&rhs)?;
    Ok(TorresSides { lhs, rhs, holds })
}

fn one_minus_monomial(nvars: usize, e: &ExpVec) -> LaurentPoly {
    let one = LaurentPoly::one(nvars);
    let m = LaurentPoly::monomial(e.clone(), 1);
    &one - &m
}

/// Errors from Alexander-polynomial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexError {
    #[error("monodromy matrix must be square")]
    NotSquare,
    #[error("cutoff {cutoff} is below the polynomial degree {degree}")]
    CutoffBelowDegree { cutoff: usize, degree: i64 },
    #[error("support reaches the cutoff window ({cutoff}); not detectably finite, raise the cutoff")]
    NotDetectablyFinite { cutoff: usize },
    #[error("expected {expected} variables, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}
