//! Orbit catalogs: the combinatorial abstraction of Reeb dynamics that the
//! zeta functions and chain groups are built from.
//!
//! A catalog consists of interior simple orbits plus, for each link
//! component, a boundary quadruple `(e_i, h_i, e_i+, h_i+)` of meridian-class
//! orbits: `e_i`, `e_i+` elliptic and `h_i`, `h_i+` positive hyperbolic, all
//! of degree equal to the `i`-th unit vector. Orbit sets are finite formal
//! products of simple orbits where hyperbolic orbits carry multiplicity at
//! most one.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::ring::{geometric_series, ExpVec, LaurentPoly, RationalSeries, RingError, TruncatedSeries};

pub mod sample;

/// The three kinds of non-degenerate simple orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitKind {
    Elliptic,
    PositiveHyperbolic,
    NegativeHyperbolic,
}

impl OrbitKind {
    /// The Lefschetz sign: `+1` for elliptic and negative hyperbolic orbits,
    /// `-1` for positive hyperbolic ones.
    pub fn lefschetz_sign(self) -> i8 {
        match self {
            OrbitKind::Elliptic | OrbitKind::NegativeHyperbolic => 1,
            OrbitKind::PositiveHyperbolic => -1,
        }
    }

    /// Parity of any Conley-Zehnder index of an orbit of this kind.
    ///
    /// Satisfies `(-1)^parity == -lefschetz_sign`.
    pub fn cz_parity(self) -> u8 {
        match self {
            OrbitKind::Elliptic | OrbitKind::NegativeHyperbolic => 1,
            OrbitKind::PositiveHyperbolic => 0,
        }
    }

    /// The Lefschetz sign of the `i`-fold iterate.
    ///
    /// Iterates of elliptic orbits stay elliptic and iterates of positive
    /// hyperbolic orbits stay positive hyperbolic; even iterates of a
    /// negative hyperbolic orbit become positive hyperbolic.
    pub fn iterate_sign(self, i: u64) -> i8 {
        assert!(i >= 1, "iterate index must be >= 1");
        match self {
            OrbitKind::Elliptic => 1,
            OrbitKind::PositiveHyperbolic => -1,
            OrbitKind::NegativeHyperbolic => {
                if i % 2 == 1 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn is_hyperbolic(self) -> bool {
        matches!(self, OrbitKind::PositiveHyperbolic | OrbitKind::NegativeHyperbolic)
    }
}

impl fmt::Display for OrbitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrbitKind::Elliptic => "elliptic",
            OrbitKind::PositiveHyperbolic => "pos_hyp",
            OrbitKind::NegativeHyperbolic => "neg_hyp",
        };
        f.write_str(s)
    }
}

/// The sign of `det(1 - L)` for a linearized return map `L`.
///
/// Fails when 1 is an eigenvalue of `L`, i.e. the orbit is degenerate.
pub fn sign_from_linearized(l: &[[BigRational; 2]; 2]) -> Result<i8, CatalogError> {
    let one = BigRational::from_integer(1.into());
    let a = &one - &l[0][0];
    let b = -l[0][1].clone();
    let c = -l[1][0].clone();
    let d = &one - &l[1][1];
    let det = &a * &d - &b * &c;
    if det.is_zero() {
        return Err(CatalogError::DegenerateOrbit);
    }
    Ok(if det.is_positive() { 1 } else { -1 })
}

/// A simple Reeb orbit: a name, its kind, its multi-degree
/// `(⟨γ,S_1⟩,…,⟨γ,S_n⟩)`, and an optional positive action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleOrbit {
    pub id: String,
    pub kind: OrbitKind,
    pub degree: ExpVec,
    pub action: Option<BigRational>,
}

impl SimpleOrbit {
    pub fn new(id: impl Into<String>, kind: OrbitKind, degree: ExpVec) -> Self {
        SimpleOrbit { id: id.into(), kind, degree, action: None }
    }

    pub fn with_action(mut self, action: BigRational) -> Self {
        self.action = Some(action);
        self
    }

    /// The closed-form local Lefschetz zeta factor, with the orbit monomial
    /// `x^degree` in place of `t`:
    ///
    /// * elliptic: `(1 - x^deg)^{-1}` as a geometric series,
    /// * positive hyperbolic: `1 - x^deg`,
    /// * negative hyperbolic: `1 + x^deg`.
    pub fn local_zeta(&self, cutoff: usize) -> Result<TruncatedSeries, CatalogError> {
        self.check_degree()?;
        match self.kind {
            OrbitKind::Elliptic => Ok(geometric_series(&self.degree, cutoff)?),
            OrbitKind::PositiveHyperbolic => {
                let p = one_plus_signed_monomial(&self.degree, -1);
                Ok(TruncatedSeries::truncate(&p, cutoff)?)
            }
            OrbitKind::NegativeHyperbolic => {
                let p = one_plus_signed_monomial(&self.degree, 1);
                Ok(TruncatedSeries::truncate(&p, cutoff)?)
            }
        }
    }

    /// The local zeta factor recomputed from its defining exponential
    /// `exp(Σ_{i≥1} ε(γ^i) x^{i·deg}/i)` in exact rational arithmetic.
    ///
    /// All coefficients must come out integral; a non-integer coefficient
    /// signals an implementation bug, never valid input.
    pub fn local_zeta_oracle(&self, cutoff: usize) -> Result<TruncatedSeries, CatalogError> {
        self.check_degree()?;
        let nvars = self.degree.len();
        let step = self.degree.total();
        let mut log = RationalSeries::zero(nvars, cutoff);
        let mut i = 1u64;
        while (i as i64) * step <= cutoff as i64 {
            let sign = self.kind.iterate_sign(i);
            let coeff = BigRational::new((sign as i64).into(), (i as i64).into());
            log.add_term(self.degree.scale(i as i64), coeff)?;
            i += 1;
        }
        Ok(log.exp()?.to_integer_series()?)
    }

    fn check_degree(&self) -> Result<(), CatalogError> {
        if !self.degree.is_nonnegative() || self.degree.is_zero() {
            return Err(CatalogError::BadDegree {
                id: self.id.clone(),
                degree: self.degree.clone(),
            });
        }
        Ok(())
    }
}

fn one_plus_signed_monomial(e: &ExpVec, sign: i64) -> LaurentPoly {
    let one = LaurentPoly::one(e.len());
    let m = LaurentPoly::monomial(e.clone(), sign);
    &one + &m
}

/// Which role an orbit plays in a catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitRole {
    Interior,
    /// `e_i` on the outer torus of component `i` (1-based).
    BoundaryE(usize),
    /// `h_i` on the outer torus.
    BoundaryH(usize),
    /// `e_i+` on the inner torus.
    BoundaryEPlus(usize),
    /// `h_i+` on the inner torus.
    BoundaryHPlus(usize),
}

/// The four meridian-class orbits of one link component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryQuadruple {
    pub e: SimpleOrbit,
    pub h: SimpleOrbit,
    pub e_plus: SimpleOrbit,
    pub h_plus: SimpleOrbit,
}

impl BoundaryQuadruple {
    /// The standard quadruple for component `i` (1-based) in an `nvars`
    /// catalog: correct kinds and meridian degree, no actions.
    pub fn standard(
        nvars: usize,
        i: usize,
        e: impl Into<String>,
        h: impl Into<String>,
        e_plus: impl Into<String>,
        h_plus: impl Into<String>,
    ) -> Self {
        let unit = ExpVec::unit(nvars, i);
        BoundaryQuadruple {
            e: SimpleOrbit::new(e, OrbitKind::Elliptic, unit.clone()),
            h: SimpleOrbit::new(h, OrbitKind::PositiveHyperbolic, unit.clone()),
            e_plus: SimpleOrbit::new(e_plus, OrbitKind::Elliptic, unit.clone()),
            h_plus: SimpleOrbit::new(h_plus, OrbitKind::PositiveHyperbolic, unit),
        }
    }

    pub fn orbits(&self) -> impl Iterator<Item = &SimpleOrbit> {
        [&self.e, &self.h, &self.e_plus, &self.h_plus].into_iter()
    }
}

/// A finite orbit catalog for an `nvars`-component link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCatalog {
    id: String,
    nvars: usize,
    interior: Vec<SimpleOrbit>,
    boundary: Vec<BoundaryQuadruple>,
}

impl OrbitCatalog {
    pub fn new(nvars: usize, interior: Vec<SimpleOrbit>, boundary: Vec<BoundaryQuadruple>) -> Self {
        OrbitCatalog { id: "catalog".to_string(), nvars, interior, boundary }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn interior(&self) -> &[SimpleOrbit] {
        &self.interior
    }

    pub fn boundary(&self) -> &[BoundaryQuadruple] {
        &self.boundary
    }

    /// All orbits: interior first, then each component's quadruple in
    /// `(e, h, e+, h+)` order.
    pub fn all_orbits(&self) -> impl Iterator<Item = &SimpleOrbit> {
        self.interior.iter().chain(self.boundary.iter().flat_map(BoundaryQuadruple::orbits))
    }

    pub fn orbit(&self, id: &str) -> Option<&SimpleOrbit> {
        self.all_orbits().find(|o| o.id == id)
    }

    pub fn role(&self, id: &str) -> Option<OrbitRole> {
        if self.interior.iter().any(|o| o.id == id) {
            return Some(OrbitRole::Interior);
        }
        for (k, q) in self.boundary.iter().enumerate() {
            let i = k + 1;
            if q.e.id == id {
                return Some(OrbitRole::BoundaryE(i));
            }
            if q.h.id == id {
                return Some(OrbitRole::BoundaryH(i));
            }
            if q.e_plus.id == id {
                return Some(OrbitRole::BoundaryEPlus(i));
            }
            if q.h_plus.id == id {
                return Some(OrbitRole::BoundaryHPlus(i));
            }
        }
        None
    }

    /// Check every catalog invariant; an empty list means the catalog is
    /// well formed. Violations are data, not failures.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.nvars == 0 {
            out.push(Violation::catalog("variable count must be >= 1"));
        }
        if self.boundary.len() != self.nvars {
            out.push(Violation::catalog(format!(
                "expected {} boundary quadruples, found {}",
                self.nvars,
                self.boundary.len()
            )));
        }
        let mut seen = HashSet::new();
        for orbit in self.all_orbits() {
            if !seen.insert(orbit.id.clone()) {
                out.push(Violation::orbit(&orbit.id, "duplicate orbit id"));
            }
            if orbit.degree.len() != self.nvars {
                out.push(Violation::orbit(
                    &orbit.id,
                    format!(
                        "degree vector has length {}, expected {}",
                        orbit.degree.len(),
                        self.nvars
                    ),
                ));
                continue;
            }
            if !orbit.degree.is_nonnegative() || orbit.degree.is_zero() {
                out.push(Violation::orbit(
                    &orbit.id,
                    format!("degree {} must be componentwise >= 0 and nonzero", orbit.degree),
                ));
            }
            if let Some(action) = &orbit.action {
                if !action.is_positive() {
                    out.push(Violation::orbit(&orbit.id, "action must be strictly positive"));
                }
            }
        }
        for (k, q) in self.boundary.iter().enumerate() {
            let i = k + 1;
            let unit = ExpVec::unit(self.nvars.max(i), i);
            let expect = |o: &SimpleOrbit, kind: OrbitKind, out: &mut Vec<Violation>| {
                if o.kind != kind {
                    out.push(Violation::orbit(
                        &o.id,
                        format!("boundary orbit of component {i} must be {kind}, found {}", o.kind),
                    ));
                }
                if o.degree.len() == self.nvars && o.degree != unit {
                    out.push(Violation::orbit(
                        &o.id,
                        format!(
                            "boundary orbit of component {i} must have meridian degree {unit}, found {}",
                            o.degree
                        ),
                    ));
                }
            };
            expect(&q.e, OrbitKind::Elliptic, &mut out);
            expect(&q.h, OrbitKind::PositiveHyperbolic, &mut out);
            expect(&q.e_plus, OrbitKind::Elliptic, &mut out);
            expect(&q.h_plus, OrbitKind::PositiveHyperbolic, &mut out);
        }
        out
    }

    /// Validate and wrap violations in an error.
    pub fn ensure_valid(&self) -> Result<(), CatalogError> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(CatalogError::InvalidCatalog { violations })
        }
    }

    /// Multiplicity-weighted degree `Σ_i k_i deg(γ_i)` of an orbit set.
    pub fn orbit_set_degree(&self, s: &OrbitSet) -> Result<ExpVec, CatalogError> {
        let mut d = ExpVec::zero(self.nvars);
        for (id, &mult) in s.multiplicities() {
            let orbit = self
                .orbit(id)
                .ok_or_else(|| CatalogError::UnknownOrbit { id: id.clone() })?;
            d = d.add(&orbit.degree.scale(mult as i64));
        }
        Ok(d)
    }

    /// `(-1)^{number of positive hyperbolic orbits present}`.
    pub fn orbit_set_sign(&self, s: &OrbitSet) -> Result<i8, CatalogError> {
        let mut sign = 1i8;
        for (id, _) in s.multiplicities() {
            let orbit = self
                .orbit(id)
                .ok_or_else(|| CatalogError::UnknownOrbit { id: id.clone() })?;
            if orbit.kind == OrbitKind::PositiveHyperbolic {
                sign = -sign;
            }
        }
        Ok(sign)
    }

    /// Total action `Σ k_i A(γ_i)`, defined only when every orbit present
    /// carries an action.
    pub fn orbit_set_action(&self, s: &OrbitSet) -> Result<Option<BigRational>, CatalogError> {
        let mut total = BigRational::zero();
        for (id, &mult) in s.multiplicities() {
            let orbit = self
                .orbit(id)
                .ok_or_else(|| CatalogError::UnknownOrbit { id: id.clone() })?;
            match &orbit.action {
                Some(a) => total += a * BigRational::from_integer(mult.into()),
                None => return Ok(None),
            }
        }
        Ok(Some(total))
    }

    /// Check the multiplicity constraints of an orbit set against this
    /// catalog.
    pub fn check_orbit_set(&self, s: &OrbitSet) -> Result<(), CatalogError> {
        for (id, &mult) in s.multiplicities() {
            let orbit = self
                .orbit(id)
                .ok_or_else(|| CatalogError::UnknownOrbit { id: id.clone() })?;
            if orbit.kind.is_hyperbolic() && mult > 1 {
                return Err(CatalogError::HyperbolicMultiplicity { id: id.clone(), mult });
            }
        }
        Ok(())
    }

    /// The complete, duplicate-free list of orbit sets of degree exactly
    /// `d`, in a canonical deterministic order.
    ///
    /// Requires every catalog orbit to have nonzero total degree, which
    /// makes the enumeration finite.
    pub fn enumerate_orbit_sets(&self, d: &ExpVec) -> Result<Vec<OrbitSet>, CatalogError> {
        let orbits: Vec<&SimpleOrbit> = self.all_orbits().collect();
        for orbit in &orbits {
            if orbit.degree.is_zero() || !orbit.degree.is_nonnegative() {
                return Err(CatalogError::BadDegree {
                    id: orbit.id.clone(),
                    degree: orbit.degree.clone(),
                });
            }
        }
        let mut out = Vec::new();
        if !d.is_nonnegative() {
            return Ok(out);
        }
        let mut current: Vec<(String, u64)> = Vec::new();
        enumerate_rec(&orbits, 0, d.clone(), &mut current, &mut out);
        out.sort();
        Ok(out)
    }
}

fn enumerate_rec(
    orbits: &[&SimpleOrbit],
    idx: usize,
    remaining: ExpVec,
    current: &mut Vec<(String, u64)>,
    out: &mut Vec<OrbitSet>,
) {
    if idx == orbits.len() {
        if remaining.is_zero() {
            out.push(OrbitSet::from_pairs(current.iter().cloned()));
        }
        return;
    }
    let orbit = orbits[idx];
    let mut max_mult = 0u64;
    let mut acc = orbit.degree.clone();
    while acc.le(&remaining) {
        max_mult += 1;
        acc = acc.add(&orbit.degree);
    }
    if orbit.kind.is_hyperbolic() {
        max_mult = max_mult.min(1);
    }
    for mult in 0..=max_mult {
        if mult > 0 {
            current.push((orbit.id.clone(), mult));
        }
        let rest = remaining.sub(&orbit.degree.scale(mult as i64));
        enumerate_rec(orbits, idx + 1, rest, current, out);
        if mult > 0 {
            current.pop();
        }
    }
}

/// A multiset of simple orbits: a generator of the chain groups.
///
/// The empty orbit set is the chain-level unit `∅`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OrbitSet {
    mults: BTreeMap<String, u64>,
}

impl OrbitSet {
    pub fn empty() -> Self {
        OrbitSet::default()
    }

    /// Build from `(id, multiplicity)` pairs; zero multiplicities are
    /// dropped, duplicate ids summed.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, u64)>) -> Self {
        let mut mults: BTreeMap<String, u64> = BTreeMap::new();
        for (id, m) in pairs {
            if m > 0 {
                *mults.entry(id).or_insert(0) += m;
            }
        }
        OrbitSet { mults }
    }

    pub fn single(id: impl Into<String>) -> Self {
        Self::from_pairs([(id.into(), 1)])
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn multiplicity(&self, id: &str) -> u64 {
        self.mults.get(id).copied().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = (&String, &u64)> {
        self.mults.iter()
    }

    pub fn len_orbits(&self) -> usize {
        self.mults.len()
    }

    /// This set with the multiplicity of `id` changed by `delta`; `None`
    /// when the result would be negative.
    pub fn with_shift(&self, id: &str, delta: i64) -> Option<OrbitSet> {
        let cur = self.multiplicity(id) as i64;
        let new = cur + delta;
        if new < 0 {
            return None;
        }
        let mut mults = self.mults.clone();
        if new == 0 {
            mults.remove(id);
        } else {
            mults.insert(id.to_string(), new as u64);
        }
        Some(OrbitSet { mults })
    }

    /// Remove every factor of `id`.
    pub fn without(&self, id: &str) -> OrbitSet {
        let mut mults = self.mults.clone();
        mults.remove(id);
        OrbitSet { mults }
    }
}

impl fmt::Display for OrbitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mults.is_empty() {
            return f.write_str("empty");
        }
        let mut first = true;
        for (id, m) in &self.mults {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if *m == 1 {
                write!(f, "{id}")?;
            } else {
                write!(f, "{id}^{m}")?;
            }
        }
        Ok(())
    }
}

/// One invariant violation found by [`OrbitCatalog::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// The offending orbit, when the rule concerns a single orbit.
    pub orbit: Option<String>,
    pub rule: String,
}

impl Violation {
    fn orbit(id: &str, rule: impl Into<String>) -> Self {
        Violation { orbit: Some(id.to_string()), rule: rule.into() }
    }

    fn catalog(rule: impl Into<String>) -> Self {
        Violation { orbit: None, rule: rule.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.orbit {
            Some(id) => write!(f, "{id}: {}", self.rule),
            None => f.write_str(&self.rule),
        }
    }
}

/// Errors from catalog operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown orbit id `{id}`")]
    UnknownOrbit { id: String },
    #[error("orbit `{id}` has degree {degree}; degrees must be componentwise >= 0 and nonzero")]
    BadDegree { id: String, degree: ExpVec },
    #[error("hyperbolic orbit `{id}` has multiplicity {mult} > 1")]
    HyperbolicMultiplicity { id: String, mult: u64 },
    #[error("degenerate orbit: 1 is an eigenvalue of the linearized return map")]
    DegenerateOrbit,
    #[error("invalid catalog: {}", violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidCatalog { violations: Vec<Violation> },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn unknot_catalog() -> OrbitCatalog {
        OrbitCatalog::new(
            1,
            vec![SimpleOrbit::new("u", OrbitKind::Elliptic, ExpVec::new(vec![1]))],
            vec![BoundaryQuadruple::standard(1, 1, "e1", "h1", "e1p", "h1p")],
        )
    }

    #[test]
    fn lefschetz_signs() {
        assert_eq!(OrbitKind::Elliptic.lefschetz_sign(), 1);
        assert_eq!(OrbitKind::PositiveHyperbolic.lefschetz_sign(), -1);
        assert_eq!(OrbitKind::NegativeHyperbolic.lefschetz_sign(), 1);
    }

    #[test]
    fn cz_parity_matches_sign() {
        for kind in [
            OrbitKind::Elliptic,
            OrbitKind::PositiveHyperbolic,
            OrbitKind::NegativeHyperbolic,
        ] {
            let parity = kind.cz_parity();
            let expected = if parity % 2 == 0 { 1 } else { -1 };
            assert_eq!(expected, -(kind.lefschetz_sign() as i32));
        }
        assert_eq!(OrbitKind::Elliptic.cz_parity(), 1);
        assert_eq!(OrbitKind::PositiveHyperbolic.cz_parity(), 0);
        assert_eq!(OrbitKind::NegativeHyperbolic.cz_parity(), 1);
    }

    #[test]
    fn iterate_signs() {
        assert_eq!(OrbitKind::PositiveHyperbolic.iterate_sign(3), -1);
        assert_eq!(OrbitKind::Elliptic.iterate_sign(5), 1);
        assert_eq!(OrbitKind::NegativeHyperbolic.iterate_sign(1), 1);
        assert_eq!(OrbitKind::NegativeHyperbolic.iterate_sign(2), -1);
    }

    #[test]
    fn sign_from_linearized_matrices() {
        // rotation by 90 degrees: elliptic, det(I - L) = 2
        let rot = [
            [rational(0, 1), rational(-1, 1)],
            [rational(1, 1), rational(0, 1)],
        ];
        assert_eq!(sign_from_linearized(&rot).unwrap(), 1);

        // cat map: positive hyperbolic, det(I - L) = -1
        let cat_map = [
            [rational(2, 1), rational(1, 1)],
            [rational(1, 1), rational(1, 1)],
        ];
        assert_eq!(sign_from_linearized(&cat_map).unwrap(), -1);

        let identity = [
            [rational(1, 1), rational(0, 1)],
            [rational(0, 1), rational(1, 1)],
        ];
        assert!(matches!(sign_from_linearized(&identity), Err(CatalogError::DegenerateOrbit)));
    }

    #[test]
    fn local_zeta_closed_forms() {
        let e = SimpleOrbit::new("a", OrbitKind::Elliptic, ExpVec::new(vec![1]));
        assert_eq!(e.local_zeta(3).unwrap().poly().render(), "1 + t1 + t1^2 + t1^3");

        let ph = SimpleOrbit::new("b", OrbitKind::PositiveHyperbolic, ExpVec::new(vec![1, 2]));
        assert_eq!(ph.local_zeta(5).unwrap().poly().render(), "1 - t1*t2^2");

        let nh = SimpleOrbit::new("c", OrbitKind::NegativeHyperbolic, ExpVec::new(vec![2]));
        assert_eq!(nh.local_zeta(5).unwrap().poly().render(), "1 + t1^2");

        let zero = SimpleOrbit::new("z", OrbitKind::Elliptic, ExpVec::zero(1));
        assert!(matches!(zero.local_zeta(3), Err(CatalogError::BadDegree { .. })));
    }

    #[test]
    fn local_zeta_oracle_examples() {
        for (kind, expected) in [
            (OrbitKind::Elliptic, "1 + t1 + t1^2 + t1^3 + t1^4"),
            (OrbitKind::PositiveHyperbolic, "1 - t1"),
            (OrbitKind::NegativeHyperbolic, "1 + t1"),
        ] {
            let orbit = SimpleOrbit::new("x", kind, ExpVec::new(vec![1]));
            assert_eq!(orbit.local_zeta_oracle(4).unwrap().poly().render(), expected);
        }
    }

    #[test]
    fn local_zeta_equals_oracle_exhaustively() {
        // all kinds, all degree vectors with total <= 4, n <= 3, cutoff 16
        for nvars in 1..=3usize {
            let mut degrees = Vec::new();
            degree_vectors(nvars, 4, &mut vec![0; nvars], 0, &mut degrees);
            for degree in degrees {
                let e = ExpVec::new(degree);
                if e.is_zero() {
                    continue;
                }
                for kind in [
                    OrbitKind::Elliptic,
                    OrbitKind::PositiveHyperbolic,
                    OrbitKind::NegativeHyperbolic,
                ] {
                    let orbit = SimpleOrbit::new("x", kind, e.clone());
                    assert_eq!(
                        orbit.local_zeta(16).unwrap(),
                        orbit.local_zeta_oracle(16).unwrap(),
                        "kind {kind} degree {e}"
                    );
                }
            }
        }
    }

    fn degree_vectors(n: usize, max_total: i64, cur: &mut Vec<i64>, idx: usize, out: &mut Vec<Vec<i64>>) {
        if idx == n {
            out.push(cur.clone());
            return;
        }
        let used: i64 = cur[..idx].iter().sum();
        for v in 0..=(max_total - used) {
            cur[idx] = v;
            degree_vectors(n, max_total, cur, idx + 1, out);
        }
        cur[idx] = 0;
    }

    #[test]
    fn degree_and_sign_of_orbit_sets() {
        let cat = OrbitCatalog::new(
            2,
            vec![SimpleOrbit::new("g", OrbitKind::Elliptic, ExpVec::new(vec![1, 0]))],
            vec![
                BoundaryQuadruple::standard(2, 1, "e1", "h1", "e1p", "h1p"),
                BoundaryQuadruple::standard(2, 2, "e2", "h2", "e2p", "h2p"),
            ],
        );
        assert!(cat.validate().is_empty());

        let empty = OrbitSet::empty();
        assert_eq!(cat.orbit_set_degree(&empty).unwrap(), ExpVec::zero(2));
        assert_eq!(cat.orbit_set_sign(&empty).unwrap(), 1);

        let g2 = OrbitSet::from_pairs([("g".to_string(), 2)]);
        assert_eq!(cat.orbit_set_degree(&g2).unwrap(), ExpVec::new(vec![2, 0]));

        let mixed = OrbitSet::from_pairs([("e1".to_string(), 1), ("h2p".to_string(), 1)]);
        assert_eq!(cat.orbit_set_degree(&mixed).unwrap(), ExpVec::new(vec![1, 1]));
        assert_eq!(cat.orbit_set_sign(&mixed).unwrap(), -1);

        let two_hyp = OrbitSet::from_pairs([("h1".to_string(), 1), ("h1p".to_string(), 1)]);
        assert_eq!(cat.orbit_set_sign(&two_hyp).unwrap(), 1);

        let eh = OrbitSet::from_pairs([("e1p".to_string(), 1), ("h1p".to_string(), 1)]);
        assert_eq!(cat.orbit_set_sign(&eh).unwrap(), -1);

        let unknown = OrbitSet::single("nope");
        assert!(matches!(
            cat.orbit_set_degree(&unknown),
            Err(CatalogError::UnknownOrbit { .. })
        ));
    }

    #[test]
    fn orbit_set_sign_is_multiplicative() {
        let cat = unknot_catalog();
        let sets = cat.enumerate_orbit_sets(&ExpVec::new(vec![2])).unwrap();
        for a in &sets {
            for b in &sets {
                let union = OrbitSet::from_pairs(
                    a.multiplicities()
                        .chain(b.multiplicities())
                        .map(|(id, &m)| (id.clone(), m)),
                );
                if cat.check_orbit_set(&union).is_err() {
                    continue;
                }
                assert_eq!(
                    cat.orbit_set_sign(&union).unwrap(),
                    cat.orbit_set_sign(a).unwrap() * cat.orbit_set_sign(b).unwrap()
                );
            }
        }
    }

    #[test]
    fn enumeration_matches_hand_computation() {
        let cat = OrbitCatalog::new(
            1,
            vec![
                SimpleOrbit::new("g", OrbitKind::Elliptic, ExpVec::new(vec![1])),
                SimpleOrbit::new("d", OrbitKind::PositiveHyperbolic, ExpVec::new(vec![1])),
            ],
            vec![],
        );
        // boundary missing on purpose: enumeration does not require a valid
        // catalog, only nonzero degrees
        let sets = cat.enumerate_orbit_sets(&ExpVec::new(vec![2])).unwrap();
        let expected = vec![
            OrbitSet::from_pairs([("d".to_string(), 1), ("g".to_string(), 1)]),
            OrbitSet::from_pairs([("g".to_string(), 2)]),
        ];
        assert_eq!(sets, {
            let mut e = expected.clone();
            e.sort();
            e
        });

        assert_eq!(cat.enumerate_orbit_sets(&ExpVec::zero(1)).unwrap(), vec![OrbitSet::empty()]);

        let singles = cat.enumerate_orbit_sets(&ExpVec::new(vec![1])).unwrap();
        assert_eq!(singles.len(), 2);
    }

    #[test]
    fn enumeration_is_complete() {
        // brute-force recheck over all multiplicity vectors bounded by the
        // degree, independently of the recursive pruning
        let cat = unknot_catalog();
        let d = ExpVec::new(vec![3]);
        let sets = cat.enumerate_orbit_sets(&d).unwrap();
        let orbits: Vec<&SimpleOrbit> = cat.all_orbits().collect();
        let mut count = 0usize;
        let bound = 3u64;
        let k = orbits.len();
        let mut mults = vec![0u64; k];
        loop {
            let ok_mult = orbits
                .iter()
                .zip(&mults)
                .all(|(o, &m)| !(o.kind.is_hyperbolic() && m > 1));
            if ok_mult {
                let total: i64 = orbits
                    .iter()
                    .zip(&mults)
                    .map(|(o, &m)| o.degree.total() * m as i64)
                    .sum();
                if total == d.total() {
                    let set = OrbitSet::from_pairs(
                        orbits.iter().zip(&mults).map(|(o, &m)| (o.id.clone(), m)),
                    );
                    assert!(sets.contains(&set), "missing {set}");
                    count += 1;
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == k {
                    break;
                }
                mults[i] += 1;
                if mults[i] <= bound {
                    break;
                }
                mults[i] = 0;
                i += 1;
            }
            if i == k {
                break;
            }
        }
        assert_eq!(count, sets.len());
    }

    #[test]
    fn enumeration_rejects_zero_degree_orbits() {
        let cat = OrbitCatalog::new(
            1,
            vec![SimpleOrbit::new("z", OrbitKind::Elliptic, ExpVec::zero(1))],
            vec![BoundaryQuadruple::standard(1, 1, "e1", "h1", "e1p", "h1p")],
        );
        assert!(matches!(
            cat.enumerate_orbit_sets(&ExpVec::new(vec![1])),
            Err(CatalogError::BadDegree { .. })
        ));
    }

    #[test]
    fn validate_flags_bad_catalogs() {
        assert!(unknot_catalog().validate().is_empty());

        // h1 marked elliptic
        let mut bad = unknot_catalog();
        bad.boundary[0].h.kind = OrbitKind::Elliptic;
        let violations = bad.validate();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].orbit.as_deref(), Some("h1"));

        // meridian degree violated in a 2-component catalog
        let mut cat2 = OrbitCatalog::new(
            2,
            vec![],
            vec![
                BoundaryQuadruple::standard(2, 1, "e1", "h1", "e1p", "h1p"),
                BoundaryQuadruple::standard(2, 2, "e2", "h2", "e2p", "h2p"),
            ],
        );
        cat2.boundary[0].e.degree = ExpVec::new(vec![0, 1]);
        let violations = cat2.validate();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].orbit.as_deref(), Some("e1"));
        assert!(violations[0].rule.contains("meridian"));
    }

    #[test]
    fn validate_flags_duplicates_and_actions() {
        let mut cat = unknot_catalog();
        cat.interior.push(SimpleOrbit::new("u", OrbitKind::Elliptic, ExpVec::new(vec![1])));
        assert!(cat.validate().iter().any(|v| v.rule.contains("duplicate")));

        let mut cat = unknot_catalog();
        cat.interior[0].action = Some(rational(-1, 2));
        assert!(cat.validate().iter().any(|v| v.rule.contains("action")));
    }
}
