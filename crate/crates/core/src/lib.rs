//! Exact combinatorial engine for embedded contact knot (ECK) chain
//! complexes built from orbit catalogs.
//!
//! The crate provides:
//!
//! * [`ring`] — integer Laurent polynomials in several variables, truncated
//!   power series, and a rational-coefficient series oracle for exp/log
//!   identities. All arithmetic is exact; no floating point anywhere.
//! * [`orbitcat`] — orbit catalogs: simple Reeb orbits with their Lefschetz
//!   signs and multi-degrees, boundary quadruples `(e, h, e+, h+)` per link
//!   component, orbit-set enumeration and validation.
//! * [`zeta`] — twisted Lefschetz zeta functions and graded Euler
//!   characteristics of the full and hat chain groups, with an independent
//!   enumeration oracle.
//! * [`eckcomplex`] — the chain complexes over GF(2) with the explicit
//!   near-binding differentials, homology dimensions, the `[eγ] ~ [γ]`
//!   quotient and the connecting-map check.
//! * [`alexander`] — Alexander polynomials from monodromy matrices
//!   (`det(1 - tM)` by fraction-free elimination) and from catalogs,
//!   conversions between the Alexander quotient and `Δ`, the Torres
//!   formula, and Lefschetz numbers.

pub mod alexander;
pub mod eckcomplex;
pub mod orbitcat;
pub mod ring;
pub mod zeta;

pub use ring::{ExpVec, LaurentPoly, RationalSeries, RingError, TruncatedSeries};
