//! Seeded random catalogs (and interior differentials) for property suites.
//!
//! Sampling is deterministic for a fixed seed; the generated data always
//! satisfies every catalog invariant, and generated interior differentials
//! satisfy the structural constraints required of them (degree-preserving,
//! grading-flipping, action-decreasing, square zero).

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ring::ExpVec;

use super::{BoundaryQuadruple, OrbitCatalog, OrbitKind, OrbitSet, SimpleOrbit};

/// Bounds for [`random_catalog`].
#[derive(Debug, Clone, Copy)]
pub struct SampleParams {
    pub max_nvars: usize,
    pub max_interior: usize,
    /// Largest total degree of an interior orbit.
    pub max_degree_total: i64,
    pub with_actions: bool,
    /// Generate a nonzero interior differential when the catalog allows one.
    pub with_differential: bool,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams {
            max_nvars: 3,
            max_interior: 6,
            max_degree_total: 3,
            with_actions: false,
            with_differential: false,
        }
    }
}

/// A random valid catalog plus interior differential entries (empty unless
/// `with_differential` is set and the catalog admits a valid nonzero one).
pub fn random_catalog(seed: u64, params: &SampleParams) -> (OrbitCatalog, Vec<(OrbitSet, OrbitSet)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nvars = rng.random_range(1..=params.max_nvars);

    let mut interior = Vec::new();
    let n_interior = rng.random_range(0..=params.max_interior);
    for k in 0..n_interior {
        let kind = match rng.random_range(0..3) {
            0 => OrbitKind::Elliptic,
            1 => OrbitKind::PositiveHyperbolic,
            _ => OrbitKind::NegativeHyperbolic,
        };
        let degree = random_degree(&mut rng, nvars, params.max_degree_total);
        let mut orbit = SimpleOrbit::new(format!("g{}", k + 1), kind, degree);
        if params.with_actions {
            orbit = orbit.with_action(random_action(&mut rng, 10, 20));
        }
        interior.push(orbit);
    }

    let mut entries = Vec::new();
    if params.with_differential {
        // a cancelling pair: a positive hyperbolic source orbit and an
        // elliptic target orbit of the same degree
        let degree = random_degree(&mut rng, nvars, params.max_degree_total);
        let mut src = SimpleOrbit::new("d_src", OrbitKind::PositiveHyperbolic, degree.clone());
        let mut dst = SimpleOrbit::new("d_dst", OrbitKind::Elliptic, degree);
        if params.with_actions {
            let low = random_action(&mut rng, 10, 20);
            src.action = Some(&low + random_action(&mut rng, 1, 5));
            dst.action = Some(low);
        }
        interior.push(src);
        interior.push(dst);

        // spectator sets over the remaining interior orbits; every entry is
        // d_src * s -> d_dst * s, so sources and targets never meet and the
        // matrix squares to zero
        let spectators: Vec<&SimpleOrbit> =
            interior.iter().filter(|o| o.id != "d_src" && o.id != "d_dst").collect();
        let n_entries = rng.random_range(1..=3);
        for _ in 0..n_entries {
            let mut pairs = vec![("d_src".to_string(), 1u64)];
            let mut target_pairs = vec![("d_dst".to_string(), 1u64)];
            for orbit in &spectators {
                let cap = if orbit.kind.is_hyperbolic() { 1 } else { 2 };
                let m = rng.random_range(0..=cap);
                if m > 0 {
                    pairs.push((orbit.id.clone(), m));
                    target_pairs.push((orbit.id.clone(), m));
                }
            }
            let source = OrbitSet::from_pairs(pairs);
            let target = OrbitSet::from_pairs(target_pairs);
            if !entries.iter().any(|(s, _)| *s == source) {
                entries.push((source, target));
            }
        }
    }

    let mut boundary = Vec::new();
    for i in 1..=nvars {
        let mut q = BoundaryQuadruple::standard(
            nvars,
            i,
            format!("e{i}"),
            format!("h{i}"),
            format!("e{i}p"),
            format!("h{i}p"),
        );
        if params.with_actions {
            q.e.action = Some(random_action(&mut rng, 1, 5));
            q.h.action = Some(random_action(&mut rng, 1, 5));
            q.e_plus.action = Some(random_action(&mut rng, 30, 40));
            q.h_plus.action = Some(random_action(&mut rng, 30, 40));
        }
        boundary.push(q);
    }

    let cat = OrbitCatalog::new(nvars, interior, boundary)
        .with_id(format!("random-seed-{seed}"));
    debug_assert!(cat.validate().is_empty());
    (cat, entries)
}

fn random_degree(rng: &mut ChaCha8Rng, nvars: usize, max_total: i64) -> ExpVec {
    let total = rng.random_range(1..=max_total);
    let mut entries = vec![0i64; nvars];
    for _ in 0..total {
        entries[rng.random_range(0..nvars)] += 1;
    }
    ExpVec::new(entries)
}

fn random_action(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> BigRational {
    let num = rng.random_range(lo..=hi);
    let den = rng.random_range(1..=4);
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_catalogs_are_valid_and_deterministic() {
        for seed in 0..30 {
            let params = SampleParams { with_actions: true, with_differential: true, ..Default::default() };
            let (cat, entries) = random_catalog(seed, &params);
            assert!(cat.validate().is_empty(), "seed {seed}");
            let (cat2, entries2) = random_catalog(seed, &params);
            assert_eq!(cat, cat2);
            assert_eq!(entries, entries2);
            for (src, dst) in &entries {
                assert_eq!(
                    cat.orbit_set_degree(src).unwrap(),
                    cat.orbit_set_degree(dst).unwrap()
                );
                assert_eq!(
                    cat.orbit_set_sign(src).unwrap(),
                    -cat.orbit_set_sign(dst).unwrap()
                );
            }
        }
    }
}
