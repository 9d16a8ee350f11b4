//! The chain complexes over the two-element field.
//!
//! Generators are orbit sets in a flavor-dependent alphabet, windowed by
//! total degree. The boundary map realises, per link component,
//!
//! ```text
//! ∂(e+^a h+^b γ) = e+^{a-1} h+^b h γ  +  e+^a h+^{b-1} e γ  +  e+^a h+^b ∂γ
//! ```
//!
//! with every term zero if it gives an elliptic orbit negative multiplicity
//! or a hyperbolic orbit multiplicity outside {0,1}. The hat flavor drops
//! the `e+` orbits from the alphabet; the ech-restricted flavor adds the
//! degree-dropping plane term `e+^a h+^{b-1} γ` coming from `∂(h+) = e + ∅`.
//!
//! The interior differential is not derivable from catalog data and is
//! supplied as an explicit sparse matrix on interior orbit sets (default
//! zero); construction validates its structural constraints.

mod f2;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::orbitcat::{CatalogError, OrbitCatalog, OrbitRole, OrbitSet, SimpleOrbit};
use crate::ring::{ExpVec, LaurentPoly};

use f2::{kernel_basis, BitMatrix};

/// Which chain complex to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Degree-preserving differential on the full alphabet.
    Full,
    /// Degree-preserving differential, `e+` orbits excluded.
    Hat,
    /// The unrestricted differential including the plane from `h+` to the
    /// empty orbit; degree-nonincreasing rather than degree-preserving.
    EchRestricted,
}

impl Flavor {
    fn name(self) -> &'static str {
        match self {
            Flavor::Full => "full",
            Flavor::Hat => "hat",
            Flavor::EchRestricted => "ech-restricted",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// User-supplied part of the boundary map on interior orbit sets, as a
/// sparse GF(2) matrix given by (source, target) pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InteriorDifferential {
    entries: Vec<(OrbitSet, OrbitSet)>,
}

impl InteriorDifferential {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(entries: Vec<(OrbitSet, OrbitSet)>) -> Self {
        InteriorDifferential { entries }
    }

    pub fn entries(&self) -> &[(OrbitSet, OrbitSet)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Check every structural constraint against a catalog: entries live on
    /// interior orbits, preserve the degree, flip the sign, strictly
    /// decrease the action when actions are present, and square to zero.
    pub fn validate(&self, cat: &OrbitCatalog) -> Result<(), ComplexError> {
        let mut seen = BTreeSet::new();
        for (src, dst) in &self.entries {
            for set in [src, dst] {
                for (id, _) in set.multiplicities() {
                    match cat.role(id) {
                        Some(OrbitRole::Interior) => {}
                        Some(_) => {
                            return Err(ComplexError::NotInterior { id: id.clone() });
                        }
                        None => {
                            return Err(CatalogError::UnknownOrbit { id: id.clone() }.into());
                        }
                    }
                }
                cat.check_orbit_set(set)?;
            }
            if !seen.insert((src.clone(), dst.clone())) {
                return Err(ComplexError::Differential(format!(
                    "duplicate entry {src} -> {dst}"
                )));
            }
            if src == dst {
                return Err(ComplexError::Differential(format!(
                    "entry {src} -> {dst} maps a generator to itself"
                )));
            }
            let ds = cat.orbit_set_degree(src)?;
            let dt = cat.orbit_set_degree(dst)?;
            if ds != dt {
                return Err(ComplexError::Differential(format!(
                    "entry {src} -> {dst} changes degree {ds} -> {dt}"
                )));
            }
            if cat.orbit_set_sign(src)? != -cat.orbit_set_sign(dst)? {
                return Err(ComplexError::Differential(format!(
                    "entry {src} -> {dst} does not flip the grading"
                )));
            }
            if let (Some(a_src), Some(a_dst)) =
                (cat.orbit_set_action(src)?, cat.orbit_set_action(dst)?)
            {
                if a_src <= a_dst {
                    return Err(ComplexError::Differential(format!(
                        "entry {src} -> {dst} does not decrease the action"
                    )));
                }
            }
        }
        // square-zero on the interior alphabet
        let mut map: HashMap<&OrbitSet, Vec<&OrbitSet>> = HashMap::new();
        for (src, dst) in &self.entries {
            map.entry(src).or_default().push(dst);
        }
        for (src, firsts) in &map {
            let mut seconds: Vec<&OrbitSet> = Vec::new();
            for t in firsts {
                if let Some(next) = map.get(*t) {
                    seconds.extend(next.iter());
                }
            }
            seconds.sort();
            let mut i = 0;
            while i < seconds.len() {
                let j = i;
                while i < seconds.len() && seconds[i] == seconds[j] {
                    i += 1;
                }
                if (i - j) % 2 == 1 {
                    return Err(ComplexError::Differential(format!(
                        "differential does not square to zero on {src}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Per-component boundary orbit names plus the interior id set.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Shape {
    e: Vec<String>,
    h: Vec<String>,
    e_plus: Vec<String>,
    h_plus: Vec<String>,
    interior_ids: BTreeSet<String>,
}

impl Shape {
    fn of(cat: &OrbitCatalog) -> Shape {
        Shape {
            e: cat.boundary().iter().map(|q| q.e.id.clone()).collect(),
            h: cat.boundary().iter().map(|q| q.h.id.clone()).collect(),
            e_plus: cat.boundary().iter().map(|q| q.e_plus.id.clone()).collect(),
            h_plus: cat.boundary().iter().map(|q| q.h_plus.id.clone()).collect(),
            interior_ids: cat.interior().iter().map(|o| o.id.clone()).collect(),
        }
    }
}

/// A finite window of one of the chain complexes, with its boundary map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplexF2 {
    flavor: Flavor,
    cutoff: usize,
    nvars: usize,
    shape: Shape,
    generators: Vec<OrbitSet>,
    degrees: Vec<ExpVec>,
    gradings: Vec<u8>,
    boundary: Vec<Vec<u32>>,
    /// Components whose `e_i` has been identified with the empty orbit
    /// (1-based), in increasing order.
    quotiented: Vec<usize>,
}

/// Homology dimensions per (degree, grading); zero entries omitted.
///
/// For quotient complexes the degree entries of quotiented components are
/// masked to zero and listed in `quotiented`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    pub nvars: usize,
    pub quotiented: Vec<usize>,
    pub dims: BTreeMap<(ExpVec, u8), usize>,
}

impl HomologySummary {
    /// Entries sorted by total degree, then degree, then grading.
    pub fn entries(&self) -> impl Iterator<Item = (&ExpVec, u8, usize)> {
        self.dims.iter().map(|((d, g), &dim)| (d, *g, dim))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }
}

/// Which side of `χ(C) = χ(H(C))` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiSource {
    Chain,
    Homology,
}

/// Build the windowed chain complex of the given flavor.
///
/// Generators are all orbit sets of total degree ≤ `cutoff` in the flavor's
/// alphabet; both the catalog and the interior differential are validated
/// first.
pub fn build_complex(
    cat: &OrbitCatalog,
    interior: &InteriorDifferential,
    flavor: Flavor,
    cutoff: usize,
) -> Result<ChainComplexF2, ComplexError> {
    cat.ensure_valid()?;
    interior.validate(cat)?;

    // alphabet: interior orbits first, then boundary quadruples
    let interior_orbits: Vec<&SimpleOrbit> = cat.interior().iter().collect();
    let k = interior_orbits.len();
    let mut alphabet: Vec<&SimpleOrbit> = interior_orbits;
    let mut e_pos = Vec::new();
    let mut h_pos = Vec::new();
    let mut ep_pos = Vec::new();
    let mut hp_pos = Vec::new();
    for q in cat.boundary() {
        e_pos.push(alphabet.len());
        alphabet.push(&q.e);
        h_pos.push(alphabet.len());
        alphabet.push(&q.h);
        if flavor != Flavor::Hat {
            ep_pos.push(Some(alphabet.len()));
            alphabet.push(&q.e_plus);
        } else {
            ep_pos.push(None);
        }
        hp_pos.push(alphabet.len());
        alphabet.push(&q.h_plus);
    }

    // enumerate generators
    let mut raw: Vec<(Vec<u16>, ExpVec, u8)> = Vec::new();
    let mut mults = vec![0u16; alphabet.len()];
    enumerate_generators(
        &alphabet,
        0,
        cutoff as i64,
        ExpVec::zero(cat.nvars()),
        0,
        &mut mults,
        &mut raw,
    );
    raw.sort_by(|a, b| {
        (a.1.total(), &a.1, &a.0).cmp(&(b.1.total(), &b.1, &b.0))
    });
    let index: HashMap<Vec<u16>, u32> =
        raw.iter().enumerate().map(|(i, (m, _, _))| (m.clone(), i as u32)).collect();

    // interior entries as multiplicity slices over positions 0..k
    let interior_pos: HashMap<&str, usize> = cat
        .interior()
        .iter()
        .enumerate()
        .map(|(i, o)| (o.id.as_str(), i))
        .collect();
    let to_slice = |set: &OrbitSet| -> Vec<u16> {
        let mut v = vec![0u16; k];
        for (id, &m) in set.multiplicities() {
            v[interior_pos[id.as_str()]] = m as u16;
        }
        v
    };
    let mut entry_map: HashMap<Vec<u16>, Vec<Vec<u16>>> = HashMap::new();
    for (src, dst) in interior.entries() {
        entry_map.entry(to_slice(src)).or_default().push(to_slice(dst));
    }

    // boundary map
    let nvars = cat.nvars();
    let mut boundary = Vec::with_capacity(raw.len());
    for (mults, _, _) in &raw {
        let mut targets: Vec<u32> = Vec::new();
        let push = |v: Vec<u16>, targets: &mut Vec<u32>| {
            let idx = index
                .get(&v)
                .expect("boundary target must lie in the generator window");
            targets.push(*idx);
        };
        for i in 0..nvars {
            // e+ decrement, h increment; zero if h is already present
            if let Some(ep) = ep_pos[i] {
                if mults[ep] >= 1 && mults[h_pos[i]] == 0 {
                    let mut v = mults.clone();
                    v[ep] -= 1;
                    v[h_pos[i]] += 1;
                    push(v, &mut targets);
                }
            }
            // h+ decrement, e increment
            if mults[hp_pos[i]] >= 1 {
                let mut v = mults.clone();
                v[hp_pos[i]] -= 1;
                v[e_pos[i]] += 1;
                push(v, &mut targets);
                // the degree-dropping plane from h+ to the empty orbit
                if flavor == Flavor::EchRestricted {
                    let mut v = mults.clone();
                    v[hp_pos[i]] -= 1;
                    push(v, &mut targets);
                }
            }
        }
        if !entry_map.is_empty() {
            if let Some(outs) = entry_map.get(&mults[..k]) {
                for out in outs {
                    let mut v = mults.clone();
                    v[..k].copy_from_slice(out);
                    push(v, &mut targets);
                }
            }
        }
        boundary.push(xor_reduce(targets));
    }

    let generators: Vec<OrbitSet> = raw
        .iter()
        .map(|(mults, _, _)| {
            OrbitSet::from_pairs(
                mults
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m > 0)
                    .map(|(p, &m)| (alphabet[p].id.clone(), m as u64)),
            )
        })
        .collect();
    let degrees: Vec<ExpVec> = raw.iter().map(|(_, d, _)| d.clone()).collect();
    let gradings: Vec<u8> = raw.iter().map(|(_, _, g)| *g).collect();

    Ok(ChainComplexF2 {
        flavor,
        cutoff,
        nvars,
        shape: Shape::of(cat),
        generators,
        degrees,
        gradings,
        boundary,
        quotiented: Vec::new(),
    })
}

fn enumerate_generators(
    alphabet: &[&SimpleOrbit],
    idx: usize,
    remaining: i64,
    degree: ExpVec,
    grading: u8,
    mults: &mut Vec<u16>,
    out: &mut Vec<(Vec<u16>, ExpVec, u8)>,
) {
    if idx == alphabet.len() {
        out.push((mults.clone(), degree, grading));
        return;
    }
    let orbit = alphabet[idx];
    let step = orbit.degree.total();
    let mut cap = remaining / step;
    if orbit.kind.is_hyperbolic() {
        cap = cap.min(1);
    }
    for m in 0..=cap {
        mults[idx] = m as u16;
        let flip = orbit.kind == crate::orbitcat::OrbitKind::PositiveHyperbolic && m == 1;
        enumerate_generators(
            alphabet,
            idx + 1,
            remaining - m * step,
            degree.add(&orbit.degree.scale(m)),
            if flip { grading ^ 1 } else { grading },
            mults,
            out,
        );
    }
    mults[idx] = 0;
}

fn xor_reduce(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    let mut out = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        let j = i;
        while i < v.len() && v[i] == v[j] {
            i += 1;
        }
        if (i - j) % 2 == 1 {
            out.push(v[j]);
        }
    }
    out
}

impl ChainComplexF2 {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[OrbitSet] {
        &self.generators
    }

    pub fn degree(&self, idx: usize) -> &ExpVec {
        &self.degrees[idx]
    }

    pub fn grading(&self, idx: usize) -> u8 {
        self.gradings[idx]
    }

    pub fn boundary_of(&self, idx: usize) -> &[u32] {
        &self.boundary[idx]
    }

    pub fn quotiented(&self) -> &[usize] {
        &self.quotiented
    }

    pub fn find(&self, set: &OrbitSet) -> Option<usize> {
        self.generators.iter().position(|g| g == set)
    }

    /// Toggle one boundary matrix entry. Negative-control hook for tests;
    /// the builder never produces a complex that needs this.
    pub fn toggle_boundary_entry(&mut self, from: usize, to: u32) {
        let row = &mut self.boundary[from];
        match row.binary_search(&to) {
            Ok(pos) => {
                row.remove(pos);
            }
            Err(pos) => {
                row.insert(pos, to);
            }
        }
    }

    /// Whether the boundary map squares to zero.
    pub fn d_squared_zero(&self) -> bool {
        self.boundary.iter().all(|targets| {
            let second: Vec<u32> = targets
                .iter()
                .flat_map(|&t| self.boundary[t as usize].iter().copied())
                .collect();
            xor_reduce(second).is_empty()
        })
    }

    /// Degree with quotiented components masked to zero.
    fn masked_degree(&self, idx: usize) -> ExpVec {
        if self.quotiented.is_empty() {
            return self.degrees[idx].clone();
        }
        let mut v = self.degrees[idx].entries().to_vec();
        for &c in &self.quotiented {
            v[c - 1] = 0;
        }
        ExpVec::new(v)
    }

    /// Exponent for χ: quotiented components dropped.
    fn chi_exponent(&self, d: &ExpVec) -> ExpVec {
        let mut out = d.clone();
        for &c in self.quotiented.iter().rev() {
            out = out.drop_var(c);
        }
        out
    }

    /// Homology dimensions per (masked degree, grading) by exact elimination
    /// over GF(2).
    ///
    /// Requires a degree-preserving flavor; the ech-restricted differential
    /// mixes degrees, use [`ChainComplexF2::homology_by_grading`] there.
    pub fn homology_dims(&self) -> Result<HomologySummary, ComplexError> {
        if self.flavor == Flavor::EchRestricted {
            return Err(ComplexError::WrongFlavor {
                expected: "full or hat",
                found: self.flavor.name(),
            });
        }
        if !self.d_squared_zero() {
            return Err(ComplexError::NotSquareZero);
        }
        let mut blocks: BTreeMap<ExpVec, [Vec<u32>; 2]> = BTreeMap::new();
        for idx in 0..self.len() {
            let key = self.masked_degree(idx);
            blocks.entry(key).or_default()[self.gradings[idx] as usize].push(idx as u32);
        }
        let mut dims = BTreeMap::new();
        for (degree, [g0, g1]) in &blocks {
            let rank_a = self.block_rank(g0, g1);
            let rank_b = self.block_rank(g1, g0);
            let h0 = g0.len() - rank_a - rank_b;
            let h1 = g1.len() - rank_b - rank_a;
            if h0 > 0 {
                dims.insert((degree.clone(), 0u8), h0);
            }
            if h1 > 0 {
                dims.insert((degree.clone(), 1u8), h1);
            }
        }
        Ok(HomologySummary { nvars: self.nvars, quotiented: self.quotiented.clone(), dims })
    }

    /// Rank of the boundary map from the generators in `from` into the span
    /// of the generators in `to`.
    fn block_rank(&self, from: &[u32], to: &[u32]) -> usize {
        if from.is_empty() || to.is_empty() {
            return 0;
        }
        let col: HashMap<u32, usize> = to.iter().enumerate().map(|(c, &i)| (i, c)).collect();
        let mut m = BitMatrix::new(to.len());
        for &g in from {
            m.push_row(
                self.boundary[g as usize]
                    .iter()
                    .filter_map(|t| col.get(t).copied()),
            );
        }
        m.rank()
    }

    /// Total homology dimension per grading, ignoring the degree. Works for
    /// every flavor (the differential always flips the grading).
    pub fn homology_by_grading(&self) -> Result<[usize; 2], ComplexError> {
        if !self.d_squared_zero() {
            return Err(ComplexError::NotSquareZero);
        }
        let mut g0 = Vec::new();
        let mut g1 = Vec::new();
        for idx in 0..self.len() {
            if self.gradings[idx] == 0 {
                g0.push(idx as u32);
            } else {
                g1.push(idx as u32);
            }
        }
        let rank_a = self.block_rank(&g0, &g1);
        let rank_b = self.block_rank(&g1, &g0);
        Ok([g0.len() - rank_a - rank_b, g1.len() - rank_b - rank_a])
    }

    /// The graded Euler characteristic `Σ_d (Σ_g (-1)^g dim) x^d`, from the
    /// chain groups or from homology. Rejected for the ech-restricted
    /// flavor, whose differential does not preserve the degree.
    pub fn chi(&self, source: ChiSource) -> Result<LaurentPoly, ComplexError> {
        if self.flavor == Flavor::EchRestricted {
            return Err(ComplexError::WrongFlavor {
                expected: "full or hat",
                found: self.flavor.name(),
            });
        }
        let out_vars = self.nvars - self.quotiented.len();
        let mut terms: Vec<(ExpVec, num_bigint::BigInt)> = Vec::new();
        match source {
            ChiSource::Chain => {
                for idx in 0..self.len() {
                    let e = self.chi_exponent(&self.degrees[idx]);
                    let sign = if self.gradings[idx] == 0 { 1 } else { -1 };
                    terms.push((e, sign.into()));
                }
            }
            ChiSource::Homology => {
                let summary = self.homology_dims()?;
                for ((d, g), dim) in &summary.dims {
                    let e = self.chi_exponent(d);
                    let sign: i64 = if *g == 0 { *dim as i64 } else { -(*dim as i64) };
                    terms.push((e, sign.into()));
                }
            }
        }
        Ok(LaurentPoly::from_terms(out_vars, terms).expect("exponent lengths are uniform"))
    }

    /// The quotient by `[e_i γ] ~ [γ]` for one component: generators without
    /// `e_i`, boundary entries with every `e_i` factor erased, reduced
    /// mod 2. Idempotent. The component's degree survives only masked.
    pub fn quotient_by_e(&self, component: usize) -> Result<ChainComplexF2, ComplexError> {
        if self.flavor == Flavor::EchRestricted {
            return Err(ComplexError::WrongFlavor {
                expected: "full or hat",
                found: self.flavor.name(),
            });
        }
        if component < 1 || component > self.nvars {
            return Err(ComplexError::ComponentRange { component, nvars: self.nvars });
        }
        let e_id = self.shape.e[component - 1].clone();
        let reps: Vec<u32> = (0..self.len() as u32)
            .filter(|&i| self.generators[i as usize].multiplicity(&e_id) == 0)
            .collect();
        let new_index: HashMap<&OrbitSet, u32> = reps
            .iter()
            .enumerate()
            .map(|(new, &old)| (&self.generators[old as usize], new as u32))
            .collect();
        let mut generators = Vec::with_capacity(reps.len());
        let mut degrees = Vec::with_capacity(reps.len());
        let mut gradings = Vec::with_capacity(reps.len());
        let mut boundary = Vec::with_capacity(reps.len());
        for &old in &reps {
            generators.push(self.generators[old as usize].clone());
            degrees.push(self.degrees[old as usize].clone());
            gradings.push(self.gradings[old as usize]);
            let targets: Vec<u32> = self.boundary[old as usize]
                .iter()
                .map(|&t| {
                    let erased = self.generators[t as usize].without(&e_id);
                    *new_index
                        .get(&erased)
                        .expect("erased target is a representative in the window")
                })
                .collect();
            boundary.push(xor_reduce(targets));
        }
        let mut quotiented = self.quotiented.clone();
        if !quotiented.contains(&component) {
            quotiented.push(component);
            quotiented.sort_unstable();
        }
        Ok(ChainComplexF2 {
            flavor: self.flavor,
            cutoff: self.cutoff,
            nvars: self.nvars,
            shape: self.shape.clone(),
            generators,
            degrees,
            gradings,
            boundary,
            quotiented,
        })
    }

    /// For the ech-restricted flavor: every boundary entry must weakly
    /// decrease the degree, and a strict drop must be by exactly one unit in
    /// exactly one component whose `h_i+` the source contains.
    pub fn filtration_check(&self) -> Result<bool, ComplexError> {
        if self.flavor != Flavor::EchRestricted {
            return Err(ComplexError::WrongFlavor {
                expected: "ech-restricted",
                found: self.flavor.name(),
            });
        }
        for (gi, targets) in self.boundary.iter().enumerate() {
            let dg = &self.degrees[gi];
            for &t in targets {
                let dt = &self.degrees[t as usize];
                if !dt.le(dg) {
                    return Ok(false);
                }
                if dt != dg {
                    let diff = dg.sub(dt);
                    let mut unit_at = None;
                    for (pos, &v) in diff.entries().iter().enumerate() {
                        if v == 0 {
                            continue;
                        }
                        if v != 1 || unit_at.is_some() {
                            return Ok(false);
                        }
                        unit_at = Some(pos + 1);
                    }
                    let Some(i) = unit_at else { return Ok(false) };
                    if self.generators[gi].multiplicity(&self.shape.h_plus[i - 1]) == 0 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Whether every boundary entry strictly decreases the total action,
    /// among entries where both endpoints have defined actions. `None` when
    /// no entry could be checked.
    pub fn action_monotone(&self, cat: &OrbitCatalog) -> Result<Option<bool>, ComplexError> {
        let mut checked = false;
        for (gi, targets) in self.boundary.iter().enumerate() {
            let src = cat.orbit_set_action(&self.generators[gi])?;
            let Some(src) = src else { continue };
            for &t in targets {
                let dst = cat.orbit_set_action(&self.generators[t as usize])?;
                let Some(dst) = dst else { continue };
                checked = true;
                if src <= dst {
                    return Ok(Some(false));
                }
            }
        }
        Ok(if checked { Some(true) } else { None })
    }
}

/// One window of the connecting-map analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectingWindow {
    pub window: usize,
    /// Dimension of the homology of the `h+ · C^{e+}` quotient complex.
    pub domain_dim: usize,
    /// Whether `d([h+ γ]) = [γ + eγ]` is injective on that homology.
    pub injective: bool,
    /// Cokernel dimensions per grading.
    pub coker_dims: [usize; 2],
    /// Homology dimensions per grading of the ech-restricted complex.
    pub ech_dims: [usize; 2],
    pub coker_matches: bool,
}

impl ConnectingWindow {
    pub fn passes(&self) -> bool {
        self.injective && self.coker_matches
    }
}

/// Report of the connecting-map check at a degree window.
///
/// `stable` is the analysis at window `cutoff - 1` (the stable range, where
/// the spec's pass criterion lives); `full_window` repeats it at `cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectingMapReport {
    pub cutoff: usize,
    pub stable: ConnectingWindow,
    pub full_window: ConnectingWindow,
}

impl ConnectingMapReport {
    pub fn passes(&self) -> bool {
        self.stable.passes()
    }
}

/// Check the snake-lemma structure that kills `h+`: build the ech-restricted
/// complex, split off the `e+`-only subcomplex, and verify that the
/// connecting map `d([h+ γ]) = [γ + eγ]` is injective with cokernel matching
/// the homology of the whole complex. One-component catalogs only.
pub fn connecting_map_check(
    cat: &OrbitCatalog,
    interior: &InteriorDifferential,
    cutoff: usize,
) -> Result<ConnectingMapReport, ComplexError> {
    if cat.nvars() != 1 {
        return Err(ComplexError::KnotOnly { nvars: cat.nvars() });
    }
    if cutoff < 1 {
        return Err(ComplexError::CutoffTooSmall);
    }
    let c_stable = build_complex(cat, interior, Flavor::EchRestricted, cutoff - 1)?;
    let c_full = build_complex(cat, interior, Flavor::EchRestricted, cutoff)?;
    Ok(ConnectingMapReport {
        cutoff,
        stable: analyze_connecting_window(&c_stable)?,
        full_window: analyze_connecting_window(&c_full)?,
    })
}

/// The window analysis on a prebuilt ech-restricted complex. Exposed so
/// negative-control tests can corrupt the complex first.
#[doc(hidden)]
pub fn analyze_connecting_window(c: &ChainComplexF2) -> Result<ConnectingWindow, ComplexError> {
    if c.flavor != Flavor::EchRestricted {
        return Err(ComplexError::WrongFlavor {
            expected: "ech-restricted",
            found: c.flavor.name(),
        });
    }
    let h_plus = &c.shape.h_plus[0];
    let mut e_part: Vec<u32> = Vec::new();
    let mut h_part: Vec<u32> = Vec::new();
    for i in 0..c.len() as u32 {
        if c.generators[i as usize].multiplicity(h_plus) == 0 {
            e_part.push(i);
        } else {
            h_part.push(i);
        }
    }
    let e_local: HashMap<u32, usize> = e_part.iter().enumerate().map(|(l, &g)| (g, l)).collect();

    // targets of an e+-part generator never contain h+, so the e+ part is a
    // subcomplex and its differential preserves the degree; homology per
    // grading is summed over degree blocks
    let mut h_e_dims = [0usize; 2];
    {
        let mut blocks: BTreeMap<&ExpVec, [Vec<u32>; 2]> = BTreeMap::new();
        for &g in &e_part {
            blocks.entry(&c.degrees[g as usize]).or_default()[c.gradings[g as usize] as usize]
                .push(g);
        }
        for (_, [b0, b1]) in blocks {
            let rank_a = c.block_rank(&b0, &b1);
            let rank_b = c.block_rank(&b1, &b0);
            h_e_dims[0] += b0.len() - rank_a - rank_b;
            h_e_dims[1] += b1.len() - rank_b - rank_a;
        }
    }

    // cycle bases of the h+ quotient complex per (degree, grading) block;
    // the induced differential keeps the h+ factor and preserves the degree
    let mut blocks: BTreeMap<&ExpVec, [Vec<u32>; 2]> = BTreeMap::new();
    for &g in &h_part {
        blocks.entry(&c.degrees[g as usize]).or_default()[c.gradings[g as usize] as usize].push(g);
    }
    let mut domain_dims = [0usize; 2];
    let mut images: [Vec<Vec<usize>>; 2] = [Vec::new(), Vec::new()]; // by domain grading
    for (_, [b0, b1]) in &blocks {
        for (grading, block, other) in [(0usize, b0, b1), (1, b1, b0)] {
            if block.is_empty() {
                continue;
            }
            let other_col: HashMap<u32, usize> =
                other.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            let rows: Vec<Vec<usize>> = block
                .iter()
                .map(|&g| {
                    c.boundary[g as usize]
                        .iter()
                        .filter_map(|t| other_col.get(t).copied())
                        .collect()
                })
                .collect();
            let cycles = kernel_basis(&rows, other.len());
            let b_rank = c.block_rank(other, block);
            domain_dims[grading] += cycles.len().saturating_sub(b_rank);
            // connecting map: apply the full differential to the cycle and
            // keep the part that lands in the e+ subcomplex
            for cycle in cycles {
                let image = xor_usize(cycle.iter().flat_map(|&l| {
                    c.boundary[block[l] as usize]
                        .iter()
                        .filter_map(|t| e_local.get(t).copied())
                }));
                images[grading].push(image);
            }
        }
    }

    // independent image classes modulo the boundary space of the e+ part
    let mut rank_phi = [0usize; 2]; // indexed by domain grading
    let mut injective = true;
    for grading in 0..2usize {
        let mut m = BitMatrix::new(e_part.len());
        for &g in &e_part {
            if c.gradings[g as usize] as usize == grading {
                m.push_row(
                    c.boundary[g as usize].iter().filter_map(|t| e_local.get(t).copied()),
                );
            }
        }
        let base = m.clone().rank();
        for image in &images[grading] {
            m.push_row(image.iter().copied());
        }
        rank_phi[grading] = m.rank() - base;
        // the induced map on homology is injective iff the image classes
        // are as independent as the domain is large
        if rank_phi[grading] != domain_dims[grading] {
            injective = false;
        }
    }

    let coker_dims = [
        h_e_dims[0].saturating_sub(rank_phi[1]),
        h_e_dims[1].saturating_sub(rank_phi[0]),
    ];
    let ech_dims = c.homology_by_grading()?;
    Ok(ConnectingWindow {
        window: c.cutoff,
        domain_dim: domain_dims[0] + domain_dims[1],
        injective,
        coker_dims,
        ech_dims,
        coker_matches: coker_dims == ech_dims,
    })
}

fn xor_usize(iter: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = iter.collect();
    v.sort_unstable();
    let mut out = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let j = i;
        while i < v.len() && v[i] == v[j] {
            i += 1;
        }
        if (i - j) % 2 == 1 {
            out.push(v[j]);
        }
    }
    out
}

/// Errors from chain-complex operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("orbit `{id}` in the interior differential is a boundary orbit")]
    NotInterior { id: String },
    #[error("invalid interior differential: {0}")]
    Differential(String),
    #[error("boundary map does not square to zero")]
    NotSquareZero,
    #[error("operation requires flavor {expected}, found {found}")]
    WrongFlavor { expected: &'static str, found: &'static str },
    #[error("component {component} out of range 1..={nvars}")]
    ComponentRange { component: usize, nvars: usize },
    #[error("connecting-map check requires a one-component catalog, found {nvars} components")]
    KnotOnly { nvars: usize },
    #[error("connecting-map check requires cutoff >= 1")]
    CutoffTooSmall,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbitcat::{BoundaryQuadruple, OrbitKind, SimpleOrbit};

    fn empty1() -> OrbitCatalog {
        OrbitCatalog::new(
            1,
            vec![],
            vec![BoundaryQuadruple::standard(1, 1, "e1", "h1", "e1p", "h1p")],
        )
        .with_id("empty1")
    }

    fn unknot() -> OrbitCatalog {
        OrbitCatalog::new(
            1,
            vec![SimpleOrbit::new("u", OrbitKind::Elliptic, ExpVec::new(vec![1]))],
            vec![BoundaryQuadruple::standard(1, 1, "e1", "h1", "e1p", "h1p")],
        )
        .with_id("unknot")
    }

    fn targets_of(c: &ChainComplexF2, set: &OrbitSet) -> Vec<OrbitSet> {
        let idx = c.find(set).expect("generator exists");
        c.boundary_of(idx)
            .iter()
            .map(|&t| c.generators()[t as usize].clone())
            .collect()
    }

    #[test]
    fn near_binding_relations() {
        let full = build_complex(&empty1(), &InteriorDifferential::zero(), Flavor::Full, 2).unwrap();
        assert_eq!(targets_of(&full, &OrbitSet::single("h1p")), vec![OrbitSet::single("e1")]);
        assert_eq!(targets_of(&full, &OrbitSet::single("e1p")), vec![OrbitSet::single("h1")]);
        assert_eq!(targets_of(&full, &OrbitSet::single("e1")), vec![]);
        assert_eq!(targets_of(&full, &OrbitSet::single("h1")), vec![]);

        let ech =
            build_complex(&empty1(), &InteriorDifferential::zero(), Flavor::EchRestricted, 2)
                .unwrap();
        let mut t = targets_of(&ech, &OrbitSet::single("h1p"));
        t.sort();
        assert_eq!(t, vec![OrbitSet::empty(), OrbitSet::single("e1")]);
    }

    #[test]
    fn hat_alphabet_omits_e_plus() {
        let hat = build_complex(&empty1(), &InteriorDifferential::zero(), Flavor::Hat, 3).unwrap();
        assert!(hat.generators().iter().all(|g| g.multiplicity("e1p") == 0));
        assert_eq!(targets_of(&hat, &OrbitSet::single("h1p")), vec![OrbitSet::single("e1")]);
    }

    #[test]
    fn d_squared_is_zero_and_corruptible() {
        for flavor in [Flavor::Full, Flavor::Hat, Flavor::EchRestricted] {
            let c = build_complex(&unknot(), &InteriorDifferential::zero(), flavor, 4).unwrap();
            assert!(c.d_squared_zero(), "{flavor}");
        }
        let mut c =
            build_complex(&unknot(), &InteriorDifferential::zero(), Flavor::Full, 3).unwrap();
        // connect two generators that break the square
        let h1p = c.find(&OrbitSet::single("h1p")).unwrap() as u32;
        let e1p = c.find(&OrbitSet::single("e1p")).unwrap();
        c.toggle_boundary_entry(e1p, h1p);
        assert!(!c.d_squared_zero());

        let empty = build_complex(&empty1(), &InteriorDifferential::zero(), Flavor::Full, 0).unwrap();
        assert_eq!(empty.len(), 1); // just the empty orbit set
        assert!(empty.d_squared_zero());
    }

    #[test]
    fn homology_of_hat_empty1() {
        let c = build_complex(&empty1(), &InteriorDifferential::zero(), Flavor::Hat, 1).unwrap();
        assert_eq!(c.len(), 4); // empty, e1, h1, h1p
        let summary = c.homology_dims().unwrap();
        let expected: Vec<(ExpVec, u8, usize)> = vec![
            (ExpVec::new(vec![0]), 0, 1),
            (ExpVec::new(vec![1]), 1, 1),
        ];
        let got: Vec<(ExpVec, u8, usize)> =
            summary.entries().map(|(d, g, dim)| (d.clone(), g, dim)).collect();
        assert_eq!(got, expected);

        assert_eq!(c.chi(ChiSource::Chain).unwrap().render(), "1 - t1");
        assert_eq!(c.chi(ChiSource::Homology).unwrap().render(), "1 - t1");
    }

    #[test]
    fn full_degree_zero_part_is_empty_orbit() {
        let c = build_complex(&unknot(), &InteriorDifferential::zero(), Flavor::Full, 3).unwrap();
        let summary = c.homology_dims().unwrap();
        assert_eq!(summary.dims.get(&(ExpVec::new(vec![0]), 0)), Some(&1));
        assert_eq!(summary.dims.get(&(ExpVec::new(vec![0]), 1)), None);
    }

    #[test]
    fn chi_rejects_ech_flavor() {
        let c = build_complex(&empty1(), &InteriorDifferential::zero(), Flavor::EchRestricted, 2)
            .unwrap();
        assert!(matches!(c.chi(ChiSource::Chain), Err(ComplexError::WrongFlavor { .. })));
        assert!(matches!(c.homology_dims(), Err(ComplexError::WrongFlavor { .. })));
        assert!(matches!(c.quotient_by_e(1), Err(ComplexError::WrongFlavor { .. })));
    }

    #[test]
    fn chi_chain_equals_chi_homology_per_degree() {
        for flavor in [Flavor::Full, Flavor::Hat] {
            let c = build_complex(&unknot(), &InteriorDifferential::zero(), flavor, 5).unwrap();
            assert_eq!(
                c.chi(ChiSource::Chain).unwrap(),
                c.chi(ChiSource::Homology).unwrap(),
                "{flavor}"
            );
        }
    }

    #[test]
    fn quotient_by_e_example() {
        let c = build_complex(&empty1(), &InteriorDifferential::zero(), Flavor::Hat, 1).unwrap();
        let q = c.quotient_by_e(1).unwrap();
        assert_eq!(q.len(), 3); // empty, h1, h1p
        assert_eq!(targets_of(&q, &OrbitSet::single("h1p")), vec![OrbitSet::empty()]);
        let summary = q.homology_dims().unwrap();
        let got: Vec<(ExpVec, u8, usize)> =
            summary.entries().map(|(d, g, dim)| (d.clone(), g, dim)).collect();
        assert_eq!(got, vec![(ExpVec::new(vec![0]), 1, 1)]);

        // idempotent
        assert_eq!(q.quotient_by_e(1).unwrap(), q);

        // chain and homology chi agree on the quotient too
        assert_eq!(q.chi(ChiSource::Chain).unwrap(), q.chi(ChiSource::Homology).unwrap());
        assert_eq!(q.chi(ChiSource::Chain).unwrap().render(), "-1");
    }

    #[test]
    fn quotient_without_e_factors_only_relabels() {
        let c = build_complex(&empty1(), &InteriorDifferential::zero(), Flavor::Hat, 1).unwrap();
        let q = c.quotient_by_e(1).unwrap();
        // every generator that survives keeps its boundary, up to erasure
        for g in q.generators() {
            assert_eq!(g.multiplicity("e1"), 0);
        }
        assert!(matches!(c.quotient_by_e(2), Err(ComplexError::ComponentRange { .. })));
    }

    #[test]
    fn filtration_check_on_ech() {
        let c = build_complex(&unknot(), &InteriorDifferential::zero(), Flavor::EchRestricted, 4)
            .unwrap();
        assert!(c.filtration_check().unwrap());

        // corrupt: add a degree-raising entry
        let mut bad = c.clone();
        let low = bad.find(&OrbitSet::single("e1")).unwrap();
        let high = bad.find(&OrbitSet::from_pairs([("u".to_string(), 2)])).unwrap() as u32;
        bad.toggle_boundary_entry(low, high);
        assert!(!bad.filtration_check().unwrap());

        // corrupt: a strict drop without h+ in the source
        let mut bad2 = c.clone();
        let src = bad2.find(&OrbitSet::single("u")).unwrap();
        let empty = bad2.find(&OrbitSet::empty()).unwrap() as u32;
        bad2.toggle_boundary_entry(src, empty);
        assert!(!bad2.filtration_check().unwrap());

        let full = build_complex(&unknot(), &InteriorDifferential::zero(), Flavor::Full, 4).unwrap();
        assert!(matches!(full.filtration_check(), Err(ComplexError::WrongFlavor { .. })));
    }

    #[test]
    fn interior_differential_validation() {
        let cat = OrbitCatalog::new(
            1,
            vec![
                SimpleOrbit::new("d", OrbitKind::PositiveHyperbolic, ExpVec::new(vec![1])),
                SimpleOrbit::new("g", OrbitKind::Elliptic, ExpVec::new(vec![1])),
            ],
            vec![BoundaryQuadruple::standard(1, 1, "e1", "h1", "e1p", "h1p")],
        );
        let good = InteriorDifferential::new(vec![(OrbitSet::single("d"), OrbitSet::single("g"))]);
        assert!(good.validate(&cat).is_ok());

        let unknown =
            InteriorDifferential::new(vec![(OrbitSet::single("zz"), OrbitSet::single("g"))]);
        assert!(matches!(unknown.validate(&cat), Err(ComplexError::Catalog(_))));

        let boundary_orbit =
            InteriorDifferential::new(vec![(OrbitSet::single("e1"), OrbitSet::single("g"))]);
        assert!(matches!(boundary_orbit.validate(&cat), Err(ComplexError::NotInterior { .. })));

        // same sign on both sides: grading not flipped
        let no_flip = InteriorDifferential::new(vec![(
            OrbitSet::from_pairs([("g".to_string(), 2)]),
            OrbitSet::single("g"),
        )]);
        assert!(matches!(no_flip.validate(&cat), Err(ComplexError::Differential(_))));

        // degree change
        let wrong_degree = InteriorDifferential::new(vec![(
            OrbitSet::from_pairs([("d".to_string(), 1), ("g".to_string(), 1)]),
            OrbitSet::single("g"),
        )]);
        assert!(matches!(wrong_degree.validate(&cat), Err(ComplexError::Differential(_))));
    }

    #[test]
    fn nonzero_interior_differential_builds_square_zero_complexes() {
        let cat = OrbitCatalog::new(
            1,
            vec![
                SimpleOrbit::new("d", OrbitKind::PositiveHyperbolic, ExpVec::new(vec![1])),
                SimpleOrbit::new("g", OrbitKind::Elliptic, ExpVec::new(vec![1])),
            ],
            vec![BoundaryQuadruple::standard(1, 1, "e1", "h1", "e1p", "h1p")],
        );
        let diff = InteriorDifferential::new(vec![(OrbitSet::single("d"), OrbitSet::single("g"))]);
        for flavor in [Flavor::Full, Flavor::Hat, Flavor::EchRestricted] {
            let c = build_complex(&cat, &diff, flavor, 4).unwrap();
            assert!(c.d_squared_zero(), "{flavor}");
            // every entry flips the grading
            for i in 0..c.len() {
                for &t in c.boundary_of(i) {
                    assert_ne!(c.grading(i), c.grading(t as usize));
                }
            }
        }
        // the interior entry shows up: d * h1p has boundary with gamma term
        let c = build_complex(&cat, &diff, Flavor::Full, 3).unwrap();
        let src = OrbitSet::from_pairs([("d".to_string(), 1), ("h1p".to_string(), 1)]);
        let mut t = targets_of(&c, &src);
        t.sort();
        let mut expected = vec![
            OrbitSet::from_pairs([("d".to_string(), 1), ("e1".to_string(), 1)]),
            OrbitSet::from_pairs([("g".to_string(), 1), ("h1p".to_string(), 1)]),
        ];
        expected.sort();
        assert_eq!(t, expected);
    }

    #[test]
    fn degree_preserved_in_full_and_hat() {
        for flavor in [Flavor::Full, Flavor::Hat] {
            let c = build_complex(&unknot(), &InteriorDifferential::zero(), flavor, 4).unwrap();
            for i in 0..c.len() {
                for &t in c.boundary_of(i) {
                    assert_eq!(c.degree(i), c.degree(t as usize));
                }
            }
        }
    }

    #[test]
    fn connecting_map_on_empty1() {
        let report =
            connecting_map_check(&empty1(), &InteriorDifferential::zero(), 4).unwrap();
        assert!(report.passes());
        assert!(report.stable.injective);
        assert_eq!(report.stable.window, 3);
        assert_eq!(report.stable.domain_dim, 3); // [h+ e^c], c <= 2
        assert_eq!(report.stable.coker_dims, [1, 0]);
        assert_eq!(report.stable.ech_dims, [1, 0]);
        // the exact window-4 sequence also matches
        assert!(report.full_window.injective);
        assert_eq!(report.full_window.domain_dim, 4);
        assert_eq!(report.full_window.coker_dims, report.full_window.ech_dims);
    }

    #[test]
    fn connecting_map_with_interior_orbit() {
        let report = connecting_map_check(&unknot(), &InteriorDifferential::zero(), 4).unwrap();
        assert!(report.passes());
        assert_eq!(report.stable.coker_dims, [4, 0]); // classes [u^m], m <= 3
        assert!(report.full_window.passes());
    }

    #[test]
    fn connecting_map_requires_knots() {
        let cat2 = OrbitCatalog::new(
            2,
            vec![],
            vec![
                BoundaryQuadruple::standard(2, 1, "e1", "h1", "e1p", "h1p"),
                BoundaryQuadruple::standard(2, 2, "e2", "h2", "e2p", "h2p"),
            ],
        );
        assert!(matches!(
            connecting_map_check(&cat2, &InteriorDifferential::zero(), 3),
            Err(ComplexError::KnotOnly { .. })
        ));
    }

    #[test]
    fn connecting_map_detects_corruption() {
        let c = build_complex(&empty1(), &InteriorDifferential::zero(), Flavor::EchRestricted, 3)
            .unwrap();
        let clean = analyze_connecting_window(&c).unwrap();
        assert!(clean.injective && clean.coker_matches);

        let mut bad = c.clone();
        // kill the whole boundary of the bare h1p generator; nothing maps
        // into h1p, so the corrupted complex still squares to zero but the
        // connecting map acquires a kernel
        let h1p = bad.find(&OrbitSet::single("h1p")).unwrap();
        let empty = bad.find(&OrbitSet::empty()).unwrap() as u32;
        let e1 = bad.find(&OrbitSet::single("e1")).unwrap() as u32;
        bad.toggle_boundary_entry(h1p, empty);
        bad.toggle_boundary_entry(h1p, e1);
        assert!(bad.d_squared_zero());
        let report = analyze_connecting_window(&bad).unwrap();
        assert!(!report.injective);
        assert!(!(report.injective && report.coker_matches));
    }

    #[test]
    fn action_monotonicity_is_checked() {
        use num_rational::BigRational;
        let rat = |n: i64| BigRational::from_integer(n.into());
        let mut q = BoundaryQuadruple::standard(1, 1, "e1", "h1", "e1p", "h1p");
        q.e.action = Some(rat(1));
        q.h.action = Some(rat(1));
        q.e_plus.action = Some(rat(5));
        q.h_plus.action = Some(rat(5));
        let cat = OrbitCatalog::new(1, vec![], vec![q]).with_id("with-actions");
        let c = build_complex(&cat, &InteriorDifferential::zero(), Flavor::Full, 3).unwrap();
        assert_eq!(c.action_monotone(&cat).unwrap(), Some(true));

        // reversed actions break monotonicity
        let mut q = BoundaryQuadruple::standard(1, 1, "e1", "h1", "e1p", "h1p");
        q.e.action = Some(rat(5));
        q.h.action = Some(rat(5));
        q.e_plus.action = Some(rat(1));
        q.h_plus.action = Some(rat(1));
        let cat = OrbitCatalog::new(1, vec![], vec![q]);
        let c = build_complex(&cat, &InteriorDifferential::zero(), Flavor::Full, 3).unwrap();
        assert_eq!(c.action_monotone(&cat).unwrap(), Some(false));

        // no actions anywhere: nothing to check
        let c = build_complex(&empty1(), &InteriorDifferential::zero(), Flavor::Full, 3).unwrap();
        assert_eq!(c.action_monotone(&empty1()).unwrap(), None);
    }
}
