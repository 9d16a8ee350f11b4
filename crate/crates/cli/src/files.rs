//! Input file formats: orbit catalogs, monodromy matrices and polynomials,
//! all as strict TOML (unknown fields are rejected so a typo in a degree
//! vector cannot silently turn into a zero).
//!
//! Rationals in files are strings `"p/q"`; no floating point is parsed
//! anywhere.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;

use eck_core::alexander::MonodromyMatrix;
use eck_core::eckcomplex::InteriorDifferential;
use eck_core::orbitcat::{BoundaryQuadruple, OrbitCatalog, OrbitKind, OrbitSet, SimpleOrbit};
use eck_core::ring::{ExpVec, LaurentPoly};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    nvars: usize,
    #[serde(default)]
    interior: Vec<OrbitEntry>,
    #[serde(default)]
    boundary: Vec<BoundaryEntry>,
    #[serde(default)]
    interior_differential: Vec<DifferentialEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitEntry {
    id: String,
    kind: String,
    degree: Vec<i64>,
    action: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundaryEntry {
    e: String,
    h: String,
    e_plus: String,
    h_plus: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DifferentialEntry {
    from: BTreeMap<String, u64>,
    to: BTreeMap<String, u64>,
}

fn parse_kind(s: &str) -> Result<OrbitKind, CliError> {
    match s {
        "elliptic" => Ok(OrbitKind::Elliptic),
        "pos_hyp" => Ok(OrbitKind::PositiveHyperbolic),
        "neg_hyp" => Ok(OrbitKind::NegativeHyperbolic),
        other => Err(CliError::input(format!(
            "unknown orbit kind `{other}` (expected elliptic, pos_hyp or neg_hyp)"
        ))),
    }
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let parse_int = |t: &str| -> Result<BigInt, CliError> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| CliError::input(format!("invalid rational `{s}`")))
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (parse_int(n)?, parse_int(d)?),
        None => (parse_int(s)?, BigInt::from(1)),
    };
    if den.is_zero() {
        return Err(CliError::input(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(num, den))
}

/// Parse a catalog file into a catalog plus its interior differential.
///
/// Boundary quadruples reference orbits by id. An id declared in the
/// `interior` list is claimed by the quadruple with its declared kind,
/// degree and action (which is how a file can express an invalid catalog
/// for validation to reject); undeclared ids become standard meridian
/// orbits of the component.
pub fn parse_catalog(
    text: &str,
    id: &str,
) -> Result<(OrbitCatalog, InteriorDifferential), CliError> {
    let file: CatalogFile =
        toml::from_str(text).map_err(|e| CliError::input(format!("catalog parse error: {e}")))?;

    let mut declared: BTreeMap<String, SimpleOrbit> = BTreeMap::new();
    for entry in &file.interior {
        let mut orbit =
            SimpleOrbit::new(&entry.id, parse_kind(&entry.kind)?, ExpVec::new(entry.degree.clone()));
        if let Some(action) = &entry.action {
            orbit = orbit.with_action(parse_rational(action)?);
        }
        if declared.insert(entry.id.clone(), orbit).is_some() {
            return Err(CliError::input(format!("orbit `{}` declared twice", entry.id)));
        }
    }

    let mut boundary = Vec::new();
    for (k, entry) in file.boundary.iter().enumerate() {
        let component = k + 1;
        let mut claim = |id: &str, default_kind: OrbitKind| -> SimpleOrbit {
            declared.remove(id).unwrap_or_else(|| {
                SimpleOrbit::new(
                    id,
                    default_kind,
                    ExpVec::unit(file.nvars.max(component), component),
                )
            })
        };
        boundary.push(BoundaryQuadruple {
            e: claim(&entry.e, OrbitKind::Elliptic),
            h: claim(&entry.h, OrbitKind::PositiveHyperbolic),
            e_plus: claim(&entry.e_plus, OrbitKind::Elliptic),
            h_plus: claim(&entry.h_plus, OrbitKind::PositiveHyperbolic),
        });
    }

    let interior: Vec<SimpleOrbit> = declared.into_values().collect();
    let cat = OrbitCatalog::new(file.nvars, interior, boundary).with_id(id);

    let entries = file
        .interior_differential
        .iter()
        .map(|e| {
            (
                OrbitSet::from_pairs(e.from.iter().map(|(id, &m)| (id.clone(), m))),
                OrbitSet::from_pairs(e.to.iter().map(|(id, &m)| (id.clone(), m))),
            )
        })
        .collect();
    Ok((cat, InteriorDifferential::new(entries)))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    matrix: Vec<Vec<i64>>,
}

pub fn parse_matrix(text: &str) -> Result<MonodromyMatrix, CliError> {
    let file: MatrixFile =
        toml::from_str(text).map_err(|e| CliError::input(format!("matrix parse error: {e}")))?;
    MonodromyMatrix::new(file.matrix).map_err(|e| CliError::input(e.to_string()))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyFile {
    nvars: usize,
    #[serde(default)]
    terms: Vec<TermEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermEntry {
    exp: Vec<i64>,
    coeff: i64,
}

pub fn parse_poly(text: &str) -> Result<LaurentPoly, CliError> {
    let file: PolyFile =
        toml::from_str(text).map_err(|e| CliError::input(format!("polynomial parse error: {e}")))?;
    LaurentPoly::from_terms(
        file.nvars,
        file.terms
            .into_iter()
            .map(|t| (ExpVec::new(t.exp), BigInt::from(t.coeff))),
    )
    .map_err(|e| CliError::input(e.to_string()))
}

/// What a file path refers to, judged by its extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Catalog,
    Matrix,
    Poly,
}

pub fn kind_of(path: &Path) -> Result<FileKind, CliError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("cat") => Ok(FileKind::Catalog),
        Some("mat") => Ok(FileKind::Matrix),
        Some("poly") => Ok(FileKind::Poly),
        _ => Err(CliError::input(format!(
            "cannot tell what `{}` is; expected a .cat, .mat or .poly file",
            path.display()
        ))),
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read `{}`: {e}", path.display())))
}

pub fn file_stem(path: &Path) -> String {
    path.file_stem().and_then(|s| s.to_str()).unwrap_or("input").to_string()
}
