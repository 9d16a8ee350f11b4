//! The subcommand implementations.

use std::path::Path;

use num_bigint::BigInt;

use eck_core::alexander::{
    alex_fibered_knot, alex_from_catalog, char_det, char_det_cofactor, delta_from_alex,
    lefschetz_number, torres_check, AlexResult, AlexValue,
};
use eck_core::eckcomplex::{
    build_complex, connecting_map_check, ChiSource, Flavor, InteriorDifferential,
};
use eck_core::orbitcat::OrbitCatalog;
use eck_core::ring::{ExpVec, LaurentPoly, TruncatedSeries};
use eck_core::zeta::{chi_by_enumeration, chi_full, chi_hat, twisted_zeta, ChiFlavor};

use crate::corpus;
use crate::files::{self, FileKind};
use crate::report::{CliError, Report};

fn load_catalog(path: &Path) -> Result<(OrbitCatalog, InteriorDifferential), CliError> {
    let text = files::read_file(path)?;
    files::parse_catalog(&text, &files::file_stem(path))
}

fn ensure_valid(cat: &OrbitCatalog) -> Result<(), CliError> {
    let violations = cat.validate();
    if violations.is_empty() {
        return Ok(());
    }
    let mut msg = String::from("invalid catalog:");
    for v in &violations {
        msg.push_str(&format!("\n  {v}"));
    }
    Err(CliError::input(msg))
}

pub fn cmd_euler(
    path: &Path,
    hat: bool,
    cutoff: usize,
    oracle: bool,
    normalize: bool,
) -> Result<Report, CliError> {
    let (cat, _) = load_catalog(path)?;
    ensure_valid(&cat)?;
    let mut report = Report::new("euler");
    report.meta("input", path.display());
    report.meta("flavor", if hat { "hat" } else { "full" });
    report.meta("cutoff", cutoff);
    let chi = if hat { chi_hat(&cat, cutoff)? } else { chi_full(&cat, cutoff)? };
    let poly =
        if normalize { chi.series.poly().doteq_normalize() } else { chi.series.poly().clone() };
    report.line(poly.render());
    if oracle {
        let flavor = if hat { ChiFlavor::Hat } else { ChiFlavor::Full };
        let recomputed = chi_by_enumeration(&cat, cutoff, flavor)?;
        if recomputed.series == chi.series {
            report.line("oracle: MATCH");
        } else {
            report.line("oracle: MISMATCH");
            report.fail();
        }
    }
    Ok(report)
}

pub fn cmd_alex(
    monodromy: Option<&Path>,
    catalog: Option<&Path>,
    cutoff: usize,
    delta: bool,
) -> Result<Report, CliError> {
    let mut report = Report::new("alex");
    let result: AlexResult = match (monodromy, catalog) {
        (Some(path), None) => {
            report.meta("input", path.display());
            report.meta("cutoff", cutoff);
            let m = files::parse_matrix(&files::read_file(path)?)?;
            let alex = alex_fibered_knot(&m, cutoff)?;
            if delta {
                delta_from_alex(&alex, 1)?
            } else {
                alex
            }
        }
        (None, Some(path)) => {
            report.meta("input", path.display());
            report.meta("cutoff", cutoff);
            let (cat, _) = load_catalog(path)?;
            ensure_valid(&cat)?;
            let alex = alex_from_catalog(&cat, cutoff)?;
            if delta {
                delta_from_alex(&alex, cat.nvars())?
            } else {
                alex
            }
        }
        _ => {
            return Err(CliError::input(
                "exactly one of --monodromy or --catalog is required",
            ))
        }
    };
    report.meta("kind", result.value.kind());
    let poly = if result.normalized {
        result.value.poly().clone()
    } else {
        result.value.poly().doteq_normalize()
    };
    report.line(poly.render());
    Ok(report)
}

fn render_degree(d: &ExpVec, quotiented: &[usize]) -> String {
    let parts: Vec<String> = d
        .entries()
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            if quotiented.contains(&(k + 1)) {
                "-".to_string()
            } else {
                a.to_string()
            }
        })
        .collect();
    format!("({})", parts.join(","))
}

pub fn cmd_homology(
    path: &Path,
    flavor: Flavor,
    cutoff: usize,
    quotient: Option<usize>,
) -> Result<Report, CliError> {
    let (cat, diff) = load_catalog(path)?;
    ensure_valid(&cat)?;
    let mut report = Report::new("homology");
    report.meta("input", path.display());
    report.meta("flavor", flavor);
    report.meta("cutoff", cutoff);
    let mut complex = build_complex(&cat, &diff, flavor, cutoff)?;
    if let Some(component) = quotient {
        report.meta("quotient", component);
        complex = complex.quotient_by_e(component)?;
    }
    if flavor == Flavor::EchRestricted {
        let [g0, g1] = complex.homology_by_grading()?;
        report.line(format!("g=0 : {g0}"));
        report.line(format!("g=1 : {g1}"));
        if complex.filtration_check()? {
            report.line("filtration: OK");
        } else {
            report.line("filtration: VIOLATED");
            report.fail();
        }
    } else {
        let summary = complex.homology_dims()?;
        for (d, g, dim) in summary.entries() {
            report.line(format!("d={} g={} : {}", render_degree(d, &summary.quotiented), g, dim));
        }
        report.line(format!("chi: {}", complex.chi(ChiSource::Homology)?.render()));
    }
    Ok(report)
}

enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

fn run_items(report: &mut Report, items: Vec<(&str, Box<dyn FnOnce() -> Outcome + '_>)>) {
    let mut failures = 0;
    for (name, item) in items {
        match item() {
            Outcome::Pass => report.line(format!("{name}: PASS")),
            Outcome::Fail(reason) => {
                report.line(format!("{name}: FAIL ({reason})"));
                failures += 1;
            }
            Outcome::Skip(reason) => report.line(format!("{name}: SKIP ({reason})")),
        }
    }
    if failures > 0 {
        report.fail();
    }
}

fn check(cond: bool, reason: &str) -> Outcome {
    if cond {
        Outcome::Pass
    } else {
        Outcome::Fail(reason.to_string())
    }
}

fn or_fail(r: Result<Outcome, String>) -> Outcome {
    r.unwrap_or_else(Outcome::Fail)
}

pub fn cmd_check(path: &Path, cutoff: usize) -> Result<Report, CliError> {
    let mut report = Report::new("check");
    report.meta("input", path.display());
    report.meta("cutoff", cutoff);
    match files::kind_of(path)? {
        FileKind::Catalog => {
            let (cat, diff) = load_catalog(path)?;
            check_catalog(&mut report, &cat, &diff, cutoff);
        }
        FileKind::Matrix => {
            let m = files::parse_matrix(&files::read_file(path)?)?;
            let items: Vec<(&str, Box<dyn FnOnce() -> Outcome>)> = vec![
                (
                    "char_det_oracle",
                    Box::new(|| {
                        check(
                            char_det(&m) == char_det_cofactor(&m),
                            "fraction-free and cofactor determinants differ",
                        )
                    }),
                ),
                (
                    "round_trip",
                    Box::new(|| {
                        or_fail((|| {
                            let delta = char_det(&m);
                            let deg = delta.max_total_degree().unwrap_or(0) as usize;
                            let c = cutoff.max(deg + 2);
                            let alex = alex_fibered_knot(&m, c).map_err(|e| e.to_string())?;
                            let back = delta_from_alex(&alex, 1).map_err(|e| e.to_string())?;
                            let ok = back
                                .value
                                .poly()
                                .doteq_equal(&delta)
                                .map_err(|e| e.to_string())?;
                            Ok(check(ok, "delta_from_alex does not invert alex_fibered_knot"))
                        })())
                    }),
                ),
                (
                    "lefschetz_t1",
                    Box::new(|| {
                        or_fail((|| {
                            let alex = alex_fibered_knot(&m, 2).map_err(|e| e.to_string())?;
                            let t1 = alex.value.poly().coeff(&ExpVec::new(vec![1]));
                            Ok(check(
                                t1 == lefschetz_number(&m),
                                "degree-one coefficient is not the Lefschetz number",
                            ))
                        })())
                    }),
                ),
                (
                    "constant_term",
                    Box::new(|| {
                        check(
                            char_det(&m).coeff(&ExpVec::zero(1)) == BigInt::from(1),
                            "constant term of det(1 - tM) is not 1",
                        )
                    }),
                ),
            ];
            run_items(&mut report, items);
        }
        FileKind::Poly => {
            let p = files::parse_poly(&files::read_file(path)?)?;
            let items: Vec<(&str, Box<dyn FnOnce() -> Outcome>)> = vec![
                (
                    "normalize_idempotent",
                    Box::new(|| {
                        let n = p.doteq_normalize();
                        check(n.doteq_normalize() == n, "normalization is not idempotent")
                    }),
                ),
                (
                    "unit_invariance",
                    Box::new(|| {
                        let unit = LaurentPoly::monomial(
                            ExpVec::new(vec![1; p.nvars()]),
                            -1,
                        );
                        let shifted = &p * &unit;
                        check(
                            p.doteq_equal(&shifted).unwrap_or(false),
                            "p is not doteq-equal to -x*p",
                        )
                    }),
                ),
            ];
            run_items(&mut report, items);
        }
    }
    Ok(report)
}

fn check_catalog(
    report: &mut Report,
    cat: &OrbitCatalog,
    diff: &InteriorDifferential,
    cutoff: usize,
) {
    type Item<'a> = (&'a str, Box<dyn FnOnce() -> Outcome + 'a>);
    let build = |flavor: Flavor| build_complex(cat, diff, flavor, cutoff);
    let d2 = move |flavor: Flavor| -> Outcome {
        match build_complex(cat, diff, flavor, cutoff) {
            Ok(c) => check(c.d_squared_zero(), "boundary does not square to zero"),
            Err(e) => Outcome::Fail(e.to_string()),
        }
    };
    let items: Vec<Item> = vec![
        (
            "validate",
            Box::new(|| {
                let violations = cat.validate();
                if violations.is_empty() {
                    Outcome::Pass
                } else {
                    Outcome::Fail(
                        violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "),
                    )
                }
            }),
        ),
        ("d2_full", Box::new(move || d2(Flavor::Full))),
        ("d2_hat", Box::new(move || d2(Flavor::Hat))),
        ("d2_ech", Box::new(move || d2(Flavor::EchRestricted))),
        (
            "grading_flip",
            Box::new(|| {
                or_fail((|| {
                    for flavor in [Flavor::Full, Flavor::Hat, Flavor::EchRestricted] {
                        let c = build(flavor).map_err(|e| e.to_string())?;
                        for i in 0..c.len() {
                            for &t in c.boundary_of(i) {
                                if c.grading(i) == c.grading(t as usize) {
                                    return Ok(Outcome::Fail(format!(
                                        "entry keeps the grading in the {flavor} flavor"
                                    )));
                                }
                            }
                        }
                    }
                    Ok(Outcome::Pass)
                })())
            }),
        ),
        (
            "degree_preserved",
            Box::new(|| {
                or_fail((|| {
                    for flavor in [Flavor::Full, Flavor::Hat] {
                        let c = build(flavor).map_err(|e| e.to_string())?;
                        for i in 0..c.len() {
                            for &t in c.boundary_of(i) {
                                if c.degree(i) != c.degree(t as usize) {
                                    return Ok(Outcome::Fail(format!(
                                        "degree changes in the {flavor} flavor"
                                    )));
                                }
                            }
                        }
                    }
                    Ok(Outcome::Pass)
                })())
            }),
        ),
        (
            "filtration",
            Box::new(|| {
                or_fail((|| {
                    let c = build(Flavor::EchRestricted).map_err(|e| e.to_string())?;
                    let ok = c.filtration_check().map_err(|e| e.to_string())?;
                    Ok(check(ok, "filtration violated"))
                })())
            }),
        ),
        (
            "chi_oracle_full",
            Box::new(|| {
                or_fail((|| {
                    let product = chi_full(cat, cutoff).map_err(|e| e.to_string())?;
                    let enumerated = chi_by_enumeration(cat, cutoff, ChiFlavor::Full)
                        .map_err(|e| e.to_string())?;
                    Ok(check(product.series == enumerated.series, "product != enumeration"))
                })())
            }),
        ),
        (
            "chi_oracle_hat",
            Box::new(|| {
                or_fail((|| {
                    let product = chi_hat(cat, cutoff).map_err(|e| e.to_string())?;
                    let enumerated = chi_by_enumeration(cat, cutoff, ChiFlavor::Hat)
                        .map_err(|e| e.to_string())?;
                    Ok(check(product.series == enumerated.series, "product != enumeration"))
                })())
            }),
        ),
        (
            "boundary_package",
            Box::new(|| {
                or_fail((|| {
                    for q in cat.boundary() {
                        let orbits: Vec<_> = q.orbits().cloned().collect();
                        let package =
                            twisted_zeta(&orbits, cutoff).map_err(|e| e.to_string())?;
                        if package != TruncatedSeries::one(cat.nvars(), cutoff) {
                            return Ok(Outcome::Fail(format!(
                                "package of component with `{}` is not 1",
                                q.e.id
                            )));
                        }
                    }
                    Ok(Outcome::Pass)
                })())
            }),
        ),
        (
            "hat_full_relation",
            Box::new(|| {
                or_fail((|| {
                    let full = chi_full(cat, cutoff).map_err(|e| e.to_string())?;
                    let mut series = full.series;
                    for i in 1..=cat.nvars() {
                        let factor =
                            &LaurentPoly::one(cat.nvars()) - &LaurentPoly::var(cat.nvars(), i);
                        series = series.mul_poly(&factor).map_err(|e| e.to_string())?;
                    }
                    let hat = chi_hat(cat, cutoff).map_err(|e| e.to_string())?;
                    Ok(check(series == hat.series, "chi_hat != chi_full * prod(1 - t_i)"))
                })())
            }),
        ),
        (
            "connecting_map",
            Box::new(|| {
                if cat.nvars() != 1 {
                    return Outcome::Skip("links have no single connecting map".to_string());
                }
                match connecting_map_check(cat, diff, cutoff.clamp(1, 5)) {
                    Ok(r) => check(r.passes(), "connecting map check failed"),
                    Err(e) => Outcome::Fail(e.to_string()),
                }
            }),
        ),
    ];
    run_items(report, items);
}

pub fn cmd_torres(
    full: &Path,
    sub: &Path,
    lk: &[i64],
    cutoff: usize,
) -> Result<Report, CliError> {
    let mut report = Report::new("torres");
    report.meta("full", full.display());
    report.meta("sub", sub.display());
    report.meta("lk", lk.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
    let delta_full = files::parse_poly(&files::read_file(full)?)?;
    let sub_result: AlexResult = match files::kind_of(sub)? {
        FileKind::Poly => {
            let p = files::parse_poly(&files::read_file(sub)?)?;
            let nvars = p.nvars();
            AlexResult { value: AlexValue::Polynomial(p), nvars, normalized: false }
        }
        FileKind::Matrix => {
            let m = files::parse_matrix(&files::read_file(sub)?)?;
            alex_fibered_knot(&m, cutoff)?
        }
        FileKind::Catalog => {
            let (cat, _) = load_catalog(sub)?;
            ensure_valid(&cat)?;
            alex_from_catalog(&cat, cutoff)?
        }
    };
    let lk = ExpVec::new(lk.to_vec());
    let sides = torres_check(&delta_full, &sub_result, &lk).map_err(|e| {
        use eck_core::alexander::AlexError;
        match e {
            AlexError::NotDetectablyFinite { .. } => {
                CliError::input(format!("{e}; raise --cutoff"))
            }
            other => CliError::from(other),
        }
    })?;
    report.line(format!("lhs: {}", sides.lhs.render()));
    report.line(format!("rhs: {}", sides.rhs.render()));
    if sides.holds {
        report.line("torres: HOLD");
    } else {
        report.line("torres: VIOLATED");
        report.fail();
    }
    Ok(report)
}

pub fn cmd_corpus(name: Option<&str>) -> Result<Report, CliError> {
    let mut report = Report::new("corpus");
    match name {
        None => {
            for (item, _) in corpus::ITEMS {
                report.line(item);
            }
        }
        Some(name) => {
            let text = corpus::get(name)
                .ok_or_else(|| CliError::input(format!("unknown corpus item `{name}`")))?;
            report.meta("item", name);
            for line in text.lines() {
                report.line(line);
            }
        }
    }
    Ok(report)
}
