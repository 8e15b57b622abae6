//! Run configuration, check scheduling and the JSON report.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bispectral::{algebra_relations_check, build_quadruple, difference_relation_check};
use crate::certificate::{Certificate, Verdict};
use crate::error::{Error, Result};
use crate::exact::to_string;
use crate::orthopoly::grid_check;
use crate::poly::{certify_p, certify_q, dual_recurrence_check};
use crate::scheme::{
    adjacency_recurrence_check, build_adjacency, verify_axioms, Domain, SchemeParams,
    DEFAULT_MAX_VERTICES,
};
use crate::spectra::{build_idempotents, spectra_check, SpectralData};
use crate::terwilliger::{select_bases, terwilliger_check};

/// Largest size `N` of the exhaustive orthogonal-polynomial grid.
pub const ORTHOPOLY_GRID_MAX: i64 = 10;

/// Default number of base vertices for the subconstituent checks.
pub const DEFAULT_BASES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckName {
    Axioms,
    Spectra,
    Ppoly,
    Qpoly,
    Recurrences,
    Difference,
    Bispectral,
    Terwilliger,
    Orthopoly,
}

impl CheckName {
    pub const ALL: [CheckName; 9] = [
        CheckName::Axioms,
        CheckName::Spectra,
        CheckName::Ppoly,
        CheckName::Qpoly,
        CheckName::Recurrences,
        CheckName::Difference,
        CheckName::Bispectral,
        CheckName::Terwilliger,
        CheckName::Orthopoly,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Axioms => "axioms",
            CheckName::Spectra => "spectra",
            CheckName::Ppoly => "ppoly",
            CheckName::Qpoly => "qpoly",
            CheckName::Recurrences => "recurrences",
            CheckName::Difference => "difference",
            CheckName::Bispectral => "bispectral",
            CheckName::Terwilliger => "terwilliger",
            CheckName::Orthopoly => "orthopoly",
        }
    }

    /// Checks that must run (and pass) first.
    pub fn dependencies(self) -> &'static [CheckName] {
        match self {
            CheckName::Axioms | CheckName::Orthopoly => &[],
            CheckName::Spectra => &[CheckName::Axioms],
            _ => &[CheckName::Axioms, CheckName::Spectra],
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown check '{s}'")))
    }
}

/// Parses a comma-separated list of check names, or `all`.
pub fn parse_checks(list: &str) -> Result<BTreeSet<CheckName>> {
    let mut out = BTreeSet::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "all" {
            out.extend(CheckName::ALL);
        } else {
            out.insert(item.parse()?);
        }
    }
    if out.is_empty() {
        return Err(Error::Usage("no checks selected".into()));
    }
    Ok(out)
}

/// `selected` together with everything it depends on.
pub fn with_dependencies(selected: &BTreeSet<CheckName>) -> BTreeSet<CheckName> {
    let mut out = selected.clone();
    for c in selected {
        out.extend(c.dependencies());
    }
    out
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub r: i64,
    pub k: i64,
    pub n: i64,
    pub checks: BTreeSet<CheckName>,
    pub max_vertices: usize,
    pub bases: usize,
    /// Record wall times in the certificates (makes the report run-dependent).
    pub timings: bool,
    /// Include the eigenvalue tables and Krein parameters in the report.
    pub tables: bool,
}

impl RunConfig {
    /// All checks with default limits.
    pub fn new(r: i64, k: i64, n: i64) -> Self {
        RunConfig {
            r,
            k,
            n,
            checks: CheckName::ALL.into_iter().collect(),
            max_vertices: DEFAULT_MAX_VERTICES,
            bases: DEFAULT_BASES,
            timings: false,
            tables: false,
        }
    }

    pub fn with_checks(mut self, checks: impl IntoIterator<Item = CheckName>) -> Self {
        self.checks = checks.into_iter().collect();
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Instance {
    pub r: i64,
    pub k: i64,
    pub n: i64,
    pub v: Option<u128>,
}

/// `[a, b, c, q_{a,b}^c]` with labels as `[i, j]` pairs.
pub type KreinEntry = ([i64; 2], [i64; 2], [i64; 2], String);

/// Eigenvalue data with rationals as strings. Rows and columns follow the
/// order of `domain`: `p[a][b] = p_{D[a]}(D[b])`, `q[a][b] = q_{D[a]}(D[b])`.
#[derive(Debug, Clone, Serialize)]
pub struct Tables {
    pub p: Vec<Vec<String>>,
    pub q: Vec<Vec<String>>,
    pub valencies: Vec<String>,
    pub multiplicities: Vec<String>,
    /// Nonzero Krein parameters as `[a, b, c, q_{a,b}^c]`.
    pub krein: Vec<KreinEntry>,
}

impl Tables {
    fn new(spec: &SpectralData) -> Self {
        let labels = spec.domain().labels();
        let grid = |f: &dyn Fn(usize, usize) -> String| -> Vec<Vec<String>> {
            (0..labels.len())
                .map(|a| (0..labels.len()).map(|b| f(a, b)).collect())
                .collect()
        };
        let mut krein = Vec::new();
        for &a in labels {
            for &b in labels {
                for &c in labels {
                    let value = spec.krein(a, b, c);
                    if *value != crate::exact::zero() {
                        krein.push(([a.i, a.j], [b.i, b.j], [c.i, c.j], to_string(value)));
                    }
                }
            }
        }
        Tables {
            p: grid(&|a, b| to_string(spec.p(labels[a], labels[b]))),
            q: grid(&|a, b| to_string(spec.q(labels[a], labels[b]))),
            valencies: labels.iter().map(|&l| to_string(spec.valency(l))).collect(),
            multiplicities: labels
                .iter()
                .map(|&l| to_string(spec.multiplicity(l)))
                .collect(),
            krein,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub instance: Instance,
    pub domain: Vec<[i64; 2]>,
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tables: Option<Tables>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.verdict != Verdict::Fail)
    }

    /// 0 when no certificate failed, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    pub fn certificate(&self, check: CheckName) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.check == check.as_str())
    }

    /// Pretty-printed JSON with a trailing newline. Deterministic for a given
    /// configuration unless timings are enabled.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Runs the selected checks (with their dependencies) in dependency order.
///
/// Invalid parameters and an exceeded vertex cap are errors; check failures
/// are reported in the certificates.
pub fn run(config: &RunConfig) -> Result<Report> {
    let params = SchemeParams::new(config.r, config.k, config.n)?;
    if config.max_vertices < 1 {
        return Err(Error::Usage("max-vertices must be at least 1".into()));
    }
    if config.bases < 1 {
        return Err(Error::Usage("bases must be at least 1".into()));
    }
    let checks = with_dependencies(&config.checks);
    let domain = Domain::new(params);
    let mut certificates = Vec::new();
    let mut tables = None;
    let mut v = params.vertex_count();

    if checks.contains(&CheckName::Axioms) {
        let start = Instant::now();
        let fam = build_adjacency(params, config.max_vertices)?;
        v = Some(fam.v() as u128);
        let axioms = stamp(verify_axioms(&fam), start);
        let axioms_ok = axioms.passed();
        certificates.push(axioms);
        let rest: Vec<CheckName> = checks
            .iter()
            .copied()
            .filter(|c| {
                !matches!(
                    c,
                    CheckName::Axioms | CheckName::Spectra | CheckName::Orthopoly
                )
            })
            .collect();

        if !axioms_ok {
            for c in checks
                .iter()
                .filter(|c| c.dependencies().contains(&CheckName::Axioms))
            {
                certificates.push(Certificate::skipped(c.as_str(), params, "axioms failed"));
            }
        } else {
            let start = Instant::now();
            let spec = SpectralData::new(params)?;
            let idempotents = build_idempotents(&fam, &spec);
            let spectra = stamp(spectra_check(&fam, &spec, &idempotents), start);
            let spectra_ok = spectra.passed();
            certificates.push(spectra);
            if config.tables {
                tables = Some(Tables::new(&spec));
            }
            if !spectra_ok {
                for c in &rest {
                    certificates.push(Certificate::skipped(c.as_str(), params, "spectra failed"));
                }
            } else {
                let bases = select_bases(fam.v(), config.bases);
                let results: Vec<Certificate> = rest
                    .par_iter()
                    .map(|&c| {
                        let start = Instant::now();
                        let cert = match c {
                            CheckName::Ppoly => certify_p(params),
                            CheckName::Qpoly => certify_q(&spec),
                            CheckName::Recurrences => Certificate::merge(
                                "recurrences",
                                params,
                                &[
                                    adjacency_recurrence_check(&fam),
                                    dual_recurrence_check(&spec),
                                ],
                            ),
                            CheckName::Difference => difference_relation_check(&spec),
                            CheckName::Bispectral => {
                                algebra_relations_check(&build_quadruple(params))
                            }
                            CheckName::Terwilliger => {
                                terwilliger_check(&fam, &spec, &idempotents, &bases)
                            }
                            CheckName::Axioms | CheckName::Spectra | CheckName::Orthopoly => {
                                unreachable!("filtered above")
                            }
                        };
                        stamp(cert, start)
                    })
                    .collect();
                certificates.extend(results);
            }
        }
    }
    if checks.contains(&CheckName::Orthopoly) {
        let start = Instant::now();
        certificates.push(stamp(grid_check(params, ORTHOPOLY_GRID_MAX), start));
    }

    for (cert, name) in certificates.iter_mut().zip(certificate_names(&checks)) {
        debug_assert_eq!(cert.check, name);
        if !config.timings {
            cert.wall_time_ms = None;
        }
    }

    Ok(Report {
        instance: Instance {
            r: params.r,
            k: params.k,
            n: params.n,
            v,
        },
        domain: domain.iter().map(|l| [l.i, l.j]).collect(),
        certificates,
        tables,
    })
}

fn stamp(mut cert: Certificate, start: Instant) -> Certificate {
    cert.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    cert
}

fn certificate_names(checks: &BTreeSet<CheckName>) -> Vec<&'static str> {
    checks.iter().map(|c| c.as_str()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_list_parsing() {
        assert_eq!(parse_checks("all").unwrap().len(), 9);
        let some = parse_checks("qpoly, orthopoly").unwrap();
        assert!(some.contains(&CheckName::Qpoly) && some.len() == 2);
        assert!(parse_checks("nonsense").is_err());
        assert!(parse_checks("").is_err());
    }

    #[test]
    fn dependencies_are_added() {
        let deps = with_dependencies(&[CheckName::Qpoly].into_iter().collect());
        assert_eq!(
            deps.into_iter().collect::<Vec<_>>(),
            vec![CheckName::Axioms, CheckName::Spectra, CheckName::Qpoly]
        );
    }

    #[test]
    fn full_run_on_small_instance() {
        let report = run(&RunConfig::new(3, 2, 4)).unwrap();
        assert_eq!(report.exit_code(), 0, "{}", report.to_json());
        assert_eq!(report.certificates.len(), 9);
        assert_eq!(report.instance.v, Some(24));
    }

    #[test]
    fn negative_instance_fails_qpoly() {
        let config = RunConfig::new(3, 3, 4).with_checks([CheckName::Qpoly]);
        let report = run(&config).unwrap();
        assert_eq!(report.exit_code(), 2);
        let q = report.certificate(CheckName::Qpoly).unwrap();
        assert!(q
            .witnesses
            .iter()
            .any(|w| w.context.contains("(0,2) ≼ (2,1)")));
    }

    #[test]
    fn errors_for_bad_parameters_and_limits() {
        assert!(matches!(
            run(&RunConfig::new(2, 2, 4)),
            Err(Error::Usage(_))
        ));
        let mut config = RunConfig::new(3, 3, 6);
        config.max_vertices = 10;
        assert!(matches!(run(&config), Err(Error::Resource { .. })));
    }

    #[test]
    fn reports_are_byte_stable() {
        let mut config = RunConfig::new(3, 2, 3);
        config.tables = true;
        assert_eq!(
            run(&config).unwrap().to_json(),
            run(&config).unwrap().to_json()
        );
    }
}
