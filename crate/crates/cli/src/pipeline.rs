//! The orchestrated analysis pipeline: builds the oriented skeleton, runs
//! every checker in gated order, and assembles a deterministic JSON report.
//! A failed gate marks downstream checks not-applicable instead of failing
//! them; a check that cannot run on the instance (e.g. full face
//! enumeration on a non-simple polytope) is likewise not-applicable.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

use polyskel::exact::rat_string;
use polyskel::lattice::{
    verify_boolean_sublattice, verify_distinct_pseudo_joins, verify_pseudo_join_theorem, OpKind,
};
use polyskel::orient::OrientError;
use polyskel::paths::{
    check_nonrevisiting, conjecture_check, hirsch_check, spindle_theorem_check, ConjectureReport,
    RevisitWitness, Scope, SpindleReport,
};
use polyskel::topology::{survey_intervals, TopologyViolation};
use polyskel::{OrientedSkeleton, Polytope, RatVector};

use crate::CliError;

/// How many witnesses a report embeds per check; totals are always exact.
const WITNESS_CAP: usize = 8;

/// All check keys in pipeline order; every report carries each exactly once.
pub const CHECK_KEYS: [&str; 15] = [
    "genericity",
    "acyclicity",
    "facial",
    "hasse",
    "billera",
    "lattice",
    "pseudo_join_theorem",
    "distinct_pseudo_joins",
    "boolean_sublattice",
    "nonrevisiting",
    "hirsch",
    "spindle",
    "conjecture",
    "mobius_range",
    "topology_profiles",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(flatten)]
    pub detail: Map<String, Value>,
}

impl CheckEntry {
    fn new(status: Status, note: impl Into<String>, detail: Value) -> Self {
        let detail = match detail {
            Value::Object(map) => map,
            _ => Map::new(),
        };
        CheckEntry {
            status,
            note: note.into(),
            detail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub name: String,
    pub n: usize,
    pub d: usize,
    pub ambient: usize,
    pub vertices: usize,
    pub simple: bool,
    pub orientation: &'static str,
    pub cost: Option<Vec<String>>,
    pub scope: &'static str,
    pub max_interval: usize,
    pub checks: BTreeMap<&'static str, CheckEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, u128>>,
}

impl AnalysisReport {
    pub fn status_of(&self, key: &str) -> Option<Status> {
        self.checks.get(key).map(|entry| entry.status)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// One human-readable line per check, in pipeline order.
    pub fn summary_lines(&self) -> Vec<String> {
        CHECK_KEYS
            .iter()
            .map(|key| {
                let entry = &self.checks[key];
                if entry.note.is_empty() {
                    format!("{key:<24} {}", entry.status)
                } else {
                    format!("{key:<24} {} ({})", entry.status, entry.note)
                }
            })
            .collect()
    }
}

pub enum OrientationSource {
    Cost(RatVector),
    Explicit(Vec<(usize, usize)>),
}

pub struct AnalyzeOptions {
    pub scope: Scope,
    pub max_interval: usize,
    pub max_atoms: usize,
    pub timings: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            scope: Scope::FacetsOnly,
            max_interval: 64,
            max_atoms: 12,
            timings: false,
        }
    }
}

struct ReportBuilder {
    checks: BTreeMap<&'static str, CheckEntry>,
    timings: BTreeMap<&'static str, u128>,
    record_timings: bool,
}

impl ReportBuilder {
    fn new(record_timings: bool) -> Self {
        ReportBuilder {
            checks: BTreeMap::new(),
            timings: BTreeMap::new(),
            record_timings,
        }
    }

    fn put(
        &mut self,
        key: &'static str,
        run: impl FnOnce() -> (Status, String, Value),
    ) {
        let started = Instant::now();
        let (status, note, detail) = run();
        if self.record_timings {
            self.timings.insert(key, started.elapsed().as_millis());
        }
        self.checks.insert(key, CheckEntry::new(status, note, detail));
    }

    /// Marks every still-missing check not-applicable with the given note.
    fn fill_gated(&mut self, note: &str) {
        for key in CHECK_KEYS {
            self.checks
                .entry(key)
                .or_insert_with(|| CheckEntry::new(Status::NotApplicable, note, json!({})));
        }
    }
}

pub fn run_analysis(
    p: &Polytope,
    source: &OrientationSource,
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport, CliError> {
    let ambient = p.vertices[0].len();
    let mut builder = ReportBuilder::new(opts.timings);
    let cost_strings = match source {
        OrientationSource::Cost(c) => Some(c.iter().map(rat_string).collect::<Vec<_>>()),
        OrientationSource::Explicit(_) => None,
    };

    let skeleton = build_skeleton(p, source, ambient, &mut builder)?;
    if let Some(o) = &skeleton {
        run_checks(o, opts, &mut builder);
    }
    builder.fill_gated("gated by an earlier failure");

    Ok(AnalysisReport {
        schema: "skeleton-analysis/1",
        name: p.name.clone(),
        n: p.facets.len(),
        d: p.dim,
        ambient,
        vertices: p.vertices.len(),
        simple: p.simple,
        orientation: match source {
            OrientationSource::Cost(_) => "cost-derived",
            OrientationSource::Explicit(_) => "explicit",
        },
        cost: cost_strings,
        scope: match opts.scope {
            Scope::FacetsOnly => "facets",
            Scope::AllFaces => "all-faces",
        },
        max_interval: opts.max_interval,
        checks: builder.checks,
        timings_ms: opts.timings.then_some(builder.timings),
    })
}

/// Builds the oriented skeleton while recording the genericity and
/// acyclicity gates. `None` means a gate failed (already recorded).
fn build_skeleton<'p>(
    p: &'p Polytope,
    source: &OrientationSource,
    ambient: usize,
    builder: &mut ReportBuilder,
) -> Result<Option<OrientedSkeleton<'p>>, CliError> {
    match source {
        OrientationSource::Cost(cost) => {
            if cost.len() != ambient {
                return Err(CliError::input(format!(
                    "cost has {} entries but vertices have {} coordinates",
                    cost.len(),
                    ambient
                )));
            }
            match OrientedSkeleton::orient(p, cost.clone()) {
                Ok(o) => {
                    builder.put("genericity", || (Status::Pass, String::new(), json!({})));
                    builder.put("acyclicity", || {
                        (
                            Status::Pass,
                            "cost orientations are acyclic".into(),
                            json!({}),
                        )
                    });
                    Ok(Some(o))
                }
                Err(OrientError::NotGeneric { u, v }) => {
                    builder.put("genericity", || {
                        (
                            Status::Fail,
                            format!("vertices {u} and {v} have equal cost"),
                            json!({ "tie": [u, v] }),
                        )
                    });
                    builder.fill_gated("requires a generic cost vector");
                    Ok(None)
                }
                Err(e) => Err(CliError::input(format!("cannot orient: {e}"))),
            }
        }
        OrientationSource::Explicit(arcs) => {
            builder.put("genericity", || {
                (
                    Status::NotApplicable,
                    "orientation supplied explicitly".into(),
                    json!({}),
                )
            });
            match OrientedSkeleton::explicit(p, arcs.clone()) {
                Ok(o) => {
                    builder.put("acyclicity", || (Status::Pass, String::new(), json!({})));
                    Ok(Some(o))
                }
                Err(OrientError::CyclicOrientation) => {
                    builder.put("acyclicity", || {
                        (
                            Status::Fail,
                            "the supplied arcs contain a directed cycle".into(),
                            json!({}),
                        )
                    });
                    builder.fill_gated("requires an acyclic orientation");
                    Ok(None)
                }
                Err(e) => Err(CliError::input(format!("bad orientation: {e}"))),
            }
        }
    }
}

fn run_checks(o: &OrientedSkeleton, opts: &AnalyzeOptions, builder: &mut ReportBuilder) {
    // Facial stage: not-applicable (rather than a gate failure) when face
    // enumeration is impossible on a non-simple instance.
    let mut facial_failed = false;
    builder.put("facial", || match o.is_facial() {
        Ok(check) if check.facial => (Status::Pass, String::new(), json!({})),
        Ok(check) => {
            facial_failed = true;
            let w = check.witness.expect("failing check carries a witness");
            (
                Status::Fail,
                "some face has multiple sources or sinks".into(),
                json!({
                    "face": w.face.vertex_set,
                    "sources": w.sources,
                    "sinks": w.sinks,
                }),
            )
        }
        Err(e) => (Status::NotApplicable, e.to_string(), json!({})),
    });
    if facial_failed {
        builder.fill_gated("gated: the orientation is not facial");
        return;
    }

    let hasse = o.is_hasse();
    builder.put("hasse", || {
        if hasse.hasse {
            (Status::Pass, String::new(), json!({}))
        } else {
            let w = hasse.witness.as_ref().expect("failing check has witness");
            (
                Status::Fail,
                format!(
                    "arc ({}, {}) is bypassed by a longer directed path",
                    w.arc.0, w.arc.1
                ),
                json!({ "arc": [w.arc.0, w.arc.1], "bypass": w.bypass }),
            )
        }
    });
    let trace_says_hasse = o.billera_trace();
    builder.put("billera", || {
        (
            if trace_says_hasse { Status::Pass } else { Status::Fail },
            if trace_says_hasse == hasse.hasse {
                "agrees with the bypass search".into()
            } else {
                "DISAGREES with the bypass search".into()
            },
            json!({ "agrees_with_hasse": trace_says_hasse == hasse.hasse }),
        )
    });

    // Path checks that only need an acyclic skeleton.
    builder.put("hirsch", || {
        let r = hirsch_check(o);
        (
            if r.longest_ok && r.diameter_ok {
                Status::Pass
            } else {
                Status::Fail
            },
            format!(
                "longest {} and diameter {} vs bound {}",
                r.longest_path, r.diameter, r.bound
            ),
            json!({
                "bound": r.bound,
                "longest_path": r.longest_path,
                "diameter": r.diameter,
                "longest_ok": r.longest_ok,
                "diameter_ok": r.diameter_ok,
            }),
        )
    });
    builder.put("spindle", || match spindle_theorem_check(o) {
        SpindleReport::NotApplicable { reason } => (Status::NotApplicable, reason, json!({})),
        SpindleReport::Checked {
            apexes,
            bound,
            longest,
            length_ok,
            nonrevisiting_ok,
            pass,
        } => (
            if pass { Status::Pass } else { Status::Fail },
            format!("apexes {} and {}, longest {longest} vs bound {bound}", apexes.0, apexes.1),
            json!({
                "apexes": [apexes.0, apexes.1],
                "bound": bound,
                "longest": longest,
                "length_ok": length_ok,
                "nonrevisiting_ok": nonrevisiting_ok,
            }),
        ),
    });
    builder.put("conjecture", || match conjecture_check(o) {
        ConjectureReport::Pass { checked_faces } => (
            Status::Pass,
            format!("no face revisited across {checked_faces} faces"),
            json!({ "checked_faces": checked_faces }),
        ),
        ConjectureReport::HypothesesFail {
            simple,
            hasse,
            lattice,
        } => (
            Status::NotApplicable,
            "hypotheses fail".into(),
            json!({ "simple": simple, "hasse": hasse, "lattice": lattice }),
        ),
        ConjectureReport::PotentialCounterexample { violations } => (
            Status::Fail,
            "POTENTIAL COUNTEREXAMPLE: a face is revisited under full hypotheses".into(),
            json!({
                "flag": "POTENTIAL COUNTEREXAMPLE",
                "violation_count": violations.len(),
                "violations": revisit_json(&violations),
            }),
        ),
    });

    if !hasse.hasse {
        builder.fill_gated("gated: requires the Hasse property");
        return;
    }
    let ps = o.build_poset().expect("Hasse property verified");

    let lattice = ps.is_lattice();
    builder.put("lattice", || {
        if lattice.lattice {
            (Status::Pass, String::new(), json!({}))
        } else {
            let (u, v) = lattice.witness.expect("failing check has witness");
            (
                Status::Fail,
                format!("elements {u} and {v} lack a unique join or meet"),
                json!({ "witness": [u, v] }),
            )
        }
    });

    if lattice.lattice {
        builder.put("pseudo_join_theorem", || {
            let r = verify_pseudo_join_theorem(o, &ps, opts.max_atoms).expect("lattice verified");
            let witnesses: Vec<Value> = r
                .disagreements
                .iter()
                .take(WITNESS_CAP)
                .map(|d| {
                    json!({
                        "vertex": d.vertex,
                        "subset": d.subset,
                        "pseudo": d.pseudo,
                        "lattice": d.lattice,
                        "op": match d.kind { OpKind::Join => "join", OpKind::Meet => "meet" },
                    })
                })
                .collect();
            (
                if r.holds { Status::Pass } else { Status::Fail },
                format!(
                    "{} comparisons across {} vertices, {} disagreements",
                    r.comparisons,
                    r.vertices_checked,
                    r.disagreements.len()
                ),
                json!({
                    "vertices_checked": r.vertices_checked,
                    "comparisons": r.comparisons,
                    "skipped_vertices": r.skipped_vertices,
                    "disagreement_count": r.disagreements.len(),
                    "disagreements": witnesses,
                }),
            )
        });
        builder.put("distinct_pseudo_joins", || {
            let r = verify_distinct_pseudo_joins(o, &ps, opts.max_atoms).expect("lattice verified");
            let witnesses: Vec<Value> = r
                .collisions
                .iter()
                .take(WITNESS_CAP)
                .map(|c| {
                    json!({
                        "interval": [c.interval.0, c.interval.1],
                        "first": c.first,
                        "second": c.second,
                        "value": c.value,
                    })
                })
                .collect();
            (
                if r.holds { Status::Pass } else { Status::Fail },
                format!(
                    "{} intervals checked, {} collisions",
                    r.intervals_checked,
                    r.collisions.len()
                ),
                json!({
                    "intervals_checked": r.intervals_checked,
                    "skipped_intervals": r.skipped_intervals,
                    "collision_count": r.collisions.len(),
                    "collisions": witnesses,
                }),
            )
        });
        builder.put("boolean_sublattice", || {
            let r = verify_boolean_sublattice(o, &ps, opts.max_atoms).expect("lattice verified");
            let witnesses: Vec<Value> = r
                .violations
                .iter()
                .take(WITNESS_CAP)
                .map(|v| {
                    json!({
                        "interval": [v.interval.0, v.interval.1],
                        "first": v.first,
                        "second": v.second,
                        "le": v.le,
                        "subset": v.subset,
                    })
                })
                .collect();
            (
                if r.holds { Status::Pass } else { Status::Fail },
                format!(
                    "{} intervals checked, {} violations",
                    r.intervals_checked,
                    r.violations.len()
                ),
                json!({
                    "intervals_checked": r.intervals_checked,
                    "skipped_intervals": r.skipped_intervals,
                    "violation_count": r.violations.len(),
                    "violations": witnesses,
                }),
            )
        });
        builder.put("nonrevisiting", || match check_nonrevisiting(o, opts.scope) {
            Ok(r) => (
                if r.holds { Status::Pass } else { Status::Fail },
                format!(
                    "{} faces checked, {} violations, longest path {} vs bound {}",
                    r.checked_faces,
                    r.violations.len(),
                    r.longest_path,
                    r.hirsch_bound
                ),
                json!({
                    "checked_faces": r.checked_faces,
                    "violation_count": r.violations.len(),
                    "violations": revisit_json(&r.violations),
                    "hirsch_bound": r.hirsch_bound,
                    "longest_path": r.longest_path,
                }),
            ),
            Err(e) => (Status::NotApplicable, e.to_string(), json!({})),
        });
    } else {
        for key in [
            "pseudo_join_theorem",
            "distinct_pseudo_joins",
            "boolean_sublattice",
            "nonrevisiting",
        ] {
            builder.put(key, || {
                (
                    Status::NotApplicable,
                    "gated: requires a lattice".into(),
                    json!({}),
                )
            });
        }
    }

    // Topology needs only the poset, not the lattice property.
    let survey = survey_intervals(&ps, opts.max_interval);
    builder.put("mobius_range", || {
        let out_of_range: Vec<Value> = survey
            .violations
            .iter()
            .filter_map(|v| match v {
                TopologyViolation::MobiusOutOfRange { pair, mu } => {
                    Some(json!({ "pair": [pair.0, pair.1], "mu": mu }))
                }
                _ => None,
            })
            .take(WITNESS_CAP)
            .collect();
        (
            if survey.mobius_in_range {
                Status::Pass
            } else {
                Status::Fail
            },
            format!("{} ordered pairs checked", survey.pairs_checked),
            json!({
                "pairs_checked": survey.pairs_checked,
                "out_of_range": out_of_range,
            }),
        )
    });
    builder.put("topology_profiles", || {
        let witnesses: Vec<Value> = survey
            .violations
            .iter()
            .filter_map(topology_violation_json)
            .take(WITNESS_CAP)
            .collect();
        let ok = survey.hall_ok && survey.profiles_ok && survey.sphere_signs_ok;
        (
            if ok { Status::Pass } else { Status::Fail },
            format!(
                "{} complexes checked, {} skipped by the interval cap",
                survey.complexes_checked, survey.skipped_intervals
            ),
            json!({
                "complexes_checked": survey.complexes_checked,
                "skipped_intervals": survey.skipped_intervals,
                "hall_ok": survey.hall_ok,
                "profiles_ok": survey.profiles_ok,
                "sphere_signs_ok": survey.sphere_signs_ok,
                "violations": witnesses,
            }),
        )
    });
}

fn revisit_json(violations: &[RevisitWitness]) -> Vec<Value> {
    violations
        .iter()
        .take(WITNESS_CAP)
        .map(|w| json!({ "face": w.face.vertex_set, "path": w.path }))
        .collect()
}

fn topology_violation_json(v: &TopologyViolation) -> Option<Value> {
    match v {
        // Mobius range problems are reported under their own check key.
        TopologyViolation::MobiusOutOfRange { .. } => None,
        TopologyViolation::HallMismatch { pair, mu, euler } => Some(json!({
            "kind": "euler-mobius-mismatch",
            "pair": [pair.0, pair.1],
            "mu": mu,
            "euler": euler,
        })),
        TopologyViolation::ProfileViolation { pair, betti } => Some(json!({
            "kind": "betti-profile",
            "pair": [pair.0, pair.1],
            "minus_one": betti.minus_one,
            "betti": betti.reduced_betti,
        })),
        TopologyViolation::SphereSignMismatch { pair, k, mu } => Some(json!({
            "kind": "sphere-sign",
            "pair": [pair.0, pair.1],
            "k": k,
            "mu": mu,
        })),
    }
}
