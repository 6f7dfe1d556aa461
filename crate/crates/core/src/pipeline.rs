//! Batch driver: every Type I centre and format orbit of every candidate,
//! verified in parallel and merged into Big Table rows, followed by the
//! theorem-level assertions.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::candidates::{pfaffian_shape, project_type_i, CandidateError, FanoCandidate};
use crate::formats::{enumerate_formats, Format, FormatCandidate};
use crate::nodecount::{euler_consistency, EulerConsistency};
use crate::verify::{verify_case, CaseReport, Verdict, VerifyConfig, VerifyError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Candidates(#[from] CandidateError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("no candidate with id {0:?}")]
    UnknownCandidate(String),
    #[error("no Type I centre of {candidate} matches {selector}")]
    NoCentre { candidate: String, selector: String },
    #[error("bad centre selector {0:?}: expected a 1-based basket index or 1/r")]
    BadCentre(String),
    #[error("could not build worker pool: {0}")]
    Pool(String),
    #[error("could not write table: {0}")]
    Output(String),
}

/// A basket point chosen by 1-based position or by its index `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentreSelector {
    /// 0-based basket index.
    Index(usize),
    Order(u32),
}

impl FromStr for CentreSelector {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PipelineError::BadCentre(s.to_string());
        let s = s.trim();
        if let Some(r) = s.strip_prefix("1/") {
            return r.parse().ok().filter(|&r| r > 1).map(CentreSelector::Order).ok_or_else(bad);
        }
        match s.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(CentreSelector::Index(i - 1)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for CentreSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentreSelector::Index(i) => write!(f, "centre {}", i + 1),
            CentreSelector::Order(r) => write!(f, "centre 1/{r}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub verify: VerifyConfig,
    pub candidate: Option<String>,
    pub centre: Option<CentreSelector>,
    /// Keep only the orbit containing this format.
    pub format: Option<Format>,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    /// Fill the wall-time column.
    pub timing: bool,
}

/// One line of the output table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BigTableRow {
    pub candidate: String,
    pub centre: String,
    pub format: String,
    pub verdict: String,
    /// Node count for a pass, otherwise the failure reason or flag detail.
    pub outcome: String,
    pub chern_count: Option<u64>,
    pub length_count: Option<usize>,
    pub seed: u64,
    pub retries: u32,
    pub wall_time: Option<f64>,
}

impl BigTableRow {
    pub fn from_report(r: &CaseReport, timing: bool) -> Self {
        let outcome = match &r.verdict {
            Verdict::Pass => r.chern_count.map_or_else(String::new, |n| n.to_string()),
            Verdict::Fail(reason) => reason.to_string(),
            Verdict::Flagged(detail) => detail.clone(),
        };
        BigTableRow {
            candidate: r.candidate.clone(),
            centre: r.centre_label.clone(),
            format: r.format.to_string(),
            verdict: r.verdict.tag().to_string(),
            outcome,
            chern_count: r.chern_count,
            length_count: r.length_count,
            seed: r.seed,
            retries: r.attempts.saturating_sub(1),
            wall_time: timing.then(|| (r.elapsed.as_secs_f64() * 1000.0).round() / 1000.0),
        }
    }
}

/// A centre that yields no cases, with the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedCentre {
    pub candidate: String,
    pub centre: String,
    pub reason: String,
}

/// Passing formats and counts at one centre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentreOutcome {
    pub candidate: String,
    pub centre: String,
    pub centre_index: usize,
    /// Every format orbit at this centre was run.
    pub complete: bool,
    pub passing: Vec<(Format, u64)>,
}

impl CentreOutcome {
    pub fn tom_passes(&self) -> usize {
        self.passing.iter().filter(|(f, _)| f.is_tom()).count()
    }

    pub fn jerry_passes(&self) -> usize {
        self.passing.len() - self.tom_passes()
    }

    pub fn counts(&self) -> Vec<u64> {
        self.passing.iter().map(|&(_, n)| n).collect()
    }
}

pub struct RunOutput {
    pub reports: Vec<CaseReport>,
    pub rows: Vec<BigTableRow>,
    pub centres: Vec<CentreOutcome>,
    pub skipped: Vec<SkippedCentre>,
    pub euler: BTreeMap<String, EulerConsistency>,
    pub violations: Vec<String>,
}

impl RunOutput {
    pub fn flagged(&self) -> usize {
        self.reports.iter().filter(|r| matches!(r.verdict, Verdict::Flagged(_))).count()
    }

    /// 0 when every assertion holds and nothing is flagged, 2 when some case
    /// is flagged, 3 when a theorem-level assertion fails.
    pub fn exit_code(&self) -> i32 {
        if !self.violations.is_empty() {
            3
        } else if self.flagged() > 0 {
            2
        } else {
            0
        }
    }
}

struct CentreCases {
    candidate: Arc<FanoCandidate>,
    centre_index: usize,
    label: String,
    cases: Vec<FormatCandidate>,
    complete: bool,
}

fn select_centres(c: &Arc<FanoCandidate>, sel: Option<CentreSelector>) -> Result<Vec<usize>, PipelineError> {
    let all = c.type_i_centres();
    let Some(sel) = sel else { return Ok(all) };
    let chosen: Vec<usize> = match sel {
        CentreSelector::Index(i) => {
            c.centre(i)?;
            if !all.contains(&i) {
                project_type_i(c, i)?;
            }
            vec![i]
        }
        CentreSelector::Order(r) => all.into_iter().filter(|&i| c.basket[i].r == r).collect(),
    };
    if chosen.is_empty() {
        return Err(PipelineError::NoCentre { candidate: c.id.clone(), selector: sel.to_string() });
    }
    Ok(chosen)
}

fn gather(
    candidates: &[Arc<FanoCandidate>],
    config: &RunConfig,
    skipped: &mut Vec<SkippedCentre>,
) -> Result<Vec<CentreCases>, PipelineError> {
    let mut out = Vec::new();
    for c in candidates {
        for index in select_centres(c, config.centre)? {
            let centred = Arc::new(project_type_i(c, index)?);
            let label = centred.label();
            let shape = match pfaffian_shape(&centred.numerator_y) {
                Ok(s) => s,
                Err(e) => {
                    log::warn!("{} {label}: skipped: {e}", c.id);
                    skipped.push(SkippedCentre { candidate: c.id.clone(), centre: label, reason: e.to_string() });
                    continue;
                }
            };
            let mut cases = enumerate_formats(&centred, shape)?;
            let complete = config.format.is_none();
            if let Some(f) = config.format {
                cases.retain(|fc| fc.orbit.contains(&f));
            }
            out.push(CentreCases { candidate: c.clone(), centre_index: index, label, cases, complete });
        }
    }
    Ok(out)
}

/// Runs every selected case. Reports come back in input order whatever the
/// thread count.
pub fn run(candidates: &[FanoCandidate], config: &RunConfig) -> Result<RunOutput, PipelineError> {
    if let Some(id) = &config.candidate {
        if !candidates.iter().any(|c| &c.id == id) {
            return Err(PipelineError::UnknownCandidate(id.clone()));
        }
    }
    let chosen: Vec<Arc<FanoCandidate>> = candidates
        .iter()
        .filter(|c| config.candidate.as_ref().is_none_or(|id| &c.id == id))
        .cloned()
        .map(Arc::new)
        .collect();
    let mut skipped = Vec::new();
    let groups = gather(&chosen, config, &mut skipped)?;
    let cases: Vec<&FormatCandidate> = groups.iter().flat_map(|g| &g.cases).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = config.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| PipelineError::Pool(e.to_string()))?;
    let start = Instant::now();
    let results: Vec<Result<CaseReport, VerifyError>> = pool.install(|| {
        cases
            .par_iter()
            .map(|fc| {
                let r = verify_case(fc, &config.verify);
                if let Ok(r) = &r {
                    log::info!(
                        "{} {} {}: {} in {:.3}s",
                        r.candidate,
                        r.centre_label,
                        r.format,
                        r.verdict,
                        r.elapsed.as_secs_f64()
                    );
                }
                r
            })
            .collect()
    });
    log::info!("{} cases in {:.2}s", cases.len(), start.elapsed().as_secs_f64());
    let mut reports = Vec::with_capacity(results.len());
    for (fc, r) in cases.iter().zip(results) {
        match r {
            Ok(r) => reports.push(r),
            Err(e @ VerifyError::PrimeTooSmall { .. }) => return Err(e.into()),
            Err(e) => reports.push(error_report(fc, &e)),
        }
    }
    let rows = reports.iter().map(|r| BigTableRow::from_report(r, config.timing)).collect();

    let mut centres = Vec::new();
    let mut at = 0;
    for g in &groups {
        let here = &reports[at..at + g.cases.len()];
        at += g.cases.len();
        let passing = here.iter().filter(|r| r.verdict.is_pass()).filter_map(|r| Some((r.format, r.chern_count?))).collect();
        centres.push(CentreOutcome {
            candidate: g.candidate.id.clone(),
            centre: g.label.clone(),
            centre_index: g.centre_index,
            complete: g.complete,
            passing,
        });
    }
    let euler = euler_by_candidate(&centres);
    let mut violations = theorem_violations(&centres, &euler);
    let plain: Vec<FanoCandidate> = chosen.iter().map(|c| c.as_ref().clone()).collect();
    violations.extend(expectation_violations(&plain, &reports));
    Ok(RunOutput { reports, rows, centres, skipped, euler, violations })
}

fn error_report(fc: &FormatCandidate, e: &VerifyError) -> CaseReport {
    CaseReport {
        candidate: fc.centred.parent.id.clone(),
        centre_label: fc.centred.label(),
        centre_index: fc.centred.centre_index,
        format: fc.format,
        orbit: fc.orbit.clone(),
        verdict: Verdict::Flagged(e.to_string()),
        chern_count: None,
        chern_value: String::new(),
        length_count: None,
        seed: 0,
        attempts: 0,
        elapsed: Default::default(),
        points: Vec::new(),
        matrix: None,
    }
}

/// Euler consistency per candidate, over centres where every orbit was run.
pub fn euler_by_candidate(centres: &[CentreOutcome]) -> BTreeMap<String, EulerConsistency> {
    let mut grouped: BTreeMap<String, BTreeMap<String, Vec<u64>>> = BTreeMap::new();
    for c in centres.iter().filter(|c| c.complete) {
        grouped.entry(c.candidate.clone()).or_default().insert(c.centre.clone(), c.counts());
    }
    grouped.into_iter().map(|(id, by_centre)| (id, euler_consistency(&by_centre))).collect()
}

/// Theorem-level assertions on complete centres: a passing Tom and a passing
/// Jerry, pairwise distinct counts, and Euler consistency across centres.
pub fn theorem_violations(centres: &[CentreOutcome], euler: &BTreeMap<String, EulerConsistency>) -> Vec<String> {
    let mut out = Vec::new();
    for c in centres.iter().filter(|c| c.complete) {
        let at = format!("{} {}", c.candidate, c.centre);
        if c.tom_passes() == 0 {
            out.push(format!("{at}: no Tom format passes"));
        }
        if c.jerry_passes() == 0 {
            out.push(format!("{at}: no Jerry format passes"));
        }
        let mut counts = c.counts();
        counts.sort_unstable();
        if counts.windows(2).any(|w| w[0] == w[1]) {
            out.push(format!("{at}: passing node counts {counts:?} are not distinct"));
        }
    }
    for (id, e) in euler {
        if !e.consistent {
            out.push(format!("{id}: Euler differences disagree between centres: {e}"));
        }
    }
    out
}

/// Every reference count in the input must be reproduced by a passing case
/// whose orbit contains the named format.
pub fn expectation_violations(candidates: &[FanoCandidate], reports: &[CaseReport]) -> Vec<String> {
    let mut out = Vec::new();
    for c in candidates {
        for (&index, expected) in &c.expected_counts {
            let here: Vec<&CaseReport> =
                reports.iter().filter(|r| r.candidate == c.id && r.centre_index == index).collect();
            if here.is_empty() {
                continue;
            }
            for (name, &count) in expected {
                let Ok(f) = name.parse::<Format>() else {
                    out.push(format!("{} centre {}: unknown format {name:?}", c.id, index + 1));
                    continue;
                };
                let Some(r) = here.iter().find(|r| r.orbit.contains(&f)) else { continue };
                let got = r.verdict.is_pass().then_some(r.chern_count).flatten();
                if got != Some(count as u64) || r.length_count.is_some_and(|l| l as u64 != count as u64) {
                    out.push(format!(
                        "{} {}: expected {name} to pass with {count} nodes, got {} (formula {:?}, length {:?})",
                        c.id, r.centre_label, r.verdict, r.chern_count, r.length_count
                    ));
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Emit {
    #[default]
    Csv,
    Json,
}

impl FromStr for Emit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Emit::Csv),
            "json" => Ok(Emit::Json),
            _ => Err(format!("unknown output format {s:?}; expected csv or json")),
        }
    }
}

/// Writes the rows as CSV with a header or as a JSON array, LF-terminated.
pub fn write_table<W: Write>(rows: &[BigTableRow], emit: Emit, mut out: W) -> Result<(), PipelineError> {
    let err = |e: &dyn fmt::Display| PipelineError::Output(e.to_string());
    match emit {
        Emit::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
            if rows.is_empty() {
                w.write_record(TABLE_COLUMNS).map_err(|e| err(&e))?;
            }
            for r in rows {
                w.serialize(r).map_err(|e| err(&e))?;
            }
            w.flush().map_err(|e| err(&e))
        }
        Emit::Json => {
            serde_json::to_writer_pretty(&mut out, rows).map_err(|e| err(&e))?;
            out.write_all(b"\n").map_err(|e| err(&e))
        }
    }
}

pub const TABLE_COLUMNS: [&str; 10] = [
    "candidate",
    "centre",
    "format",
    "verdict",
    "outcome",
    "chern_count",
    "length_count",
    "seed",
    "retries",
    "wall_time",
];

pub fn table_string(rows: &[BigTableRow], emit: Emit) -> Result<String, PipelineError> {
    let mut buf = Vec::new();
    write_table(rows, emit, &mut buf)?;
    Ok(String::from_utf8(buf).expect("table output is UTF-8"))
}
