use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::points::{coordinate_point_analysis, CoordinatePointReport, LocalClass};
use super::{
    check_sing_in_d, in_coordinate_ideal, pfaffians, restrict_and_check_nodes, restricted_singular_ideal,
    singular_ideal, NodeCheck, VerifyError,
};
use crate::formats::{
    accidental_zeros, derive_seed, fishy_zero_tests, instantiate, upper_positions, weight_failures, FailureReason,
    Format, FormatCandidate,
};
use crate::groebner::{Budget, GroebnerError};
use crate::nodecount::{node_count, raw_count, NodeCountError, NodeFormulaInput};
use crate::polyring::DEFAULT_PRIME;

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub prime: u32,
    pub seed: u64,
    /// Extra attempts after an inconclusive one.
    pub retries: u32,
    /// Run the Gröbner-basis checks of the singular locus.
    pub verify_lengths: bool,
    /// Wall-clock limit per case.
    pub budget_seconds: Option<f64>,
    /// Zero one free entry on the first `sabotage` attempts.
    pub sabotage: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            prime: DEFAULT_PRIME,
            seed: 0,
            retries: 3,
            verify_lengths: true,
            budget_seconds: None,
            sabotage: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(FailureReason),
    /// Inconclusive; needs a human.
    Flagged(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Flagged(_) => "flagged",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(r) => write!(f, "fail ({r})"),
            Verdict::Flagged(s) => write!(f, "flagged ({s})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CaseReport {
    pub candidate: String,
    pub centre_label: String,
    /// 0-based basket index.
    pub centre_index: usize,
    pub format: Format,
    pub orbit: Vec<Format>,
    pub verdict: Verdict,
    /// Node count from the Chern class formula, when integral.
    pub chern_count: Option<u64>,
    /// The formula value, possibly fractional.
    pub chern_value: String,
    /// Length of the singular scheme on `D`, when computed.
    pub length_count: Option<usize>,
    /// Seed of the last attempt.
    pub seed: u64,
    pub attempts: u32,
    pub elapsed: Duration,
    pub points: Vec<CoordinatePointReport>,
    /// The matrix of the last attempt, one row of the upper triangle per line.
    pub matrix: Option<String>,
}

enum Attempt {
    Done(Verdict),
    Retry(String),
}

fn timeout_or(e: GroebnerError, stage: &str) -> Result<Attempt, VerifyError> {
    match e {
        GroebnerError::Timeout { .. } => {
            Ok(Attempt::Done(Verdict::Flagged(FailureReason::Timeout { stage: stage.into() }.to_string())))
        }
        e => Err(e.into()),
    }
}

fn grob<T>(r: Result<T, VerifyError>, stage: &str) -> Result<Result<T, Attempt>, VerifyError> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(VerifyError::Groebner(e)) => timeout_or(e, stage).map(Err),
        Err(e) => Err(e),
    }
}

macro_rules! step {
    ($e:expr, $stage:expr) => {
        match grob($e, $stage)? {
            Ok(v) => v,
            Err(a) => return Ok(a),
        }
    };
}

/// Verifies one format at one centre: weight tests, then for each attempt a
/// random instance, fishy zeros, coordinate points and the singularity checks.
pub fn verify_case(fc: &FormatCandidate, config: &VerifyConfig) -> Result<CaseReport, VerifyError> {
    let start = Instant::now();
    let k = fc.shape.k;
    if (config.prime as u64) <= 2 * k as u64 {
        return Err(VerifyError::PrimeTooSmall { prime: config.prime, k });
    }
    let centred = &fc.centred;
    let input = NodeFormulaInput::new(centred, fc.shape, fc.format);
    let chern_count = match node_count(&input) {
        Ok(n) => Some(n),
        Err(NodeCountError::NonIntegralCount { .. } | NodeCountError::NonPositiveCount { .. }) => None,
        Err(NodeCountError::BadDegree { .. }) => None,
    };
    let chern_value = raw_count(&input).map(|v| v.to_string()).unwrap_or_else(|e| e.to_string());
    let mut report = CaseReport {
        candidate: centred.parent.id.clone(),
        centre_label: centred.label(),
        centre_index: centred.centre_index,
        format: fc.format,
        orbit: fc.orbit.clone(),
        verdict: Verdict::Pass,
        chern_count,
        chern_value,
        length_count: None,
        seed: derive_seed(config.seed, &centred.parent.id, centred.centre_index, fc.format, 0),
        attempts: 0,
        elapsed: Duration::ZERO,
        points: Vec::new(),
        matrix: None,
    };
    if let Some(reason) = weight_failures(fc).into_iter().next() {
        report.verdict = Verdict::Fail(reason);
        report.elapsed = start.elapsed();
        return Ok(report);
    }
    let budget = config.budget_seconds.map_or_else(Budget::unlimited, Budget::seconds);
    let ring = centred.ring(config.prime)?;
    let mut last_retry = String::new();
    for attempt in 0..=config.retries {
        report.attempts = attempt + 1;
        report.seed = derive_seed(config.seed, &centred.parent.id, centred.centre_index, fc.format, attempt);
        log::debug!("{} {} attempt {} seed {:#x}", report.centre_label, fc.format, attempt, report.seed);
        match run_attempt(fc, &ring, config, attempt, &budget, &mut report)? {
            Attempt::Done(v) => {
                report.verdict = v;
                report.elapsed = start.elapsed();
                return Ok(report);
            }
            Attempt::Retry(why) => {
                log::info!("{} {}: retrying: {why}", report.centre_label, fc.format);
                last_retry = why;
            }
        }
    }
    report.verdict = match last_retry.as_str() {
        s if s.starts_with("accidental") => Verdict::Flagged(format!("{s} on every attempt")),
        s if s.starts_with("singular on y1 = 0") => Verdict::Flagged(s.to_string()),
        s => Verdict::Fail(FailureReason::DownstreamSingular { detail: s.to_string() }),
    };
    report.elapsed = start.elapsed();
    Ok(report)
}

fn run_attempt(
    fc: &FormatCandidate,
    ring: &crate::polyring::RingRef,
    config: &VerifyConfig,
    attempt: u32,
    budget: &Budget,
    report: &mut CaseReport,
) -> Result<Attempt, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(report.seed);
    let mut m = instantiate(fc, ring, &mut rng);
    if attempt < config.sabotage {
        if let Some((i, j)) = upper_positions().find(|&(i, j)| !fc.is_bound(i, j) && !fc.is_forced_zero(i, j)) {
            m.set(i, j, ring.zero());
        }
    }
    report.matrix = Some(m.to_string());
    let accidental = accidental_zeros(fc, &m);
    if let Some(&(i, j)) = accidental.first() {
        return Ok(Attempt::Retry(format!("accidental zero at m{}{}", i + 1, j + 1)));
    }
    let pfs = pfaffians(&m)?;
    let nx = centred_nx(fc);
    if let Some(n) = pfs.iter().position(|f| !in_coordinate_ideal(f, nx)) {
        return Ok(Attempt::Done(Verdict::Flagged(format!("Pfaffian {} does not vanish on D", n + 1))));
    }
    match fishy_zero_tests(&m) {
        Ok(Some(reason)) => return Ok(Attempt::Done(Verdict::Fail(reason))),
        Ok(None) => {}
        Err(e) => return timeout_or(e, "fishy zeros"),
    }
    report.points = coordinate_point_analysis(&pfs, nx);
    for p in &report.points {
        match &p.class {
            Some(LocalClass::Nonterminal { detail }) => {
                let point = format!("P_{}", p.name);
                let detail = detail.clone();
                let reason = if p.on_d {
                    FailureReason::NonterminalOnD { point, detail }
                } else {
                    FailureReason::NonterminalOffD { point, detail }
                };
                return Ok(Attempt::Done(Verdict::Fail(reason)));
            }
            Some(LocalClass::Unrecognized { detail }) => {
                return Ok(Attempt::Done(Verdict::Flagged(format!("P_{}: {detail}", p.name))));
            }
            _ => {}
        }
    }
    let Some(expected) = report.chern_count else {
        return Ok(Attempt::Done(Verdict::Flagged(format!(
            "node formula gives {} with no weight-level failure",
            report.chern_value
        ))));
    };
    if !config.verify_lengths {
        return Ok(Attempt::Done(Verdict::Pass));
    }
    let budget = budget.to_owned();
    let contained = step!(check_sing_in_d(&singular_ideal(&pfs, ring).with_budget(budget), nx, &budget), "singular locus");
    if !contained.contained {
        return Ok(Attempt::Done(Verdict::Fail(FailureReason::DownstreamSingular {
            detail: "singular locus not contained in D".into(),
        })));
    }
    let restricted = step!(restricted_singular_ideal(&pfs, nx), "restriction to D");
    let nodes = step!(restrict_and_check_nodes(&restricted, report.seed, &budget), "nodes on D");
    match nodes {
        NodeCheck::Nodes { count } => {
            report.length_count = Some(count);
            if count as u64 == expected {
                Ok(Attempt::Done(Verdict::Pass))
            } else {
                Ok(Attempt::Retry(format!("{count} nodes on D, formula gives {expected}")))
            }
        }
        NodeCheck::NotIsolated => Ok(Attempt::Done(Verdict::Fail(FailureReason::DownstreamSingular {
            detail: "singular locus on D is not isolated".into(),
        }))),
        NodeCheck::NotReduced { length } => {
            report.length_count = Some(length);
            Ok(Attempt::Retry(format!("singular scheme on D of length {length} is not reduced")))
        }
        NodeCheck::SingularOnBoundaryStratum => Ok(Attempt::Retry("singular on y1 = 0".into())),
    }
}

fn centred_nx(fc: &FormatCandidate) -> usize {
    fc.centred.x_weights.len()
}
