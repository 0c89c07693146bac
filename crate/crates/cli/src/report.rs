use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use eulerprod_core::precision::Mag;
use eulerprod_core::{PrecisionPolicy, Rational, Real};
use serde::Serialize;

use crate::catalog::{catalog, Identity};
use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Inconclusive,
    Mismatch,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Inconclusive => "inconclusive",
            Status::Mismatch => "mismatch",
        }
    }

    /// Overlap with both radii within `tol` verifies; disjoint balls are a
    /// mismatch; anything else is undecided.
    pub fn classify(lhs: &Real, rhs: &Real, tol: &Rational) -> Status {
        let within = |r: &Real| r.rad().to_dyadic().to_rational() <= *tol;
        if !lhs.overlaps(rhs) {
            Status::Mismatch
        } else if within(lhs) && within(rhs) {
            Status::Verified
        } else {
            Status::Inconclusive
        }
    }
}

/// A ball as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ball {
    pub mid: String,
    pub radius: String,
}

impl Ball {
    pub fn of(r: &Real) -> Ball {
        Ball { mid: r.to_decimal(r.meaningful_digits()), radius: sci(r.rad()) }
    }
}

impl std::fmt::Display for Ball {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} +/- {}", self.mid, self.radius)
    }
}

pub(crate) fn sci(m: Mag) -> String {
    m.to_sci_string(3)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub lhs: Option<Ball>,
    pub rhs: Option<Ball>,
    /// Separation of the two balls, zero when they overlap.
    pub gap: String,
    pub status: Status,
    pub precision_bits: u32,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Whether `id` is selected by `pattern`: a glob when it has wildcards,
/// otherwise the id itself or any id extending it after a `-`.
pub fn matches(pattern: &str, id: &str) -> Result<bool, UsageError> {
    if pattern.contains(['*', '?', '[']) {
        let glob = glob::Pattern::new(pattern)
            .map_err(|e| UsageError::InvalidArgument(format!("bad pattern {pattern:?}: {e}")))?;
        return Ok(glob.matches(id));
    }
    Ok(id == pattern || id.strip_prefix(pattern).is_some_and(|rest| rest.starts_with('-')))
}

/// Ids of every identity the suite knows, in report order.
pub fn identity_ids() -> Vec<String> {
    catalog().into_iter().map(|i| i.id).collect()
}

fn run_one(identity: &Identity, policy: &PrecisionPolicy, depth: usize) -> IdentityReport {
    let start = Instant::now();
    let tol = policy.target_tolerance().clone();
    let mut policy = policy.clone();
    loop {
        let outcome = identity.eval(&policy, depth);
        let status = match &outcome {
            Ok(s) => Status::classify(&s.lhs, &s.rhs, &tol),
            Err(_) => Status::Inconclusive,
        };
        if status == Status::Inconclusive && !identity.depth_limited {
            if let Some(next) = policy.escalated() {
                policy = next;
                continue;
            }
        }
        let elapsed_ms = start.elapsed().as_millis() as u64;
        let precision_bits = policy.working_bits();
        return match outcome {
            Ok(s) => IdentityReport {
                identity_id: identity.id.clone(),
                gap: sci(Mag::from_dyadic(&s.lhs.gap(&s.rhs))),
                lhs: Some(Ball::of(&s.lhs)),
                rhs: Some(Ball::of(&s.rhs)),
                status,
                precision_bits,
                elapsed_ms,
                detail: s.detail,
            },
            Err(e) => IdentityReport {
                identity_id: identity.id.clone(),
                lhs: None,
                rhs: None,
                gap: String::new(),
                status,
                precision_bits,
                elapsed_ms,
                detail: Some(format!("error: {e}")),
            },
        };
    }
}

/// Runs every identity selected by `filter`, escalating precision on
/// inconclusive results. Reports come back in id order whatever order the
/// worker threads finish in.
pub fn run_suite(
    filter: Option<&str>,
    policy: &PrecisionPolicy,
    depth: usize,
) -> Result<Vec<IdentityReport>, UsageError> {
    let mut selected = Vec::new();
    for identity in catalog() {
        if filter.map_or(Ok(true), |p| matches(p, &identity.id))? {
            selected.push(identity);
        }
    }
    if selected.is_empty() {
        return Err(UsageError::UnknownIdentity(filter.unwrap_or_default().to_string()));
    }

    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<IdentityReport>>> = Mutex::new(vec![None; selected.len()]);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(selected.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(identity) = selected.get(i) else { break };
                let report = run_one(identity, policy, depth);
                slots.lock().unwrap()[i] = Some(report);
            });
        }
    });
    Ok(slots.into_inner().unwrap().into_iter().map(|r| r.expect("every slot filled")).collect())
}

#[derive(Serialize)]
struct PolicyEcho<'a> {
    precision_bits: u32,
    tolerance: &'a str,
    depth: usize,
}

#[derive(Serialize)]
struct Document<'a> {
    version: &'static str,
    policy: PolicyEcho<'a>,
    reports: &'a [IdentityReport],
}

/// The JSON report document, pretty-printed with a trailing newline.
pub fn render_json(reports: &[IdentityReport], bits: u32, tolerance: &str, depth: usize) -> String {
    let doc = Document {
        version: env!("CARGO_PKG_VERSION"),
        policy: PolicyEcho { precision_bits: bits, tolerance, depth },
        reports,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_csv(reports: &[IdentityReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["identity_id", "lhs", "rhs", "gap", "status", "precision_bits", "elapsed_ms"])
        .expect("in-memory write");
    let show = |b: &Option<Ball>| b.as_ref().map(Ball::to_string).unwrap_or_default();
    for r in reports {
        w.write_record([
            r.identity_id.clone(),
            show(&r.lhs),
            show(&r.rhs),
            r.gap.clone(),
            r.status.as_str().to_string(),
            r.precision_bits.to_string(),
            r.elapsed_ms.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}
