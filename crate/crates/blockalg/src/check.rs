//! Lightweight result types for windowed verification checks.

use std::fmt;

/// A single failed check: where it happened and the rendered nonzero defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect {
    pub context: String,
    pub rendered: String,
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.context, self.rendered)
    }
}

/// Outcome of a windowed check: how many individual identities were
/// evaluated and which ones failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checks: usize,
    pub defects: Vec<Defect>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn record(&mut self, context: impl Into<String>, defect: Option<String>) {
        self.checks += 1;
        if let Some(rendered) = defect {
            self.defects.push(Defect {
                context: context.into(),
                rendered,
            });
        }
    }

    /// Counts one check; the context string is only built on failure.
    pub fn tally(&mut self, defect: Option<String>, context: impl FnOnce() -> String) {
        self.checks += 1;
        if let Some(rendered) = defect {
            self.defects.push(Defect {
                context: context(),
                rendered,
            });
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks += other.checks;
        self.defects.extend(other.defects);
    }
}

/// One row of a suite outcome, ready for report serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteRecord {
    pub id: String,
    pub params: String,
    pub pass: bool,
    pub defect: Option<String>,
    pub certificate: Option<String>,
}

impl SuiteRecord {
    pub fn from_report(id: impl Into<String>, params: impl Into<String>, report: &CheckReport) -> Self {
        SuiteRecord {
            id: id.into(),
            params: params.into(),
            pass: report.passed(),
            defect: if report.passed() {
                None
            } else {
                // keep reports bounded; the first few defects identify the failure
                let shown: Vec<String> =
                    report.defects.iter().take(5).map(|d| d.to_string()).collect();
                Some(format!(
                    "{} of {} checks failed; first: {}",
                    report.defects.len(),
                    report.checks,
                    shown.join(" | ")
                ))
            },
            certificate: None,
        }
    }

    pub fn pass(id: impl Into<String>, params: impl Into<String>) -> Self {
        SuiteRecord {
            id: id.into(),
            params: params.into(),
            pass: true,
            defect: None,
            certificate: None,
        }
    }

    pub fn fail(id: impl Into<String>, params: impl Into<String>, defect: impl Into<String>) -> Self {
        SuiteRecord {
            id: id.into(),
            params: params.into(),
            pass: false,
            defect: Some(defect.into()),
            certificate: None,
        }
    }
}

/// Ordered list of suite records; the order is deterministic by
/// construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub records: Vec<SuiteRecord>,
}

impl SuiteOutcome {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: SuiteRecord) {
        self.records.push(record);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn pass_count(&self) -> usize {
        self.records.iter().filter(|r| r.pass).count()
    }

    pub fn fail_count(&self) -> usize {
        self.records.len() - self.pass_count()
    }

    pub fn merge(&mut self, other: SuiteOutcome) {
        self.records.extend(other.records);
    }
}
