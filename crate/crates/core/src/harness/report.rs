use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{Counterexample, WindowSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Rejected,
}

/// Result of one check before it is wrapped into a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Counterexample),
    Rejected(String),
}

impl From<Result<(), Counterexample>> for Outcome {
    fn from(r: Result<(), Counterexample>) -> Self {
        match r {
            Ok(()) => Outcome::Pass,
            Err(c) => Outcome::Fail(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub window: WindowSpec,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub ms: u64,
}

impl VerificationReport {
    pub fn new(name: &str, params: BTreeMap<String, String>, window: WindowSpec, outcome: Outcome, ms: u64) -> Self {
        let (status, counterexample, reason) = match outcome {
            Outcome::Pass => (Status::Pass, None, None),
            Outcome::Fail(c) => (Status::Fail, Some(c), None),
            Outcome::Rejected(r) => (Status::Rejected, None, Some(r)),
        };
        VerificationReport {
            name: name.to_string(),
            params,
            window,
            status,
            counterexample,
            reason,
            ms,
        }
    }
}

/// Runs `check` and times it.
pub fn run_check(
    name: &str,
    params: &[(&str, String)],
    window: WindowSpec,
    check: impl FnOnce() -> Outcome,
) -> VerificationReport {
    let start = Instant::now();
    let outcome = check();
    let ms = start.elapsed().as_millis() as u64;
    let params = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    VerificationReport::new(name, params, window, outcome, ms)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub rejected: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Rejected => s.rejected += 1,
            }
        }
        s
    }

    /// 0 all pass, 1 any fail, 2 any rejected and no fail.
    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            1
        } else if self.rejected > 0 {
            2
        } else {
            0
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Serialize)]
struct SuiteDoc<'a> {
    suite: &'a str,
    checks: Vec<&'a VerificationReport>,
    summary: Summary,
}

/// Renders a suite. Checks are sorted by name, then parameters.
pub fn emit_report(suite: &str, reports: &[VerificationReport], format: ReportFormat) -> String {
    let mut checks: Vec<&VerificationReport> = reports.iter().collect();
    checks.sort_by(|a, b| (&a.name, &a.params).cmp(&(&b.name, &b.params)));
    let summary = Summary::of(reports);
    match format {
        ReportFormat::Json => {
            let doc = SuiteDoc { suite, checks, summary };
            serde_json::to_string_pretty(&doc).expect("report serializes")
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for c in checks {
                let status = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Rejected => "REJECTED",
                };
                let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&format!(
                    "{status} {} [{}] window(op={}, bound={}) {}ms\n",
                    c.name,
                    params.join(", "),
                    c.window.op_window,
                    c.window.module_bound,
                    c.ms
                ));
                if let Some(cx) = &c.counterexample {
                    out.push_str(&format!("  counterexample: {cx}\n"));
                }
                if let Some(r) = &c.reason {
                    out.push_str(&format!("  rejected: {r}\n"));
                }
            }
            out.push_str(&format!(
                "{}: {} passed, {} failed, {} rejected\n",
                suite, summary.pass, summary.fail, summary.rejected
            ));
            out
        }
    }
}
