use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::Format;

/// Version tag carried by every JSON document the binary prints.
pub const SCHEMA: &str = "permlab/1";

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Counterexample: a permutation, table cell or series monomial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Check {
        Check { name: name.into(), passed: true, detail: None }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed: false, detail: Some(detail.into()) }
    }

    pub fn from_result(name: impl Into<String>, r: Result<(), String>) -> Check {
        match r {
            Ok(()) => Check::pass(name),
            Err(d) => Check::fail(name, d),
        }
    }

    pub fn from_identity(prefix: &str, r: &permlab::series::IdentityReport) -> Check {
        let name = if prefix.is_empty() { r.name.clone() } else { format!("{prefix}: {}", r.name) };
        match &r.offence {
            None => Check::pass(name),
            Some(o) => Check::fail(name, format!("residual through x^{} first nonzero at {o}", r.order)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub suite: String,
    pub passed: bool,
    pub wall_ms: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>, started: Instant) -> Report {
        Report {
            schema: SCHEMA,
            suite: suite.into(),
            passed: checks.iter().all(|c| c.passed),
            wall_ms: started.elapsed().as_millis() as u64,
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Tsv => {
                let mut out = String::new();
                for c in &self.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    match &c.detail {
                        Some(d) => writeln!(out, "{status}\t{}\t{d}", c.name),
                        None => writeln!(out, "{status}\t{}", c.name),
                    }
                    .unwrap();
                }
                let failed = self.failures().count();
                writeln!(out, "# {}: {} checks, {} failed, {} ms", self.suite, self.checks.len(), failed, self.wall_ms)
                    .unwrap();
                out
            }
        }
    }
}
