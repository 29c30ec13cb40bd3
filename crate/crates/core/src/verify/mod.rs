//! End-to-end pipelines and the reports they produce.
//!
//! A report is a list of checks, each with a certificate (integer identities,
//! normal forms, membership witnesses) or an explicit `INCONCLUSIVE`. The
//! overall verdict is decided by the checks marked required.

mod pipelines;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub use pipelines::{verify_face_localization, verify_no_ulrich, verify_ulrich_equivalence};

/// Version of the JSON layout.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckVerdict {
    Holds,
    Fails,
    Inconclusive,
    /// Not computed: follows from the other checks via a known equivalence.
    DeducedHolds,
    DeducedFails,
    /// Out of range for this input.
    Unavailable,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub claim: String,
    /// Short tag naming the statement being checked.
    pub anchor: String,
    pub verdict: CheckVerdict,
    pub required: bool,
    pub certificate: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub pipeline: String,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub verdict: String,
    pub field: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subreports: Vec<VerificationReport>,
}

impl VerificationReport {
    pub fn new(pipeline: &str, field: &crate::algebra::Field) -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA,
            pipeline: pipeline.into(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            verdict: String::new(),
            field: field.tag(),
            subreports: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn push(
        &mut self,
        claim: &str,
        anchor: &str,
        verdict: CheckVerdict,
        required: bool,
        certificate: Value,
    ) -> CheckVerdict {
        self.checks.push(Check {
            claim: claim.into(),
            anchor: anchor.into(),
            verdict,
            required,
            certificate,
        });
        verdict
    }

    pub fn check(&self, anchor: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.anchor == anchor)
    }

    /// Conjunction of the required checks: `Some(true)` when all hold,
    /// `Some(false)` when one fails, `None` when one is inconclusive.
    pub fn required_outcome(&self) -> Option<bool> {
        let mut inconclusive = false;
        for c in self.checks.iter().filter(|c| c.required) {
            match c.verdict {
                CheckVerdict::Fails | CheckVerdict::DeducedFails => return Some(false),
                CheckVerdict::Inconclusive | CheckVerdict::Unavailable => inconclusive = true,
                _ => {}
            }
        }
        (!inconclusive).then_some(true)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("pipeline {} (field {})\n", self.pipeline, self.field);
        for (k, v) in &self.inputs {
            out += &format!("  input {k} = {v}\n");
        }
        for c in &self.checks {
            let verdict = serde_json::to_value(c.verdict).expect("verdict serializes");
            out += &format!(
                "  [{}] {}{}\n",
                verdict.as_str().unwrap_or("?"),
                c.claim,
                if c.required { "" } else { " (informational)" }
            );
        }
        for s in &self.subreports {
            for line in s.to_text().lines() {
                out += &format!("  | {line}\n");
            }
        }
        out += &format!("verdict: {}\n", self.verdict);
        out
    }
}

pub fn holds(b: bool) -> CheckVerdict {
    if b {
        CheckVerdict::Holds
    } else {
        CheckVerdict::Fails
    }
}
