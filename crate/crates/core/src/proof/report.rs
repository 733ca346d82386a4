use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

/// Version of the record layout written by [`VerificationReport::to_record`].
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Skipped,
    /// Precision or resource limits prevented a verdict.
    Indeterminate,
}

impl Status {
    /// Process exit code for a run ending in this status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified | Status::Skipped => 0,
            Status::Refuted => 1,
            Status::Indeterminate => 2,
        }
    }

    /// Status of a run made of several checks: any refutation wins, then
    /// any indeterminate verdict; all-skipped stays skipped.
    pub fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
        let mut combined = Status::Skipped;
        for s in statuses {
            combined = match (combined, s) {
                (Status::Refuted, _) | (_, Status::Refuted) => Status::Refuted,
                (Status::Indeterminate, _) | (_, Status::Indeterminate) => Status::Indeterminate,
                (Status::Verified, _) | (_, Status::Verified) => Status::Verified,
                _ => Status::Skipped,
            };
        }
        combined
    }
}

/// Outcome of one claim check.
///
/// `elapsed` is only serialized when set, so records are byte-identical
/// across runs unless timing is requested.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub claim_id: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl VerificationReport {
    pub fn new(claim_id: impl Into<String>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            claim_id: claim_id.into(),
            params: BTreeMap::new(),
            status: Status::Verified,
            witnesses: Vec::new(),
            counterexample: None,
            elapsed_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), to_value(value));
        self
    }

    pub fn witness(&mut self, value: impl Serialize) {
        self.witnesses.push(to_value(value));
    }

    /// Marks the report refuted. The first counterexample is kept.
    pub fn refute(&mut self, counterexample: impl Serialize) {
        self.status = Status::Refuted;
        if self.counterexample.is_none() {
            self.counterexample = Some(to_value(counterexample));
        }
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed_ms = Some(elapsed.as_secs_f64() * 1000.0);
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// One JSON object on a single line.
    pub fn to_record(&self) -> String {
        serde_json::to_string(self).expect("report fields are plain data")
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("report fields are plain data")
}
