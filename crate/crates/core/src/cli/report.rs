use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// The check could not be decided at the requested precision.
    #[serde(rename = "PRECISION-LIMITED")]
    PrecisionLimited,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::PrecisionLimited => "PRECISION-LIMITED",
        })
    }
}

/// One named check. `witness` is never empty for a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub witness: String,
}

/// Ordered verdicts of one command run. Serializes deterministically;
/// `timing_ms` is skipped unless set.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new<K: Into<String>>(command: &str, inputs: impl IntoIterator<Item = (K, Value)>) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: inputs.into_iter().map(|(k, v)| (k.into(), v)).collect(),
            verdicts: Vec::new(),
            timing_ms: None,
            seed: None,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, witness: impl Into<String>) {
        let witness = witness.into();
        let witness = if witness.is_empty() && status == Status::Fail { "no detail".to_string() } else { witness };
        self.verdicts.push(Verdict { name: name.into(), status, witness });
    }

    pub fn pass(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.push(name, Status::Pass, witness);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.push(name, Status::Fail, witness);
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl Into<String>) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, witness);
    }

    /// Records an error from a sub-check as a failure.
    pub fn error(&mut self, name: impl Into<String>, err: impl fmt::Display) {
        self.fail(name, format!("error: {err}"));
    }

    pub fn count(&self, status: Status) -> usize {
        self.verdicts.iter().filter(|v| v.status == status).count()
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_table(&self) -> String {
        let mut out = self.command.clone();
        for (k, v) in &self.inputs {
            out.push_str(&format!(" {k}={v}"));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!(" seed={seed}"));
        }
        out.push('\n');
        let width = self.verdicts.iter().map(|v| v.name.len()).max().unwrap_or(0);
        for v in &self.verdicts {
            out.push_str(&format!("  {:<17} {:<width$}  {}\n", v.status.to_string(), v.name, v.witness));
        }
        out.push_str(&format!(
            "{} PASS, {} FAIL, {} PRECISION-LIMITED",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::PrecisionLimited)
        ));
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!(" in {ms} ms"));
        }
        out.push('\n');
        out
    }
}
