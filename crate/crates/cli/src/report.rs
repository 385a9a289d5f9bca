// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::io::to_json_string;

pub const REPORT_SCHEMA: &str = "commexp-report/1";

/// The statement a command checks and whether this run reproduced it.
#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub statement: String,
    pub reproduced: bool,
    pub details: Vec<String>,
}

impl Claim {
    pub fn new(statement: impl Into<String>) -> Self {
        Claim { statement: statement.into(), reproduced: true, details: Vec::new() }
    }

    /// Records one check; any failed check marks the claim as not reproduced.
    pub fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.details.push(format!("{}: {what}", if ok { "ok" } else { "FAILED" }));
        self.reproduced &= ok;
    }

    pub fn note(&mut self, what: impl Into<String>) {
        self.details.push(what.into());
    }
}

/// Everything a subcommand produces before the report envelope is added.
pub struct Outcome {
    pub inputs: BTreeMap<String, String>,
    pub tolerances: BTreeMap<String, f64>,
    pub payload: Value,
    pub claim: Claim,
}

#[derive(Serialize)]
pub struct ReportFile {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub input_digests: BTreeMap<String, String>,
    pub tolerances: BTreeMap<String, f64>,
    pub payload: Value,
    pub claim: Claim,
    pub wall_clock_seconds: f64,
}

impl ReportFile {
    pub fn new(command: Vec<String>, outcome: Outcome, wall_clock_seconds: f64) -> Self {
        ReportFile {
            schema: REPORT_SCHEMA,
            command,
            input_digests: outcome.inputs,
            tolerances: outcome.tolerances,
            payload: outcome.payload,
            claim: outcome.claim,
            wall_clock_seconds,
        }
    }

    pub fn to_json(&self) -> String {
        to_json_string(&serde_json::to_value(self).expect("reports serialize"))
    }
}
