use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::covering::CoverRecord;
use crate::structure::FanCertificate;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub case: String,
    pub witnesses: Vec<String>,
    pub counts: BTreeMap<String, i64>,
}

/// What an extraction did, in order. Covers built along the way are kept for
/// inspection but left out of the JSON form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionTrace {
    pub steps: Vec<TraceStep>,
    /// Label of the construction that produced the certificate.
    pub branch: Option<String>,
    pub outcome: Option<FanCertificate>,
    #[serde(skip)]
    pub covers: Vec<CoverRecord>,
}

impl ExtractionTrace {
    pub fn push(&mut self, case: &str, witnesses: &[&str], counts: &[(&str, i64)]) {
        self.steps.push(TraceStep {
            case: case.to_string(),
            witnesses: witnesses.iter().map(|w| w.to_string()).collect(),
            counts: counts.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        });
    }

    /// Case labels of all steps, in order.
    pub fn cases(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().map(|s| s.case.as_str())
    }
}
