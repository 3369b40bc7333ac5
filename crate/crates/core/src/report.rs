//! Reports produced by the quantum-mechanics pipelines.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::identities::{canonical, Status};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<PipelineWitness>,
}

/// Replays a pipeline check: rerun with `config`, then pick the report with the same
/// `check` and `params`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineWitness {
    pub config: BTreeMap<String, String>,
    pub check: String,
    pub params: BTreeMap<String, String>,
}

impl LabReport {
    pub fn new(check: &str, params: &[(&str, String)], lhs: String, rhs: String, pass: bool) -> Self {
        Self {
            check: check.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            lhs: canonical(lhs),
            rhs: canonical(rhs),
            pass,
            status: if pass { Status::Pass } else { Status::Fail },
            detail: None,
            witness: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn inconclusive(mut self) -> Self {
        self.status = Status::Inconclusive;
        self
    }
}

pub(crate) fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    format!("[{}]", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}
