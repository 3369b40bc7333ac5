//! Checkers for the Wronskian and Casoratian identities.
//!
//! Every checker works in exact arithmetic. Quotients are cleared by cross
//! multiplication and square roots by squaring, so `pass` means the two sides are
//! identical reduced objects.

mod ctx;
mod extra;
mod imag;
mod instance;
mod real;
mod runner;
mod sampler;
mod wronskian;

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use ctx::{shifted_product, Ctx, Fault, DEFAULT_BUDGET_BITS};
pub use extra::{classical_limit_errors, sum_formula_table};
pub use instance::{FnSpec, Instance};
pub use runner::{check, check_instance, replay, run_suite};
pub use sampler::{sample_instance, trial_rng, SamplerConfig};

pub mod checks {
    //! Direct entry points, one per identity.
    pub use super::extra::{
        check_classical_limit, check_eq1, check_eq2, check_eq3, check_signed_ratio, check_sum_formula, check_wro_id,
    };
    pub use super::imag::{
        check_cas_imag_corollary, check_cas_imag_gauge, check_cas_imag_nesting, check_cas_imag_one_reduction,
        check_cas_imag_quotient, check_cas_imag_theorem,
    };
    pub use super::real::{
        check_cas_real_corollary, check_cas_real_gauge, check_cas_real_nesting, check_cas_real_one_reduction,
        check_cas_real_quotient, check_cas_real_theorem,
    };
    pub use super::wronskian::{
        check_wronskian_corollary, check_wronskian_gauge, check_wronskian_nesting, check_wronskian_one_reduction,
        check_wronskian_quotient, check_wronskian_theorem,
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    WronskianQuotient,
    WronskianOneReduction,
    WronskianGauge,
    WronskianNesting,
    WronskianTheorem,
    WronskianCorollary,
    CasImagQuotient,
    CasImagOneReduction,
    CasImagGauge,
    CasImagNesting,
    CasImagTheorem,
    CasImagCorollary,
    CasRealQuotient,
    CasRealOneReduction,
    CasRealGauge,
    CasRealNesting,
    CasRealTheorem,
    CasRealCorollary,
    Eq1,
    Eq2,
    Eq3,
    WroId,
    CasRealSignedRatio,
    SumFormula,
    ClassicalLimit,
}

impl IdentityId {
    pub const ALL: [IdentityId; 25] = [
        Self::WronskianQuotient,
        Self::WronskianOneReduction,
        Self::WronskianGauge,
        Self::WronskianNesting,
        Self::WronskianTheorem,
        Self::WronskianCorollary,
        Self::CasImagQuotient,
        Self::CasImagOneReduction,
        Self::CasImagGauge,
        Self::CasImagNesting,
        Self::CasImagTheorem,
        Self::CasImagCorollary,
        Self::CasRealQuotient,
        Self::CasRealOneReduction,
        Self::CasRealGauge,
        Self::CasRealNesting,
        Self::CasRealTheorem,
        Self::CasRealCorollary,
        Self::Eq1,
        Self::Eq2,
        Self::Eq3,
        Self::WroId,
        Self::CasRealSignedRatio,
        Self::SumFormula,
        Self::ClassicalLimit,
    ];

    /// The eighteen lemma/proposition/theorem/corollary checkers.
    pub fn core() -> &'static [IdentityId] {
        &Self::ALL[..18]
    }

    pub fn name(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
    }

    pub fn parse(s: &str) -> Option<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string())).ok()
    }

    /// Family offset mixed into the master seed.
    pub fn offset(self) -> u64 {
        Self::ALL.iter().position(|&i| i == self).unwrap_or(0) as u64 + 1
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// Result of a single comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub note: Option<String>,
    /// Set when the comparison could not be decided (no admissible sample point).
    pub inconclusive: bool,
}

impl Outcome {
    pub fn compare<T: PartialEq + fmt::Display>(lhs: &T, rhs: &T) -> Self {
        Self { lhs: lhs.to_string(), rhs: rhs.to_string(), pass: lhs == rhs, note: None, inconclusive: false }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Combines several comparisons; the first one supplies `lhs`/`rhs`.
    pub fn all(parts: Vec<Outcome>) -> Self {
        let pass = parts.iter().all(|o| o.pass);
        let inconclusive = parts.iter().any(|o| o.inconclusive);
        let notes: Vec<String> = parts.iter().filter_map(|o| o.note.clone()).collect();
        let failing = parts.iter().position(|o| !o.pass).unwrap_or(0);
        let first = parts.into_iter().nth(failing).expect("at least one comparison");
        Self {
            lhs: first.lhs,
            rhs: first.rhs,
            pass,
            note: (!notes.is_empty()).then(|| notes.join("; ")),
            inconclusive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: usize,
    pub m: usize,
    pub degrees: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    pub seed: u64,
}

/// Everything needed to reproduce a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub identity: IdentityId,
    pub trial: u64,
    pub seed: u64,
    pub instance: Instance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub identity: IdentityId,
    pub trial: u64,
    pub params: Params,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

const MAX_EXPR_CHARS: usize = 2000;

/// Long expressions are replaced by a length and SHA-256 digest.
pub fn canonical(expr: String) -> String {
    if expr.len() <= MAX_EXPR_CHARS {
        return expr;
    }
    let digest = hex::encode(Sha256::digest(expr.as_bytes()));
    format!("sha256:{digest} ({} chars)", expr.len())
}
