//! Tallies of checked identities, with failures and skipped cases kept.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::weights::{join, BranchingPair, IndexSet};

/// The inputs of one `(p, λ, μ, i, j, A)` case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRef {
    pub p: u64,
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub i: usize,
    pub j: usize,
    #[serde(rename = "A")]
    pub a: Vec<usize>,
}

impl CaseRef {
    pub fn new(pair: &BranchingPair, i: usize, j: usize, a: &IndexSet) -> Self {
        CaseRef {
            p: pair.p(),
            lambda: pair.lambda().to_vec(),
            mu: pair.mu().to_vec(),
            i,
            j,
            a: a.iter().copied().collect(),
        }
    }
}

impl fmt::Display for CaseRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} lambda=({}) mu=({}) i={} j={} A={{{}}}",
            self.p,
            join(&self.lambda),
            join(&self.mu),
            self.i,
            self.j,
            join(&self.a)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub case: Option<CaseRef>,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.case {
            Some(c) => write!(f, "{}: {} at {c}", self.check, self.detail),
            None => write!(f, "{}: {}", self.check, self.detail),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub skipped: Vec<String>,
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.skipped.extend(other.skipped);
    }

    pub fn record(&mut self, ok: bool, check: &str, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure {
                check: check.to_string(),
                detail: detail(),
                case: None,
            });
        }
    }

    pub fn record_case(
        &mut self,
        ok: bool,
        check: &str,
        case: impl FnOnce() -> CaseRef,
        detail: impl FnOnce() -> String,
    ) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure {
                check: check.to_string(),
                detail: detail(),
                case: Some(case()),
            });
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} checked, {} failed, {} skipped",
            self.checked,
            self.failures.len(),
            self.skipped.len()
        )
    }
}
