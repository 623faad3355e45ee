//! Named checks and the certificate record shared by every pipeline.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub statement: String,
    pub bound: String,
    pub passed: bool,
    /// The computed value, or a witness when the check fails.
    pub value: String,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        statement: impl Into<String>,
        bound: impl Into<String>,
        passed: bool,
        value: impl Into<String>,
    ) -> Self {
        Check { name: name.into(), statement: statement.into(), bound: bound.into(), passed, value: value.into() }
    }
}

/// One `(degree, weight) → dim` entry of a bigraded table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimCell {
    pub degree: i32,
    pub weight: i32,
    pub dim: usize,
}

/// Dimensions per `(degree, weight)` plus the checks made while computing them.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BigradedReport {
    pub dims: Vec<DimCell>,
    pub checks: Vec<Check>,
}

impl BigradedReport {
    /// Builds the table from a map, dropping zero cells.
    pub fn from_map(map: &BTreeMap<(i32, i32), usize>, checks: Vec<Check>) -> Self {
        let dims = map
            .iter()
            .filter(|(_, &n)| n > 0)
            .map(|(&(degree, weight), &dim)| DimCell { degree, weight, dim })
            .collect();
        BigradedReport { dims, checks }
    }

    pub fn dim(&self, degree: i32, weight: i32) -> usize {
        self.dims.iter().find(|c| c.degree == degree && c.weight == weight).map_or(0, |c| c.dim)
    }

    pub fn at_weight(&self, weight: i32) -> Vec<DimCell> {
        self.dims.iter().filter(|c| c.weight == weight).copied().collect()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// The record a pipeline emits. `verdict` is true iff every check passed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub pipeline: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub verdict: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, serde_json::Value>,
}

impl Certificate {
    pub fn new(pipeline: impl Into<String>, parameters: BTreeMap<String, String>) -> Self {
        Certificate {
            schema_version: SCHEMA_VERSION,
            pipeline: pipeline.into(),
            parameters,
            checks: Vec::new(),
            verdict: true,
            data: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.verdict &= check.passed;
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn attach(&mut self, key: impl Into<String>, value: serde_json::Value) {
        self.data.insert(key.into(), value);
    }

    /// Recomputes the verdict from the checks; false if the stored one disagrees.
    pub fn is_consistent(&self) -> bool {
        self.verdict == self.checks.iter().all(|c| c.passed)
    }
}
