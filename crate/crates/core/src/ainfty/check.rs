use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::linalg::Vector;
use crate::scalar::Scalar;
use crate::space::BigradedSpace;

/// Outcome of one family of relations (or one structural condition).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub arity: Option<usize>,
    /// Number of elementary terms expanded.
    pub terms: usize,
    pub passed: bool,
    pub witness: Option<Witness>,
}

/// First violating input (in canonical order) and its nonzero residual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub residual: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub entity: String,
    pub arity_bound: usize,
    pub checks: Vec<CheckItem>,
    pub passed: bool,
}

impl CheckReport {
    pub fn new(entity: impl Into<String>, arity_bound: usize) -> Self {
        CheckReport { entity: entity.into(), arity_bound, checks: Vec::new(), passed: true }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.passed &= item.passed;
        self.checks.push(item);
    }

    pub fn extend(&mut self, other: CheckReport) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// One-line summary.
    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => format!("{}: PASS ({} checks to arity {})", self.entity, self.checks.len(), self.arity_bound),
            Some(f) => format!(
                "{}: FAIL at {} {:?}",
                self.entity,
                f.name,
                f.witness.as_ref().map(|w| w.inputs.join(",")).unwrap_or_default()
            ),
        }
    }
}

pub(crate) fn render_vector<S: Scalar>(v: &Vector<S>, space: &BigradedSpace) -> Vec<(String, String)> {
    v.iter().map(|(i, c)| (space.name(i).to_string(), c.to_exact_string())).collect()
}

/// Residual accumulator for relations expanded term by term.
pub(crate) struct Residuals<K, S> {
    map: HashMap<K, Vector<S>>,
    pub terms: usize,
}

impl<K: Hash + Eq + Ord + Clone, S: Scalar> Residuals<K, S> {
    pub fn new() -> Self {
        Residuals { map: HashMap::new(), terms: 0 }
    }

    pub fn add(&mut self, key: K, value: &Vector<S>, c: S) {
        self.terms += 1;
        if value.is_zero() || c.is_zero() {
            return;
        }
        self.map.entry(key).or_default().add_scaled(value, &c);
    }

    /// Smallest key with a nonzero residual.
    pub fn first_failure(&self) -> Option<(&K, &Vector<S>)> {
        self.map.iter().filter(|(_, v)| !v.is_zero()).min_by(|a, b| a.0.cmp(b.0))
    }

    pub fn into_item(
        self,
        name: impl Into<String>,
        arity: Option<usize>,
        describe: impl Fn(&K, &Vector<S>) -> Witness,
    ) -> CheckItem {
        let witness = self.first_failure().map(|(k, v)| describe(k, v));
        CheckItem { name: name.into(), arity, terms: self.terms, passed: witness.is_none(), witness }
    }
}

pub(crate) fn simple_item(name: impl Into<String>, passed: bool, witness: Option<Witness>) -> CheckItem {
    CheckItem { name: name.into(), arity: None, terms: 1, passed, witness }
}
