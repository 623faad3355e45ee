//! Default bounds for every pipeline, in one place. Certificates echo the values they used.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::solver::SolverConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Arity for A∞ relation checks of catalog algebras.
    pub check_arity: usize,
    /// Largest weight of Hochschild slices.
    pub hochschild_weight: usize,
    /// Length of the resolution of k over k[y]/y³.
    pub ext_truncation: usize,
    /// Weight cutoff of the free algebra C.
    pub c_bound: usize,
    /// Depth of periodic bimodule resolutions.
    pub periodic_depth: usize,
    pub weight_bound: usize,
    pub length_bound: usize,
    pub normalization: i64,
    pub solver_arity: usize,
    pub certify_arity: usize,
    pub section4_weight: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            check_arity: 8,
            hochschild_weight: 6,
            ext_truncation: 12,
            c_bound: 12,
            periodic_depth: 8,
            weight_bound: 12,
            length_bound: 8,
            normalization: 1,
            solver_arity: 6,
            certify_arity: 8,
            section4_weight: 4,
        }
    }
}

impl Config {
    pub fn solver(&self) -> SolverConfig {
        SolverConfig {
            weight_bound: self.weight_bound,
            length_bound: self.length_bound,
            normalization: self.normalization,
        }
    }

    /// Solver bounds for the glued algebra at `certify_arity`: the given bounds, raised to what
    /// that arity needs.
    pub fn certify_solver(&self) -> SolverConfig {
        let n = self.certify_arity;
        SolverConfig {
            weight_bound: self.weight_bound.max(2 * n.saturating_sub(1)),
            length_bound: self.length_bound.max(n),
            normalization: self.normalization,
        }
    }

    /// Every field as a `name → value` string map.
    pub fn to_params(&self) -> BTreeMap<String, String> {
        match serde_json::to_value(self) {
            Ok(serde_json::Value::Object(m)) => m.into_iter().map(|(k, v)| (k, v.to_string())).collect(),
            _ => BTreeMap::new(),
        }
    }
}
