use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i32,
    pub weight: i32,
}

/// A finite basis where each element carries a cohomological degree and a weight.
#[derive(Debug, Clone, Default)]
pub struct BigradedSpace {
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
}

impl PartialEq for BigradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl BigradedSpace {
    pub fn new(basis: Vec<BasisElement>) -> Result<Self> {
        let mut index = HashMap::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate basis name {:?}", b.name)));
            }
        }
        Ok(BigradedSpace { basis, index })
    }

    pub fn from_triples<N: Into<String>>(triples: impl IntoIterator<Item = (N, i32, i32)>) -> Result<Self> {
        Self::new(
            triples
                .into_iter()
                .map(|(name, degree, weight)| BasisElement { name: name.into(), degree, weight })
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn get(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn weight(&self, i: usize) -> i32 {
        self.basis[i].weight
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::Invalid(format!("unknown basis element {name:?}")))
    }

    /// Basis indices with the given bidegree, in basis order.
    pub fn indices_at(&self, degree: i32, weight: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree == degree && self.basis[i].weight == weight).collect()
    }

    pub fn indices_at_weight(&self, weight: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].weight == weight).collect()
    }

    /// Same elements, reordered by `perm` (new position `k` holds old element `perm[k]`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.dim() {
            return Err(Error::Dimension("permutation length".into()));
        }
        Self::new(perm.iter().map(|&i| self.basis[i].clone()).collect())
    }

    /// Copy with every weight multiplied by `factor`.
    pub fn reweighted(&self, factor: i32) -> Self {
        let basis = self.basis.iter().map(|b| BasisElement { weight: b.weight * factor, ..b.clone() }).collect();
        Self::new(basis).expect("names unchanged")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        assert!(BigradedSpace::from_triples([("a", 0, 0), ("a", 1, 0)]).is_err());
    }

    #[test]
    fn zero_space_allowed() {
        let z = BigradedSpace::zero();
        assert_eq!(z.dim(), 0);
        assert!(z.indices_at(0, 0).is_empty());
    }

    #[test]
    fn lookup() {
        let s = BigradedSpace::from_triples([("1", 0, 0), ("x", 0, 1), ("y", 1, 1)]).unwrap();
        assert_eq!(s.index_of("y"), Some(2));
        assert_eq!(s.indices_at(0, 1), vec![1]);
        assert_eq!(s.reweighted(-1).weight(2), -1);
    }
}
