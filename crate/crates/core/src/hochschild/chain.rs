use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A finite combination of Hochschild tuples `(a₀; a₁, …, aₙ)`, stored as basis indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain<S> {
    terms: BTreeMap<Vec<usize>, S>,
}

impl<S> Default for Chain<S> {
    fn default() -> Self {
        Chain { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> Chain<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(tuple: Vec<usize>, c: S) -> Self {
        let mut out = Self::zero();
        out.add_term(tuple, c);
        out
    }

    pub fn basis(tuple: Vec<usize>) -> Self {
        Self::term(tuple, S::one())
    }

    pub fn add_term(&mut self, tuple: Vec<usize>, c: S) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(tuple) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        if c.is_zero() {
            return;
        }
        for (t, x) in &other.terms {
            self.add_term(t.clone(), x.clone() * c.clone());
        }
    }

    pub fn add(&mut self, other: &Self) {
        self.add_scaled(other, &S::one());
    }

    pub fn sub(&mut self, other: &Self) {
        self.add_scaled(other, &-S::one());
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, tuple: &[usize]) -> S {
        self.terms.get(tuple).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &S)> + '_ {
        self.terms.iter()
    }

    /// Largest tail length `n` among the terms.
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|t| t.len() - 1).max().unwrap_or(0)
    }

    /// Terms whose tuple satisfies `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&[usize]) -> bool) -> Self {
        Chain { terms: self.terms.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (t.clone(), c.clone())).collect() }
    }
}

impl<S: Scalar> FromIterator<(Vec<usize>, S)> for Chain<S> {
    fn from_iter<I: IntoIterator<Item = (Vec<usize>, S)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (t, c) in iter {
            out.add_term(t, c);
        }
        out
    }
}
