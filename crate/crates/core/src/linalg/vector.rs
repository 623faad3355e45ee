use std::collections::btree_map;
use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Sparse vector over basis indices; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<S>(BTreeMap<usize, S>);

impl<S> Default for Vector<S> {
    fn default() -> Self {
        Vector(BTreeMap::new())
    }
}

impl<S: Scalar> Vector<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, S::one())
    }

    pub fn term(i: usize, c: S) -> Self {
        let mut v = Self::zero();
        v.add_term(i, c);
        v
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, S)>) -> Self {
        let mut v = Self::zero();
        for (i, c) in pairs {
            v.add_term(i, c);
        }
        v
    }

    pub fn from_dense(entries: &[S]) -> Self {
        Self::from_pairs(entries.iter().cloned().enumerate())
    }

    pub fn to_dense(&self, dim: usize) -> Vec<S> {
        let mut out = vec![S::zero(); dim];
        for (&i, c) in &self.0 {
            out[i] = c.clone();
        }
        out
    }

    pub fn get(&self, i: usize) -> S {
        self.0.get(&i).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeff(&self, i: usize) -> Option<&S> {
        self.0.get(&i)
    }

    pub fn add_term(&mut self, i: usize, c: S) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(i) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
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
        for (&i, x) in &other.0 {
            self.add_term(i, x.clone() * c.clone());
        }
    }

    pub fn add(&mut self, other: &Self) {
        for (&i, x) in &other.0 {
            self.add_term(i, x.clone());
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Vector(self.0.iter().map(|(&i, x)| (i, x.clone() * c.clone())).collect())
    }

    pub fn negated(&self) -> Self {
        Vector(self.0.iter().map(|(&i, x)| (i, -x.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &S)> + '_ {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn leading(&self) -> Option<(usize, &S)> {
        self.0.iter().next().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn dot(&self, other: &Self) -> S {
        let (small, big) = if self.nnz() <= other.nnz() { (self, other) } else { (other, self) };
        let mut acc = S::zero();
        for (i, x) in small.iter() {
            if let Some(y) = big.coeff(i) {
                acc += x.clone() * y.clone();
            }
        }
        acc
    }

    /// Reindexes through `f`; entries mapped to `None` are dropped.
    pub fn remap(&self, mut f: impl FnMut(usize) -> Option<usize>) -> Self {
        let mut out = Self::zero();
        for (i, c) in self.iter() {
            if let Some(j) = f(i) {
                out.add_term(j, c.clone());
            }
        }
        out
    }
}

impl<S: Scalar> FromIterator<(usize, S)> for Vector<S> {
    fn from_iter<T: IntoIterator<Item = (usize, S)>>(iter: T) -> Self {
        Self::from_pairs(iter)
    }
}

impl<S> IntoIterator for Vector<S> {
    type Item = (usize, S);
    type IntoIter = btree_map::IntoIter<usize, S>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use num_traits::One;

    #[test]
    fn cancellation_removes_entries() {
        let mut v: Vector<Q> = Vector::basis(3);
        v.add_term(3, -Q::one());
        assert!(v.is_zero());
    }

    #[test]
    fn dot_and_scale() {
        let a: Vector<Q> = Vector::from_dense(&[Q::from_integer(1.into()), Q::from_integer(2.into())]);
        let b = a.scaled(&Q::from_integer(3.into()));
        assert_eq!(a.dot(&b), Q::from_integer(15.into()));
    }
}
