use std::collections::{BTreeMap, HashMap};

use crate::linalg::Vector;
use crate::scalar::Scalar;

/// A sparse multilinear operation: basis tuple ↦ output vector. Absent keys are zero.
///
/// The meaning of each slot (which space its index refers to) is fixed by the owner.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiOp<S> {
    arity: usize,
    table: BTreeMap<Vec<usize>, Vector<S>>,
}

impl<S: Scalar> MultiOp<S> {
    pub fn new(arity: usize) -> Self {
        MultiOp { arity, table: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Adds `value` to the entry at `key`; entries that cancel are removed.
    pub fn add(&mut self, key: Vec<usize>, value: &Vector<S>) {
        assert_eq!(key.len(), self.arity, "key length does not match arity");
        if value.is_zero() {
            return;
        }
        match self.table.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add(value);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_term(&mut self, key: Vec<usize>, out: usize, c: S) {
        self.add(key, &Vector::term(out, c));
    }

    pub fn get(&self, key: &[usize]) -> Option<&Vector<S>> {
        self.table.get(key)
    }

    pub fn eval(&self, key: &[usize]) -> Vector<S> {
        self.table.get(key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector<S>)> + '_ {
        self.table.iter()
    }

    /// Multilinear extension to vector arguments.
    pub fn apply(&self, args: &[&Vector<S>]) -> Vector<S> {
        assert_eq!(args.len(), self.arity);
        let mut out = Vector::zero();
        if self.table.is_empty() || args.iter().any(|a| a.is_zero()) {
            return out;
        }
        let support: usize = args.iter().map(|a| a.nnz()).product();
        if support <= self.table.len() {
            let mut key = vec![0usize; self.arity];
            self.apply_rec(args, 0, &mut key, S::one(), &mut out);
        } else {
            for (key, val) in &self.table {
                let mut c = S::one();
                let mut hit = true;
                for (slot, &i) in key.iter().enumerate() {
                    match args[slot].coeff(i) {
                        Some(x) => c *= x.clone(),
                        None => {
                            hit = false;
                            break;
                        }
                    }
                }
                if hit {
                    out.add_scaled(val, &c);
                }
            }
        }
        out
    }

    fn apply_rec(&self, args: &[&Vector<S>], slot: usize, key: &mut Vec<usize>, c: S, out: &mut Vector<S>) {
        if slot == self.arity {
            if let Some(v) = self.table.get(key.as_slice()) {
                out.add_scaled(v, &c);
            }
            return;
        }
        for (i, x) in args[slot].iter() {
            key[slot] = i;
            self.apply_rec(args, slot + 1, key, c.clone() * x.clone(), out);
        }
    }

    /// Entries grouped by the basis element in `slot`.
    pub fn by_slot(&self, slot: usize) -> HashMap<usize, Vec<(&Vec<usize>, &Vector<S>)>> {
        let mut out: HashMap<usize, Vec<_>> = HashMap::new();
        for (k, v) in &self.table {
            out.entry(k[slot]).or_default().push((k, v));
        }
        out
    }

    /// For every output basis element, the entries whose value has a nonzero coefficient on it.
    pub fn by_output(&self) -> HashMap<usize, Vec<(&Vec<usize>, S)>> {
        let mut out: HashMap<usize, Vec<_>> = HashMap::new();
        for (k, v) in &self.table {
            for (i, c) in v.iter() {
                out.entry(i).or_default().push((k, c.clone()));
            }
        }
        out
    }

    /// Rewrites every entry: `f(key, value)` returns the new key and value.
    pub fn map_entries(
        &self,
        arity: usize,
        mut f: impl FnMut(&[usize], &Vector<S>) -> Option<(Vec<usize>, Vector<S>)>,
    ) -> Self {
        let mut out = MultiOp::new(arity);
        for (k, v) in &self.table {
            if let Some((nk, nv)) = f(k, v) {
                out.add(nk, &nv);
            }
        }
        out
    }

    pub fn scaled(&self, c: &S) -> Self {
        self.map_entries(self.arity, |k, v| Some((k.to_vec(), v.scaled(c))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn cancellation_removes_entry() {
        let mut op = MultiOp::<Q>::new(2);
        op.add_term(vec![0, 1], 2, q(3));
        op.add_term(vec![0, 1], 2, q(-3));
        assert!(op.is_empty());
    }

    #[test]
    fn multilinear_apply_both_paths() {
        let mut op = MultiOp::<Q>::new(2);
        op.add_term(vec![0, 0], 0, q(1));
        op.add_term(vec![1, 0], 1, q(2));
        op.add_term(vec![1, 1], 0, q(5));
        let a = Vector::from_dense(&[q(1), q(1)]);
        let b = Vector::basis(0);
        // (e0 + e1, e0) ↦ e0 + 2 e1
        assert_eq!(op.apply(&[&a, &b]), Vector::from_dense(&[q(1), q(2)]));
        let big = Vector::from_dense(&[q(1), q(1), q(1), q(1)]);
        assert_eq!(op.apply(&[&big, &big]), Vector::from_dense(&[q(6), q(2)]));
    }
}
