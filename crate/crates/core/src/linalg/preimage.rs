use std::collections::BTreeMap;

use super::Vector;
use crate::scalar::Scalar;

/// Column echelon form of a set of images `d(e_j)`, tracking the combination of `e_j`s behind
/// each pivot, so that `solve(v)` returns `x` with `d(x) = v`.
#[derive(Debug, Clone, Default)]
pub struct PreimageSolver<S> {
    pivots: BTreeMap<usize, (Vector<S>, Vector<S>)>,
}

impl<S: Scalar> PreimageSolver<S> {
    pub fn new() -> Self {
        PreimageSolver { pivots: BTreeMap::new() }
    }

    /// Builds from `(j, d(e_j))` pairs; earlier columns win pivots.
    pub fn from_columns<'a>(cols: impl IntoIterator<Item = (usize, &'a Vector<S>)>) -> Self {
        let mut s = Self::new();
        for (j, image) in cols {
            s.insert(j, image.clone());
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn insert(&mut self, j: usize, image: Vector<S>) -> bool {
        let (rest, combo) = self.reduce(image, Vector::basis(j));
        match rest.leading() {
            Some((lead, c)) => {
                let inv = S::one() / c.clone();
                self.pivots.insert(lead, (rest.scaled(&inv), combo.scaled(&inv)));
                true
            }
            None => false,
        }
    }

    fn reduce(&self, mut v: Vector<S>, mut combo: Vector<S>) -> (Vector<S>, Vector<S>) {
        let mut floor = 0;
        loop {
            let next = v.iter().find(|&(i, _)| i >= floor && self.pivots.contains_key(&i)).map(|(i, c)| (i, c.clone()));
            let Some((i, c)) = next else { break };
            let (p, pc) = &self.pivots[&i];
            v.add_scaled(p, &-c.clone());
            combo.add_scaled(pc, &-c);
            floor = i + 1;
        }
        (v, combo)
    }

    /// `x` with `d(x) = v`, or the part of `v` outside the image.
    pub fn solve(&self, v: &Vector<S>) -> std::result::Result<Vector<S>, Vector<S>> {
        let (rest, combo) = self.reduce(v.clone(), Vector::zero());
        if rest.is_zero() {
            Ok(combo.negated())
        } else {
            Err(rest)
        }
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
    fn preimage_round_trip() {
        // d(e0) = f0 + f1, d(e1) = f1, d(e2) = f0 + 2 f1 (dependent)
        let cols = [
            Vector::from_pairs([(0, q(1)), (1, q(1))]),
            Vector::from_pairs([(1, q(1))]),
            Vector::from_pairs([(0, q(1)), (1, q(2))]),
        ];
        let s = PreimageSolver::from_columns(cols.iter().enumerate());
        assert_eq!(s.rank(), 2);
        let v = Vector::from_pairs([(0, q(3)), (1, q(-1))]);
        let x = s.solve(&v).unwrap();
        let mut dx = Vector::zero();
        for (j, c) in x.iter() {
            dx.add_scaled(&cols[j], c);
        }
        assert_eq!(dx, v);
        assert!(s.solve(&Vector::basis(7)).is_err());
    }
}
