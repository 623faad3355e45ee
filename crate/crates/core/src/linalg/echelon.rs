use std::collections::BTreeMap;

use super::Vector;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
struct Row<S> {
    coeffs: Vector<S>,
    rhs: S,
    combo: Vector<S>,
}

/// Outcome of inserting one row into a [`RowReducer`].
#[derive(Debug, Clone, PartialEq)]
pub enum Inserted<S> {
    /// The row became a new pivot row at this column.
    Pivot(usize),
    /// The row reduced to `0 = 0`.
    Redundant,
    /// The row reduced to `0 = c` with `c ≠ 0`; carries the combination of
    /// original rows that produced it (empty unless tracking is enabled).
    Inconsistent(Vector<S>),
}

/// Incremental forward elimination over an exact field.
///
/// Rows are reduced against existing pivots on their leading column, in
/// increasing column order; pivots are normalized to one. The resulting
/// echelon form depends only on the insertion order.
#[derive(Debug, Clone)]
pub struct RowReducer<S> {
    pivots: BTreeMap<usize, Row<S>>,
    track: bool,
    inserted: usize,
}

impl<S: Scalar> Default for RowReducer<S> {
    fn default() -> Self {
        Self::new(false)
    }
}

impl<S: Scalar> RowReducer<S> {
    pub fn new(track: bool) -> Self {
        RowReducer { pivots: BTreeMap::new(), track, inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    /// Reduces `v` against the pivots without inserting it.
    pub fn reduce(&self, v: &Vector<S>) -> Vector<S> {
        let mut row = Row { coeffs: v.clone(), rhs: S::zero(), combo: Vector::zero() };
        self.reduce_row(&mut row, false);
        row.coeffs
    }

    /// True when `v` lies in the row span.
    pub fn contains(&self, v: &Vector<S>) -> bool {
        self.reduce(v).is_zero()
    }

    fn reduce_row(&self, row: &mut Row<S>, track: bool) {
        // Walk columns in increasing order, eliminating every pivot column.
        let mut cursor = 0usize;
        loop {
            let next = row.coeffs.iter().find(|&(c, _)| c >= cursor && self.pivots.contains_key(&c));
            let Some((col, coef)) = next else { break };
            let factor = coef.clone();
            let piv = &self.pivots[&col];
            let neg = -factor;
            row.coeffs.add_scaled(&piv.coeffs, &neg);
            row.rhs += neg.clone() * piv.rhs.clone();
            if track {
                row.combo.add_scaled(&piv.combo, &neg);
            }
            cursor = col + 1;
        }
    }

    pub fn insert(&mut self, coeffs: Vector<S>, rhs: S) -> Inserted<S> {
        let origin = self.inserted;
        self.inserted += 1;
        let combo = if self.track { Vector::basis(origin) } else { Vector::zero() };
        let mut row = Row { coeffs, rhs, combo };
        self.reduce_row(&mut row, self.track);
        match row.coeffs.leading() {
            None => {
                if row.rhs.is_zero() {
                    Inserted::Redundant
                } else {
                    Inserted::Inconsistent(row.combo)
                }
            }
            Some((col, lead)) => {
                let inv = S::one() / lead.clone();
                row.coeffs = row.coeffs.scaled(&inv);
                row.rhs = row.rhs * inv.clone();
                if self.track {
                    row.combo = row.combo.scaled(&inv);
                }
                self.pivots.insert(col, row);
                Inserted::Pivot(col)
            }
        }
    }

    /// Back substitution with every free variable set to zero.
    pub fn particular_solution(&self) -> Vector<S> {
        let mut x: Vector<S> = Vector::zero();
        for (&col, row) in self.pivots.iter().rev() {
            let mut val = row.rhs.clone();
            for (c, a) in row.coeffs.iter() {
                if c != col {
                    if let Some(xc) = x.coeff(c) {
                        val -= a.clone() * xc.clone();
                    }
                }
            }
            x.add_term(col, val);
        }
        x
    }

    /// Basis of the null space of the inserted rows (ignoring right-hand sides),
    /// one vector per free column below `ncols`, in increasing column order.
    pub fn kernel_basis(&self, ncols: usize) -> Vec<Vector<S>> {
        let mut out = Vec::new();
        for free in 0..ncols {
            if self.pivots.contains_key(&free) {
                continue;
            }
            let mut x: Vector<S> = Vector::basis(free);
            for (&col, row) in self.pivots.range(..free).rev() {
                let mut val = S::zero();
                for (c, a) in row.coeffs.iter() {
                    if c != col {
                        if let Some(xc) = x.coeff(c) {
                            val -= a.clone() * xc.clone();
                        }
                    }
                }
                x.add_term(col, val);
            }
            out.push(x);
        }
        out
    }
}
