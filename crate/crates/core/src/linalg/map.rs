use std::sync::Arc;

use super::{RowReducer, Vector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::space::BigradedSpace;

/// A homogeneous linear map stored column by column: `columns[j]` is the
/// image of source basis element `j`.
#[derive(Debug, Clone)]
pub struct LinearMap<S> {
    source: Arc<BigradedSpace>,
    target: Arc<BigradedSpace>,
    columns: Vec<Vector<S>>,
    bidegree: (i32, i32),
}

impl<S: Scalar> LinearMap<S> {
    pub fn new(
        source: Arc<BigradedSpace>,
        target: Arc<BigradedSpace>,
        columns: Vec<Vector<S>>,
        bidegree: (i32, i32),
    ) -> Result<Self> {
        if columns.len() != source.dim() {
            return Err(Error::Dimension(format!(
                "{} columns for a source of dimension {}",
                columns.len(),
                source.dim()
            )));
        }
        for (j, col) in columns.iter().enumerate() {
            for (i, _) in col.iter() {
                if i >= target.dim() {
                    return Err(Error::Dimension(format!("row index {i} outside target")));
                }
                let (sd, sw) = (source.degree(j), source.weight(j));
                let (td, tw) = (target.degree(i), target.weight(i));
                if (td - sd, tw - sw) != bidegree {
                    return Err(Error::Invalid(format!(
                        "entry {}→{} has bidegree {:?}, expected {:?}",
                        source.name(j),
                        target.name(i),
                        (td - sd, tw - sw),
                        bidegree
                    )));
                }
            }
        }
        Ok(LinearMap { source, target, columns, bidegree })
    }

    pub fn from_triplets(
        source: Arc<BigradedSpace>,
        target: Arc<BigradedSpace>,
        triplets: impl IntoIterator<Item = (usize, usize, S)>,
        bidegree: (i32, i32),
    ) -> Result<Self> {
        let mut columns = vec![Vector::zero(); source.dim()];
        for (row, col, c) in triplets {
            if col >= source.dim() {
                return Err(Error::Dimension(format!("column index {col} outside source")));
            }
            columns[col].add_term(row, c);
        }
        Self::new(source, target, columns, bidegree)
    }

    pub fn identity(space: Arc<BigradedSpace>) -> Self {
        let columns = (0..space.dim()).map(Vector::basis).collect();
        LinearMap { source: space.clone(), target: space, columns, bidegree: (0, 0) }
    }

    pub fn zero(source: Arc<BigradedSpace>, target: Arc<BigradedSpace>, bidegree: (i32, i32)) -> Self {
        let columns = vec![Vector::zero(); source.dim()];
        LinearMap { source, target, columns, bidegree }
    }

    pub fn source(&self) -> &Arc<BigradedSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BigradedSpace> {
        &self.target
    }

    pub fn bidegree(&self) -> (i32, i32) {
        self.bidegree
    }

    pub fn columns(&self) -> &[Vector<S>] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &Vector<S> {
        &self.columns[j]
    }

    pub fn entry(&self, row: usize, col: usize) -> S {
        self.columns[col].get(row)
    }

    pub fn apply(&self, v: &Vector<S>) -> Vector<S> {
        let mut out = Vector::zero();
        for (j, c) in v.iter() {
            out.add_scaled(&self.columns[j], c);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap<S>) -> Result<LinearMap<S>> {
        if other.target.as_ref() != self.source.as_ref() {
            return Err(Error::Dimension("composition of non-matching maps".into()));
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        Ok(LinearMap {
            source: other.source.clone(),
            target: self.target.clone(),
            columns,
            bidegree: (self.bidegree.0 + other.bidegree.0, self.bidegree.1 + other.bidegree.1),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vector::is_zero)
    }

    /// Rows as sparse vectors over the source basis.
    pub fn rows(&self) -> Vec<Vector<S>> {
        let mut rows = vec![Vector::zero(); self.target.dim()];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[i].add_term(j, c.clone());
            }
        }
        rows
    }

    pub fn rank(&self) -> usize {
        let mut r = RowReducer::new(false);
        for col in &self.columns {
            r.insert(col.clone(), S::zero());
        }
        r.rank()
    }

    pub fn kernel(&self) -> Vec<Vector<S>> {
        let mut r = RowReducer::new(false);
        for row in self.rows() {
            r.insert(row, S::zero());
        }
        r.kernel_basis(self.source.dim())
    }
}

/// Result of [`solve_linear_system`]: exactly one of a solution or a witness.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolution<S> {
    /// `x` with `A·x = b`.
    Solution(Vector<S>),
    /// `y` with `yᵀA = 0` and `yᵀb ≠ 0`.
    Inconsistent(Vector<S>),
}

/// Solves `rows · x = rhs` where `rows[i]` is equation `i` over `ncols` unknowns.
pub fn solve_rows<S: Scalar>(ncols: usize, rows: &[Vector<S>], rhs: &[S]) -> Result<LinearSolution<S>> {
    if rows.len() != rhs.len() {
        return Err(Error::Dimension(format!("{} equations but {} right-hand sides", rows.len(), rhs.len())));
    }
    if let Some(bad) = rows.iter().filter_map(|r| r.max_index()).find(|&c| c >= ncols) {
        return Err(Error::Dimension(format!("unknown {bad} outside {ncols} columns")));
    }
    let mut fast = RowReducer::new(false);
    let mut consistent = true;
    for (row, b) in rows.iter().zip(rhs) {
        if let super::Inserted::Inconsistent(_) = fast.insert(row.clone(), b.clone()) {
            consistent = false;
            break;
        }
    }
    if consistent {
        return Ok(LinearSolution::Solution(fast.particular_solution()));
    }
    let mut tracked = RowReducer::new(true);
    for (row, b) in rows.iter().zip(rhs) {
        if let super::Inserted::Inconsistent(y) = tracked.insert(row.clone(), b.clone()) {
            return Ok(LinearSolution::Inconsistent(y));
        }
    }
    unreachable!("tracked elimination agrees with untracked elimination")
}

pub fn solve_linear_system<S: Scalar>(a: &LinearMap<S>, b: &Vector<S>) -> Result<LinearSolution<S>> {
    if let Some(i) = b.max_index() {
        if i >= a.target().dim() {
            return Err(Error::Dimension(format!("right-hand side index {i} outside target")));
        }
    }
    let rhs = b.to_dense(a.target().dim());
    solve_rows(a.source().dim(), &a.rows(), &rhs)
}

/// Σ (−1)^degree · diagonal entry of a bidegree-(0,0) endomorphism.
pub fn supertrace<S: Scalar>(f: &LinearMap<S>) -> Result<S> {
    if f.source().as_ref() != f.target().as_ref() {
        return Err(Error::Invalid("supertrace of a map that is not an endomorphism".into()));
    }
    if f.bidegree() != (0, 0) {
        return Err(Error::Invalid(format!("supertrace needs bidegree (0,0), got {:?}", f.bidegree())));
    }
    let space = f.source();
    let mut acc = S::zero();
    for i in 0..space.dim() {
        let d = f.entry(i, i);
        if space.degree(i).rem_euclid(2) == 1 {
            acc -= d;
        } else {
            acc += d;
        }
    }
    Ok(acc)
}
