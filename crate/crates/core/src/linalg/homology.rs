use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{Inserted, LinearMap, PreimageSolver, RowReducer, Vector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::space::BigradedSpace;

/// A finite cochain complex: one space per degree, `d_n: C^n → C^{n+1}` of bidegree (1, 0).
#[derive(Debug, Clone)]
pub struct ComplexSlice<S> {
    spaces: BTreeMap<i32, Arc<BigradedSpace>>,
    differentials: BTreeMap<i32, LinearMap<S>>,
}

impl<S: Scalar> ComplexSlice<S> {
    /// Builds the slice and verifies `d_{n+1} ∘ d_n = 0` exactly.
    ///
    /// Missing differentials are zero maps.
    pub fn new(spaces: BTreeMap<i32, Arc<BigradedSpace>>, differentials: BTreeMap<i32, LinearMap<S>>) -> Result<Self> {
        for (&n, d) in &differentials {
            if d.bidegree() != (1, 0) {
                return Err(Error::Invalid(format!("differential in degree {n} has bidegree {:?}", d.bidegree())));
            }
            let src = spaces.get(&n).ok_or_else(|| Error::Invalid(format!("no space in degree {n}")))?;
            let tgt = spaces.get(&(n + 1)).ok_or_else(|| Error::Invalid(format!("no space in degree {}", n + 1)))?;
            if d.source().as_ref() != src.as_ref() || d.target().as_ref() != tgt.as_ref() {
                return Err(Error::Dimension(format!("differential in degree {n} does not match spaces")));
            }
        }
        for (&n, d) in &differentials {
            if let Some(next) = differentials.get(&(n + 1)) {
                let dd = next.compose(d)?;
                if let Some((j, col)) = dd.columns().iter().enumerate().find(|(_, c)| !c.is_zero()) {
                    let (i, _) = col.leading().expect("nonzero column");
                    return Err(Error::NotAComplex(format!(
                        "d∘d({}) has a nonzero coefficient on {}",
                        d.source().name(j),
                        next.target().name(i)
                    )));
                }
            }
        }
        Ok(ComplexSlice { spaces, differentials })
    }

    /// Splits a bidegree-(1, 0) endomorphism of a bigraded space by degree.
    pub fn from_endomorphism(space: &BigradedSpace, d: &LinearMap<S>) -> Result<Self> {
        if d.source().as_ref() != space || d.target().as_ref() != space || d.bidegree() != (1, 0) {
            return Err(Error::Dimension("expected a bidegree-(1, 0) endomorphism".into()));
        }
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for i in 0..space.dim() {
            by_degree.entry(space.degree(i)).or_default().push(i);
        }
        let mut local: HashMap<usize, usize> = HashMap::new();
        let mut spaces = BTreeMap::new();
        for (&deg, idx) in &by_degree {
            for (k, &i) in idx.iter().enumerate() {
                local.insert(i, k);
            }
            let s = BigradedSpace::new(idx.iter().map(|&i| space.get(i).clone()).collect())?;
            spaces.insert(deg, Arc::new(s));
        }
        let mut differentials = BTreeMap::new();
        for (&deg, idx) in &by_degree {
            let Some(tgt) = spaces.get(&(deg + 1)) else { continue };
            let cols: Vec<Vector<S>> = idx.iter().map(|&i| d.column(i).remap(|r| local.get(&r).copied())).collect();
            differentials.insert(deg, LinearMap::new(spaces[&deg].clone(), tgt.clone(), cols, (1, 0))?);
        }
        Self::new(spaces, differentials)
    }

    pub fn spaces(&self) -> &BTreeMap<i32, Arc<BigradedSpace>> {
        &self.spaces
    }

    pub fn space(&self, n: i32) -> Option<&Arc<BigradedSpace>> {
        self.spaces.get(&n)
    }

    pub fn differential(&self, n: i32) -> Option<&LinearMap<S>> {
        self.differentials.get(&n)
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(|s| s.dim()).sum()
    }

    /// Applies `d_n` to a vector in degree `n` (zero when no differential is stored).
    pub fn apply_d(&self, n: i32, v: &Vector<S>) -> Vector<S> {
        match self.differentials.get(&n) {
            Some(d) => d.apply(v),
            None => Vector::zero(),
        }
    }

    fn boundary_reducer(&self, n: i32, weight: i32) -> RowReducer<S> {
        let mut red = RowReducer::new(false);
        if let (Some(d), Some(src)) = (self.differentials.get(&(n - 1)), self.spaces.get(&(n - 1))) {
            for j in 0..src.dim() {
                if src.weight(j) == weight {
                    red.insert(d.column(j).clone(), S::zero());
                }
            }
        }
        red
    }

    fn cycles(&self, n: i32, weight: i32) -> Vec<Vector<S>> {
        let space = &self.spaces[&n];
        let idx = space.indices_at_weight(weight);
        let Some(d) = self.differentials.get(&n) else {
            return idx.iter().map(|&i| Vector::basis(i)).collect();
        };
        // Restrict to the weight block: local column k ↔ global index idx[k].
        let mut rows: BTreeMap<usize, Vector<S>> = BTreeMap::new();
        for (k, &j) in idx.iter().enumerate() {
            for (i, c) in d.column(j).iter() {
                rows.entry(i).or_default().add_term(k, c.clone());
            }
        }
        let mut red = RowReducer::new(false);
        for row in rows.into_values() {
            red.insert(row, S::zero());
        }
        red.kernel_basis(idx.len()).into_iter().map(|v| v.remap(|k| Some(idx[k]))).collect()
    }

    /// Homology in every (degree, weight) cell, with cycle representatives.
    pub fn homology(&self) -> HomologyReport<S> {
        let mut report = HomologyReport { dims: BTreeMap::new(), representatives: BTreeMap::new() };
        for (&n, space) in &self.spaces {
            let mut weights: Vec<i32> = space.basis().iter().map(|b| b.weight).collect();
            weights.sort_unstable();
            weights.dedup();
            for w in weights {
                let mut red = self.boundary_reducer(n, w);
                let mut reps = Vec::new();
                for z in self.cycles(n, w) {
                    if let Inserted::Pivot(_) = red.insert(z.clone(), S::zero()) {
                        reps.push(z);
                    }
                }
                report.dims.insert((n, w), reps.len());
                report.representatives.insert((n, w), reps);
            }
        }
        report
    }

    /// Decomposes a cycle `z` in degree `n` as `Σ cᵢ·repᵢ + boundary`, returning the `cᵢ`.
    /// Fails if `z` is not a cycle.
    pub fn class_coordinates(&self, report: &HomologyReport<S>, n: i32, weight: i32, z: &Vector<S>) -> Result<Vec<S>> {
        if !self.apply_d(n, z).is_zero() {
            return Err(Error::Invalid(format!("vector in degree {n} is not a cycle")));
        }
        let reps = report.representatives.get(&(n, weight)).cloned().unwrap_or_default();
        let src = self.spaces.get(&(n - 1));
        let mut columns: Vec<Vector<S>> = reps.clone();
        if let (Some(d), Some(src)) = (self.differentials.get(&(n - 1)), src) {
            for j in 0..src.dim() {
                if src.weight(j) == weight {
                    columns.push(d.column(j).clone());
                }
            }
        }
        let mut rows: BTreeMap<usize, Vector<S>> = BTreeMap::new();
        for (k, col) in columns.iter().enumerate() {
            for (i, c) in col.iter() {
                rows.entry(i).or_default().add_term(k, c.clone());
            }
        }
        let mut eqs = Vec::new();
        let mut rhs = Vec::new();
        let mut keys: Vec<usize> = rows.keys().copied().collect();
        keys.extend(z.support());
        keys.sort_unstable();
        keys.dedup();
        for i in keys {
            eqs.push(rows.remove(&i).unwrap_or_default());
            rhs.push(z.get(i));
        }
        match super::solve_rows(columns.len(), &eqs, &rhs)? {
            super::LinearSolution::Solution(x) => Ok((0..reps.len()).map(|k| x.get(k)).collect()),
            super::LinearSolution::Inconsistent(_) => {
                Err(Error::Identity(format!("cycle in degree {n} weight {weight} not spanned by representatives")))
            }
        }
    }
}

/// Homology dimensions per (degree, weight) and chosen representatives.
#[derive(Debug, Clone, PartialEq)]
pub struct HomologyReport<S> {
    pub dims: BTreeMap<(i32, i32), usize>,
    pub representatives: BTreeMap<(i32, i32), Vec<Vector<S>>>,
}

impl<S: Scalar> HomologyReport<S> {
    pub fn dim(&self, degree: i32, weight: i32) -> usize {
        self.dims.get(&(degree, weight)).copied().unwrap_or(0)
    }

    /// Dimensions summed over weights, per degree.
    pub fn dims_by_degree(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (&(d, _), &n) in &self.dims {
            *out.entry(d).or_insert(0) += n;
        }
        out
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Re-verifies that each representative is a cycle and that the
    /// representatives are independent modulo boundaries.
    pub fn recheck(&self, slice: &ComplexSlice<S>) -> Result<()> {
        for (&(n, w), reps) in &self.representatives {
            let mut red = slice.boundary_reducer(n, w);
            for z in reps {
                if !slice.apply_d(n, z).is_zero() {
                    return Err(Error::Identity(format!("representative in ({n},{w}) is not a cycle")));
                }
                if !matches!(red.insert(z.clone(), S::zero()), Inserted::Pivot(_)) {
                    return Err(Error::Identity(format!("representatives in ({n},{w}) are dependent mod boundaries")));
                }
            }
        }
        Ok(())
    }
}

/// Homology of a bigraded space with a bidegree-(1, 0) endomorphism, keeping the map between
/// global indices and the per-degree local indices of the slice.
#[derive(Debug, Clone)]
pub struct GradedHomology<S> {
    space: Arc<BigradedSpace>,
    slice: ComplexSlice<S>,
    report: HomologyReport<S>,
    by_degree: BTreeMap<i32, Vec<usize>>,
    d: LinearMap<S>,
    /// Per cell: boundaries `d(e_j)` under id `j`, then representative `k` under id `dim + k`.
    decompose: BTreeMap<(i32, i32), PreimageSolver<S>>,
}

impl<S: Scalar> GradedHomology<S> {
    pub fn new(space: Arc<BigradedSpace>, d: &LinearMap<S>) -> Result<Self> {
        let slice = ComplexSlice::from_endomorphism(&space, d)?;
        let report = slice.homology();
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for i in 0..space.dim() {
            by_degree.entry(space.degree(i)).or_default().push(i);
        }
        let n = space.dim();
        let mut decompose = BTreeMap::new();
        for (&(deg, w), reps) in &report.representatives {
            let mut p = PreimageSolver::new();
            for j in (0..n).filter(|&j| space.degree(j) == deg - 1 && space.weight(j) == w) {
                p.insert(j, d.column(j).clone());
            }
            let idx = &by_degree[&deg];
            for (k, r) in reps.iter().enumerate() {
                p.insert(n + k, r.remap(|i| Some(idx[i])));
            }
            decompose.insert((deg, w), p);
        }
        Ok(GradedHomology { space, slice, report, by_degree, d: d.clone(), decompose })
    }

    pub fn slice(&self) -> &ComplexSlice<S> {
        &self.slice
    }

    pub fn report(&self) -> &HomologyReport<S> {
        &self.report
    }

    pub fn dims(&self) -> &BTreeMap<(i32, i32), usize> {
        &self.report.dims
    }

    pub fn dim(&self, degree: i32, weight: i32) -> usize {
        self.report.dim(degree, weight)
    }

    /// The (degree, weight) cell of a nonzero homogeneous vector.
    pub fn cell_of(&self, v: &Vector<S>) -> Result<Option<(i32, i32)>> {
        let mut cell = None;
        for i in v.support() {
            let c = (self.space.degree(i), self.space.weight(i));
            if cell.is_some_and(|x| x != c) {
                return Err(Error::Invalid("inhomogeneous vector".into()));
            }
            cell = Some(c);
        }
        Ok(cell)
    }

    /// Coordinates of the class of a cycle in the chosen representatives of its cell
    /// (empty for the zero vector).
    pub fn class_of(&self, z: &Vector<S>) -> Result<Vec<S>> {
        let Some(cell) = self.cell_of(z)? else { return Ok(Vec::new()) };
        if !self.d.apply(z).is_zero() {
            return Err(Error::Invalid(format!("vector in degree {} is not a cycle", cell.0)));
        }
        let Some(p) = self.decompose.get(&cell) else {
            return Err(Error::Invalid(format!("no cell {cell:?} in the complex")));
        };
        let n = self.space.dim();
        match p.solve(z) {
            Ok(x) => Ok((0..self.dim(cell.0, cell.1)).map(|k| x.get(n + k)).collect()),
            Err(_) => Err(Error::Identity(format!("cycle in {cell:?} not spanned by representatives"))),
        }
    }

    /// Like [`Self::class_of`] but padded with zeros to the dimension of the given cell.
    pub fn class_in(&self, deg: i32, w: i32, z: &Vector<S>) -> Result<Vec<S>> {
        let n = self.dim(deg, w);
        if let Some(cell) = self.cell_of(z)? {
            if cell != (deg, w) {
                return Err(Error::Invalid(format!("vector lives in {cell:?}, not ({deg}, {w})")));
            }
        }
        let mut c = self.class_of(z)?;
        c.resize(n, S::zero());
        Ok(c)
    }

    /// The chosen representatives of the cell, as global vectors.
    pub fn representatives(&self, deg: i32, w: i32) -> Vec<Vector<S>> {
        let Some(idx) = self.by_degree.get(&deg) else { return Vec::new() };
        self.report
            .representatives
            .get(&(deg, w))
            .map(|r| r.iter().map(|v| v.remap(|k| Some(idx[k]))).collect())
            .unwrap_or_default()
    }
}

/// Free-function form of [`ComplexSlice::homology`].
pub fn homology_of_slice<S: Scalar>(slice: &ComplexSlice<S>) -> HomologyReport<S> {
    slice.homology()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use num_traits::One;

    #[test]
    fn identity_two_term_slice_is_acyclic() {
        let a = Arc::new(BigradedSpace::from_triples([("a", 0, 0)]).unwrap());
        let b = Arc::new(BigradedSpace::from_triples([("b", 1, 0)]).unwrap());
        let d = LinearMap::from_triplets(a.clone(), b.clone(), [(0, 0, Q::one())], (1, 0)).unwrap();
        let slice = ComplexSlice::new([(0, a), (1, b)].into(), [(0, d)].into()).unwrap();
        let h = slice.homology();
        assert_eq!(h.total(), 0);
        h.recheck(&slice).unwrap();
    }

    #[test]
    fn non_complex_rejected() {
        let a = Arc::new(BigradedSpace::from_triples([("a", 0, 0)]).unwrap());
        let b = Arc::new(BigradedSpace::from_triples([("b", 1, 0)]).unwrap());
        let c = Arc::new(BigradedSpace::from_triples([("c", 2, 0)]).unwrap());
        let d0 = LinearMap::from_triplets(a.clone(), b.clone(), [(0, 0, Q::one())], (1, 0)).unwrap();
        let d1 = LinearMap::from_triplets(b.clone(), c.clone(), [(0, 0, Q::one())], (1, 0)).unwrap();
        let err = ComplexSlice::new([(0, a), (1, b), (2, c)].into(), [(0, d0), (1, d1)].into());
        assert!(matches!(err, Err(Error::NotAComplex(_))));
    }
}
