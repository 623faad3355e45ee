use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::chain::Chain;
use crate::ainfty::sign::l_span;
use crate::ainfty::AInftyAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{ComplexSlice, HomologyReport, LinearMap, Vector};
use crate::scalar::Scalar;
use crate::space::{BasisElement, BigradedSpace};

/// The normalized mixed Hochschild complex `C_•(A) = ⊕ A ⊗ (Ā[1])^{⊗n}` with `b` and `B`.
///
/// `Ā` is spanned by every basis element except a pivot in the support of the unit
/// (the unit itself when it is a basis element); tail entries are always written in
/// that basis. Degrees are cohomological: `HH_n` sits in degree `−n`.
#[derive(Debug, Clone)]
pub struct Hochschild<S> {
    algebra: Arc<AInftyAlgebra<S>>,
    unit: Vector<S>,
    pivot: usize,
    reduced: Vec<usize>,
}

impl<S: Scalar> Hochschild<S> {
    pub fn new(algebra: Arc<AInftyAlgebra<S>>) -> Result<Self> {
        let unit = algebra.unit().cloned().ok_or_else(|| Error::Invalid("Hochschild complex needs a unit".into()))?;
        let pivot = unit.max_index().ok_or_else(|| Error::Invalid("zero unit".into()))?;
        let reduced = (0..algebra.dim()).filter(|&i| i != pivot).collect();
        Ok(Hochschild { algebra, unit, pivot, reduced })
    }

    pub fn algebra(&self) -> &Arc<AInftyAlgebra<S>> {
        &self.algebra
    }

    pub fn unit(&self) -> &Vector<S> {
        &self.unit
    }

    /// The basis of `Ā` used in tail slots.
    pub fn reduced_basis(&self) -> &[usize] {
        &self.reduced
    }

    pub fn is_normalized(&self, tuple: &[usize]) -> bool {
        !tuple.is_empty() && tuple[1..].iter().all(|&a| a != self.pivot)
    }

    pub fn degree(&self, tuple: &[usize]) -> i32 {
        let s = self.algebra.space();
        s.degree(tuple[0]) + tuple[1..].iter().map(|&a| s.degree(a) - 1).sum::<i32>()
    }

    pub fn weight(&self, tuple: &[usize]) -> i32 {
        tuple.iter().map(|&a| self.algebra.space().weight(a)).sum()
    }

    /// Image of `v` in `Ā`, written in the reduced basis.
    pub fn reduce(&self, v: &Vector<S>) -> Vector<S> {
        match v.coeff(self.pivot) {
            None => v.clone(),
            Some(c) => {
                let mut out = v.clone();
                out.add_scaled(&self.unit, &-(c.clone() / self.unit.get(self.pivot)));
                out
            }
        }
    }

    /// Multilinear expansion of `(v₀; v₁, …)`, reducing tail slots.
    pub fn expand(&self, slots: &[Vector<S>], c: &S) -> Chain<S> {
        let reduced: Vec<Vector<S>> =
            slots.iter().enumerate().map(|(k, v)| if k == 0 { v.clone() } else { self.reduce(v) }).collect();
        let mut out = Chain::zero();
        let mut key = Vec::with_capacity(slots.len());
        expand_rec(&reduced, 0, &mut key, c.clone(), &mut out);
        out
    }

    /// Rewrites every tail entry in the reduced basis (drops unit components).
    pub fn normalize(&self, c: &Chain<S>) -> Chain<S> {
        let mut out = Chain::zero();
        for (t, x) in c.iter() {
            let slots: Vec<Vector<S>> = t.iter().map(|&a| Vector::basis(a)).collect();
            out.add(&self.expand(&slots, x));
        }
        out
    }

    fn check_arity(&self, c: &Chain<S>) -> Result<()> {
        let need = c.max_length() + 1;
        if let Some(bound) = self.algebra.arity_bound() {
            if need > bound {
                return Err(Error::Truncation(format!(
                    "b on length {} chains needs μ up to arity {need}, tables known to {bound}",
                    need - 1
                )));
            }
        }
        Ok(())
    }

    /// The Hochschild differential.
    pub fn b(&self, c: &Chain<S>) -> Result<Chain<S>> {
        self.check_arity(c)?;
        let degs: Vec<i32> = self.algebra.space().basis().iter().map(|e| e.degree).collect();
        let mut out = Chain::zero();
        for (t, x) in c.iter() {
            let n = t.len() - 1;
            let td: Vec<i32> = t.iter().map(|&a| degs[a]).collect();
            let basis: Vec<Vector<S>> = t.iter().map(|&a| Vector::basis(a)).collect();
            for i in 0..=n {
                let sgn = S::sign_pow(!l_span(&td[..i]));
                for j in i..=n {
                    let inner = self.algebra.mu(&t[i..=j]);
                    if inner.is_zero() {
                        continue;
                    }
                    let mut slots = basis[..i].to_vec();
                    slots.push(inner);
                    slots.extend_from_slice(&basis[j + 1..]);
                    out.add(&self.expand(&slots, &(sgn.clone() * x.clone())));
                }
            }
            for q in 1..=n {
                let lq = l_span(&td[..q]) && l_span(&td[q..]);
                let sgn = S::sign_pow(!lq);
                for p in 0..q {
                    let mut key = t[q..].to_vec();
                    key.extend_from_slice(&t[..=p]);
                    let inner = self.algebra.mu(&key);
                    if inner.is_zero() {
                        continue;
                    }
                    let mut slots = vec![inner];
                    slots.extend_from_slice(&basis[p + 1..q]);
                    out.add(&self.expand(&slots, &(sgn.clone() * x.clone())));
                }
            }
        }
        Ok(out)
    }

    /// The Connes–Tsygan differential `B(a₀, …, aₙ) = Σ ± (1, aᵢ, …, aₙ, a₀, …, aᵢ₋₁)`.
    pub fn connes_b(&self, c: &Chain<S>) -> Chain<S> {
        let degs: Vec<i32> = self.algebra.space().basis().iter().map(|e| e.degree).collect();
        let mut out = Chain::zero();
        for (t, x) in c.iter() {
            let n = t.len() - 1;
            let td: Vec<i32> = t.iter().map(|&a| degs[a]).collect();
            for i in 0..=n {
                let sgn = S::sign_pow(!(l_span(&td[..i]) && l_span(&td[i..])));
                let mut slots = vec![self.unit.clone()];
                slots.extend(t[i..].iter().map(|&a| Vector::basis(a)));
                slots.extend(t[..i].iter().map(|&a| Vector::basis(a)));
                out.add(&self.expand(&slots, &(sgn * x.clone())));
            }
        }
        out
    }

    pub fn tuple_name(&self, tuple: &[usize]) -> String {
        let s = self.algebra.space();
        if tuple.len() == 1 {
            return format!("({})", s.name(tuple[0]));
        }
        let tail: Vec<&str> = tuple[1..].iter().map(|&a| s.name(a)).collect();
        format!("({};{})", s.name(tuple[0]), tail.join(","))
    }

    pub fn parse_tuple(&self, names: &[impl AsRef<str>]) -> Result<Vec<usize>> {
        if names.is_empty() {
            return Err(Error::Parse("empty Hochschild tuple".into()));
        }
        let t = names.iter().map(|n| self.algebra.space().require(n.as_ref())).collect::<Result<Vec<_>>>()?;
        if !self.is_normalized(&t) {
            return Err(Error::Invalid(format!("tail of {} contains the unit", self.tuple_name(&t))));
        }
        Ok(t)
    }

    pub fn render(&self, c: &Chain<S>) -> String {
        if c.is_zero() {
            return "0".into();
        }
        c.iter().map(|(t, x)| format!("{}*{}", x.to_exact_string(), self.tuple_name(t))).collect::<Vec<_>>().join(" + ")
    }

    /// Normalized tuples of total weight `weight`. Needs positive reduced weights.
    pub fn tuples_of_weight(&self, weight: i32) -> Result<Vec<Vec<usize>>> {
        let s = self.algebra.space();
        if let Some(&a) = self.reduced.iter().find(|&&a| s.weight(a) <= 0) {
            return Err(Error::Invalid(format!(
                "weight slices need positive reduced weights; {} has weight {}",
                s.name(a),
                s.weight(a)
            )));
        }
        let mut out = Vec::new();
        for a0 in 0..s.dim() {
            let rest = weight - s.weight(a0);
            if rest < 0 {
                continue;
            }
            let mut stack = vec![(vec![a0], rest)];
            while let Some((t, r)) = stack.pop() {
                if r == 0 {
                    out.push(t.clone());
                }
                for &a in self.reduced.iter().rev() {
                    if s.weight(a) <= r {
                        let mut u = t.clone();
                        u.push(a);
                        stack.push((u, r - s.weight(a)));
                    }
                }
            }
        }
        out.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
        Ok(out)
    }

    /// The weight-`weight` subcomplex `(C_•(A)_w, b)`.
    pub fn slice(&self, weight: i32) -> Result<HochschildSlice<S>> {
        let tuples = self.tuples_of_weight(weight)?;
        let basis: Vec<BasisElement> =
            tuples.iter().map(|t| BasisElement { name: self.tuple_name(t), degree: self.degree(t), weight }).collect();
        let space = Arc::new(BigradedSpace::new(basis)?);
        let index: HashMap<Vec<usize>, usize> = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut columns = Vec::with_capacity(tuples.len());
        for t in &tuples {
            let bt = self.b(&Chain::basis(t.clone()))?;
            columns.push(to_vector(&index, &bt)?);
        }
        let b = LinearMap::new(space.clone(), space.clone(), columns, (1, 0))?;
        let complex = ComplexSlice::from_endomorphism(&space, &b)?;
        let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, t) in tuples.iter().enumerate() {
            by_degree.entry(self.degree(t)).or_default().push(i);
        }
        Ok(HochschildSlice { weight, tuples, index, space, b, complex, by_degree })
    }

    /// `B` on a slice, as a map of bidegree (−1, 0).
    pub fn connes_b_map(&self, slice: &HochschildSlice<S>) -> Result<LinearMap<S>> {
        let columns = slice
            .tuples
            .iter()
            .map(|t| to_vector(&slice.index, &self.connes_b(&Chain::basis(t.clone()))))
            .collect::<Result<Vec<_>>>()?;
        LinearMap::new(slice.space.clone(), slice.space.clone(), columns, (-1, 0))
    }
}

fn expand_rec<S: Scalar>(slots: &[Vector<S>], k: usize, key: &mut Vec<usize>, c: S, out: &mut Chain<S>) {
    if k == slots.len() {
        out.add_term(key.clone(), c);
        return;
    }
    for (i, x) in slots[k].iter() {
        key.push(i);
        expand_rec(slots, k + 1, key, c.clone() * x.clone(), out);
        key.pop();
    }
}

fn to_vector<S: Scalar>(index: &HashMap<Vec<usize>, usize>, c: &Chain<S>) -> Result<Vector<S>> {
    c.iter()
        .map(|(t, x)| {
            index
                .get(t)
                .map(|&i| (i, x.clone()))
                .ok_or_else(|| Error::Invalid(format!("tuple {t:?} outside the slice")))
        })
        .collect()
}

/// A finite weight slice of the Hochschild complex.
#[derive(Debug, Clone)]
pub struct HochschildSlice<S> {
    weight: i32,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    space: Arc<BigradedSpace>,
    b: LinearMap<S>,
    complex: ComplexSlice<S>,
    by_degree: BTreeMap<i32, Vec<usize>>,
}

impl<S: Scalar> HochschildSlice<S> {
    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn space(&self) -> &Arc<BigradedSpace> {
        &self.space
    }

    pub fn b(&self) -> &LinearMap<S> {
        &self.b
    }

    pub fn complex(&self) -> &ComplexSlice<S> {
        &self.complex
    }

    pub fn to_vector(&self, c: &Chain<S>) -> Result<Vector<S>> {
        to_vector(&self.index, c)
    }

    pub fn to_chain(&self, v: &Vector<S>) -> Chain<S> {
        v.iter().map(|(i, x)| (self.tuples[i].clone(), x.clone())).collect()
    }

    /// A vector of the degree-`degree` piece of [`Self::complex`] as a chain.
    pub fn local_to_chain(&self, degree: i32, v: &Vector<S>) -> Chain<S> {
        let idx = &self.by_degree[&degree];
        v.iter().map(|(i, x)| (self.tuples[idx[i]].clone(), x.clone())).collect()
    }

    pub fn homology(&self) -> HomologyReport<S> {
        self.complex.homology()
    }
}
