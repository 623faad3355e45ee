use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::algebra::{validate_op, AInftyAlgebra};
use super::bimodule::AInftyBimodule;
use super::check::{render_vector, simple_item, CheckItem, CheckReport, Residuals, Witness};
use super::morphism::tuples;
use super::op::MultiOp;
use super::sign::{l_span, odd, reversal_parity};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::Scalar;
use crate::space::{BasisElement, BigradedSpace};

/// `End_k(M)` of a finite complex `(M, d)` as a DG algebra with matrix-unit basis
/// `e(mᵢ,mⱼ): mⱼ ↦ mᵢ`, stored at index `i·dim M + j`.
#[derive(Debug, Clone)]
pub struct EndomorphismAlgebra<S> {
    module_space: Arc<BigradedSpace>,
    differential: BTreeMap<usize, Vector<S>>,
    algebra: Arc<AInftyAlgebra<S>>,
}

impl<S: Scalar> EndomorphismAlgebra<S> {
    pub fn new(module_space: Arc<BigradedSpace>, differential: BTreeMap<usize, Vector<S>>) -> Result<Self> {
        let n = module_space.dim();
        let mut basis = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                basis.push(BasisElement {
                    name: format!("e({},{})", module_space.name(i), module_space.name(j)),
                    degree: module_space.degree(i) - module_space.degree(j),
                    weight: module_space.weight(i) - module_space.weight(j),
                });
            }
        }
        let space = Arc::new(BigradedSpace::new(basis)?);
        let idx = |i: usize, j: usize| i * n + j;
        // d_End(E_ij) = d∘E_ij − (−1)^{|E_ij|} E_ij∘d
        let mut d_end: BTreeMap<usize, Vector<S>> = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let mut v = Vector::zero();
                if let Some(di) = differential.get(&i) {
                    for (k, c) in di.iter() {
                        v.add_term(idx(k, j), c.clone());
                    }
                }
                let s = S::sign_pow(odd(space.degree(idx(i, j))));
                for (&l, dl) in &differential {
                    if let Some(c) = dl.coeff(j) {
                        v.add_term(idx(i, l), -(s.clone() * c.clone()));
                    }
                }
                if !v.is_zero() {
                    d_end.insert(idx(i, j), v);
                }
            }
        }
        let mut products = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    products.insert((idx(i, j), idx(j, l)), Vector::basis(idx(i, l)));
                }
            }
        }
        let unit: Vector<S> = (0..n).map(|i| (idx(i, i), S::one())).collect();
        let algebra = AInftyAlgebra::from_dg("End(M)", space, Some(unit), &d_end, &products)?;
        Ok(EndomorphismAlgebra { module_space, differential, algebra: Arc::new(algebra) })
    }

    pub fn algebra(&self) -> &Arc<AInftyAlgebra<S>> {
        &self.algebra
    }

    pub fn module_space(&self) -> &Arc<BigradedSpace> {
        &self.module_space
    }

    pub fn differential(&self) -> &BTreeMap<usize, Vector<S>> {
        &self.differential
    }

    pub fn matrix_unit(&self, out: usize, input: usize) -> usize {
        out * self.module_space.dim() + input
    }

    /// `(out, input)` of a matrix unit.
    pub fn entry_of(&self, e: usize) -> (usize, usize) {
        let n = self.module_space.dim();
        (e / n, e % n)
    }

    /// `φ(m)` for `φ ∈ End_k(M)`.
    pub fn apply(&self, phi: &Vector<S>, m: usize) -> Vector<S> {
        let mut out = Vector::zero();
        for (e, c) in phi.iter() {
            let (i, j) = self.entry_of(e);
            if j == m {
                out.add_term(i, c.clone());
            }
        }
        out
    }
}

/// An A∞-bimorphism `f: (A, B) → C` with components `f_{r,s}: A^{⊗r} ⊗ B^{⊗s} → C`
/// of degree `1 − r − s`, keys `[a₁, …, a_r, b₁, …, b_s]`.
#[derive(Debug, Clone)]
pub struct Bimorphism<S> {
    name: String,
    left: Arc<AInftyAlgebra<S>>,
    right: Arc<AInftyAlgebra<S>>,
    target: Arc<AInftyAlgebra<S>>,
    components: BTreeMap<(usize, usize), MultiOp<S>>,
    /// Components are known for `r + s ≤ bound`.
    arity_bound: Option<usize>,
}

impl<S: Scalar> Bimorphism<S> {
    pub fn new(
        name: impl Into<String>,
        left: Arc<AInftyAlgebra<S>>,
        right: Arc<AInftyAlgebra<S>>,
        target: Arc<AInftyAlgebra<S>>,
        components: BTreeMap<(usize, usize), MultiOp<S>>,
        arity_bound: Option<usize>,
    ) -> Result<Self> {
        let name = name.into();
        for (&(r, s), f) in &components {
            if r + s == 0 || f.arity() != r + s {
                return Err(Error::Invalid(format!("{name}: f_{{{r},{s}}} has arity {}", f.arity())));
            }
            if arity_bound.is_some_and(|b| r + s > b) {
                return Err(Error::Invalid(format!("{name}: f_{{{r},{s}}} beyond arity bound")));
            }
            let mut slots: Vec<&BigradedSpace> = vec![left.space(); r];
            slots.extend(std::iter::repeat(right.space().as_ref()).take(s));
            validate_op(&format!("{name} f{r},{s}"), f, &slots, target.space(), 1 - (r + s) as i32)?;
        }
        let components = components.into_iter().filter(|(_, f)| !f.is_empty()).collect();
        Ok(Bimorphism { name, left, right, target, components, arity_bound })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn left(&self) -> &Arc<AInftyAlgebra<S>> {
        &self.left
    }

    pub fn right(&self) -> &Arc<AInftyAlgebra<S>> {
        &self.right
    }

    pub fn target(&self) -> &Arc<AInftyAlgebra<S>> {
        &self.target
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize), MultiOp<S>> {
        &self.components
    }

    pub fn component(&self, r: usize, s: usize) -> Option<&MultiOp<S>> {
        self.components.get(&(r, s))
    }

    pub fn arity_bound(&self) -> Option<usize> {
        self.arity_bound
    }

    pub fn eval(&self, a: &[usize], b: &[usize]) -> Vector<S> {
        let Some(f) = self.components.get(&(a.len(), b.len())) else { return Vector::zero() };
        let key: Vec<usize> = a.iter().chain(b).copied().collect();
        f.eval(&key)
    }

    fn eval_args(&self, a: &[&Vector<S>], b: &[&Vector<S>]) -> Vector<S> {
        let Some(f) = self.components.get(&(a.len(), b.len())) else { return Vector::zero() };
        let args: Vec<&Vector<S>> = a.iter().chain(b).copied().collect();
        f.apply(&args)
    }

    /// Left side minus right side of the bimorphism relation on `(a; b)`.
    pub fn relation_residual(&self, a: &[usize], b: &[usize]) -> Vector<S> {
        let adeg: Vec<i32> = a.iter().map(|&x| self.left.space().degree(x)).collect();
        let bdeg: Vec<i32> = b.iter().map(|&x| self.right.space().degree(x)).collect();
        let mut cache: HashMap<(usize, usize, usize, usize), Vector<S>> = HashMap::new();
        let mut res = Vector::zero();
        let mut blocks = Vec::new();
        self.lhs_rec(a, b, &adeg, &bdeg, 0, 0, false, false, &mut blocks, &mut cache, &mut res);

        let singles_a: Vec<Vector<S>> = a.iter().map(|&x| Vector::basis(x)).collect();
        let singles_b: Vec<Vector<S>> = b.iter().map(|&x| Vector::basis(x)).collect();
        let b_refs: Vec<&Vector<S>> = singles_b.iter().collect();
        let a_refs: Vec<&Vector<S>> = singles_a.iter().collect();
        for i in 0..a.len() {
            let par = l_span(&adeg[..i]);
            for j in 1..=a.len() - i {
                let inner = self.left.mu(&a[i..i + j]);
                if inner.is_zero() {
                    continue;
                }
                let mut args: Vec<&Vector<S>> = a_refs[..i].to_vec();
                args.push(&inner);
                args.extend(&a_refs[i + j..]);
                res.add_scaled(&self.eval_args(&args, &b_refs), &-S::sign_pow(par));
            }
        }
        let pa = l_span(&adeg);
        for i in 0..b.len() {
            let par = pa ^ l_span(&bdeg[..i]);
            for j in 1..=b.len() - i {
                let inner = self.right.mu(&b[i..i + j]);
                if inner.is_zero() {
                    continue;
                }
                let mut args: Vec<&Vector<S>> = b_refs[..i].to_vec();
                args.push(&inner);
                args.extend(&b_refs[i + j..]);
                res.add_scaled(&self.eval_args(&a_refs, &args), &-S::sign_pow(par));
            }
        }
        res
    }

    /// Enumerates block decompositions `(r_q − r_{q−1}, s_q − s_{q−1})`, accumulating
    /// `σ = Σ_{p<q} l(a-block q)·l(b-block p)`.
    #[allow(clippy::too_many_arguments)]
    fn lhs_rec(
        &self,
        a: &[usize],
        b: &[usize],
        adeg: &[i32],
        bdeg: &[i32],
        ia: usize,
        ib: usize,
        sigma: bool,
        b_so_far: bool,
        blocks: &mut Vec<(usize, usize, usize, usize)>,
        cache: &mut HashMap<(usize, usize, usize, usize), Vector<S>>,
        res: &mut Vector<S>,
    ) {
        if ia == a.len() && ib == b.len() {
            if self.target.op(blocks.len()).is_none() {
                return;
            }
            let vals: Vec<&Vector<S>> = blocks.iter().map(|k| &cache[k]).collect();
            if vals.iter().any(|v| v.is_zero()) {
                return;
            }
            res.add_scaled(&self.target.mu_vectors(&vals), &S::sign_pow(sigma));
            return;
        }
        for ea in ia..=a.len() {
            for eb in ib..=b.len() {
                if ea == ia && eb == ib {
                    continue;
                }
                let key = (ia, ea, ib, eb);
                let v = cache.entry(key).or_insert_with(|| self.eval(&a[ia..ea], &b[ib..eb]));
                if v.is_zero() {
                    continue;
                }
                let la = l_span(&adeg[ia..ea]);
                let lb = l_span(&bdeg[ib..eb]);
                blocks.push(key);
                self.lhs_rec(a, b, adeg, bdeg, ea, eb, sigma ^ (la && b_so_far), b_so_far ^ lb, blocks, cache, res);
                blocks.pop();
            }
        }
    }

    /// Relations on reduced tuples `(a; b)` with `1 ≤ r + s ≤ n`, plus strict unitality.
    pub fn check_structure(&self, n: usize) -> CheckReport {
        let mut report = CheckReport::new(self.name.clone(), n);
        let bound = [self.arity_bound, self.left.arity_bound(), self.right.arity_bound(), self.target.arity_bound()]
            .into_iter()
            .flatten()
            .min();
        if bound.is_some_and(|b| n > b) {
            report.push(simple_item(format!("tables known only to arity {}", bound.unwrap_or(0)), false, None));
            return report;
        }
        let alpha = self.left.reduced_indices().unwrap_or_else(|_| (0..self.left.dim()).collect());
        let beta = self.right.reduced_indices().unwrap_or_else(|_| (0..self.right.dim()).collect());
        for total in 1..=n {
            let mut res: Residuals<(Vec<usize>, Vec<usize>), S> = Residuals::new();
            for r in 0..=total {
                let s = total - r;
                for a in tuples(&alpha, r) {
                    for b in tuples(&beta, s) {
                        let v = self.relation_residual(&a, &b);
                        res.add((a.clone(), b), &v, S::one());
                    }
                }
            }
            report.push(res.into_item(format!("bimorphism relation, arity {total}"), Some(total), |(a, b), v| {
                Witness {
                    inputs: a
                        .iter()
                        .map(|&x| self.left.space().name(x).to_string())
                        .chain(std::iter::once(";".to_string()))
                        .chain(b.iter().map(|&x| self.right.space().name(x).to_string()))
                        .collect(),
                    residual: render_vector(v, self.target.space()),
                }
            }));
        }
        for item in self.unitality_items() {
            report.push(item);
        }
        report
    }

    pub fn unitality_items(&self) -> Vec<CheckItem> {
        let mut items = Vec::new();
        let (Some(ua), Some(ub), Some(uc)) = (self.left.unit(), self.right.unit(), self.target.unit()) else {
            items.push(simple_item("units of A, B and C", false, None));
            return items;
        };
        for (label, v) in
            [("f10(1_A) = 1_C", self.eval_args(&[ua], &[])), ("f01(1_B) = 1_C", self.eval_args(&[], &[ub]))]
        {
            let mut r = v;
            r.add_scaled(uc, &-S::one());
            let w = (!r.is_zero())
                .then(|| Witness { inputs: vec!["1".into()], residual: render_vector(&r, self.target.space()) });
            items.push(simple_item(label, w.is_none(), w));
        }
        let mut res: Residuals<(usize, usize, usize, Vec<usize>), S> = Residuals::new();
        for (&(r, s), f) in self.components.iter().filter(|(&(r, s), _)| r + s >= 2) {
            for (key, val) in f.iter() {
                for slot in 0..r + s {
                    let u = if slot < r { ua } else { ub };
                    if let Some(c) = u.coeff(key[slot]) {
                        let mut rest = key.clone();
                        rest.remove(slot);
                        res.add((r, s, slot, rest), val, c.clone());
                    }
                }
            }
        }
        items.push(res.into_item("f_{r,s} with a unit argument vanishes", None, |(r, _, slot, rest), v| {
            let mut inputs: Vec<String> = rest
                .iter()
                .enumerate()
                .map(|(p, &x)| {
                    let sp = if p < *r - usize::from(*slot < *r) { self.left.space() } else { self.right.space() };
                    sp.name(x).to_string()
                })
                .collect();
            inputs.insert(*slot, "1".into());
            Witness { inputs, residual: render_vector(v, self.target.space()) }
        }));
        items
    }
}

/// Parity of `l = l_1^s(b)·(|m| + 1) + Σ_{p<q}(|b_p|+1)(|b_q|+1)`.
///
/// With `|m|` in place of `|m| + 1` the diagonal bimodule maps to an `f` with
/// `f₀₁(1) = −id`, so `m` is counted with its shifted degree.
pub fn bimorphism_sign(m_degree: i32, b_degrees: &[i32]) -> bool {
    (l_span(b_degrees) && !odd(m_degree)) ^ reversal_parity(b_degrees)
}

/// `μ_{r,s}(a, m, b) = (−1)^l f_{r,s}(a, b_s, …, b₁)(m)` and `μ_{0,0} = d`.
///
/// `right` is `B`; the bimorphism's right source is `B^op` on the same space.
pub fn bimodule_from_bimorphism<S: Scalar>(
    f: &Bimorphism<S>,
    right: Arc<AInftyAlgebra<S>>,
    end: &EndomorphismAlgebra<S>,
) -> Result<AInftyBimodule<S>> {
    if !Arc::ptr_eq(f.target(), end.algebra()) {
        return Err(Error::Invalid("bimorphism must land in the given End(M)".into()));
    }
    if right.space().basis() != f.right().space().basis() {
        return Err(Error::Invalid("right algebra differs from the bimorphism's right source".into()));
    }
    let mspace = end.module_space().clone();
    let bdeg: Vec<i32> = right.space().basis().iter().map(|x| x.degree).collect();
    let mut ops: BTreeMap<(usize, usize), MultiOp<S>> = BTreeMap::new();
    let mut d = MultiOp::new(1);
    for (&m, v) in end.differential() {
        d.add(vec![m], v);
    }
    ops.insert((0, 0), d);
    for (&(r, s), comp) in f.components() {
        let op = ops.entry((r, s)).or_insert_with(|| MultiOp::new(r + s + 1));
        for (key, phi) in comp.iter() {
            let b: Vec<usize> = key[r..].iter().rev().copied().collect();
            let degs: Vec<i32> = b.iter().map(|&x| bdeg[x]).collect();
            for (e, c) in phi.iter() {
                let (out, m) = end.entry_of(e);
                let sgn = S::sign_pow(bimorphism_sign(mspace.degree(m), &degs));
                let mut k = key[..r].to_vec();
                k.push(m);
                k.extend_from_slice(&b);
                op.add_term(k, out, sgn * c.clone());
            }
        }
    }
    let bound = f.arity_bound().map(|n| n + 1);
    AInftyBimodule::new(format!("bimod({})", f.name()), f.left().clone(), right, mspace, ops, bound)
}

/// Inverse of [`bimodule_from_bimorphism`]: `f_{r,s}(a, c₁..c_s)(m) = (−1)^l μ_{r,s}(a, m, c_s..c₁)`.
pub fn bimorphism_from_bimodule<S: Scalar>(
    m: &AInftyBimodule<S>,
    right_op: Arc<AInftyAlgebra<S>>,
    end: &EndomorphismAlgebra<S>,
) -> Result<Bimorphism<S>> {
    if m.space().basis() != end.module_space().basis() {
        return Err(Error::Invalid("End(M) built on a different space".into()));
    }
    let mut d: BTreeMap<usize, Vector<S>> = BTreeMap::new();
    if let Some(op) = m.op(0, 0) {
        for (k, v) in op.iter() {
            d.insert(k[0], v.clone());
        }
    }
    if &d != end.differential() {
        return Err(Error::Invalid("μ_{0,0} differs from the differential of End(M)".into()));
    }
    let bdeg: Vec<i32> = m.right().space().basis().iter().map(|x| x.degree).collect();
    let mspace = m.space();
    let mut comps: BTreeMap<(usize, usize), MultiOp<S>> = BTreeMap::new();
    for (&(r, s), op) in m.ops() {
        if r + s == 0 {
            continue;
        }
        let f = comps.entry((r, s)).or_insert_with(|| MultiOp::new(r + s));
        for (key, val) in op.iter() {
            let mm = key[r];
            let b = &key[r + 1..];
            let degs: Vec<i32> = b.iter().map(|&x| bdeg[x]).collect();
            let sgn = S::sign_pow(bimorphism_sign(mspace.degree(mm), &degs));
            let mut k = key[..r].to_vec();
            k.extend(b.iter().rev());
            for (out, c) in val.iter() {
                f.add_term(k.clone(), end.matrix_unit(out, mm), sgn.clone() * c.clone());
            }
        }
    }
    let bound = m.arity_bound().map(|n| n.saturating_sub(1));
    Bimorphism::new(format!("bimorph({})", m.name()), m.left().clone(), right_op, end.algebra().clone(), comps, bound)
}
