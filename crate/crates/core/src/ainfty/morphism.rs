use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::{validate_op, AInftyAlgebra};
use super::check::{render_vector, simple_item, CheckItem, CheckReport, Residuals, Witness};
use super::op::MultiOp;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::Scalar;

/// An A∞-morphism `f: A → B` with components `fₙ: A^{⊗n} → B` of degree `1 − n`.
#[derive(Debug, Clone)]
pub struct AInftyMorphism<S> {
    name: String,
    source: Arc<AInftyAlgebra<S>>,
    target: Arc<AInftyAlgebra<S>>,
    components: BTreeMap<usize, MultiOp<S>>,
    arity_bound: Option<usize>,
}

/// All tuples of length `n` over `alphabet`, in lexicographic order of positions.
pub(crate) fn tuples(alphabet: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * alphabet.len());
        for t in &out {
            for &a in alphabet {
                let mut u = t.clone();
                u.push(a);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Compositions of `n` into `k ≥ 1` positive parts.
pub(crate) fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for mask in 0..(1usize << (n - 1)) {
        let mut parts = Vec::new();
        let mut len = 1;
        for bit in 0..n - 1 {
            if mask >> bit & 1 == 1 {
                parts.push(len);
                len = 1;
            } else {
                len += 1;
            }
        }
        parts.push(len);
        out.push(parts);
    }
    out
}

impl<S: Scalar> AInftyMorphism<S> {
    pub fn new(
        name: impl Into<String>,
        source: Arc<AInftyAlgebra<S>>,
        target: Arc<AInftyAlgebra<S>>,
        components: BTreeMap<usize, MultiOp<S>>,
        arity_bound: Option<usize>,
    ) -> Result<Self> {
        let name = name.into();
        for (&n, f) in &components {
            if n == 0 || f.arity() != n {
                return Err(Error::Invalid(format!("{name}: component stored under {n} has arity {}", f.arity())));
            }
            if arity_bound.is_some_and(|b| n > b) {
                return Err(Error::Invalid(format!("{name}: f{n} beyond arity bound")));
            }
            let slots = vec![source.space().as_ref(); n];
            validate_op(&format!("{name} f{n}"), f, &slots, target.space(), 1 - n as i32)?;
        }
        let components = components.into_iter().filter(|(_, f)| !f.is_empty()).collect();
        Ok(AInftyMorphism { name, source, target, components, arity_bound })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<AInftyAlgebra<S>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AInftyAlgebra<S>> {
        &self.target
    }

    pub fn components(&self) -> &BTreeMap<usize, MultiOp<S>> {
        &self.components
    }

    pub fn component(&self, n: usize) -> Option<&MultiOp<S>> {
        self.components.get(&n)
    }

    pub fn arity_bound(&self) -> Option<usize> {
        self.arity_bound
    }

    /// `fₙ(e_{key})`.
    pub fn eval(&self, key: &[usize]) -> Vector<S> {
        self.components.get(&key.len()).map(|f| f.eval(key)).unwrap_or_default()
    }

    pub fn eval_vectors(&self, args: &[&Vector<S>]) -> Vector<S> {
        self.components.get(&args.len()).map(|f| f.apply(args)).unwrap_or_default()
    }

    /// `Σ μ_k^B(f_{i₁}(…), …, f_{i_k}(…)) − Σ (−1)^{l_1^i} f(…, μ_j^A(…), …)` on one tuple.
    pub fn relation_residual(&self, a: &[usize]) -> Vector<S> {
        let n = a.len();
        let sdeg: Vec<i32> = a.iter().map(|&i| self.source.space().degree(i)).collect();
        // block values f(a[s..e])
        let mut block: BTreeMap<(usize, usize), Vector<S>> = BTreeMap::new();
        for s in 0..n {
            for e in s + 1..=n {
                block.insert((s, e), self.eval(&a[s..e]));
            }
        }
        let mut res = Vector::zero();
        for parts in compositions(n) {
            if self.target.op(parts.len()).is_none() {
                continue;
            }
            let mut args = Vec::with_capacity(parts.len());
            let mut s = 0;
            for &p in &parts {
                args.push(&block[&(s, s + p)]);
                s += p;
            }
            res.add(&self.target.mu_vectors(&args));
        }
        let mut prefix = false;
        for i in 0..n {
            if i > 0 {
                prefix ^= (sdeg[i - 1] + 1).rem_euclid(2) == 1;
            }
            for j in 1..=n - i {
                let inner = self.source.mu(&a[i..i + j]);
                if inner.is_zero() {
                    continue;
                }
                let outer_arity = n - j + 1;
                let Some(f) = self.components.get(&outer_arity) else { continue };
                let singles: Vec<Vector<S>> = a.iter().map(|&x| Vector::basis(x)).collect();
                let mut args: Vec<&Vector<S>> = Vec::with_capacity(outer_arity);
                args.extend(singles[..i].iter());
                args.push(&inner);
                args.extend(singles[i + j..].iter());
                let v = f.apply(&args);
                res.add_scaled(&v, &-S::sign_pow(prefix));
            }
        }
        res
    }

    /// Morphism relations on every tuple of `alphabet` of length `1..=n`.
    pub fn check_relations_on(&self, n: usize, alphabet: &[usize]) -> CheckReport {
        let mut report = CheckReport::new(self.name.clone(), n);
        let bound =
            [self.arity_bound, self.source.arity_bound(), self.target.arity_bound()].into_iter().flatten().min();
        if let Some(b) = bound {
            if n > b {
                report.push(simple_item(format!("tables known only to arity {b}"), false, None));
                return report;
            }
        }
        for t in 1..=n {
            let mut res: Residuals<Vec<usize>, S> = Residuals::new();
            for a in tuples(alphabet, t) {
                let r = self.relation_residual(&a);
                res.add(a, &r, S::one());
            }
            report.push(res.into_item(format!("morphism relation, arity {t}"), Some(t), |k, v| Witness {
                inputs: k.iter().map(|&i| self.source.space().name(i).to_string()).collect(),
                residual: render_vector(v, self.target.space()),
            }));
        }
        report
    }

    /// Relations on reduced tuples plus strict unitality. When the source unit is a
    /// basis element, strict unitality of source, target and `f` makes the relations
    /// on tuples containing the unit hold automatically.
    pub fn check_structure(&self, n: usize) -> CheckReport {
        let alphabet = self.source.reduced_indices().unwrap_or_else(|_| (0..self.source.dim()).collect());
        let mut report = self.check_relations_on(n, &alphabet);
        if self.source.unit().is_some() {
            for item in self.unitality_items() {
                report.push(item);
            }
        }
        report
    }

    pub fn unitality_items(&self) -> Vec<CheckItem> {
        let mut items = Vec::new();
        let (Some(u), Some(v)) = (self.source.unit(), self.target.unit()) else {
            items.push(simple_item("source and target units", false, None));
            return items;
        };
        let mut f1u = self.eval_vectors(&[u]);
        f1u.add_scaled(v, &-S::one());
        let witness = (!f1u.is_zero())
            .then(|| Witness { inputs: vec!["1".into()], residual: render_vector(&f1u, self.target.space()) });
        items.push(simple_item("f1(1) = 1", witness.is_none(), witness));
        for (&n, f) in self.components.iter().filter(|(&n, _)| n >= 2) {
            let mut res: Residuals<(usize, Vec<usize>), S> = Residuals::new();
            for (key, val) in f.iter() {
                for slot in 0..n {
                    if let Some(c) = u.coeff(key[slot]) {
                        let mut rest = key.clone();
                        rest.remove(slot);
                        res.add((slot, rest), val, c.clone());
                    }
                }
            }
            items.push(res.into_item(format!("f{n} with a unit argument vanishes"), Some(n), |(slot, rest), val| {
                let mut inputs: Vec<String> = rest.iter().map(|&i| self.source.space().name(i).to_string()).collect();
                inputs.insert(*slot, "1".into());
                Witness { inputs, residual: render_vector(val, self.target.space()) }
            }));
        }
        items
    }
}
