use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::check::{render_vector, simple_item, CheckItem, CheckReport, Residuals, Witness};
use super::op::MultiOp;
use super::sign::reversal_parity;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::{sign, Scalar};
use crate::space::BigradedSpace;

/// A (strictly unital, when `unit` is set) A∞-algebra with sparse operation tables.
///
/// `arity_bound = None` means the stored tables are complete: every μₙ not stored
/// is zero. `Some(N)` means the tables are only known up to arity N.
#[derive(Debug, Clone)]
pub struct AInftyAlgebra<S> {
    name: String,
    space: Arc<BigradedSpace>,
    unit: Option<Vector<S>>,
    ops: BTreeMap<usize, MultiOp<S>>,
    arity_bound: Option<usize>,
}

/// Which sign normalization an opposite algebra was built with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OppositeConvention {
    /// `μₙ^op(a₁,…,aₙ) = (−1)^σ μₙ(aₙ,…,a₁)`.
    Literal,
    /// `μₙ^op(a₁,…,aₙ) = −(−1)^σ μₙ(aₙ,…,a₁)`.
    Negated,
}

/// Checks that every entry of `op` is homogeneous of the given degree and weight 0.
pub(crate) fn validate_op<S: Scalar>(
    what: &str,
    op: &MultiOp<S>,
    slots: &[&BigradedSpace],
    out: &BigradedSpace,
    degree: i32,
) -> Result<()> {
    if slots.len() != op.arity() {
        return Err(Error::Dimension(format!("{what}: {} slot spaces for arity {}", slots.len(), op.arity())));
    }
    for (key, val) in op.iter() {
        let mut d = degree;
        let mut w = 0;
        for (slot, &i) in key.iter().enumerate() {
            if i >= slots[slot].dim() {
                return Err(Error::Dimension(format!("{what}: index {i} outside slot {slot}")));
            }
            d += slots[slot].degree(i);
            w += slots[slot].weight(i);
        }
        for (o, _) in val.iter() {
            if o >= out.dim() {
                return Err(Error::Dimension(format!("{what}: output index {o} outside target")));
            }
            if out.degree(o) != d || out.weight(o) != w {
                let names: Vec<&str> = key.iter().enumerate().map(|(s, &i)| slots[s].name(i)).collect();
                return Err(Error::Invalid(format!(
                    "{what}({}) has a term {} of bidegree ({}, {}), expected ({d}, {w})",
                    names.join(","),
                    out.name(o),
                    out.degree(o),
                    out.weight(o)
                )));
            }
        }
    }
    Ok(())
}

impl<S: Scalar> AInftyAlgebra<S> {
    pub fn new(
        name: impl Into<String>,
        space: Arc<BigradedSpace>,
        unit: Option<Vector<S>>,
        ops: BTreeMap<usize, MultiOp<S>>,
        arity_bound: Option<usize>,
    ) -> Result<Self> {
        let name = name.into();
        for (&n, op) in &ops {
            if n == 0 || op.arity() != n {
                return Err(Error::Invalid(format!("{name}: table stored under arity {n} has arity {}", op.arity())));
            }
            if let Some(b) = arity_bound {
                if n > b {
                    return Err(Error::Invalid(format!("{name}: μ{n} stored beyond arity bound {b}")));
                }
            }
            let slots = vec![space.as_ref(); n];
            validate_op(&format!("{name} μ{n}"), op, &slots, &space, 2 - n as i32)?;
        }
        if let Some(u) = &unit {
            for (i, _) in u.iter() {
                if i >= space.dim() || space.degree(i) != 0 || space.weight(i) != 0 {
                    return Err(Error::Invalid(format!("{name}: unit must live in bidegree (0, 0)")));
                }
            }
        }
        let ops = ops.into_iter().filter(|(_, op)| !op.is_empty()).collect();
        Ok(AInftyAlgebra { name, space, unit, ops, arity_bound })
    }

    /// Builds the A∞-algebra of a DG algebra: `μ₁ = −d`, `μ₂(a, b) = (−1)^{|a|} ab`.
    ///
    /// `differential[i]` is `d(eᵢ)` and `products[(i, j)]` is `eᵢ·eⱼ`; absent entries are zero.
    /// The A∞ relations through arity 3 (d² = 0, Leibniz, associativity) are verified.
    pub fn from_dg(
        name: impl Into<String>,
        space: Arc<BigradedSpace>,
        unit: Option<Vector<S>>,
        differential: &BTreeMap<usize, Vector<S>>,
        products: &BTreeMap<(usize, usize), Vector<S>>,
    ) -> Result<Self> {
        let mut mu1 = MultiOp::new(1);
        for (&i, v) in differential {
            mu1.add(vec![i], &v.negated());
        }
        let mut mu2 = MultiOp::new(2);
        for (&(i, j), v) in products {
            if i >= space.dim() {
                return Err(Error::Dimension(format!("product index {i} outside basis")));
            }
            let s: S = sign(space.degree(i) as i64);
            mu2.add(vec![i, j], &v.scaled(&s));
        }
        let ops = BTreeMap::from([(1, mu1), (2, mu2)]);
        let alg = Self::new(name, space, unit, ops, None)?;
        let report = alg.check_relations(3);
        if let Some(f) = report.first_failure() {
            return Err(Error::Structure(format!(
                "{}: {} fails on {:?}",
                alg.name,
                f.name,
                f.witness.as_ref().map(|w| w.inputs.clone()).unwrap_or_default()
            )));
        }
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn space(&self) -> &Arc<BigradedSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn unit(&self) -> Option<&Vector<S>> {
        self.unit.as_ref()
    }

    /// The unit as a single basis index, when it is one.
    pub fn unit_index(&self) -> Option<usize> {
        let u = self.unit.as_ref()?;
        match u.leading() {
            Some((i, c)) if u.nnz() == 1 && c.is_one() => Some(i),
            _ => None,
        }
    }

    /// Basis indices spanning a complement of the unit (requires a basis-element unit).
    pub fn reduced_indices(&self) -> Result<Vec<usize>> {
        match (&self.unit, self.unit_index()) {
            (None, _) => Ok((0..self.dim()).collect()),
            (Some(_), Some(u)) => Ok((0..self.dim()).filter(|&i| i != u).collect()),
            (Some(_), None) => Err(Error::Invalid(format!("{}: unit is not a basis element", self.name))),
        }
    }

    pub fn ops(&self) -> &BTreeMap<usize, MultiOp<S>> {
        &self.ops
    }

    pub fn op(&self, n: usize) -> Option<&MultiOp<S>> {
        self.ops.get(&n)
    }

    pub fn arity_bound(&self) -> Option<usize> {
        self.arity_bound
    }

    pub fn max_stored_arity(&self) -> usize {
        self.ops.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_minimal(&self) -> bool {
        !self.ops.contains_key(&1)
    }

    /// True when μₙ = 0 for every n ≥ 3 and the tables are complete.
    pub fn is_dg(&self) -> bool {
        self.arity_bound.is_none() && self.max_stored_arity() <= 2
    }

    /// `μₙ(e_{key})`, zero when absent.
    pub fn mu(&self, key: &[usize]) -> Vector<S> {
        self.ops.get(&key.len()).map(|op| op.eval(key)).unwrap_or_default()
    }

    pub fn mu_vectors(&self, args: &[&Vector<S>]) -> Vector<S> {
        self.ops.get(&args.len()).map(|op| op.apply(args)).unwrap_or_default()
    }

    /// Recovers `(d, product)` of a DG algebra from `μ₁, μ₂`.
    pub fn dg_parts(&self) -> Result<(BTreeMap<usize, Vector<S>>, BTreeMap<(usize, usize), Vector<S>>)> {
        if !self.is_dg() {
            return Err(Error::Invalid(format!("{} has higher operations", self.name)));
        }
        let mut d = BTreeMap::new();
        if let Some(mu1) = self.ops.get(&1) {
            for (k, v) in mu1.iter() {
                d.insert(k[0], v.negated());
            }
        }
        let mut p = BTreeMap::new();
        if let Some(mu2) = self.ops.get(&2) {
            for (k, v) in mu2.iter() {
                let s: S = sign(self.space.degree(k[0]) as i64);
                p.insert((k[0], k[1]), v.scaled(&s));
            }
        }
        Ok((d, p))
    }

    fn names(&self, key: &[usize]) -> Vec<String> {
        key.iter().map(|&i| self.space.name(i).to_string()).collect()
    }

    /// Evaluates the A∞ relations on every basis tuple of length `1..=n`.
    ///
    /// Only tuples on which some composite term is nonzero are materialized; every
    /// other tuple has residual zero, so this is equivalent to the exhaustive check.
    pub fn check_relations(&self, n: usize) -> CheckReport {
        let mut report = CheckReport::new(self.name.clone(), n);
        if let Some(b) = self.arity_bound {
            if n > b {
                report.push(simple_item(
                    format!("tables known only to arity {b}"),
                    false,
                    Some(Witness { inputs: vec![format!("requested arity {n}")], residual: vec![] }),
                ));
                return report;
            }
        }
        let degrees: Vec<i32> = self.space.basis().iter().map(|b| b.degree).collect();
        let inner: BTreeMap<usize, HashMap<usize, Vec<(&Vec<usize>, S)>>> =
            self.ops.iter().map(|(&j, op)| (j, op.by_output())).collect();
        for total in 1..=n {
            let mut res: Residuals<Vec<usize>, S> = Residuals::new();
            for (&j, index) in &inner {
                if j > total {
                    break;
                }
                let outer_arity = total - j + 1;
                let Some(outer) = self.ops.get(&outer_arity) else { continue };
                for (key, val) in outer.iter() {
                    let mut prefix = false;
                    for pos in 0..outer_arity {
                        if pos > 0 {
                            prefix ^= (degrees[key[pos - 1]] + 1).rem_euclid(2) == 1;
                        }
                        let Some(hits) = index.get(&key[pos]) else { continue };
                        for (ikey, c) in hits {
                            let mut full = Vec::with_capacity(total);
                            full.extend_from_slice(&key[..pos]);
                            full.extend_from_slice(ikey);
                            full.extend_from_slice(&key[pos + 1..]);
                            let s: S = S::sign_pow(prefix) * c.clone();
                            res.add(full, val, s);
                        }
                    }
                }
            }
            report.push(res.into_item(format!("A∞ relation, arity {total}"), Some(total), |k, v| Witness {
                inputs: self.names(k),
                residual: render_vector(v, &self.space),
            }));
        }
        report
    }

    /// Strict unitality: μ₁(1) = 0, μ₂(1, a) = a = (−1)^{|a|} μ₂(a, 1), and μₙ (n ≥ 3)
    /// vanishes whenever an argument is the unit.
    pub fn check_unitality(&self) -> CheckReport {
        let mut report = CheckReport::new(format!("{} unitality", self.name), self.max_stored_arity());
        let Some(u) = &self.unit else {
            report.push(simple_item("no unit", false, None));
            return report;
        };
        report.push(unit_slot_item(self, u, 1));
        let mut left = Residuals::new();
        let mut right = Residuals::new();
        for a in 0..self.dim() {
            let e = Vector::basis(a);
            let mut l = self.mu_vectors(&[u, &e]);
            l.add_term(a, -S::one());
            left.add(vec![a], &l, S::one());
            let mut r = self.mu_vectors(&[&e, u]);
            let s: S = sign(self.space.degree(a) as i64);
            r.add_term(a, -s);
            right.add(vec![a], &r, S::one());
        }
        let describe =
            |k: &Vec<usize>, v: &Vector<S>| Witness { inputs: self.names(k), residual: render_vector(v, &self.space) };
        report.push(left.into_item("μ₂(1, a) = a", Some(2), describe));
        report.push(right.into_item("μ₂(a, 1) = (−1)^|a| a", Some(2), describe));
        for &n in self.ops.keys().filter(|&&n| n >= 3) {
            report.push(unit_slot_item(self, u, n));
        }
        report
    }

    /// Relations to arity `n` plus strict unitality when a unit is designated.
    pub fn check_structure(&self, n: usize) -> CheckReport {
        let mut report = self.check_relations(n);
        if self.unit.is_some() {
            report.extend(self.check_unitality());
        }
        report
    }

    pub fn opposite_with(&self, convention: OppositeConvention) -> Self {
        let degrees: Vec<i32> = self.space.basis().iter().map(|b| b.degree).collect();
        let ops = self
            .ops
            .iter()
            .map(|(&n, op)| {
                let new = op.map_entries(n, |k, v| {
                    let rev: Vec<usize> = k.iter().rev().copied().collect();
                    let degs: Vec<i32> = rev.iter().map(|&i| degrees[i]).collect();
                    let par = reversal_parity(&degs) ^ (convention == OppositeConvention::Negated);
                    Some((rev, v.scaled(&S::sign_pow(par))))
                });
                (n, new)
            })
            .collect();
        AInftyAlgebra {
            name: format!("{}^op", self.name),
            space: self.space.clone(),
            unit: self.unit.clone(),
            ops,
            arity_bound: self.arity_bound,
        }
    }

    /// The opposite algebra. The literal sign is tried first; if the result fails the
    /// checker at arity `n` the globally negated sign is used instead. Both outcomes
    /// are reported.
    pub fn opposite(&self, n: usize) -> Result<(Self, OppositeConvention, Vec<CheckReport>)> {
        let mut reports = Vec::new();
        for conv in [OppositeConvention::Literal, OppositeConvention::Negated] {
            let op = self.opposite_with(conv);
            let report = op.check_structure(n);
            let ok = report.passed;
            reports.push(report);
            if ok {
                return Ok((op, conv, reports));
            }
        }
        let why = reports.iter().map(|r| r.summary()).collect::<Vec<_>>().join("; ");
        Err(Error::Structure(format!("no opposite sign convention passes: {why}")))
    }

    /// Same tables with all weights multiplied by `factor`.
    pub fn reweighted(&self, factor: i32) -> Self {
        AInftyAlgebra { space: Arc::new(self.space.reweighted(factor)), ..self.clone() }
    }

    /// Replaces the arity bound (used when tables are truncated copies of a larger structure).
    pub fn with_arity_bound(mut self, bound: Option<usize>) -> Self {
        self.arity_bound = bound;
        self
    }
}

/// μₙ with the unit substituted into each slot must vanish (n ≠ 2); for n = 1 this is μ₁(1) = 0.
fn unit_slot_item<S: Scalar>(alg: &AInftyAlgebra<S>, u: &Vector<S>, n: usize) -> CheckItem {
    let mut res: Residuals<(usize, Vec<usize>), S> = Residuals::new();
    if let Some(op) = alg.op(n) {
        for (key, val) in op.iter() {
            for slot in 0..n {
                if let Some(c) = u.coeff(key[slot]) {
                    let mut rest = key.clone();
                    rest.remove(slot);
                    res.add((slot, rest), val, c.clone());
                }
            }
        }
    }
    res.into_item(format!("μ{n} with a unit argument vanishes"), Some(n), |(slot, rest), v| {
        let mut inputs: Vec<String> = rest.iter().map(|&i| alg.space().name(i).to_string()).collect();
        inputs.insert(*slot, "1".into());
        Witness { inputs, residual: render_vector(v, alg.space()) }
    })
}
