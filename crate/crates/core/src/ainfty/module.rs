use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::algebra::{validate_op, AInftyAlgebra};
use super::check::{render_vector, simple_item, CheckReport, Residuals, Witness};
use super::op::MultiOp;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::{sign, Scalar};
use crate::space::BigradedSpace;

/// A right A∞-module: `μₙ^M: M ⊗ A^{⊗(n−1)} → M` of degree `2 − n`, keys `[m, a₁, …]`.
#[derive(Debug, Clone)]
pub struct AInftyModule<S> {
    name: String,
    algebra: Arc<AInftyAlgebra<S>>,
    space: Arc<BigradedSpace>,
    ops: BTreeMap<usize, MultiOp<S>>,
}

impl<S: Scalar> AInftyModule<S> {
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<AInftyAlgebra<S>>,
        space: Arc<BigradedSpace>,
        ops: BTreeMap<usize, MultiOp<S>>,
    ) -> Result<Self> {
        let name = name.into();
        for (&n, op) in &ops {
            if n == 0 || op.arity() != n {
                return Err(Error::Invalid(format!("{name}: table under {n} has arity {}", op.arity())));
            }
            let mut slots = vec![space.as_ref()];
            slots.extend(std::iter::repeat(algebra.space().as_ref()).take(n - 1));
            validate_op(&format!("{name} μ{n}"), op, &slots, &space, 2 - n as i32)?;
        }
        let ops = ops.into_iter().filter(|(_, op)| !op.is_empty()).collect();
        Ok(AInftyModule { name, algebra, space, ops })
    }

    /// A right DG module: `μ₁ = d`, `μ₂(m, a) = (−1)^{|m|+1} m·a`.
    pub fn from_dg(
        name: impl Into<String>,
        algebra: Arc<AInftyAlgebra<S>>,
        space: Arc<BigradedSpace>,
        differential: &BTreeMap<usize, Vector<S>>,
        action: &BTreeMap<(usize, usize), Vector<S>>,
    ) -> Result<Self> {
        let mut mu1 = MultiOp::new(1);
        for (&i, v) in differential {
            mu1.add(vec![i], v);
        }
        let mut mu2 = MultiOp::new(2);
        for (&(m, a), v) in action {
            let s: S = sign(space.degree(m) as i64 + 1);
            mu2.add(vec![m, a], &v.scaled(&s));
        }
        Self::new(name, algebra, space, BTreeMap::from([(1, mu1), (2, mu2)]))
    }

    /// The one-dimensional module `k = k·z` (degree 0, weight 0) on which the reduced part acts by zero.
    pub fn augmentation(algebra: Arc<AInftyAlgebra<S>>) -> Result<Self> {
        let unit = algebra
            .unit_index()
            .ok_or_else(|| Error::Invalid("augmentation module needs a basis-element unit".into()))?;
        let space = Arc::new(BigradedSpace::from_triples([("z", 0, 0)])?);
        let action = BTreeMap::from([((0, unit), Vector::basis(0))]);
        Self::from_dg("k", algebra, space, &BTreeMap::new(), &action)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<AInftyAlgebra<S>> {
        &self.algebra
    }

    pub fn space(&self) -> &Arc<BigradedSpace> {
        &self.space
    }

    pub fn ops(&self) -> &BTreeMap<usize, MultiOp<S>> {
        &self.ops
    }

    pub fn op(&self, n: usize) -> Option<&MultiOp<S>> {
        self.ops.get(&n)
    }

    fn names(&self, key: &[usize]) -> Vec<String> {
        let mut out = vec![self.space.name(key[0]).to_string()];
        out.extend(key[1..].iter().map(|&i| self.algebra.space().name(i).to_string()));
        out
    }

    /// Module relations on all inputs `(m, a₁, …, aₙ)` with `n + 1 ≤ arity`.
    pub fn check_relations(&self, arity: usize) -> CheckReport {
        let mut report = CheckReport::new(self.name.clone(), arity);
        if let Some(b) = self.algebra.arity_bound() {
            if arity > b {
                report.push(simple_item(format!("algebra known only to arity {b}"), false, None));
                return report;
            }
        }
        let adeg: Vec<i32> = self.algebra.space().basis().iter().map(|b| b.degree).collect();
        let inner_m: BTreeMap<usize, HashMap<usize, Vec<(&Vec<usize>, S)>>> =
            self.ops.iter().map(|(&j, op)| (j, op.by_output())).collect();
        let inner_a: BTreeMap<usize, HashMap<usize, Vec<(&Vec<usize>, S)>>> =
            self.algebra.ops().iter().map(|(&j, op)| (j, op.by_output())).collect();
        for total in 1..=arity {
            let mut res: Residuals<Vec<usize>, S> = Residuals::new();
            for (&q, index) in &inner_m {
                if q > total {
                    break;
                }
                let Some(outer) = self.ops.get(&(total - q + 1)) else { continue };
                for (key, val) in outer.iter() {
                    let Some(hits) = index.get(&key[0]) else { continue };
                    for (ikey, c) in hits {
                        let mut full = (*ikey).clone();
                        full.extend_from_slice(&key[1..]);
                        res.add(full, val, c.clone());
                    }
                }
            }
            for (&j, index) in &inner_a {
                if j >= total {
                    break;
                }
                let Some(outer) = self.ops.get(&(total - j + 1)) else { continue };
                for (key, val) in outer.iter() {
                    let mut par = (self.space.degree(key[0])).rem_euclid(2) == 1;
                    for s in 1..key.len() {
                        if s > 1 {
                            par ^= (adeg[key[s - 1]] + 1).rem_euclid(2) == 1;
                        }
                        let Some(hits) = index.get(&key[s]) else { continue };
                        for (ikey, c) in hits {
                            let mut full = key[..s].to_vec();
                            full.extend_from_slice(ikey);
                            full.extend_from_slice(&key[s + 1..]);
                            res.add(full, val, S::sign_pow(par) * c.clone());
                        }
                    }
                }
            }
            report.push(res.into_item(format!("module relation, arity {total}"), Some(total), |k, v| Witness {
                inputs: self.names(k),
                residual: render_vector(v, &self.space),
            }));
        }
        report
    }

    /// `μ₂(m, 1) = (−1)^{|m|+1} m` and higher operations vanish on a unit argument.
    pub fn check_unitality(&self) -> CheckReport {
        let mut report = CheckReport::new(format!("{} unitality", self.name), 0);
        let Some(u) = self.algebra.unit() else {
            report.push(simple_item("algebra unit", false, None));
            return report;
        };
        let mut res: Residuals<Vec<usize>, S> = Residuals::new();
        for m in 0..self.space.dim() {
            let e = Vector::basis(m);
            let mut r = self.ops.get(&2).map(|op| op.apply(&[&e, u])).unwrap_or_default();
            r.add_term(m, -sign::<S>(self.space.degree(m) as i64 + 1));
            res.add(vec![m], &r, S::one());
        }
        report.push(res.into_item("μ2(m, 1) = (−1)^{|m|+1} m", Some(2), |k, v| Witness {
            inputs: vec![self.space.name(k[0]).to_string(), "1".into()],
            residual: render_vector(v, &self.space),
        }));
        for (&n, op) in self.ops.iter().filter(|(&n, _)| n >= 3) {
            let mut res: Residuals<(usize, Vec<usize>), S> = Residuals::new();
            for (key, val) in op.iter() {
                for slot in 1..n {
                    if let Some(c) = u.coeff(key[slot]) {
                        let mut rest = key.clone();
                        rest.remove(slot);
                        res.add((slot, rest), val, c.clone());
                    }
                }
            }
            report.push(res.into_item(format!("μ{n} with a unit argument vanishes"), Some(n), |(slot, rest), v| {
                let mut inputs = self.names(rest);
                inputs.insert(*slot, "1".into());
                Witness { inputs, residual: render_vector(v, &self.space) }
            }));
        }
        report
    }

    pub fn check_structure(&self, arity: usize) -> CheckReport {
        let mut r = self.check_relations(arity);
        r.extend(self.check_unitality());
        r
    }
}
