use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::algebra::{validate_op, AInftyAlgebra};
use super::check::{render_vector, simple_item, CheckReport, Residuals, Witness};
use super::op::MultiOp;
use super::sign::l_span;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::{sign, Scalar};
use crate::space::{BasisElement, BigradedSpace};

/// An A∞ A–B-bimodule: `μ_{i,j}: A^{⊗i} ⊗ M ⊗ B^{⊗j} → M` of degree `1 − i − j`,
/// keys `[a₁, …, aᵢ, m, b₁, …, bⱼ]`.
#[derive(Debug, Clone)]
pub struct AInftyBimodule<S> {
    name: String,
    left: Arc<AInftyAlgebra<S>>,
    right: Arc<AInftyAlgebra<S>>,
    space: Arc<BigradedSpace>,
    ops: BTreeMap<(usize, usize), MultiOp<S>>,
    /// Tables are known for `i + j + 1 ≤ bound`.
    arity_bound: Option<usize>,
}

type Index<'a, S> = HashMap<usize, Vec<(&'a Vec<usize>, S)>>;

impl<S: Scalar> AInftyBimodule<S> {
    pub fn new(
        name: impl Into<String>,
        left: Arc<AInftyAlgebra<S>>,
        right: Arc<AInftyAlgebra<S>>,
        space: Arc<BigradedSpace>,
        ops: BTreeMap<(usize, usize), MultiOp<S>>,
        arity_bound: Option<usize>,
    ) -> Result<Self> {
        let name = name.into();
        for (&(i, j), op) in &ops {
            if op.arity() != i + j + 1 {
                return Err(Error::Invalid(format!("{name}: μ_{{{i},{j}}} table has arity {}", op.arity())));
            }
            if arity_bound.is_some_and(|b| i + j + 1 > b) {
                return Err(Error::Invalid(format!("{name}: μ_{{{i},{j}}} beyond arity bound")));
            }
            let mut slots: Vec<&BigradedSpace> = vec![left.space(); i];
            slots.push(&space);
            slots.extend(std::iter::repeat(right.space().as_ref()).take(j));
            validate_op(&format!("{name} μ{i},{j}"), op, &slots, &space, 1 - (i + j) as i32)?;
        }
        let ops = ops.into_iter().filter(|(_, op)| !op.is_empty()).collect();
        Ok(AInftyBimodule { name, left, right, space, ops, arity_bound })
    }

    /// A DG bimodule: `μ₀₀ = d`, `μ₁₀(a, m) = a·m`, `μ₀₁(m, b) = (−1)^{|m|+1} m·b`.
    pub fn from_dg(
        name: impl Into<String>,
        left: Arc<AInftyAlgebra<S>>,
        right: Arc<AInftyAlgebra<S>>,
        space: Arc<BigradedSpace>,
        differential: &BTreeMap<usize, Vector<S>>,
        left_action: &BTreeMap<(usize, usize), Vector<S>>,
        right_action: &BTreeMap<(usize, usize), Vector<S>>,
    ) -> Result<Self> {
        let mut m00 = MultiOp::new(1);
        for (&i, v) in differential {
            m00.add(vec![i], v);
        }
        let mut m10 = MultiOp::new(2);
        for (&(a, m), v) in left_action {
            m10.add(vec![a, m], v);
        }
        let mut m01 = MultiOp::new(2);
        for (&(m, b), v) in right_action {
            let s: S = sign(space.degree(m) as i64 + 1);
            m01.add(vec![m, b], &v.scaled(&s));
        }
        let ops = BTreeMap::from([((0, 0), m00), ((1, 0), m10), ((0, 1), m01)]);
        Self::new(name, left, right, space, ops, None)
    }

    /// The diagonal bimodule: `μ_{i,j}(a, b, c) = (−1)^{l_1^i(a)+1} μ_{i+j+1}(a, b, c)`.
    pub fn diagonal(algebra: Arc<AInftyAlgebra<S>>) -> Result<Self> {
        let degrees: Vec<i32> = algebra.space().basis().iter().map(|b| b.degree).collect();
        let mut ops: BTreeMap<(usize, usize), MultiOp<S>> = BTreeMap::new();
        for (&n, op) in algebra.ops() {
            for (key, val) in op.iter() {
                for i in 0..n {
                    let par = l_span(&key[..i].iter().map(|&x| degrees[x]).collect::<Vec<_>>()) ^ true;
                    ops.entry((i, n - 1 - i))
                        .or_insert_with(|| MultiOp::new(n))
                        .add(key.clone(), &val.scaled(&S::sign_pow(par)));
                }
            }
        }
        let space = algebra.space().clone();
        let bound = algebra.arity_bound();
        Self::new(format!("diag({})", algebra.name()), algebra.clone(), algebra, space, ops, bound)
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

    pub fn space(&self) -> &Arc<BigradedSpace> {
        &self.space
    }

    pub fn ops(&self) -> &BTreeMap<(usize, usize), MultiOp<S>> {
        &self.ops
    }

    pub fn op(&self, i: usize, j: usize) -> Option<&MultiOp<S>> {
        self.ops.get(&(i, j))
    }

    pub fn arity_bound(&self) -> Option<usize> {
        self.arity_bound
    }

    fn names(&self, na: usize, key: &[usize]) -> Vec<String> {
        key.iter()
            .enumerate()
            .map(|(s, &x)| {
                if s < na {
                    self.left.space().name(x)
                } else if s == na {
                    self.space.name(x)
                } else {
                    self.right.space().name(x)
                }
                .to_string()
            })
            .collect()
    }

    fn effective_bound(&self) -> Option<usize> {
        [self.arity_bound, self.left.arity_bound(), self.right.arity_bound()].into_iter().flatten().min()
    }

    /// Bimodule relations on all inputs `(a₁..aₙ, m, b₁..b_k)` with `n + k + 1 ≤ arity`.
    pub fn check_relations(&self, arity: usize) -> CheckReport {
        let mut report = CheckReport::new(self.name.clone(), arity);
        if let Some(b) = self.effective_bound() {
            if arity > b {
                report.push(simple_item(format!("tables known only to arity {b}"), false, None));
                return report;
            }
        }
        let adeg: Vec<i32> = self.left.space().basis().iter().map(|b| b.degree).collect();
        let bdeg: Vec<i32> = self.right.space().basis().iter().map(|b| b.degree).collect();
        let inner_a: BTreeMap<usize, Index<S>> = self.left.ops().iter().map(|(&j, op)| (j, op.by_output())).collect();
        let inner_b: BTreeMap<usize, Index<S>> = self.right.ops().iter().map(|(&j, op)| (j, op.by_output())).collect();
        let inner_m: BTreeMap<(usize, usize), Index<S>> = self.ops.iter().map(|(&k, op)| (k, op.by_output())).collect();
        let mut per_arity: BTreeMap<usize, Residuals<(usize, Vec<usize>), S>> =
            (1..=arity).map(|t| (t, Residuals::new())).collect();
        let splice = |key: &[usize], s: usize, ins: &[usize]| {
            let mut full = key[..s].to_vec();
            full.extend_from_slice(ins);
            full.extend_from_slice(&key[s + 1..]);
            full
        };
        for (&(p, q), outer) in &self.ops {
            let outer_arity = p + q + 1;
            if outer_arity > arity {
                continue;
            }
            for (key, val) in outer.iter() {
                let m_deg = self.space.degree(key[p]);
                // μ^A inside an a-slot
                let mut prefix = false;
                for s in 0..p {
                    if s > 0 {
                        prefix ^= (adeg[key[s - 1]] + 1).rem_euclid(2) == 1;
                    }
                    for (&j, index) in &inner_a {
                        let total = outer_arity + j - 1;
                        if total > arity {
                            break;
                        }
                        let Some(hits) = index.get(&key[s]) else { continue };
                        let res = per_arity.get_mut(&total).unwrap();
                        for (ikey, c) in hits {
                            res.add((p + j - 1, splice(key, s, ikey)), val, S::sign_pow(prefix) * c.clone());
                        }
                    }
                }
                // μ^M inside the m-slot, signed by the outer a's
                let outer_a = l_span(&key[..p].iter().map(|&x| adeg[x]).collect::<Vec<_>>());
                for (&(p2, q2), index) in &inner_m {
                    let total = outer_arity + p2 + q2;
                    if total > arity {
                        continue;
                    }
                    let Some(hits) = index.get(&key[p]) else { continue };
                    let res = per_arity.get_mut(&total).unwrap();
                    for (ikey, c) in hits {
                        res.add((p + p2, splice(key, p, ikey)), val, S::sign_pow(outer_a) * c.clone());
                    }
                }
                // μ^B inside a b-slot
                let mut prefix = outer_a ^ (m_deg.rem_euclid(2) == 1);
                for s in 0..q {
                    let slot = p + 1 + s;
                    if s > 0 {
                        prefix ^= (bdeg[key[slot - 1]] + 1).rem_euclid(2) == 1;
                    }
                    for (&j, index) in &inner_b {
                        let total = outer_arity + j - 1;
                        if total > arity {
                            break;
                        }
                        let Some(hits) = index.get(&key[slot]) else { continue };
                        let res = per_arity.get_mut(&total).unwrap();
                        for (ikey, c) in hits {
                            res.add((p, splice(key, slot, ikey)), val, S::sign_pow(prefix) * c.clone());
                        }
                    }
                }
            }
        }
        for (t, res) in per_arity {
            report.push(res.into_item(format!("bimodule relation, arity {t}"), Some(t), |(na, k), v| Witness {
                inputs: self.names(*na, k),
                residual: render_vector(v, &self.space),
            }));
        }
        report
    }

    pub fn check_unitality(&self) -> CheckReport {
        let mut report = CheckReport::new(format!("{} unitality", self.name), 0);
        let (Some(ua), Some(ub)) = (self.left.unit(), self.right.unit()) else {
            report.push(simple_item("algebra units", false, None));
            return report;
        };
        let mut left = Residuals::new();
        let mut right = Residuals::new();
        for m in 0..self.space.dim() {
            let e = Vector::basis(m);
            let mut l = self.op(1, 0).map(|op| op.apply(&[ua, &e])).unwrap_or_default();
            l.add_term(m, -S::one());
            left.add(vec![m], &l, S::one());
            let mut r = self.op(0, 1).map(|op| op.apply(&[&e, ub])).unwrap_or_default();
            r.add_term(m, -sign::<S>(self.space.degree(m) as i64 + 1));
            right.add(vec![m], &r, S::one());
        }
        let describe = |k: &Vec<usize>, v: &Vector<S>| Witness {
            inputs: vec![self.space.name(k[0]).to_string()],
            residual: render_vector(v, &self.space),
        };
        report.push(left.into_item("μ1,0(1, m) = m", Some(2), describe));
        report.push(right.into_item("μ0,1(m, 1) = (−1)^{|m|+1} m", Some(2), describe));
        let mut res: Residuals<(usize, usize, Vec<usize>), S> = Residuals::new();
        for (&(i, j), op) in self.ops.iter().filter(|(&(i, j), _)| i + j >= 2) {
            for (key, val) in op.iter() {
                for slot in (0..i).chain(i + 1..i + j + 1) {
                    let u = if slot < i { ua } else { ub };
                    if let Some(c) = u.coeff(key[slot]) {
                        let mut rest = key.clone();
                        rest.remove(slot);
                        res.add((i, slot, rest), val, c.clone());
                    }
                }
            }
        }
        report.push(res.into_item("μi,j (i+j ≥ 2) with a unit argument vanishes", None, |(i, slot, rest), v| {
            let na = if slot < i { i - 1 } else { *i };
            let mut inputs = self.names(na, rest);
            inputs.insert(*slot, "1".into());
            Witness { inputs, residual: render_vector(v, &self.space) }
        }));
        report
    }

    pub fn check_structure(&self, arity: usize) -> CheckReport {
        let mut r = self.check_relations(arity);
        r.extend(self.check_unitality());
        r
    }

    /// The glued algebra on `A ⊕ B ⊕ M` with unit `1_A + 1_B`; bimodule entries enter
    /// as `(−1)^{l_1^i(a)+1} μ_{i,j}(a, m, b)`. Colliding basis names get `_A`, `_B`, `_M` suffixes.
    pub fn glue(&self) -> Result<AInftyAlgebra<S>> {
        let (sa, sb, sm) = (self.left.space(), self.right.space(), &self.space);
        let (na, nb) = (sa.dim(), sb.dim());
        let mut count: HashMap<&str, usize> = HashMap::new();
        for s in [sa, sb, sm] {
            for b in s.basis() {
                *count.entry(b.name.as_str()).or_default() += 1;
            }
        }
        let mut basis = Vec::with_capacity(na + nb + sm.dim());
        for (s, tag) in [(sa, "A"), (sb, "B"), (sm, "M")] {
            for b in s.basis() {
                let name = if count[b.name.as_str()] > 1 { format!("{}_{tag}", b.name) } else { b.name.clone() };
                basis.push(BasisElement { name, ..b.clone() });
            }
        }
        let space = Arc::new(BigradedSpace::new(basis)?);
        let shift = |v: &Vector<S>, by: usize| v.remap(|i| Some(i + by));
        let mut ops: BTreeMap<usize, MultiOp<S>> = BTreeMap::new();
        for (&n, op) in self.left.ops() {
            let e = ops.entry(n).or_insert_with(|| MultiOp::new(n));
            for (k, v) in op.iter() {
                e.add(k.clone(), v);
            }
        }
        for (&n, op) in self.right.ops() {
            let e = ops.entry(n).or_insert_with(|| MultiOp::new(n));
            for (k, v) in op.iter() {
                e.add(k.iter().map(|&i| i + na).collect(), &shift(v, na));
            }
        }
        let adeg: Vec<i32> = sa.basis().iter().map(|b| b.degree).collect();
        for (&(i, j), op) in &self.ops {
            let n = i + j + 1;
            let e = ops.entry(n).or_insert_with(|| MultiOp::new(n));
            for (k, v) in op.iter() {
                let par = l_span(&k[..i].iter().map(|&x| adeg[x]).collect::<Vec<_>>()) ^ true;
                let key: Vec<usize> = k
                    .iter()
                    .enumerate()
                    .map(|(s, &x)| {
                        if s < i {
                            x
                        } else if s == i {
                            x + na + nb
                        } else {
                            x + na
                        }
                    })
                    .collect();
                e.add(key, &shift(v, na + nb).scaled(&S::sign_pow(par)));
            }
        }
        let unit = match (self.left.unit(), self.right.unit()) {
            (Some(u), Some(v)) => {
                let mut w = u.clone();
                w.add(&shift(v, na));
                Some(w)
            }
            _ => None,
        };
        let bound = self.effective_bound();
        AInftyAlgebra::new(
            format!("glue({}; {}, {})", self.name, self.left.name(), self.right.name()),
            space,
            unit,
            ops,
            bound,
        )
    }
}
