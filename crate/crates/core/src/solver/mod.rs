//! Arity-by-arity construction of an A∞-morphism `g: k[x]/x⁶ → End^∞_{k[y]/y³}(k)`.

mod end;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use end::{end_complex_of_k, EndOfK};

use crate::ainfty::{AInftyAlgebra, AInftyMorphism, CheckReport, MultiOp};
use crate::catalog::{make_algebra, CatalogKey};
use crate::certificate::{Certificate, Check};
use crate::error::{Error, Result};
use crate::ext::cohomology_of_c;
use crate::linalg::{solve_rows, LinearSolution, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SolverConfig {
    pub weight_bound: usize,
    pub length_bound: usize,
    /// `g₁(x) = c·ε`.
    pub normalization: i64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { weight_bound: 12, length_bound: 8, normalization: 1 }
    }
}

/// `g₁, …, gₙ` with `n = arity`.
#[derive(Debug, Clone)]
pub struct MorphismPrefix<S> {
    pub source: Arc<AInftyAlgebra<S>>,
    pub target: Arc<AInftyAlgebra<S>>,
    pub components: BTreeMap<usize, MultiOp<S>>,
    pub arity: usize,
}

impl<S: Scalar> MorphismPrefix<S> {
    /// The prefix as a morphism whose relations are meaningful up to `bound`.
    pub fn to_morphism(&self, bound: usize) -> Result<AInftyMorphism<S>> {
        let comps = self.components.iter().filter(|(&n, _)| n <= bound).map(|(&n, f)| (n, f.clone())).collect();
        AInftyMorphism::new("g", self.source.clone(), self.target.clone(), comps, Some(bound))
    }

    pub fn check(&self) -> Result<CheckReport> {
        Ok(self.to_morphism(self.arity)?.check_structure(self.arity))
    }

    pub fn term_counts(&self) -> BTreeMap<usize, usize> {
        self.components.iter().map(|(&n, f)| (n, f.len())).collect()
    }
}

/// The source `k[x]/x⁶`, `|x| = 0`, `w(x) = 1`.
pub fn source_algebra<S: Scalar>() -> Result<Arc<AInftyAlgebra<S>>> {
    Ok(Arc::new(make_algebra(&CatalogKey::TruncatedPoly(6))?))
}

/// `g₁(1) = id`, `g₁(xᵏ) = cᵏ εᵏ`.
pub fn prescribe_g1<S: Scalar>(end: &EndOfK<S>, c: &S) -> Result<MorphismPrefix<S>> {
    let source = source_algebra()?;
    let eps = end.epsilon()?;
    let mut power = end.identity()?;
    let mut coeff = S::one();
    let mut g1 = MultiOp::new(1);
    let s = source.space();
    for k in 0..s.dim() {
        let name = if k == 0 {
            "1".to_string()
        } else if k == 1 {
            "x".into()
        } else {
            format!("x{k}")
        };
        let i = s.require(&name)?;
        if s.weight(i) as usize > end.bounds().0 {
            break;
        }
        g1.add(vec![i], &power.scaled(&coeff));
        power = end.product(&power, &eps);
        coeff = coeff * c.clone();
    }
    Ok(MorphismPrefix { source, target: end.algebra.clone(), components: BTreeMap::from([(1, g1)]), arity: 1 })
}

/// Reduced tuples of length `n` with total weight ≤ `max_weight`.
pub fn reduced_tuples<S: Scalar>(a: &AInftyAlgebra<S>, n: usize, max_weight: usize) -> Result<Vec<Vec<usize>>> {
    let alphabet = a.reduced_indices()?;
    let s = a.space();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go<F: Fn(usize) -> usize>(
        alphabet: &[usize],
        w: &F,
        n: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for &x in alphabet {
            if w(x) <= left {
                cur.push(x);
                go(alphabet, w, n, left - w(x), cur, out);
                cur.pop();
            }
        }
    }
    let w = |x: usize| s.weight(x).unsigned_abs() as usize;
    go(&alphabet, &w, n, max_weight, &mut cur, &mut out);
    Ok(out)
}

fn tuple_weight<S: Scalar>(a: &AInftyAlgebra<S>, t: &[usize]) -> i32 {
    t.iter().map(|&x| a.space().weight(x)).sum()
}

/// The linear system for the step `gₙ → gₙ₊₁`: unknowns `Δgₙ(b) = Σ Y_{b,r} z_r` over cohomology
/// representatives `z_r`, one equation per class coordinate of the residual on each `(n+1)`-tuple.
#[derive(Debug, Clone)]
pub struct ObstructionSystem<S> {
    /// The arity `n` being corrected; `gₙ₊₁` is built afterwards.
    pub arity: usize,
    pub unknowns: Vec<(Vec<usize>, Vector<S>)>,
    pub row_labels: Vec<(Vec<usize>, usize)>,
    pub rows: Vec<Vector<S>>,
    pub rhs: Vec<S>,
}

impl<S: Scalar> ObstructionSystem<S> {
    pub fn solve(&self) -> Result<std::result::Result<Vector<S>, Vector<S>>> {
        Ok(match solve_rows(self.unknowns.len(), &self.rows, &self.rhs)? {
            LinearSolution::Solution(y) => Ok(y),
            LinearSolution::Inconsistent(w) => Err(w),
        })
    }

    /// True iff `w` certifies inconsistency: `wᵀ·rows = 0` and `wᵀ·rhs ≠ 0`.
    pub fn is_witness(&self, w: &Vector<S>) -> bool {
        let mut comb = Vector::zero();
        let mut val = S::zero();
        for (i, c) in w.iter() {
            comb.add_scaled(&self.rows[i], c);
            val += c.clone() * self.rhs[i].clone();
        }
        comb.is_zero() && !val.is_zero()
    }
}

/// `L(Δ)(a) = μ₂(g₁(a₀), Δ(a₁…)) + μ₂(Δ(…aₙ₋₁), g₁(aₙ)) − Σᵢ (−1)ⁱ Δ(…, aᵢaᵢ₊₁, …)` for `Δ`
/// supported on the single tuple `b` with value `z`.
fn linear_term<S: Scalar>(prefix: &MorphismPrefix<S>, a: &[usize], b: &[usize], z: &Vector<S>) -> Vector<S> {
    let g1 = &prefix.components[&1];
    let e = &prefix.target;
    let n = a.len() - 1;
    let mut out = Vector::zero();
    if &a[1..] == b {
        out.add(&e.mu_vectors(&[&g1.eval(&a[..1]), z]));
    }
    if &a[..n] == b {
        out.add(&e.mu_vectors(&[z, &g1.eval(&a[n..])]));
    }
    for i in 0..n {
        if a[..i] != b[..i] || a[i + 2..] != b[i + 1..] {
            continue;
        }
        let prod = prefix.source.mu(&a[i..i + 2]);
        if let Some(c) = prod.coeff(b[i]) {
            out.add_scaled(z, &(-S::sign_pow(i % 2 == 1) * c.clone()));
        }
    }
    out
}

/// Assembles the system that corrects `gₙ` (n ≥ 2) so that every `(n+1)`-residual is exact.
pub fn assemble_obstruction<S: Scalar>(end: &EndOfK<S>, prefix: &MorphismPrefix<S>) -> Result<ObstructionSystem<S>> {
    let n = prefix.arity;
    let w = end.bounds().0;
    let source = &prefix.source;
    let deg = 1 - n as i32;
    let mut unknowns = Vec::new();
    let mut by_tuple: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    if n >= 2 {
        for b in reduced_tuples(source, n, w)? {
            for z in end.homology.representatives(deg, tuple_weight(source, &b)) {
                by_tuple.entry(b.clone()).or_default().push(unknowns.len());
                unknowns.push((b.clone(), z));
            }
        }
    }
    let morphism = prefix.to_morphism(n + 1)?;
    let mut row_labels = Vec::new();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for a in reduced_tuples(source, n + 1, w)? {
        let wa = tuple_weight(source, &a);
        let h = end.homology.dim(deg, wa);
        if h == 0 {
            continue;
        }
        let r = morphism.relation_residual(&a);
        if !end.d(&r).is_zero() {
            return Err(Error::Structure(format!("residual on {a:?} is not a cycle")));
        }
        let rc = end.homology.class_in(deg, wa, &r)?;
        let mut cols: Vec<(usize, Vec<S>)> = Vec::new();
        let mut candidates: Vec<Vec<usize>> = vec![a[1..].to_vec(), a[..n].to_vec()];
        for i in 0..n {
            for j in source.mu(&a[i..i + 2]).support() {
                let mut b = a[..i].to_vec();
                b.push(j);
                b.extend(&a[i + 2..]);
                candidates.push(b);
            }
        }
        candidates.sort();
        candidates.dedup();
        for b in candidates {
            for &u in by_tuple.get(&b).into_iter().flatten() {
                let v = linear_term(prefix, &a, &b, &unknowns[u].1);
                if !v.is_zero() {
                    cols.push((u, end.homology.class_in(deg, wa, &v)?));
                }
            }
        }
        for k in 0..h {
            row_labels.push((a.clone(), k));
            rows.push(Vector::from_pairs(cols.iter().map(|(u, c)| (*u, c[k].clone()))));
            rhs.push(-rc[k].clone());
        }
    }
    Ok(ObstructionSystem { arity: n, unknowns, row_labels, rows, rhs })
}

/// Applies a solution of the system to `gₙ`, then fills in `gₙ₊₁` with `d gₙ₊₁(a) = R(a)`.
pub fn extend_prefix<S: Scalar>(
    end: &EndOfK<S>,
    prefix: &MorphismPrefix<S>,
    system: &ObstructionSystem<S>,
    y: &Vector<S>,
) -> Result<MorphismPrefix<S>> {
    let n = prefix.arity;
    let mut next = prefix.clone();
    let gn = next.components.entry(n).or_insert_with(|| MultiOp::new(n));
    for (u, c) in y.iter() {
        let (b, z) = &system.unknowns[u];
        gn.add(b.clone(), &z.scaled(c));
    }
    let morphism = next.to_morphism(n + 1)?;
    let mut g = MultiOp::new(n + 1);
    for a in reduced_tuples(&prefix.source, n + 1, end.bounds().0)? {
        let r = morphism.relation_residual(&a);
        if r.is_zero() {
            continue;
        }
        match end.preimage(&r)? {
            Ok(x) => g.add(a, &x),
            Err(rest) => {
                let class = end.homology.class_of(&r)?;
                return Err(Error::Obstruction {
                    arity: n + 1,
                    detail: format!(
                        "residual on {a:?} is not exact: class {class:?}, remainder has {} terms",
                        rest.nnz()
                    ),
                });
            }
        }
    }
    next.components.insert(n + 1, g);
    next.arity = n + 1;
    Ok(next)
}

/// One step `gₙ → gₙ₊₁`, with the sizes of the system it solved.
pub fn solve_step<S: Scalar>(
    end: &EndOfK<S>,
    prefix: &MorphismPrefix<S>,
) -> Result<(MorphismPrefix<S>, ObstructionSystem<S>)> {
    let system = assemble_obstruction(end, prefix)?;
    let y = system.solve()?.map_err(|w| Error::Obstruction {
        arity: prefix.arity + 1,
        detail: format!(
            "no correction of g{} kills the obstruction classes; witness on rows {:?}",
            prefix.arity,
            w.support().map(|i| &system.row_labels[i]).collect::<Vec<_>>()
        ),
    })?;
    Ok((extend_prefix(end, prefix, &system, &y)?, system))
}

/// Solves `g` up to arity `n` and certifies the relations through arity `n`.
pub fn solve_to_arity<S: Scalar>(
    config: &SolverConfig,
    n: usize,
) -> Result<(EndOfK<S>, MorphismPrefix<S>, Certificate)> {
    if n == 0 {
        return Err(Error::Invalid("arity must be ≥ 1".into()));
    }
    let end = end_complex_of_k::<S>(config.weight_bound, config.length_bound)?;
    let params = BTreeMap::from([
        ("W".to_string(), config.weight_bound.to_string()),
        ("L".to_string(), config.length_bound.to_string()),
        ("N".to_string(), n.to_string()),
        ("c".to_string(), config.normalization.to_string()),
    ]);
    let mut cert = Certificate::new("solve-morphism", params);
    let c_bound = end.faithful_weight().max(4);
    cert.push(end.compare_with_c(&cohomology_of_c::<S>(c_bound)?));
    cert.push(Check::new(
        "end.escaped_terms",
        "terms of d leaving the truncation",
        format!("W={}, L={}", config.weight_bound, config.length_bound),
        true,
        end.hom.escaped_terms().to_string(),
    ));
    let mut prefix = prescribe_g1(&end, &S::from_i64(config.normalization))?;
    let mut sizes = Vec::new();
    while prefix.arity < n {
        let (next, system) = solve_step(&end, &prefix)?;
        sizes.push(serde_json::json!({
            "arity": next.arity,
            "unknowns": system.unknowns.len(),
            "equations": system.rows.len(),
        }));
        prefix = next;
    }
    let report = prefix.check()?;
    cert.push(Check::new(
        "g.relations",
        "A∞-morphism relations and strict unitality of g",
        format!("arity ≤ {n}, weight ≤ {}", config.weight_bound),
        report.passed,
        report.summary(),
    ));
    cert.attach("systems", serde_json::Value::Array(sizes));
    cert.attach("terms", serde_json::json!(prefix.term_counts()));
    cert.attach(
        "prefix_sha256",
        serde_json::json!(crate::io::digest(&crate::io::MorphismDocument::from_prefix(&prefix))?),
    );
    Ok((end, prefix, cert))
}
