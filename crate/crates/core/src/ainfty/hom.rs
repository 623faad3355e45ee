use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::algebra::AInftyAlgebra;
use super::bimodule::AInftyBimodule;
use super::module::AInftyModule;
use super::morphism::AInftyMorphism;
use super::op::MultiOp;
use super::sign::l_span;
use crate::error::{Error, Result};
use crate::linalg::{ComplexSlice, LinearMap, Vector};
use crate::scalar::Scalar;
use crate::space::{BasisElement, BigradedSpace};

/// Elementary cochain sending `(m; a₁, …, aₙ)` to `n` and every other input to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain {
    pub input: usize,
    pub tail: Vec<usize>,
    pub output: usize,
}

/// The truncation of `Hom^∞_A(M, N)` to normalized cochains with at most `L`
/// algebra inputs of total absolute weight at most `W`.
///
/// Cochains beyond the bounds span a subcomplex closed under composition with
/// anything, so the truncation is a quotient complex (a quotient DG algebra when
/// `M = N`) and all identities hold exactly on it.
#[derive(Debug, Clone)]
pub struct HomComplex<S> {
    algebra: Arc<AInftyAlgebra<S>>,
    source: Arc<AInftyModule<S>>,
    target: Arc<AInftyModule<S>>,
    weight_bound: usize,
    length_bound: usize,
    cochains: Vec<Cochain>,
    index: HashMap<Cochain, usize>,
    space: Arc<BigradedSpace>,
    differential: LinearMap<S>,
    /// d-terms that left the truncation (dropped by the quotient).
    escaped: usize,
}

fn input_weight(space: &BigradedSpace, tail: &[usize]) -> usize {
    tail.iter().map(|&a| space.weight(a).unsigned_abs() as usize).sum()
}

impl<S: Scalar> HomComplex<S> {
    pub fn new(
        source: Arc<AInftyModule<S>>,
        target: Arc<AInftyModule<S>>,
        weight_bound: usize,
        length_bound: usize,
    ) -> Result<Self> {
        let algebra = source.algebra().clone();
        if !Arc::ptr_eq(&algebra, target.algebra()) {
            return Err(Error::Invalid("modules over different algebras".into()));
        }
        if weight_bound == 0 || length_bound == 0 {
            return Err(Error::Invalid("hom complex bounds must be positive".into()));
        }
        let aspace = algebra.space().clone();
        let reduced = algebra.reduced_indices()?;
        let signs: Vec<i32> = reduced.iter().map(|&a| aspace.weight(a).signum()).collect();
        if signs.iter().any(|&s| s == 0) || signs.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Invalid(
                "hom complex needs nonzero reduced weights of a single sign (slice finiteness)".into(),
            ));
        }
        let tails = bounded_words(&aspace, &reduced, weight_bound, length_bound);
        let (ms, ns) = (source.space(), target.space());
        let mut cochains = Vec::new();
        for tail in &tails {
            for m in 0..ms.dim() {
                for n in 0..ns.dim() {
                    cochains.push(Cochain { input: m, tail: tail.clone(), output: n });
                }
            }
        }
        let mut basis = Vec::with_capacity(cochains.len());
        for c in &cochains {
            let deg =
                ns.degree(c.output) - ms.degree(c.input) - c.tail.iter().map(|&a| aspace.degree(a) - 1).sum::<i32>();
            let w = ns.weight(c.output) - ms.weight(c.input) - c.tail.iter().map(|&a| aspace.weight(a)).sum::<i32>();
            let tail: Vec<&str> = c.tail.iter().map(|&a| aspace.name(a)).collect();
            basis.push(BasisElement {
                name: format!("[{}|{}|{}]", ms.name(c.input), tail.join(","), ns.name(c.output)),
                degree: deg,
                weight: w,
            });
        }
        let space = Arc::new(BigradedSpace::new(basis)?);
        let index = cochains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let mut hom = HomComplex {
            algebra,
            source,
            target,
            weight_bound,
            length_bound,
            cochains,
            index,
            space: space.clone(),
            differential: LinearMap::zero(space.clone(), space.clone(), (1, 0)),
            escaped: 0,
        };
        let mut columns = Vec::with_capacity(hom.cochains.len());
        let mut escaped = 0;
        for j in 0..hom.cochains.len() {
            let (col, esc) = hom.d_basis(j);
            escaped += esc;
            columns.push(col);
        }
        hom.differential = LinearMap::new(space.clone(), space, columns, (1, 0))?;
        hom.escaped = escaped;
        Ok(hom)
    }

    pub fn algebra(&self) -> &Arc<AInftyAlgebra<S>> {
        &self.algebra
    }

    pub fn source(&self) -> &Arc<AInftyModule<S>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AInftyModule<S>> {
        &self.target
    }

    pub fn bounds(&self) -> (usize, usize) {
        (self.weight_bound, self.length_bound)
    }

    pub fn space(&self) -> &Arc<BigradedSpace> {
        &self.space
    }

    pub fn cochains(&self) -> &[Cochain] {
        &self.cochains
    }

    pub fn cochain(&self, i: usize) -> &Cochain {
        &self.cochains[i]
    }

    pub fn index_of(&self, c: &Cochain) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn differential(&self) -> &LinearMap<S> {
        &self.differential
    }

    pub fn escaped_terms(&self) -> usize {
        self.escaped
    }

    fn in_bounds(&self, tail: &[usize]) -> bool {
        tail.len() <= self.length_bound && input_weight(self.algebra.space(), tail) <= self.weight_bound
    }

    fn is_reduced(&self, a: usize) -> bool {
        self.algebra.unit_index() != Some(a)
    }

    /// `d(φ)` for the elementary cochain `j`, expanded term by term:
    /// `Σ μ^N(φ(m, a..), a..) − (−1)^{|φ|} Σ φ(μ^M(m, a..), a..)
    ///  − Σ (−1)^{|φ| + |m| + l_1^{i−1}(a)} φ(m, .., μ^A(a_i..a_j), ..)`.
    fn d_basis(&self, j: usize) -> (Vector<S>, usize) {
        let phi = &self.cochains[j];
        let phi_deg = self.space.degree(j);
        let aspace = self.algebra.space();
        let adeg: Vec<i32> = aspace.basis().iter().map(|b| b.degree).collect();
        let mut out = Vector::zero();
        let mut escaped = 0;
        let mut emit = |out: &mut Vector<S>, m: usize, tail: Vec<usize>, n: usize, c: S| {
            if !self.in_bounds(&tail) {
                escaped += 1;
                return;
            }
            let idx = self.index[&Cochain { input: m, tail, output: n }];
            out.add_term(idx, c);
        };
        for (&k, op) in self.target.ops() {
            for (key, val) in op.iter() {
                if key[0] != phi.output || !key[1..].iter().all(|&a| self.is_reduced(a)) {
                    continue;
                }
                let mut tail = phi.tail.clone();
                tail.extend_from_slice(&key[1..]);
                debug_assert_eq!(key.len(), k);
                for (n, c) in val.iter() {
                    emit(&mut out, phi.input, tail.clone(), n, c.clone());
                }
            }
        }
        let s_phi = S::sign_pow(phi_deg.rem_euclid(2) == 1);
        for op in self.source.ops().values() {
            for (key, val) in op.iter() {
                let Some(c) = val.coeff(phi.input) else { continue };
                if !key[1..].iter().all(|&a| self.is_reduced(a)) {
                    continue;
                }
                let mut tail = key[1..].to_vec();
                tail.extend_from_slice(&phi.tail);
                emit(&mut out, key[0], tail, phi.output, -(s_phi.clone() * c.clone()));
            }
        }
        let m_odd = self.source.space().degree(phi.input).rem_euclid(2) == 1;
        for op in self.algebra.ops().values() {
            for (key, val) in op.iter() {
                if !key.iter().all(|&a| self.is_reduced(a)) {
                    continue;
                }
                for p in 0..phi.tail.len() {
                    let Some(c) = val.coeff(phi.tail[p]) else { continue };
                    let mut tail = phi.tail[..p].to_vec();
                    let par = l_span(&tail.iter().map(|&a| adeg[a]).collect::<Vec<_>>()) ^ m_odd;
                    tail.extend_from_slice(key);
                    tail.extend_from_slice(&phi.tail[p + 1..]);
                    emit(&mut out, phi.input, tail, phi.output, -(s_phi.clone() * S::sign_pow(par) * c.clone()));
                }
            }
        }
        (out, escaped)
    }

    pub fn d(&self, v: &Vector<S>) -> Vector<S> {
        self.differential.apply(v)
    }

    /// `(φψ)(m, a..) = Σ φ(ψ(m, a₁..aᵢ), aᵢ₊₁..)` on elementary cochains, `None` if not composable
    /// or out of bounds.
    pub fn compose_basis(&self, phi: usize, psi: usize) -> Option<usize> {
        let (f, g) = (&self.cochains[phi], &self.cochains[psi]);
        if g.output != f.input || !Arc::ptr_eq(&self.source, &self.target) {
            return None;
        }
        let mut tail = g.tail.clone();
        tail.extend_from_slice(&f.tail);
        self.index.get(&Cochain { input: g.input, tail, output: f.output }).copied()
    }

    pub fn compose(&self, phi: &Vector<S>, psi: &Vector<S>) -> Vector<S> {
        let mut out = Vector::zero();
        for (i, a) in phi.iter() {
            for (j, b) in psi.iter() {
                if let Some(k) = self.compose_basis(i, j) {
                    out.add_term(k, a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// Identity cochain `Σ_m [m||m]` (requires `M = N`).
    pub fn identity(&self) -> Result<Vector<S>> {
        if !Arc::ptr_eq(&self.source, &self.target) {
            return Err(Error::Invalid("identity needs M = N".into()));
        }
        Ok((0..self.source.space().dim())
            .map(|m| (self.index[&Cochain { input: m, tail: vec![], output: m }], S::one()))
            .collect())
    }

    /// The complex split by degree, for homology.
    pub fn slice(&self) -> Result<ComplexSlice<S>> {
        ComplexSlice::from_endomorphism(&self.space, &self.differential)
    }

    /// The truncated endomorphism algebra as a DG algebra (`μ₁ = −d`, `μ₂ = ±composition`).
    pub fn to_dg_algebra(&self, name: impl Into<String>) -> Result<AInftyAlgebra<S>> {
        let unit = self.identity()?;
        let mut differential = BTreeMap::new();
        for (j, col) in self.differential.columns().iter().enumerate() {
            if !col.is_zero() {
                differential.insert(j, col.clone());
            }
        }
        let mut by_weight: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.cochains.iter().enumerate() {
            by_weight.entry(input_weight(self.algebra.space(), &c.tail)).or_default().push(i);
        }
        let mut products = BTreeMap::new();
        for (&w1, group1) in &by_weight {
            for (_, group2) in by_weight.range(..=self.weight_bound - w1) {
                for &phi in group1 {
                    for &psi in group2 {
                        if let Some(k) = self.compose_basis(phi, psi) {
                            products.insert((phi, psi), Vector::basis(k));
                        }
                    }
                }
            }
        }
        AInftyAlgebra::from_dg(name, self.space.clone(), Some(unit), &differential, &products)
    }
}

/// Words over `alphabet` with at most `max_len` letters and total absolute weight at most
/// `max_weight`, ordered by weight, then length, then lexicographically.
pub fn bounded_words(space: &BigradedSpace, alphabet: &[usize], max_weight: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            let used = input_weight(space, w);
            for &a in alphabet {
                if used + space.weight(a).unsigned_abs() as usize <= max_weight {
                    let mut u = w.clone();
                    u.push(a);
                    next.push(u);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort_by(|a, b| (input_weight(space, a), a.len(), a).cmp(&(input_weight(space, b), b.len(), b)));
    out
}

/// Largest `l` such that every reduced word of length `l` survives the truncation.
pub fn complete_length<S: Scalar>(hom: &HomComplex<S>) -> usize {
    let space = hom.algebra.space();
    let max_w = hom
        .algebra
        .reduced_indices()
        .unwrap_or_default()
        .iter()
        .map(|&a| space.weight(a).unsigned_abs() as usize)
        .max()
        .unwrap_or(1)
        .max(1);
    hom.length_bound.min(hom.weight_bound / max_w)
}

/// `μ_{0,l} = μ^M_{l+1}` and `μ_{n,l}(a, m, b) = fₙ(a)(m, b)`, for `f: A → End^∞_B(M)` landing in
/// the truncation `hom` (whose materialized algebra must be `f`'s target).
pub fn bimodule_from_module_and_morphism<S: Scalar>(
    hom: &HomComplex<S>,
    f: &AInftyMorphism<S>,
) -> Result<AInftyBimodule<S>> {
    if !Arc::ptr_eq(&hom.source, &hom.target) {
        return Err(Error::Invalid("f must land in End(M)".into()));
    }
    if f.target().space().as_ref() != hom.space.as_ref() {
        return Err(Error::Invalid("f does not land in this hom complex".into()));
    }
    let module = &hom.source;
    let lc = complete_length(hom);
    let bound = f.arity_bound().unwrap_or(usize::MAX).min(lc) + 1;
    let mut ops: BTreeMap<(usize, usize), MultiOp<S>> = BTreeMap::new();
    for (&n, op) in module.ops() {
        if n <= bound {
            ops.insert((0, n - 1), op.clone());
        }
    }
    for (&n, comp) in f.components() {
        for (a, val) in comp.iter() {
            for (idx, c) in val.iter() {
                let ch = &hom.cochains[idx];
                let l = ch.tail.len();
                if n + l + 1 > bound {
                    continue;
                }
                let mut key = a.clone();
                key.push(ch.input);
                key.extend_from_slice(&ch.tail);
                ops.entry((n, l)).or_insert_with(|| MultiOp::new(n + l + 1)).add_term(key, ch.output, c.clone());
            }
        }
    }
    AInftyBimodule::new(
        format!("bimod({}, {})", module.name(), f.name()),
        f.source().clone(),
        hom.algebra.clone(),
        module.space().clone(),
        ops,
        Some(bound),
    )
}

/// The right module `μₙ^M = μ_{0,n−1}` and the morphism `fₙ(a)(m, b) = μ_{n,l}(a, m, b)` into
/// the truncated `End^∞_B(M)`; returns the module's hom complex, its materialized algebra and `f`.
pub fn module_and_morphism_from_bimodule<S: Scalar>(
    bimodule: &AInftyBimodule<S>,
    weight_bound: usize,
    length_bound: usize,
) -> Result<(HomComplex<S>, Arc<AInftyAlgebra<S>>, AInftyMorphism<S>)> {
    let mut mops = BTreeMap::new();
    for (&(i, j), op) in bimodule.ops() {
        if i == 0 {
            mops.insert(j + 1, op.clone());
        }
    }
    let module = Arc::new(AInftyModule::new(
        format!("{}|right", bimodule.name()),
        bimodule.right().clone(),
        bimodule.space().clone(),
        mops,
    )?);
    let hom = HomComplex::new(module.clone(), module, weight_bound, length_bound)?;
    let end = Arc::new(hom.to_dg_algebra("End(M)")?);
    let mut comps: BTreeMap<usize, MultiOp<S>> = BTreeMap::new();
    for (&(n, l), op) in bimodule.ops() {
        if n == 0 {
            continue;
        }
        for (key, val) in op.iter() {
            let tail = key[n + 1..].to_vec();
            if !tail.iter().all(|&b| hom.is_reduced(b)) || !hom.in_bounds(&tail) {
                continue;
            }
            debug_assert_eq!(tail.len(), l);
            for (out, c) in val.iter() {
                let idx = hom.index[&Cochain { input: key[n], tail: tail.clone(), output: out }];
                comps.entry(n).or_insert_with(|| MultiOp::new(n)).add_term(key[..n].to_vec(), idx, c.clone());
            }
        }
    }
    // fₙ is complete only when every μ_{n,l} with l in the truncation is known.
    let bound = bimodule.arity_bound().map(|b| b.saturating_sub(1 + length_bound));
    let f = AInftyMorphism::new(format!("f({})", bimodule.name()), bimodule.left().clone(), end.clone(), comps, bound)?;
    Ok((hom, end, f))
}
