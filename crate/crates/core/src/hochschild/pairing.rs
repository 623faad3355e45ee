use std::sync::Arc;

use super::chain::Chain;
use super::complex::Hochschild;
use super::pushforward::Pushforward;
use crate::ainfty::sign::{l_span, odd, reversal_parity};
use crate::ainfty::{bimorphism_from_bimodule, AInftyAlgebra, AInftyBimodule, EndomorphismAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::Scalar;

/// `C_•(End_k(V)) → k`: `str(a₀)` on length-0 terms with `|a₀| = 0`, zero otherwise.
pub fn trace_functional<S: Scalar>(end: &EndomorphismAlgebra<S>, c: &Chain<S>) -> S {
    let space = end.module_space();
    let mut out = S::zero();
    for (t, x) in c.iter() {
        if t.len() != 1 {
            continue;
        }
        let (i, j) = end.entry_of(t[0]);
        if i == j {
            out += S::sign_pow(odd(space.degree(i))) * x.clone();
        }
    }
    out
}

/// The explicit pairing `ψ(c₁ ⊗ c₂)` of a finite-dimensional bimodule `M` over `(A₁, A₂)`,
/// with `c₁` a chain over `A₁` and `c₂` a chain over `A₂^op` (same basis as `A₂`).
pub fn pairing_psi<S: Scalar>(m: &AInftyBimodule<S>, c1: &Chain<S>, c2: &Chain<S>) -> Result<S> {
    let mut out = S::zero();
    for (a, x) in c1.iter() {
        for (b, y) in c2.iter() {
            out += psi_tuples(m, a, b)? * x.clone() * y.clone();
        }
    }
    Ok(out)
}

fn psi_tuples<S: Scalar>(m: &AInftyBimodule<S>, a: &[usize], b: &[usize]) -> Result<S> {
    let (n, mm) = (a.len() - 1, b.len() - 1);
    let need = n + mm + 3;
    let bound = [m.arity_bound(), m.left().arity_bound(), m.right().arity_bound()].into_iter().flatten().min();
    if bound.is_some_and(|bd| need > bd) {
        return Err(Error::Truncation(format!("ψ on lengths ({n}, {mm}) needs μ_{{{},{}}}", n + 1, mm + 1)));
    }
    let Some(op) = m.op(n + 1, mm + 1) else { return Ok(S::zero()) };
    let adeg: Vec<i32> = a.iter().map(|&x| m.left().space().degree(x)).collect();
    let bdeg: Vec<i32> = b.iter().map(|&x| m.right().space().degree(x)).collect();
    let lb = l_span(&bdeg);
    let la = l_span(&adeg);
    let space = m.space();
    let mut out = S::zero();
    for v in 0..space.dim() {
        let mut image = Vector::zero();
        let outer = lb && odd(space.degree(v));
        for i in 0..=n {
            let mut key: Vec<usize> = a[i..].iter().chain(&a[..i]).copied().collect();
            key.push(v);
            let sa = la ^ (l_span(&adeg[..i]) && l_span(&adeg[i..]));
            for j in 0..=mm {
                let mut k = key.clone();
                k.extend(b[..=j].iter().rev());
                k.extend(b[j + 1..].iter().rev());
                let sigma = sa ^ reversal_parity(&bdeg[..=j]) ^ reversal_parity(&bdeg[j + 1..]);
                if let Some(val) = op.get(&k) {
                    image.add_scaled(val, &S::sign_pow(sigma ^ outer));
                }
            }
        }
        if let Some(c) = image.coeff(v) {
            out += S::sign_pow(odd(space.degree(v))) * c.clone();
        }
    }
    Ok(out)
}

/// `⟨a, B(b)⟩ = (−1)^{|a|+1} str(v ↦ (−1)^{(|b|+1)|v|} μ₃(a, v, b))` for closed `a`, `b` with `|a| + |b| = 1`.
pub fn pairing_mu3<S: Scalar>(alg: &AInftyAlgebra<S>, a: usize, b: usize) -> Result<S> {
    let s = alg.space();
    if s.degree(a) + s.degree(b) != 1 {
        return Err(Error::Invalid(format!("|{}| + |{}| ≠ 1", s.name(a), s.name(b))));
    }
    for x in [a, b] {
        if !alg.mu(&[x]).is_zero() {
            return Err(Error::Invalid(format!("{} is not closed", s.name(x))));
        }
    }
    if alg.arity_bound().is_some_and(|bd| bd < 3) {
        return Err(Error::Truncation("μ₃ table unknown".into()));
    }
    let mut tr = S::zero();
    for v in 0..s.dim() {
        let c = alg.mu(&[a, v, b]).get(v);
        if c.is_zero() {
            continue;
        }
        let par = odd(s.degree(v)) ^ ((s.degree(b) + 1).rem_euclid(2) == 1 && odd(s.degree(v)));
        tr += S::sign_pow(par) * c;
    }
    Ok(S::sign_pow(!odd(s.degree(a))) * tr)
}

/// `trace ∘ f₊ ∘ (id ⊗ B)` for the bimorphism `f: (A₁, A₂^op) → End_k(M)` of `M`; the
/// composite that [`pairing_psi`] evaluates in closed form.
pub fn pairing_via_pushforward<S: Scalar>(
    m: &AInftyBimodule<S>,
    right_op: Arc<AInftyAlgebra<S>>,
    c1: &Chain<S>,
    c2: &Chain<S>,
) -> Result<S> {
    let mut d = std::collections::BTreeMap::new();
    if let Some(op) = m.op(0, 0) {
        for (k, v) in op.iter() {
            d.insert(k[0], v.clone());
        }
    }
    let end = EndomorphismAlgebra::new(m.space().clone(), d)?;
    let f = bimorphism_from_bimodule(m, right_op.clone(), &end)?;
    let ha = Hochschild::new(m.left().clone())?;
    let hb = Hochschild::new(right_op)?;
    let hc = Hochschild::new(end.algebra().clone())?;
    let pf = Pushforward::new(&f, &ha, &hb, &hc)?;
    let pushed = pf.apply(c1, &hb.connes_b(c2))?;
    Ok(trace_functional(&end, &pushed))
}
