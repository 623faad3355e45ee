use std::collections::HashMap;

use super::chain::Chain;
use super::complex::Hochschild;
use crate::ainfty::sign::l_span;
use crate::ainfty::Bimorphism;
use crate::catalog::tensor_index;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::Scalar;

/// `l_x^y` over a cyclic tuple of degrees, for lifted indices `x ≤ y + 1` (empty when `x = y + 1`).
fn l_cyclic(degs: &[i32], x: usize, y_plus_one: usize) -> bool {
    let len = degs.len();
    let mut acc = false;
    for t in x..y_plus_one {
        acc ^= (degs[t % len] + 1).rem_euclid(2) == 1;
    }
    acc
}

/// The pushforward `f₊: C_•(A) ⊗ C_•(B) → C_•(C)` of a bimorphism `f: (A, B) → C`.
pub struct Pushforward<'a, S> {
    f: &'a Bimorphism<S>,
    ha: &'a Hochschild<S>,
    hb: &'a Hochschild<S>,
    hc: &'a Hochschild<S>,
}

struct Blocks {
    i: Vec<usize>,
    j: Vec<usize>,
}

impl<'a, S: Scalar> Pushforward<'a, S> {
    pub fn new(
        f: &'a Bimorphism<S>,
        ha: &'a Hochschild<S>,
        hb: &'a Hochschild<S>,
        hc: &'a Hochschild<S>,
    ) -> Result<Self> {
        let same = |x: &std::sync::Arc<crate::ainfty::AInftyAlgebra<S>>,
                    y: &std::sync::Arc<crate::ainfty::AInftyAlgebra<S>>| {
            x.space().basis() == y.space().basis()
        };
        if !same(f.left(), ha.algebra()) || !same(f.right(), hb.algebra()) || !same(f.target(), hc.algebra()) {
            return Err(Error::Invalid("Hochschild complexes do not match the bimorphism".into()));
        }
        Ok(Pushforward { f, ha, hb, hc })
    }

    /// `f₊(c₁ ⊗ c₂)`, bilinear in the chains.
    pub fn apply(&self, c1: &Chain<S>, c2: &Chain<S>) -> Result<Chain<S>> {
        let mut out = Chain::zero();
        for (a, x) in c1.iter() {
            for (b, y) in c2.iter() {
                out.add_scaled(&self.on_tuples(a, b)?, &(x.clone() * y.clone()));
            }
        }
        Ok(out)
    }

    /// `f₊((a₀, …, aₙ) ⊗ (b₀, …, b_m))`. Blocks are cut from the cyclic tuples with lifted
    /// indices `i_{s+k+1} = i_s + n + 1`, `j_{s+k+1} = j_s + m + 1`; the leading sign term is `l_0^n(a)`.
    pub fn on_tuples(&self, a: &[usize], b: &[usize]) -> Result<Chain<S>> {
        let (n, m) = (a.len() - 1, b.len() - 1);
        let need = n + m + 2;
        let bound = [self.f.arity_bound(), self.hc.algebra().arity_bound()].into_iter().flatten().min();
        if bound.is_some_and(|bd| need > bd) {
            return Err(Error::Truncation(format!(
                "f₊ on lengths ({n}, {m}) needs arity {need}, tables known to {}",
                bound.unwrap_or(0)
            )));
        }
        let adeg: Vec<i32> = a.iter().map(|&x| self.ha.algebra().space().degree(x)).collect();
        let bdeg: Vec<i32> = b.iter().map(|&x| self.hb.algebra().space().degree(x)).collect();
        let base = l_span(&adeg);
        let mut cache: HashMap<(usize, usize, usize, usize), Vector<S>> = HashMap::new();
        let mut out = Chain::zero();
        for k in 1..=n + m + 1 {
            let mut seqs = Vec::new();
            let mut cur = Blocks { i: Vec::with_capacity(k + 1), j: Vec::with_capacity(k + 1) };
            sequences(n, m, k, &mut cur, &mut seqs);
            for bl in &seqs {
                let lift_i = |t: usize| bl.i[t % (k + 1)] + (n + 1) * (t / (k + 1));
                // J(t) for t ≥ 0 is j_t lifted; block 0 uses J(−1) = j_k − (m + 1), handled by shifting.
                let lift_j = |t: usize| bl.j[t % (k + 1)] + (m + 1) * (t / (k + 1));
                // block s: a-range (I(s), I(s+1)], b-range (J(s−1), J(s)], with indices shifted by m+1 on b.
                let mut vals: Vec<Vector<S>> = Vec::with_capacity(k + 1);
                for s in 0..=k {
                    let (ai, ae) = (lift_i(s), lift_i(s + 1));
                    let (bi, be) = (lift_j(s + k), lift_j(s + k + 1));
                    let v = cache
                        .entry((ai, ae, bi, be))
                        .or_insert_with(|| {
                            let at: Vec<usize> = (ai + 1..=ae).map(|t| a[t % (n + 1)]).collect();
                            let bt: Vec<usize> = (bi + 1..=be).map(|t| b[t % (m + 1)]).collect();
                            self.f.eval(&at, &bt)
                        })
                        .clone();
                    vals.push(v);
                }
                if vals.iter().any(|v| v.is_zero()) {
                    continue;
                }
                for q in 1..=k {
                    let iq = bl.i[q];
                    let jq1 = bl.j[q - 1];
                    let mut eps = base ^ true;
                    eps ^= l_cyclic(&adeg, iq + 1, n + 1) && l_cyclic(&adeg, 0, iq + 1);
                    eps ^= l_cyclic(&bdeg, jq1 + 1, m + 1) && l_cyclic(&bdeg, 0, jq1 + 1);
                    for s in 1..=k {
                        let la = l_cyclic(&adeg, lift_i(q + s) + 1, lift_i(q + s + 1) + 1);
                        let lb = l_cyclic(&bdeg, jq1 + 1, lift_j(q + s - 1) + 1);
                        eps ^= la && lb;
                    }
                    let sgn = S::sign_pow(eps);
                    for p in 0..q {
                        let mut args: Vec<&Vector<S>> = (q..=k).map(|s| &vals[s]).collect();
                        args.extend((0..=p).map(|s| &vals[s]));
                        let head = self.hc.algebra().mu_vectors(&args);
                        if head.is_zero() {
                            continue;
                        }
                        let mut slots = vec![head];
                        slots.extend((p + 1..q).map(|s| vals[s].clone()));
                        out.add(&self.hc.expand(&slots, &sgn));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Nondecreasing `i₀ ≤ … ≤ i_k ≤ n`, `j₀ ≤ … ≤ j_k ≤ m` with blocks `1..k−1` nonempty.
fn sequences(n: usize, m: usize, k: usize, cur: &mut Blocks, out: &mut Vec<Blocks>) {
    let t = cur.i.len();
    if t == k + 1 {
        out.push(Blocks { i: cur.i.clone(), j: cur.j.clone() });
        return;
    }
    let (i_lo, j_lo) = if t == 0 { (0, 0) } else { (cur.i[t - 1], cur.j[t - 1]) };
    for it in i_lo..=n {
        for jt in j_lo..=m {
            // block t−1 is (i_{t−1}, i_t] × (j_{t−2}, j_{t−1}] and must be nonempty for 1 ≤ t−1 ≤ k−1
            if t >= 2 && (it - cur.i[t - 1]) + (cur.j[t - 1] - cur.j[t - 2]) == 0 {
                continue;
            }
            cur.i.push(it);
            cur.j.push(jt);
            sequences(n, m, k, cur, out);
            cur.i.pop();
            cur.j.pop();
        }
    }
}

/// The Eilenberg–Zilber shuffle map `C_•(A) ⊗ C_•(B) → C_•(A ⊗ B)` into the tensor DG algebra
/// whose basis is indexed by [`tensor_index`]; units of `A` and `B` must be basis elements.
pub fn eilenberg_zilber<S: Scalar>(
    ha: &Hochschild<S>,
    hb: &Hochschild<S>,
    hab: &Hochschild<S>,
    c1: &Chain<S>,
    c2: &Chain<S>,
) -> Result<Chain<S>> {
    let (sa, sb) = (ha.algebra().space(), hb.algebra().space());
    let nb = sb.dim();
    if hab.algebra().dim() != sa.dim() * nb {
        return Err(Error::Dimension("tensor algebra dimension mismatch".into()));
    }
    let ua = ha.algebra().unit_index().ok_or_else(|| Error::Invalid("unit of A is not a basis element".into()))?;
    let ub = hb.algebra().unit_index().ok_or_else(|| Error::Invalid("unit of B is not a basis element".into()))?;
    let mut out = Chain::zero();
    for (a, x) in c1.iter() {
        for (b, y) in c2.iter() {
            let (n, m) = (a.len() - 1, b.len() - 1);
            let atail: Vec<i32> = a[1..].iter().map(|&e| sa.degree(e)).collect();
            // moving b₀ past the shifted a-tail
            let base = crate::ainfty::sign::odd(sb.degree(b[0])) && l_span(&atail);
            let coeff = x.clone() * y.clone();
            for mask in shuffles(n, m) {
                let mut tuple = vec![tensor_index(nb, a[0], b[0])];
                let (mut ia, mut ib) = (1, 1);
                let mut par = base;
                let mut b_passed = false;
                for &from_b in &mask {
                    if from_b {
                        tuple.push(tensor_index(nb, ua, b[ib]));
                        b_passed ^= (sb.degree(b[ib]) + 1).rem_euclid(2) == 1;
                        ib += 1;
                    } else {
                        tuple.push(tensor_index(nb, a[ia], ub));
                        par ^= b_passed && (sa.degree(a[ia]) + 1).rem_euclid(2) == 1;
                        ia += 1;
                    }
                }
                out.add_term(tuple, S::sign_pow(par) * coeff.clone());
            }
        }
    }
    Ok(hab.normalize(&out))
}

/// All interleavings of `n` a-letters and `m` b-letters (`true` = b).
fn shuffles(n: usize, m: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    let total = n + m;
    for mask in 0u64..(1u64 << total) {
        if mask.count_ones() as usize == m {
            out.push((0..total).map(|t| mask >> t & 1 == 1).collect());
        }
    }
    out
}
