#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use ainf::ainfty::{AInftyAlgebra, AInftyMorphism, MultiOp};
use ainf::linalg::Vector;
use ainf::Q;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn catalog(key: &str) -> Arc<AInftyAlgebra<Q>> {
    Arc::new(ainf::catalog::make_algebra(&key.parse().unwrap()).unwrap())
}

/// Random homogeneous `f₂` on reduced inputs: every admissible output gets a small integer.
pub fn random_f2(alg: &AInftyAlgebra<Q>, rng: &mut ChaCha8Rng, ignore_weight: bool) -> MultiOp<Q> {
    let s = alg.space();
    let red = alg.reduced_indices().unwrap();
    let mut f2 = MultiOp::new(2);
    for &x in &red {
        for &y in &red {
            for z in 0..s.dim() {
                let deg_ok = s.degree(z) == s.degree(x) + s.degree(y) - 1;
                let w_ok = ignore_weight || s.weight(z) == s.weight(x) + s.weight(y);
                if deg_ok && w_ok && Some(z) != alg.unit_index() {
                    let c: i64 = rng.gen_range(-2..=2);
                    if c != 0 {
                        f2.add_term(vec![x, y], z, q(c));
                    }
                }
            }
        }
    }
    f2
}

/// Transfers the structure of `target` along `f = (id, f₂)`: the returned algebra `A'` on the same
/// space makes `f: A' → target` an A∞-isomorphism. Tables are computed through `arity`.
pub fn gauge_transform(
    target: Arc<AInftyAlgebra<Q>>,
    f2: MultiOp<Q>,
    arity: usize,
) -> (AInftyAlgebra<Q>, AInftyMorphism<Q>) {
    let s = target.space().clone();
    let unit = target.unit().cloned();
    let ui = target.unit_index().expect("basis unit");
    let red = target.reduced_indices().unwrap();
    let mut f1 = MultiOp::new(1);
    for i in 0..s.dim() {
        f1.add_term(vec![i], i, Q::one());
    }
    let comps = BTreeMap::from([(1, f1), (2, f2)]);
    let mut ops: BTreeMap<usize, MultiOp<Q>> = BTreeMap::new();
    // unit entries of μ₂ are forced by strict unitality
    let mut mu2 = MultiOp::new(2);
    for i in 0..s.dim() {
        mu2.add_term(vec![ui, i], i, Q::one());
        if i != ui {
            let sg = if s.degree(i).rem_euclid(2) == 0 { Q::one() } else { -Q::one() };
            mu2.add_term(vec![i, ui], i, sg);
        }
    }
    ops.insert(2, mu2);
    for n in 1..=arity {
        let partial =
            Arc::new(AInftyAlgebra::new("partial", s.clone(), unit.clone(), ops.clone(), Some(arity)).unwrap());
        let f = AInftyMorphism::new("f", partial, target.clone(), comps.clone(), None).unwrap();
        let mut new = ops.remove(&n).unwrap_or_else(|| MultiOp::new(n));
        for t in ainf_tuples(&red, n) {
            let r = f.relation_residual(&t);
            if !r.is_zero() {
                new.add(t, &r);
            }
        }
        ops.insert(n, new);
    }
    let alg = AInftyAlgebra::new("gauge", s, unit, ops, Some(arity)).unwrap();
    let shared = Arc::new(alg.clone());
    let f = AInftyMorphism::new("f", shared, target, comps, None).unwrap();
    (alg, f)
}

pub fn ainf_tuples(alphabet: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                alphabet.iter().map(move |&a| {
                    let mut u = t.clone();
                    u.push(a);
                    u
                })
            })
            .collect();
    }
    out
}

pub fn is_zero_vec(v: &Vector<Q>) -> bool {
    v.iter().all(|(_, c)| c.is_zero())
}
