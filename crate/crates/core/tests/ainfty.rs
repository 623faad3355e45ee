mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use ainf::ainfty::{
    bimodule_from_bimorphism, bimodule_from_module_and_morphism, bimorphism_from_bimodule,
    module_and_morphism_from_bimodule, AInftyAlgebra, AInftyBimodule, EndomorphismAlgebra, OppositeConvention,
};
use ainf::linalg::Vector;
use ainf::solver::{solve_to_arity, SolverConfig};
use ainf::Q;
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn idx(a: &AInftyAlgebra<Q>, name: &str) -> usize {
    a.space().require(name).unwrap()
}

#[test]
fn from_dg_tables() {
    let c = catalog("free_C(4)");
    let t2 = idx(&c, "t2");
    let t11 = idx(&c, "t1t1");
    assert_eq!(c.mu(&[t2]), Vector::term(t11, q(-1)));

    let l = catalog("lambda1");
    assert_eq!(l.mu(&[0, 1]), Vector::basis(1));

    let x = catalog("truncated_poly(6)");
    let (x2, x3, x5) = (idx(&x, "x2"), idx(&x, "x3"), idx(&x, "x5"));
    assert_eq!(x.mu(&[x2, x3]), Vector::basis(x5));
    assert!(x.mu(&[x3, x3]).is_zero());
}

#[test]
fn every_catalog_algebra_passes_to_arity_eight() {
    for key in ainf::pipelines::suite_algebras() {
        let a = catalog(&key.to_string());
        let r = a.check_structure(8);
        assert!(r.passed, "{key}: {}", r.summary());
    }
}

#[test]
fn koszul_sign_flip_in_mu2_is_caught() {
    // drop the (−1)^{|a|} of μ₂ on C; t₂ is odd so Leibniz breaks
    let c = catalog("free_C(6)");
    let s = c.space().clone();
    let mu2 = c.op(2).unwrap().map_entries(2, |k, v| {
        let sg = if s.degree(k[0]).rem_euclid(2) == 0 { q(1) } else { q(-1) };
        Some((k.to_vec(), v.scaled(&sg)))
    });
    let mut ops = c.ops().clone();
    ops.insert(2, mu2);
    let bad = AInftyAlgebra::new("bad", s, c.unit().cloned(), ops, None).unwrap();
    let r = bad.check_relations(3);
    assert!(!r.passed);
    let w = r.first_failure().and_then(|f| f.witness.clone()).expect("witness");
    assert!(!w.inputs.is_empty());
}

#[test]
fn opposite_is_an_involution() {
    for key in ["lambda1", "y_cube", "free_C(5)", "tensor(lambda1,dual_numbers)"] {
        let a = catalog(key);
        for conv in [OppositeConvention::Literal, OppositeConvention::Negated] {
            let back = a.opposite_with(conv).opposite_with(conv);
            assert_eq!(back.ops(), a.ops(), "{key} {conv:?}");
        }
    }
}

#[test]
fn opposite_of_commutative_truncated_poly() {
    let x = catalog("truncated_poly(6)");
    let (op, _, _) = x.opposite(4).unwrap();
    let mu2 = op.op(2).unwrap();
    let neg = x.op(2).unwrap().scaled(&q(-1));
    assert!(mu2 == x.op(2).unwrap() || *mu2 == neg);
    assert!(op.check_relations(4).passed);
}

#[test]
fn diagonal_bimodule_of_dg_algebras() {
    for key in ["dual_numbers", "lambda1", "y_cube", "free_C(4)"] {
        let a = catalog(key);
        let d = AInftyBimodule::diagonal(a.clone()).unwrap();
        let r = d.check_structure(6);
        assert!(r.passed, "{key}: {}", r.summary());
        let n = a.dim();
        let (diff, prod) = a.dg_parts().unwrap();
        for i in 0..n {
            for j in 0..n {
                // μ_{1,0}(a, m) = a·m, μ_{0,1}(m, b) = −μ₂(m, b)
                assert_eq!(
                    d.op(1, 0).map(|o| o.eval(&[i, j])).unwrap_or_default(),
                    prod.get(&(i, j)).cloned().unwrap_or_default()
                );
                assert_eq!(d.op(0, 1).map(|o| o.eval(&[i, j])).unwrap_or_default(), a.mu(&[i, j]).negated());
            }
            // μ_{0,0} = −μ₁ = d
            assert_eq!(d.op(0, 0).map(|o| o.eval(&[i])).unwrap_or_default(), diff.get(&i).cloned().unwrap_or_default());
        }
    }
}

#[test]
fn bimorphism_round_trip_is_the_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut algebras = vec![catalog("dual_numbers"), catalog("lambda1"), catalog("y_cube")];
    let base = Arc::new(catalog("y_cube").reweighted(0));
    algebras.push(Arc::new(gauge_transform(base.clone(), random_f2(&base, &mut rng, true), 5).0));
    for a in algebras {
        let m = AInftyBimodule::diagonal(a.clone()).unwrap();
        let right_op = Arc::new(a.opposite_with(OppositeConvention::Negated));
        let mut d = BTreeMap::new();
        if let Some(op) = m.op(0, 0) {
            for (k, v) in op.iter() {
                d.insert(k[0], v.clone());
            }
        }
        let end = EndomorphismAlgebra::new(m.space().clone(), d).unwrap();
        let f = bimorphism_from_bimodule(&m, right_op.clone(), &end).unwrap();
        assert!(f.check_structure(4).passed, "{}", a.name());
        let back = bimodule_from_bimorphism(&f, a.clone(), &end).unwrap();
        assert_eq!(back.ops(), m.ops(), "{}", a.name());
        assert!(back.check_unitality().passed);
    }
}

#[test]
fn module_and_morphism_round_trip() {
    let cfg = SolverConfig { weight_bound: 8, length_bound: 6, normalization: 1 };
    let (end, g, _) = solve_to_arity::<Q>(&cfg, 4).unwrap();
    let m = g.to_morphism(4).unwrap();
    let bim = bimodule_from_module_and_morphism(&end.hom, &m).unwrap();
    assert!(bim.check_unitality().passed);
    // the bimodule knows total arity ≤ 5, so fₙ comes back complete for n ≤ 2 with tails ≤ 2
    let (hom2, _, f) = module_and_morphism_from_bimodule(&bim, 8, 2).unwrap();
    assert_eq!(f.arity_bound(), Some(2));
    let mut compared = 0;
    for n in 1..=2 {
        let Some(comp) = m.component(n) else {
            panic!("missing g{n}; have {:?}", m.components().keys().collect::<Vec<_>>())
        };
        for (a, val) in comp.iter() {
            for (i, c) in val.iter() {
                let ch = end.hom.cochain(i);
                if ch.tail.len() > 2 {
                    continue;
                }
                let j = hom2.index_of(ch).expect("cochain inside the smaller truncation");
                assert_eq!(f.eval(a).get(j), c.clone());
                compared += 1;
            }
        }
        for (a, val) in f.component(n).into_iter().flat_map(|c| c.iter()) {
            for (j, c) in val.iter() {
                let i = end.hom.index_of(hom2.cochain(j)).unwrap();
                assert_eq!(comp.eval(a).get(i), c.clone());
            }
        }
    }
    assert!(compared > 0);
}

#[test]
fn glue_of_zero_bimodule_is_the_product() {
    let a = catalog("dual_numbers");
    let b = catalog("lambda1");
    let empty = Arc::new(ainf::space::BigradedSpace::new(vec![]).unwrap());
    let m = AInftyBimodule::new("0", a.clone(), b.clone(), empty, BTreeMap::new(), None).unwrap();
    let g = m.glue().unwrap();
    assert_eq!(g.dim(), a.dim() + b.dim());
    assert!(g.check_structure(5).passed);
    // the two blocks do not interact
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            assert!(g.mu(&[i, a.dim() + j]).is_zero());
            assert!(g.mu(&[a.dim() + j, i]).is_zero());
        }
    }
}

#[test]
fn glue_of_diagonal_passes() {
    for key in ["dual_numbers", "lambda1", "y_cube"] {
        let a = catalog(key);
        let g = AInftyBimodule::diagonal(a.clone()).unwrap().glue().unwrap();
        assert_eq!(g.dim(), 3 * a.dim());
        let r = g.check_structure(5);
        assert!(r.passed, "{key}: {}", r.summary());
    }
}

#[test]
fn hom_complex_identity_and_composition() {
    let end = ainf::solver::end_complex_of_k::<Q>(6, 5).unwrap();
    let hom = &end.hom;
    let id = hom.identity().unwrap();
    assert!(hom.d(&id).is_zero());
    let n = hom.space().dim();
    for j in 0..n {
        let e = Vector::basis(j);
        assert!(hom.d(&hom.d(&e)).is_zero(), "d² on {j}");
        assert_eq!(hom.compose(&id, &e), e);
        assert_eq!(hom.compose(&e, &id), e);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    use rand::Rng;
    for _ in 0..200 {
        let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let (a, b, c) = (Vector::basis(a), Vector::basis(b), Vector::basis(c));
        assert_eq!(hom.compose(&hom.compose(&a, &b), &c), hom.compose(&a, &hom.compose(&b, &c)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn gauge_transforms_satisfy_the_relations(seed in any::<u64>(), which in 0usize..3) {
        let key = ["lambda1", "y_cube", "tensor(lambda1,dual_numbers)"][which];
        let base = Arc::new(catalog(key).reweighted(0));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f2 = random_f2(&base, &mut rng, true);
        let (g, f) = gauge_transform(base, f2, 4);
        prop_assert!(g.check_structure(4).passed);
        prop_assert!(f.check_structure(4).passed);
        let ok = [OppositeConvention::Literal, OppositeConvention::Negated]
            .into_iter()
            .any(|c| g.opposite_with(c).check_relations(4).passed);
        prop_assert!(ok);
        prop_assert!(AInftyBimodule::diagonal(Arc::new(g)).unwrap().check_relations(4).passed);
    }
}
