//! End-to-end pipelines: the glued 10-dimensional algebra with nonzero μ₃-supertrace, and the
//! nonvanishing of `(id ⊗ B)` on the Λ₁ ⊗ k[ε] class.

mod section4;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use section4::{section4_cycle, verify_section4, Section4Cycle};

use crate::ainfty::{
    bimodule_from_module_and_morphism, complete_length, AInftyAlgebra, AInftyBimodule, OppositeConvention,
};
use crate::certificate::{Certificate, Check};
use crate::error::{Error, Result};
use crate::hochschild::{pairing_mu3, pairing_psi, pairing_via_pushforward, Chain};
use crate::linalg::{supertrace, LinearMap};
use crate::scalar::Scalar;
use crate::solver::{solve_to_arity, EndOfK, MorphismPrefix, SolverConfig};

/// The glued algebra with the indices of `x`, `y` and `z`.
#[derive(Debug, Clone)]
pub struct TenDim<S> {
    pub algebra: Arc<AInftyAlgebra<S>>,
    pub bimodule: AInftyBimodule<S>,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Glues `k[x]/x⁶ ⊕ k[y]/y³ ⊕ k·z` from the bimodule `μ_{n,l}(a, z, b) = gₙ(a)(z, b)`.
pub fn build_ten_dim<S: Scalar>(end: &EndOfK<S>, g: &MorphismPrefix<S>) -> Result<TenDim<S>> {
    if g.arity < 3 {
        return Err(Error::Truncation(format!("g known to arity {}, need ≥ 3", g.arity)));
    }
    let f = g.to_morphism(g.arity)?;
    let bimodule = bimodule_from_module_and_morphism(&end.hom, &f)?;
    let algebra = bimodule.glue()?.with_name("B10");
    let s = algebra.space();
    let (x, y, z) = (s.require("x")?, s.require("y")?, s.require("z")?);
    Ok(TenDim { algebra: Arc::new(algebra), bimodule, x, y, z })
}

/// Solver bounds that make the glued algebra known to arity `n`.
pub fn config_for_arity(n: usize) -> SolverConfig {
    SolverConfig { weight_bound: 2 * n.saturating_sub(1), length_bound: n, normalization: 1 }
}

/// `str(v ↦ μ₃(x, v, y))`.
pub fn mu3_supertrace<S: Scalar>(b: &AInftyAlgebra<S>, x: usize, y: usize) -> Result<S> {
    let s = b.space().clone();
    let cols = (0..s.dim()).map(|v| b.mu(&[x, v, y])).collect();
    let bideg = (s.degree(x) + s.degree(y) - 1, s.weight(x) + s.weight(y));
    supertrace(&LinearMap::new(s.clone(), s, cols, bideg)?)
}

pub fn certify_ten_dim<S: Scalar>(config: &SolverConfig, n: usize) -> Result<(TenDim<S>, Certificate)> {
    let (end, g, solve_cert) = solve_to_arity::<S>(config, n.saturating_sub(1).max(3))?;
    let known = g.arity.min(complete_length(&end.hom)) + 1;
    if known < n {
        return Err(Error::Truncation(format!(
            "W={}, L={} determine the glued algebra only to arity {known}",
            config.weight_bound, config.length_bound
        )));
    }
    let ten = build_ten_dim(&end, &g)?;
    let b = &ten.algebra;
    let mut params = solve_cert.parameters.clone();
    params.insert("N".into(), n.to_string());
    let mut cert = Certificate::new("certify-10dim", params);
    cert.extend(solve_cert.checks.iter().cloned());
    cert.push(Check::new("dimension", "dim B = 3 + 6 + 1", "", b.dim() == 10, b.dim().to_string()));
    cert.push(Check::new("minimal", "μ₁ = 0", "", b.is_minimal(), b.is_minimal().to_string()));
    let rel = b.check_relations(n);
    cert.push(Check::new("structure", "A∞ relations of B", format!("arity ≤ {n}"), rel.passed, rel.summary()));
    let unit = b.check_unitality();
    cert.push(Check::new("unitality", "strict unitality of B", "", unit.passed, unit.summary()));
    let mut z_image = b.mu(&[ten.x, ten.z, ten.y]);
    let mu3_val = z_image.get(ten.z);
    z_image.add_term(ten.z, -mu3_val.clone());
    cert.push(Check::new(
        "mu3_xzy",
        "μ₃(x, z, y) = ±z",
        "",
        z_image.is_zero() && (mu3_val.is_one() || (-mu3_val.clone()).is_one()),
        format!("{mu3_val}"),
    ));
    let st = mu3_supertrace(b, ten.x, ten.y)?;
    cert.push(Check::new(
        "mu3_supertrace",
        "|str(v ↦ μ₃(x, v, y))| = 1",
        "",
        st.is_one() || (-st.clone()).is_one(),
        format!("{st}"),
    ));
    let p = pairing_mu3(b, ten.x, ten.y)?;
    let expect = S::sign_pow(b.space().degree(ten.x) % 2 == 0) * st.clone();
    cert.push(Check::new(
        "pairing_mu3",
        "⟨x, B(y)⟩ = (−1)^{|x|+1} str ≠ 0",
        "",
        !p.is_zero() && p == expect,
        format!("{p}"),
    ));
    let diag = AInftyBimodule::diagonal(b.clone())?;
    let (c1, c2) = (Chain::basis(vec![ten.x]), Chain::basis(vec![ten.y]));
    let psi = pairing_psi(&diag, &c1, &c2)?;
    cert.push(Check::new(
        "pairing_psi",
        "ψ((x) ⊗ (y)) on the diagonal bimodule equals ⟨x, B(y)⟩",
        "",
        psi == p,
        format!("{psi}"),
    ));
    let op = Arc::new(b.opposite_with(OppositeConvention::Negated));
    let via = pairing_via_pushforward(&diag, op, &c1, &c2)?;
    cert.push(Check::new(
        "pairing_pushforward",
        "trace ∘ f₊ ∘ (id ⊗ B) on (x) ⊗ (y) equals ψ",
        "",
        via == psi,
        format!("{via}"),
    ));
    let doc = crate::io::AlgebraDocument::from_algebra(b, "glued from the solved morphism prefix");
    cert.attach("algebra_sha256", serde_json::json!(crate::io::digest(&doc)?));
    cert.attach("op_sizes", serde_json::json!(op_sizes(b)));
    cert.attach("solver", solve_cert.data.clone().into_iter().collect::<serde_json::Map<_, _>>().into());
    Ok((ten, cert))
}

/// Nonzero `μₙ` entries of the glued algebra, for reporting.
pub fn op_sizes<S: Scalar>(b: &AInftyAlgebra<S>) -> BTreeMap<usize, usize> {
    b.ops().iter().map(|(&n, op)| (n, op.len())).collect()
}
