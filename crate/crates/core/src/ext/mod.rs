//! Resolutions over k[y]/y³ and k[x]/xⁿ, the cohomology of C, and bigraded Hochschild
//! cohomology of k[x]/x⁶ with coefficients in the cohomology of C.

mod free_c;
mod periodic;
mod resolution;

use std::collections::BTreeMap;

pub use free_c::{cohomology_of_c, expected_c_class, CCohomology};
pub use periodic::{column, hochschild_cohomology_bigraded, Monogenic, PeriodicResolution, Step, WeightedBimodule};
pub use resolution::{
    ext_algebra, generator_degree, generator_weight, graded_commutator_with, ExtAlgebra, ResolutionP, Y_WEIGHT,
};

use crate::certificate::{BigradedReport, Check};
use crate::error::Result;
use crate::scalar::Scalar;

/// Compares the Ext table (class `vₙ` at degree `−⌊n/2⌋`, weight `−w(eₙ)`) with the cohomology
/// of C on the weights both cover.
pub fn compare_ext_with_c(ext: &BigradedReport, c: &BigradedReport, ext_truncation: usize, c_bound: usize) -> Check {
    let top = (-generator_weight(ext_truncation)).min(c_bound as i32);
    let mut diffs = Vec::new();
    for w in 0..=top {
        let e: Vec<_> = ext.at_weight(w);
        let h: Vec<_> = c.at_weight(w);
        if e != h {
            diffs.push(format!("weight {w}: Ext {e:?} vs H(C) {h:?}"));
        }
    }
    Check::new(
        "ext_vs_c",
        "Ext over k[y]/y³ and H(C) have equal dims per (degree, weight) with vₙ ↔ u₂^a u₁^δ",
        format!("weight ≤ {top}"),
        diffs.is_empty(),
        if diffs.is_empty() { "tables agree".into() } else { diffs.join("; ") },
    )
}

/// The twisted answers for `HH(k[x]/x⁶, H^{−a}(C))`: `k[ε](6)` in degree `a + 2` for even `a`,
/// `k(4)` in degree `a + 2` for odd `a`; plus vanishing of the weight-0 column in degree `a + 2`.
pub fn expected_twisted_answer(a: usize) -> BTreeMap<i32, usize> {
    if a % 2 == 0 {
        BTreeMap::from([(-6, 1), (-5, 1)])
    } else {
        BTreeMap::from([(-4, 1)])
    }
}

/// Bigraded HH of k[x]/x⁶ against `H^{−a}(C)` for `a ≤ 2·kmax + 1`, each computed twice: with the
/// bimodule read off the cohomology of C and with the twisted (anti-)diagonal `k[ε]` taken
/// verbatim. Both must match the twisted answer in degree `a + 2` and vanish in weight 0.
pub fn lemma_checks<S: Scalar>(res: &PeriodicResolution<S>, c: &CCohomology<S>, kmax: usize) -> Result<Vec<Check>> {
    let mut checks = res.checks();
    let bound = format!("depth {}, C weight ≤ {}", res.depth(), c.bound);
    for a in 0..=2 * kmax + 1 {
        let p = a as i32 + 2;
        if p >= res.depth() as i32 || 3 * a + 1 > c.bound {
            checks.push(Check::new(format!("lemma.a{a}"), "in range", &bound, false, "bounds too small"));
            continue;
        }
        let derived = WeightedBimodule::from_c_cohomology(c, a)?;
        let verbatim = WeightedBimodule::twisted_dual_numbers(-(a as i32), 3 * a as i32, a % 2 == 1)?;
        let hd = hochschild_cohomology_bigraded(res, &derived)?;
        let hv = hochschild_cohomology_bigraded(res, &verbatim)?;
        let want = expected_twisted_answer(a);
        let got = column(&hd, p);
        let label = if a % 2 == 0 { "k[ε](6)" } else { "k(4)" };
        checks.push(Check::new(
            format!("lemma.a{a}"),
            format!("HH^{p}(k[x]/x⁶, H^{}(C)) ≅ {label}", -(a as i32)),
            &bound,
            got == want,
            format!("weight → dim {got:?}"),
        ));
        checks.push(Check::new(
            format!("lemma.a{a}.verbatim"),
            format!("the verbatim twisted bimodule for H^{}(C) gives the same table", -(a as i32)),
            &bound,
            hd.dims == hv.dims,
            format!("{} cells", hv.dims.len()),
        ));
        if a >= 1 {
            checks.push(Check::new(
                format!("lemma.a{a}.weight0"),
                format!("HH^{{{p},0}}(k[x]/x⁶, H^{}(C)) = 0", -(a as i32)),
                &bound,
                hd.dim(p, 0) == 0,
                format!("dim {}", hd.dim(p, 0)),
            ));
        }
    }
    Ok(checks)
}
