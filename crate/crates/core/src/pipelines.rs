//! One function per command: each runs a computation and returns its certificate.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::ainfty::{AInftyAlgebra, OppositeConvention};
use crate::catalog::{make_algebra, CatalogKey};
use crate::certificate::{Certificate, Check};
use crate::config::Config;
use crate::error::Result;
use crate::ext::{cohomology_of_c, compare_ext_with_c, ext_algebra, lemma_checks, Monogenic, PeriodicResolution};
use crate::hochschild::{hochschild_dims, mixed_complex_checks, Hochschild};
use crate::io::MorphismDocument;
use crate::scalar::Scalar;

fn params(config: &Config, extra: &[(&str, String)]) -> BTreeMap<String, String> {
    let mut p = config.to_params();
    for (k, v) in extra {
        p.insert(k.to_string(), v.clone());
    }
    p
}

fn dims_json(t: &BTreeMap<(i32, i32), usize>) -> serde_json::Value {
    serde_json::Value::Array(
        t.iter().map(|(&(d, w), &n)| serde_json::json!({"degree": d, "weight": w, "dim": n})).collect(),
    )
}

/// A∞ relations and strict unitality of an algebra, plus the relations of its opposite.
pub fn check_ainfty<S: Scalar>(algebra: &AInftyAlgebra<S>, arity: usize, config: &Config) -> Result<Certificate> {
    let mut cert = Certificate::new(
        "check-ainfty",
        params(config, &[("algebra", algebra.name().to_string()), ("arity", arity.to_string())]),
    );
    let rel = algebra.check_relations(arity);
    cert.push(Check::new("relations", "A∞ relations", format!("arity ≤ {arity}"), rel.passed, rel.summary()));
    let unit = algebra.check_unitality();
    cert.push(Check::new("unitality", "strict unitality", "", unit.passed, unit.summary()));
    let passing: Vec<OppositeConvention> = [OppositeConvention::Negated, OppositeConvention::Literal]
        .into_iter()
        .filter(|&c| algebra.opposite_with(c).check_relations(arity).passed)
        .collect();
    cert.push(Check::new(
        "opposite",
        "the opposite algebra satisfies the A∞ relations",
        format!("arity ≤ {arity}"),
        !passing.is_empty(),
        format!("{passing:?}"),
    ));
    Ok(cert)
}

pub fn check_catalog<S: Scalar>(key: &CatalogKey, arity: usize, config: &Config) -> Result<Certificate> {
    check_ainfty(&make_algebra::<S>(key)?, arity, config)
}

/// The single-generator algebras the periodic resolution covers.
pub fn monogenic(key: &CatalogKey) -> Option<Monogenic> {
    match key {
        CatalogKey::Lambda1 => Monogenic::new(2, 1, 1).ok(),
        CatalogKey::DualNumbers => Monogenic::new(2, 0, 1).ok(),
        CatalogKey::TruncatedPoly(n) => Monogenic::new(*n, 0, 1).ok(),
        CatalogKey::YCube => Monogenic::new(3, 1, 1).ok(),
        _ => None,
    }
}

/// Hochschild homology by weight slices, the mixed-complex identities and, for monogenic
/// algebras, agreement with the periodic resolution.
pub fn hochschild<S: Scalar>(key: &CatalogKey, max_weight: usize, config: &Config) -> Result<Certificate> {
    let wmax = max_weight as i32;
    let alg = Arc::new(make_algebra::<S>(key)?);
    let h = Hochschild::new(alg)?;
    let mut cert = Certificate::new(
        "hochschild",
        params(config, &[("algebra", key.to_string()), ("max_weight", max_weight.to_string())]),
    );
    cert.extend(mixed_complex_checks(&h, wmax)?);
    let bar = hochschild_dims(&h, wmax)?;
    cert.attach("dims", dims_json(&bar));
    cert.attach("degree_convention", serde_json::json!("cohomological: HH_n sits in degree -n"));
    if let Some(m) = monogenic(key) {
        let depth = (max_weight + 2).max(2);
        let res = PeriodicResolution::<S>::build(m, depth)?;
        let r = res.hochschild_homology()?;
        let per: BTreeMap<(i32, i32), usize> =
            r.dims.iter().filter(|c| c.weight <= wmax).map(|c| ((c.degree, c.weight), c.dim)).collect();
        cert.extend(r.checks.iter().cloned());
        cert.push(Check::new(
            "bar_vs_periodic",
            "HH dims from bar slices equal those from the periodic resolution",
            format!("weight ≤ {wmax}"),
            per == bar && res.homology_edge() > wmax,
            if per == bar { "agree".to_string() } else { format!("periodic {per:?}") },
        ));
    }
    if *key == CatalogKey::Lambda1 {
        let ok = (0..=wmax).all(|w| {
            let cells: Vec<(i32, usize)> =
                bar.iter().filter(|((_, cw), _)| *cw == w).map(|(&(d, _), &n)| (d, n)).collect();
            if w == 0 {
                cells == vec![(0, 1)]
            } else {
                cells == vec![(0, 1), (1, 1)]
            }
        });
        cert.push(Check::new(
            "profile",
            "one class in degree 0 at every weight, one in degree 1 at every weight ≥ 1",
            format!("weight ≤ {wmax}"),
            ok,
            format!("{bar:?}"),
        ));
    }
    if *key == CatalogKey::DualNumbers {
        let hh1: Vec<_> = bar.iter().filter(|((d, _), _)| *d == -1).collect();
        cert.push(Check::new(
            "hh1",
            "degree −1 is one-dimensional and sits in weight 1",
            format!("weight ≤ {wmax}"),
            hh1 == vec![(&(-1, 1), &1)],
            format!("{hh1:?}"),
        ));
    }
    Ok(cert)
}

/// Ext over k[y]/y³, the cohomology of C, their comparison and the twisted HH of k[x]/x⁶.
pub fn ext<S: Scalar>(config: &Config) -> Result<Certificate> {
    let mut cert = Certificate::new("ext", params(config, &[]));
    let ext = ext_algebra::<S>(config.ext_truncation)?;
    cert.extend(ext.report.checks.iter().cloned());
    let c = cohomology_of_c::<S>(config.c_bound)?;
    cert.extend(c.report.checks.iter().cloned());
    cert.push(compare_ext_with_c(&ext.report, &c.report, config.ext_truncation, config.c_bound));
    let kmax = 2;
    let depth = config.periodic_depth.max(2 * kmax + 4);
    let res = PeriodicResolution::<S>::build(Monogenic::new(6, 0, 1)?, depth)?;
    let c_lemma = if config.c_bound >= 6 * kmax + 4 { c } else { cohomology_of_c::<S>(6 * kmax + 4)? };
    cert.extend(lemma_checks(&res, &c_lemma, kmax)?);
    cert.attach("twist_ledger", serde_json::json!(res.twist_ledger()));
    cert.attach("ext_dims", serde_json::to_value(&ext.report.dims).unwrap_or_default());
    cert.attach("c_dims", serde_json::to_value(&c_lemma.report.dims).unwrap_or_default());
    Ok(cert)
}

pub fn solve_morphism<S: Scalar>(config: &Config) -> Result<(Certificate, MorphismDocument)> {
    let (_, g, mut cert) = crate::solver::solve_to_arity::<S>(&config.solver(), config.solver_arity)?;
    cert.parameters = params(config, &[("N", config.solver_arity.to_string())]);
    Ok((cert, MorphismDocument::from_prefix(&g)))
}

pub fn certify_ten_dim<S: Scalar>(config: &Config) -> Result<(crate::certify::TenDim<S>, Certificate)> {
    let solver = config.certify_solver();
    let (ten, mut cert) = crate::certify::certify_ten_dim::<S>(&solver, config.certify_arity)?;
    cert.parameters = params(
        config,
        &[
            ("N", config.certify_arity.to_string()),
            ("W", solver.weight_bound.to_string()),
            ("L", solver.length_bound.to_string()),
        ],
    );
    Ok((ten, cert))
}

pub fn verify_section4<S: Scalar>(config: &Config) -> Result<Certificate> {
    let mut cert = crate::certify::verify_section4::<S>(config.section4_weight)?;
    cert.parameters = params(config, &[]);
    Ok(cert)
}

/// The algebras whose relations and Hochschild identities the full suite checks.
pub fn suite_algebras() -> Vec<CatalogKey> {
    vec![
        CatalogKey::Lambda1,
        CatalogKey::DualNumbers,
        CatalogKey::TruncatedPoly(6),
        CatalogKey::YCube,
        CatalogKey::FreeC(6),
        CatalogKey::Tensor(Box::new(CatalogKey::Lambda1), Box::new(CatalogKey::DualNumbers)),
    ]
}

/// Every pipeline, in a fixed order, as `(file stem, certificate)`.
pub fn run_all<S: Scalar>(config: &Config) -> Result<Vec<(String, Certificate)>> {
    let mut out = Vec::new();
    for key in suite_algebras() {
        out.push((format!("check-ainfty.{key}"), check_catalog::<S>(&key, config.check_arity, config)?));
    }
    for key in suite_algebras().into_iter().filter(|k| !matches!(k, CatalogKey::FreeC(_))) {
        out.push((format!("hochschild.{key}"), hochschild::<S>(&key, config.hochschild_weight, config)?));
    }
    out.push(("ext".into(), ext::<S>(config)?));
    out.push(("solve-morphism".into(), solve_morphism::<S>(config)?.0));
    out.push(("certify-10dim".into(), certify_ten_dim::<S>(config)?.1));
    out.push(("verify-section4".into(), verify_section4::<S>(config)?));
    Ok(out)
}
