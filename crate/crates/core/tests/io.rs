mod common;

use ainf::certificate::{Certificate, Check};
use ainf::certify::{build_ten_dim, section4_cycle};
use ainf::config::Config;
use ainf::error::Error;
use ainf::io::{digest, from_json, read_json, to_json, write_json, AlgebraDocument, ChainDocument, MorphismDocument};
use ainf::solver::{solve_to_arity, SolverConfig};
use ainf::Q;
use common::catalog;

const KEYS: [&str; 7] = [
    "lambda1",
    "dual_numbers",
    "truncated_poly(6)",
    "y_cube",
    "free_C(6)",
    "tensor(lambda1,dual_numbers)",
    "truncated_poly(3)",
];

#[test]
fn algebra_documents_round_trip() {
    for key in KEYS {
        let a = catalog(key);
        let doc = AlgebraDocument::from_algebra(&a, "catalog");
        let text = to_json(&doc).unwrap();
        let back: AlgebraDocument = from_json(&text).unwrap();
        assert_eq!(back, doc, "{key}");
        let rebuilt = back.to_algebra::<Q>().unwrap();
        assert_eq!(rebuilt.ops(), a.ops(), "{key}");
        assert_eq!(rebuilt.unit(), a.unit(), "{key}");
        assert_eq!(to_json(&AlgebraDocument::from_algebra(&rebuilt, "catalog")).unwrap(), text, "{key}");
    }
}

#[test]
fn glued_algebra_round_trips_with_stable_hash() {
    let cfg = SolverConfig { weight_bound: 6, length_bound: 4, normalization: 1 };
    let (end, g, _) = solve_to_arity::<Q>(&cfg, 3).unwrap();
    let ten = build_ten_dim(&end, &g).unwrap();
    let doc = AlgebraDocument::from_algebra(&ten.algebra, "glued");
    let rebuilt = doc.to_algebra::<Q>().unwrap();
    assert_eq!(rebuilt.ops(), ten.algebra.ops());
    assert_eq!(digest(&doc).unwrap(), digest(&AlgebraDocument::from_algebra(&rebuilt, "glued")).unwrap());
    assert_eq!(digest(&doc).unwrap().len(), 64);

    let mdoc = MorphismDocument::from_prefix(&g);
    let g2 = from_json::<MorphismDocument>(&to_json(&mdoc).unwrap())
        .unwrap()
        .to_prefix(g.source.clone(), g.target.clone())
        .unwrap();
    assert_eq!(g2.components, g.components);
}

#[test]
fn chains_round_trip() {
    let cyc = section4_cycle::<Q>().unwrap();
    let t = catalog("tensor(lambda1,dual_numbers)");
    let c = cyc.total();
    let doc = ChainDocument::from_chain(&t, &c);
    let back: ChainDocument = from_json(&to_json(&doc).unwrap()).unwrap();
    assert_eq!(back.to_chain::<Q>(&t).unwrap(), c);
}

#[test]
fn zero_denominator_is_a_parse_error() {
    let a = catalog("dual_numbers");
    let mut doc = AlgebraDocument::from_algebra(&a, "");
    doc.operations[0].entries[0].output[0].1 = "1/0".into();
    let text = to_json(&doc).unwrap();
    let back: AlgebraDocument = from_json(&text).unwrap();
    assert!(matches!(back.to_algebra::<Q>(), Err(Error::Parse(_))));
    assert!(matches!(from_json::<AlgebraDocument>("{\"schema_version\": 1"), Err(Error::Parse(_))));
}

#[test]
fn unknown_basis_names_are_rejected() {
    let a = catalog("lambda1");
    let mut doc = AlgebraDocument::from_algebra(&a, "");
    doc.operations[0].entries[0].inputs[0] = "nope".into();
    assert!(doc.to_algebra::<Q>().is_err());
}

#[test]
fn certificates_round_trip_and_write_atomically() {
    let mut cert = Certificate::new("demo", Config::default().to_params());
    cert.push(Check::new("a", "1 = 1", "", true, "1"));
    cert.push(Check::new("b", "0 = 1", "", false, "witness"));
    assert!(!cert.verdict && cert.is_consistent());
    let dir = std::env::temp_dir().join(format!("ainf-io-{}", std::process::id()));
    let path = dir.join("cert.json");
    write_json(&path, &cert).unwrap();
    let back: Certificate = read_json(&path).unwrap();
    assert_eq!(back, cert);
    let leftovers: Vec<_> =
        std::fs::read_dir(&dir).unwrap().filter_map(|e| e.ok()).filter(|e| e.file_name() != "cert.json").collect();
    assert!(leftovers.is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_defaults_are_echoed() {
    let p = Config::default().to_params();
    assert_eq!(p["weight_bound"], "12");
    assert_eq!(p["length_bound"], "8");
    assert_eq!(p["certify_arity"], "8");
    let c = Config::default().certify_solver();
    assert_eq!((c.weight_bound, c.length_bound), (14, 8));
    let parsed: Config = from_json("{\"weight_bound\": 10}").unwrap();
    assert_eq!(parsed.weight_bound, 10);
    assert_eq!(parsed.length_bound, 8);
}
