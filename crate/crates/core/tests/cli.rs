use std::path::{Path, PathBuf};

use dgcat::cli::{run_with, schema, Document, Kind};
use dgcat::fixtures;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn fx(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut argv = vec!["dgcat".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn json_report(args: &[&str]) -> (i32, serde_json::Value) {
    let mut a = args.to_vec();
    a.extend(["--output", "json"]);
    let r = run(&a);
    let text = if r.out.trim_start().starts_with("{\n  \"body\"") { r.err } else { r.out };
    (r.code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

#[test]
fn shipped_fixtures_are_current_and_round_trip() {
    for (name, doc) in fixtures::shipped() {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(text, doc.to_text(), "{name} is stale; run the write_fixtures example");
        let parsed = Document::parse(&text).unwrap();
        let again = match parsed.kind {
            Kind::Category => schema::category_document(&schema::category_from(&parsed).unwrap()),
            Kind::Functor => schema::functor_document(&schema::functor_from(&parsed).unwrap()),
            Kind::TwistedComplex => schema::complex_document(&schema::complex_from(&parsed).unwrap()),
            Kind::TwistedMorphism => schema::morphism_document(&schema::morphism_from(&parsed).unwrap()),
            Kind::KaroubiObject => schema::karoubi_document(&schema::karoubi_from(&parsed).unwrap()),
            Kind::GenCertificate => schema::certificate_document(&schema::certificate_from(&parsed).unwrap()),
            Kind::SodClaim => schema::claim_document(&schema::claim_from(&parsed).unwrap()),
            Kind::EquivCertificate => schema::equiv_document(&schema::equiv_from(&parsed).unwrap()),
            Kind::SerreData => schema::serre_document(&schema::serre_from(&parsed).unwrap()),
            Kind::Ledger => schema::ledger_document(&schema::ledger_from(&parsed).unwrap().unwrap(), parsed.field().unwrap()),
        };
        assert_eq!(again.to_text(), text, "{name} does not round-trip");
    }
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run(&["validate", &fx("kronecker.json")]).code, 0);
    let r = run(&["validate", &fx("broken_differential.json")]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("d^2 != 0 on Hom(x,y) in degree 0"), "{}", r.out);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"kind\": \"category\", \"field\": \"Q\"").unwrap();
    let r = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("invalid JSON"));
    std::fs::write(&bad, "{\"kind\": \"category\", \"field\": \"Q\", \"body\": {}, \"schema_version\": 1}").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).code, 2);
    assert_eq!(run(&["validate", "/nonexistent.json"]).code, 2);
    assert_eq!(run(&["validate", &fx("kronecker.json"), "--field", "Fp:101"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    for name in [
        "point.json",
        "epsilon.json",
        "kronecker_collapse.json",
        "kronecker_ev.json",
        "kronecker_ev_cone.json",
        "kronecker_summand.json",
        "kronecker_cone_certificate.json",
        "point_block_qe.json",
        "a2_serre.json",
        "kronecker_ledger.json",
    ] {
        let r = run(&["validate", &fx(name)]);
        assert_eq!(r.code, 0, "{name}: {}{}", r.out, r.err);
    }
}

#[test]
fn ext_tables() {
    let (code, r) = json_report(&["ext", &fx("kronecker.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["tables"][0]["cells"], serde_json::json!([["{0:1}", "{0:2}"], ["{}", "{0:1}"]]));
    let (_, r) = json_report(&["ext", &fx("point.json")]);
    assert_eq!(r["tables"][0]["cells"], serde_json::json!([["{0:1}"]]));
    let (_, r) = json_report(&["ext", &fx("beilinson3.json"), "--objects", "1,2,3"]);
    assert_eq!(r["tables"][0]["cells"][0], serde_json::json!(["{0:1}", "{0:3}", "{0:6}"]));
    assert_eq!(r["tables"][0]["cells"][2], serde_json::json!(["{}", "{}", "{0:1}"]));
    assert_eq!(run(&["ext", &fx("kronecker.json"), "--objects", "e9"]).code, 2);
}

#[test]
fn check_sod_claims() {
    assert_eq!(run(&["check-sod", &fx("kronecker_sod.json")]).code, 0);
    let r = run(&["check-sod", &fx("kronecker_sod_broken.json")]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("- fail: e2 @ cut 1"), "{}", r.out);
    assert_eq!(run(&["check-sod", &fx("kronecker_squared_sod.json"), "--jobs", "2"]).code, 0);
    assert_eq!(run(&["check-sod", &fx("kronecker_mutated_sod.json")]).code, 0);
    assert_eq!(run(&["check-sod", &fx("beilinson3_sod.json"), "--jobs", "1"]).code, 0);
    assert_eq!(run(&["check-sod", &fx("kronecker.json")]).code, 2);
}

#[test]
fn ring_queries_on_the_motivic_ledger() {
    let ledger = fx("motivic_ledger.json");
    let (code, r) = json_report(&["ring", &ledger, "eq", "[P1]*[P1]", "4*[pt]"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdicts"][0]["detail"], "equal");
    assert!(r["provenance"].as_array().unwrap().iter().any(|p| p.as_str().unwrap().contains("verified-sod")));
    let r = run(&["ring", &ledger, "measure"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("pass: μ(L)=1"), "{}", r.out);
    assert!(r.out.contains("[PAPER]"));
    let r = run(&["ring", &ledger, "eq", "[P1]", "3*[pt]"]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("unequal_within_bound"));
    assert_eq!(run(&["ring", &ledger, "eq", "[Q]", "[pt]"]).code, 2);
}

#[test]
fn ring_mutations_are_verified_and_atomic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ledger.json");
    let l = path.to_str().unwrap();
    assert_eq!(run(&["ring", l, "init", "--gamma"]).code, 0);
    let (_, r) = json_report(&["ring", l, "invariants"]);
    assert_eq!(r["notes"][0], "rank 0");
    assert_eq!(run(&["ring", l, "register", "P1", "--geometric", "--category", &fx("kronecker.json")]).code, 0);
    assert_eq!(run(&["ring", l, "register", "A", "--category", &fx("a2.json")]).code, 1);
    let before = std::fs::read_to_string(&path).unwrap();
    let r = run(&["ring", l, "relate", "--sod", &fx("kronecker_sod_broken.json"), "--ambient", "P1"]);
    assert_eq!(r.code, 1, "{}{}", r.out, r.err);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), before);
    assert_eq!(run(&["ring", l, "relate", "--sod", &fx("kronecker_sod.json"), "--ambient", "P1"]).code, 0);
    let r = run(&["ring", l, "eq", "[P1]", "2*[pt]"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("verified-sod"));
    assert_eq!(run(&["ring", l, "relate", "[P1] - 5", "--cite", "made up"]).code, 0);
    assert_eq!(run(&["ring", l, "fact", "P1", "P1", "4", "--cite", "c"]).code, 0);
    assert_eq!(run(&["ring", l, "fact", "P1", "P1", "8", "--cite", "c"]).code, 1);
    let r = run(&["ring", l, "invariants", "--degree-bound", "1"]);
    assert!(r.out.contains("Z^0 + Z/3"), "{}", r.out);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn constructions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cone.json");
    let r = run(&["cone", &fx("kronecker_ev.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), std::fs::read_to_string(fixture("kronecker_ev_cone.json")).unwrap());

    let r = run(&["reduce", &fx("cone_id.json")]);
    assert_eq!(r.code, 0, "{}", r.err);
    let doc = Document::parse(&r.out).unwrap();
    assert!(schema::complex_from(&doc).unwrap().is_empty());

    let r = run(&["tensor", &fx("kronecker.json"), &fx("kronecker.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, std::fs::read_to_string(fixture("kronecker_squared.json")).unwrap());

    let (code, r) = json_report(&["karoubi", &fx("kronecker_summand.json"), &fx("kronecker_summand.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["tables"][0]["cells"], serde_json::json!([["1"]]));

    assert_eq!(run(&["check-qe", &fx("point_block_qe.json")]).code, 0);
    assert_eq!(run(&["serre", &fx("a2_serre.json")]).code, 0);
    let r = run(&["serre", &fx("kronecker_identity_serre.json")]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("dim H^0 Hom(e1,e2) = 2 but dim H^0 Hom(e2,Se1) = 0"), "{}", r.out);

    let e2 = dir.path().join("e2.json");
    let c = std::sync::Arc::new(fixtures::kronecker(dgcat::exactlin::Field::Rational));
    let x = dgcat::pretr::TwistedComplex::embed(c.clone(), dgcat::dgcore::ObjId(1));
    std::fs::write(&e2, schema::complex_document(&x).to_text()).unwrap();
    assert_eq!(run(&["iso", e2.to_str().unwrap(), e2.to_str().unwrap(), "--seed", "7"]).code, 0);
    assert_eq!(run(&["iso", &fx("kronecker_ev_cone.json"), e2.to_str().unwrap()]).code, 1);
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: serde_json::Value| {
        v["timing_ms"] = 0.into();
        v
    };
    let a = strip(json_report(&["check-sod", &fx("kronecker_squared_sod.json"), "--jobs", "4"]).1);
    let b = strip(json_report(&["check-sod", &fx("kronecker_squared_sod.json"), "--jobs", "1"]).1);
    assert_eq!(a["verdicts"], b["verdicts"]);
    let a = run(&["ext", &fx("beilinson3.json"), "--output", "json"]).out;
    let b = run(&["ext", &fx("beilinson3.json"), "--output", "json"]).out;
    let (a, b): (serde_json::Value, serde_json::Value) = (serde_json::from_str(&a).unwrap(), serde_json::from_str(&b).unwrap());
    assert_eq!(strip(a), strip(b));
}

#[test]
fn binary_entry_point() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_dgcat")).args(["validate", &fx("point.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_dgcat")).args(["check-sod", &fx("kronecker_sod_broken.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
