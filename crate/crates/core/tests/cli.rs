use std::process::{Command, Output};

use serde_json::Value;

fn wemono(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wemono")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report_json(extra: &[&str]) -> Value {
    let o = wemono(&[&["report", "--format", "json"], extra].concat());
    assert!(o.status.success());
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn claim<'a>(r: &'a Value, id: &str) -> &'a Value {
    r["suites"].as_array().unwrap().iter().flat_map(|s| s["claims"].as_array().unwrap()).find(|c| c["id"] == id).unwrap()
}

#[test]
fn verify_presentation() {
    let o = wemono(&["verify", "presentation"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("cor2.3.relations") && s.contains("12/12 relations hold"));
}

#[test]
fn verify_chern() {
    let o = wemono(&["verify", "chern"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("c1^2 = 16, c2 = 56, chi = 6, q = 0, p_g = 5"));
}

#[test]
fn verify_all_exits_zero() {
    let o = wemono(&["verify", "all"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains(" 0 failed"));
}

#[test]
fn resolve_cycles() {
    for c in ["lambda8", "lambda40"] {
        assert_eq!(stdout(&wemono(&["resolve", c])).trim(), "(-3, -3)");
    }
    let o = wemono(&["resolve", "lambda24", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let cyc: Vec<i64> = v["cycle"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(cyc.len(), 16);
    let fours: Vec<usize> = cyc.iter().enumerate().filter(|(_, &b)| b == -4).map(|(i, _)| i).collect();
    assert_eq!(fours.len(), 2);
    assert_eq!(fours[1] - fours[0], 8);
}

#[test]
fn resolve_rejects_unknown_cusp() {
    let o = wemono(&["resolve", "lambda9"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown cusp"));
}

#[test]
fn resolve_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l8.svg");
    let o = wemono(&["resolve", "lambda8", "--svg", path.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains(r#"version="1.1""#));
    assert!(svg.contains("(-3)"));
    assert_eq!(svg.matches("<svg").count(), svg.matches("</svg>").count());
}

#[test]
fn report_validates_against_schema() {
    let schema: Value = serde_json::from_str(include_str!("../../../schema/report.schema.json")).unwrap();
    let r = report_json(&[]);
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    let errors: Vec<String> = compiled.validate(&r).err().into_iter().flatten().map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    let orbits = claim(&r, "prop4.3.orbits");
    assert_eq!(orbits["details"]["sizes"], serde_json::json!([8, 8, 24, 40, 40, 120]));
    assert_eq!(orbits["details"]["orbits"].as_array().unwrap().len(), 6);
    assert_eq!(claim(&r, "prop4.3.pairing")["status"], "Derived");
}

#[test]
fn claim_ids_are_unique() {
    let r = report_json(&[]);
    let mut ids: Vec<&str> =
        r["suites"].as_array().unwrap().iter().flat_map(|s| s["claims"].as_array().unwrap()).map(|c| c["id"].as_str().unwrap()).collect();
    let n = ids.len();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), n);
}

#[test]
fn text_report_is_byte_identical() {
    let a = wemono(&["report"]);
    let b = wemono(&["report", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_body_is_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(report_json(&[])), strip(report_json(&["--jobs", "3"])));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = wemono(&["verify", "theorem-a", "--cache", d]);
    assert!(cold.status.success());
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let warm = wemono(&["verify", "theorem-a", "--cache", d]);
    assert!(warm.status.success());
    assert_eq!(cold.stdout, warm.stdout);
}

#[test]
fn cubics_and_orbits() {
    let s = stdout(&wemono(&["cubics"]));
    assert!(s.contains("(13 - 8*X)*z2^3"));
    assert!(s.contains("(8 - 5*X)*z1*z2^2"));
    let o: Value = serde_json::from_str(&stdout(&wemono(&["orbits", "--format", "json"]))).unwrap();
    assert_eq!(o["cosets"], 240);
    assert_eq!(o["orbits"].as_array().unwrap().len(), 6);
}
