use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn ncc(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ncc"));
    cmd.args(args).env_remove("NCC_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("ncc runs")
}

fn scenario(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name).display().to_string()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

/// Result records, header dropped.
fn records(out: &Output) -> Vec<Value> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    let header: Value = serde_json::from_str(lines.next().expect("header line")).unwrap();
    assert_eq!(header["kind"], "header");
    lines.map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn verdicts(out: &Output) -> Vec<Value> {
    records(out).into_iter().map(|r| r["verdict"].clone()).collect()
}

#[test]
fn m2_examples() {
    let out = ncc(&["check", &scenario("m2_latitude.json")], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(verdicts(&out), vec![Value::Bool(true), Value::Bool(false), Value::Bool(false)]);
    for r in records(&out) {
        if r["verdict"] == true {
            assert!(r["distance"].as_f64().unwrap() >= r["bound"].as_f64().unwrap() - 1e-9);
        }
    }
}

#[test]
fn moyal_cone_examples() {
    let out = ncc(&["check", &scenario("moyal_cone.json")], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(verdicts(&out), vec![Value::Bool(true), Value::Bool(false), Value::Bool(true)]);
    assert_eq!(records(&out)[0]["provenance"]["truncation"], 32);
}

#[test]
fn undetermined_sets_exit_two() {
    let out = ncc(&["check", &scenario("moyal_levels.json")], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(verdicts(&out), vec!["Causal", "Causal", "Undetermined"]);
}

#[test]
fn empty_pair_list() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "empty.json", r#"{"model":"m2","dirac":{"d1":0,"d2":1},"pairs":[]}"#);
    let out = ncc(&["check", &s], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(records(&out).is_empty());
}

#[test]
fn schema_errors_name_the_path_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "bad.json",
        r#"{"model":"two_sheet","dirac":{"m_re":1},"pairs":[
            {"id":"a","from":{"t":0,"x":0,"sheet":"+"},"to":{"t":1,"x":0,"sheet":"up"}}]}"#,
    );
    let target = dir.path().join("out.jsonl");
    let out = ncc(&["check", &s, "--out", target.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("pairs[0].to.sheet"), "{err}");
    assert!(!target.exists());

    std::fs::write(&target, "previous\n").unwrap();
    let out = ncc(&["check", &s, "--out", target.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(std::fs::read_to_string(&target).unwrap(), "previous\n");

    let missing = dir.path().join("missing.json");
    assert_eq!(ncc(&["check", missing.to_str().unwrap()], &[]).status.code(), Some(1));
    assert_eq!(ncc(&["verify", &scenario("m2_latitude.json")], &[]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic_apart_from_header() {
    let dir = tempfile::tempdir().unwrap();
    let body = |name: &str, threads: &str| {
        let path = dir.path().join(name);
        let out = ncc(
            &["check", &scenario("two_sheet_higgs.json"), "--out", path.to_str().unwrap()],
            &[("NCC_THREADS", threads)],
        );
        assert_eq!(out.status.code(), Some(0));
        let text = std::fs::read_to_string(path).unwrap();
        text.split_once('\n').unwrap().1.to_string()
    };
    let a = body("a.jsonl", "1");
    let b = body("b.jsonl", "4");
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 3);
}

#[test]
fn gauge_field_does_not_change_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let with = std::fs::read_to_string(scenario("two_sheet_dirac.json")).unwrap();
    let mut doc: Value = serde_json::from_str(&with).unwrap();
    doc.as_object_mut().unwrap().remove("A");
    let without = write(dir.path(), "plain.json", &doc.to_string());
    let a = ncc(&["check", &scenario("two_sheet_dirac.json")], &[]);
    let b = ncc(&["check", &without], &[]);
    assert_eq!(records(&a), records(&b));
    assert!(String::from_utf8_lossy(&a.stderr).contains("ignoring `A`"));
    assert_eq!(verdicts(&a), vec![Value::Bool(true), Value::Bool(false), Value::Bool(true)]);
}

#[test]
fn scan_cone_small_grid() {
    let out = ncc(&["scan-cone", "--steps", "3"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,causal"));
    let rows: Vec<(f64, f64, bool)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 9);
    let causal: Vec<_> = rows.iter().filter(|r| r.2).map(|r| (r.0, r.1)).collect();
    assert_eq!(causal, vec![(0.0, 0.0), (1.0, -1.0), (1.0, 0.0), (1.0, 1.0)]);
    for r in &rows {
        let mirror = rows.iter().find(|m| m.0 == r.0 && m.1 == -r.1).unwrap();
        assert_eq!(mirror.2, r.2);
    }
    assert_eq!(ncc(&["scan-cone", "--re-min", "1", "--re-max", "-1"], &[]).status.code(), Some(1));
}

#[test]
fn bound_curve_rows() {
    let out = ncc(&["bound-curve", "--theta", "2", "--n-max", "3"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let bounds: Vec<f64> = text.lines().skip(1).map(|l| l.split_once(',').unwrap().1.parse().unwrap()).collect();
    let pi = std::f64::consts::PI;
    let want = [pi / 2.0, pi / (2.0 * 2f64.sqrt()), pi / (2.0 * 3f64.sqrt()), pi / 4.0];
    for (b, w) in bounds.iter().zip(want) {
        assert!((b - w).abs() < 1e-12);
    }
    assert_eq!(ncc(&["bound-curve", "--theta", "-1", "--n-max", "3"], &[]).status.code(), Some(1));
}

#[test]
fn zitter_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.json");
    let out = ncc(&["zitter", "--mass", "9.1093837e-31", "--out", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("cross-sheet bound"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let period = report["period_s"].as_f64().unwrap();
    let oracle = std::f64::consts::PI * 1.054571817e-34 / (9.1093837e-31 * 299792458f64.powi(2));
    assert!((period - oracle).abs() < 0.01 * oracle);
    assert_eq!(report["cross_sheet_bound_s"].as_f64().unwrap(), period / 2.0);
    assert!((report["natural_bound"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    assert_eq!(ncc(&["zitter", "--mass", "0"], &[]).status.code(), Some(1));
}

#[test]
fn verify_agrees_with_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "verify.json",
        r#"{"model":"moyal","params":{"theta":1,"truncation":32},"options":{"budget":600},"pairs":[
            {"id":"future","from":{"kind":"coherent","kappa_re":0,"kappa_im":0},"to":{"kind":"coherent","kappa_re":1,"kappa_im":0}},
            {"id":"spatial","from":{"kind":"coherent","kappa_re":0,"kappa_im":0},"to":{"kind":"coherent","kappa_re":0,"kappa_im":0.5}},
            {"id":"edge","from":{"kind":"coherent","kappa_re":0,"kappa_im":0},"to":{"kind":"coherent","kappa_re":0.7071067811865476,"kappa_im":0.7071067811865476}}]}"#,
    );
    let out = ncc(&["verify", &s, "--verbose"], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rs = records(&out);
    let ops: Vec<_> = rs.iter().map(|r| r["operator"].as_str().unwrap()).collect();
    assert_eq!(ops, vec!["no_witness", "witness", "no_witness"]);
    assert!(rs.iter().all(|r| r["agreement"] == true));
    assert!(rs[1]["margin"].as_f64().unwrap() > 1e-4);
    let w = &rs[1]["witness"];
    assert_eq!(w["matrix"].as_array().unwrap().len(), 32);
    assert!(w["lambda_max"].as_f64().unwrap() <= 1e-9);
}
