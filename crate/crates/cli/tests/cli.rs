use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use densikit::certfile::{certificate_from_json, parse_certificate, render_certificate};
use densikit::certificates::{Verdict, VerificationReport};
use serde_json::Value;

fn crate_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn densikit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_densikit")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    crate_path(&format!("golden/certificates/{name}")).to_str().unwrap().to_string()
}

fn data(name: &str) -> String {
    crate_path(&format!("tests/data/{name}")).to_str().unwrap().to_string()
}

#[test]
fn exit_codes_per_verdict() {
    assert_eq!(code(&densikit(&["verify", &golden("danielewski_z2-1.cert")])), 0);
    assert_eq!(code(&densikit(&["verify", &data("mutated_label.cert")])), 1);
    let o = densikit(&["verify", &data("malformed.cert")]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("line 16"));
    assert_eq!(code(&densikit(&["verify", &data("no_such_file.cert")])), 3);
}

#[test]
fn insufficient_evidence_exits_two() {
    let text = std::fs::read_to_string(golden("danielewski_z2-1.cert")).unwrap();
    let start = text.find("[cond1 coverage]").unwrap();
    let end = text.find("[sufficiency]").unwrap();
    let stripped = format!("{}{}", &text[..start], &text[end..]).replace("expect = VERIFIED", "expect = INSUFFICIENT");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("no_cond1.cert");
    std::fs::write(&path, stripped).unwrap();
    let o = densikit(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("expected: INSUFFICIENT (matches)"));
}

#[test]
fn several_files_combine_exit_codes() {
    let ok = golden("danielewski_z2-1.cert");
    let bad = data("mutated_label.cert");
    let broken = data("malformed.cert");
    assert_eq!(code(&densikit(&["verify", &ok, &bad])), 1);
    assert_eq!(code(&densikit(&["verify", &bad, &broken, &ok])), 3);
    // output order follows the argument order
    let out = stdout(&densikit(&["verify", &bad, &ok]));
    assert!(out.find("mutated_label").unwrap() < out.find("danielewski_z2-1").unwrap());
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(code(&densikit(&["frobnicate"])), 3);
    assert_eq!(code(&densikit(&["verify"])), 3);
    assert_eq!(code(&densikit(&["--help"])), 0);
    assert_eq!(code(&densikit(&["catalog", "sl", "--n", "2"])), 3);
    assert_eq!(code(&densikit(&["catalog", "sp", "--n", "2", "--K", "2", "--a", "0,1"])), 3);
    assert_eq!(code(&densikit(&["gv", "build", "--group", "gl", "--n", "2", "--K", "2"])), 3);
    assert_eq!(code(&densikit(&["gv", "build", "--group", "sl", "--n", "2", "--K", "2", "--reduced"])), 3);
}

#[test]
fn verify_json_round_trips() {
    let files = [golden("danielewski_z2-1.cert"), golden("sp_n2_K2.cert"), data("mutated_label.cert")];
    let mut args = vec!["verify", "--json"];
    args.extend(files.iter().map(String::as_str));
    let o = densikit(&args);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), files.len());
    for (line, file) in lines.iter().zip(&files) {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["file"].as_str().unwrap(), file);
        let report: VerificationReport = serde_json::from_value(v["report"].clone()).unwrap();
        assert_eq!(serde_json::to_value(&report).unwrap(), v["report"]);
        let expected = if file.contains("mutated") { Verdict::Refuted } else { Verdict::Verified };
        assert_eq!(report.verdict, expected);
        assert_eq!(v["exit_code"].as_u64().unwrap(), expected.exit_code() as u64);
    }
}

#[test]
fn certificate_json_round_trips() {
    for name in ["danielewski_z3-z.cert", "sp_n2_K2.cert", "sl_n3_K2_i3_a2.cert"] {
        let text = std::fs::read_to_string(golden(name)).unwrap();
        let json = stdout(&densikit(&["convert", &golden(name), "--to", "json"]));
        let cert = certificate_from_json(&json).unwrap();
        assert_eq!(render_certificate(&parse_certificate(&text).unwrap()), text);
        assert_eq!(render_certificate(&cert), text);

        let dir = tempfile::tempdir().unwrap();
        let jpath = dir.path().join("c.json");
        std::fs::write(&jpath, &json).unwrap();
        assert_eq!(code(&densikit(&["verify", jpath.to_str().unwrap()])), 0);
        let back = stdout(&densikit(&["convert", jpath.to_str().unwrap()]));
        assert_eq!(back, text);
    }
}

#[test]
fn catalog_json_output_parses() {
    let o = densikit(&["catalog", "danielewski", "--p", "z^3-z", "--json"]);
    assert_eq!(code(&o), 0);
    let cert = certificate_from_json(&stdout(&o)).unwrap();
    let text = std::fs::read_to_string(golden("danielewski_z3-z.cert")).unwrap();
    assert_eq!(render_certificate(&cert), text);
}

#[test]
fn catalog_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pl.cert");
    let o = densikit(&[
        "catalog",
        "product-line",
        "--from",
        &golden("danielewski_z4-5z2+4.cert"),
        "--field",
        "theta3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    assert_eq!(code(&densikit(&["verify", out.to_str().unwrap()])), 0);
}

#[test]
fn flow_checks_and_missing_flow() {
    let file = golden("danielewski_z2-1.cert");
    let o = densikit(&["flow", &file, "theta2", "--check"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("x -> y*t^2 + 2*z*t + x"));
    assert!(out.contains("z -> y*t + z"));
    assert_eq!(out.matches("PASS").count(), 6);
    assert_eq!(code(&densikit(&["flow", &file, "theta1"])), 2);
    assert_eq!(code(&densikit(&["flow", &file, "theta9"])), 3);
}

#[test]
fn gv_commands() {
    let o = densikit(&["gv", "partial-check", "--group", "sl", "--n", "3", "--K", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().last().unwrap().ends_with("index tuples pass"));
    assert!(!stdout(&o).contains("FAIL"));
    let o = densikit(&["gv", "smooth", "--group", "sl", "--n", "2", "--K", "2", "--i", "1", "--a", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("agree: yes"));
    let o = densikit(&["gv", "build", "--group", "sp", "--n", "2", "--K", "2", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["components"].as_array().unwrap().len(), 4);
}
