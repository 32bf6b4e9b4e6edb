use std::path::PathBuf;

use involutive_cfk::cli::{run_cli, EXIT_INVALID, EXIT_NEGATIVE, EXIT_OK};
use involutive_cfk::corpus::CORPUS_TEXT;
use involutive_cfk::io::{parse_complex_file, serialize_raw_complex};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("icfk").chain(args.iter().copied()).map(String::from).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_cli(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("icfk-{}-{name}", std::process::id()))
}

#[test]
fn refuted_pair_exits_one() {
    let (code, out, _) = run(&["localeq", "--left", "trefoil", "--right", "unknot"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(out.contains("not locally equivalent"), "{out}");
}

#[test]
fn saved_certificate_drives_the_split() {
    let cert = temp("tt.cert");
    let product = "tensor1(trefoil,dual(trefoil))";
    let (code, _, err) = run(&["localeq", "--left", product, "--right", "unknot", "-o", cert.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    let (code, out, err) = run(&["--json", "split", "--complex", product, "--certificate", cert.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["acyclic_generators"], 8);
    assert_eq!(v["result"]["report"]["homotopy_identity"], true);
    // A certificate for some other complex is rejected as invalid input.
    let (code, _, _) = run(&["split", "--complex", "trefoil", "--certificate", cert.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    std::fs::remove_file(cert).ok();
}

#[test]
fn validation_exit_codes() {
    assert_eq!(run(&["validate", "--deep"]).0, EXIT_OK);
    let bad = temp("bad.icx");
    std::fs::write(&bad, "complex k\ngen a 0 0\ngen b 0 0\ndiff a b\nend\n").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).0, EXIT_INVALID);
    // Structurally fine, but the homology sits in odd degree.
    std::fs::write(&bad, "complex k\ngen a 1 1\nend\n").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).0, EXIT_OK);
    assert_eq!(run(&["validate", "--deep", bad.to_str().unwrap()]).0, EXIT_INVALID);
    std::fs::write(&bad, "complex k\ngen a 0 0\ndiff a b\nend\n").unwrap();
    let (code, _, err) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("line 3"), "{err}");
    std::fs::remove_file(bad).ok();
    assert_eq!(run(&["homology", "--complex", "nonexistent"]).0, EXIT_INVALID);
    assert_eq!(run(&["tensor", "--left", "unknot", "--right", "unknot", "--variant", "3"]).0, EXIT_INVALID);
}

#[test]
fn json_report_has_the_expected_fields() {
    let (code, out, _) = run(&["--json", "stable", "--left", "trefoil", "--right", "trefoil"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    for key in ["command", "inputs", "result", "certificates", "timings"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "stable");
    assert_eq!(v["result"]["homology_matches"], true);
    assert_eq!(v["result"]["locally_equivalent"], true);
    assert_eq!(v["result"]["x1_generators"], 27);
    assert!(v["timings"]["total_ms"].is_number());
}

#[test]
fn corpus_survives_a_write_and_reparse() {
    let canonical: String = parse_complex_file(CORPUS_TEXT).unwrap().iter().map(serialize_raw_complex).collect();
    let path = temp("corpus.icx");
    std::fs::write(&path, &canonical).unwrap();
    let again: String =
        parse_complex_file(&std::fs::read_to_string(&path).unwrap()).unwrap().iter().map(serialize_raw_complex).collect();
    assert_eq!(again, canonical);
    let (code, out, _) = run(&["validate", "--deep", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    std::fs::remove_file(path).ok();
}

#[test]
fn selfcheck_and_derive() {
    assert_eq!(run(&["selfcheck", "--complex", "square"]).0, EXIT_OK);
    let (code, out, _) = run(&["derive", "--complex", "trefoil"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("map Phi") || out.contains("Phi"), "{out}");
}
