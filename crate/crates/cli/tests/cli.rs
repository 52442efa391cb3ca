use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn quillen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quillen"))
        .args(args)
        .env_remove("QUILLEN_MAX_ORDER")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = quillen(&full);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), v)
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn s3_quillen_complex_has_two_reduced_components() {
    let (code, v) = json(&["quillen", "S3", "--prime", "2"]);
    assert_eq!(code, 0);
    let degrees = v["homology"][0]["value"].as_array().unwrap();
    let h0 = degrees.iter().find(|d| d["degree"] == 0).unwrap();
    assert_eq!(h0["betti"], 2);
    assert_eq!(v["poset"]["nodes"], 3);
    assert!(v["caveat"].as_str().unwrap().contains("contractibility"));
}

#[test]
fn s4_is_cohen_macaulay() {
    let (code, v) = json(&["cm-check", "S4", "--prime", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["sphericity"][0]["value"]["cohen_macaulay"], true);
    assert_eq!(v["verdicts"][0]["agrees"], true);
    let (code, v) = json(&["cm-check", "S4", "--prime", "2", "--links"]);
    assert_eq!(code, 0);
    assert_eq!(v["sphericity"][0]["value"]["cohen_macaulay"], true);
}

#[test]
fn disagreeing_verdict_exits_with_two() {
    let out = quillen(&["cm-check", "SD16∘C4", "--prime", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("DISAGREES"));
}

#[test]
fn input_errors_exit_with_one() {
    let out = quillen(&["quillen", "no-such-group", "--prime", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("catalog names"));

    let out = quillen(&["quillen", "(F7^2⋊D16)×S3", "--prime", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("QUILLEN_MAX_ORDER"));

    assert_eq!(
        quillen(&["quillen", "S3", "--prime", "4"]).status.code(),
        Some(1)
    );
    assert_eq!(quillen(&["quillen", "S3"]).status.code(), Some(1));
    assert_eq!(quillen(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(
        quillen(&["plength", "A5", "--prime", "2"]).status.code(),
        Some(1)
    );
    assert_eq!(
        quillen(&[
            "upper-interval",
            "D8",
            "--prime",
            "2",
            "--select",
            "node:99"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        quillen(&["upper-interval", "D8", "--prime", "2", "--select", "what"])
            .status
            .code(),
        Some(1)
    );

    let bad = scratch("bad-spec.json");
    std::fs::write(
        &bad,
        r#"{"kind": "dihedral", "params": {"order": "eight"}}"#,
    )
    .unwrap();
    let out = quillen(&["quillen", bad.to_str().unwrap(), "--prime", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid group spec"));
}

#[test]
fn cap_override_from_flag_and_environment() {
    let out = quillen(&[
        "quillen",
        "(F7^2⋊D16)×S3",
        "--prime",
        "3",
        "--max-order",
        "8192",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_quillen"))
        .args(["quillen", "(F7^2⋊D16)×S3", "--prime", "3"])
        .env("QUILLEN_MAX_ORDER", "8192")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_quillen"))
        .args(["quillen", "S4", "--prime", "2"])
        .env("QUILLEN_MAX_ORDER", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn spec_file_and_stdin() {
    let path = scratch("d8.json");
    std::fs::write(&path, r#"{"kind": "dihedral", "params": {"order": 8}}"#).unwrap();
    let (code, v) = json(&["decompose", path.to_str().unwrap(), "--prime", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["spec"]["kind"], "dihedral");
    assert_eq!(v["structure"][0]["case"], "small_derived");

    let mut child = Command::new(env!("CARGO_BIN_EXE_quillen"))
        .args(["quillen", "-", "--prime", "3", "--format", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(br#"{"kind": "perm", "params": {"degree": 4, "generators": ["(1,2,3)", "(1,2)(3,4)"]}}"#).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    // A4 has four Sylow 3-subgroups
    assert_eq!(v["poset"]["nodes"], 4);
}

#[test]
fn reports_are_reproducible() {
    for args in [
        &["cm-check", "F7^2⋊D16", "--prime", "2"][..],
        &["pw-verify", "(C3×C3)⋊V4", "--prime", "2"],
        &["upper-interval", "D8∘Q8", "--prime", "2", "--select", "zc"],
    ] {
        let (_, a) = json(args);
        let (_, b) = json(args);
        let mut one_job = args.to_vec();
        one_job.extend(["--jobs", "1"]);
        let (_, c) = json(&one_job);
        let mut many = args.to_vec();
        many.extend(["--jobs", "3"]);
        let (_, d) = json(&many);
        let a = without_timing(a);
        assert_eq!(a, without_timing(b));
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let raw = |o: Output| {
            let s = String::from_utf8(o.stdout).unwrap();
            s[..s.find("\"timing\"").unwrap()].to_string()
        };
        assert_eq!(raw(quillen(&full)), raw(quillen(&full)));
        assert_eq!(a, without_timing(c));
        assert_eq!(a, without_timing(d));
    }
}

#[test]
fn json_report_round_trips() {
    let out = quillen(&["decompose", "D8∘D8", "--prime", "2", "--format", "json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
    assert!(text.ends_with("}\n"));
}

#[test]
fn simplex_list_export_and_import() {
    let out = quillen(&["export-complex", "S4", "--prime", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    let path = scratch("s4-p3.txt");
    std::fs::write(&path, &text).unwrap();
    let (code, v) = json(&["complex-homology", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let h0 = v["homology"][0]["value"]
        .as_array()
        .unwrap()
        .iter()
        .find(|d| d["degree"] == 0)
        .unwrap()
        .clone();
    assert_eq!(h0["betti"], 3);

    let rp2 = "# six-vertex projective plane\n1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 2 6\n2 3 5\n3 4 6\n2 4 5\n3 5 6\n2 4 6\n";
    let path = scratch("rp2.txt");
    std::fs::write(&path, rp2).unwrap();
    let out = quillen(&["complex-homology", path.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("H1 = Z/2"));

    let path = scratch("garbage.txt");
    std::fs::write(&path, "1 2 x\n").unwrap();
    assert_eq!(
        quillen(&["complex-homology", path.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn out_flag_writes_the_report() {
    let path = scratch("report.json");
    let _ = std::fs::remove_file(&path);
    let out = quillen(&[
        "plength",
        "S4",
        "--prime",
        "2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdicts"][0]["computed"]["p_length"], 2);
}

#[test]
fn suite_exit_code_follows_verdicts() {
    let good = scratch("good-manifest.json");
    std::fs::write(
        &good,
        r#"{"version": "test", "max_order": 4096, "instances": [
            {"group": "S3", "prime": 2, "checks": ["brown_quillen", "main_theorem", "wedge_formula", "split_torus"]},
            {"group": "D8∘D8", "prime": 2, "checks": ["structure", "upper_intervals", "conjunctive"]}
        ]}"#,
    )
    .unwrap();
    let (code, v) = json(&["suite", "--manifest", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["suite"]["checks_run"], 7);
    assert!(v["suite"]["disagreements"].as_array().unwrap().is_empty());

    let bad = scratch("bad-manifest.json");
    std::fs::write(
        &bad,
        r#"{"version": "test", "max_order": 4096, "instances": [
            {"group": "SD16∘C4", "prime": 2, "checks": ["main_theorem"]}
        ]}"#,
    )
    .unwrap();
    let out = quillen(&["suite", "--manifest", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
