use std::process::{Command, Output};

fn nbjohnson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbjohnson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn full_pipeline_passes() {
    let out = nbjohnson(&[
        "verify", "--r", "3", "--k", "2", "--n", "4", "--checks", "all",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    for check in [
        "axioms",
        "spectra",
        "ppoly",
        "qpoly",
        "recurrences",
        "difference",
        "bispectral",
        "terwilliger",
        "orthopoly",
    ] {
        assert!(
            text.contains(&format!("  {check:<12} pass")),
            "{check} missing in\n{text}"
        );
    }
}

#[test]
fn q_polynomial_failure_exits_two() {
    let out = nbjohnson(&[
        "verify", "--r", "3", "--k", "3", "--n", "4", "--checks", "qpoly", "--json", "-",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let certs = report["certificates"].as_array().unwrap();
    let names: Vec<&str> = certs.iter().map(|c| c["check"].as_str().unwrap()).collect();
    assert_eq!(names, ["axioms", "spectra", "qpoly"]);
    let qpoly = &certs[2];
    assert_eq!(qpoly["verdict"], "fail");
    assert!(qpoly["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w["context"]
            .as_str()
            .unwrap()
            .contains("(0,2) ≼ (2,1) but (0,2) ∉ D")));
}

#[test]
fn usage_errors_exit_one() {
    let out = nbjohnson(&["verify", "--r", "2", "--k", "2", "--n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("r ≥ 3 required"));

    assert_eq!(
        nbjohnson(&["verify", "--r", "3", "--k", "5", "--n", "4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        nbjohnson(&["verify", "--r", "3", "--k", "2", "--n", "4", "--checks", "bogus"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(nbjohnson(&["verify", "--r", "3"]).status.code(), Some(1));
    assert_eq!(nbjohnson(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(nbjohnson(&["--help"]).status.code(), Some(0));
}

#[test]
fn vertex_guard_is_a_resource_error() {
    let out = nbjohnson(&[
        "verify",
        "--r",
        "3",
        "--k",
        "3",
        "--n",
        "6",
        "--max-vertices",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource limit"));
}

#[test]
fn poly_eval_examples() {
    for (family, args, expected) in [
        ("krawtchouk", ["0", "5", "9", "3"], "1"),
        ("hahn", ["1", "1", "4", "2"], "0"),
        ("eberlein", ["1", "0", "3", "2"], "2"),
        ("hahn", ["1", "1", "5", "2"], "2/3"),
    ] {
        let out = nbjohnson(&[
            "poly", "eval", "--family", family, "--i", args[0], "--x", args[1], "--N", args[2],
            "--p", args[3],
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).trim(), expected, "{family} {args:?}");
    }
}

#[test]
fn undefined_hahn_value_is_an_error() {
    let out = nbjohnson(&[
        "poly", "eval", "--family", "hahn", "--i", "1", "--x", "3", "--N", "4", "--p", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain error"));
}

#[test]
fn json_reports_are_byte_stable() {
    let args = [
        "verify", "--r", "3", "--k", "2", "--n", "3", "--tables", "--json", "-",
    ];
    let first = nbjohnson(&args);
    let second = nbjohnson(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(
        report["instance"],
        serde_json::json!({"r": 3, "k": 2, "n": 3, "v": 12})
    );
    assert_eq!(
        report["domain"],
        serde_json::json!([[0, 0], [0, 1], [1, 0], [1, 1], [2, 0]])
    );
    // valencies of J_3(2,3): one vertex at (0,0), then row sums of the classes
    assert_eq!(
        report["tables"]["valencies"],
        serde_json::json!(["1", "4", "2", "4", "1"])
    );
    assert!(report["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c.get("wall_time_ms").is_none()));
}

#[test]
fn json_written_to_file() {
    let path = std::env::temp_dir().join(format!("nbjohnson-report-{}.json", std::process::id()));
    let out = nbjohnson(&[
        "verify",
        "--r",
        "3",
        "--k",
        "2",
        "--n",
        "3",
        "--checks",
        "ppoly",
        "--json",
        path.to_str().unwrap(),
        "--timings",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(report["certificates"][0]["wall_time_ms"].is_u64());
    assert!(report.get("tables").is_none());
}
