//! End-to-end tests driving the compiled binary, pinned to the exit-code
//! contract: 0 property holds, 1 mathematical failure, 2 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_maxcurve");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(BIN).args(args).env(key, val).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

/// Fresh per-test scratch directory under the system temp dir.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("maxcurve-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).expect("create scratch dir");
    dir
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf8 path")
}

#[test]
fn principal_set_is_correct_and_round_trips() {
    let dir = scratch("principal");
    let nodes = dir.join("p3.json");
    let out = run(&["construct", "principal", "--degree", "3", "--out", path_str(&nodes)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&nodes).unwrap()).unwrap();
    assert_eq!(parsed["degree"], 3);
    assert_eq!(parsed["nodes"].as_array().unwrap().len(), 10);

    let check = run(&["check", "correct", "--nodes", path_str(&nodes)]);
    assert_eq!(code(&check), 0);
    assert!(stdout(&check).contains("correct: true"));
}

#[test]
fn construct_without_out_prints_the_node_file() {
    let out = run(&["construct", "principal", "--degree", "1"]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["nodes"].as_array().unwrap().len(), 3);
}

#[test]
fn chung_yao_writes_companions_and_certificate_verifies() {
    let dir = scratch("chung-yao");
    let nodes = dir.join("cy.json");
    let out =
        run(&["construct", "chung-yao", "--degree", "4", "--seed", "9", "--out", path_str(&nodes)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let lines = dir.join("cy.lines.json");
    let cert = dir.join("cy.cert.json");
    assert!(lines.exists() && cert.exists());
    let line_list: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&lines).unwrap()).unwrap();
    assert_eq!(line_list.as_array().unwrap().len(), 6);

    let gc = run(&["check", "gc", "--nodes", path_str(&nodes), "--cert", path_str(&cert)]);
    assert_eq!(code(&gc), 0, "{}", stderr(&gc));
    assert!(stderr(&gc).contains("certified"));
}

#[test]
fn undersized_set_fails_correct_but_passes_independent() {
    let dir = scratch("undersized");
    let nodes = dir.join("short.json");
    // Three nodes at degree 2: independent, but dim = 6 so not correct.
    fs::write(
        &nodes,
        r#"{"degree": 2, "nodes": [["0","0"], ["1","0"], ["0","1"]]}"#,
    )
    .unwrap();

    let correct = run(&["check", "correct", "--nodes", path_str(&nodes)]);
    assert_eq!(code(&correct), 1);
    assert!(stdout(&correct).contains("correct: false"));

    let indep = run(&["check", "independent", "--nodes", path_str(&nodes)]);
    assert_eq!(code(&indep), 0);
}

#[test]
fn degree_flag_overrides_the_stored_degree() {
    let dir = scratch("override");
    let nodes = dir.join("p1.json");
    run(&["construct", "principal", "--degree", "1", "--out", path_str(&nodes)]);
    // The same three nodes are not a correct set one degree up.
    let out = run(&["check", "correct", "--nodes", path_str(&nodes), "--degree", "2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn maximal_lines_of_an_intersection_set_are_the_construction_lines() {
    let dir = scratch("maxlines");
    let nodes = dir.join("cy.json");
    run(&["construct", "chung-yao", "--degree", "3", "--seed", "2", "--out", path_str(&nodes)]);

    let out =
        run(&["check", "maximal-lines", "--nodes", path_str(&nodes), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let found: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let written: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("cy.lines.json")).unwrap()).unwrap();
    let mut expected = written.as_array().unwrap().clone();
    expected.sort_by_key(|v| v.to_string());
    let mut got = found.as_array().unwrap().clone();
    got.sort_by_key(|v| v.to_string());
    assert_eq!(got, expected);
}

#[test]
fn two_curve_grid_set_is_correct_and_inputs_stay_maximal() {
    let dir = scratch("two-curve");
    let nodes = dir.join("tc.json");
    let out = run(&[
        "construct", "two-curve", "--grid", "2", "3", "--delta", "1", "--out", path_str(&nodes),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let check = run(&["check", "correct", "--nodes", path_str(&nodes)]);
    assert_eq!(code(&check), 0);

    let spec: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("tc.curves.json")).unwrap()).unwrap();
    for name in ["f", "g"] {
        let curve = dir.join(format!("{name}.json"));
        fs::write(&curve, spec[name].to_string()).unwrap();
        let mc = run(&[
            "check", "maximal-curve", "--nodes", path_str(&nodes), "--curve", path_str(&curve),
        ]);
        assert_eq!(code(&mc), 0, "{name}: {}", stderr(&mc));
        assert!(stdout(&mc).contains("maximal: true"));
    }
}

#[test]
fn starved_sampling_budget_is_a_math_failure() {
    let out = run_env(
        &["construct", "two-curve", "--grid", "2", "3", "--delta", "1"],
        "MAXCURVE_BUDGET",
        "1",
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn fundamental_polynomial_json_reports_uniqueness() {
    let dir = scratch("fundamental");
    let nodes = dir.join("p2.json");
    run(&["construct", "principal", "--degree", "2", "--out", path_str(&nodes)]);

    let out = run(&[
        "fundamental", "--nodes", path_str(&nodes), "--node", "0", "--format", "json",
    ]);
    assert_eq!(code(&out), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["unique"], true);
    assert_eq!(parsed["polynomial"]["degree_bound"], 2);

    let text = run(&["fundamental", "--nodes", path_str(&nodes), "--node", "0"]);
    assert_eq!(code(&text), 0);
    assert!(!stdout(&text).trim().is_empty());
}

#[test]
fn verify_identities_emits_parseable_json_lines() {
    let out = run(&["verify", "identities", "--ceiling", "6", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let body = stdout(&out);
    let mut count = 0;
    for line in body.lines() {
        let report: serde_json::Value = serde_json::from_str(line).expect("one report per line");
        assert_eq!(report["verdict"], "pass");
        count += 1;
    }
    assert!(count >= 6, "expected the full identity family, got {count}");
    assert!(stderr(&out).contains("total:"));
}

#[test]
fn verify_with_injected_fault_fails_loudly() {
    let out = run(&[
        "verify", "construction", "--max-degree", "3", "--inject-fault", "--format", "json",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("fault injection"));
}

#[test]
fn render_is_deterministic_svg() {
    let dir = scratch("render");
    let nodes = dir.join("cy.json");
    run(&["construct", "chung-yao", "--degree", "3", "--seed", "5", "--out", path_str(&nodes)]);

    let svg_path = dir.join("cy.svg");
    let out = run(&["render", "--nodes", path_str(&nodes), "--out", path_str(&svg_path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let first = fs::read_to_string(&svg_path).unwrap();
    assert!(first.starts_with("<svg"));

    let again = run(&["render", "--nodes", path_str(&nodes)]);
    assert_eq!(stdout(&again), first);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["check", "correct"])), 2); // missing --nodes
    assert_eq!(code(&run(&["frobnicate"])), 2); // unknown subcommand

    let missing = run(&["check", "correct", "--nodes", "/nonexistent/nodes.json"]);
    assert_eq!(code(&missing), 2);
    assert!(stderr(&missing).contains("cannot read"));

    let dir = scratch("badjson");
    let bad = dir.join("bad.json");
    fs::write(&bad, "{not json").unwrap();
    let malformed = run(&["check", "correct", "--nodes", path_str(&bad)]);
    assert_eq!(code(&malformed), 2);
    assert!(stderr(&malformed).contains("cannot parse"));

    let mixed = run(&["construct", "two-curve", "--grid", "2", "2", "--f", "x.json"]);
    assert_eq!(code(&mixed), 2);
}

#[cfg(unix)]
#[test]
fn closed_output_pipe_is_not_a_panic() {
    use std::os::unix::process::ExitStatusExt;
    use std::process::Stdio;
    // Degree 100 prints far more than a pipe buffer holds; closing the
    // read end immediately must kill the writer with SIGPIPE, quietly.
    let mut child = Command::new(BIN)
        .args(["construct", "principal", "--degree", "100"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    drop(child.stdout.take());
    let out = child.wait_with_output().expect("child finishes");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(!err.contains("panicked"), "panic on closed pipe: {err}");
    assert_eq!(out.status.signal(), Some(13), "expected death by SIGPIPE");
}

#[test]
fn duplicate_nodes_are_rejected_at_parse_time() {
    let dir = scratch("dup");
    let nodes = dir.join("dup.json");
    fs::write(&nodes, r#"{"degree": 1, "nodes": [["0","0"], ["0","0"], ["1","1"]]}"#).unwrap();
    let out = run(&["check", "correct", "--nodes", path_str(&nodes)]);
    assert_eq!(code(&out), 2);
}
