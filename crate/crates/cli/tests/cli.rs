//! End-to-end tests driving the built binary.

use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn gpe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gpe"))
}

fn run(args: &[&str]) -> Output {
    gpe().args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "args {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn gen_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let path_str = path.to_str().unwrap().to_owned();
    full.extend_from_slice(&["--out", &path_str]);
    let out = run(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path_str
}

#[test]
fn gen_writes_expected_sizes() {
    let v = run_ok(&["gen", "hypercube", "3"]);
    assert_eq!(v["n"], 8);
    assert_eq!(v["edges"].as_array().unwrap().len(), 12);

    let v = run_ok(&["gen", "grid", "5", "4"]);
    assert_eq!(v["n"], 20);
    assert_eq!(v["edges"].as_array().unwrap().len(), 31);

    let v = run_ok(&["gen", "fig1"]);
    assert_eq!(v["n"], 12);
    assert_eq!(v["edges"].as_array().unwrap().len(), 16);
    assert_eq!(v["name"], "fig1");
}

#[test]
fn gen_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_to(dir.path(), "g.json", &["grid", "4", "3"]);
    let first = std::fs::read(&path).unwrap();

    // Feed the file back through stdin and re-emit.
    let text = String::from_utf8(first.clone()).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    let n = parsed["n"].as_u64().unwrap();
    assert_eq!(n, 12);

    let second = gen_to(dir.path(), "h.json", &["grid", "4", "3"]);
    assert_eq!(first, std::fs::read(second).unwrap());
}

#[test]
fn random_trees_are_seed_deterministic() {
    let a = run(&["gen", "tree", "--random", "10", "--seed", "42"]);
    let b = run(&["gen", "tree", "--random", "10", "--seed", "42"]);
    let c = run(&["gen", "tree", "--random", "10", "--seed", "43"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);

    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["n"], 10);
    assert_eq!(v["edges"].as_array().unwrap().len(), 9);
}

#[test]
fn gpe_on_c6_is_optimal_four() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_to(dir.path(), "c6.json", &["cycle", "6"]);
    let out = run(&["gpe", &path, "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "gpe");
    assert_eq!(v["graph"]["m"], 6);
    assert_eq!(v["payload"]["value"], 4);
    assert_eq!(v["payload"]["status"], "optimal");
    assert_eq!(v["elapsed_ms"], 0);
    assert_eq!(v["payload"]["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn gpe_with_k4_on_c7_takes_all_edges() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_to(dir.path(), "c7.json", &["cycle", "7"]);
    let v = run_ok(&["gpe", &path, "--k", "4", "--no-timing"]);
    assert_eq!(v["payload"]["value"], 7);
}

#[test]
fn gpe_enumerate_grid44_and_grid55() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_to(dir.path(), "g44.json", &["grid", "4", "4"]);
    let v = run_ok(&["gpe", &path, "--enumerate", "--no-timing"]);
    assert_eq!(v["payload"]["value"], 8);
    assert_eq!(v["payload"]["enumeration_complete"], true);
    assert!(v["payload"]["optima"].as_array().unwrap().len() >= 2);

    let path = gen_to(dir.path(), "g55.json", &["grid", "5", "5"]);
    let v = run_ok(&["gpe", &path, "--enumerate", "--no-timing"]);
    assert_eq!(v["payload"]["value"], 12);
    assert_eq!(v["payload"]["optima"].as_array().unwrap().len(), 1);
}

#[test]
fn gpe_output_is_reproducible_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen_to(dir.path(), "q3.json", &["hypercube", "3"]);
    let a = run(&["gpe", &path, "--no-timing"]);
    let b = run(&["gpe", &path, "--no-timing"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn budget_exhaustion_exits_two() {
    // A three-legged spider: bounds cannot close at the root, so a
    // one-node budget must leave the solve unfinished.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spider.json");
    std::fs::write(
        &path,
        r#"{"n":7,"edges":[[0,1],[1,2],[0,3],[3,4],[0,5],[5,6]]}"#,
    )
    .unwrap();
    let out = run(&[
        "gpe",
        path.to_str().unwrap(),
        "--budget-nodes",
        "1",
        "--no-timing",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["status"], "lower-bound-only");
}

#[test]
fn malformed_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{nope").unwrap();
    let out = run(&["gpe", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // Disconnected graphs are semantic input errors, also exit 3.
    std::fs::write(&path, r#"{"n":4,"edges":[[0,1],[2,3]]}"#).unwrap();
    let out = run(&["theta", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_semi_boundary_and_pendants() {
    let dir = tempfile::tempdir().unwrap();
    let g66 = gen_to(dir.path(), "g66.json", &["grid", "6", "6"]);
    let v = run_ok(&[
        "verify",
        &g66,
        "--witness-from",
        "semi-boundary",
        "--no-timing",
    ]);
    assert_eq!(v["payload"]["ok"], true);
    assert_eq!(v["payload"]["witness_size"], 16);
    assert_eq!(v["payload"]["violation"], Value::Null);

    let tree = gen_to(dir.path(), "t.json", &["tree", "--pruefer", "0,2,2"]);
    let v = run_ok(&[
        "verify",
        &tree,
        "--witness-from",
        "pendant-edges",
        "--no-timing",
    ]);
    assert_eq!(v["payload"]["ok"], true);
}

#[test]
fn verify_all_edges_of_q3_reports_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let q3 = gen_to(dir.path(), "q3.json", &["hypercube", "3"]);
    let v = run_ok(&["verify", &q3, "--witness-from", "all-edges", "--no-timing"]);
    assert_eq!(v["payload"]["ok"], false);
    assert_eq!(v["payload"]["violation"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_edge_set_file() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = gen_to(dir.path(), "c6.json", &["cycle", "6"]);
    let edges = dir.path().join("w.json");
    std::fs::write(&edges, "[[0,1],[1,2],[3,4]]").unwrap();
    let v = run_ok(&["verify", &c6, edges.to_str().unwrap(), "--no-timing"]);
    assert_eq!(v["payload"]["ok"], true);

    std::fs::write(&edges, "[[0,1],[1,2],[2,3]]").unwrap();
    let v = run_ok(&["verify", &c6, edges.to_str().unwrap(), "--no-timing"]);
    assert_eq!(v["payload"]["ok"], false);
}

#[test]
fn theta_q3_and_non_partial_cube() {
    let dir = tempfile::tempdir().unwrap();
    let q3 = gen_to(dir.path(), "q3.json", &["hypercube", "3"]);
    let v = run_ok(&["theta", &q3, "--no-timing"]);
    assert_eq!(v["payload"]["is_partial_cube"], true);
    assert_eq!(v["payload"]["class_count"], 3);
    let classes = v["payload"]["classes"].as_array().unwrap();
    assert!(classes.iter().all(|c| c.as_array().unwrap().len() == 4));

    let k3 = gen_to(dir.path(), "k3.json", &["complete", "3"]);
    let v = run_ok(&["theta", &k3, "--no-timing"]);
    assert_eq!(v["payload"]["is_partial_cube"], false);
}

#[test]
fn theta_fig1_contains_marked_classes() {
    let dir = tempfile::tempdir().unwrap();
    let fig1 = gen_to(dir.path(), "fig1.json", &["fig1"]);
    let v = run_ok(&["theta", &fig1, "--no-timing"]);
    let classes = v["payload"]["classes"].as_array().unwrap();
    let sizes: Vec<usize> = classes
        .iter()
        .map(|c| c.as_array().unwrap().len())
        .collect();
    assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 2);
}

#[test]
fn cover_constructions_and_fallback() {
    let v = run_ok(&["cover", "hypercube", "4", "--no-timing"]);
    assert_eq!(v["payload"]["method"], "hypercube-construction");
    assert_eq!(v["payload"]["path_count"], 8);
    assert_eq!(v["payload"]["verified"], true);
    assert_eq!(v["payload"]["gpe_upper_bound"], 16);
    assert!(v["payload"]["endpoint_bipartition_side"].is_array());

    let v = run_ok(&["cover", "grid", "10", "7", "--no-timing"]);
    assert_eq!(v["payload"]["method"], "grid-construction");
    assert_eq!(v["payload"]["path_count"], 13);
    assert_eq!(v["payload"]["verified"], true);

    let v = run_ok(&["cover", "grid", "5", "5", "--no-timing"]);
    assert_eq!(v["payload"]["method"], "greedy");
    assert_eq!(v["payload"]["verified"], true);
    assert!(v["payload"]["note"].as_str().unwrap().contains(">= 6"));
}

#[test]
fn cover_hypercube_one_falls_back_to_greedy() {
    let v = run_ok(&["cover", "hypercube", "1", "--no-timing"]);
    assert_eq!(v["payload"]["method"], "greedy");
    assert_eq!(v["payload"]["path_count"], 1);
    assert_eq!(v["payload"]["verified"], true);
}

#[test]
fn empty_pruefer_sequence_is_the_two_vertex_tree() {
    let v = run_ok(&["gen", "tree", "--pruefer", ""]);
    assert_eq!(v["n"], 2);
    assert_eq!(v["edges"].as_array().unwrap().len(), 1);
}

#[test]
fn cover_of_graph_file_uses_greedy() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = gen_to(dir.path(), "c6.json", &["cycle", "6"]);
    let v = run_ok(&["cover", "file", &c6, "--no-timing"]);
    assert_eq!(v["payload"]["method"], "greedy");
    assert_eq!(v["payload"]["path_count"], 3);
    assert_eq!(v["payload"]["verified"], true);
}

#[test]
fn reads_graph_from_stdin() {
    let mut child = gpe()
        .args(["gpe", "-", "--no-timing"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["value"], 2);
}

#[test]
fn dot_export_renders() {
    let dir = tempfile::tempdir().unwrap();
    let q3 = gen_to(dir.path(), "q3.json", &["hypercube", "3"]);
    let dot = dir.path().join("q3.dot");
    let out = run(&["theta", &q3, "--dot", dot.to_str().unwrap(), "--no-timing"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph"));
    assert!(text.contains("color="));
}

#[test]
fn product_families_generate() {
    let v = run_ok(&["gen", "product", "path:3", "cycle:4"]);
    assert_eq!(v["n"], 12);
    assert_eq!(v["name"], "product(path(3),cycle(4))");
    let out = run(&["gen", "product", "widget:3", "cycle:4"]);
    assert_eq!(out.status.code(), Some(3));
}
