//! End-to-end tests of the `unicolour` binary: every subcommand, the
//! round-trip contracts between them, and the exit-code protocol
//! (0 ok / 1 predicate false / 2 usage / 3 infeasible / 4 cap).

use std::path::Path;
use std::process::Command;
use unicolour::{profile, Colouring, Graph, RParam};

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_unicolour"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("no signal"),
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
    )
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.el");
    let b = dir.path().join("b.el");
    let (code, _, _) =
        run(&["gen", "--n", "30", "--p", "0.4", "--seed", "11", "--out", a.to_str().unwrap()]);
    assert_eq!(code, 0);
    run(&["gen", "--n", "30", "--p", "0.4", "--seed", "11", "--out", b.to_str().unwrap()]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    // the file loads back to the same graph the library generates
    let loaded = Graph::read_edge_list(&a).unwrap();
    let direct = Graph::generate(&unicolour::GenParams::new(30, 0.4, 11)).unwrap();
    assert_eq!(loaded.edges(), direct.edges());

    // stdout emission matches the file byte for byte
    let (code, stdout, _) = run(&["gen", "--n", "30", "--p", "0.4", "--seed", "11"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, std::fs::read_to_string(&a).unwrap());
}

#[test]
fn colour_partition_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.el");
    let col = dir.path().join("f.col");
    run(&["gen", "--n", "100", "--p", "0.5", "--seed", "424242", "--out", graph.to_str().unwrap()]);

    let (code, stdout, _) = run(&[
        "colour",
        "--graph",
        graph.to_str().unwrap(),
        "--strategy",
        "partition",
        "--r",
        "1",
        "--p",
        "0.5",
        "--out",
        col.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "colour failed: {stdout}");
    let outcome: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(outcome["strategy"], "partition");
    assert_eq!(outcome["verified"], true);
    // t = ⌈8·ln(100)/2⌉ + 1 = 20 classes plus the overflow colour
    assert_eq!(outcome["colours_used"], 21);

    let (code, stdout, _) = run(&[
        "verify",
        "--graph",
        graph.to_str().unwrap(),
        "--colouring",
        col.to_str().unwrap(),
        "--mode",
        "r",
        "--r",
        "1",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verdict: true"));
}

#[test]
fn verify_failure_names_a_witness_that_recounts() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("k2.el");
    let col = dir.path().join("k2.col");
    write(&graph, "2 1\n0 1\n");
    write(&col, "2 1\n0 1\n1 1\n");

    let (code, stdout, _) = run(&[
        "verify",
        "--graph",
        graph.to_str().unwrap(),
        "--colouring",
        col.to_str().unwrap(),
        "--mode",
        "r",
        "--r",
        "1",
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("verdict: false"));
    assert!(stdout.contains("vertex 0"), "witness line missing: {stdout}");

    // the named vertex independently fails a recount
    let g = Graph::read_edge_list(&graph).unwrap();
    let f = Colouring::read_colouring(&col).unwrap();
    let prof = profile(&g, &f).unwrap();
    let v = prof.vertex(0);
    assert!(v.closed_unique < RParam::Finite(1).requirement(v.degree));
}

#[test]
fn verify_tree_mode_reports_copy_witness() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("k3.el");
    let col = dir.path().join("k3.col");
    write(&graph, "3 3\n0 1\n0 2\n1 2\n");
    write(&col, "3 1\n0 1\n1 1\n2 1\n");

    let (code, stdout, _) = run(&[
        "verify",
        "--graph",
        graph.to_str().unwrap(),
        "--colouring",
        col.to_str().unwrap(),
        "--mode",
        "tree",
        "--pattern",
        "path:3",
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("copy [0, 1, 2]"), "copy witness missing: {stdout}");
}

#[test]
fn exact_prints_k_and_a_valid_witness() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("p3.el");
    write(&graph, "3 2\n0 1\n1 2\n");

    let (code, stdout, _) = run(&[
        "exact",
        "--graph",
        graph.to_str().unwrap(),
        "--mode",
        "r",
        "--r",
        "1",
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["k"], 2);
    assert_eq!(report["witness"], serde_json::json!([1, 2, 1]));
}

#[test]
fn bounds_reports_parse_and_respect_constants() {
    let (code, stdout, _) =
        run(&["bounds", "--kind", "r", "--n", "1000", "--p", "0.05", "--r", "3"]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(report["lower"].as_f64().unwrap() <= report["upper"].as_f64().unwrap());
    assert_eq!(report["lower"], 3.0);

    // doubling D0 doubles the upper bound
    let (_, with_override, _) = run(&[
        "bounds", "--kind", "r", "--n", "1000", "--p", "0.05", "--r", "3", "--constants", "D0=4",
    ]);
    let overridden: serde_json::Value = serde_json::from_str(&with_override).unwrap();
    let ratio = overridden["upper"].as_f64().unwrap() / report["upper"].as_f64().unwrap();
    assert!((ratio - 2.0).abs() < 1e-12);

    let (code, _, stderr) =
        run(&["bounds", "--kind", "r", "--n", "10", "--p", "0.5", "--r", "1", "--constants", "Q=1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown constant"));
}

#[test]
fn estimate_is_deterministic_and_consistent() {
    let args = [
        "estimate", "--n", "12", "--p", "0.3", "--pattern", "star:3", "--trials", "100", "--seed",
        "5",
    ];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
    let estimate: serde_json::Value = serde_json::from_str(&first).unwrap();
    let fraction = estimate["fraction"].as_f64().unwrap();
    assert!(estimate["ci_low"].as_f64().unwrap() <= fraction);
    assert!(fraction <= estimate["ci_high"].as_f64().unwrap());
}

#[test]
fn experiment_runs_a_config_reproducibly() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.json");
    let csv = dir.path().join("out.csv");
    let config = serde_json::json!({
        "n": [100],
        "p": {"values": [0.5]},
        "strategy": ["partition"],
        "r": [1],
        "m_const": [8.0],
        "trials": 2,
        "base_seed": 7,
        "output": csv,
    });
    write(&config_path, &config.to_string());

    let (code, stdout, _) = run(&["experiment", "--config", config_path.to_str().unwrap()]);
    assert_eq!(code, 0, "experiment failed: {stdout}");
    assert!(stdout.contains("2 rows"));
    let first = std::fs::read(&csv).unwrap();
    assert!(csv.with_extension("summary.json").exists());

    run(&["experiment", "--config", config_path.to_str().unwrap()]);
    assert_eq!(first, std::fs::read(&csv).unwrap());
}

#[test]
fn exit_codes_follow_the_protocol() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = dir.path().join("p3.el");
    let k3 = dir.path().join("k3.el");
    let mono = dir.path().join("mono.col");
    let out = dir.path().join("c.col");
    write(&p3, "3 2\n0 1\n1 2\n");
    write(&k3, "3 3\n0 1\n0 2\n1 2\n");
    write(&mono, "3 1\n0 1\n1 1\n2 1\n");

    // usage: missing required flag and malformed value
    let (code, _, _) = run(&["gen", "--n", "5", "--p", "0.5"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["gen", "--n", "5", "--p", "1.5", "--seed", "1"]);
    assert_eq!(code, 2);
    let (code, _, stderr) = run(&[
        "colour", "--graph", p3.to_str().unwrap(), "--strategy", "random", "--q", "3", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 2, "random without --seed must be a usage error");
    assert!(stderr.contains("--seed"));

    // infeasible: partition plan cannot fit
    let (code, _, _) = run(&[
        "colour", "--graph", p3.to_str().unwrap(), "--strategy", "partition", "--r", "1", "--p",
        "0.001", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 3);

    // cap exceeded: copy enumeration stopped early. The colouring must be
    // violation-free so the scan cannot short-circuit before the cap.
    let rainbow = dir.path().join("rainbow.col");
    write(&rainbow, "3 3\n0 1\n1 2\n2 3\n");
    let (code, _, stderr) = run(&[
        "verify", "--graph", k3.to_str().unwrap(), "--colouring", rainbow.to_str().unwrap(),
        "--mode", "tree", "--pattern", "path:3", "--copy-cap", "1",
    ]);
    assert_eq!(code, 4, "copy cap must exit 4: {stderr}");

    // cap exceeded: resampling budget exhausted (2 colours can never make
    // every 4-path in K_5 carry a unique colour)
    let k5 = dir.path().join("k5.el");
    let mut edges = String::from("5 10\n");
    for u in 0..5 {
        for v in (u + 1)..5 {
            edges.push_str(&format!("{u} {v}\n"));
        }
    }
    write(&k5, &edges);
    let (code, stdout, _) = run(&[
        "colour", "--graph", k5.to_str().unwrap(), "--strategy", "resample", "--pattern",
        "path:4", "--q", "2", "--seed", "3", "--max-iters", "50", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 4);
    let outcome: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(outcome["verified"], false);
    assert_eq!(outcome["attempts"], 50);
}
