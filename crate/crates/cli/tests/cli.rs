use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_paracomm"));
    c.env_remove("PARACOMM_WORKERS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const TOY: &str = "# three 4-cliques\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n5 6\n5 7\n5 8\n6 7\n6 8\n7 8\n\
9 10\n9 11\n9 12\n10 11\n10 12\n11 12\n4 5\n4 10\n5 10\n";

const TOY_TRUTH: &str = "node,community\n1,a\n2,a\n3,a\n4,a\n5,b\n6,b\n7,b\n8,b\n9,c\n10,c\n11,c\n12,c\n";

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn detect_finds_three_cliques() {
    let dir = TempDir::new().unwrap();
    let graph = write(dir.path(), "toy.txt", TOY);
    let best = dir.path().join("best.csv");
    let report = stdout_json(&run(&["detect", s(&graph), "--seed", "1", "--workers", "2", "--partition", s(&best)]));
    let chosen = &report["best"];
    assert_eq!(chosen["k"], 3);
    assert!((chosen["Q"].as_f64().unwrap() - 11.0 / 21.0).abs() < 1e-9);
    assert_eq!(report["generations"], 100);
    assert_eq!(report["config"]["population"], 100);
    assert_eq!(report["config"]["crossover_prob"], 0.8);
    assert_eq!(report["graph"]["edges"], 21);
    assert!(report["timing"]["total_ms"].as_f64().unwrap() > 0.0);

    let eval = stdout_json(&run(&[
        "eval",
        "--partition",
        s(&best),
        "--truth",
        s(&write(dir.path(), "truth.csv", TOY_TRUTH)),
        s(&graph),
    ]));
    assert_eq!(eval["nmi"], 1.0);
    assert_eq!(eval["ami"], 1.0);
    assert_eq!(eval["H"], 1.0);
}

#[test]
fn detect_tiny_budget_and_csv() {
    let dir = TempDir::new().unwrap();
    let graph = write(dir.path(), "toy.txt", TOY);
    let report = stdout_json(&run(&["detect", s(&graph), "--generations", "1", "--population", "4", "--workers", "1"]));
    assert!(!report["front"].as_array().unwrap().is_empty());

    let out = run(&["detect", s(&graph), "--generations", "3", "--population", "8", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("labels_ref,f1,f2,Q,k\n"));
}

#[test]
fn detect_is_reproducible_apart_from_timing() {
    let dir = TempDir::new().unwrap();
    let graph = write(dir.path(), "toy.txt", TOY);
    let args = ["detect", s(&graph), "--seed", "5", "--generations", "20", "--workers", "2"];
    let mut a = stdout_json(&run(&args));
    let mut b = stdout_json(&run(&args));
    a.as_object_mut().unwrap().remove("timing");
    b.as_object_mut().unwrap().remove("timing");
    assert_eq!(a, b);
}

#[test]
fn workers_from_environment_and_flag() {
    let dir = TempDir::new().unwrap();
    let graph = write(dir.path(), "toy.txt", TOY);
    let base = ["detect", s(&graph), "--generations", "1", "--population", "4"];
    let out = bin().args(base).env("PARACOMM_WORKERS", "3").output().unwrap();
    assert_eq!(stdout_json(&out)["config"]["workers"], 3);
    let out = bin().args(base).args(["--workers", "2"]).env("PARACOMM_WORKERS", "3").output().unwrap();
    assert_eq!(stdout_json(&out)["config"]["workers"], 2);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let empty = write(dir.path(), "empty.txt", "");
    let out = run(&["detect", s(&empty)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty graph"));

    assert_eq!(run(&["detect", s(&dir.path().join("absent.txt"))]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.txt", "1 2\n3\n");
    assert_eq!(run(&["detect", s(&bad)]).status.code(), Some(2));

    let graph = write(dir.path(), "toy.txt", TOY);
    assert_eq!(run(&["detect", s(&graph), "--population", "5"]).status.code(), Some(3));
    assert_eq!(run(&["detect", s(&graph), "--crossover", "1.5"]).status.code(), Some(3));
    assert_eq!(run(&["detect", s(&graph), "--no-such-flag"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn eval_all_in_one_against_truth() {
    let dir = TempDir::new().unwrap();
    let graph = write(dir.path(), "toy.txt", TOY);
    let one: String =
        std::iter::once("node,community\n".to_owned()).chain((1..=12).map(|v| format!("{v},0\n"))).collect();
    let eval = stdout_json(&run(&[
        "eval",
        "--partition",
        s(&write(dir.path(), "one.csv", &one)),
        "--truth",
        s(&write(dir.path(), "truth.csv", TOY_TRUTH)),
        s(&graph),
    ]));
    assert!(eval["modularity"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(eval["nmi"], 0.0);
    assert_eq!(eval["k_detected"], 1);
    assert_eq!(eval["k_truth"], 3);
}

#[test]
fn eval_crossed_design_and_mismatch() {
    let dir = TempDir::new().unwrap();
    let graph = write(dir.path(), "path.txt", "0 1\n1 2\n2 3\n");
    let p = write(dir.path(), "p.json", r#"{"labels":[0,0,1,1]}"#);
    let q = write(dir.path(), "q.json", r#"{"labels":[0,1,0,1]}"#);
    let eval = stdout_json(&run(&["eval", "--partition", s(&p), "--truth", s(&q), s(&graph)]));
    assert_eq!(eval["nmi"], 0.0);
    assert!(eval["ami"].as_f64().unwrap() <= 0.0);

    let short = write(dir.path(), "short.csv", "0,a\n1,a\n2,b\n");
    let out = run(&["eval", "--partition", s(&short), "--truth", s(&q), s(&graph)]);
    assert_eq!(out.status.code(), Some(3));
    let stranger = write(dir.path(), "stranger.csv", "0,a\n1,a\n2,b\n3,b\n9,b\n");
    assert_eq!(run(&["eval", "--partition", s(&stranger), "--truth", s(&q), s(&graph)]).status.code(), Some(3));
    let long = write(dir.path(), "long.json", r#"{"labels":[0,0,1,1,1]}"#);
    assert_eq!(run(&["eval", "--partition", s(&long), "--truth", s(&q), s(&graph)]).status.code(), Some(3));
}

#[test]
fn generate_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let r = run(&["generate", "--n", "1000", "--mu", "0.3", "--seed", "7", "-o", s(out)]);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    }
    for f in ["graph.txt", "truth.csv", "spec.json"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
    let spec: Value = serde_json::from_slice(&fs::read(a.join("spec.json")).unwrap()).unwrap();
    assert!((spec["realized_mu"].as_f64().unwrap() - 0.3).abs() <= 0.02);

    // The generated files feed straight back into eval.
    let eval = stdout_json(&run(&[
        "eval",
        "--partition",
        s(&a.join("truth.csv")),
        "--truth",
        s(&a.join("truth.csv")),
        s(&a.join("graph.txt")),
    ]));
    assert_eq!(eval["nmi"], 1.0);
}

#[test]
fn generate_rejects_infeasible_spec() {
    let dir = TempDir::new().unwrap();
    let out = run(&["generate", "--n", "100", "--mu", "0.0", "--min-comm", "10", "-o", s(dir.path())]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bench_rows_per_mixing_value() {
    let dir = TempDir::new().unwrap();
    let out = run(&[
        "bench",
        "--n",
        "200",
        "--mu",
        "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8",
        "--seeds",
        "2",
        "--population",
        "8",
        "--generations",
        "3",
        "--min-comm",
        "25",
        "--max-comm",
        "50",
        "--workers",
        "1",
        "-o",
        s(dir.path()),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let mut lines = summary.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let e = header.iter().position(|&c| c == "E").unwrap();
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.split(',').nth(e) == Some("24")));

    let runs = fs::read_to_string(dir.path().join("runs.csv")).unwrap();
    assert!(runs.starts_with("n,mu,Np,T,Cp,Mp,Es,seed,nmi,ami,H,Q,modularity,k_detected,k_truth,wall_ms,workers\n"));
    assert_eq!(runs.lines().count(), 1 + 8 * 2);
    for panel in ["nmi_vs_mu", "ami_vs_mu", "h_vs_mu", "wall_vs_n"] {
        let v: Value =
            serde_json::from_slice(&fs::read(dir.path().join("plots").join(format!("{panel}.json"))).unwrap()).unwrap();
        assert_eq!(v["name"], panel);
    }
    assert_eq!(String::from_utf8(out.stdout).unwrap(), summary);
}

#[test]
fn oracle_two_cliques() {
    let dir = TempDir::new().unwrap();
    let graph = write(dir.path(), "two.txt", "a b\na c\na d\nb c\nb d\nc d\ne f\ne g\ne h\nf g\nf h\ng h\nd e\n");
    let report = stdout_json(&run(&["oracle", s(&graph)]));
    assert_eq!(report["enumerated"], 4140);
    let split = serde_json::json!([0, 0, 0, 0, 1, 1, 1, 1]);
    assert!(report["front"].as_array().unwrap().iter().any(|e| e["labels"] == split));

    let big: String = (0..13).map(|i| format!("{i} {}\n", i + 1)).collect();
    let out = run(&["oracle", s(&write(dir.path(), "big.txt", &big))]);
    assert_eq!(out.status.code(), Some(3));
}
