use std::path::PathBuf;
use std::process::{Command, Output};

fn sample(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../samples")
        .join(name)
}

fn possdt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_possdt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_accepts_valid_samples() {
    for name in [
        "two-level.tree.json",
        "choquet-trap-necessity.tree.json",
        "kappa.tree.json",
        "likely-dominance-trap.tree.json",
    ] {
        let o = possdt(&["check", path(&sample(name))]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
}

#[test]
fn check_reports_subnormal_chance_node() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(sample("two-level.tree.json")).unwrap();
    let broken = text.replacen("\"degree\": \"1\"", "\"degree\": \"0.9\"", 1);
    assert_ne!(text, broken);
    let file = dir.path().join("t.json");
    std::fs::write(&file, broken).unwrap();
    let o = possdt(&["check", path(&file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("normalization"), "{}", stdout(&o));
}

#[test]
fn truncated_document_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(sample("two-level.tree.json")).unwrap();
    let file = dir.path().join("t.json");
    std::fs::write(&file, &text[..text.len() / 2]).unwrap();
    let o = possdt(&["check", path(&file)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line "), "{}", stderr(&o));
}

#[test]
fn evaluate_counter_example_greedy_strategy() {
    let o = possdt(&[
        "evaluate",
        path(&sample("choquet-trap-necessity.tree.json")),
        path(&sample("choquet-trap-necessity.greedy.strategy.json")),
        "--criterion",
        "chn",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("reduced lottery: ⟨0.2/0, 0.5/0.51, 1/1⟩"),
        "{out}"
    );
    assert!(out.contains("Ch_N: 653/1000 (0.653)"), "{out}");
}

#[test]
fn evaluate_constant_leaf_under_upes() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("t.json");
    std::fs::write(
        &tree,
        r#"{"format": "possdt-tree/1", "mode": "possibilistic", "root": "D0", "nodes": [
            {"id": "D0", "kind": "decision", "children": ["C1"]},
            {"id": "C1", "kind": "chance", "edges": [{"child": "L1", "degree": "1"}]},
            {"id": "L1", "kind": "leaf", "utility": "3/8"}]}"#,
    )
    .unwrap();
    let strategy = dir.path().join("s.json");
    std::fs::write(
        &strategy,
        r#"{"format": "possdt-strategy/1", "choices": {"D0": "C1"}}"#,
    )
    .unwrap();
    let o = possdt(&["evaluate", path(&tree), path(&strategy), "-c", "upes"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("U_pes: 3/8 (0.375)"), "{}", stdout(&o));
}

#[test]
fn evaluate_kappa_sample_under_omeu() {
    let o = possdt(&[
        "evaluate",
        path(&sample("kappa.tree.json")),
        path(&sample("kappa.strategy.json")),
        "-c",
        "omeu",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // strategy reaches μ = 1 at κ 0 (via D1 → C4 → L6), μ = 0 at κ 3, μ = inf at κ 1
    assert!(
        stdout(&o).contains("reduced lottery: ⟨3/0, 0/1, 1/inf⟩"),
        "{}",
        stdout(&o)
    );
    assert!(stdout(&o).contains("OMEU: 1\n"), "{}", stdout(&o));
}

#[test]
fn evaluate_rejects_an_incomplete_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let strategy = dir.path().join("s.json");
    std::fs::write(
        &strategy,
        r#"{"format": "possdt-strategy/1", "choices": {"D0": "C0"}}"#,
    )
    .unwrap();
    let o = possdt(&[
        "evaluate",
        path(&sample("choquet-trap-necessity.tree.json")),
        path(&strategy),
        "-c",
        "chn",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("completeness"), "{}", stderr(&o));
}

#[test]
fn optimize_dispatches_to_dp_for_monotone_criteria() {
    let o = possdt(&[
        "optimize",
        path(&sample("choquet-trap-necessity.tree.json")),
        "-c",
        "upes",
        "--method",
        "auto",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("method: dp\n"));
    assert!(stdout(&o).starts_with("{\n  \"format\": \"possdt-strategy/1\""));
}

#[test]
fn optimize_refuses_dp_under_choquet() {
    let o = possdt(&[
        "optimize",
        path(&sample("choquet-trap-possibility.tree.json")),
        "-c",
        "chpi",
        "--method",
        "dp",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not weakly monotone"), "{}", stderr(&o));
}

#[test]
fn unsafe_dp_and_exhaustive_differ_on_the_counterexample_tree() {
    let tree = sample("choquet-trap-necessity.tree.json");
    let dp = possdt(&[
        "optimize",
        path(&tree),
        "-c",
        "chn",
        "--method",
        "dp",
        "--unsafe-dp",
    ]);
    assert!(stderr(&dp).contains("method: heuristic-dp"));
    assert!(stderr(&dp).contains("Ch_N: 653/1000"));
    let ex = possdt(&[
        "optimize",
        path(&tree),
        "-c",
        "chn",
        "--method",
        "exhaustive",
    ]);
    assert!(stderr(&ex).contains("Ch_N: 27/40 (0.675)"));
    assert_eq!(
        stdout(&ex),
        std::fs::read_to_string(sample("choquet-trap-necessity.best.strategy.json")).unwrap()
    );
}

#[test]
fn dp_and_exhaustive_agree_under_uopt() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("t.json");
    let gen = possdt(&[
        "gen",
        "--seed",
        "9",
        "--depth",
        "3",
        "--branching",
        "3",
        "--out",
        path(&tree),
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let value = |method: &str| {
        let o = possdt(&["optimize", path(&tree), "-c", "uopt", "--method", method]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        stderr(&o)
            .lines()
            .find(|l| l.starts_with("U_opt: "))
            .unwrap()
            .to_string()
    };
    assert_eq!(value("dp"), value("exhaustive"));
}

#[test]
fn budget_exceeded_exit_code() {
    let o = possdt(&[
        "optimize",
        path(&sample("two-level.tree.json")),
        "-c",
        "chn",
        "--budget",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn optimize_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let o = possdt(&[
        "optimize",
        path(&sample("two-level.tree.json")),
        "-c",
        "chn",
        "--out",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let e = possdt(&[
        "evaluate",
        path(&sample("two-level.tree.json")),
        path(&out),
        "-c",
        "chn",
    ]);
    assert_eq!(e.status.code(), Some(0), "{}", stderr(&e));
}

#[test]
fn fuzz_monotone_criteria_report_zero_violations() {
    let dir = tempfile::tempdir().unwrap();
    for c in ["upes", "omeu"] {
        let w = dir.path().join("w.json");
        let o = possdt(&[
            "fuzz",
            "-c",
            c,
            "--trials",
            "100000",
            "--witness-out",
            path(&w),
        ]);
        assert_eq!(o.status.code(), Some(0), "{c}");
        assert!(stdout(&o).contains("\n0 violations\n"), "{}", stdout(&o));
        assert!(!w.exists());
    }
}

#[test]
fn fuzz_chn_writes_a_replayable_counterexample_witness() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let o = possdt(&[
        "fuzz",
        "-c",
        "chn",
        "--trials",
        "1000",
        "--witness-out",
        path(&w),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&w).unwrap();
    assert!(text.contains("\"composed_lp\": \"0.675\""), "{text}");
    let r = possdt(&["fuzz", "--replay", path(&w)]);
    assert_eq!(r.status.code(), Some(0));
    assert!(stdout(&r).contains("reproduced"));

    std::fs::write(&w, text.replace("\"beta\": \"1\"", "\"beta\": \"0.5\"")).unwrap();
    let bad = possdt(&["fuzz", "--replay", path(&w)]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn gen_is_deterministic_and_valid() {
    let a = possdt(&["gen", "--seed", "17", "--branching", "3"]);
    let b = possdt(&["gen", "--seed", "17", "--branching", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.json");
    std::fs::write(&file, &a.stdout).unwrap();
    assert_eq!(possdt(&["check", path(&file)]).status.code(), Some(0));
}

#[test]
fn gen_kappa_has_a_zero_rank_edge_per_chance_node() {
    let o = possdt(&["gen", "--seed", "3", "--mode", "kappa", "--depth", "3"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["mode"], "kappa");
    let mut chance = 0;
    for node in doc["nodes"].as_array().unwrap() {
        if node["kind"] == "chance" {
            chance += 1;
            assert!(
                node["edges"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .any(|e| e["kappa"] == "0"),
                "{node}"
            );
        }
    }
    assert!(chance > 0);
}

#[test]
fn bench_rows_are_consistent() {
    let o = possdt(&["bench", "--max-decisions", "6", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert_eq!(r["edges"], r["dp_edges_visited"]);
        assert_eq!(r["strategies"], r["closed_form"]);
    }
}

#[test]
fn gap_search_finds_a_witness_tree() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gap.json");
    let o = possdt(&["gap", "-c", "chn", "--trials", "500", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(possdt(&["check", path(&out)]).status.code(), Some(0));
}
