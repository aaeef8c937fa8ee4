mod common;

use std::path::Path;
use std::process::{Command, Output};

use topobench::graph::reduce;
use topobench::harness::{load_manifest, EvalSummary, SampleResult};
use topobench::Multigraph;

use common::dir_bytes;

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bench"))
        .args(args)
        .env("BENCH_WORKERS", "2")
        .output()
        .expect("bench binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = bench(args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate(dir: &Path, n: usize, seed: u64) {
    ok(&["generate", "--n", &n.to_string(), "--seed", &seed.to_string(), "--out", s(dir)]);
}

#[test]
fn generate_is_reproducible_and_guarded() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    generate(&a, 4, 99);
    generate(&b, 4, 99);
    assert_eq!(dir_bytes(&a), dir_bytes(&b));
    let m = load_manifest(&a).unwrap();
    assert_eq!(m.samples.len(), 4);
    for id in &m.samples {
        for f in ["points.csv", "graph.json", "meta.json"] {
            assert!(a.join(id).join(f).is_file(), "{id}/{f}");
        }
    }

    let again = bench(&["generate", "--n", "2", "--out", s(&a)]);
    assert_eq!(again.status.code(), Some(1));
    ok(&["generate", "--n", "2", "--seed", "5", "--out", s(&a), "--force"]);
    assert_eq!(load_manifest(&a).unwrap().samples.len(), 2);
    assert!(!a.join("sample_0003").exists());
}

#[test]
fn bad_config_fails_naming_field() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"density": {"lo": 5.0, "hi": 1.0}}"#).unwrap();
    let out = bench(&["generate", "--config", s(&cfg), "--n", "1", "--out", s(&tmp.path().join("x"))]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("density"));
}

#[test]
fn run_evaluate_report_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let (bdir, run, res) = (tmp.path().join("bench"), tmp.path().join("run"), tmp.path().join("results"));
    generate(&bdir, 3, 1);

    let first = ok(&["run", "--bench", s(&bdir), "--methods", "screeb,mapper", "--out", s(&run)]);
    assert!(first.contains("6 ok, 0 failed, 0 reused"), "{first}");
    let graphs = walk(&run).into_iter().filter(|p| p.ends_with("graph.json")).count();
    assert_eq!(graphs, 6);
    let second = ok(&["run", "--bench", s(&bdir), "--methods", "screeb,mapper", "--out", s(&run)]);
    assert!(second.contains("6 reused"), "{second}");

    ok(&["evaluate", "--bench", s(&bdir), "--run", s(&run), "--out", s(&res)]);
    let summary: EvalSummary =
        serde_json::from_str(&std::fs::read_to_string(res.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary.methods.len(), 2);
    for m in &summary.methods {
        assert_eq!(m.scored + m.excluded, 3);
    }
    let before = dir_bytes(&res);
    ok(&["evaluate", "--bench", s(&bdir), "--run", s(&run), "--out", s(&res)]);
    assert_eq!(dir_bytes(&res), before);

    let table = ok(&["report", "--results", s(&res)]);
    assert!(table.contains("screeb") && table.contains("mapper"), "{table}");
    let csv = std::fs::read_to_string(res.join("stratified.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 2);
}

#[test]
fn tower_writes_every_level() {
    let tmp = tempfile::tempdir().unwrap();
    let (bdir, run) = (tmp.path().join("bench"), tmp.path().join("run"));
    generate(&bdir, 1, 3);
    let params = tmp.path().join("params.json");
    std::fs::write(&params, r#"{"reeb": {"levels": 3}}"#).unwrap();
    ok(&["run", "--bench", s(&bdir), "--methods", "screebtower", "--params", s(&params), "--out", s(&run)]);
    let dir = run.join("screebtower").join("sample_0000");
    let tower: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("tower.json")).unwrap()).unwrap();
    assert_eq!(tower["levels"].as_array().unwrap().len(), 4);
    assert_eq!(tower["scored_level"], 3);
    for k in 0..4 {
        assert!(dir.join(format!("level_{k}.json")).is_file());
    }
    let bad = bench(&["run", "--bench", s(&bdir), "--methods", "screebtower", "--level", "9", "--out", s(&run)]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn single_vertex_method_scores_graph_size() {
    let tmp = tempfile::tempdir().unwrap();
    let (bdir, ext, run, res) =
        (tmp.path().join("bench"), tmp.path().join("ext"), tmp.path().join("run"), tmp.path().join("res"));
    generate(&bdir, 3, 11);
    let ids = load_manifest(&bdir).unwrap().samples;
    let mut want = 0.0;
    for id in &ids {
        std::fs::create_dir_all(ext.join(id)).unwrap();
        Multigraph::new(1).write_json(&ext.join(id).join("graph.json")).unwrap();
        let g = reduce(&Multigraph::read_json(&bdir.join(id).join("graph.json")).unwrap());
        want += (g.vertex_count() + g.expanded_edges().len() - 1) as f64;
    }
    want /= ids.len() as f64;
    let method = format!("external:{}", s(&ext));
    ok(&["run", "--bench", s(&bdir), "--methods", &method, "--out", s(&run)]);
    ok(&["evaluate", "--bench", s(&bdir), "--run", s(&run), "--out", s(&res)]);
    let summary: EvalSummary =
        serde_json::from_str(&std::fs::read_to_string(res.join("summary.json")).unwrap()).unwrap();
    let got = summary.methods[0].ged.unwrap();
    assert!((got - want).abs() < 1e-9, "{got} vs {want}");
}

#[test]
fn missing_external_output_is_excluded() {
    let tmp = tempfile::tempdir().unwrap();
    let (bdir, ext, run, res) =
        (tmp.path().join("bench"), tmp.path().join("ext"), tmp.path().join("run"), tmp.path().join("res"));
    generate(&bdir, 2, 4);
    std::fs::create_dir_all(ext.join("sample_0000")).unwrap();
    Multigraph::new(1).write_json(&ext.join("sample_0000").join("graph.json")).unwrap();
    let method = format!("external:{}", s(&ext));
    let out = bench(&["run", "--bench", s(&bdir), "--methods", &method, "--out", s(&run)]);
    assert_eq!(out.status.code(), Some(2));
    let out = bench(&["evaluate", "--bench", s(&bdir), "--run", s(&run), "--out", s(&res)]);
    assert_eq!(out.status.code(), Some(2));
    let dir = std::fs::read_dir(&res).unwrap().filter_map(|e| e.ok()).find(|e| e.path().is_dir()).unwrap().path();
    let r: SampleResult =
        serde_json::from_str(&std::fs::read_to_string(dir.join("sample_0001").join("results.json")).unwrap()).unwrap();
    assert!(!r.scored);
    assert!(r.error.is_some());
}

#[test]
fn report_without_results_fails() {
    let tmp = tempfile::tempdir().unwrap();
    let out = bench(&["report", "--results", s(tmp.path())]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_method_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let bdir = tmp.path().join("bench");
    generate(&bdir, 1, 2);
    let out = bench(&["run", "--bench", s(&bdir), "--methods", "nope", "--out", s(&tmp.path().join("r"))]);
    assert_eq!(out.status.code(), Some(1));
}

fn walk(root: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap().flatten() {
            let p = e.path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push(p);
            }
        }
    }
    out
}
