//! End-to-end checks of the `msim` binary: exit codes and report contents.

use std::path::Path;
use std::process::{Command, Output};

fn msim(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msim")).current_dir(dir).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> serde_json::Value {
    assert_eq!(code(o), 0, "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn usage_errors_exit_1() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&msim(tmp.path(), &[])), 1);
    assert_eq!(code(&msim(tmp.path(), &["--bogus"])), 1);
    assert_eq!(code(&msim(tmp.path(), &["sort"])), 1);
    assert_eq!(code(&msim(tmp.path(), &["gen", "--count", "ten"])), 1);
    assert_eq!(code(&msim(tmp.path(), &["gen", "--kind", "zipf"])), 1);
    assert_eq!(code(&msim(tmp.path(), &["bench", "--out", "report.txt", "--reps", "0"])), 1);
    assert_eq!(code(&msim(tmp.path(), &["--help"])), 0);
    assert_eq!(code(&msim(tmp.path(), &["sort", "--help"])), 0);
}

#[test]
fn data_errors_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    std::fs::write(d.join("bad.txt"), "#fmt=unsigned,W=4\n3\n99\n").unwrap();
    let o = msim(d, &["sort", "--input", "bad.txt"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(code(&msim(d, &["sort", "--input", "missing.txt"])), 2);
    std::fs::write(d.join("ok.txt"), "#fmt=unsigned,W=4\n3\n9\n").unwrap();
    assert_eq!(code(&msim(d, &["sort", "--input", "ok.txt", "--k", "0"])), 2);
    std::fs::write(d.join("g.txt"), "#nodes=3\n0 1 1\n").unwrap();
    assert_eq!(code(&msim(d, &["dijkstra", "--graph", "g.txt", "--start", "0", "--end", "2"])), 2);
    assert_eq!(code(&msim(d, &["prune", "--weights", "ok.txt", "--prune-rate", "0.5"])), 2);
    std::fs::write(d.join("cfg.json"), r#"{"strategy":"basic","colour":1}"#).unwrap();
    assert_eq!(code(&msim(d, &["--config", "cfg.json", "sort", "--input", "ok.txt"])), 2);
}

#[test]
fn sort_reports_order_metrics_and_trace() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    std::fs::write(d.join("s4.txt"), "#fmt=unsigned,W=4\n2\n3\n9\n6\n14\n14\n").unwrap();
    let o = msim(d, &["sort", "--input", "s4.txt", "--strategy", "basic", "--k", "3", "--trace", "t.jsonl"]);
    let report = stdout_json(&o);
    assert_eq!(report["order"], serde_json::json!([0, 1, 3, 2, 4, 5]));
    assert_eq!(report["values"], serde_json::json!([2, 3, 6, 9, 14, 14]));
    assert_eq!(report["metrics"]["cycle_count"], 10);
    let trace = std::fs::read_to_string(d.join("t.jsonl")).unwrap();
    let lines: Vec<serde_json::Value> = trace.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[3]["emitted_row"], 0);

    let o = msim(d, &["sort", "--input", "s4.txt", "--strategy", "bts", "--direction", "max"]);
    let report = stdout_json(&o);
    assert_eq!(report["values"], serde_json::json!([14, 14, 9, 6, 3, 2]));
    assert_eq!(report["metrics"]["cycle_count"], 24);
}

#[test]
fn config_file_selects_the_strategy() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    std::fs::write(d.join("x.txt"), "#fmt=unsigned,W=4\n2\n3\n9\n14\n").unwrap();
    std::fs::write(d.join("bs.json"), r#"{"strategy":"bs","k":1,"sizes":[2,2]}"#).unwrap();
    let report = stdout_json(&msim(d, &["--config", "bs.json", "sort", "--input", "x.txt"]));
    assert_eq!(report["metrics"]["cycle_count"], 7);
    std::fs::write(d.join("ml.json"), r#"{"strategy":"ml","k":1,"bits_per_cell":2}"#).unwrap();
    let report = stdout_json(&msim(d, &["--config", "ml.json", "sort", "--input", "x.txt"]));
    assert_eq!(report["metrics"]["cycle_count"], 5);
}

#[test]
fn gen_then_sort_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let o = msim(d, &["gen", "--seed", "1", "--width", "8", "--count", "100", "--out", "r.txt"]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(d.join("r.txt")).unwrap();
    assert!(text.starts_with("#fmt=unsigned,W=8\n"));
    assert_eq!(text.lines().count(), 101);
    let report = stdout_json(&msim(d, &["sort", "--input", "r.txt", "--strategy", "mb"]));
    let values: Vec<i64> = serde_json::from_value(report["values"].clone()).unwrap();
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
    let other = msim(d, &["gen", "--seed", "2", "--width", "8", "--count", "100"]);
    assert_ne!(other.stdout, text.as_bytes());
}

#[test]
fn bench_writes_csv_and_json() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let args = ["bench", "--seed", "3", "--datasets", "random,normal", "--widths", "8", "--sizes", "32"];
    let o = msim(d, &[&args[..], &["--strategies", "basic,bts,ml", "--ks", "1,4", "--reps", "2", "--out", "r.csv"]].concat());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(d.join("r.csv")).unwrap();
    // 2 reps x 2 datasets x (basic k=1,4 + bts + ml k=1,4) runs
    assert_eq!(csv.lines().count(), 1 + 2 * 2 * 5);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));

    let o = msim(d, &[&args[..], &["--reps", "1", "--out", "r.json"]].concat());
    assert_eq!(code(&o), 0);
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(d.join("r.json")).unwrap()).unwrap();
    assert_eq!(json["seed"], 3);
    assert!(!json["aggregates"].as_array().unwrap().is_empty());

    let o = msim(d, &["bench", "--reps", "0", "--out", "empty.csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(d.join("empty.csv")).unwrap().lines().count(), 1);
}

#[test]
fn dijkstra_prune_and_device_commands() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    std::fs::write(d.join("g.txt"), "#nodes=4\n0 1 1\n1 2 1\n0 2 3\n2 3 0.5\n").unwrap();
    let r = stdout_json(&msim(d, &["dijkstra", "--graph", "g.txt", "--start", "0", "--end", "3", "--k", "2"]));
    assert_eq!(r["distance"], 2.5);
    assert_eq!(r["path"], serde_json::json!([0, 1, 2, 3]));

    std::fs::write(d.join("w.txt"), "#fmt=sign_magnitude,W=8\n50\n-3\n9\n0\n-100\n4\n7\n-2\n").unwrap();
    let r = stdout_json(&msim(d, &["prune", "--weights", "w.txt", "--prune-rate", "0.3"]));
    assert_eq!(r["mask"], serde_json::json!([3, 7, 1]));
    assert_eq!(r["overlap"], 1.0);

    let r = stdout_json(&msim(d, &["device", "--cells", "500"]));
    assert_eq!(r["stats"]["cells"], 500);
    assert_eq!(r["stats"]["per_level"].as_array().unwrap().len(), 8);
    std::fs::write(d.join("m.json"), serde_json::to_string(&r["model"]).unwrap()).unwrap();
    let again = stdout_json(&msim(d, &["device", "--cells", "500", "--model", "m.json"]));
    assert_eq!(again, r);
}
