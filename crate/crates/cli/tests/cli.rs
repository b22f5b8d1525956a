use std::process::{Command, Output};

use entscale::runtime::{read_contours_csv, read_heatmap_csv, read_interval_csv};
use entscale::simulator::read_records_csv;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entscale")).args(args).output().expect("run entscale")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn interval_for_49_qubits() {
    let o = run(&["interval", "--qubits", "49"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "14 56\n");
}

#[test]
fn bounds_for_four_by_four() {
    let o = run(&["bounds", "--grid", "4", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("chi_lb       4\n"), "{text}");
    assert!(text.contains("gate_lb      48\n"), "{text}");

    let o = run(&["--json", "bounds", "--grid", "4", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["chi_lb"], 4.0);
    assert_eq!(v["gate_lb"], 48.0);
    assert_eq!(v["f"], 4);
}

#[test]
fn bounds_from_graph_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ring.txt");
    std::fs::write(&path, "# four-cycle\nn=4\n0,1\n1,2\n2,3\n3,0\n").unwrap();
    let o = run(&["--json", "bounds", "--graph", path.to_str().unwrap(), "--cut", "exact"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // Cycle on 4 vertices: every balanced cut crosses 2 edges.
    assert_eq!(v["f"], 2);
    assert_eq!(v["gate_lb"], 4.0);
}

#[test]
fn deformed_bounds_json() {
    let o = run(&["--json", "bounds", "--deformed", "36", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["log2_chi_lb"], 6.0);
    assert_eq!(v["gate_lb"], 342.0);
}

#[test]
fn tables_default_and_json() {
    let o = run(&["tables"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in ["1 month            75          60", "100 years         102          82"] {
        assert!(text.contains(line), "{text}");
    }
    let o = run(&["--json", "tables", "--qubits", "50"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][1]["depths"][0], 84);
}

#[test]
fn runtime_eval_and_invert_agree() {
    let o = run(&["--json", "runtime-eval", "--qubits", "50", "--depth", "75"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let t = v["seconds"].as_f64().unwrap();
    assert!(2_629_746.0 < t && t < 31_556_952.0);

    let o = run(&["--json", "runtime-invert", "--qubits", "50", "--seconds", &format!("{t:e}")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["depth"].as_f64().unwrap() - 75.0).abs() < 1e-6);
    assert_eq!(v["achievable"], 75);
}

#[test]
fn runtime_eval_reports_overflow_on_screen() {
    let o = run(&["runtime-eval", "--qubits", "400", "--depth", "100000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("seconds        overflow\n"), "{text}");
}

#[test]
fn fit_recovers_written_data() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bench.csv");
    let mut csv = String::from("source,qubits,depth,seconds,amplitudes\n");
    for (n, g) in [(36, 20), (49, 30), (64, 25), (81, 40), (100, 35)] {
        let o = run(&["--json", "runtime-eval", "--qubits", &n.to_string(), "--depth", &g.to_string()]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        csv.push_str(&format!("synthetic,{n},{g},{:e},single\n", v["seconds"].as_f64().unwrap()));
    }
    std::fs::write(&path, csv).unwrap();
    let o = run(&["--json", "fit", "--data", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["params"]["a1"].as_f64().unwrap() - 4.36063901).abs() < 1e-8);
    assert!((v["params"]["a2"].as_f64().unwrap() - 0.04315488).abs() < 1e-8);
}

#[test]
fn heatmap_files_round_trip_and_repeat() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = run(&["heatmap", "--qubits", "10:30", "--depth", "5:40", "--step", "5", "--out", d.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    for f in ["heatmap.csv", "interval.csv", "contours.csv"] {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap(), "{f}");
    }
    let cells = read_heatmap_csv(a.path().join("heatmap.csv")).unwrap();
    assert_eq!(cells.len(), 5 * 8);
    assert_eq!(read_interval_csv(a.path().join("interval.csv")).unwrap().len(), 5);
    read_contours_csv(a.path().join("contours.csv")).unwrap();
}

#[test]
fn simulate_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.csv");
    let args = ["simulate", "--rows", "2", "--cols", "2", "--depth", "3", "--seed", "5", "--report", report.to_str().unwrap()];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let first = std::fs::read(&report).unwrap();
    let records = read_records_csv(&report).unwrap();
    // 2x2 has two balanced min cuts; layers 0..=3.
    assert_eq!(records.len(), 2 * 4);
    assert!(records.iter().all(|r| r.seed == 5));
    run(&args);
    assert_eq!(std::fs::read(&report).unwrap(), first);
}

#[test]
fn simulate_respects_qubit_limit() {
    let o = run(&["simulate", "--rows", "3", "--cols", "3", "--depth", "2", "--seed", "0", "--max-qubits", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("exceed the simulator limit of 8"), "{}", stderr(&o));

    let o = Command::new(env!("CARGO_BIN_EXE_entscale"))
        .args(["simulate", "--rows", "3", "--cols", "3", "--depth", "2", "--seed", "0"])
        .env("ENTSCALE_MAX_QUBITS", "6")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("limit of 6"), "{}", stderr(&o));
}

#[test]
fn verify_small_scale_passes() {
    let o = run(&["verify", "--max-qubits", "4", "--seeds", "3", "--depth", "4"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("table 1 (exact)"));
    assert!(text.ends_with("all checks pass\n"), "{text}");
}

#[test]
fn verify_reports_first_counterexample() {
    let o = run(&["--json", "verify", "--max-qubits", "6", "--seeds", "1", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], false);
    let first = v["first_counterexample"].as_str().unwrap();
    assert!(first.contains("3x2 grid: ebit_cap violated"), "{first}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["frobnicate"],
        vec!["interval"],
        vec!["interval", "--qubits", "4", "--bogus"],
        vec!["bounds", "--grid", "4", "4", "--deformed", "16", "0"],
        vec!["heatmap", "--qubits", "9", "--depth", "1:2", "--out", "x"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
    let o = run(&["interval", "--qubits", "4", "--bogus"]);
    assert!(stderr(&o).contains("--bogus"));
}

#[test]
fn domain_errors_exit_1() {
    for args in [
        vec!["bounds", "--deformed", "15", "1"],
        vec!["interval", "--qubits", "0"],
        vec!["runtime-invert", "--qubits", "50", "--seconds", "-1"],
        vec!["simulate", "--rows", "0", "--cols", "3", "--depth", "1", "--seed", "0"],
        vec!["fit", "--data", "/nonexistent/bench.csv"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with("error: "));
    }
}

#[test]
fn help_goes_to_stdout() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}
