use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

use frontier::core::simulation::frontier_g2;

fn frontier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frontier"))
        .args(args)
        .output()
        .expect("spawn frontier")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn estimate_with_p1_at_shared_point_doubles_mean() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("in.csv");
    fs::write(&input, "x,y\n0.5,0.3\n0.5,0.6\n0.5,1.2\n").unwrap();
    let out = frontier(&["estimate", path_str(&input), "--p", "1", "--h", "0.1", "--grid", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("x,ghat,defined"));
    let r = rows(&text);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0][0].parse::<f64>().unwrap(), 0.5);
    let ghat: f64 = r[0][1].parse().unwrap();
    assert!((ghat - 2.0 * 0.7).abs() < 1e-12, "{ghat}");
    assert_eq!(r[0][2], "true");
}

#[test]
fn gamma_one_matches_uncorrected() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("d.csv");
    let sim = frontier(&["simulate", "--n", "300", "--seed", "9", "--out", path_str(&data)]);
    assert!(sim.status.success());
    let plain = frontier(&["estimate", path_str(&data), "--ci", "0.9"]);
    let corrected = frontier(&["estimate", path_str(&data), "--ci", "0.9", "--gamma", "1"]);
    assert!(plain.status.success() && corrected.status.success());
    assert_eq!(plain.stdout, corrected.stdout);
}

#[test]
fn empty_input_is_a_data_error() {
    let dir = TempDir::new().unwrap();
    for content in ["", "x,y\n"] {
        let input = dir.path().join("empty.csv");
        fs::write(&input, content).unwrap();
        let out = frontier(&["estimate", path_str(&input)]);
        assert_eq!(out.status.code(), Some(2));
        assert!(stderr(&out).contains("empty sample"), "{}", stderr(&out));
    }
}

#[test]
fn malformed_csv_reports_line() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("bad.csv");
    fs::write(&input, "x,y\n0.1,0.2\n0.3,oops\n").unwrap();
    let out = frontier(&["estimate", path_str(&input)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn all_undefined_grid_is_numerical_degeneracy() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("far.csv");
    fs::write(&input, "x,y\n0.0,1.0\n0.01,1.0\n").unwrap();
    let out = frontier(&[
        "estimate", path_str(&input), "--h", "0.05", "--grid-min", "0.5", "--grid-max", "0.9",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(frontier(&["simulate", "--n", "5", "--frontier", "g7"]).status.code(), Some(1));
    assert_eq!(frontier(&["nonsense"]).status.code(), Some(1));
    assert_eq!(frontier(&["simulate", "--n", "5", "--gamma", "-1"]).status.code(), Some(1));
    assert_eq!(frontier(&["--help"]).status.code(), Some(0));
}

#[test]
fn simulate_writes_n_rows_under_the_frontier() {
    let a = frontier(&["simulate", "--n", "5", "--seed", "3", "--covariate", "beta22", "--gamma", "2"]);
    let b = frontier(&["simulate", "--n", "5", "--seed", "3", "--covariate", "beta22", "--gamma", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert_eq!(text.lines().next(), Some("x,y"));
    let r = rows(&text);
    assert_eq!(r.len(), 5);
    for row in r {
        let x: f64 = row[0].parse().unwrap();
        let y: f64 = row[1].parse().unwrap();
        assert!(0.0 <= y && y <= frontier_g2(x).unwrap(), "{x},{y}");
    }
}

#[test]
fn simulate_output_round_trips_into_estimate() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("sim.csv");
    let est = dir.path().join("est.csv");
    assert!(frontier(&["simulate", "--n", "500", "--frontier", "g1", "--out", path_str(&data)])
        .status
        .success());
    let out = frontier(&["estimate", "--input", path_str(&data), "--out", path_str(&est), "--grid", "11"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("rule"));
    let text = fs::read_to_string(&est).unwrap();
    assert_eq!(rows(&text).len(), 11);
}

#[test]
fn ci_columns_bracket_the_estimate() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("sim.csv");
    frontier(&["simulate", "--n", "400", "--seed", "1", "--out", path_str(&data)]);
    let out = frontier(&["estimate", path_str(&data), "--ci", "0.95", "--grid", "21"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("x,ghat,defined,ci_lo,ci_hi"));
    for row in rows(&text) {
        let v: Vec<f64> = [1, 3, 4].iter().map(|&i| row[i].parse().unwrap()).collect();
        if row[2] == "true" {
            assert!(v[1] <= v[0] && v[0] <= v[2], "{row:?}");
        }
    }
}

#[test]
fn experiment_default_config_has_36_cells_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let run = |p: &Path| frontier(&["experiment", "--m", "2", "--seed", "42", "--out", path_str(p)]);
    let out = run(&a);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("gamma = 3"));
    run(&b);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().next(), Some("estimator,n,gamma,mean_l1,min_l1,max_l1,undefined_fraction"));
    assert_eq!(rows(&text).len(), 36);
    assert_eq!(text, fs::read_to_string(&b).unwrap());
}

#[test]
fn experiment_reads_config_file_and_trace() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("exp.cfg");
    let report = dir.path().join("r.csv");
    let trace = dir.path().join("t.csv");
    fs::write(&cfg, "# small\nn_values = 100\ngamma_values = 1\nestimators = geffroy\nm = 3\n").unwrap();
    let out = frontier(&[
        "experiment", "--config", path_str(&cfg), "--out", path_str(&report), "--trace", path_str(&trace),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(rows(&fs::read_to_string(&report).unwrap()).len(), 1);
    let t = fs::read_to_string(&trace).unwrap();
    assert_eq!(t.lines().next(), Some("estimator,n,gamma,rep,l1"));
    assert_eq!(rows(&t).len(), 3);

    fs::write(&cfg, "m = 3\nwhat = 1\n").unwrap();
    let out = frontier(&["experiment", "--config", path_str(&cfg), "--out", path_str(&report)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn coverage_writes_one_row_per_point() {
    let out = frontier(&["coverage", "--n", "300", "--m", "20", "--points", "0.4,0.6"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("x,truth,coverage,covered,valid,undefined"));
    assert_eq!(rows(&text).len(), 2);
}
