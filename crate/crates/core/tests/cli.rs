use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffgrad")).args(args).env_remove("CLIFFGRAD_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn grad_linear_json() {
    let o = run(&["grad", "--field", "linear:2,-3", "--simplex", "0,0;1,0;0,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["gradient"][0].as_f64().unwrap() - 2.0).abs() < 1e-12);
    assert!((v["gradient"][1].as_f64().unwrap() + 3.0).abs() < 1e-12);
    assert_eq!(v["evaluations"].as_u64().unwrap(), 4);
}

#[test]
fn grad_expression_table() {
    let o = run(&["grad", "--field", "x1*x1 + x2", "--simplex", "0,0;1,0;0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    // mirrored point of (0,0) is (1,1): quotient along (1,1) is 2/2, along (-1,1) it is 0
    assert!(out.contains("r_mean       (1, 1)"), "{out}");
    assert!(out.contains("evaluations  4"));
}

#[test]
fn grad_exit_codes() {
    let o = run(&["grad", "--field", "sin-exp", "--simplex", "0,0;1,1;2,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degenerate simplex"));
    let o = run(&["grad", "--field", "schwarz", "--simplex", "0.7,0;0.9,0.5;0.9,-0.5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("domain"), "{}", stderr(&o));
    let o = run(&["grad", "--field", "x1 + * 2", "--simplex", "0,0;1,0;0,1"]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(&["grad", "--field", "sin-exp"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn grad_reads_simplex_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "s.txt", "0,0,0; 1,0,0; 0,1,0; 0,0,1\n");
    let o = run(&["grad", "--field", "linear:1,2,3", "--simplex-file", &p, "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("r_mean_1,r_mean_2,r_mean_3,tau,evaluations"));
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert!((row[0] - 1.0).abs() < 1e-12 && (row[1] - 2.0).abs() < 1e-12 && (row[2] - 3.0).abs() < 1e-12);
    assert_eq!(row[4], 6.0);
}

#[test]
fn converge_schwarz_quadratic_csv() {
    let o = run(&["converge", "--field", "schwarz", "--family", "schwarz-quadratic", "--h-max", "0.2", "--h-min", "1e-3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let header = out.lines().next().unwrap();
    assert_eq!(header, "h,tau,r_naive_1,r_naive_2,r_mean_1,r_mean_2,err_naive,err_mean,status");
    let last: Vec<&str> = out.lines().last().unwrap().split(',').collect();
    let err_naive: f64 = last[6].parse().unwrap();
    let err_mean: f64 = last[7].parse().unwrap();
    assert!((err_naive - 0.5).abs() < 1e-3);
    assert!(err_mean <= 1e-6);
    assert_eq!(last[8], "ok");
}

#[test]
fn converge_linear_any_family_is_exact() {
    for fam in ["regular", "random-ill-shaped", "schwarz-linear"] {
        let o = run(&["converge", "--field", "linear:0.5,-1.5;2", "--family", fam, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        for row in v["rows"].as_array().unwrap() {
            assert!(row["err_mean"].as_f64().unwrap() <= 1e-10, "{fam}: {row}");
        }
    }
}

#[test]
fn converge_json_round_trips_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.json");
    let o = run(&[
        "converge", "--field", "sin-exp", "--family", "random-ill-shaped", "--seed", "3", "--format", "json",
        "--output", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(cliffgrad::report::reformat_json(&text).unwrap(), text);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["family"], "random-ill-shaped");
    assert!(v["last_decade_rate"]["value"].as_f64().unwrap() >= 0.9);
}

#[test]
fn converge_config_errors() {
    for args in [
        &["converge", "--field", "sin-exp", "--h-max", "1e-4", "--h-min", "1e-1"][..],
        &["converge", "--field", "sin-exp", "--per-decade", "1"],
        &["converge", "--field", "sin-exp", "--family", "hexagonal"],
        &["converge", "--field", "x1*x2", "--center", "0,0"],
        &["converge", "--field", "schwarz", "--family", "schwarz-cubic", "--center", "0,0,0"],
        &["converge", "--field", "schwarz", "--center", "2,0"],
    ] {
        assert_eq!(run(args).status.code(), Some(4), "{args:?}");
    }
    let o = run(&["converge", "--field", "x1*x2", "--center", "1,2", "--reference", "2,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn threads_env_is_validated_and_harmless() {
    let base = run(&["converge", "--field", "quadratic", "--center", "0.3,-0.1"]);
    for t in ["1", "3"] {
        let o = Command::new(env!("CARGO_BIN_EXE_cliffgrad"))
            .args(["converge", "--field", "quadratic", "--center", "0.3,-0.1"])
            .env("CLIFFGRAD_THREADS", t)
            .output()
            .unwrap();
        assert_eq!(o.stdout, base.stdout);
    }
    let o = Command::new(env!("CARGO_BIN_EXE_cliffgrad"))
        .args(["schwarz"])
        .env("CLIFFGRAD_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn schwarz_demo_verdicts() {
    let o = run(&["schwarz"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches("PASS").count(), 3);
    assert!(out.contains("tangent plane z=1"));
    assert!(out.contains("-1/2"));
    let o = run(&["schwarz", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 21);
}

#[test]
fn detcheck() {
    let o = run(&["detcheck", "-k", "3", "--trials", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    let o = run(&["detcheck", "-k", "8", "--trials", "200", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["max_rel_dev"].as_f64().unwrap() <= 1e-10);
    assert_eq!(run(&["detcheck", "-k", "9"]).status.code(), Some(4));
    assert_eq!(run(&["detcheck", "-k", "0"]).status.code(), Some(4));
}

const SQUARE: &str = r#"{"dimension": 2, "vertices": [[0,0],[1,0],[1,1],[0,1]], "cells": [[0,1,2],[0,2,3]]"#;

#[test]
fn meshgrad_field_and_values() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "a.json", &format!("{SQUARE}, \"field\": \"2*x1 - 3*x2\"}}"));
    let o = run(&["meshgrad", "--mesh", &p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("cell,centroid_1,centroid_2,r_1,r_2,tau,status,estimator"));
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        assert!((f[3].parse::<f64>().unwrap() - 2.0).abs() < 1e-12);
        assert!((f[4].parse::<f64>().unwrap() + 3.0).abs() < 1e-12);
        assert_eq!(f[7], "mean");
    }

    let p = write(dir.path(), "b.json", &format!("{SQUARE}, \"values\": [0, 2, -1, -3]}}"));
    let o = run(&["meshgrad", "--mesh", &p, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for cell in v["cells"].as_array().unwrap() {
        assert_eq!(cell["estimator"], "naive (no mirror samples)");
        assert!((cell["gradient"][0].as_f64().unwrap() - 2.0).abs() < 1e-12);
    }
}

#[test]
fn meshgrad_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("both.json", format!("{SQUARE}, \"field\": \"x1\", \"values\": [0,0,0,0]}}")),
        ("none.json", format!("{SQUARE}}}")),
        ("range.json", r#"{"dimension": 2, "vertices": [[0,0],[1,0],[0,1]], "cells": [[0,1,7]], "field": "x1"}"#.into()),
        ("arity.json", r#"{"dimension": 2, "vertices": [[0,0],[1,0],[0,1]], "cells": [[0,1]], "field": "x1"}"#.into()),
        ("count.json", format!("{SQUARE}, \"values\": [0, 1]}}")),
        ("junk.json", "not json".into()),
    ] {
        let p = write(dir.path(), name, &text);
        let o = run(&["meshgrad", "--mesh", &p]);
        assert_eq!(o.status.code(), Some(4), "{name}: {}", stdout(&o));
    }
    assert_eq!(run(&["meshgrad", "--mesh", "/nonexistent/mesh.json"]).status.code(), Some(4));
}

#[test]
fn meshgrad_flags_bad_cells_without_aborting() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "m.json",
        r#"{"dimension": 2,
            "vertices": [[0,0],[1,0],[0,1],[0.5,0.5],[0.95,0],[0.9,0.5],[0.9,-0.5],[0.7,0]],
            "cells": [[0,1,2],[0,3,3],[7,5,6]],
            "field": "sqrt(1 - x1^2)"}"#,
    );
    let o = run(&["meshgrad", "--mesh", &p]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let statuses: Vec<String> =
        stdout(&o).lines().skip(1).map(|l| l.split(',').nth(6).unwrap().to_string()).collect();
    assert_eq!(statuses, ["ok", "degenerate", "domain"]);
}

#[test]
fn help_and_usage() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(4));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(4));
}
