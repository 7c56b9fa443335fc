//! End-to-end tests of the `snbo` binary: bench artifacts, determinism,
//! summarize round-trips, and the external-objective protocol.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const SNBO: &str = env!("CARGO_BIN_EXE_snbo");
const ACKLEY_CHILD: &str = env!("CARGO_BIN_EXE_ackley-child");

fn run_ok(args: &[&str]) -> Output {
    let out = Command::new(SNBO).args(args).output().expect("spawn snbo");
    assert!(
        out.status.success(),
        "snbo {:?} failed\nstdout: {}\nstderr: {}",
        args,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

/// A fast suite config: tiny network, tiny budget, two repeats.
const TINY_SUITE: &str = r#"{
    "problems": [
        {"problem": "rastrigin", "n_dims": 3, "n_max": 25,
         "hidden_layers": [16, 16], "max_epochs": 50}
    ],
    "n_repeats": 2,
    "methods": ["snbo", "random"],
    "seed": 11
}"#;

fn run_tiny_suite(dir: &Path) -> std::path::PathBuf {
    let config = dir.join("suite.json");
    fs::write(&config, TINY_SUITE).unwrap();
    let out = dir.join("out");
    run_ok(&[
        "bench",
        "run",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    out
}

fn csv_files(dir: &Path) -> BTreeMap<String, String> {
    let mut files = BTreeMap::new();
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        if name.ends_with(".csv") {
            files.insert(name, fs::read_to_string(&path).unwrap());
        }
    }
    files
}

#[test]
fn bench_run_writes_consistent_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_tiny_suite(tmp.path());

    let files = csv_files(&out);
    let histories: Vec<&String> = files
        .keys()
        .filter(|n| n.starts_with("history_"))
        .collect();
    let bands: Vec<&String> = files.keys().filter(|n| n.starts_with("bands_")).collect();
    assert_eq!(histories.len(), 4, "2 methods x 2 repeats: {histories:?}");
    assert_eq!(bands.len(), 2, "one bands file per method: {bands:?}");
    assert!(files.contains_key("summary.csv"));
    assert!(out.join("summary.json").exists());
    assert!(out.join("runs.json").exists());

    for name in histories {
        let body = &files[name];
        let mut lines = body.lines();
        assert_eq!(
            lines.next().unwrap(),
            "eval_index,value,running_best,restart_flag"
        );
        let mut prev_best = f64::INFINITY;
        let mut rows = 0usize;
        for (i, line) in lines.enumerate() {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(cols.len(), 4, "{name}: {line}");
            assert_eq!(cols[0].parse::<usize>().unwrap(), i + 1);
            let value: f64 = cols[1].parse().unwrap();
            let best: f64 = cols[2].parse().unwrap();
            assert!(best <= prev_best, "{name}: running best increased");
            assert!(best <= value);
            prev_best = best;
            rows += 1;
        }
        assert_eq!(rows, 25, "{name}: expected one row per evaluation");
    }

    for name in bands {
        for line in files[name].lines().skip(1) {
            let cols: Vec<f64> = line
                .split(',')
                .skip(1)
                .map(|c| c.parse().unwrap())
                .collect();
            assert!(cols[0] <= cols[1] && cols[1] <= cols[2], "{name}: {line}");
        }
    }
}

#[test]
fn bench_run_is_deterministic_across_invocations() {
    let tmp = tempfile::tempdir().unwrap();
    let dir_a = tmp.path().join("a");
    let dir_b = tmp.path().join("b");
    fs::create_dir_all(&dir_a).unwrap();
    fs::create_dir_all(&dir_b).unwrap();
    let out_a = run_tiny_suite(&dir_a);
    let out_b = run_tiny_suite(&dir_b);

    let files_a = csv_files(&out_a);
    let files_b = csv_files(&out_b);
    assert_eq!(
        files_a.keys().collect::<Vec<_>>(),
        files_b.keys().collect::<Vec<_>>()
    );
    for (name, body_a) in &files_a {
        if name == "summary.csv" {
            // Contains wall-clock times; compare the value columns only.
            for (la, lb) in body_a.lines().zip(files_b[name].lines()) {
                let va: Vec<&str> = la.split(',').collect();
                let vb: Vec<&str> = lb.split(',').collect();
                assert_eq!(va[..va.len() - 1], vb[..vb.len() - 1]);
            }
        } else {
            assert_eq!(body_a, &files_b[name], "{name} differs between runs");
        }
    }
}

#[test]
fn summarize_reproduces_the_summary_from_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run_tiny_suite(tmp.path());

    let printed = run_ok(&["bench", "summarize", "--in", out.to_str().unwrap()]);
    let stdout = String::from_utf8(printed.stdout).unwrap();
    let mut recomputed: Vec<&str> = stdout.lines().skip(1).collect();
    recomputed.sort_unstable();

    let stored = fs::read_to_string(out.join("summary.csv")).unwrap();
    let mut stored: Vec<&str> = stored.lines().skip(1).collect();
    stored.sort_unstable();

    // Row order may differ; every value, including times, must round-trip.
    assert_eq!(recomputed, stored);
}

#[test]
fn external_ackley_child_matches_the_builtin_problem() {
    let common = ["--dims", "3", "--budget", "30", "--seed", "5"];
    let builtin = run_ok(&[&["optimize", "--problem", "ackley"], &common[..]].concat());
    let external = run_ok(
        &[
            &[
                "optimize",
                "--problem",
                ACKLEY_CHILD,
                "--lower",
                "-32.768",
                "--upper",
                "32.768",
            ],
            &common[..],
        ]
        .concat(),
    );

    let take = |out: &[u8]| -> Vec<String> {
        String::from_utf8_lossy(out)
            .lines()
            .filter(|l| l.starts_with("best "))
            .map(str::to_string)
            .collect()
    };
    let lines_builtin = take(&builtin.stdout);
    let lines_external = take(&external.stdout);
    assert_eq!(lines_builtin.len(), 2);
    assert_eq!(
        lines_builtin, lines_external,
        "external child diverged from the built-in objective"
    );
}

#[test]
fn optimize_rejects_external_problem_without_bounds() {
    let out = Command::new(SNBO)
        .args(["optimize", "--problem", "/bin/true", "--dims", "2", "--budget", "10"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("--lower"), "stderr: {stderr}");
}

#[test]
fn optimize_accepts_a_run_config_file() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("run.json");
    fs::write(
        &config,
        r#"{"n_dims": 3, "n_max": 25, "hidden_layers": [8], "max_epochs": 20}"#,
    )
    .unwrap();
    let out = run_ok(&[
        "optimize",
        "--problem",
        "levy",
        "--dims",
        "3",
        "--budget",
        "25",
        "--seed",
        "1",
        "--config",
        config.to_str().unwrap(),
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("best value:"), "stdout: {stdout}");
    assert!(stdout.contains("evaluations: 25"), "stdout: {stdout}");
}
