use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use opsom_core::ortho_init::verify_oa;
use opsom_core::OrthogonalArray;

fn opsom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opsom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_files(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut found = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|e| e == "csv") {
                found.push(path);
            }
        }
    }
    found.sort();
    found
}

#[test]
fn oa_prints_a_valid_array() {
    let out = opsom(&["oa", "--levels", "2", "--factors", "7"]);
    assert!(out.status.success());
    let rows: Vec<Vec<u32>> = stdout(&out)
        .lines()
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.len() == 7));
    assert!(verify_oa(&OrthogonalArray::from_rows(2, &rows)));
}

#[test]
fn oa_rejects_non_prime_levels() {
    let out = opsom(&["oa", "--levels", "4", "--factors", "3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn run_writes_one_trace_per_run_and_a_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = opsom(&[
        "run",
        "--dim",
        "10",
        "--functions",
        "3",
        "--budget",
        "1200",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csvs = csv_files(&out_dir);
    assert_eq!(csvs.len(), 25);
    let first = fs::read_to_string(&csvs[0]).unwrap();
    assert_eq!(
        first.lines().next(),
        Some("iteration,evals,best_error,diversity,exploration_pct")
    );
    let summary = fs::read_to_string(out_dir.join("summary.txt")).unwrap();
    assert_eq!(summary.lines().count(), 1);
    assert!(summary.contains("function=F03") && summary.contains("runs=25"));
    assert_eq!(stdout(&out), summary);
}

#[test]
fn compare_pairs_algorithms_on_the_same_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = opsom(&[
        "compare",
        "--algo",
        "opsom,pso",
        "--dim",
        "10",
        "--functions",
        "1,9",
        "--runs",
        "3",
        "--budget",
        "2000",
        "--archive-log",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    for f in ["F01", "F09"] {
        for algo in ["opsom", "pso"] {
            assert!(text
                .lines()
                .any(|l| l.contains(&format!("function={f}"))
                    && l.contains(&format!("algo={algo} "))));
        }
    }
    let csvs = csv_files(dir.path());
    assert_eq!(csvs.len(), 12);
    let opsom_trace = csvs
        .iter()
        .find(|p| p.to_string_lossy().contains("/opsom/"))
        .unwrap();
    assert!(fs::read_to_string(opsom_trace)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .ends_with("chi_best"));
}

#[test]
fn compare_needs_two_algorithms() {
    let dir = tempfile::tempdir().unwrap();
    let out = opsom(&[
        "compare",
        "--algo",
        "pso",
        "--dim",
        "10",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(!out.status.success());
}

#[test]
fn bad_flags_fail() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for args in [
        vec!["run", "--algo", "annealing", "--out", d],
        vec!["run", "--pop", "7", "--dim", "10", "--out", d],
        vec!["run", "--dim", "10", "--budget", "10", "--out", d],
        vec!["run", "--dim", "1", "--out", d],
        vec!["run", "--dim", "10"],
        vec!["run", "--dim", "10", "--functions", "42", "--out", d],
        vec!["frobnicate"],
    ] {
        let out = opsom(&args);
        assert!(!out.status.success(), "{args:?} succeeded");
    }
}

#[test]
fn unwritable_output_fails() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "not a directory").unwrap();
    let target = blocker.join("out");
    let out = opsom(&[
        "run",
        "--dim",
        "10",
        "--functions",
        "1",
        "--runs",
        "1",
        "--budget",
        "1000",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn identical_invocations_write_identical_files() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for (dir, jobs) in dirs.iter().zip(["1", "3"]) {
        let out = opsom(&[
            "compare",
            "--algo",
            "opsom,pso,opsom-no-mutation",
            "--dim",
            "10",
            "--functions",
            "4,7",
            "--runs",
            "2",
            "--budget",
            "3000",
            "--seed",
            "12",
            "--jobs",
            jobs,
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let (a, b) = (csv_files(dirs[0].path()), csv_files(dirs[1].path()));
    assert_eq!(a.len(), 12);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(
            x.strip_prefix(dirs[0].path()).unwrap(),
            y.strip_prefix(dirs[1].path()).unwrap()
        );
        assert_eq!(
            fs::read(x).unwrap(),
            fs::read(y).unwrap(),
            "{}",
            x.display()
        );
    }
}

#[test]
fn suite_describes_ten_functions() {
    let out = opsom(&["suite", "--dim", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().all(|l| l.contains("dim=10")));
}
