use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fitzkit::scenario::generate_builtin;

fn fitzkit() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fitzkit"))
}

fn write_builtin(dir: &Path, name: &str) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    fs::write(&path, generate_builtin(name).unwrap().to_json_pretty()).unwrap();
    path
}

fn run(file: &Path, out: &Path, extra: &[&str]) -> Output {
    fitzkit()
        .arg("run")
        .arg(file)
        .arg("--out")
        .arg(out)
        .args(extra)
        .env("FITZKIT_THREADS", "2")
        .output()
        .unwrap()
}

fn report_dir(out: &Path) -> PathBuf {
    let mut dirs: Vec<_> = fs::read_dir(out).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(dirs.len(), 1, "one run directory per scenario");
    dirs.pop().unwrap()
}

#[test]
fn abs_scenario_exits_zero_with_zero_gap_field() {
    let tmp = tempfile::tempdir().unwrap();
    let file = write_builtin(tmp.path(), "abs");
    let out = tmp.path().join("out");
    let o = run(&file, &out, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let dir = report_dir(&out);
    let csv = fs::read_to_string(dir.join("02-gap.csv")).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let gap_col = header.iter().position(|h| *h == "gap").unwrap();
    let mut finite = 0;
    for line in lines {
        let cell = line.split(',').nth(gap_col).unwrap();
        if cell != "inf" {
            assert!(cell.parse::<f64>().unwrap().abs() <= 1e-6, "gap cell {cell}");
            finite += 1;
        }
    }
    assert!(finite > 0);
}

#[test]
fn quadratic_scenario_is_refuted_with_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let file = write_builtin(tmp.path(), "quadratic");
    let out = tmp.path().join("out");
    let o = run(&file, &out, &[]);
    assert_eq!(o.status.code(), Some(2));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(report_dir(&out).join("00-singleton.json")).unwrap()).unwrap();
    assert_eq!(report["verdict"], "refuted");
    assert!((report["min_residual"].as_f64().unwrap() + 2.0).abs() < 1e-9);
}

#[test]
fn negative_tol_is_an_input_error() {
    let tmp = tempfile::tempdir().unwrap();
    let file = write_builtin(tmp.path(), "two-point");
    let o = run(&file, &tmp.path().join("out"), &["--tol", "-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("tol"));

    let mut doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    doc["tol"] = serde_json::json!(-1.0);
    fs::write(&file, doc.to_string()).unwrap();
    let o = run(&file, &tmp.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`tol`"));
}

#[test]
fn malformed_configs_name_the_offending_key() {
    let tmp = tempfile::tempdir().unwrap();
    let file = write_builtin(tmp.path(), "two-point");
    let text = fs::read_to_string(&file).unwrap();
    let cases = [
        (text.replacen("\"seed\"", "\"sead\"", 1), "sead"),
        (text.replacen("\"object\": \"G\"", "\"object\": \"H\"", 1), "H"),
        ("{ not json".to_string(), "line"),
    ];
    for (body, needle) in cases {
        fs::write(&file, body).unwrap();
        let o = run(&file, &tmp.path().join("out"), &[]);
        assert_eq!(o.status.code(), Some(1));
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(needle), "{err}");
    }
    let o = run(&tmp.path().join("missing.json"), &tmp.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn monotonicity_cap_is_an_input_error() {
    let tmp = tempfile::tempdir().unwrap();
    let file = write_builtin(tmp.path(), "skew2d");
    let mut doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    let suites = doc["suites"].as_array_mut().unwrap();
    let mono = suites.iter_mut().find(|s| s["kind"] == "monotonicity").unwrap();
    mono["max_tuples"] = serde_json::json!(100);
    fs::write(&file, doc.to_string()).unwrap();
    let o = run(&file, &tmp.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("max_tuples"));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let file = write_builtin(tmp.path(), "skew2d");
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    assert_eq!(run(&file, &a, &[]).status.code(), Some(0));
    let o = fitzkit()
        .args(["run", file.to_str().unwrap(), "--out", b.to_str().unwrap()])
        .env("FITZKIT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let (da, db) = (report_dir(&a), report_dir(&b));
    assert_eq!(da.file_name(), db.file_name());
    let mut names: Vec<_> = fs::read_dir(&da).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 4);
    for n in names {
        assert_eq!(fs::read(da.join(&n)).unwrap(), fs::read(db.join(&n)).unwrap(), "{n:?} differs");
    }
}

#[test]
fn seed_override_changes_the_run_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let file = write_builtin(tmp.path(), "skew2d");
    let out = tmp.path().join("out");
    assert_eq!(run(&file, &out, &[]).status.code(), Some(0));
    assert_eq!(run(&file, &out, &["--seed", "99"]).status.code(), Some(0));
    assert_eq!(fs::read_dir(&out).unwrap().count(), 2);
}

#[test]
fn gen_and_version_verbs() {
    for name in ["abs", "quadratic", "skew2d", "rotation(1.0472)", "strip-vkc", "two-point"] {
        let o = fitzkit().args(["gen", name]).output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{name}");
        let s: fitzkit::scenario::Scenario = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(s, generate_builtin(name).unwrap());
    }
    assert_eq!(fitzkit().args(["gen", "nope"]).output().unwrap().status.code(), Some(1));
    let v = fitzkit().arg("version").output().unwrap();
    assert_eq!(v.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&v.stdout).starts_with("fitzkit "));
    assert_eq!(fitzkit().arg("frobnicate").output().unwrap().status.code(), Some(1));
}

#[test]
fn every_builtin_meets_its_expected_exit_code() {
    let tmp = tempfile::tempdir().unwrap();
    for (name, code) in [
        ("abs", 0),
        ("quadratic", 2),
        ("skew2d", 0),
        ("rotation(1.0472)", 0),
        ("rotation(0.9472)", 0),
        ("strip-vkc", 0),
        ("two-point", 0),
    ] {
        let file = write_builtin(tmp.path(), name);
        let o = run(&file, &tmp.path().join("out"), &[]);
        assert_eq!(o.status.code(), Some(code), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
