use std::path::Path;
use std::process::{Command, Output};

fn pidnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pidnet")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Values of `name` in every printed decomposition, in order.
fn field(text: &str, name: &str) -> Vec<f64> {
    text.lines()
        .filter_map(|l| {
            let mut parts = l.split_whitespace();
            (parts.next() == Some(name)).then(|| parts.next().unwrap().parse().unwrap())
        })
        .collect()
}

fn write_joint(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, format!("alphabet x y t\n{body}")).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn pid_two_bit_copy_in_bits() {
    let tmp = tempfile::tempdir().unwrap();
    let f = write_joint(tmp.path(), "copy.txt", "0 0 00 0.25\n0 1 01 0.25\n1 0 10 0.25\n1 1 11 0.25\n");
    let out = pidnet(&["--units", "bits", "pid", &f]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(field(&text, "R").len(), 2);
    for (name, want) in [("R", 1.0), ("U_X", 0.0), ("U_Y", 0.0), ("S", 1.0)] {
        for v in field(&text, name) {
            assert!((v - want).abs() < 1e-12, "{name} = {v}");
        }
    }
}

#[test]
fn pid_xor_is_pure_synergy_for_imin() {
    let tmp = tempfile::tempdir().unwrap();
    let f = write_joint(tmp.path(), "xor.txt", "0 0 0 0.25\n0 1 1 0.25\n1 0 1 0.25\n1 1 0 0.25\n");
    let out = pidnet(&["--units", "bits", "pid", "--kind", "imin", &f]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "S"), vec![1.0]);
    assert_eq!(field(&text, "R"), vec![0.0]);
    assert!(!text.contains("[ipm]"));
}

#[test]
fn pid_rejects_a_distribution_that_does_not_sum_to_one() {
    let tmp = tempfile::tempdir().unwrap();
    let f = write_joint(tmp.path(), "bad.txt", "0 0 0 0.25\n0 1 1 0.25\n1 0 1 0.25\n1 1 0 0.15\n");
    let out = pidnet(&["pid", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("sum to 0.9"), "{}", stderr(&out));
    assert!(pidnet(&["pid", "/nonexistent/joint.txt"]).status.code() == Some(1));
}

#[test]
fn analytic_linear_prints_closed_forms() {
    let out = pidnet(&["analytic-linear", "--a", "1", "--b", "2", "--rho", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let ln2 = std::f64::consts::LN_2;
    // imin then ipm
    let u_y = field(&text, "U_Y");
    assert!((u_y[0] - ln2).abs() < 1e-11);
    assert!((u_y[1] - 1.0 / std::f64::consts::PI).abs() < 1e-11);
    let u_x = field(&text, "U_X");
    assert!(u_x[0].abs() < 1e-12);
    assert!((u_x[1] - (1.0 / std::f64::consts::PI - ln2)).abs() < 1e-11);
    assert!(text.contains("inf"));
}

#[test]
fn analytic_linear_rejects_bad_parameters() {
    let out = pidnet(&["analytic-linear", "--a", "2", "--b", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("0 < a < b"), "{}", stderr(&out));
    let out = pidnet(&["analytic-linear", "--a", "1", "--b", "2", "--rho", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("|rho| < 1"), "{}", stderr(&out));
}

#[test]
fn mc_rejects_tiny_sample_counts() {
    let out = pidnet(&["mc", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("below minimum"), "{}", stderr(&out));
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn within(est: &serde_json::Value, target: f64, k: f64) -> bool {
    let v = est["value"].as_f64().unwrap();
    let se = est["std_error"].as_f64().unwrap();
    (v - target).abs() <= (k * se).max(1e-12)
}

#[test]
fn mc_linear_matches_closed_forms() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("mc");
    let args = ["mc", "--kernel", "linear", "--a", "0.5", "--b", "1.5", "--rho", "0.4", "--samples", "200000"];
    let mut full = args.to_vec();
    full.extend(["--out", dir.to_str().unwrap()]);
    let out = pidnet(&full);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = read_json(&dir.join("mc.json"));
    let cf: Vec<f64> = report["closed_form"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert!(within(&report["u_x_min"], cf[0], 3.0));
    assert!(within(&report["u_y_min"], cf[1], 3.0));
    assert!(within(&report["u_x_pm"], cf[2], 3.0));
    assert!(within(&report["u_y_pm"], cf[3], 3.0));
    assert_eq!(report["i_txy"], "inf");
}

#[test]
fn mc_sigmoidal_unique_min_vanishes_far_below_threshold() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("mc");
    let out = pidnet(&["mc", "--kernel", "sigmoidal", "--alpha", "-6", "--samples", "200000", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = read_json(&dir.join("mc.json"));
    assert!(within(&report["u_x_min"], 0.0, 3.0), "{}", report["u_x_min"]);
    assert!(report.get("closed_form").is_none());
}

#[test]
fn experiment_1_writes_one_row_per_pair_and_batch() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("e1");
    let out = pidnet(&["experiment", "1", "--batches", "2", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    for kind in ["imin", "ipm"] {
        let text = std::fs::read_to_string(dir.join(format!("exp1_pairs_{kind}.csv"))).unwrap();
        let rows = text.lines().filter(|l| !l.starts_with('#')).count();
        // header plus 1225 pairs per batch
        assert_eq!(rows, 1 + 2 * 1225);
    }
    let summary = read_json(&dir.join("exp1_summary.json"));
    assert_eq!(summary["config"]["batches"], 2);
    assert!(dir.join("manifest.toml").exists());
}

#[test]
fn experiment_2_summary_reports_the_comparisons() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("e2");
    let out = pidnet(&["experiment", "2", "--batches", "2", "--beta", "0.5,4", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let summary = read_json(&dir.join("exp2_summary.json"));
    let points = summary["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    for p in points {
        for key in ["s_min_separates", "s_pm_false_overtakes", "mi_false_overtakes"] {
            assert!(p[key].is_boolean(), "{key} missing in {p}");
        }
    }
    assert!(dir.join("exp2_beta_4_pairs_ipm.csv").exists());
}

#[test]
fn manifest_reruns_to_identical_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let first = tmp.path().join("first");
    let second = tmp.path().join("second");
    let out = pidnet(&["experiment", "3", "--batches", "1", "--alpha", "-2,2", "--seed", "17", "--out", first.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let manifest = first.join("manifest.toml");
    let out = pidnet(&["experiment", "3", "--config", manifest.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let read = |dir: &Path, name: &str| std::fs::read(dir.join(name)).unwrap();
    let mut names: Vec<String> = std::fs::read_dir(&first)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert!(names.iter().any(|n| n.ends_with(".csv")));
    for name in &names {
        assert_eq!(read(&first, name), read(&second, name), "{name} differs");
    }
    // a manifest from another command is refused
    let out = pidnet(&["mc", "--config", manifest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
