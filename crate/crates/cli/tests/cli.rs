use std::path::PathBuf;
use std::process::{Command, Output};

fn surface(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../surfaces").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mannheim")).args(args).env_remove("MANNHEIM_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_reports_type_signs_and_curvature() {
    let o = run(&["classify", path(&surface("helicoid.surf"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "type=M1- eps1=+1 eps2=-1 developable=false kappa=[0,0]");
    let o = run(&["classify", path(&surface("tangent_developable.surf"))]);
    assert!(stdout(&o).contains("developable=true"), "{}", stdout(&o));
    let o = run(&["classify", path(&surface("tan_base.surf"))]);
    assert!(stdout(&o).starts_with("type=M1+ eps1=+1 eps2=+1 developable=true"), "{}", stdout(&o));
}

#[test]
fn classify_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("noq.surf");
    std::fs::write(&f, "k = (0, 0, s)\ndomain = [0, 1]\n").unwrap();
    let o = run(&["classify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("`q`"), "{}", stderr(&o));

    std::fs::write(&f, "k = (0, 0, s)\nq = (cosh(s), sinh(s) +, 0)\ndomain = [0, 1]\n").unwrap();
    let o = run(&["classify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2, column 24"), "{}", stderr(&o));

    let o = run(&["classify", "/definitely/not/here.surf"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_flags_degenerate_surfaces() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("cyl.surf");
    // constant director: cylindrical, no Frenet frame
    std::fs::write(&f, "k = (0, 0, s)\nq = (1, 0, 0)\ndomain = [0, 1]\n").unwrap();
    let o = run(&["classify", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("type=degenerate"), "{}", stdout(&o));
}

#[test]
fn frame_csv_and_json() {
    let h = surface("helicoid.surf");
    let o = run(&["frame", "--grid", "3", path(&h)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "s,q1,q2,q3,h1,h2,h3,a1,a2,a3,ds1_ds,kappa,drall");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[11] == 0.0 && r[12] == -1.0));

    let o = run(&["frame", "--grid", "2", "--out", "json", path(&h)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0].as_object().unwrap().len(), 13);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("frame.csv");
    let o = run(&["frame", "--grid", "5", "-o", out.to_str().unwrap(), path(&h)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(out).unwrap().lines().count(), 6);
}

#[test]
fn frame_usage_errors() {
    let o = run(&["frame", "--grid", "0", path(&surface("helicoid.surf"))]);
    assert_eq!(o.status.code(), Some(64));
    let o = run(&["frame", "--out", "xml", path(&surface("helicoid.surf"))]);
    assert_eq!(o.status.code(), Some(64));
    assert_eq!(run(&["transmogrify"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn offset_summary_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("offset.csv");
    let o = run(&[
        "offset",
        path(&surface("coth_base.surf")),
        "--R",
        "1",
        "--theta",
        "3 - s",
        "--pairing",
        "eq11",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let summary = stdout(&o);
    assert!(summary.contains("offset=M1+ mannheim=true central_normal_is_a=true"), "{summary}");
    let drall: f64 = summary.split("max_drall=").nth(1).unwrap().split_whitespace().next().unwrap().parse().unwrap();
    assert!(drall <= 1e-5, "{drall}");
    let csv = std::fs::read_to_string(out).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "s,c1,c2,c3,q1,q2,q3");
    assert_eq!(csv.lines().count(), 513);
}

#[test]
fn offset_with_constant_angle() {
    let o = run(&["offset", path(&surface("tangent_developable.surf")), "--R", "1", "--theta", "0", "--pairing", "eq12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // the assigned frame satisfies h* = a, the intrinsic one does not without θ' = -ds1/ds
    assert!(stdout(&o).contains("mannheim=true central_normal_is_a=false"), "{}", stdout(&o));
}

#[test]
fn offset_errors() {
    let h = surface("helicoid.surf");
    let o = run(&["offset", path(&h), "--R", "1", "--theta", "0", "--pairing", "eq13"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("eq13"), "{}", stderr(&o));

    let o = run(&["offset", path(&h), "--R", "ln(s)", "--theta", "0", "--pairing", "eq12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("s-intervals [[-1,"), "{}", stderr(&o));

    let o = run(&["offset", path(&h), "--R", "1 +", "--theta", "0", "--pairing", "eq12"]);
    assert_eq!(o.status.code(), Some(1));

    // eq11 on a cone with R κ ds1/ds < 1 has no developable angle anywhere
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("slow.surf");
    std::fs::write(&f, "type = M1-\nkappa = 0.5\ndomain = [0, 1]\nsamples = 16\n").unwrap();
    let o = run(&["offset", f.to_str().unwrap(), "--R", "1", "--theta", "-s", "--pairing", "eq11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("no_real_theta=[[0,1]]"), "{}", stdout(&o));
}

#[test]
fn theorems_filter_report_and_seed() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = run(&["theorems", "--filter", "thm-5.2", "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["suite_version"], "1.0.0");
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 1);
    let c = &cases[0];
    for key in ["id", "verdict", "max_residual", "argmax_s", "excluded_intervals", "params"] {
        assert!(c.get(key).is_some(), "{key}");
    }
    assert_eq!(c["verdict"], "pass");

    let o = Command::new(env!("CARGO_BIN_EXE_mannheim"))
        .args(["theorems", "--filter", "lemma-2.1", "--seed", "1", "--report", report.to_str().unwrap()])
        .env("MANNHEIM_SEED", "77")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["seed"], 77);
}

#[test]
fn theorems_pole_cases_report_exclusions() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = run(&["theorems", "--filter", "thm-6.2", "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let iv = v["cases"][0]["excluded_intervals"][0].as_array().unwrap();
    let pole = 3.0 - std::f64::consts::FRAC_PI_2;
    assert!((iv[0].as_f64().unwrap() - (pole - 0.05)).abs() < 1e-12);
    assert!((iv[1].as_f64().unwrap() - (pole + 0.05)).abs() < 1e-12);
}

#[test]
fn theorems_errors() {
    assert_eq!(run(&["theorems", "--filter", "thm-9.9"]).status.code(), Some(64));
    let o = run(&["theorems", "--filter", "lemma-2.1", "--report", "/no/such/dir/r.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reparam_table() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("fast.surf");
    std::fs::write(&f, "k = (0, 0, s^3 + s)\nq = (cosh(s), sinh(s), 0)\ndomain = [0, 1]\n").unwrap();
    let o = run(&["reparam", "--points", "5", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (a, s) = l.split_once(',').unwrap();
            (a.parse().unwrap(), s.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 5);
    // arc length of s^3 + s is s^3 + s itself
    for (arc, s) in rows {
        assert!((s * s * s + s - arc).abs() < 1e-6, "{arc} {s}");
    }
    assert_eq!(run(&["reparam", path(&surface("coth_base.surf"))]).status.code(), Some(1));
}
