use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mtangle_cli::statefile::StateFile;
use serde_json::Value;
use tempfile::TempDir;

fn mtangle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mtangle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn generate(dir: &TempDir, file: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(file);
    let mut all = vec!["generate"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = mtangle(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn compute_json(path: &Path, extra: &[&str]) -> Value {
    let mut args = vec!["compute", "--in", path.to_str().unwrap(), "--json"];
    args.extend_from_slice(extra);
    let o = mtangle(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn approx(v: &Value, want: f64) -> bool {
    (v.as_f64().unwrap() - want).abs() < 1e-12
}

#[test]
fn generate_ghz_file() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "g.json", &["ghz", "--m", "4"]);
    let file = StateFile::read(&path).unwrap();
    assert_eq!(file.data.len(), 16);
    assert_eq!(file.data.iter().filter(|p| p[0] != 0.0 || p[1] != 0.0).count(), 2);
}

#[test]
fn random_generation_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = generate(&dir, "a.json", &["random-pure", "--m", "3", "--seed", "7"]);
    let b = generate(&dir, "b.json", &["random-pure", "--m", "3", "--seed", "7"]);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn generated_files_round_trip() {
    let dir = TempDir::new().unwrap();
    for (name, args) in [
        ("p.json", vec!["random-pure", "--m", "2", "--seed", "3"]),
        ("r.json", vec!["random-mixed", "--m", "2", "--rank", "3", "--seed", "3"]),
        ("x.json", vec!["product", "--factors", "0,+,-i"]),
    ] {
        let path = generate(&dir, name, &args);
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = StateFile::parse(&text).unwrap();
        parsed.load().unwrap();
        assert_eq!(parsed.to_text(), text);
    }
}

#[test]
fn generate_rejects_bad_parameters() {
    let o = mtangle(&["generate", "bell", "--index", "9"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--index"));
    assert_eq!(code(&mtangle(&["generate", "ghz"])), 1);
    assert_eq!(code(&mtangle(&["generate", "ghz", "--m", "1"])), 1);
    assert_eq!(code(&mtangle(&["generate", "random-mixed", "--m", "2", "--rank", "5"])), 1);
    assert_eq!(code(&mtangle(&["generate", "product", "--factors", "0,q"])), 1);
    assert_eq!(code(&mtangle(&["generate", "nonsense"])), 1);
}

#[test]
fn generate_to_stdout() {
    let o = mtangle(&["generate", "basis", "--bits", "01"]);
    assert_eq!(code(&o), 0);
    let parsed = StateFile::parse(&stdout(&o)).unwrap();
    assert_eq!(parsed.data[1], [1.0, 0.0]);
}

#[test]
fn compute_ghz4_all_measures() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "g.json", &["ghz", "--m", "4"]);
    let r = compute_json(&path, &[]);
    for key in ["tau_m", "s2", "gamma", "purity", "symmetry_measure"] {
        assert!(approx(&r[key], 1.0), "{key} = {}", r[key]);
    }
    assert!(approx(&r["hs_dist_sq"], 0.0));
    let keys: Vec<_> = r.as_object().unwrap().keys().cloned().collect();
    assert_eq!(
        keys,
        ["gamma", "hs_dist_sq", "m", "purity", "residuals", "s2", "state", "symmetry_measure", "tau_m"]
    );
    for (_, v) in r["residuals"].as_object().unwrap() {
        assert!(v.as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn compute_table_output() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "z.json", &["basis", "--bits", "0000"]);
    let o = mtangle(&["compute", "--in", path.to_str().unwrap(), "--measures", "tangle"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("tangle            0.000000000000000"), "{text}");
    assert!(!text.lines().any(|l| l.starts_with("purity")));
}

#[test]
fn compute_gamma_at_zero_phase() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "b.json", &["bell", "--index", "0"]);
    let r = compute_json(&path, &["--phases", "0", "--measures", "gamma"]);
    assert!(approx(&r["gamma"], 1.0));
    assert!(r["tau_m"].is_null());
    let r = compute_json(&path, &["--phases", "pi/2,pi/2"]);
    assert!(approx(&r["gamma"], 1.0));
    let o = mtangle(&["compute", "--in", path.to_str().unwrap(), "--phases", "0,0,0"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn compute_odd_m_warns() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "w.json", &["w", "--m", "3"]);
    let o = mtangle(&["compute", "--in", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("odd"));
    assert!(stdout(&o).contains("tangle"));
}

#[test]
fn compute_mixed_state() {
    let dir = TempDir::new().unwrap();
    let path = generate(&dir, "r.json", &["random-mixed", "--m", "2", "--seed", "5"]);
    let r = compute_json(&path, &[]);
    assert!(r["tau_m"].is_null());
    assert!(r["residuals"].get("s2_eq_tangle").is_none());
    assert!(r["residuals"]["gamma_eq_s2"].as_f64().unwrap() < 1e-12);
}

#[test]
fn compute_input_errors() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&mtangle(&["compute", "--in", bad.to_str().unwrap()])), 2);
    std::fs::write(&bad, r#"{"version":1,"kind":"pure","m":1,"data":[[1,0],[1,0]]}"#).unwrap();
    assert_eq!(code(&mtangle(&["compute", "--in", bad.to_str().unwrap()])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&mtangle(&["compute", "--in", missing.to_str().unwrap()])), 2);
}

#[test]
fn verify_suite() {
    let o = mtangle(&["verify", "--m", "2,4", "--trials", "200", "--seed", "42"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = mtangle(&["verify", "--m", "3", "--trials", "50"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let line = text.lines().find(|l| l.contains("odd-m tangle")).unwrap();
    assert!(line.starts_with("PASS") && line.contains("1e-20"), "{line}");

    assert_eq!(code(&mtangle(&["verify", "--trials", "0"])), 1);
    assert_eq!(code(&mtangle(&["verify", "--trials", "2", "--tolerance", "1e-40"])), 3);
}

#[test]
fn sweep_csv() {
    let dir = TempDir::new().unwrap();
    let g = generate(&dir, "g.json", &["ghz", "--m", "2"]);
    let csv_path = dir.path().join("s.csv");
    let o = mtangle(&["sweep", "--in", g.to_str().unwrap(), "--grid", "4", "--out", csv_path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["phase", "gamma"]);
    let rows: Vec<(f64, f64)> = reader.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.windows(2).all(|w| w[0].0 < w[1].0));
    assert!(rows.iter().all(|&(_, g)| (g - 1.0).abs() < 1e-12));

    let z = generate(&dir, "z.json", &["basis", "--bits", "00"]);
    let o = mtangle(&["sweep", "--in", z.to_str().unwrap(), "--grid", "8"]);
    assert_eq!(code(&o), 0);
    let body = stdout(&o);
    assert!(body.lines().skip(1).all(|l| l.ends_with(",0.0")), "{body}");

    assert_eq!(code(&mtangle(&["sweep", "--in", g.to_str().unwrap(), "--grid", "1"])), 1);
    let r = generate(&dir, "r.json", &["random-mixed", "--m", "2"]);
    assert_eq!(code(&mtangle(&["sweep", "--in", r.to_str().unwrap(), "--grid", "4"])), 2);
}

fn field(text: &str, label: &str) -> f64 {
    let line = text.lines().find(|l| l.starts_with(label)).unwrap();
    line[label.len()..].split_whitespace().next().unwrap().parse().unwrap()
}

#[test]
fn povm_check_reports() {
    let o = mtangle(&["povm-check", "--n", "2", "--grid", "64"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(field(&text, "normalization deviation") < 1e-12);
    assert!(field(&text, "min eigenvalue, uniform pi/2").abs() < 1e-12);
    assert!(!text.contains("NEGATIVE"));

    let o = mtangle(&["povm-check", "--n", "3", "--grid", "16"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let min = field(&text, "min eigenvalue, uniform pi/2");
    assert!((min - (1.0 - 3f64.sqrt())).abs() < 1e-9);
    assert!(text.contains("NEGATIVE"));

    assert_eq!(code(&mtangle(&["povm-check", "--n", "1"])), 1);
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(code(&mtangle(&["verify", "--bogus"])), 1);
    assert_eq!(code(&mtangle(&[])), 1);
    assert_eq!(code(&mtangle(&["--help"])), 0);
}
