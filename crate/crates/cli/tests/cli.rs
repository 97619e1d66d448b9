use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn liepool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liepool"))
        .args(args)
        .env_remove("LIEPOOL_ORACLE_MAX_QUBITS")
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data(file: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(file)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn rank_and_closure_of_single_qubit_pair() {
    let dir = tempfile::tempdir().unwrap();
    let pool = write(dir.path(), "xz.pool", "XI\nZI\n");
    let p = pool.to_str().unwrap();
    let o = liepool(&["rank", p]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2");
    let o = liepool(&["closure", p]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "dimension 3");
}

#[test]
fn gamma_and_canon_accept_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let pool = write(dir.path(), "p.pool", "n=2\nX1\nZ1\nX2\n");
    let o = liepool(&["gamma", pool.to_str().unwrap()]);
    assert!(o.status.success());
    let gamma = stdout(&o);
    assert!(gamma.contains("010") && gamma.contains("100") && gamma.contains("000"));
    let m = write(dir.path(), "g.txt", &gamma);
    let o = liepool(&["canon", m.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn empty_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let pool = write(dir.path(), "e.pool", "# nothing here\n");
    let o = liepool(&["rank", pool.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:empty:"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let o = liepool(&["rank", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:usage:"));
}

#[test]
fn missing_file_reports_io() {
    let o = liepool(&["rank", "/nonexistent/pool"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:io:"));
}

#[test]
fn strict_verify_fails_on_incomplete_pool() {
    let dir = tempfile::tempdir().unwrap();
    let pool = write(dir.path(), "xz.pool", "XI\nZI\n");
    let p = pool.to_str().unwrap();
    let o = liepool(&["verify", p]);
    assert!(o.status.success());
    let o = liepool(&["verify", p, "--strict"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"verdict\": \"incomplete\""));
}

#[test]
fn build_then_verify_chemistry_pool() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "chem4.toml",
        "n = 4\nseed = 6\n[constraints]\nodd_y = true\neven_flip = true\n",
    );
    let out = dir.path().join("chem4.pool");
    let o = liepool(&["build", cfg.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["report"]["rank"], 4);
    let o = liepool(&["verify", out.to_str().unwrap(), "--target", "chem", "--oracle", "force", "--strict"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["verdict"], "MCP");
    assert_eq!(report["oracle"]["closure_dimension"], 24);
}

#[test]
fn json_config_matches_toml() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "a.toml", "n = 3\nseed = 2\n");
    let j = write(dir.path(), "a.json", r#"{"n": 3, "seed": 2}"#);
    let a = liepool(&["build", t.to_str().unwrap()]);
    let b = liepool(&["build", j.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.toml", "n = 3\ncolour = \"red\"\n");
    let o = liepool(&["build", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:config:"));
}

#[test]
fn oracle_guard_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let pool = write(dir.path(), "p.pool", "n=4\nX1 Y2\nY1 X2\n");
    let o = liepool(&["--oracle-max-qubits", "2", "closure", pool.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error:guard:"));
}

#[test]
fn closure_cap_truncates() {
    let dir = tempfile::tempdir().unwrap();
    let pool = write(dir.path(), "p.pool", "XI\nZI\nIX\nIZ\nXX\n");
    let o = liepool(&["closure", pool.to_str().unwrap(), "--cap", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn independent_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let pool = write(dir.path(), "p.pool", "XI\nZI\nYI\n");
    let o = liepool(&["independent", pool.to_str().unwrap(), "--exact"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains('3'), "{}", stdout(&o));
    let o = liepool(&["independent", pool.to_str().unwrap(), "--exact", "--strict"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn vqe_reaches_tfim_ground_state() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("n=4\n");
    for a in 0..4 {
        text.push_str(&format!("Y{}\n", a + 1));
        for b in a + 1..4 {
            for (pa, pb) in [('Y', 'I'), ('Y', 'X'), ('Y', 'Z'), ('X', 'Y'), ('Z', 'Y'), ('I', 'Y')] {
                let mut s = ['I'; 4];
                s[a] = pa;
                s[b] = pb;
                if s.iter().filter(|&&c| c != 'I').count() == 2 {
                    text.push_str(&s.iter().collect::<String>());
                    text.push('\n');
                }
            }
        }
    }
    let pool = write(dir.path(), "odd.pool", &text);
    let csv = dir.path().join("trace.csv");
    let o = liepool(&[
        "vqe",
        &data("tfim4.ham"),
        "--pool",
        pool.to_str().unwrap(),
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let trace = fs::read_to_string(&csv).unwrap();
    assert!(trace.starts_with("iteration,energy,abs_error,fevals,params,cnots"));
    let last = trace.lines().last().unwrap();
    let err: f64 = last.split(',').nth(2).unwrap().parse().unwrap();
    assert!(err < 1.6e-3, "{last}");
}
