use std::path::PathBuf;
use std::process::{Command, Output};

fn slq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slq")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hq_trivial_matches_prediction() {
    let o = slq(&["hq-trivial", "--k", "0", "--max-weight", "2", "--t-max", "12", "--strict"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("weight\ts\tt\tdim\tpredicted_dim\tmatch"));
    assert!(lines.all(|l| l.ends_with("\tyes")));
}

#[test]
fn hq_trivial_looped() {
    let o = slq(&["hq-trivial", "--k", "1", "--n", "1", "--max-weight", "4", "--t-max", "15", "--strict"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn e2_torus_total_seven() {
    let o = slq(&["e2", "--manifold", &data("torus_open.json"), "--labels", &data("labels_one.json"), "--weight", "2", "--strict"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let total: usize = out.lines().skip(1).map(|l| l.split('\t').nth(3).unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 7);
}

#[test]
fn e2_json_with_basis_is_deterministic() {
    let args = ["e2", "--manifold", &data("rp3_closed.json"), "--labels", &data("labels_one.json"), "--weight", "2", "--basis", "--format", "json"];
    let (a, b) = (slq(&args), slq(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let rows: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    let total: u64 = rows.iter().map(|r| r["dim"].as_u64().unwrap()).sum();
    assert_eq!(total, 12);
    assert!(rows.iter().all(|r| r["match"] == true && r["basis"].as_array().unwrap().len() as u64 == r["dim"].as_u64().unwrap()));
}

#[test]
fn e2_odd_prime() {
    let o = slq(&["e2", "--manifold", &data("torus_open_p5.json"), "--labels", &data("labels_one.json"), "--p", "5", "--max-weight", "3", "--strict"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    let o = slq(&["e2", "--manifold", "/nonexistent.json", "--labels", &data("labels_one.json")]);
    assert_eq!(o.status.code(), Some(2));
    let o = slq(&["e2", "--manifold", &data("torus_open.json"), "--labels", &data("labels_one.json"), "--p", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = slq(&["hq-trivial", "--k", "0", "--t-min", "5", "--t-max", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = slq(&["verify", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = slq(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn manifest_errors_carry_position() {
    let dir = std::env::temp_dir().join(format!("slq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"dim\": 2,\n  \"closed\": false,\n  \"classes\": [\n    {\"name\": \"a\", \"deg\": oops}\n  ]\n}\n").unwrap();
    let o = slq(&["e2", "--manifold", bad.to_str().unwrap(), "--labels", &data("labels_one.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn verify_rewrite_json() {
    let o = slq(&["verify", "rewrite", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["suite"], "rewrite");
    assert_eq!(v[0]["pass"], true);
}
