use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metallic-tiler")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn tiles_counts_and_formats() {
    for (n, base, chip) in [(1, 16, 22), (2, 25, 33), (3, 36, 46), (4, 49, 61)] {
        let o = run(&["tiles", "--n", &n.to_string()]);
        assert_eq!(code(&o), 0);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["tiles"].as_array().unwrap().len(), base);
        let o = run(&["tiles", "--n", &n.to_string(), "--set", "chip", "--format", "tsv"]);
        assert_eq!(stdout(&o).lines().count(), chip + 1);
    }
    let o = run(&["tiles", "--n", "3", "--format", "svg"]);
    assert!(stdout(&o).starts_with("<svg"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["tiles", "--n", "0"])), 2);
    assert_eq!(code(&run(&["tiles"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["window", "--n", "3", "--x", "abc", "--y", "0", "--width", "2", "--height", "2"])), 2);
    assert_eq!(code(&run(&["selfsim", "--n", "2", "--match-published"])), 2);
}

#[test]
fn verify_passes() {
    for n in ["1", "2", "3", "4"] {
        let o = run(&["verify", "--n", n, "--samples", "50"]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn window_round_trips_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let o = run(&[
        "window", "--n", "3", "--x", "1/3", "--y", "1/5+1/7*beta", "--width", "8", "--height", "6", "--origin-x", "-2",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let o = run(&["check", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let cell = &mut doc["rows"][3][4];
    *cell = Value::from((cell.as_u64().unwrap() + 1) % 36);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let o = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!report["violations"].as_array().unwrap().is_empty() || report["matches_point"] == Value::Bool(false));

    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&run(&["check", bad.to_str().unwrap()])), 1);
}

#[test]
fn window_svg() {
    let o = run(&["window", "--n", "2", "--x", "0", "--y", "0", "--width", "4", "--height", "3", "--format", "svg"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("<polygon").count(), 4 * 12);
}

#[test]
fn average_converges() {
    let o = run(&["average", "--n", "3", "--x", "1/3", "--y", "1/5", "--k", "1000", "--axis", "row", "--csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let errors: Vec<f64> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(errors.len(), 4);
    assert!(*errors.last().unwrap() <= 2.0 / 1000.0);
}

#[test]
fn partitions() {
    let o = run(&["partition", "--n", "3", "--which", "refined"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["atoms"].as_array().unwrap().len(), 36);
    for which in ["east", "north", "west", "south"] {
        let o = run(&["partition", "--n", "2", "--which", which, "--format", "svg"]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains("<polygon"));
    }
}

#[test]
fn selfsim_and_published_table() {
    let o = run(&["selfsim", "--n", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rules"].as_object().unwrap().len(), 25);

    // The published n = 3 table differs from the computed one in rule 17 only.
    let o = run(&["selfsim", "--n", "3", "--match-paper"]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("bijection: 0→0"));
    assert!(text.contains("rules differing from the published table: [17]"));
}
