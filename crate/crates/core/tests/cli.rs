//! End-to-end checks of the command-line interface: formats, exit codes,
//! file output and flag validation.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supercong"))
        .args(args)
        .output()
        .expect("failed to run binary")
}

#[test]
fn single_family_json_record() {
    let out = run(&[
        "--families", "eq_1_4", "--p-min", "5", "--p-max", "5", "--format", "json",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert!(header["version"].is_string());
    let rec: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(rec["name"], "eq_1_4");
    assert_eq!(rec["p"], 5);
    assert_eq!(rec["modulus"], 25);
    assert_eq!(rec["lhs"], 14);
    assert_eq!(rec["rhs"], 14);
    assert_eq!(rec["pass"], true);
    assert!(lines.next().is_none());
}

#[test]
fn csv_format_and_ordering() {
    let out = run(&[
        "--families", "eq_1_1,eq_1_2", "--p-max", "13", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "name,p,a,modulus,lhs,rhs,pass");
    // sorted by (name, p, a)
    let keys: Vec<&str> = lines[1..].iter().map(|l| *l).collect();
    let mut sorted = keys.clone();
    sorted.sort_by_key(|l| {
        let mut f = l.split(',');
        let name = f.next().unwrap().to_string();
        let p: u64 = f.next().unwrap().parse().unwrap();
        (name, p)
    });
    assert_eq!(keys, sorted);
    assert_eq!(keys.len(), 2 * primes_between_5_and(13));
}

fn primes_between_5_and(n: u64) -> usize {
    [5u64, 7, 11, 13, 17, 19, 23, 29, 31]
        .iter()
        .filter(|&&p| p <= n)
        .count()
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["--p-min", "100", "--p-max", "5"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["--families", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["--powers", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn all_pass_exits_0() {
    let out = run(&["--p-max", "11", "--format", "csv", "--seed", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    // summary goes to stderr for machine formats
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("total:"));
}

#[test]
fn output_file_flag() {
    let dir = std::env::temp_dir().join(format!("supercong-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let out = run(&[
        "--families", "eq_1_2", "--p-max", "7", "--format", "csv",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 3); // header + p=5 + p=7
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn stream_mode_emits_same_record_set() {
    let sorted = run(&["--families", "su13", "--p-max", "17", "--format", "csv"]);
    let streamed = run(&[
        "--families", "su13", "--p-max", "17", "--format", "csv", "--stream",
    ]);
    assert!(sorted.status.success() && streamed.status.success());
    let norm = |o: &Output| {
        let mut v: Vec<String> = String::from_utf8(o.stdout.clone())
            .unwrap()
            .lines()
            .map(String::from)
            .collect();
        v.sort();
        v
    };
    assert_eq!(norm(&sorted), norm(&streamed));
}

#[test]
fn table_format_human_readable() {
    let out = run(&["--families", "lemma_3_1", "--p-max", "7"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("status"));
    assert!(text.contains(" ok"));
    assert!(text.contains("total: 2/2"));
}
